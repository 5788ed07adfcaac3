"""Periodic grids, variance-tagged tensor fields and centered-difference calculus.

Every field lives on a uniform periodic lattice and stores its components
first: scalars ``(*grid)``, vector-like kinds ``(d, *grid)`` and all matrix
kinds ``(d, d, *grid)`` in row-major order. Variance is carried by
:class:`Kind`, never by the storage layout.

Derivatives are second-order centered differences with periodic wraparound
and integrals use the rectangle rule. With these two choices summation by
parts holds exactly, i.e. ``integrate(f * div v) == -integrate(grad f . v)``
up to rounding.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import kernels
from . import pointwise as pw


class Kind(enum.Enum):
    """Variance class of a field; selects the Lie-derivative rule."""

    IntensiveScalar = "IntensiveScalar"
    ExtensiveScalar = "ExtensiveScalar"
    Vector = "Vector"
    Covector = "Covector"
    Momentum = "Momentum"
    OpVV = "OpVV"
    OpVC = "OpVC"
    OpCC = "OpCC"
    OpCV = "OpCV"
    TwoPoint = "TwoPoint"
    IntensiveMatrix = "IntensiveMatrix"
    RdExtensive = "RdExtensive"

    @property
    def tag(self) -> int:
        """One-byte identifier used by the snapshot format."""
        return _KIND_ORDER.index(self)

    @classmethod
    def from_tag(cls, tag: int) -> "Kind":
        if not 0 <= tag < len(_KIND_ORDER):
            raise ValueError(f"unknown kind tag {tag}")
        return _KIND_ORDER[tag]

    @property
    def rank(self) -> int:
        if self in _SCALAR_KINDS:
            return 0
        if self in _VECTOR_KINDS:
            return 1
        return 2

    def component_shape(self, d: int) -> tuple:
        return ((), (d,), (d, d))[self.rank]


_KIND_ORDER = list(Kind)
_SCALAR_KINDS = {Kind.IntensiveScalar, Kind.ExtensiveScalar}
_VECTOR_KINDS = {Kind.Vector, Kind.Covector, Kind.Momentum, Kind.RdExtensive}
MATRIX_KINDS = frozenset(k for k in Kind if k.rank == 2)


@dataclass(frozen=True)
class Grid:
    """Uniform periodic lattice on the d-torus ``[0, L)^d`` with ``n`` nodes per axis."""

    d: int
    n: int
    L: float

    @property
    def h(self) -> float:
        return self.L / self.n

    @property
    def shape(self) -> tuple:
        return (self.n,) * self.d

    @property
    def num_nodes(self) -> int:
        return self.n ** self.d

    @property
    def cell_volume(self) -> float:
        return self.h ** self.d

    @property
    def volume(self) -> float:
        return self.L ** self.d

    def coords(self) -> np.ndarray:
        """Node coordinates, shape ``(d, *grid)``."""
        axes = [np.arange(self.n) * self.h] * self.d
        return np.stack(np.meshgrid(*axes, indexing="ij"))

    def points(self) -> np.ndarray:
        """Node coordinates as a flat ``(N, d)`` array in row-major node order."""
        return self.coords().reshape(self.d, -1).T.copy()


def make_grid(d: int, n: int, L: float) -> Grid:
    if d not in (1, 2, 3):
        raise ValueError(f"dimension must be 1, 2 or 3, got {d}")
    if n < 8 or n % 2:
        raise ValueError(f"need an even node count n >= 8, got {n}")
    if not L > 0:
        raise ValueError(f"period must be positive, got {L}")
    return Grid(int(d), int(n), float(L))


@dataclass(frozen=True, eq=False)
class TensorField:
    """Immutable grid-sampled field tagged with its variance kind.

    ``tag`` is optional free-form metadata (e.g. ``"cauchy"`` marks an
    extensive stress for the Truesdell rate).
    """

    grid: Grid
    kind: Kind
    data: np.ndarray
    tag: Optional[str] = None

    def __post_init__(self):
        arr = np.array(self.data, dtype=np.float64)
        expected = self.kind.component_shape(self.grid.d) + self.grid.shape
        if arr.shape != expected:
            raise ValueError(f"{self.kind.value} on {self.grid} needs shape {expected}, got {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValueError("field samples must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "data", arr)

    def _check(self, other: "TensorField") -> None:
        if other.grid != self.grid:
            raise ValueError("fields live on different grids")
        if other.kind != self.kind:
            raise ValueError(f"kind mismatch: {self.kind.value} vs {other.kind.value}")

    def with_data(self, data) -> "TensorField":
        return TensorField(self.grid, self.kind, data, self.tag)

    def __add__(self, other):
        self._check(other)
        return self.with_data(self.data + other.data)

    def __sub__(self, other):
        self._check(other)
        return self.with_data(self.data - other.data)

    def __mul__(self, c):
        return self.with_data(self.data * float(c))

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_data(-self.data)

    def norm(self) -> float:
        """Discrete L2 norm over all components."""
        return float(np.sqrt(self.grid.cell_volume * np.sum(self.data ** 2)))


def same_grid(*fields) -> Grid:
    grid = fields[0].grid
    for f in fields[1:]:
        if f.grid != grid:
            raise ValueError("fields live on different grids")
    return grid


# --- array-level stencils ---------------------------------------------------

def partial(a: np.ndarray, axis: int, grid: Grid) -> np.ndarray:
    """Centered difference along spatial ``axis`` of a component-leading array."""
    return kernels.central_diff(a, a.ndim - grid.d + axis, grid.h)


def advect(v: np.ndarray, a: np.ndarray, grid: Grid) -> np.ndarray:
    """Transport term ``v . grad a``, componentwise in ``a``."""
    acc = v[0] * partial(a, 0, grid)
    for j in range(1, grid.d):
        acc = acc + v[j] * partial(a, j, grid)
    return acc


def gradient(f: np.ndarray, grid: Grid) -> np.ndarray:
    return np.stack([partial(f, j, grid) for j in range(grid.d)])


def jacobian(v: np.ndarray, grid: Grid) -> np.ndarray:
    """``G[i, j] = d_j v_i``."""
    return np.stack([np.stack([partial(v[i], j, grid) for j in range(grid.d)])
                     for i in range(grid.d)])


def divergence(v: np.ndarray, grid: Grid) -> np.ndarray:
    acc = partial(v[0], 0, grid)
    for j in range(1, grid.d):
        acc = acc + partial(v[j], j, grid)
    return acc


def div_rows(t: np.ndarray, grid: Grid) -> np.ndarray:
    """``(div T)_i = sum_j d_j T_ij``."""
    return np.stack([divergence(t[i], grid) for i in range(grid.d)])


def sym_gradient(v: np.ndarray, grid: Grid) -> np.ndarray:
    g = jacobian(v, grid)
    return 0.5 * (g + pw.transpose(g))


# --- field-level operations ----------------------------------------------------

DIFF_MODES = ("partial", "grad_scalar", "div_vector", "jacobian_of_vector", "div_matrix_rows")


def diff_op(A: TensorField, mode: str, axis: Optional[int] = None) -> TensorField:
    """Apply one of the centered-difference operators in :data:`DIFF_MODES`."""
    g = A.grid
    if mode == "partial":
        if axis is None or not 0 <= axis < g.d:
            raise ValueError(f"partial needs an axis in [0, {g.d})")
        return TensorField(g, A.kind, partial(A.data, axis, g))
    if mode == "grad_scalar":
        if A.kind.rank != 0:
            raise ValueError(f"grad_scalar needs a scalar field, got {A.kind.value}")
        return TensorField(g, Kind.Covector, gradient(A.data, g))
    if mode == "div_vector":
        if A.kind.rank != 1:
            raise ValueError(f"div_vector needs a vector-like field, got {A.kind.value}")
        return TensorField(g, Kind.IntensiveScalar, divergence(A.data, g))
    if mode == "jacobian_of_vector":
        if A.kind is not Kind.Vector:
            raise ValueError(f"jacobian_of_vector needs a Vector field, got {A.kind.value}")
        return TensorField(g, Kind.OpVV, jacobian(A.data, g))
    if mode == "div_matrix_rows":
        if A.kind.rank != 2:
            raise ValueError(f"div_matrix_rows needs a matrix field, got {A.kind.value}")
        return TensorField(g, Kind.Covector, div_rows(A.data, g))
    raise ValueError(f"unknown mode {mode!r}; expected one of {DIFF_MODES}")


def strain_rate(v: TensorField) -> TensorField:
    """``D(v) = (grad v + grad v^T) / 2`` as a symmetric OpVC field."""
    if v.kind is not Kind.Vector:
        raise ValueError(f"strain_rate needs a Vector field, got {v.kind.value}")
    return TensorField(v.grid, Kind.OpVC, sym_gradient(v.data, v.grid))


def integrate(f) -> float:
    """Rectangle rule ``h^d * sum`` of a scalar field (or a raw grid array with ``grid`` attached)."""
    if isinstance(f, TensorField):
        if f.kind.rank != 0:
            raise ValueError(f"integrate needs a scalar field, got {f.kind.value}")
        return float(f.grid.cell_volume * np.sum(f.data))
    raise TypeError("integrate expects a scalar TensorField")


def integrate_array(a: np.ndarray, grid: Grid) -> float:
    return float(grid.cell_volume * np.sum(a))


# --- presets -------------------------------------------------------------------

def fourier_modes(d: int, max_mode: int) -> list:
    """Wavevectors in ``[-K, K]^d`` with first nonzero entry positive, plus 0."""
    out = []
    for k in np.ndindex(*(2 * max_mode + 1,) * d):
        kv = tuple(int(c) - max_mode for c in k)
        nz = [c for c in kv if c != 0]
        if not nz or nz[0] > 0:
            out.append(kv)
    return out


def fourier_coefficients(grid: Grid, kind: Kind, seed: int, max_mode: int, amplitude: float):
    """Random coefficients used by the ``fourier_random`` preset.

    Returns ``(modes, a, b)`` where ``a[c, m]`` and ``b[c, m]`` multiply
    ``cos`` and ``sin`` of ``2 pi k_m . x / L`` in flattened component ``c``.
    """
    if max_mode < 0 or 2 * max_mode >= grid.n:
        raise ValueError(f"max_mode must lie in [0, n/2), got {max_mode}")
    modes = fourier_modes(grid.d, max_mode)
    ncomp = int(np.prod(kind.component_shape(grid.d), dtype=np.int64))
    rng = np.random.default_rng(seed)
    weight = np.array([amplitude / (1.0 + sum(c * c for c in k)) for k in modes])
    a = rng.standard_normal((ncomp, len(modes))) * weight
    b = rng.standard_normal((ncomp, len(modes))) * weight
    b[:, [i for i, k in enumerate(modes) if not any(k)]] = 0.0
    return modes, a, b


def _payload(value, kind: Kind, d: int) -> np.ndarray:
    shape = kind.component_shape(d)
    if isinstance(value, str):
        if value != "identity" or kind.rank != 2:
            raise ValueError(f"offset {value!r} only valid as 'identity' for matrix kinds")
        return np.eye(d)
    arr = np.asarray(value, dtype=np.float64)
    if arr.ndim == 0:
        return np.full(shape, float(arr))
    if arr.shape != shape:
        raise ValueError(f"payload shape {arr.shape} does not match {kind.value} components {shape}")
    return arr


def sample_field(grid: Grid, kind: Kind, preset: str, offset=0.0, **params) -> TensorField:
    """Deterministic initial/test field from a named preset.

    Presets: ``constant(c)``, ``fourier_random(seed, max_mode, amplitude)``,
    ``gaussian_bump(center, width, amplitude, periodicized=True)``,
    ``shear_layer(amplitude)``. ``offset`` (a number, a component-shaped
    array or ``"identity"`` for matrix kinds) is added afterwards.
    """
    d = grid.d
    cshape = kind.component_shape(d)
    x = grid.coords()
    if preset == "constant":
        c = _payload(params.pop("c"), kind, d)
        data = np.broadcast_to(c.reshape(cshape + (1,) * d), cshape + grid.shape).copy()
    elif preset == "fourier_random":
        modes, a, b = fourier_coefficients(grid, kind, int(params.pop("seed")),
                                           int(params.pop("max_mode")), float(params.pop("amplitude")))
        omega = 2.0 * np.pi / grid.L
        flat = np.zeros((a.shape[0],) + grid.shape)
        for m, k in enumerate(modes):
            phase = omega * sum(k[j] * x[j] for j in range(d))
            cos, sin = np.cos(phase), np.sin(phase)
            for c in range(a.shape[0]):
                flat[c] += a[c, m] * cos + b[c, m] * sin
        data = flat.reshape(cshape + grid.shape)
    elif preset == "gaussian_bump":
        center = np.asarray(params.pop("center"), dtype=np.float64).reshape(d)
        width = float(params.pop("width"))
        amp = _payload(params.pop("amplitude"), kind, d)
        periodic = bool(params.pop("periodicized", True))
        shifts = np.ndindex(*(3,) * d) if periodic else [(1,) * d]
        bump = np.zeros(grid.shape)
        for s in shifts:
            r2 = sum((x[j] - center[j] - (s[j] - 1) * grid.L) ** 2 for j in range(d))
            bump += np.exp(-r2 / (2.0 * width ** 2))
        data = amp.reshape(cshape + (1,) * d) * bump
    elif preset == "shear_layer":
        amp = float(params.pop("amplitude"))
        layer = amp * np.sin(2.0 * np.pi * x[d - 1] / grid.L)
        data = np.zeros(cshape + grid.shape)
        data.reshape((-1,) + grid.shape)[0] = layer
    else:
        raise ValueError(f"unknown preset {preset!r}")
    if params:
        raise ValueError(f"unexpected parameters for {preset}: {sorted(params)}")
    data = data + _payload(offset, kind, d).reshape(cshape + (1,) * d)
    return TensorField(grid, kind, data)
