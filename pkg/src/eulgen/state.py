"""State, cotangent and driving-force containers plus the L2 dual pairing."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import Grid, Kind, TensorField, same_grid

ROLES = ("entropy", "internal_energy")


def _check_role(role: str) -> str:
    if role not in ROLES:
        raise ValueError(f"unknown tau role {role!r}; expected one of {ROLES}")
    return role


class _Blocks:
    """Shared arithmetic for four-block containers."""

    _names: tuple = ()
    _kinds: tuple = ()

    def blocks(self) -> tuple:
        return tuple(getattr(self, k) for k in self._names)

    def arrays(self) -> tuple:
        return tuple(b.data for b in self.blocks())

    @property
    def grid(self) -> Grid:
        return self.blocks()[0].grid

    def _extra(self) -> dict:
        return {}

    @classmethod
    def from_arrays(cls, grid: Grid, arrays, **extra):
        fields = [TensorField(grid, k, np.asarray(a, dtype=np.float64)) for k, a in zip(cls._kinds, arrays)]
        return cls(*fields, **extra)

    def _combine(self, other, op):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        same_grid(self.blocks()[0], other.blocks()[0])
        return self.from_arrays(self.grid, [op(a, b) for a, b in zip(self.arrays(), other.arrays())],
                                **self._extra())

    def __add__(self, other):
        return self._combine(other, np.add)

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __mul__(self, c):
        return self.from_arrays(self.grid, [c * a for a in self.arrays()], **self._extra())

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1.0

    def to_vector(self) -> np.ndarray:
        return np.concatenate([a.ravel() for a in self.arrays()])

    @classmethod
    def from_vector(cls, grid: Grid, vec: np.ndarray, **extra):
        out, pos = [], 0
        for k in cls._kinds:
            shape = k.component_shape(grid.d) + grid.shape
            size = int(np.prod(shape))
            out.append(np.asarray(vec[pos:pos + size]).reshape(shape))
            pos += size
        if pos != vec.size:
            raise ValueError(f"vector length {vec.size} does not match grid (expected {pos})")
        return cls.from_arrays(grid, out, **extra)

    def norm(self) -> float:
        """Discrete L2 norm over all blocks."""
        vol = self.grid.cell_volume
        return float(np.sqrt(vol * sum(np.sum(a * a) for a in self.arrays())))


@dataclass(frozen=True, eq=False)
class State(_Blocks):
    """``q = (pi, F, Fp, tau)``; also used for tangent directions."""

    pi: TensorField
    F: TensorField
    Fp: TensorField
    tau: TensorField
    role: str = "entropy"

    _names = ("pi", "F", "Fp", "tau")
    _kinds = (Kind.Momentum, Kind.TwoPoint, Kind.IntensiveMatrix, Kind.ExtensiveScalar)

    def __post_init__(self):
        _check_role(self.role)
        for f, k, name in zip(self.blocks(), self._kinds, self._names):
            if f.kind is not k:
                raise ValueError(f"State.{name} must be {k.value}, got {f.kind.value}")
        same_grid(*self.blocks())

    def _extra(self) -> dict:
        return {"role": self.role}

    def with_tau(self, tau: np.ndarray, role: str) -> "State":
        return State(self.pi, self.F, self.Fp, TensorField(self.grid, Kind.ExtensiveScalar, tau), role)


@dataclass(frozen=True, eq=False)
class CotState(_Blocks):
    """Dual direction ``zeta = (w, Xi_e, Xi_p, kappa)``."""

    v: TensorField
    xi_e: TensorField
    xi_p: TensorField
    kappa: TensorField

    _names = ("v", "xi_e", "xi_p", "kappa")
    _kinds = (Kind.Vector, Kind.TwoPoint, Kind.IntensiveMatrix, Kind.IntensiveScalar)

    def __post_init__(self):
        for f, k, name in zip(self.blocks(), self._kinds, self._names):
            if f.kind is not k:
                raise ValueError(f"CotState.{name} must be {k.value}, got {f.kind.value}")
        same_grid(*self.blocks())

    @classmethod
    def zeros(cls, grid: Grid) -> "CotState":
        return cls.from_arrays(grid, [np.zeros(k.component_shape(grid.d) + grid.shape) for k in cls._kinds])

    @classmethod
    def e_tau(cls, grid: Grid) -> "CotState":
        """The covector ``(0, 0, 0, 1)``."""
        arrs = [np.zeros(k.component_shape(grid.d) + grid.shape) for k in cls._kinds]
        arrs[3] = np.ones(grid.shape)
        return cls.from_arrays(grid, arrs)


@dataclass(frozen=True, eq=False)
class EtaForces(_Blocks):
    """Driving forces ``(eta_m, eta_p, eta_t)``; ``eta_m`` is symmetric."""

    eta_m: TensorField
    eta_p: TensorField
    eta_t: TensorField

    _names = ("eta_m", "eta_p", "eta_t")
    _kinds = (Kind.OpCV, Kind.IntensiveMatrix, Kind.IntensiveScalar)

    def __post_init__(self):
        for f, k, name in zip(self.blocks(), self._kinds, self._names):
            if f.kind is not k:
                raise ValueError(f"EtaForces.{name} must be {k.value}, got {f.kind.value}")
        same_grid(*self.blocks())


def _sum_products(a_blocks, b_blocks, grid: Grid) -> float:
    total = 0.0
    for a, b in zip(a_blocks, b_blocks):
        total += float(np.sum(a * b))
    return grid.cell_volume * total


def pair(zeta, dq) -> float:
    """Rectangle-rule dual pairing of matching block containers."""
    if len(zeta.blocks()) != len(dq.blocks()):
        raise TypeError(f"cannot pair {type(zeta).__name__} with {type(dq).__name__}")
    grid = same_grid(zeta.blocks()[0], dq.blocks()[0])
    return _sum_products(zeta.arrays(), dq.arrays(), grid)
