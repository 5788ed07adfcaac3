"""Binary snapshots, JSON sidecars and the diagnostics CSV.

Snapshot layout (all little-endian)::

    b"EULG" | u32 version | u32 d | u32 n | u8 kind tag | f64 payload

The payload walks the nodes in row-major order and writes every component of
a node before moving to the next (components themselves row-major).
"""

from __future__ import annotations

import csv
import hashlib
import json
import struct
from pathlib import Path

import numpy as np

from .field import Grid, Kind, TensorField, make_grid

MAGIC = b"EULG"
VERSION = 1
_HEADER = struct.Struct("<4sIIIB")

CSV_COLUMNS = ("t", "E_total", "S_total", "E_drift_rel", "S_production_rate",
               "power_residual", "min_theta", "min_detF", "max_speed")


class OutputError(OSError):
    pass


def encode_snapshot(field: TensorField) -> bytes:
    g = field.grid
    ncomp = int(np.prod(field.kind.component_shape(g.d), dtype=np.int64))
    nodes = field.data.reshape(ncomp, g.num_nodes).T  # (N, ncomp)
    header = _HEADER.pack(MAGIC, VERSION, g.d, g.n, field.kind.tag)
    return header + np.ascontiguousarray(nodes, dtype="<f8").tobytes()


def decode_snapshot(blob: bytes, L: float = 2.0 * np.pi) -> TensorField:
    if len(blob) < _HEADER.size:
        raise ValueError("snapshot truncated: missing header")
    magic, version, d, n, tag = _HEADER.unpack_from(blob)
    if magic != MAGIC:
        raise ValueError(f"bad magic {magic!r}")
    if version != VERSION:
        raise ValueError(f"unsupported snapshot version {version}")
    kind = Kind.from_tag(tag)
    grid = make_grid(d, n, L)
    cshape = kind.component_shape(d)
    ncomp = int(np.prod(cshape, dtype=np.int64))
    payload = np.frombuffer(blob, dtype="<f8", offset=_HEADER.size)
    if payload.size != ncomp * grid.num_nodes:
        raise ValueError(f"payload has {payload.size} values, expected {ncomp * grid.num_nodes}")
    data = payload.reshape(grid.num_nodes, ncomp).T.reshape(cshape + grid.shape)
    return TensorField(grid, kind, data.astype(np.float64))


def write_snapshot(path, field: TensorField) -> None:
    path = Path(path)
    try:
        path.write_bytes(encode_snapshot(field))
    except OSError as exc:
        raise OutputError(f"cannot write snapshot {path}: {exc.strerror or exc}") from exc


def read_snapshot(path, L: float = 2.0 * np.pi) -> TensorField:
    path = Path(path)
    try:
        blob = path.read_bytes()
    except OSError as exc:
        raise OutputError(f"cannot read snapshot {path}: {exc.strerror or exc}") from exc
    return decode_snapshot(blob, L)


def config_hash(config: dict) -> str:
    canon = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def write_state_snapshot(out_dir, step: int, t: float, fields: dict, grid: Grid, cfg_hash: str,
                         role: str) -> Path:
    """Write one ``.eulg`` file per field plus a JSON sidecar; returns the sidecar path."""
    out_dir = Path(out_dir)
    stem = f"step_{step:07d}"
    listing = {}
    for name, field in fields.items():
        fname = f"{stem}_{name}.eulg"
        write_snapshot(out_dir / fname, field)
        listing[name] = {"file": fname, "kind": field.kind.value}
    sidecar = {"step": step, "time": t, "fields": listing, "config_hash": cfg_hash,
               "grid": {"d": grid.d, "n": grid.n, "L": grid.L}, "tau_role": role}
    side = out_dir / f"{stem}.json"
    try:
        side.write_text(json.dumps(sidecar, indent=2))
    except OSError as exc:
        raise OutputError(f"cannot write sidecar {side}: {exc.strerror or exc}") from exc
    return side


def read_state_snapshot(sidecar_path) -> tuple:
    """Return ``(sidecar dict, {name: TensorField})``."""
    side = Path(sidecar_path)
    meta = json.loads(side.read_text())
    L = float(meta["grid"]["L"])
    fields = {name: read_snapshot(side.parent / entry["file"], L) for name, entry in meta["fields"].items()}
    return meta, fields


def _fmt(x: float) -> str:
    return repr(float(x))


def write_diagnostics_csv(path, rows) -> None:
    path = Path(path)
    try:
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([_fmt(row[c]) for c in CSV_COLUMNS])
    except OSError as exc:
        raise OutputError(f"cannot write diagnostics {path}: {exc.strerror or exc}") from exc


def read_diagnostics_csv(path) -> list:
    with Path(path).open(newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header {reader.fieldnames}")
        return [{k: float(v) for k, v in row.items()} for row in reader]
