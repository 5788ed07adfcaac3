import json
import struct

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from eulgen.field import Kind, make_grid, sample_field
from eulgen.io import (CSV_COLUMNS, OutputError, config_hash, decode_snapshot, encode_snapshot,
                       read_diagnostics_csv, read_snapshot, read_state_snapshot, write_diagnostics_csv,
                       write_snapshot, write_state_snapshot)


@settings(max_examples=30, deadline=None)
@given(kind=st.sampled_from(list(Kind)), d=st.sampled_from([1, 2, 3]), seed=st.integers(0, 1000))
def test_snapshot_roundtrip_bitwise(kind, d, seed):
    g = make_grid(d, 8, 3.0)
    f = sample_field(g, kind, "fourier_random", seed=seed, max_mode=2, amplitude=1.0)
    back = decode_snapshot(encode_snapshot(f), L=3.0)
    assert back.kind is kind and back.grid == g
    assert np.array_equal(back.data, f.data)


def test_snapshot_layout_is_node_major(grid8):
    f = sample_field(grid8, Kind.Vector, "fourier_random", seed=1, max_mode=1, amplitude=1.0)
    blob = encode_snapshot(f)
    magic, version, d, n, tag = struct.unpack_from("<4sIIIB", blob)
    assert (magic, version, d, n, tag) == (b"EULG", 1, 2, 8, Kind.Vector.tag)
    payload = np.frombuffer(blob, "<f8", offset=17)
    # node (0, 1): both components are adjacent
    assert payload[2] == f.data[0, 0, 1] and payload[3] == f.data[1, 0, 1]


def test_snapshot_rejects_corruption(grid8):
    blob = encode_snapshot(sample_field(grid8, Kind.IntensiveScalar, "constant", c=1.0))
    with pytest.raises(ValueError, match="magic"):
        decode_snapshot(b"XXXX" + blob[4:])
    with pytest.raises(ValueError, match="payload"):
        decode_snapshot(blob[:-8])
    with pytest.raises(ValueError, match="truncated"):
        decode_snapshot(blob[:5])
    with pytest.raises(ValueError, match="version"):
        decode_snapshot(blob[:4] + struct.pack("<I", 9) + blob[8:])


def test_file_errors_carry_path(tmp_path, grid8):
    f = sample_field(grid8, Kind.IntensiveScalar, "constant", c=1.0)
    missing = tmp_path / "nope" / "x.eulg"
    with pytest.raises(OutputError, match="nope"):
        write_snapshot(missing, f)
    with pytest.raises(OutputError):
        read_snapshot(missing)
    write_snapshot(tmp_path / "x.eulg", f)
    assert np.array_equal(read_snapshot(tmp_path / "x.eulg").data, f.data)


def test_state_snapshot_sidecar(tmp_path, grid8):
    fields = {"pi": sample_field(grid8, Kind.Momentum, "constant", c=0.5),
              "tau": sample_field(grid8, Kind.ExtensiveScalar, "constant", c=2.0)}
    side = write_state_snapshot(tmp_path, 10, 0.25, fields, grid8, "abc", "entropy")
    assert side.name == "step_0000010.json"
    meta, back = read_state_snapshot(side)
    assert meta["time"] == 0.25 and meta["config_hash"] == "abc" and meta["tau_role"] == "entropy"
    assert meta["fields"]["pi"] == {"file": "step_0000010_pi.eulg", "kind": "Momentum"}
    assert np.array_equal(back["tau"].data, fields["tau"].data)


def test_diagnostics_csv_roundtrip_exact(tmp_path):
    rows = [{c: float(i) + 0.1 * j + 1e-17 * i for j, c in enumerate(CSV_COLUMNS)} for i in range(3)]
    rows[1]["E_drift_rel"] = -1.2345678901234567e-11
    p = tmp_path / "d.csv"
    write_diagnostics_csv(p, rows)
    assert p.read_text().splitlines()[0] == ",".join(CSV_COLUMNS)
    assert read_diagnostics_csv(p) == rows


def test_config_hash_is_canonical():
    a = {"x": 1, "y": {"b": 2, "a": [1, 2]}}
    b = json.loads(json.dumps({"y": {"a": [1, 2], "b": 2}, "x": 1}))
    assert config_hash(a) == config_hash(b) and len(config_hash(a)) == 64
    assert config_hash(a) != config_hash({"x": 2, "y": {"b": 2, "a": [1, 2]}})
