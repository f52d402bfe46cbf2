import csv
import io
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from noncoh import __version__
from noncoh.channels import amplitude_damping, identity_channel, save_channel
from noncoh.cli import main, parse_basis, parse_grid, parse_state, UsageError

ZERO_PLUS = "1,0,0,0;0.7071067811865476,0,0.7071067811865476,0"


def run(args, tmp_path, name="out.txt"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, out.read_text() if out.exists() else ""


def read_csv(text):
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(lines))))


def test_parse_specs():
    b = parse_basis(ZERO_PLUS)
    assert np.isclose(b.overlap, 1 / math.sqrt(2))
    assert np.isclose(parse_basis("sym:0.5,1.0").overlap, math.cos(0.5))
    assert np.allclose(parse_state("0,0,1"), np.diag([1, 0]))
    assert np.allclose(parse_state("0,0,1,0"), np.diag([0, 1]))
    assert parse_grid("0.05:1:0.05")[-1] == 1.0 and len(parse_grid("0.05:1:0.05")) == 20
    assert parse_grid("0.1,0.7") == [0.1, 0.7]
    with pytest.raises(UsageError, match="'q'"):
        parse_state("0,q,1")
    with pytest.raises(UsageError):
        parse_basis("1,0,0,0")


def test_coherence_command(tmp_path):
    code, text = run(["coherence", "--state", "0,0,0", "--basis", ZERO_PLUS], tmp_path)
    assert code == 0
    assert "c_trace_euclidean: 0.7071067812" in text
    assert f"# version={__version__}" in text and "# seed=0" in text
    code, text = run(["coherence", "--state", "0.5,0,0.5", "--basis", ZERO_PLUS, "--format", "json"], tmp_path)
    doc = json.loads(text)
    assert abs(doc["c_trace_euclidean"]) < 1e-12 and abs(doc["c_rel_bits"]) < 1e-9


def test_coherence_errors(tmp_path, capsys):
    assert main(["coherence", "--state", "0,0,0", "--basis", "1,0,0,0;1,0,0,0"]) == 2
    assert "parallel" in capsys.readouterr().err
    assert main(["coherence", "--state", "0,0,2", "--basis", ZERO_PLUS]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_scatter(tmp_path):
    code, text = run(["scatter", "--samples", "300", "--seed", "4"], tmp_path)
    assert code == 0
    rows = read_csv(text)
    assert len(rows) == 300
    assert list(rows[0]) == ["S_bits", "c_rel_bits", "c_trace", "purity"]
    for row in rows:
        s, p = float(row["S_bits"]), float(row["purity"])
        assert 0 <= s <= 1 and 0.5 <= p <= 1
        assert float(row["c_rel_bits"]) >= 0


def test_scatter_half_convention(tmp_path):
    _, a = run(["scatter", "--samples", "50"], tmp_path, "a")
    _, b = run(["scatter", "--samples", "50", "--convention", "half"], tmp_path, "b")
    ca = [float(r["c_trace"]) for r in read_csv(a)]
    cb = [float(r["c_trace"]) for r in read_csv(b)]
    assert np.allclose(cb, np.array(ca) / 2, rtol=1e-9)


def test_duality_sweep(tmp_path):
    code, text = run(["duality-sweep", "--samples", "2000", "--grid", "0.5:1:0.25"], tmp_path)
    assert code == 0
    rows = read_csv(text)
    assert [float(r["r"]) for r in rows] == [0.5, 0.75, 1.0]
    assert list(rows[0]) == ["r", "max_c_tilde", "max_d_tilde", "max_sum", "samples", "discarded", "seed"]
    assert all(float(r["max_sum"]) <= 1.5 + 1e-9 for r in rows)
    assert main(["duality-sweep", "--samples", "0"]) == 2
    assert main(["duality-sweep", "--grid", "0.5,2"]) == 2


def test_bounds(tmp_path):
    code, text = run(["bounds", "--family", "triangle", "--samples", "5000"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["violations_lower"] == 0 and doc["family"] == "triangle"
    code, text = run(["bounds", "--family", "mutual:2.0943951023931953", "--samples", "5000"], tmp_path)
    assert code == 0
    doc = json.loads(text)
    assert doc["violations_lower"] > 0 and not doc["gated"]
    assert main(["bounds", "--family", "hexagon"]) == 2


def test_energy_cost(tmp_path):
    code, text = run(["energy-cost", "--temperatures", "1", "--alphas", repr(math.pi / 4)], tmp_path)
    assert code == 0
    rows = read_csv(text)
    assert list(rows[0]) == ["T", "alpha", "phi", "e1", "delta", "c_trace", "ratio"]
    assert np.isclose(float(rows[0]["delta"]), 0.5846120, atol=1e-7)
    code, text = run(["energy-cost", "--temperatures", "0.1:10:5", "--alphas", "0.1:1.5:4", "--e1", "0.5,2"], tmp_path)
    rows = read_csv(text)
    assert code == 0 and len(rows) == 40
    assert all(np.isclose(float(r["ratio"]), float(r["e1"]) / 2) for r in rows)
    code, text = run(["energy-cost", "--temperatures", "1", "--alphas", "0.5", "--e1", "2", "--units-e1"], tmp_path)
    row = read_csv(text)[0]
    assert np.isclose(float(row["delta"]), 0.5 * (math.cos(0.5) + math.tanh(1.0)))
    assert main(["energy-cost", "--temperatures", "-1"]) == 2


def test_channel_check(tmp_path):
    ident = tmp_path / "id.json"
    save_channel(identity_channel(), ident)
    code, text = run(["channel-check", str(ident), "--basis", ZERO_PLUS], tmp_path)
    assert code == 0 and "nomio: true" in text and "nio: true" in text
    damp = tmp_path / "ad.json"
    save_channel(amplitude_damping(0.3), damp)
    code, text = run(["channel-check", str(damp), "--basis", "sym:1.0", "--format", "json"], tmp_path)
    doc = json.loads(text)
    assert doc["nomio"] is False and "nomio_witness_distance" in doc
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"kraus": [[[1, 0], [0, 0], [0, 0], [0.5, 0]]]}))
    assert main(["channel-check", str(bad), "--basis", ZERO_PLUS]) == 2
    assert main(["channel-check", str(tmp_path / "missing.json"), "--basis", ZERO_PLUS]) == 2


def test_phase_flip_demo(tmp_path):
    code, text = run(["channel-check", "--demo", "phase-flip", "--format", "json"], tmp_path)
    doc = json.loads(text)
    assert code == 0
    assert doc["c_trace_out"] > doc["c_trace_in"] + 0.1
    assert doc["monotone"] is False
    assert np.allclose(doc["output_bloch"], [-1 / math.sqrt(2), 0, -1 / math.sqrt(2)])


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "noncoh.cli", "coherence", "--state", "0,0,0", "--basis", "sym:0.5"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "c_trace_euclidean" in proc.stdout
