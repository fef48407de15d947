import json
import math
import os
import subprocess
import sys

import pytest

from hyperspectra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_pants_and_spectrum(capsys, tmp_path):
    p = tmp_path / "p.json"
    code, _, _ = run(capsys, "pants", "-o", str(p))
    assert code == 0
    code, out, _ = run(capsys, "spectrum", "--group", str(p), "--cutoff", "4", "--diameter", "2")
    assert code == 0
    doc = json.loads(out)
    assert doc["entries"][0]["length"] == pytest.approx(2 * math.acosh(3), abs=1e-9)
    assert doc["entries"][0]["mult"] == 3


def test_spectrum_default_diameter(capsys):
    code, out, _ = run(capsys, "spectrum", "--pants-cusped", "--cutoff", "4")
    assert code == 0
    assert json.loads(out)["entries"][0]["length"] == pytest.approx(2 * math.acosh(3), abs=1e-9)


def test_compare_exit_codes(capsys, tmp_path):
    a = tmp_path / "a.json"
    assert run(capsys, "spectrum", "--pants-cusped", "--cutoff", "4", "--diameter", "2",
               "-o", str(a))[0] == 0
    code, out, _ = run(capsys, "compare", str(a), str(a), "--require", "4")
    assert code == 0 and json.loads(out)["payload"]["agreeUpTo"] == 4
    b = tmp_path / "b.json"
    doc = json.loads(a.read_text())
    doc["entries"].append({"length": 3.9, "rotation": 0.0, "mult": 1, "witness": []})
    b.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "compare", str(a), str(b), "--require", "4")
    assert code == 1 and json.loads(out)["payload"]["agreeUpTo"] == 3.9


def test_genus2(capsys):
    code, out, _ = run(capsys, "genus2", "--curve-length", "0.9", "--twist", "0.7")
    doc = json.loads(out)
    assert code == 0 and doc["signature"] == [2, 0] and doc["twist"] == 0.7


def test_diagram_svg(capsys, tmp_path):
    svg = tmp_path / "out.svg"
    code, out, _ = run(capsys, "diagram", "--pants-cusped", "--floor", "0.2", "--svg", str(svg))
    assert code == 0 and json.loads(out)["kind"] == "diagram"
    full = [l for l in svg.read_text().splitlines() if 'class="full"' in l]
    assert full and all('r="50.00"' in l for l in full)


def test_isolate(capsys):
    code, out, _ = run(capsys, "isolate", "--pants-cusped")
    p = json.loads(out)["payload"]
    assert code == 0 and len(p["lines"]) == 1
    line = p["lines"][0]
    assert line["pairwiseTangent"] and line["isolatedAbove"] and line["isolatedBelow"]
    assert p["rotationalSymmetry"]["3"] is False and p["rotationalSymmetry"]["4"] is False


def test_nz_farey_asymptotics(capsys):
    code, out, _ = run(capsys, "nz", "--lhat", "100", "10", "1", "--vol", str(10 * 0.03905),
                       "--margin", "1")
    assert code == 0 and json.loads(out)["payload"]["sufficientlyDifferent"]["holds"]
    code, out, _ = run(capsys, "nz", "--lattice", "1", "0", "0", "1", "--slope", "3", "4")
    assert json.loads(out)["payload"]["normalizedLengths"] == [5.0]
    code, out, _ = run(capsys, "farey", "inf", "2/5")
    assert json.loads(out)["payload"]["distance"] == 3
    code, out, _ = run(capsys, "farey", "--matrix", "2", "1", "1", "1")
    assert json.loads(out)["payload"]["final"] > 0
    code, out, _ = run(capsys, "asymptotics", "--A", "10", "--c", "0.9", "--L", "2")
    p = json.loads(out)["payload"]
    assert code == 0 and p["crossover"] > 100 and p["samples"][0]["li"] == pytest.approx(3.909070576)


def test_error_exit_codes(capsys):
    code, out, err = run(capsys, "spectrum", "--pants-cusped", "--cutoff", "20", "--budget", "100")
    assert code == 3 and json.loads(err)["error"] == "CutoffTooLarge"
    code, out, err = run(capsys, "nz", "--lhat", "1", "10", "100", "--vol", "1")
    assert code == 2 and json.loads(err)["error"] == "UnsortedInput"
    code, out, err = run(capsys, "pants", "--boundary", "1", "0", "1")
    assert code == 2 and json.loads(err)["error"] == "InvalidBoundaryData"


def test_determinism(tmp_path):
    cmd = [sys.executable, "-m", "hyperspectra.cli", "spectrum", "--pants-cusped", "--cutoff", "4.6",
           "--diameter", "2"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd + ["--workers", "3"], capture_output=True, check=True).stdout
    assert a == b and a


def test_reproduce_no_color(tmp_path):
    env = dict(os.environ, NO_COLOR="1")
    r = subprocess.run([sys.executable, "-m", "hyperspectra.cli", "reproduce", "--only", "3", "6"],
                       capture_output=True, text=True, env=env)
    assert r.returncode == 0
    assert "\033[" not in r.stdout
    assert r.stdout.count("[PASS]") == 2


def test_help_lists_subcommands(capsys):
    with pytest.raises(SystemExit):
        main(["--help"])
    out = capsys.readouterr().out
    for name in ("pants", "genus2", "spectrum", "compare", "diagram", "isolate", "nz", "farey",
                 "asymptotics", "reproduce"):
        assert name in out
