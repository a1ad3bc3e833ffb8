from __future__ import annotations

import json
import math
import re
import shutil
import subprocess
import sys
from pathlib import Path

import pytest

from circpoly.cli import main
from circpoly.figure import circle, lens, rectangle, square, stadium
from circpoly.io import write_figure
from circpoly.svg import piece_colors, render

DATA = Path(__file__).parent / "data"


def run(capsys, *argv) -> tuple[int, list[dict], str]:
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, [json.loads(line) for line in out.splitlines() if line.strip()], err


@pytest.fixture
def files(tmp_path):
    figs = {
        "square": square(2.0),
        "rect": rectangle(1.0, 4.0),
        "circle": circle(1.0),
        "lens": lens(1.0, math.pi),
        "stadium": stadium(1.0, 2.0),
    }
    out = {}
    for name, c in figs.items():
        p = tmp_path / f"{name}.cpfig"
        write_figure(p, c)
        out[name] = p
    out["dir"] = tmp_path
    return out


# --- the documented examples ---------------------------------------------------------

def test_equidecomposable_square_rectangle(capsys, files):
    code, (doc,), _ = run(capsys, "equidecomposable", files["square"], files["rect"])
    assert code == 0
    assert doc["equidecomposable"] is True


def test_dissect_then_verify(capsys, files):
    d = files["dir"] / "d.cpdis"
    code, (doc,), _ = run(capsys, "dissect", files["square"], files["rect"], "-o", d)
    assert code == 0 and doc["pieces"] > 1
    code, (rep,), _ = run(capsys, "verify", d, "--samples", 100000)
    assert code == 0
    assert rep["verdict"] == "pass"


def test_unique_circle(capsys, files):
    code, (doc,), _ = run(capsys, "unique", files["circle"])
    assert code == 0 and doc == {"uniquely_composed": True}


# --- exit codes ------------------------------------------------------------------

def test_false_verdicts_exit_one(capsys, files):
    assert run(capsys, "unique", files["square"])[0] == 1
    assert run(capsys, "is-oval", files["stadium"], "--route", "both")[0] == 1
    code, (doc,), _ = run(capsys, "equidecomposable", files["circle"], files["square"])
    assert code == 1 and doc["equidecomposable"] is False
    code, (doc,), _ = run(capsys, "dissect", files["circle"], files["lens"])
    assert code == 1 and doc["clause"] == "areas"


def test_input_errors_exit_two(capsys, files):
    bad = files["dir"] / "bad.cpfig"
    bad.write_text("{")
    code, out, err = run(capsys, "area", bad)
    assert code == 2 and out == [] and "FormatError" in err
    code, _, err = run(capsys, "area", files["dir"] / "missing.cpfig")
    assert code == 2
    code, _, err = run(capsys, "inner", files["circle"], 1.0)
    assert code == 2 and "DegenerateCore" in err
    code, _, err = run(capsys, "generate", "oval", "--signature", '{"corners": 6.283185307179586}')
    assert code == 2 and "NoOvalExists" in err
    code, _, err = run(capsys, "generate", "symmetric")
    assert code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_invalid_chain_is_reported_by_validate(capsys, files):
    p = files["dir"] / "open.cpfig"
    doc = json.loads(files["square"].read_text())
    doc["elements"][0]["len"] = 3.0
    p.write_text(json.dumps(doc))
    code, (rep,), _ = run(capsys, "validate", p)
    assert code == 1 and rep["valid"] is False
    assert rep["violations"]
    assert run(capsys, "validate", files["lens"])[0] == 0


# --- queries and surgeries ---------------------------------------------------------

def test_queries(capsys, files):
    _, (doc,), _ = run(capsys, "area", files["lens"])
    assert doc["area"] == pytest.approx(math.pi / 2 - 1, abs=1e-12)
    _, (doc,), _ = run(capsys, "signature", files["lens"])
    assert doc["corners"] == pytest.approx(math.pi) and doc["arcs"] == [[1.0, pytest.approx(math.pi)]]
    _, (doc,), _ = run(capsys, "profile", files["lens"])
    assert doc["breakpoints"]
    _, (doc,), _ = run(capsys, "balance", files["lens"])
    assert doc["alpha"] == pytest.approx(doc["beta"], abs=1e-9)
    code, (doc,), _ = run(capsys, "is-oval", files["lens"], "--route", "clauses")
    assert code == 0 and doc["is_oval"] is True


def test_oval_of_and_offsets(capsys, files):
    out = files["dir"] / "oval.cpfig"
    code, (doc,), _ = run(capsys, "oval-of", files["lens"], "-o", out)
    assert code == 0 and json.loads(out.read_text())["oval"] is True
    assert run(capsys, "unique", out)[0] == 0
    off = files["dir"] / "off.cpfig"
    code, (doc,), _ = run(capsys, "offset", files["square"], 1.0, "-o", off)
    _, (a,), _ = run(capsys, "area", off)
    assert a["area"] == pytest.approx(12 + math.pi, rel=1e-12)
    code, (doc,), _ = run(capsys, "inner", off, 1.0)
    assert code == 0


def test_surgeries(capsys, files):
    code, (doc,), _ = run(capsys, "excise", files["stadium"])
    assert code == 0 and doc["areaDelta"] == pytest.approx(-4.0)
    code, (doc,), _ = run(capsys, "round-corners", files["lens"])
    assert code == 0 and doc["areaDelta"] > 0
    code, _, err = run(capsys, "hinge", files["lens"])
    assert code == 2 and "two symmetric corner pairs" in err
    sq = files["dir"] / "sym.cpfig"
    sig = '{"corners": 3.141592653589793, "arcs": [[1, 3.141592653589793]]}'
    run(capsys, "generate", "symmetric", "--signature", sig, "--seed", 4, "-o", sq)
    code, (doc,), _ = run(capsys, "double", sq, "--out-minus", files["dir"] / "m.cpfig")
    assert code == 0
    assert sum(doc["areas"]) == pytest.approx(2 * doc["area"], rel=1e-9)
    assert (files["dir"] / "m.cpfig").exists()


def test_generate_is_deterministic(capsys):
    sig = '{"corners": 2, "arcs": [[1, 2], [2, 2.283185307179586]], "segTotal": 1.5}'
    a = run(capsys, "generate", "symmetric", "--signature", sig, "--seed", 9)[1]
    b = run(capsys, "generate", "symmetric", "--signature", sig, "--seed", 9)[1]
    c = run(capsys, "generate", "symmetric", "--signature", sig, "--seed", 10)[1]
    assert a == b and a != c
    assert run(capsys, "generate", "polygon", "--n", 5, "--seed", 2)[1] == run(
        capsys, "generate", "polygon", "--n", 5, "--seed", 2)[1]


def test_round_trip_files_are_byte_identical(capsys, files):
    out = files["dir"] / "copy.cpfig"
    run(capsys, "offset", files["lens"], 0.5, "-o", out)
    first = out.read_bytes()
    again = files["dir"] / "again.cpfig"
    run(capsys, "inner", out, 0.5, "-o", again)
    run(capsys, "offset", again, 0.5, "-o", out)
    assert out.read_bytes() == first


# --- rendering ---------------------------------------------------------------------

def test_render_circle(capsys, files):
    _, (doc,), _ = run(capsys, "render", files["circle"])
    svg = doc["svg"]
    assert svg.count("<path ") == 1
    assert len(re.findall(r"\bA ", svg)) == 2


def test_render_lens(capsys, files):
    _, (doc,), _ = run(capsys, "render", files["lens"])
    svg = doc["svg"]
    assert len(re.findall(r"\bA ", svg)) == 2
    assert svg.count('class="corner"') == 2


def test_render_dissection_matches_stored(capsys, files):
    d = files["dir"] / "d.cpdis"
    gen = files["dir"] / "sq.cpfig"
    run(capsys, "generate", "square", "--side", 2, "-o", gen)
    rect = files["dir"] / "re.cpfig"
    run(capsys, "generate", "rectangle", "--width", 1, "--height", 4, "-o", rect)
    run(capsys, "dissect", gen, rect, "-o", d)
    out = files["dir"] / "d.svg"
    code, _, _ = run(capsys, "render", d, "-o", out)
    assert code == 0
    stored = (DATA / "square_rectangle_dissection.svg").read_text()
    assert out.read_text() == stored
    colors = piece_colors(stored)
    assert all(len(v) == 2 and v[0] == v[1] for v in colors.values())
    assert stored.count('<g class="source">') == 1 and stored.count('<g class="target">') == 1


def test_render_is_deterministic():
    assert render(lens(1.0, 2.0)) == render(lens(1.0, 2.0))
    with pytest.raises(TypeError):
        render("not a figure")


# --- suites ------------------------------------------------------------------------

def test_suite_json_lines_and_figures(capsys, tmp_path):
    figs = tmp_path / "figs"
    code, lines, err = run(capsys, "suite", "--criterion", 5, "--criterion", 9, "--criterion", 10,
                           "--count", 3, "--figures", figs)
    assert code == 0
    summaries = [x for x in lines if x.get("summary")]
    assert [s["criterion"] for s in summaries] == [5, 9, 10]
    assert all(s["passed"] for s in summaries)
    for name in ("excess_scatter.png", "area_diameter_excess.png"):
        data = (figs / name).read_bytes()
        assert data.startswith(b"\x89PNG")


def test_suite_unknown_criterion(capsys):
    assert run(capsys, "suite", "--criterion", 11)[0] == 2


def test_console_script():
    exe = shutil.which("circpoly")
    cmd = [exe] if exe else [sys.executable, "-m", "circpoly.cli"]
    res = subprocess.run(cmd + ["suite", "--criterion", "1"], capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout.splitlines()[-1])["passed"] is True
