"""S1: regenerate figures from real solver runs, driving the solver only
through its command line interface.  Run with `pytest -v -s`.
"""
import subprocess
import sys

import pytest

from postproc.plot1d import main as plot1d_main
from postproc.plot2d import main as plot2d_main

PNG_MAGIC = b"\x89PNG"


def esdg_run(tmp_path, name, body):
    cfg = tmp_path / f"{name}.cfg"
    cfg.write_text(body)
    proc = subprocess.run(
        [sys.executable, "-m", "esdg", "run", str(cfg)],
        capture_output=True, text=True, timeout=1200,
    )
    assert proc.returncode == 0, proc.stderr
    return tmp_path / name


@pytest.fixture(scope="module")
def rp1_runs(tmp_path_factory):
    base = tmp_path_factory.mktemp("rp1")
    dirs = []
    for n in (100, 500):
        out = base / f"n{n}"
        esdg_run(base, f"n{n}", f"problem=rp1\nk=1\ncells={n}\nout={out}\n")
        dirs.append(out)
    return dirs


@pytest.fixture(scope="module")
def rp2d1_run(tmp_path_factory):
    base = tmp_path_factory.mktemp("rp2d1")
    out = base / "grid40"
    esdg_run(base, "grid40", f"problem=rp2d1\nk=1\ncells=40x40\nout={out}\n")
    return out


def test_s1_plot1d_four_panel(rp1_runs, tmp_path):
    out = tmp_path / "rp1_panels.png"
    code = plot1d_main([
        str(rp1_runs[0] / "solution.dat"), str(rp1_runs[1] / "solution.dat"),
        "--vars", "rho,ux,p,entropy", "--out", str(out),
    ])
    ok = code == 0 and out.exists() and out.read_bytes()[:4] == PNG_MAGIC
    print(f"S1 plot1d four-panel from rp1 at 100 and 500 cells: {'PASS' if ok else 'FAIL'}")
    assert ok


def test_s1_plot2d_contours(rp2d1_run, tmp_path):
    out = tmp_path / "rp2d1_lnrho.png"
    code = plot2d_main([
        str(rp2d1_run / "solution.dat"), "--var", "lnrho", "--contours", "25",
        "--out", str(out),
    ])
    ok = code == 0 and out.exists() and out.read_bytes()[:4] == PNG_MAGIC
    print(f"S1 plot2d 25-contour ln(rho) from rp2d1: {'PASS' if ok else 'FAIL'}")
    assert ok
