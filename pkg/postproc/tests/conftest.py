import numpy as np
import pytest


def write_solution_1d(path, n=30):
    x = np.linspace(0.0, 1.0, n)
    rho = 2.0 + np.sin(2 * np.pi * x)
    cols = np.column_stack([x, rho, 0.5 * np.ones(n), np.zeros(n), np.ones(n), rho * 0.1])
    np.savetxt(path, cols, fmt="%.17e", header="x rho ux uy p entropy", comments="# ")
    return path


def write_solution_2d(path, nx=8, ny=6):
    xs = np.linspace(0.0, 1.0, nx)
    ys = np.linspace(0.0, 1.0, ny)
    X, Y = np.meshgrid(xs, ys)  # row-major: y slow, x fast
    rho = 1.0 + 0.5 * np.sin(2 * np.pi * X) * np.cos(2 * np.pi * Y)
    flat = lambda a: a.reshape(-1)
    cols = np.column_stack([
        flat(X), flat(Y), flat(rho),
        np.zeros(nx * ny), np.zeros(nx * ny), np.ones(nx * ny), flat(rho) * 0.1,
    ])
    np.savetxt(path, cols, fmt="%.17e", header="x y rho ux uy p entropy", comments="# ")
    return path


def write_entropy(path, n=12):
    t = np.linspace(0.0, 0.4, n)
    u = 5.0 - 2.0 * t
    np.savetxt(path, np.column_stack([t, u]), fmt="%.17e", header="t total_entropy", comments="# ")
    return path


def write_manifest(path, problem="rp1", k=1, cells="100"):
    path.write_text(
        f"problem={problem}\nk={k}\ncells={cells}\ncfl=0.1\ntvb_m=10.0\n"
        "tvb_limiter=on\nbounds_limiter=on\nflux=lf\nout=x\nsnapshots=\n"
        "# wall_time_s=1.0\n"
    )
    return path


@pytest.fixture
def run_dir(tmp_path):
    """A synthetic 1D run directory in the solver's documented format."""
    d = tmp_path / "run1"
    d.mkdir()
    write_solution_1d(d / "solution.dat")
    write_entropy(d / "entropy.dat")
    write_manifest(d / "manifest.txt")
    return d


@pytest.fixture
def run_dir_2d(tmp_path):
    d = tmp_path / "run2d"
    d.mkdir()
    write_solution_2d(d / "solution.dat")
    write_manifest(d / "manifest.txt", problem="rp2d1", cells="8x6")
    return d
