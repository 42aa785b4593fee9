import numpy as np
import pytest

from tmodules.algebra import GF, LaurentSeries, Poly
from tmodules.tmodule import drinfeld_module

ACCEPTANCE_RESULTS = {}


def rand_poly(F, rng, maxdeg, monic=False):
    d = int(rng.integers(0, maxdeg + 1))
    c = rng.integers(0, F.q, d + 1)
    if monic:
        c[-1] = 1
    return Poly(F, c)


def rand_series(F, rng, prec=12, vmin=-4, vmax=4, var="t"):
    v = int(rng.integers(vmin, vmax + 1))
    n = max(0, prec - v)
    return LaurentSeries(F, v, rng.integers(0, F.q, n), prec, var)


def rand_unit_series(F, rng, prec=12, vmin=-4, vmax=4, var="t"):
    while True:
        s = rand_series(F, rng, prec, vmin, vmax, var)
        if not s.is_zero():
            return s


def rand_drinfeld(q, rng, maxdeg=2, rank=2):
    F = GF.get(q)
    gs = []
    for s in range(1, rank + 1):
        g = rand_poly(F, rng, maxdeg)
        while s == rank and g.is_zero():
            g = rand_poly(F, rng, maxdeg)
        gs.append(g)
    return drinfeld_module(q, gs)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if ok else 'FAIL'}  {detail}")


def rand_linearization_instance(rng, q, m, r, N):
    """Random (i, j0, js) over F_q[t]/(t^N) with i invertible (entries shaped (m, m, N))."""
    from tmodules.algebra import rank
    F = GF.get(q)
    while True:
        i = rng.integers(0, q, (m, m, N))
        if rank(F, i[:, :, 0]) == m:
            break
    j0 = rng.integers(0, q, (m, m, N))
    js = [rng.integers(0, q, (m, m, N)) for _ in range(r)]
    return F, i, j0, js
