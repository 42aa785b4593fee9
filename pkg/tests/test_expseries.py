import numpy as np
import pytest

from conftest import rand_drinfeld
from tmodules.algebra import GF, LaurentSeries, Poly, series_from_rational
from tmodules.algebra.linalg import sylvester_solve
from tmodules.analytic import (ball_constants, compose_exp_log, exp_coeffs, exp_eval,
                               functional_equation_residual, log_coeffs, log_eval)
from tmodules.analytic.vectors import apply_phi, pm_apply
from tmodules.fixtures import fixture_path
from tmodules.tmodule import TModule, constant_module, drinfeld_module, make_carlitz_power

W = 24


def _all_zero(M):
    return all(a.is_zero() for row in M for a in row)


def _rand_vector(F, rng, n, vlo, prec):
    out = []
    for _ in range(n):
        c = rng.integers(0, F.q, max(0, prec - vlo))
        out.append(LaurentSeries(F, vlo, c, prec, "z"))
    return out


def test_carlitz_e1_exact():
    F = GF.get(2)
    ex = exp_coeffs(make_carlitz_power(2, 1), W)
    want = series_from_rational(Poly.one(F), Poly(F, [0, 1, 1]), W, "z")
    assert ex[1][0][0].equals(want)
    assert ex[1][0][0].prec == W


def test_carlitz_e2():
    F = GF.get(2)
    ex = exp_coeffs(make_carlitz_power(2, 1), W)
    den = Poly(F, [0, 1, 0, 0, 1]) * Poly(F, [0, 1, 1]) ** 2
    want = series_from_rational(Poly.one(F), den, W, "z")
    assert ex[2][0][0].equals(want)


def test_e0_is_identity():
    E = make_carlitz_power(3, 3)
    ex = exp_coeffs(E, W)
    for i in range(3):
        for j in range(3):
            a = ex[0][i][j]
            assert a == (LaurentSeries.one(a.field, "z") if i == j else LaurentSeries.zero(a.field, var="z"))


def test_trivial_module_has_identity_exponential():
    E = constant_module(GF.get(2), 2)
    ex = exp_coeffs(E, W)
    for s in range(1, 4):
        assert _all_zero(ex[s])
    lg = log_coeffs(E, exp=ex, s_max=3)
    assert all(_all_zero(lg[s]) for s in range(1, 4))


def test_carlitz_log_equals_exp_in_char_two():
    ex = exp_coeffs(make_carlitz_power(2, 1), W)
    lg = log_coeffs(ex.E, exp=ex)
    assert lg[1][0][0].equals(ex[1][0][0])


def test_matches_sylvester_solver():
    E = make_carlitz_power(3, 2)
    ex = exp_coeffs(E, W)
    from tmodules.analytic.expseries import _lm_mul, _pm_to_lm
    from tmodules.algebra.linalg import pm_frob
    # e_1 A_0^(q) - A_0 e_1 = A_1 e_0^(q)
    A0 = _pm_to_lm(E.A[0])
    A0q = _pm_to_lm(pm_frob(E.A[0], 1))
    C = _pm_to_lm(E.A[1])
    X = sylvester_solve(A0q, A0, C, W)
    for i in range(2):
        for j in range(2):
            assert X[i][j].equals(ex[1][i][j], W)


@pytest.mark.parametrize("name", ["carlitz", "carlitz2", "carlitz3", "drinfeld-r2",
                                  "dim2-nilpotent", "carlitz-q3"])
def test_functional_equation_residual_vanishes(name):
    ex = exp_coeffs(TModule.load(fixture_path(name)), W)
    for R in functional_equation_residual(ex):
        assert _all_zero(R)


def test_exp_log_compose_to_identity(rng):
    for k in range(5):
        E = rand_drinfeld(2, rng)
        ex = exp_coeffs(E, W)
        order = 3
        lg = log_coeffs(E, exp=ex, s_max=order)
        comp = compose_exp_log(ex, lg, order)
        assert all(_all_zero(comp[s]) for s in range(1, order + 1))


def test_exp_of_zero():
    E = drinfeld_module(3, [[1], [0, 1]])
    ex = exp_coeffs(E, W)
    F = E.field
    y = exp_eval(ex, [LaurentSeries.zero(F, var="z")], 12)
    assert all(a.is_zero() for a in y)


def test_functional_equation_at_random_points(rng):
    E = drinfeld_module(3, [[1, 1], [2]])
    F = E.field
    ex = exp_coeffs(E, 40)
    prec = 6
    for _ in range(20):
        x = _rand_vector(F, rng, 1, int(rng.integers(-2, 2)), 20)
        lhs = exp_eval(ex, pm_apply(E.A[0], x), prec)
        rhs = apply_phi(E, exp_eval(ex, x, prec + 20), prec)
        assert min(a.prec for a in rhs) >= prec - 2
        assert all(a.equals(b) for a, b in zip(lhs, rhs))


def test_exp_additive(rng):
    E = make_carlitz_power(2, 2)
    F = E.field
    ex = exp_coeffs(E, 30)
    for _ in range(10):
        x = _rand_vector(F, rng, 2, -1, 20)
        y = _rand_vector(F, rng, 2, -1, 20)
        s = exp_eval(ex, [a + b for a, b in zip(x, y)], 8)
        t = [a + b for a, b in zip(exp_eval(ex, x, 8), exp_eval(ex, y, 8))]
        assert all(a.equals(b, 8) for a, b in zip(s, t))


def test_log_inverts_exp_on_the_ball(rng):
    for E in (make_carlitz_power(2, 1), drinfeld_module(2, [[1], [1]]), make_carlitz_power(3, 2)):
        ex = exp_coeffs(E, W)
        lg = log_coeffs(E, exp=ex)
        m0 = ball_constants(ex).m0
        F = E.field
        for _ in range(5):
            x = _rand_vector(F, rng, E.n, max(m0, 1), 16)
            y = exp_eval(ex, x, 16)
            assert all((a - b).val > v.val for a, b, v in zip(y, x, x) if not v.is_zero())
            back = log_eval(lg, y, 16)
            assert all(a.equals(b, 16) for a, b in zip(back, x))


def test_ball_constants_carlitz():
    bc = ball_constants(exp_coeffs(make_carlitz_power(2, 1), W))
    assert (bc.e, bc.c, bc.m0) == (1, 1, 1)
