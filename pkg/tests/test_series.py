import numpy as np
import pytest

from conftest import rand_poly, rand_series, rand_unit_series
from tmodules.algebra import GF, LaurentSeries, Poly, PrecisionError, series_from_rational

N_RANDOM = 120


def test_valuation_and_precision_of_sum_and_product(rng):
    for k in range(N_RANDOM):
        F = GF.get([2, 3, 4, 5][k % 4])
        a, b = rand_unit_series(F, rng), rand_unit_series(F, rng)
        s = a + b
        assert s.prec == min(a.prec, b.prec)
        assert s.is_zero() or s.val >= min(a.val, b.val)
        p = a * b
        assert p.val == a.val + b.val
        assert p.prec == min(a.val + b.prec, b.val + a.prec)


def test_ring_laws_at_common_precision(rng):
    for k in range(N_RANDOM):
        F = GF.get([2, 3, 9][k % 3])
        a, b, c = (rand_series(F, rng) for _ in range(3))
        assert ((a + b) * c).equals(a * c + b * c)
        assert (a * b).equals(b * a)
        assert (a - a).is_zero()


def test_inverse_and_division(rng):
    for k in range(N_RANDOM):
        F = GF.get([2, 3, 5, 7][k % 4])
        a = rand_unit_series(F, rng)
        inv = a.inverse()
        assert inv.val == -a.val
        assert (a * inv).equals(LaurentSeries.one(F))
        b = rand_series(F, rng)
        assert ((b / a) * a).equals(b)


def test_exact_inverse_needs_precision():
    F = GF.get(2)
    x = LaurentSeries.from_poly(Poly(F, [1, 1]))
    with pytest.raises(PrecisionError):
        x.inverse()
    # monomials invert exactly
    m = LaurentSeries.monomial(F, 3)
    assert (m * m.inverse()) == LaurentSeries.one(F)


def test_rational_expansion_matches_long_division():
    F = GF.get(2)
    # 1/(t^2 + t) = t^-2 + t^-3 + t^-4 + ...
    s = series_from_rational(Poly.one(F), Poly(F, [0, 1, 1]), 10)
    assert s.val == 2
    assert s.coeffs_between(2, 10).tolist() == [1] * 8


def test_frobenius_is_additive_and_multiplicative(rng):
    for k in range(N_RANDOM):
        F = GF.get([2, 3, 4][k % 3])
        a, b = rand_series(F, rng, vmin=0), rand_series(F, rng, vmin=0)
        assert (a + b).frob().equals(a.frob() + b.frob())
        assert (a * b).frob().equals(a.frob() * b.frob())


def test_hasse_leibniz_on_series(rng):
    for k in range(N_RANDOM):
        F = GF.get([2, 3][k % 2])
        a, b = rand_series(F, rng), rand_series(F, rng)
        j = int(rng.integers(0, 4))
        rhs = LaurentSeries.zero(F)
        for i in range(j + 1):
            rhs = rhs + a.hasse(i) * b.hasse(j - i)
        assert (a * b).hasse(j).equals(rhs)


def test_hasse_agrees_with_polynomials(rng):
    F = GF.get(3)
    for _ in range(30):
        f = rand_poly(F, rng, 8)
        for j in range(4):
            assert LaurentSeries.from_poly(f.hasse(j)) == LaurentSeries.from_poly(f).hasse(j)


def test_equals_refuses_unknown_digits():
    F = GF.get(2)
    a = LaurentSeries(F, 0, [1, 0, 1], 3)
    with pytest.raises(PrecisionError):
        a.equals(a, 5)


def test_polynomial_part_and_truncate():
    F = GF.get(3)
    s = LaurentSeries(F, -2, [1, 2, 0, 1, 1], 5)
    assert s.polynomial_part() == Poly(F, [0, 2, 1])
    t = s.truncate(1)
    assert t.prec == 1
    assert t.coeffs_between(-2, 1).tolist() == [1, 2, 0]


def test_to_dict_roundtrip(rng):
    F = GF.get(5)
    for _ in range(20):
        a = rand_series(F, rng)
        b = LaurentSeries.from_dict(F, a.to_dict())
        assert a == b
