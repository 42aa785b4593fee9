import numpy as np
import pytest

from tmodules.algebra import GF, Poly, char_poly, companion
from tmodules.analytic import class_module, lattice_index, regulator, unit_module
from tmodules.fixtures import fixture_path
from tmodules.shtuka import (CechH1, InadmissibleError, ShtukaUnitError, admissible_d,
                             build_pencil, ext_groups, finite_module_from_theta, is_admissible,
                             units_via_shtuka)
from tmodules.tmodule import TModule, constant_module, drinfeld_module, make_carlitz_power

E_FIXTURES = ["carlitz", "carlitz-q3", "carlitz2", "carlitz3", "drinfeld-r2", "dim2-nilpotent"]


def _block_sum(E1, E2):
    F = E1.field
    n1, n2 = E1.n, E2.n
    r = max(E1.r, E2.r)
    mats = []
    for s in range(r + 1):
        M = [[Poly.zero(F) for _ in range(n1 + n2)] for _ in range(n1 + n2)]
        for E, o in ((E1, 0), (E2, n1)):
            if s <= E.r:
                for i in range(E.n):
                    for j in range(E.n):
                        M[o + i][o + j] = E.A[s][i][j]
        mats.append(M)
    return TModule(F, mats)


def test_cech_reduction():
    F = GF.get(2)
    H = CechH1(-4, F)
    assert H.dim == 3
    assert H.labels == ["z^-1", "z^-2", "z^-3"]
    x = H.lift([1, 0, 1])[0]
    assert H.reduce(x).tolist() == [1, 0, 1]
    assert H.reduce(x.shift(1)).tolist() == [0, 1, 0]
    with pytest.raises(ValueError):
        CechH1(-1, F)


def test_carlitz_pencil_at_three():
    E = make_carlitz_power(2, 1)
    P = build_pencil(E, 3)
    assert P.shape == (1, 2)
    assert P.source.dim == 2 and P.target.dim == 1
    assert all(a.degree <= 1 for row in P.P for a in row)
    assert P.J.tolist() == [[1, 0]] and P.Phi.tolist() == [[0, 1]]


def test_admissible_d_formula():
    assert admissible_d(make_carlitz_power(2, 1)) == 4
    E = constant_module(GF.get(2), 1)
    assert admissible_d(E) == E.e + 3
    assert not is_admissible(make_carlitz_power(2, 1), 2)
    with pytest.raises(InadmissibleError):
        build_pencil(make_carlitz_power(2, 1), 2)


@pytest.mark.parametrize("q", [2, 3])
def test_carlitz_ext_groups(q):
    res = ext_groups(build_pencil(make_carlitz_power(q, 1)), verify=True)
    assert res.ext1_rank == 1
    assert res.ext2_factors == []
    assert res.ext2_torsion


def test_trivial_module_ext_groups():
    for n in (1, 2):
        E = constant_module(GF.get(3), n)
        res = ext_groups(build_pencil(E), verify=True)
        assert res.ext1_rank == n
        assert res.ext2_order == Poly.one(E.field)
        U = units_via_shtuka(E)
        assert lattice_index(unit_module(E), U).equals(Poly.one(E.field), 10)
        assert regulator(U).equals(Poly.one(E.field), 10)


def test_pencil_of_block_sum_is_block_diagonal():
    E1 = make_carlitz_power(2, 1)
    E2 = drinfeld_module(2, [[1], [1]])
    E = _block_sum(E1, E2)
    d = max(admissible_d(E1), admissible_d(E2), admissible_d(E))
    P1, P2, P = build_pencil(E1, d), build_pencil(E2, d), build_pencil(E, d)
    r1, c1 = P1.shape
    want_J = np.zeros(P.shape, dtype=np.int64)
    want_Phi = np.zeros(P.shape, dtype=np.int64)
    want_J[:r1, :c1], want_J[r1:, c1:] = P1.J, P2.J
    want_Phi[:r1, :c1], want_Phi[r1:, c1:] = P1.Phi, P2.Phi
    assert np.array_equal(P.J, want_J) and np.array_equal(P.Phi, want_Phi)


@pytest.mark.parametrize("name", E_FIXTURES)
def test_d_stability(name):
    E = TModule.load(fixture_path(name))
    d = admissible_d(E)
    a = ext_groups(build_pencil(E, d))
    b = ext_groups(build_pencil(E, d + 1))
    assert a.ext1_rank == b.ext1_rank
    assert [f.c.tolist() for f in a.ext2_factors] == [f.c.tolist() for f in b.ext2_factors]
    Ua = units_via_shtuka(E, d)
    Ub = units_via_shtuka(E, d + 1)
    assert lattice_index(Ua, Ub).equals(Poly.one(E.field), 10)


@pytest.mark.parametrize("name", E_FIXTURES)
def test_units_agree_with_analytic_lattice(name):
    E = TModule.load(fixture_path(name))
    U = unit_module(E)
    S = units_via_shtuka(E)
    assert S.checks["exp_integral"]
    assert lattice_index(U, S).equals(Poly.one(E.field), 10)
    assert lattice_index(S, U).equals(Poly.one(E.field), 10)


def test_shtuka_units_need_e_one():
    F = GF.get(2)
    z = Poly.x(F)
    E = TModule(F, [[[z]], [[z ** 2]]])
    E.e = 2
    with pytest.raises(ShtukaUnitError):
        units_via_shtuka(E)


@pytest.mark.parametrize("coeffs", [
    [[0, 0, 0, 1], [0, 1]],
    [[1, 1, 0, 1], [1]],
    [[0, 0, 0, 0, 1], [1, 1]],
    [[1], [0, 0, 0, 0, 0, 1]],
])
def test_ext2_matches_analytic_class_module(coeffs):
    E = drinfeld_module(2, coeffs)
    res = ext_groups(build_pencil(E), verify=True)
    assert res.ext2_order == class_module(E).order()


def test_theta_zero():
    F = GF.get(3)
    M, factors, S = finite_module_from_theta(F, np.zeros((1, 1), dtype=np.int64))
    assert [f.c.tolist() for f in factors] == [[0, 1]]
    assert M.order() == Poly.x(F)


def test_theta_companion():
    F = GF.get(2)
    f = Poly(F, [1, 0, 1, 1])
    M, factors, S = finite_module_from_theta(F, companion(F, f))
    assert factors == [f]


def test_theta_random_matches_char_poly(rng):
    for k in range(100):
        F = GF.get([2, 3, 5][k % 3])
        m = int(rng.integers(1, 5))
        T = rng.integers(0, F.q, (m, m))
        M, factors, S = finite_module_from_theta(F, T)
        prod = Poly.one(F)
        for f in factors:
            prod = prod * f
        assert prod == char_poly(F, T)
        for a, b in zip(factors, factors[1:]):
            assert (b % a).is_zero()
