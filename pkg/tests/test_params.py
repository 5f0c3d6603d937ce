from itertools import permutations, product

import pytest
import sympy
from hypothesis import given, strategies as st

from flagorbit.errors import NotSPI, NotSPP, NotSymmetricProduct, RankDeficient, SizeGuardExceeded
from flagorbit.params import (GroupElement, OmegaPair, SignedPartialInvolution, TauPair,
                              canonical_tau_rep, canonicalize_spi, conjugate_by_signs,
                              enumerate_omega, enumerate_R_circle, enumerate_spi_plus,
                              enumerate_spp, spi_sign_witness, validate_omega)
from oracles import brute_omega, brute_spp

I3 = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
EX_TAU1 = ((1, 0, 0, 0, 0, 0, 0), (0, -1, 0, 0, 0, 0, 0), (0,) * 7, (0, 0, 0, 0, 0, 1, 0),
           (0, 0, 0, 0, 1, 0, 0), (0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 0, -1))
EX_TAU2 = tuple(tuple(1 if i == j and i > 0 else 0 for j in range(7)) for i in range(7))
K_TAU1 = ((0, 0, 0, 0, 1), (0, 0, 0, 1, 0), (1, 0, 0, 0, 0), (0, 0, 0, 0, 0), (0, 1, 0, 0, 0))
K_TAU2 = ((0, 0, 0, 0, 1), (0, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0), (1, 0, 0, 0, 0))
OMEGA_3 = list(enumerate_omega(3))
R_CIRCLE = {n: list(enumerate_R_circle(n)) for n in range(4)}


def test_validate_omega_examples():
    assert validate_omega(I3, I3).n == 3
    assert validate_omega(EX_TAU1, EX_TAU2).n == 7
    with pytest.raises(RankDeficient):
        validate_omega(((0, 0), (0, 0)), ((0, 0), (0, 0)))


def test_validate_omega_errors():
    with pytest.raises(NotSPP):
        validate_omega(((1, 1), (0, 0)), ((0, 0), (1, 1)))
    with pytest.raises(NotSPP):
        validate_omega(((2,),), ((0,),))
    with pytest.raises(NotSymmetricProduct):
        validate_omega(((0, 1), (0, 0)), ((1, 0), (0, 1)))


def test_canonicalize_spi_examples():
    tau = SignedPartialInvolution(((0, 0, -1), (0, -1, 0), (-1, 0, 0)))
    assert canonicalize_spi(tau).entries == ((0, 0, 1), (0, -1, 0), (1, 0, 0))
    diag = SignedPartialInvolution(((1, 0, 0), (0, -1, 0), (0, 0, 0)))
    assert canonicalize_spi(diag) == diag
    plus = canonicalize_spi(tau)
    assert canonicalize_spi(plus) == plus


def test_spi_rejects_asymmetric():
    with pytest.raises(NotSPI):
        SignedPartialInvolution(((0, 1), (0, 0)))


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_canonicalize_spi_separates_sign_orbits(m):
    spis = [SignedPartialInvolution(g) for g in brute_spp(m)
            if all(g[i][j] == g[j][i] for i in range(m) for j in range(m))]
    orbit_of = {}
    for tau in spis:
        orbit = frozenset(conjugate_by_signs(tau, e) for e in product((1, -1), repeat=m))
        orbit_of[tau] = orbit
    for a in spis:
        for b in spis:
            assert (canonicalize_spi(a) == canonicalize_spi(b)) == (orbit_of[a] == orbit_of[b])
        eps = spi_sign_witness(a)
        assert conjugate_by_signs(a, eps) == canonicalize_spi(a)


def test_spp_counts():
    assert [sum(1 for _ in enumerate_spp(n)) for n in range(4)] == [1, 3, 17, 139]
    for n in range(4):
        assert sorted(t.entries for t in enumerate_spp(n)) == sorted(brute_spp(n))


def test_spi_plus_enumeration_matches_filter():
    for m in range(5):
        expect = sorted(g for g in brute_spp(m) if all(g[i][j] == g[j][i] for i in range(m) for j in range(m))
                        and all(g[i][j] >= 0 for i in range(m) for j in range(m) if i != j)) if m < 4 else None
        got = [t.entries for t in enumerate_spi_plus(m)]
        assert len(got) == len(set(got))
        if expect is not None:
            assert sorted(got) == expect


def test_omega_enumeration():
    assert sum(1 for _ in enumerate_omega(1)) == 8
    for n in range(3):
        got = [om.key() for om in enumerate_omega(n)]
        assert len(got) == len(set(got))
        assert sorted(got) == sorted(brute_omega(n))


def test_omega_enumeration_order_is_lexicographic():
    def code(om):
        return [((r1, -s1), (r2, -s2)) for (r1, s1), (r2, s2) in om.column_codes()]

    codes = [code(om) for om in enumerate_omega(2)]
    assert codes == sorted(codes)


def test_enumeration_guard():
    with pytest.raises(SizeGuardExceeded):
        list(enumerate_omega(7))
    with pytest.raises(SizeGuardExceeded):
        list(enumerate_spp(4, max_n=3))


def test_r_circle_enumeration():
    for n in range(4):
        got = list(enumerate_R_circle(n))
        assert all(t.in_r_circle() for t in got)
        assert len({(t.tau1, t.tau2) for t in got}) == len(got)
    brute = 0
    for codes in product(product(range(3), repeat=2), repeat=2):
        try:
            t = TauPair.from_codes(codes)
        except (RankDeficient, NotSPP):
            continue
        brute += t.in_r_circle()
    assert brute == sum(1 for _ in enumerate_R_circle(2))


def test_canonical_tau_rep_example():
    tau = TauPair(K_TAU1, K_TAU2)
    outs = {canonical_tau_rep(tau.permute_columns(w)) for w in permutations(range(5))}
    assert len(outs) == 1
    rep = outs.pop()
    assert rep.column_codes() == ((0, 4), (1, 1), (2, 0), (3, 5), (5, 3))
    assert canonical_tau_rep(rep) == rep


def test_canonical_tau_rep_identity():
    tau = TauPair(I3, I3)
    assert canonical_tau_rep(tau) == tau


@given(st.integers(0, 3), st.randoms(use_true_random=False))
def test_canonical_tau_rep_orbit_constant(n, rnd):
    tau = rnd.choice(R_CIRCLE[n])
    w = list(range(n))
    rnd.shuffle(w)
    assert canonical_tau_rep(tau.permute_columns(w)) == canonical_tau_rep(tau)


@given(st.randoms(use_true_random=False))
def test_group_action_preserves_omega(rnd):
    n = 3
    om = rnd.choice(OMEGA_3)
    g = GroupElement(tuple(rnd.choice((1, -1)) for _ in range(n)),
                     tuple(rnd.choice((1, -1)) for _ in range(n)),
                     tuple(rnd.sample(range(n), n)))
    moved = g.act(om)
    assert isinstance(moved, OmegaPair)
    # compare with the explicit matrix product eps tau eta w
    E = sympy.diag(*g.eps)
    H = sympy.diag(*g.eta)
    W = sympy.zeros(n, n)
    for j in range(n):
        W[g.w[j], j] = 1
    for tau, out in ((om.tau1, moved.tau1), (om.tau2, moved.tau2)):
        assert E * sympy.Matrix(tau.entries) * H * W == sympy.Matrix(out.entries)


def test_n_zero_everywhere():
    assert [t.n for t in enumerate_spp(0)] == [0]
    assert [t.n for t in enumerate_spi_plus(0)] == [0]
    assert [t.n for t in enumerate_omega(0)] == [0]
    assert [t.n for t in enumerate_R_circle(0)] == [0]


def test_omega_json_round_trip():
    om = validate_omega(EX_TAU1, EX_TAU2)
    assert OmegaPair.from_json(om.to_json()) == om
