import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.optimize import linprog

from conftest import seeds
from qmawtc.channels import (
    CqMaWtc,
    PpLaw,
    QbcLaw,
    QbcPairLaw,
    basis_mac,
    mawtc_to_ppqwtc,
    random_mac_law,
    random_mawtc,
    random_qbc,
)
from qmawtc.params import SmoothingParams
from qmawtc.qstate import classical, random_density, state
from qmawtc.quantities import CapExceeded, InvalidParams, mutual_information
from qmawtc.regions import (
    Constraint,
    RateRegion,
    aep_table,
    asymptotic_region,
    convergence_harness,
    frontier_scan,
    hn_penalty,
    mac_law_grid,
    mac_terms,
    pareto_front,
    polytope_vertices,
    region_18,
    region_19,
    region_corollary1,
    region_corollary2,
    region_theorem1,
    region_theorem2,
    region_theorem3,
    sen_penalty,
    simplex_grid,
)

MAC = SmoothingParams(eps=0.1, delta=0.05, eps_prime=0.01, delta_prime=0.3)
PP = SmoothingParams(eps1=0.2, eps2=0.3, delta1=0.1, delta2=0.2)


def eve_silent_mac(rng):
    y = np.array([[random_density(2, rng) for _ in range(2)] for _ in range(2)])
    return CqMaWtc.eve_silent(y, random_density(2, rng))


def correlated_bits():
    op = np.zeros((4, 4))
    op[0, 0] = op[3, 3] = 0.5
    return state(op, [classical("X", 2), classical("Y", 2)])


# ---------------------------------------------------------------- polytope helpers


def lp_max(A, b, c):
    res = linprog(-np.asarray(c, float), A_ub=A, b_ub=b, bounds=[(0, None)] * A.shape[1], method="highs")
    return -res.fun if res.status == 0 else -math.inf


@given(st.lists(st.floats(-1, 3), min_size=3, max_size=3))
def test_vertices_agree_with_lp_support_function(bounds):
    region = RateRegion("t", ("R1", "R2"), (
        Constraint((1, 0), bounds[0], "R1"), Constraint((0, 1), bounds[1], "R2"), Constraint((1, 1), bounds[2], "R1+R2"),
    ))
    v = region.corners()
    for c in ([1, 0], [0, 1], [1, 1], [2, 1]):
        expect = lp_max(region.A, region.b, c)
        got = max((float(np.dot(c, x)) for x in v), default=-math.inf)
        # HiGHS feasibility tolerance is 1e-7
        assert got == pytest.approx(expect, abs=1e-6)


def test_polytope_vertices_of_pentagon():
    A = np.array([[1, 0], [0, 1], [1, 1]], float)
    v = polytope_vertices(A, np.array([2.0, 2.0, 3.0]))
    assert {tuple(np.round(x, 9)) for x in v} == {(0, 0), (2, 0), (0, 2), (2, 1), (1, 2)}


def test_is_subset_matches_lp_oracle(rng):
    for _ in range(20):
        b1, b2 = rng.uniform(0, 2, 3), rng.uniform(0, 2, 3)
        mk = lambda b: RateRegion("r", ("R1", "R2"), (
            Constraint((1, 0), b[0], "R1"), Constraint((0, 1), b[1], "R2"), Constraint((1, 1), b[2], "R1+R2"),
        ))
        r1, r2 = mk(b1), mk(b2)
        oracle = all(lp_max(r1.A, r1.b, r2.A[i]) <= r2.b[i] + 1e-9 for i in range(3))
        assert r1.is_subset(r2) == oracle


def test_constraint_rejects_non_indicator_coefficients():
    with pytest.raises(ValueError):
        RateRegion("x", ("R1", "R2"), (Constraint((2, 0), 1.0, "bad"),))


def test_pareto_front():
    pts = np.array([[0, 1], [1, 0], [0.5, 0.5], [0.2, 0.2], [1, 0]])
    assert pareto_front(pts).shape == (3, 2)


def test_simplex_grid():
    g = simplex_grid(3, 0.25)
    assert len(g) == 15
    assert all(abs(p.sum() - 1) < 1e-12 for p in g)
    with pytest.raises(ValueError):
        simplex_grid(2, 0.3)


# ---------------------------------------------------------------- MAC wiretap regions


def test_penalties_coincide_at_delta_equal_eps():
    for eps in (0.01, 0.1, 0.5):
        assert hn_penalty(eps, eps) == pytest.approx(sen_penalty(eps), abs=1e-12)
        assert sen_penalty(eps) == pytest.approx(math.log2(eps) - 2)


def test_hn_and_sen_regions_agree_only_at_delta_eps(rng):
    ch, law = random_mawtc(rng), random_mac_law(rng)
    terms = mac_terms(ch, law, MAC.eps, MAC.eta)
    c1 = region_corollary1(ch, law, MAC, terms)
    t_eq = region_theorem1(ch, law, MAC.replace(delta=MAC.eps), terms)
    t_half = region_theorem1(ch, law, MAC.replace(delta=MAC.eps / 2), terms)
    assert np.allclose(c1.b, t_eq.b, atol=1e-10, rtol=0)
    assert np.all(np.abs(c1.b - t_half.b) > 1e-3)


def test_mac_region_rows(rng):
    r = region_theorem1(random_mawtc(rng), random_mac_law(rng, nq=2), MAC)
    assert [c.label for c in r.constraints] == ["R1", "R2", "R1+R2"]
    assert r.has_sum_rate()
    rows = r.rows()
    assert rows[2]["coef_R1"] == rows[2]["coef_R2"] == 1
    for con in r.constraints:
        assert con.bound == pytest.approx(sum(v for _, v in con.terms))


def test_o1_term_shifts_second_and_sum_rows(rng):
    ch, law = random_mawtc(rng), random_mac_law(rng)
    terms = mac_terms(ch, law, MAC.eps, MAC.eta)
    a = region_corollary1(ch, law, MAC, terms).b
    b = region_corollary1(ch, law, MAC.replace(o1=1.5), terms).b
    assert np.allclose(b - a, [0.0, 1.5, 1.5])


def test_eve_silent_leak_terms_vanish(rng):
    ch = eve_silent_mac(rng)
    law = random_mac_law(rng, nq=2)
    r = region_corollary1(ch, law, MAC)
    for con in r.constraints:
        for name, v in con.terms:
            if "I_max" in name:
                assert abs(v) <= 1e-9
    r2 = region_theorem2(mawtc_to_ppqwtc(ch), PpLaw.uniform(2, 2), PP)
    for con in r2.constraints:
        for name, v in con.terms:
            if "I~_max" in name:
                assert abs(v) <= 1e-9


@pytest.mark.parametrize(
    "params, predicate",
    [
        (MAC.replace(delta=0.2), "delta_in_eps"),
        (MAC.replace(eps_prime=0.5), "eps_prime_below_delta_prime"),
        (MAC.replace(eps=None), "eps_present"),
    ],
)
def test_simultaneous_region_rejects_invalid_params(rng, params, predicate):
    with pytest.raises(InvalidParams) as exc:
        region_theorem1(random_mawtc(rng), random_mac_law(rng), params)
    assert exc.value.predicate == predicate


def test_noiseless_mac_sum_information_dominates():
    ch = basis_mac(2, 2)
    law = random_mac_law(np.random.default_rng(0))
    r = region_corollary1(ch, law, MAC)
    sum_ih = r.constraints[2].term("I_H^eps(X1X2;Y|Q)")
    assert sum_ih > r.constraints[0].term("I_H^eps(X1;X2Y|Q)")
    assert any("vacuous" in n for n in r.notes)


# ---------------------------------------------------------------- point-to-point


def test_successive_region_without_secrecy_structure(rng):
    pp = mawtc_to_ppqwtc(random_mawtc(rng))
    r = region_19(pp, PpLaw.uniform(2, 2), 0.2)
    assert len(r.constraints) == 2 and not r.has_sum_rate()
    with pytest.raises(InvalidParams):
        region_19(pp, PpLaw.uniform(2, 2), 1.2)


def test_successive_secrecy_region_structure_and_rejection(rng):
    pp = mawtc_to_ppqwtc(random_mawtc(rng))
    r = region_theorem2(pp, PpLaw.uniform(2, 2), PP)
    assert [c.label for c in r.constraints] == ["R1", "R2"]
    assert len(r.budget_value) == 2
    with pytest.raises(InvalidParams) as exc:
        region_theorem2(pp, PpLaw.uniform(2, 2), PP.replace(delta1=0.3))
    assert exc.value.predicate == "delta1_in_eps1"


def test_asymptotic_region_of_noiseless_channel():
    pp = mawtc_to_ppqwtc(basis_mac(2, 2))
    r = asymptotic_region(pp, PpLaw.uniform(2, 2))
    assert r.value("R1") == pytest.approx(1.0)
    assert r.value("R2") == pytest.approx(1.0)
    assert any(np.allclose(c, [1, 1]) for c in r.corners())


def test_convergence_harness_rows(rng):
    pp = mawtc_to_ppqwtc(random_mawtc(rng, dim_y=2, dim_z=1))
    rows = convergence_harness(pp, PpLaw.uniform(2, 2), PP, 2)
    assert [r.n for r in rows] == [1, 2]
    assert rows[0].target_leak_1 == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(CapExceeded):
        convergence_harness(pp, PpLaw.uniform(2, 2), PP, 8)


# ---------------------------------------------------------------- broadcast


def test_broadcast_regions(rng):
    ch = random_qbc(rng, nx=4)
    pair = QbcPairLaw([0.5, 0.5], [[0.5, 0.5], [0.3, 0.7]], [[[0.5, 0.5], [0.2, 0.8]], [[1, 0], [0.5, 0.5]]])
    r18 = region_18(ch, pair, 0.2)
    assert len(r18.constraints) == 3 and r18.has_sum_rate()
    c2 = region_corollary2(ch, pair, 0.2)
    assert len(c2.constraints) == 6 and c2.coords == ("R1", "R2", "Rc")
    t3 = region_theorem3(ch, QbcLaw([0.5, 0.5], [[0.25] * 4, [0.4, 0.3, 0.2, 0.1]]), 0.2)
    assert [c.label for c in t3.constraints] == ["R1", "Rc", "R1+Rc"]
    with pytest.raises(InvalidParams):
        region_theorem3(ch, QbcLaw([1.0], [[0.25] * 4]), 0.0)


# ---------------------------------------------------------------- AEP and scans


def test_aep_gap_shrinks_on_correlated_bits():
    rows = aep_table(correlated_bits(), ["X"], ["Y"], 0.3, 4)
    assert rows[0].target == pytest.approx(mutual_information(correlated_bits(), "X", "Y"))
    gaps = [r.gap for r in rows]
    assert all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))


def test_frontier_scan_over_grid():
    ch = basis_mac(2, 2)
    scan = frontier_scan(region_corollary1, ch, mac_law_grid(2, 2, 0.5), MAC, clamp=True)
    assert len(scan.entries) == 9
    assert scan.envelope.shape[1] == 2
    with pytest.raises(ValueError):
        frontier_scan(region_corollary1, ch, [], MAC)


@given(seeds)
def test_sen_region_bounds_finite(seed):
    rng = np.random.default_rng(seed)
    r = region_corollary1(random_mawtc(rng), random_mac_law(rng), MAC)
    assert np.all(np.isfinite(r.b))
