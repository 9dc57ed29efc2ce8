"""Acceptance criteria, one test each.

Every test records a pass/fail line in ``conftest.ACCEPTANCE`` (printed in the
pytest terminal summary) and prints it.  Run the file directly to get the
eleven lines without pytest.
"""

import io
import math
import sys
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import numpy as np
from scipy.optimize import linprog

sys.path.insert(0, str(Path(__file__).resolve().parent))

from conftest import ACCEPTANCE  # noqa: E402
from qmawtc.channels import (  # noqa: E402
    CqMaWtc,
    PpLaw,
    QbcPairLaw,
    basis_mac,
    mawtc_to_ppqwtc,
    random_mac_law,
    random_mawtc,
    random_qbc,
)
from qmawtc.cli import main as cli_main  # noqa: E402
from qmawtc.decoders import (  # noqa: E402
    Codebook,
    DecoderParams,
    convex_split_verify,
    ensemble_error_simultaneous,
    exact_error_simultaneous,
    hayashi_nagaoka_check,
    leakage_estimate,
    random_hn_instance,
    simultaneous_test,
    support_test,
)
from qmawtc.params import SmoothingParams  # noqa: E402
from qmawtc.qstate import (  # noqa: E402
    basis_density,
    classical,
    maximally_mixed,
    quantum,
    random_density,
    random_distribution,
    state,
)
from qmawtc.quantities import (  # noqa: E402
    InvalidParams,
    binary_entropy,
    fact1_sides,
    hypothesis_testing_relative_entropy,
    max_relative_entropy,
    relative_entropy,
)
from qmawtc.regions import (  # noqa: E402
    aep_table,
    mac_terms,
    region_18,
    region_19,
    region_corollary1,
    region_theorem1,
    region_theorem2,
)

SPECS = Path(__file__).resolve().parents[1] / "scripts" / "specs"
MAC = SmoothingParams(eps=0.1, delta=0.05, eps_prime=0.01, delta_prime=0.3)
PP = SmoothingParams(eps1=0.2, eps2=0.3, delta1=0.1, delta2=0.2)


def record(k, ok, detail):
    ACCEPTANCE[k] = (bool(ok), detail)
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")
    return ok


# ---------------------------------------------------------------- criteria


def criterion_1():
    rng = np.random.default_rng(1)
    worst_gap = 0.0
    for _ in range(100):
        d = int(rng.integers(2, 7))
        _, cert = hypothesis_testing_relative_entropy(
            random_density(d, rng), random_density(d, rng), float(rng.uniform(0.05, 0.6))
        )
        worst_gap = max(worst_gap, cert.gap)
    worst_lp = 0.0
    for _ in range(50):
        d = int(rng.integers(2, 7))
        p, q = random_distribution(d, rng), random_distribution(d, rng)
        eps = float(rng.uniform(0.05, 0.6))
        res = linprog(q, A_ub=-p[None, :], b_ub=[-(1 - eps)], bounds=[(0, 1)] * d, method="highs")
        val = hypothesis_testing_relative_entropy(np.diag(p), np.diag(q), eps)[0]
        worst_lp = max(worst_lp, abs(val + math.log2(res.fun)))
    ok = worst_gap <= 1e-6 and worst_lp <= 1e-8
    return ok, f"max duality gap {worst_gap:.2e}, max LP deviation {worst_lp:.2e}"


def criterion_2():
    rng = np.random.default_rng(2)
    rho = random_density(3, rng)
    devs = [abs(hypothesis_testing_relative_entropy(rho, rho, e)[0] + math.log2(1 - e)) for e in (0.1, 0.3, 0.5)]
    zero, half = basis_density(0, 2), maximally_mixed(2)
    anchors = [max_relative_entropy(zero, half) - 1, relative_entropy(zero, half) - 1, binary_entropy(0.5) - 1]
    worst = max(devs + [abs(a) for a in anchors])
    return worst <= 1e-9, f"max deviation {worst:.2e}"


def criterion_3():
    rng = np.random.default_rng(3)
    slack = math.inf
    for _ in range(100):
        lhs, rhs = fact1_sides(random_density(2, rng), random_density(2, rng), 0.1)
        slack = min(slack, rhs - lhs)
    return slack >= -1e-6, f"min slack {slack:.4f}"


def criterion_4():
    rng = np.random.default_rng(4)
    worst_eq, least_diff = 0.0, math.inf
    for _ in range(20):
        ch, law = random_mawtc(rng), random_mac_law(rng)
        terms = mac_terms(ch, law, MAC.eps, MAC.eta)
        c1 = region_corollary1(ch, law, MAC, terms).b
        eq = region_theorem1(ch, law, MAC.replace(delta=MAC.eps), terms).b
        half = region_theorem1(ch, law, MAC.replace(delta=MAC.eps / 2), terms).b
        worst_eq = max(worst_eq, float(np.abs(c1 - eq).max()))
        least_diff = min(least_diff, float(np.abs(c1 - half).min()))
    ok = worst_eq <= 1e-10 and least_diff > 1e-10
    return ok, f"delta=eps max difference {worst_eq:.1e}; delta=eps/2 min difference {least_diff:.3f}"


def criterion_5():
    rng = np.random.default_rng(5)
    worst, est_max = 0.0, 0.0
    for _ in range(5):
        y = np.array([[random_density(2, rng) for _ in range(2)] for _ in range(2)])
        ch = CqMaWtc.eve_silent(y, random_density(2, rng))
        law = random_mac_law(rng, nq=2)
        regions = [
            region_corollary1(ch, law, MAC),
            region_theorem1(ch, law, MAC),
            region_theorem2(mawtc_to_ppqwtc(ch), PpLaw(random_distribution(4, rng).reshape(2, 2)), PP),
        ]
        for r in regions:
            for con in r.constraints:
                worst = max([worst] + [abs(v) for name, v in con.terms if "I_max" in name or "I~_max" in name])
        est = leakage_estimate(ch, random_mac_law(rng), 2, 2, 50, seed=int(rng.integers(1 << 30)))
        est_max = max(est_max, est.mean, float(np.abs(est.values).max()))
    ok = worst <= 1e-9 and est_max == 0.0
    return ok, f"max leakage term {worst:.1e}, leakage estimate {est_max!r}"


def criterion_6():
    rng = np.random.default_rng(6)
    worst = math.inf
    for i in range(200):
        s, t = random_hn_instance(rng, 2 + i % 7)
        worst = min(worst, hayashi_nagaoka_check(s, t, float(rng.uniform(0.05, 10.0)))[1])
    return worst >= -1e-8, f"min eigenvalue {worst:.3e} over 200 draws"


def criterion_7():
    op = np.zeros((4, 4))
    op[0, 0] = op[3, 3] = 0.35
    op[1, 1] = op[2, 2] = 0.15
    op[0, 3] = op[3, 0] = 0.1
    s = state(op, [quantum("X", 2), quantum("B", 2)])
    eps, delta = 0.3, 0.5
    reps = [convex_split_verify(s, "X", "B", k, eps, delta) for k in (1, 2, 4, 8)]
    dist = [r.distance for r in reps]
    monotone = all(b <= a + 1e-12 for a, b in zip(dist, dist[1:]))
    holds = all(r.holds for r in reps)
    active = [r.k for r in reps if r.condition]
    ok = monotone and holds and bool(active)
    return ok, f"P over K=1,2,4,8: {', '.join(f'{d:.3f}' for d in dist)}; condition true at K={active}, sqrt(eps)={math.sqrt(eps):.3f}"


def criterion_8():
    rng = np.random.default_rng(8)
    params = DecoderParams((2, 2, 2, 2))
    worst = -math.inf
    for i in range(20):
        ch, law = random_mawtc(rng, dim_z=1), random_mac_law(rng)
        test = simultaneous_test(ch, law, 0.1)
        p1, p2 = law.marginals()
        r = exact_error_simultaneous(ch, test, Codebook.draw(p1, 2, 2, seed=2 * i), Codebook.draw(p2, 2, 2, seed=2 * i + 1))
        worst = max(worst, r.error - r.hn_bound)
        ens = ensemble_error_simultaneous(ch, law, test, params)
        worst = max(worst, ens.error - ens.bound)
    orth = basis_mac(4, 4)
    cb = Codebook.enumerate(4, 2, 2)
    orth_err = exact_error_simultaneous(orth, support_test(orth), cb, cb).error
    ok = worst <= 1e-8 and orth_err <= 1e-9
    return ok, f"max(error - bound) {worst:.3f}; orthogonal error {orth_err:.1e}"


def criterion_9():
    op = np.zeros((4, 4))
    op[0, 0] = op[3, 3] = 0.5
    s = state(op, [classical("X", 2), classical("Y", 2)])
    gaps = [r.gap for r in aep_table(s, ["X"], ["Y"], 0.3, 4)]
    ok = all(b <= a + 1e-12 for a, b in zip(gaps, gaps[1:]))
    return ok, "gaps " + ", ".join(f"{g:.4f}" for g in gaps)


def criterion_10():
    rng = np.random.default_rng(10)
    pp = mawtc_to_ppqwtc(random_mawtc(rng))
    r19 = region_19(pp, PpLaw.uniform(2, 2), 0.2)
    law = QbcPairLaw([0.5, 0.5], [[0.5, 0.5], [0.3, 0.7]], [[[0.5, 0.5], [0.2, 0.8]], [[0.9, 0.1], [0.5, 0.5]]])
    r18 = region_18(random_qbc(rng, 4), law, 0.2)
    rejected = []
    bad = [
        (lambda: region_theorem1(random_mawtc(rng), random_mac_law(rng), MAC.replace(delta=0.2)), "delta_in_eps"),
        (lambda: region_theorem2(pp, PpLaw.uniform(2, 2), PP.replace(delta2=0.5)), "delta2_in_eps2"),
        (lambda: region_corollary1(random_mawtc(rng), random_mac_law(rng), MAC.replace(eps_prime=0.4)),
         "eps_prime_below_delta_prime"),
    ]
    for build, name in bad:
        try:
            build()
        except InvalidParams as exc:
            rejected.append(exc.predicate == name)
        else:
            rejected.append(False)
    ok = (
        len(r19.constraints) == 2 and not r19.has_sum_rate()
        and len(r18.constraints) == 3 and r18.has_sum_rate() and all(rejected)
    )
    return ok, f"eq19 rows {len(r19.constraints)}, eq18 rows {len(r18.constraints)}, named rejections {sum(rejected)}/3"


def criterion_11():
    runs = [
        ("random_mac", ["--decoder", "simultaneous", "--trials", "3", "--ensemble"]),
        ("random_mac", ["--decoder", "leakage"]),
        ("random_pp", ["--decoder", "successive"]),
        ("random_qbc", ["--decoder", "superposition"]),
        ("correlated_bits", ["--decoder", "convex-split", "--a", "X", "--b", "Y1", "--delta", "0.3"]),
        ("random_mac", ["--decoder", "hn-check"]),
    ]
    same = 0
    with tempfile.TemporaryDirectory() as tmp:
        for i, (name, extra) in enumerate(runs):
            outs = []
            for j in range(2):
                path = Path(tmp) / f"{i}_{j}.csv"
                with redirect_stdout(io.StringIO()), redirect_stderr(io.StringIO()):
                    code = cli_main(["simulate", str(SPECS / f"{name}.json"), "--seed", "11", "--out", str(path), *extra])
                outs.append(path.read_bytes() if code == 0 else None)
            same += outs[0] is not None and outs[0] == outs[1]
    return same == len(runs), f"{same}/{len(runs)} simulate runs byte-identical"


CRITERIA = {k: globals()[f"criterion_{k}"] for k in range(1, 12)}


def _check(k):
    ok, detail = CRITERIA[k]()
    assert record(k, ok, detail), detail


def test_criterion_01_neyman_pearson():
    _check(1)


def test_criterion_02_closed_form_anchors():
    _check(2)


def test_criterion_03_dh_relative_entropy_bound():
    _check(3)


def test_criterion_04_penalty_equality():
    _check(4)


def test_criterion_05_eve_silent():
    _check(5)


def test_criterion_06_hayashi_nagaoka():
    _check(6)


def test_criterion_07_convex_split():
    _check(7)


def test_criterion_08_decoder_soundness():
    _check(8)


def test_criterion_09_aep_trend():
    _check(9)


def test_criterion_10_region_structure():
    _check(10)


def test_criterion_11_determinism():
    _check(11)


if __name__ == "__main__":
    results = [record(k, *CRITERIA[k]()) for k in CRITERIA]
    raise SystemExit(0 if all(results) else 1)
