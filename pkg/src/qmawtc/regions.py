"""Achievable rate regions as intersections of half-spaces.

Each builder evaluates the information terms on the relevant control state,
adds the penalty constants and returns a ``RateRegion`` whose constraints keep
every summand (so any bound can be reassembled term by term).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Callable, Iterable, Sequence

import numpy as np

from .channels import (
    CqMaWtc,
    MacLaw,
    PpLaw,
    PpQwtc,
    Qbc,
    QbcLaw,
    QbcPairLaw,
    control_state_mawtc,
    control_state_ppqwtc,
    control_state_qbc,
)
from .params import PP_SUCCESSIVE, SECRECY_MAC, SIMULTANEOUS_MAC, SmoothingParams
from .qstate import MultipartiteState
from .quantities import (
    CapExceeded,
    InvalidParams,
    alt_smooth_max_mi,
    classical_smoothing_max_min,
    conditional_hypothesis_testing_mi,
    conditional_mutual_information,
    conditional_smooth_max_mi,
    hypothesis_testing_mi,
    mutual_information,
)

DIM_CAP = 4096
CORNER_TOL = 1e-9


@dataclass(frozen=True)
class Constraint:
    """``sum_i coeffs[i] * R_i <= bound`` with the bound's named summands."""

    coeffs: tuple[int, ...]
    bound: float
    label: str
    terms: tuple[tuple[str, float], ...] = ()

    @classmethod
    def from_terms(cls, coeffs, label: str, terms: Sequence[tuple[str, float]]) -> "Constraint":
        terms = tuple((name, float(v)) for name, v in terms)
        return cls(tuple(int(c) for c in coeffs), float(sum(v for _, v in terms)), label, terms)

    def term(self, name: str) -> float:
        for n, v in self.terms:
            if n == name:
                return v
        raise KeyError(name)


@dataclass(frozen=True)
class RateRegion:
    name: str
    coords: tuple[str, ...]
    constraints: tuple[Constraint, ...]
    budget_label: str = ""
    budget_value: tuple[float, ...] = ()
    notes: tuple[str, ...] = ()
    metadata: tuple[tuple[str, float], ...] = ()

    def __post_init__(self):
        for con in self.constraints:
            if len(con.coeffs) != len(self.coords):
                raise ValueError(f"constraint {con.label!r} has {len(con.coeffs)} coefficients for {len(self.coords)} coords")
            if any(c not in (0, 1) for c in con.coeffs):
                raise ValueError(f"constraint {con.label!r}: coefficients must be 0/1 indicators")

    @property
    def A(self) -> np.ndarray:
        return np.array([c.coeffs for c in self.constraints], dtype=float).reshape(-1, len(self.coords))

    @property
    def b(self) -> np.ndarray:
        return np.array([c.bound for c in self.constraints], dtype=float)

    def bounds(self, clamp: bool = False) -> np.ndarray:
        return np.maximum(self.b, 0.0) if clamp else self.b

    def has_sum_rate(self) -> bool:
        return any(sum(c.coeffs) > 1 for c in self.constraints)

    def contains(self, point, tol: float = 0.0) -> bool:
        """Raw containment test ``A x <= b`` (no sign restriction on rates)."""
        x = np.asarray(point, dtype=float)
        if x.shape != (len(self.coords),) or not np.all(np.isfinite(x)):
            raise ValueError(f"rate point must have {len(self.coords)} finite entries")
        return bool(np.all(self.A @ x <= self.b + tol))

    def corners(self, clamp: bool = False) -> np.ndarray:
        """Vertices of the region intersected with the nonnegative orthant."""
        return polytope_vertices(self.A, self.bounds(clamp))

    def is_subset(self, other: "RateRegion", tol: float = 1e-9) -> bool:
        """Containment of the nonnegative parts, decided on the vertices of ``self``."""
        if other.coords != self.coords:
            raise ValueError(f"coordinate mismatch: {self.coords} vs {other.coords}")
        return all(other.contains(v, tol) for v in self.corners())

    def value(self, label: str) -> float:
        for con in self.constraints:
            if con.label == label:
                return con.bound
        raise KeyError(label)

    def rows(self, clamp: bool = False) -> list[dict]:
        out = []
        for con, bnd in zip(self.constraints, self.bounds(clamp)):
            row = {"region": self.name, "constraint": con.label}
            row.update({f"coef_{c}": k for c, k in zip(self.coords, con.coeffs)})
            row["bound"] = float(bnd)
            row["budget"] = self.budget_label
            out.append(row)
        return out


def polytope_vertices(A: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Vertices of ``{x >= 0 : A x <= b}`` by enumerating tight subsets."""
    d = A.shape[1]
    G = np.vstack([A, -np.eye(d)])
    h = np.concatenate([b, np.zeros(d)])
    found = []
    for rows in combinations(range(len(G)), d):
        M = G[list(rows)]
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        x = np.linalg.solve(M, h[list(rows)])
        if np.all(G @ x <= h + CORNER_TOL * (1 + np.abs(h))):
            x = np.where(np.abs(x) < CORNER_TOL, 0.0, x)
            if not any(np.allclose(x, y, atol=1e-9) for y in found):
                found.append(x)
    if not found:
        return np.zeros((0, d))
    found.sort(key=lambda v: tuple(v))
    return np.array(found)


# --------------------------------------------------------------------------
# penalties


def log2(x: float) -> float:
    return float(np.log2(x))


def sen_penalty(eps: float) -> float:
    """``log2(eps) - 2``."""
    return log2(eps) - 2.0


def hn_penalty(eps: float, delta: float) -> float:
    """``-log2(4 eps / delta^2)``; equals ``log2(eps) - 2`` exactly when ``delta = eps``."""
    return -log2(4.0 * eps / delta**2)


def budget_note(value: float, limit: float, label: str) -> str | None:
    if value >= limit:
        return f"budget {label} = {value:.4g} is vacuous (>= {limit:g})"
    return None


O1_NOTE = "the unspecified O(1) secrecy constant is set to {o1:g}"


# --------------------------------------------------------------------------
# MAC wiretap regions


@dataclass(frozen=True)
class MacTerms:
    ih_1: float
    ih_2: float
    ih_12: float
    leak_1: float
    leak_2: float


def mac_terms(ch: CqMaWtc, law: MacLaw, eps: float, eta: float) -> MacTerms:
    s = control_state_mawtc(ch, law)
    return MacTerms(
        ih_1=conditional_hypothesis_testing_mi(s, ["X1"], ["X2", "Y"], ["Q"], eps),
        ih_2=conditional_hypothesis_testing_mi(s, ["X2"], ["X1", "Y"], ["Q"], eps),
        ih_12=conditional_hypothesis_testing_mi(s, ["X1", "X2"], ["Y"], ["Q"], eps),
        leak_1=conditional_smooth_max_mi(s, ["X1"], ["Z"], ["Q"], eta),
        leak_2=conditional_smooth_max_mi(s, ["X2"], ["Z", "X1"], ["Q"], eta),
    )


def _mac_region(name, t: MacTerms, p: SmoothingParams, penalty: tuple[str, float], budget_label, budget_value, notes):
    sec = -log2(3.0 / p.eps_prime**3)
    quarter = 0.25 * log2(p.delta_prime)
    pen_name, pen = penalty
    rows = [
        Constraint.from_terms((1, 0), "R1", [
            ("I_H^eps(X1;X2Y|Q)", t.ih_1), ("-I_max^eta(X1;Z|Q)", -t.leak_1), (pen_name, pen),
            ("-log2(3/eps'^3)", sec), ("1/4 log2(delta')", quarter),
        ]),
        Constraint.from_terms((0, 1), "R2", [
            ("I_H^eps(X2;X1Y|Q)", t.ih_2), ("-I_max^eta(X2;ZX1|Q)", -t.leak_2), (pen_name, pen),
            ("-log2(3/eps'^3)", sec), ("1/4 log2(delta')", quarter), ("O(1)", p.o1),
        ]),
        Constraint.from_terms((1, 1), "R1+R2", [
            ("I_H^eps(X1X2;Y|Q)", t.ih_12), ("-I_max^eta(X1;Z|Q)", -t.leak_1),
            ("-I_max^eta(X2;ZX1|Q)", -t.leak_2), (pen_name, pen),
            ("-2 log2(3/eps'^3)", 2 * sec), ("1/2 log2(delta')", 2 * quarter), ("O(1)", p.o1),
        ]),
    ]
    return RateRegion(name, ("R1", "R2"), tuple(rows), budget_label, budget_value, tuple(n for n in notes if n))


def region_corollary1(ch: CqMaWtc, law: MacLaw, params: SmoothingParams, terms: MacTerms | None = None) -> RateRegion:
    """Joint-typicality decoding with secrecy from randomized junk indices."""
    params.check(*SECRECY_MAC)
    t = terms or mac_terms(ch, law, params.eps, params.eta)
    leak = 20.0 * params.delta_prime**0.125
    err = 49.0 * math.sqrt(params.eps)
    notes = [
        O1_NOTE.format(o1=params.o1),
        budget_note(err, 1.0, "49 sqrt(eps)"),
        budget_note(leak, 2.0, "20 delta'^(1/8)"),
    ]
    return _mac_region(
        "corollary1", t, params, ("log2(eps)-2", sen_penalty(params.eps)),
        "49 sqrt(eps) + 20 delta'^(1/8)", (err + leak,), notes,
    )


def region_theorem1(ch: CqMaWtc, law: MacLaw, params: SmoothingParams, terms: MacTerms | None = None) -> RateRegion:
    """Simultaneous position-based decoding with the same secrecy terms."""
    params.check(*SIMULTANEOUS_MAC)
    t = terms or mac_terms(ch, law, params.eps, params.eta)
    leak = 20.0 * params.delta_prime**0.125
    err = params.eps + 2 * params.delta
    notes = [
        O1_NOTE.format(o1=params.o1),
        budget_note(err, 1.0, "eps + 2 delta"),
        budget_note(leak, 2.0, "20 delta'^(1/8)"),
    ]
    return _mac_region(
        "theorem1", t, params, ("-log2(4eps/delta^2)", hn_penalty(params.eps, params.delta)),
        "eps + 2 delta + 20 delta'^(1/8)", (err + leak,), notes,
    )


# --------------------------------------------------------------------------
# point-to-point wiretap regions


def iid_conditional_value(
    s: MultipartiteState,
    z: Sequence[str],
    n: int,
    eps: float,
    per_block: Callable[[MultipartiteState, int], float],
) -> float:
    """Classical max-min smoothing over ``Z^n`` for the ``n``-fold power of ``s``.

    Conditional blocks of the power are tensor powers of single-copy blocks, so
    they are assembled directly instead of slicing the full power.  ``per_block``
    receives the block state (labels suffixed ``_1 .. _n``) and ``n``.
    """
    z = list(z)
    if z:
        parts = s.condition(z)
    else:
        parts = [(1.0, (), s)]
    probs, values = [], []
    for combo in product(range(len(parts)), repeat=n):
        p = float(np.prod([parts[i][0] for i in combo]))
        st = parts[combo[0]][2].power(1)
        for k, i in enumerate(combo[1:], start=2):
            nxt = parts[i][2]
            st = st.tensor(nxt.relabel({lab: f"{lab}_{k}" for lab in nxt.labels}))
        probs.append(p)
        values.append(per_block(st, n))
    return classical_smoothing_max_min(probs, values, eps)


def _copies(labels: Sequence[str], n: int) -> list[str]:
    return [f"{lab}_{i}" for i in range(1, n + 1) for lab in labels]


@dataclass(frozen=True)
class PpTerms:
    ih_1: float
    ih_2: float
    leak_1: float
    leak_2: float


def pp_terms(s: MultipartiteState, params: SmoothingParams, n: int = 1) -> PpTerms:
    """Information terms of the successive-decoding region on ``n`` copies (unnormalized)."""
    e_h = params.eps1 - params.delta1
    e_m = math.sqrt(params.eps2) - params.delta2
    s1 = s.marginal(["U1", "U2", "Y"])
    ih_1 = iid_conditional_value(
        s1, ["U2"], n, e_h, lambda st, k: hypothesis_testing_mi(st, _copies(["U1"], k), _copies(["Y"], k), e_h)
    )
    ih_2 = iid_conditional_value(
        s1, ["U1"], n, e_h, lambda st, k: hypothesis_testing_mi(st, _copies(["U2"], k), _copies(["Y"], k), e_h)
    )
    leak_1 = iid_conditional_value(
        s.marginal(["U1", "Z"]), [], n, e_m,
        lambda st, k: alt_smooth_max_mi(st, _copies(["Z"], k), _copies(["U1"], k), e_m),
    )
    leak_2 = iid_conditional_value(
        s.marginal(["U1", "U2", "Z"]), ["U1"], n, e_m,
        lambda st, k: alt_smooth_max_mi(st, _copies(["Z"], k), _copies(["U2"], k), e_m),
    )
    return PpTerms(ih_1, ih_2, leak_1, leak_2)


def region_theorem2(ch: PpQwtc, law: PpLaw, params: SmoothingParams, terms: PpTerms | None = None) -> RateRegion:
    """Successive position-based decoding with convex-split secrecy; no sum-rate row."""
    params.check(*PP_SUCCESSIVE)
    t = terms or pp_terms(control_state_ppqwtc(ch, law), params)
    pen = hn_penalty(params.eps1, params.delta1)
    split = -2.0 * log2(1.0 / params.delta2)
    rows = (
        Constraint.from_terms((1, 0), "R1", [
            ("I_H^(eps1-delta1)(U1;Y|U2)", t.ih_1), ("-I~_max^(sqrt(eps2)-delta2)(Z;U1)", -t.leak_1),
            ("-log2(4eps1/delta1^2)", pen), ("-2 log2(1/delta2)", split),
        ]),
        Constraint.from_terms((0, 1), "R2", [
            ("I_H^(eps1-delta1)(U2;Y|U1)", t.ih_2), ("-I~_max^(sqrt(eps2)-delta2)(Z;U2|U1)", -t.leak_2),
            ("-log2(4eps1/delta1^2)", pen), ("-2 log2(1/delta2)", split),
        ]),
    )
    e1, e2 = params.eps1, params.eps2
    b1 = 3 * e1 + 2 * math.sqrt(e1) + 2 * math.sqrt(e2)
    b2 = 2 * (e1 + math.sqrt(e1)) + math.sqrt(e2)
    notes = (
        budget_note(b1, 1.0, "3 eps1 + 2 sqrt(eps1) + 2 sqrt(eps2)"),
        budget_note(b2, 1.0, "2(eps1 + sqrt(eps1)) + sqrt(eps2)"),
    )
    return RateRegion(
        "theorem2", ("R1", "R2"), rows,
        "(3 eps1 + 2 sqrt(eps1) + 2 sqrt(eps2), 2(eps1 + sqrt(eps1)) + sqrt(eps2))",
        (b1, b2), tuple(n for n in notes if n),
    )


def region_19(ch: PpQwtc, law: PpLaw, eps1: float) -> RateRegion:
    """Successive decoding without secrecy terms: two single-rate rows, no sum rate."""
    SmoothingParams(eps1=eps1).check("eps1_in_unit")
    s = control_state_ppqwtc(ch, law)
    pen = sen_penalty(eps1)
    rows = (
        Constraint.from_terms((1, 0), "R1", [
            ("I_H^eps1(U1;Y|U2)", conditional_hypothesis_testing_mi(s, ["U1"], ["Y"], ["U2"], eps1)),
            ("log2(eps1)-2", pen),
        ]),
        Constraint.from_terms((0, 1), "R2", [
            ("I_H^eps1(U2;Y|U1)", conditional_hypothesis_testing_mi(s, ["U2"], ["Y"], ["U1"], eps1)),
            ("log2(eps1)-2", pen),
        ]),
    )
    return RateRegion("eq19", ("R1", "R2"), rows, "eps1", (eps1,))


def asymptotic_region(ch: PpQwtc, law: PpLaw) -> RateRegion:
    """i.i.d. limit with von Neumann quantities."""
    s = control_state_ppqwtc(ch, law)
    i1y = conditional_mutual_information(s, "U1", "Y", "U2")
    i2y = conditional_mutual_information(s, "U2", "Y", "U1")
    i1z = mutual_information(s, "U1", "Z")
    i1z_c = conditional_mutual_information(s, "U1", "Z", "U2")
    i2z = conditional_mutual_information(s, "U2", "Z", "U1")
    rows = (
        Constraint.from_terms((1, 0), "R1", [("I(U1;Y|U2)", i1y), ("-I(U1;Z)", -i1z)]),
        Constraint.from_terms((0, 1), "R2", [("I(U2;Y|U1)", i2y), ("-I(U2;Z|U1)", -i2z)]),
    )
    return RateRegion(
        "asymptotic", ("R1", "R2"), rows, "asymptotic", (),
        metadata=(("I(U1;Z|U2)", i1z_c),),
    )


# --------------------------------------------------------------------------
# broadcast regions


def _check_eps(eps: float):
    SmoothingParams(eps=eps).check("eps_in_unit")


def _ih(s, a, b, z, eps):
    if z:
        return conditional_hypothesis_testing_mi(s, a, b, z, eps)
    return hypothesis_testing_mi(s, a, b, eps)


def region_theorem3(ch: Qbc, law: QbcLaw, eps: float) -> RateRegion:
    """Superposition coding: private rate ``R1`` for receiver 1 and common rate ``Rc``."""
    _check_eps(eps)
    s = control_state_qbc(ch, law)
    pen = ("log2(eps)-2", sen_penalty(eps))
    rows = (
        Constraint.from_terms((1, 0), "R1", [("I_H^eps(X;Y1|U)", _ih(s, ["X"], ["Y1"], ["U"], eps)), pen]),
        Constraint.from_terms((0, 1), "Rc", [("I_H^eps(U;Y2)", _ih(s, ["U"], ["Y2"], [], eps)), pen]),
        Constraint.from_terms((1, 1), "R1+Rc", [("I_H^eps(X;Y1)", _ih(s, ["X"], ["Y1"], [], eps)), pen]),
    )
    return RateRegion("theorem3", ("R1", "Rc"), rows, "O(eps)", (eps,))


def region_corollary2(ch: Qbc, law: QbcPairLaw, eps: float) -> RateRegion:
    """Three-message superposition region over ``(R1, R2, Rc)``."""
    _check_eps(eps)
    s = control_state_qbc(ch, law)
    pen = ("log2(eps)-2", sen_penalty(eps))
    spec = [
        ((1, 0, 0), "R1", "I_H^eps(X1;Y1|U)", ["X1"], ["Y1"], ["U"]),
        ((0, 1, 0), "R2", "I_H^eps(X2;Y1|UX1)", ["X2"], ["Y1"], ["U", "X1"]),
        ((0, 0, 1), "Rc", "I_H^eps(U;Y2)", ["U"], ["Y2"], []),
        ((1, 1, 0), "R1+R2", "I_H^eps(X1X2;Y1|U)", ["X1", "X2"], ["Y1"], ["U"]),
        ((1, 0, 1), "R1+Rc", "I_H^eps(X1;Y1)", ["X1"], ["Y1"], []),
        ((0, 1, 1), "R2+Rc", "I_H^eps(X2;Y1|X1)", ["X2"], ["Y1"], ["X1"]),
    ]
    rows = tuple(
        Constraint.from_terms(c, lab, [(name, _ih(s, a, b, z, eps)), pen]) for c, lab, name, a, b, z in spec
    )
    return RateRegion("corollary2", ("R1", "R2", "Rc"), rows, "O(eps)", (eps,))


def region_18(ch: Qbc, law: QbcPairLaw, eps: float) -> RateRegion:
    """No common message: the three non-redundant rows over ``(R1, R2)``."""
    _check_eps(eps)
    s = control_state_qbc(ch, law).ptrace({"U"})
    pen = ("log2(eps)-2", sen_penalty(eps))
    rows = (
        Constraint.from_terms((1, 0), "R1", [("I_H^eps(X1;Y1)", _ih(s, ["X1"], ["Y1"], [], eps)), pen]),
        Constraint.from_terms((0, 1), "R2", [("I_H^eps(X2;Y1|X1)", _ih(s, ["X2"], ["Y1"], ["X1"], eps)), pen]),
        Constraint.from_terms((1, 1), "R1+R2", [("I_H^eps(X1X2;Y1)", _ih(s, ["X1", "X2"], ["Y1"], [], eps)), pen]),
    )
    return RateRegion("eq18", ("R1", "R2"), rows, "O(eps)", (eps,))


# --------------------------------------------------------------------------
# i.i.d. convergence


@dataclass(frozen=True)
class ConvergenceRow:
    n: int
    ih_1: float
    ih_2: float
    leak_1: float
    leak_2: float
    target_ih_1: float
    target_ih_2: float
    target_leak_1: float
    target_leak_1_cond: float
    target_leak_2: float

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def _check_cap(dim: int, n: int, cap: int = DIM_CAP):
    if dim**n > cap:
        raise CapExceeded(f"{n}-fold tensor power of a {dim}-dimensional block", dim**n, cap)


def convergence_harness(ch: PpQwtc, law: PpLaw, params: SmoothingParams, n_max: int) -> list[ConvergenceRow]:
    """Per-copy one-shot terms of the successive-decoding region for ``n = 1..n_max``."""
    params.check(*PP_SUCCESSIVE)
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    s = control_state_ppqwtc(ch, law)
    n1, n2 = ch.sizes
    _check_cap(max(n1 * n2 * ch.dim_y, n1 * n2 * ch.dim_z), n_max)
    targets = (
        conditional_mutual_information(s, "U1", "Y", "U2"),
        conditional_mutual_information(s, "U2", "Y", "U1"),
        mutual_information(s, "U1", "Z"),
        conditional_mutual_information(s, "U1", "Z", "U2"),
        conditional_mutual_information(s, "U2", "Z", "U1"),
    )
    rows = []
    for n in range(1, n_max + 1):
        t = pp_terms(s, params, n)
        rows.append(ConvergenceRow(n, t.ih_1 / n, t.ih_2 / n, t.leak_1 / n, t.leak_2 / n, *targets))
    return rows


@dataclass(frozen=True)
class AepRow:
    n: int
    per_copy: float
    target: float

    @property
    def gap(self) -> float:
        return abs(self.per_copy - self.target)


def aep_table(s: MultipartiteState, a, b, eps: float, n_max: int, z=()) -> list[AepRow]:
    """``(1/n) I_H^eps(A^n; B^n | Z^n)`` against ``I(A;B|Z)`` for ``n = 1..n_max``."""
    a, b, z = list(a), list(b), list(z)
    sub = s.marginal(z + a + b)
    _check_cap(sub.dim, n_max)
    target = conditional_mutual_information(s, a, b, z) if z else mutual_information(s, a, b)
    rows = []
    for n in range(1, n_max + 1):
        v = iid_conditional_value(
            sub, z, n, eps, lambda st, k: hypothesis_testing_mi(st, _copies(a, k), _copies(b, k), eps)
        )
        rows.append(AepRow(n, v / n, target))
    return rows


# --------------------------------------------------------------------------
# scans over input laws


def simplex_grid(k: int, step: float = 0.1) -> list[np.ndarray]:
    """Probability vectors of length ``k`` whose entries are multiples of ``step``."""
    m = int(round(1.0 / step))
    if m < 1 or abs(m * step - 1.0) > 1e-9:
        raise ValueError(f"grid step must divide 1, got {step!r}")
    out = []

    def rec(prefix, left, slots):
        if slots == 1:
            out.append(np.array(prefix + [left], dtype=float) / m)
            return
        for i in range(left + 1):
            rec(prefix + [i], left - i, slots - 1)

    rec([], m, k)
    return out


def mac_law_grid(n1: int, n2: int, step: float = 0.1) -> list[MacLaw]:
    return [MacLaw.independent(p1, p2) for p1 in simplex_grid(n1, step) for p2 in simplex_grid(n2, step)]


def pp_law_grid(n1: int, n2: int, step: float = 0.1) -> list[PpLaw]:
    return [PpLaw(p.reshape(n1, n2)) for p in simplex_grid(n1 * n2, step)]


def pareto_front(points: np.ndarray) -> np.ndarray:
    """Points not weakly dominated by any other point."""
    pts = np.unique(np.round(np.asarray(points, dtype=float), 12), axis=0)
    keep = []
    for i, p in enumerate(pts):
        dominated = any(
            j != i and np.all(q >= p - 1e-12) and np.any(q > p + 1e-12) for j, q in enumerate(pts)
        )
        if not dominated:
            keep.append(p)
    return np.array(keep).reshape(-1, pts.shape[1] if pts.ndim == 2 else 0)


@dataclass
class FrontierScan:
    coords: tuple[str, ...]
    entries: list = field(default_factory=list)  # (law, region, corners)
    envelope: np.ndarray | None = None


def frontier_scan(builder: Callable, ch, laws: Iterable, *args, clamp: bool = False) -> FrontierScan:
    """Evaluate ``builder(ch, law, *args)`` on every law and collect the upper envelope."""
    laws = list(laws)
    if not laws:
        raise ValueError("law grid is empty")
    scan = None
    all_corners = []
    for law in laws:
        region = builder(ch, law, *args)
        if scan is None:
            scan = FrontierScan(region.coords)
        corners = region.corners(clamp=clamp)
        scan.entries.append((law, region, corners))
        all_corners.extend(corners)
    d = len(scan.coords)
    scan.envelope = pareto_front(np.array(all_corners).reshape(-1, d)) if all_corners else np.zeros((0, d))
    return scan


__all__ = [
    "AepRow",
    "Constraint",
    "ConvergenceRow",
    "FrontierScan",
    "InvalidParams",
    "MacTerms",
    "PpTerms",
    "RateRegion",
    "aep_table",
    "asymptotic_region",
    "convergence_harness",
    "frontier_scan",
    "hn_penalty",
    "iid_conditional_value",
    "mac_law_grid",
    "mac_terms",
    "pareto_front",
    "polytope_vertices",
    "pp_law_grid",
    "pp_terms",
    "region_18",
    "region_19",
    "region_corollary1",
    "region_corollary2",
    "region_theorem1",
    "region_theorem2",
    "region_theorem3",
    "sen_penalty",
    "simplex_grid",
]
