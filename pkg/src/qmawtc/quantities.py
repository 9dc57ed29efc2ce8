"""One-shot and asymptotic entropic quantities, all in bits.

The workhorses are the Neyman-Pearson solver behind the hypothesis-testing
relative entropy and the clipping-path smoother behind the smooth
max-relative entropies.  Both operate on lists of diagonal blocks so that
classical registers never force a full-size eigendecomposition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .qstate import (
    HERMITIAN_TOL,
    SUPPORT_REL,
    MultipartiteState,
    StateError,
    _matrix,
    _same_shape,
    eigh,
    eigvalsh,
    permute_op,
    psd_function,
    sqrtm_psd,
    tensor,
)

# bisection stops once the bracket is this narrow relative to its upper end
NP_REL_TOL = 1e-13
NP_MAX_ITER = 200
# every returned certificate must close the duality gap to this relative level
NP_GAP_TOL = 1e-6
# rho-weight outside supp(sigma) tolerated before a divergence becomes +inf
SUPPORT_LEAK_TOL = 1e-9
SMOOTHING_GRID = 64
SMOOTHING_REFINE = 60
# slack added to the purified-distance budget when testing feasibility
BUDGET_SLACK = 1e-12


class NumericError(RuntimeError):
    """Raised when an iterative routine fails to converge."""


class CapExceeded(NumericError):
    """A construction would exceed the dense dimension cap."""

    def __init__(self, what: str, dim: int, cap: int):
        super().__init__(f"dimension cap exceeded: {what} has dimension {dim} > {cap}")
        self.dim = dim
        self.cap = cap


class InvalidParams(ValueError):
    """A smoothing parameter bundle violates a named validity predicate."""

    def __init__(self, predicate: str, message: str):
        super().__init__(f"{predicate}: {message}")
        self.predicate = predicate


def _check_eps(eps: float, name: str = "eps"):
    if not (0.0 < eps < 1.0) or not math.isfinite(eps):
        raise InvalidParams(f"{name}_in_unit", f"{name} must lie in (0, 1), got {eps!r}")


# --------------------------------------------------------------------------
# block structure


class BlockLayout:
    """Splits operators on a register set into classical-index diagonal blocks.

    Classical registers are moved to the front; operators that are
    block-diagonal in their joint index become a list of blocks on the
    quantum remainder.
    """

    def __init__(self, registers):
        regs = tuple(registers)
        self.registers = regs
        self.dims = [r.dim for r in regs]
        cls = [i for i, r in enumerate(regs) if r.classical]
        qnt = [i for i, r in enumerate(regs) if not r.classical]
        self.perm = cls + qnt
        self.n_blocks = int(np.prod([self.dims[i] for i in cls])) if cls else 1
        self.block_dim = int(np.prod([self.dims[i] for i in qnt])) if qnt else 1

    def split(self, op: np.ndarray, tol: float = HERMITIAN_TOL) -> list[np.ndarray] | None:
        """Diagonal blocks of ``op``, or ``None`` if it is not block-diagonal."""
        if self.n_blocks == 1:
            return [np.asarray(op)]
        nb, bd = self.n_blocks, self.block_dim
        t = permute_op(np.asarray(op), self.dims, self.perm).reshape(nb, bd, nb, bd)
        idx = np.arange(nb)
        blocks = t[idx, :, idx, :]
        mass = np.abs(t).sum() - np.abs(blocks).sum()
        if mass > tol:
            return None
        return [b.copy() for b in blocks]

    def join(self, blocks: Sequence[np.ndarray]) -> np.ndarray:
        nb, bd = self.n_blocks, self.block_dim
        full = np.zeros((nb * bd, nb * bd), dtype=complex)
        for i, b in enumerate(blocks):
            full[i * bd:(i + 1) * bd, i * bd:(i + 1) * bd] = b
        inverse = [self.perm.index(i) for i in range(len(self.dims))]
        permuted_dims = [self.dims[i] for i in self.perm]
        return permute_op(full, permuted_dims, inverse)


def _blocks_for(rho, sigma) -> tuple[list[np.ndarray], list[np.ndarray], BlockLayout | None]:
    """Block lists for a pair of operators; states with classical registers are split."""
    if isinstance(rho, MultipartiteState) and isinstance(sigma, MultipartiteState):
        if rho.dims != sigma.dims:
            raise StateError(f"dimension mismatch: {rho.dims} vs {sigma.dims}")
        layout = BlockLayout(rho.registers)
        if layout.n_blocks > 1:
            rb, sb = layout.split(rho.op), layout.split(sigma.op)
            if rb is not None and sb is not None:
                return rb, sb, layout
    r, s = _same_shape(rho, sigma)
    return [r], [s], None


def _global_max_eig(blocks) -> float:
    return max((float(eigvalsh(b)[-1]) for b in blocks), default=0.0)


def _support_basis(b: np.ndarray, threshold: float) -> tuple[np.ndarray, np.ndarray]:
    w, v = eigh(b)
    keep = w > threshold
    return w[keep], v[:, keep]


def _weights(v: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Diagonal of ``v^dagger r v`` (real part)."""
    return np.einsum("ij,ik,kj->j", v.conj(), r, v).real


def _outside_support_mass(rb, sb) -> float:
    """Trace of rho outside the support of sigma, summed over blocks."""
    thr = SUPPORT_REL * _global_max_eig(sb)
    inside = 0.0
    for r, s in zip(rb, sb):
        _, v = _support_basis(s, thr)
        if v.shape[1]:
            inside += _weights(v, r).sum()
    total = sum(np.trace(r).real for r in rb)
    return float(max(0.0, total - inside))


# --------------------------------------------------------------------------
# entropies


def _entropy_of_spectrum(w: np.ndarray) -> float:
    w = np.clip(np.asarray(w, dtype=float), 0.0, None)
    w = w[w > 0]
    return float(-(w * np.log2(w)).sum())


def entropy(rho) -> float:
    """Von Neumann entropy of a density matrix, in bits."""
    return _entropy_of_spectrum(eigvalsh(_matrix(rho)))


def _labels(x) -> list[str]:
    if isinstance(x, str):
        return [x]
    return list(x)


def von_neumann_entropy(s: MultipartiteState, registers=None) -> float:
    if registers is None:
        return entropy(s.op)
    labs = _labels(registers)
    if not labs:
        return 0.0
    return entropy(s.marginal(labs).op)


def conditional_entropy(s: MultipartiteState, a, b) -> float:
    a, b = _labels(a), _labels(b)
    return von_neumann_entropy(s, a + b) - von_neumann_entropy(s, b)


def mutual_information(s: MultipartiteState, a, b) -> float:
    a, b = _labels(a), _labels(b)
    return von_neumann_entropy(s, a) + von_neumann_entropy(s, b) - von_neumann_entropy(s, a + b)


def conditional_mutual_information(s: MultipartiteState, a, b, c) -> float:
    a, b, c = _labels(a), _labels(b), _labels(c)
    h = lambda regs: von_neumann_entropy(s, regs)
    return h(a + c) + h(b + c) - h(a + b + c) - h(c)


def binary_entropy(eps: float) -> float:
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"binary entropy needs a probability, got {eps!r}")
    return _entropy_of_spectrum([eps, 1.0 - eps])


def _logm_support(h) -> np.ndarray:
    return psd_function(h, np.log2, support_only=True)


def relative_entropy(rho, sigma) -> float:
    """``Tr rho (log rho - log sigma)``, or ``+inf`` if the support condition fails."""
    r, s = _same_shape(rho, sigma)
    if _outside_support_mass([r], [s]) > SUPPORT_LEAK_TOL:
        return math.inf
    val = -entropy(r) - np.trace(r @ _logm_support(s)).real
    return float(val)


def renyi_relative_entropy(rho, sigma, alpha: float) -> float:
    """Petz-Renyi divergence ``log2 Tr(rho^a sigma^(1-a)) / (a - 1)``."""
    if alpha <= 0 or alpha == 1.0:
        raise ValueError(f"alpha must lie in (0,1) or (1,inf), got {alpha!r}; use relative_entropy at 1")
    r, s = _same_shape(rho, sigma)
    if alpha > 1 and _outside_support_mass([r], [s]) > SUPPORT_LEAK_TOL:
        return math.inf
    ra = psd_function(r, lambda w: w ** alpha, support_only=True)
    sa = psd_function(s, lambda w: w ** (1.0 - alpha), support_only=True)
    q = np.trace(ra @ sa).real
    if q <= 0:
        return math.inf
    return float(np.log2(q) / (alpha - 1.0))


def renyi_entropy(rho, alpha: float) -> float:
    if alpha <= 0 or alpha == 1.0:
        raise ValueError(f"alpha must lie in (0,1) or (1,inf), got {alpha!r}")
    w = np.clip(eigvalsh(_matrix(rho)), 0.0, None)
    w = w[w > SUPPORT_REL * w.max()]
    return float(np.log2((w ** alpha).sum()) / (1.0 - alpha))


# --------------------------------------------------------------------------
# hypothesis testing


@dataclass(frozen=True, eq=False)
class NpTestCertificate:
    """Optimal Neyman-Pearson test together with its Lagrange threshold.

    ``primal`` is the type-II error ``Tr(T sigma)`` and ``dual`` the value of
    the Lagrangian dual at multiplier ``1/lam``.  For infinite divergences the
    threshold is ``inf`` and both values are zero.
    """

    eps: float
    lam: float
    primal: float
    dual: float
    type1: float
    blocks: tuple = field(repr=False, default=())
    layout: BlockLayout | None = field(repr=False, default=None)

    @property
    def gap(self) -> float:
        return abs(self.primal - self.dual)

    @property
    def gap_ok(self) -> bool:
        return self.gap <= NP_GAP_TOL * max(1.0, abs(self.primal))

    @property
    def test(self) -> np.ndarray:
        if self.layout is None:
            return self.blocks[0]
        return self.layout.join(self.blocks)


def _positive_mass(rb, sb, lam: float) -> float:
    total = 0.0
    for r, s in zip(rb, sb):
        w, v = np.linalg.eigh(r - lam * s)
        pos = w > 0
        if pos.any():
            total += _weights(v[:, pos], r).sum()
    return total


def np_test(rho, sigma, eps: float) -> NpTestCertificate:
    """Solve ``min Tr(T sigma)`` subject to ``Tr(T rho) >= 1 - eps``, ``0 <= T <= I``."""
    _check_eps(eps)
    rb, sb, layout = _blocks_for(rho, sigma)
    return _np_blocks(rb, sb, eps, layout)


def _np_blocks(rb, sb, eps: float, layout=None) -> NpTestCertificate:
    target = 1.0 - eps
    rb = [(r + r.conj().T) / 2 for r in rb]
    sb = [(s + s.conj().T) / 2 for s in sb]

    if _outside_support_mass(rb, sb) >= target - BUDGET_SLACK:
        thr = SUPPORT_REL * _global_max_eig(sb)
        blocks = []
        for s in sb:
            _, v = _support_basis(s, thr)
            blocks.append(np.eye(s.shape[0]) - v @ v.conj().T)
        t1 = 1.0 - sum(np.trace(b @ r).real for b, r in zip(blocks, rb))
        return NpTestCertificate(eps, math.inf, 0.0, 0.0, t1, tuple(blocks), layout)

    f = lambda lam: _positive_mass(rb, sb, lam)
    lo = hi = 1.0
    if f(1.0) >= target:
        for _ in range(2100):
            hi *= 2.0
            if f(hi) < target:
                break
            lo = hi
        else:
            raise NumericError(f"Neyman-Pearson threshold not bracketed below {hi:.3e}")
    else:
        for _ in range(2100):
            lo /= 2.0
            if lo == 0.0:
                break
            if f(lo) >= target:
                break
            hi = lo
        else:
            lo = 0.0
        if lo == 0.0:
            raise NumericError(f"Neyman-Pearson threshold not bracketed above 0 (hi={hi:.3e})")

    for _ in range(NP_MAX_ITER):
        if hi - lo <= NP_REL_TOL * hi:
            break
        mid = math.sqrt(lo * hi)
        if f(mid) >= target:
            lo = mid
        else:
            hi = mid
    else:
        raise NumericError(
            f"Neyman-Pearson bisection did not converge in {NP_MAX_ITER} iterations; bracket [{lo!r}, {hi!r}]"
        )

    lam = math.sqrt(lo * hi)
    # rank every eigendirection of rho - lam*sigma by eigenvalue and fill greedily
    entries = []
    decomps = []
    for bi, (r, s) in enumerate(zip(rb, sb)):
        w, v = np.linalg.eigh(r - lam * s)
        wr = _weights(v, r)
        decomps.append(v)
        for j in range(len(w)):
            entries.append((w[j], bi, j, wr[j]))
    entries.sort(key=lambda e: -e[0])
    coeffs = [np.zeros(r.shape[0]) for r in rb]
    filled = 0.0
    for w, bi, j, wr in entries:
        if filled >= target:
            break
        if wr <= 0:
            continue
        take = min(1.0, (target - filled) / wr)
        coeffs[bi][j] = take
        filled += take * wr
    blocks = tuple((v * c) @ v.conj().T for v, c in zip(decomps, coeffs))
    primal = float(sum(np.trace(t @ s).real for t, s in zip(blocks, sb)))
    type1 = float(1.0 - sum(np.trace(t @ r).real for t, r in zip(blocks, rb)))
    plus = 0.0
    for r, s in zip(rb, sb):
        w = np.linalg.eigvalsh(r - lam * s)
        plus += w[w > 0].sum()
    dual = float((target - plus) / lam)
    cert = NpTestCertificate(eps, lam, primal, dual, type1, blocks, layout)
    if not cert.gap_ok:
        raise NumericError(f"Neyman-Pearson duality gap {cert.gap:.3e} exceeds tolerance at lam={lam!r}")
    return cert


def hypothesis_testing_relative_entropy(rho, sigma, eps: float) -> tuple[float, NpTestCertificate]:
    """``D_H^eps(rho || sigma) = -log2 min Tr(T sigma)`` with its certificate."""
    cert = np_test(rho, sigma, eps)
    if cert.primal <= 0.0:
        return math.inf, cert
    return float(-np.log2(cert.primal)), cert


def product_of_marginals(s: MultipartiteState, a, b) -> tuple[MultipartiteState, MultipartiteState]:
    """``(rho_AB, rho_A (x) rho_B)`` with both states ordered as ``a + b``."""
    a, b = _labels(a), _labels(b)
    if set(a) & set(b):
        raise StateError(f"register sets overlap: {a} and {b}")
    joint = s.marginal(a + b)
    prod = tensor(s.marginal(a), s.marginal(b))
    return joint, prod


def hypothesis_testing_mi(s: MultipartiteState, a, b, eps: float) -> float:
    """``I_H^eps(A;B) = D_H^eps(rho_AB || rho_A (x) rho_B)``."""
    joint, prod = product_of_marginals(s, a, b)
    return hypothesis_testing_relative_entropy(joint, prod, eps)[0]


def _check_classical(s: MultipartiteState, z):
    for lab in z:
        if not s.register(lab).classical:
            raise StateError(f"conditioning register {lab!r} is not classical")


def classical_smoothing_max_min(probs: Sequence[float], values: Sequence[float], eps: float) -> float:
    """``max over perturbed laws q with P(q, p) <= eps of min over supp(q)``.

    For a fixed support the best law is ``p`` renormalized on it, which sits at
    purified distance ``sqrt(removed mass)``.  Raising the minimum requires
    dropping every outcome below it, so removing the lowest values while the
    removed mass stays within ``eps**2`` is optimal.
    """
    order = np.argsort(np.asarray(values, dtype=float), kind="stable")
    budget = eps * eps + BUDGET_SLACK
    removed = 0.0
    k = 0
    while k < len(order) - 1 and removed + probs[order[k]] <= budget:
        removed += probs[order[k]]
        k += 1
    return float(values[order[k]])


def conditional_quantity(s: MultipartiteState, z, eps: float, per_block: Callable[[MultipartiteState], float]) -> float:
    """Apply the classical max-min smoothing over ``z`` to ``per_block`` values."""
    z = _labels(z)
    _check_classical(s, z)
    parts = s.condition(z)
    probs = [p for p, _, _ in parts]
    values = [per_block(st) for _, _, st in parts]
    return classical_smoothing_max_min(probs, values, eps)


def conditional_hypothesis_testing_mi(s: MultipartiteState, a, b, z, eps: float) -> float:
    """``I_H^eps(A;B|Z)`` for classical ``Z``, via the classical max-min smoothing."""
    _check_eps(eps)
    a, b = _labels(a), _labels(b)
    return conditional_quantity(s, z, eps, lambda st: hypothesis_testing_mi(st, a, b, eps))


# --------------------------------------------------------------------------
# max-relative entropy and smoothing


def _dmax_blocks(rb, sb) -> float:
    if _outside_support_mass(rb, sb) > SUPPORT_LEAK_TOL:
        return math.inf
    thr = SUPPORT_REL * _global_max_eig(sb)
    best = 0.0
    for r, s in zip(rb, sb):
        w, v = _support_basis(s, thr)
        if not len(w):
            continue
        m = v / np.sqrt(w)
        g = np.linalg.eigvalsh(m.conj().T @ r @ m)
        best = max(best, float(g[-1]))
    if best <= 0.0:
        return -math.inf
    return float(np.log2(best))


def max_relative_entropy(rho, sigma) -> float:
    """``log2`` of the largest eigenvalue of ``sigma^(-1/2) rho sigma^(-1/2)`` on ``supp(sigma)``."""
    rb, sb, _ = _blocks_for(rho, sigma)
    return _dmax_blocks(rb, sb)


def max_mi(s: MultipartiteState, a, b) -> float:
    joint, prod = product_of_marginals(s, a, b)
    return max_relative_entropy(joint, prod)


class ClippingPath:
    """One-parameter family of smoothed states that damps large likelihood ratios.

    With ``G = sigma^(-1/2) rho sigma^(-1/2)``, the candidate at level ``c`` is
    ``sigma^(1/2) min(G, c) sigma^(1/2)`` renormalized.  Level ``max(G)``
    recovers ``rho`` (when ``supp rho`` lies in ``supp sigma``); lower levels
    trade purified distance for a smaller max-relative entropy.
    """

    def __init__(self, rb, sb):
        thr = SUPPORT_REL * _global_max_eig(sb)
        self._parts = []
        gs = []
        for r, s in zip(rb, sb):
            w, v = _support_basis(s, thr)
            if not len(w):
                self._parts.append(None)
                continue
            half = v * np.sqrt(w)
            m = v / np.sqrt(w)
            g, u = np.linalg.eigh(m.conj().T @ r @ m)
            g = np.clip(g, 0.0, None)
            mb = half @ u  # candidate = mb diag(min(g, c)) mb^dagger
            self._parts.append((g, mb, sqrtm_psd(r) @ mb, (np.abs(mb) ** 2).sum(axis=0)))
            gs.append(g)
        allg = np.concatenate(gs) if gs else np.zeros(0)
        self.g_max = float(allg.max(initial=0.0))
        pos = allg[allg > 1e-12 * self.g_max] if self.g_max > 0 else allg[:0]
        self.g_min = float(pos.min()) if len(pos) else self.g_max

    def mass(self, c: float) -> float:
        return float(sum((np.minimum(p[0], c) * p[3]).sum() for p in self._parts if p is not None))

    def distance(self, c: float) -> float:
        t = self.mass(c)
        if t <= 0:
            return 1.0
        root = 0.0
        for p in self._parts:
            if p is None:
                continue
            g, _, a, _ = p
            root += np.linalg.svd(a * np.sqrt(np.minimum(g, c)), compute_uv=False).sum()
        f = min(1.0, root * root / t)
        return float(math.sqrt(max(0.0, 1.0 - f)))

    def value(self, c: float) -> float:
        """``D_max`` of the normalized candidate against the reference."""
        t = self.mass(c)
        return float(max(0.0, np.log2(min(c, self.g_max) / t)))

    def candidate_blocks(self, c: float) -> list[np.ndarray | None]:
        t = self.mass(c)
        out = []
        for p in self._parts:
            if p is None:
                out.append(None)
                continue
            g, mb, _, _ = p
            out.append((mb * np.minimum(g, c)) @ mb.conj().T / t)
        return out

    def levels(self) -> np.ndarray:
        if self.g_min >= self.g_max * (1 - 1e-12):
            return np.array([self.g_max])
        return np.geomspace(self.g_max, self.g_min, SMOOTHING_GRID)

    def feasible(self, c: float, eps: float) -> bool:
        return self.distance(c) <= eps + BUDGET_SLACK

    def lowest_feasible(self, eps: float) -> float | None:
        """Smallest level reachable from the top of the path while staying in the ball."""
        levels = self.levels()
        if not self.feasible(levels[0], eps):
            return None
        k = 0
        while k + 1 < len(levels) and self.feasible(levels[k + 1], eps):
            k += 1
        if k + 1 == len(levels):
            return float(levels[-1])
        hi, lo = math.log(levels[k]), math.log(levels[k + 1])
        for _ in range(SMOOTHING_REFINE):
            mid = 0.5 * (lo + hi)
            if self.feasible(math.exp(mid), eps):
                hi = mid
            else:
                lo = mid
        return float(math.exp(hi))


def smooth_max_relative_entropy(rho, sigma, eps: float) -> float:
    """``D_max^eps(rho || sigma)`` along the clipping path (an upper bound on the exact value)."""
    _check_eps(eps)
    rb, sb, _ = _blocks_for(rho, sigma)
    exact = _dmax_blocks(rb, sb)
    path = ClippingPath(rb, sb)
    if path.g_max <= 0:
        return exact
    c = path.lowest_feasible(eps)
    if c is None:
        return exact
    return float(min(exact, path.value(c)))


def smooth_max_mi(s: MultipartiteState, a, b, eps: float) -> float:
    joint, prod = product_of_marginals(s, a, b)
    return smooth_max_relative_entropy(joint, prod, eps)


def alt_smooth_max_mi(s: MultipartiteState, b, a, eps: float) -> float:
    """Smooth max-information with the ``A`` marginal held fixed.

    Minimizes ``D_max(rho'_AB || rho_A (x) rho'_B)`` over candidates on the
    clipping path of ``rho_AB`` against ``rho_A (x) rho_B`` that lie in the
    ``eps``-ball; the unsmoothed state is always a candidate.
    """
    return alt_smooth_max_mi_witness(s, b, a, eps)[0]


def alt_smooth_max_mi_witness(s: MultipartiteState, b, a, eps: float):
    """``(value, rho'_B)``: the alternate smooth max-information and its smoothed ``B`` marginal."""
    _check_eps(eps)
    a, b = _labels(a), _labels(b)
    joint, prod = product_of_marginals(s, a, b)
    rho_a = s.marginal(a)
    best = max_relative_entropy(joint, prod)
    best_b = joint.marginal(b)
    rb, sb, layout = _blocks_for(joint, prod)
    path = ClippingPath(rb, sb)
    if path.g_max <= 0:
        return float(max(0.0, best)), best_b
    c_star = path.lowest_feasible(eps)
    if c_star is None:
        return float(max(0.0, best)), best_b
    levels = [c for c in path.levels() if c >= c_star and path.feasible(c, eps)] + [c_star]
    for c in levels:
        blocks = [
            blk if blk is not None else np.zeros_like(r) for blk, r in zip(path.candidate_blocks(c), rb)
        ]
        op = layout.join(blocks) if layout is not None else blocks[0]
        cand = MultipartiteState(joint.registers, op, validate=False)
        cand_b = cand.marginal(b)
        val = max_relative_entropy(cand, tensor(rho_a, cand_b))
        if val < best:
            best, best_b = val, cand_b
    return float(max(0.0, best)), best_b


def conditional_smooth_max_mi(s: MultipartiteState, a, b, z, eps: float) -> float:
    """``I_max^eps(A;B|Z)`` for classical ``Z`` (max over perturbed ``Z`` laws of the min)."""
    _check_eps(eps)
    a, b = _labels(a), _labels(b)
    return conditional_quantity(s, z, eps, lambda st: smooth_max_mi(st, a, b, eps))


def conditional_alt_smooth_max_mi(s: MultipartiteState, b, a, z, eps: float) -> float:
    _check_eps(eps)
    a, b = _labels(a), _labels(b)
    return conditional_quantity(s, z, eps, lambda st: alt_smooth_max_mi(st, b, a, eps))


# --------------------------------------------------------------------------
# inequality checks


FACT_SLACK = 1e-6


def fact1_sides(rho, sigma, eps: float) -> tuple[float, float]:
    """``(D_H^eps, (D + h_b(eps)) / (1 - eps))``."""
    _check_eps(eps)
    d = relative_entropy(rho, sigma)
    if not math.isfinite(d):
        raise ValueError("the relative entropy bound needs supp(rho) inside supp(sigma)")
    lhs = hypothesis_testing_relative_entropy(rho, sigma, eps)[0]
    return lhs, (d + binary_entropy(eps)) / (1.0 - eps)


def check_fact1(rho, sigma, eps: float) -> bool:
    lhs, rhs = fact1_sides(rho, sigma, eps)
    return lhs <= rhs + FACT_SLACK


def fact3_sides(s: MultipartiteState, a, b, eps: float, gamma: float) -> tuple[float, float]:
    """``(alt I_max^eps(B;A), I_max^(eps-gamma)(A;B) + log2(3/gamma^2))``."""
    _check_eps(eps)
    if not 0.0 < gamma < eps:
        raise InvalidParams("gamma_in_eps", f"gamma must lie in (0, eps={eps}), got {gamma!r}")
    lhs = alt_smooth_max_mi(s, b, a, eps)
    rhs = smooth_max_mi(s, a, b, eps - gamma) + np.log2(3.0 / gamma**2)
    return lhs, float(rhs)


def check_fact3(s: MultipartiteState, a, b, eps: float, gamma: float) -> bool:
    """Diagnostic only: the path smoother is not an exact optimizer."""
    lhs, rhs = fact3_sides(s, a, b, eps, gamma)
    return lhs <= rhs + FACT_SLACK


__all__ = [
    "BlockLayout",
    "ClippingPath",
    "InvalidParams",
    "NpTestCertificate",
    "NumericError",
    "CapExceeded",
    "alt_smooth_max_mi",
    "alt_smooth_max_mi_witness",
    "binary_entropy",
    "check_fact1",
    "check_fact3",
    "classical_smoothing_max_min",
    "conditional_alt_smooth_max_mi",
    "conditional_entropy",
    "conditional_hypothesis_testing_mi",
    "conditional_mutual_information",
    "conditional_quantity",
    "conditional_smooth_max_mi",
    "entropy",
    "fact1_sides",
    "fact3_sides",
    "hypothesis_testing_mi",
    "hypothesis_testing_relative_entropy",
    "max_mi",
    "max_relative_entropy",
    "mutual_information",
    "np_test",
    "product_of_marginals",
    "relative_entropy",
    "renyi_entropy",
    "renyi_relative_entropy",
    "smooth_max_mi",
    "smooth_max_relative_entropy",
    "von_neumann_entropy",
]
