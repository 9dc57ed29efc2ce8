"""Finite-blocklength decoder simulations.

Everything here works at the level of explicit operators: codebooks are
drawn (or enumerated), pretty-good measurements are built from hypothesis
tests, and error probabilities are exact traces.  Position-based decoding
with classical shared randomness is block diagonal in the randomness, so a
fixed codebook realization is one diagonal block of the full construction;
``position_based_error_dense`` builds the full tensor product as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .channels import CqMaWtc, MacLaw, PpLaw, PpQwtc, Qbc, QbcLaw, control_state_qbc
from .qstate import (
    check_density,
    eigvalsh,
    embed,
    inv_sqrtm_psd,
    permute_op,
    psd_function,
    purified_distance,
    random_density,
    random_unitary,
    support_projector,
    trace_norm,
    trace_out,
)
from .quantities import (
    CapExceeded,
    InvalidParams,
    NpTestCertificate,
    _np_blocks,
    alt_smooth_max_mi_witness,
    conditional_hypothesis_testing_mi,
    hypothesis_testing_mi,
    hypothesis_testing_relative_entropy,
    max_mi,
)

DENSE_CAP = 4096
ENUMERATION_CAP = 1 << 16
COMMUTE_TOL = 1e-9
SILENT_TOL = 1e-12
HN_TOL = 1e-9


# --------------------------------------------------------------------------
# codebooks and measurements


@dataclass(frozen=True, eq=False)
class Codebook:
    """Symbols ``entries[m, k]`` for message ``m`` and junk index ``k``.

    ``probs`` is the law the symbols were drawn from (one row per parent
    symbol for a superposition codebook).  ``seed`` is ``None`` for a fixed,
    hand-specified codebook.
    """

    entries: np.ndarray
    probs: np.ndarray | None = None
    seed: int | None = None

    def __post_init__(self):
        e = np.asarray(self.entries, dtype=int)
        if e.ndim != 2 or e.size == 0:
            raise InvalidParams("codebook_shape", f"codebook must be a non-empty (|M|, |K|) array, got {e.shape}")
        e.flags.writeable = False
        object.__setattr__(self, "entries", e)

    @property
    def n_messages(self) -> int:
        return self.entries.shape[0]

    @property
    def n_junk(self) -> int:
        return self.entries.shape[1]

    @property
    def size(self) -> int:
        return self.entries.size

    @property
    def flat(self) -> np.ndarray:
        """Symbols in position order ``j = m * |K| + k``."""
        return self.entries.reshape(-1)

    def message_of(self, j) -> np.ndarray:
        return np.asarray(j) // self.n_junk

    @classmethod
    def draw(cls, p, n_messages: int, n_junk: int = 1, seed: int | None = 0) -> "Codebook":
        p = np.asarray(p, dtype=float)
        rng = np.random.default_rng(seed)
        entries = rng.choice(p.size, size=(n_messages, n_junk), p=p)
        return cls(entries, p, seed)

    @classmethod
    def enumerate(cls, alphabet: int, n_messages: int, n_junk: int = 1) -> "Codebook":
        """Fixed codebook ``entries[m, k] = (m |K| + k) mod alphabet``; distinct whenever it fits."""
        return cls(np.arange(n_messages * n_junk).reshape(n_messages, n_junk) % alphabet)

    @classmethod
    def draw_conditional(cls, p_x_u, parent: "Codebook", n_messages: int, seed: int | None = 0) -> "Codebook":
        """Superposition layer: ``entries[m, mc] ~ p(x | parent symbol of mc)``."""
        p_x_u = np.asarray(p_x_u, dtype=float)
        rng = np.random.default_rng(seed)
        parents = parent.flat
        entries = np.empty((n_messages, parents.size), dtype=int)
        for col, u in enumerate(parents):
            entries[:, col] = rng.choice(p_x_u.shape[1], size=n_messages, p=p_x_u[u])
        return cls(entries, p_x_u, seed)


@dataclass(frozen=True, eq=False)
class TestOperator:
    """A binary test ``0 <= T <= I``; ``blocks[x]`` acts on the quantum output for symbol ``x``."""

    __test__ = False  # keep pytest from collecting it

    blocks: np.ndarray
    type1: float = float("nan")
    certificate: NpTestCertificate | None = field(default=None, repr=False)

    def __post_init__(self):
        b = np.asarray(self.blocks, dtype=complex)
        for blk in b.reshape(-1, *b.shape[-2:]):
            w = eigvalsh(blk)
            if w[0] < -1e-9 or w[-1] > 1 + 1e-9:
                raise InvalidParams("test_in_unit_interval", f"test eigenvalues must lie in [0, 1], got [{w[0]:.3g}, {w[-1]:.3g}]")
        object.__setattr__(self, "blocks", b)


@dataclass(frozen=True, eq=False)
class PovmSet:
    """Measurement elements plus the implicit completion ``I - sum(elements)``."""

    elements: np.ndarray

    @property
    def completion(self) -> np.ndarray:
        d = self.elements.shape[-1]
        return np.eye(d) - self.elements.sum(axis=0)

    def probabilities(self, rho) -> np.ndarray:
        """``Tr(Lambda_j rho)`` for every element."""
        return np.einsum("jab,ba->j", self.elements, rho).real


@dataclass(frozen=True)
class DecoderParams:
    """Message and junk sizes ``(|M1|, |K1|, |M2|, |K2|)`` with the Hayashi-Nagaoka constant."""

    sizes: tuple[int, int, int, int] = (2, 1, 2, 1)
    c: float = 1.0
    cap: int = DENSE_CAP

    def __post_init__(self):
        if len(self.sizes) != 4 or min(self.sizes) < 1:
            raise InvalidParams("sizes_positive", f"sizes must be four positive integers, got {self.sizes}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise InvalidParams("c_positive", f"c must be positive, got {self.c!r}")


def pretty_good_measurement(gammas) -> PovmSet:
    """``Lambda_j = S^(-1/2) Gamma_j S^(-1/2)`` with ``S = sum_j Gamma_j``.

    The inverse square root is taken on the support of ``S``; the kernel of
    ``S`` is the completion outcome.
    """
    g = np.asarray(gammas, dtype=complex)
    r = inv_sqrtm_psd(g.sum(axis=0))
    return PovmSet(r @ g @ r)


def hayashi_nagaoka_check(s, t, c: float) -> tuple[bool, float]:
    """Smallest eigenvalue of ``(1+c)(I-S) + (2+c+1/c) T - (I - (S+T)^(-1/2) S (S+T)^(-1/2))``.

    Requires ``0 <= S <= I`` and ``T >= 0``.  Returns ``(holds, min_eig)``.
    """
    if not c > 0:
        raise InvalidParams("c_positive", f"c must be positive, got {c!r}")
    s = np.asarray(s, dtype=complex)
    t = np.asarray(t, dtype=complex)
    ws, wt = eigvalsh(s), eigvalsh(t)
    if ws[0] < -1e-9 or ws[-1] > 1 + 1e-9:
        raise InvalidParams("s_in_unit_interval", "S must satisfy 0 <= S <= I")
    if wt[0] < -1e-9:
        raise InvalidParams("t_psd", "T must be positive semidefinite")
    eye = np.eye(s.shape[0])
    r = inv_sqrtm_psd(s + t)
    lhs = eye - r @ s @ r
    rhs = (1 + c) * (eye - s) + (2 + c + 1 / c) * t
    gap = rhs - lhs
    m = float(eigvalsh((gap + gap.conj().T) / 2)[0])
    return m >= -HN_TOL, m


def random_hn_instance(rng: np.random.Generator, dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Random ``0 <= S <= I`` (possibly rank deficient) and ``T >= 0`` of random scale."""
    u = random_unitary(dim, rng)
    w = rng.uniform(0.0, 1.0, dim)
    w[rng.random(dim) < 0.2] = 0.0
    s = (u * w) @ u.conj().T
    rank = int(rng.integers(1, dim + 1))
    t = random_density(dim, rng, rank=rank) * float(rng.exponential(1.0))
    return (s + s.conj().T) / 2, t


def _message_error(probs: np.ndarray, msg_true: np.ndarray, msg_decoded: np.ndarray, n_messages: int) -> np.ndarray:
    """Per-transmission message error from a ``(n_true, n_outcome)`` probability table.

    A message set of size one is never in error; otherwise the completion
    outcome counts as a decoding failure.
    """
    if n_messages == 1:
        return np.zeros(probs.shape[0])
    hit = msg_true[:, None] == msg_decoded[None, :]
    return 1.0 - (probs * hit).sum(axis=1)


# --------------------------------------------------------------------------
# simultaneous decoding for the multiple-access channel


def _mac_marginals(law: MacLaw) -> tuple[np.ndarray, np.ndarray]:
    if law.sizes[0] != 1:
        raise InvalidParams("time_sharing_trivial", "decoder simulations require |Q| = 1")
    return law.p_x1_q[0], law.p_x2_q[0]


def _y_outputs(ch: CqMaWtc) -> np.ndarray:
    n1, n2 = ch.sizes
    return np.array([[ch.output_y(a, b) for b in range(n2)] for a in range(n1)])


@dataclass(frozen=True, eq=False)
class SimultaneousHypotheses:
    """Block lists (indexed ``[x1, x2]``) of the true and the three wrong-index hypotheses on ``Y``."""

    mu: np.ndarray
    theta1: np.ndarray
    theta2: np.ndarray
    theta3: np.ndarray

    @property
    def mixture(self) -> np.ndarray:
        return (self.theta1 + self.theta2 + self.theta3) / 3


def simultaneous_hypotheses(ch: CqMaWtc, law: MacLaw) -> SimultaneousHypotheses:
    """``mu = rho_X1X2Y``; ``theta1`` wrong ``x1``, ``theta2`` wrong ``x2``, ``theta3`` both wrong."""
    p1, p2 = _mac_marginals(law)
    y = _y_outputs(ch)
    w = np.outer(p1, p2)[:, :, None, None]
    y_given_x2 = np.einsum("a,abij->bij", p1, y)
    y_given_x1 = np.einsum("b,abij->aij", p2, y)
    y_avg = np.einsum("a,aij->ij", p1, y_given_x1)
    return SimultaneousHypotheses(
        mu=w * y,
        theta1=w * np.broadcast_to(y_given_x2[None], y.shape),
        theta2=w * np.broadcast_to(y_given_x1[:, None], y.shape),
        theta3=w * np.broadcast_to(y_avg, y.shape),
    )


def simultaneous_test(ch: CqMaWtc, law: MacLaw, eps: float) -> TestOperator:
    """Optimal test of ``mu`` against the equal mixture of the three wrong hypotheses."""
    h = simultaneous_hypotheses(ch, law)
    n1, n2 = ch.sizes
    d = ch.dim_y
    cert = _np_blocks(list(h.mu.reshape(-1, d, d)), list(h.mixture.reshape(-1, d, d)), eps)
    blocks = np.array(cert.blocks).reshape(n1, n2, d, d)
    return TestOperator(blocks, cert.type1, cert)


def support_test(ch: CqMaWtc) -> TestOperator:
    """Support projector of each output; type-I error zero."""
    y = _y_outputs(ch)
    n1, n2 = ch.sizes
    blocks = np.array([[support_projector(y[a, b]) for b in range(n2)] for a in range(n1)])
    return TestOperator(blocks, 0.0)


def build_pgm_simultaneous(test: TestOperator, cb1: Codebook, cb2: Codebook) -> PovmSet:
    """Position-based measurement for one codebook realization.

    Element ``(j1, j2)`` (flattened as ``j1 * N2 + j2``) is the
    pretty-good-measurement normalization of ``T_{x1(j1), x2(j2)}``.
    """
    g = test.blocks[cb1.flat[:, None], cb2.flat[None, :]]
    d = g.shape[-1]
    return pretty_good_measurement(g.reshape(-1, d, d))


@dataclass(frozen=True)
class SimultaneousError:
    """Exact errors for one codebook realization.

    ``error`` is the message-pair error, ``index_error`` the error of the
    full position index and ``hn_bound`` the Hayashi-Nagaoka bound on the latter.
    """

    error: float
    index_error: float
    hn_bound: float


def exact_error_simultaneous(
    ch: CqMaWtc, test: TestOperator, cb1: Codebook, cb2: Codebook, c: float = 1.0
) -> SimultaneousError:
    y = _y_outputs(ch)
    x1, x2 = cb1.flat, cb2.flat
    n_pos1, n_pos2 = x1.size, x2.size
    d = ch.dim_y
    rho = y[x1[:, None], x2[None, :]].reshape(-1, d, d)
    gam = test.blocks[x1[:, None], x2[None, :]].reshape(-1, d, d)
    povm = pretty_good_measurement(gam)
    probs = np.einsum("jab,iba->ij", povm.elements, rho).real
    gtr = np.einsum("jab,iba->ij", gam, rho).real

    idx = np.arange(n_pos1 * n_pos2)
    m1 = cb1.message_of(idx // n_pos2)
    m2 = cb2.message_of(idx % n_pos2)
    n_msg = cb1.n_messages * cb2.n_messages
    msg = m1 * cb2.n_messages + m2
    err = _message_error(probs, msg, msg, n_msg)
    idx_err = 1.0 - np.diag(probs)
    diag = np.diag(gtr)
    hn = (1 + c) * (1 - diag) + (2 + c + 1 / c) * (gtr.sum(axis=1) - diag)
    return SimultaneousError(float(err.mean()), float(idx_err.mean()), float(hn.mean()))


@dataclass(frozen=True)
class EnsembleError:
    """Codebook-averaged errors and the four-trace Hayashi-Nagaoka bound.

    ``traces`` holds ``Tr((I-T) mu)`` and ``Tr(T theta_i)`` for ``i = 1, 2, 3``.
    """

    error: float
    index_error: float
    bound: float
    traces: dict
    realizations: int


def ensemble_bound(test: TestOperator, h: SimultaneousHypotheses, n_pos1: int, n_pos2: int, c: float) -> tuple[float, dict]:
    tr = lambda a, b: float(np.einsum("xyab,xyba->", a, b).real)
    t = test.blocks
    traces = {
        "miss": 1.0 - tr(t, h.mu),
        "theta1": tr(t, h.theta1),
        "theta2": tr(t, h.theta2),
        "theta3": tr(t, h.theta3),
    }
    k1, k2 = n_pos1 - 1, n_pos2 - 1
    bound = (1 + c) * traces["miss"] + (2 + c + 1 / c) * (
        k1 * traces["theta1"] + k2 * traces["theta2"] + k1 * k2 * traces["theta3"]
    )
    return bound, traces


def ensemble_error_simultaneous(ch: CqMaWtc, law: MacLaw, test: TestOperator, params: DecoderParams) -> EnsembleError:
    """Average over every codebook realization, weighted by the i.i.d. law."""
    p1, p2 = _mac_marginals(law)
    m1, k1, m2, k2 = params.sizes
    n_pos1, n_pos2 = m1 * k1, m2 * k2
    count = p1.size**n_pos1 * p2.size**n_pos2
    if count > ENUMERATION_CAP:
        raise CapExceeded("codebook enumeration", count, ENUMERATION_CAP)
    err = idx_err = 0.0
    for w1 in product(range(p1.size), repeat=n_pos1):
        q1 = float(np.prod(p1[list(w1)]))
        if q1 == 0.0:
            continue
        cb1 = Codebook(np.array(w1).reshape(m1, k1))
        for w2 in product(range(p2.size), repeat=n_pos2):
            q2 = float(np.prod(p2[list(w2)]))
            if q2 == 0.0:
                continue
            r = exact_error_simultaneous(ch, test, cb1, Codebook(np.array(w2).reshape(m2, k2)), params.c)
            err += q1 * q2 * r.error
            idx_err += q1 * q2 * r.index_error
    bound, traces = ensemble_bound(test, simultaneous_hypotheses(ch, law), n_pos1, n_pos2, params.c)
    return EnsembleError(err, idx_err, bound, traces, count)


def position_based_error_dense(ch: CqMaWtc, law: MacLaw, test: TestOperator, params: DecoderParams) -> float:
    """Message-pair error from the full shared-randomness tensor construction.

    Registers are the ``N1`` copies of ``X1``, the ``N2`` copies of ``X2`` and
    ``Y``.  The transmitted positions hold the channel-correlated copies, every
    other copy is an independent draw, and ``Gamma_{j1,j2}`` is the test acting
    on copies ``j1``, ``j2`` and ``Y``.
    """
    p1, p2 = _mac_marginals(law)
    m1, k1, m2, k2 = params.sizes
    n_pos1, n_pos2 = m1 * k1, m2 * k2
    a1, a2 = p1.size, p2.size
    dims = [a1] * n_pos1 + [a2] * n_pos2 + [ch.dim_y]
    total = int(np.prod(dims))
    if total > params.cap:
        raise CapExceeded("position-based construction", total, params.cap)

    y = _y_outputs(ch)
    e1, e2 = np.eye(a1), np.eye(a2)
    mu = sum(
        p1[a] * p2[b] * np.kron(np.kron(np.outer(e1[a], e1[a]), np.outer(e2[b], e2[b])), y[a, b])
        for a in range(a1)
        for b in range(a2)
    )
    t_full = sum(
        np.kron(np.kron(np.outer(e1[a], e1[a]), np.outer(e2[b], e2[b])), test.blocks[a, b])
        for a in range(a1)
        for b in range(a2)
    )
    rest = [np.diag(p1)] * (n_pos1 - 1) + [np.diag(p2)] * (n_pos2 - 1)

    def placed(j1, j2):
        op = mu
        for r in rest:
            op = np.kron(op, r)
        others1 = [i for i in range(n_pos1) if i != j1]
        others2 = [n_pos1 + i for i in range(n_pos2) if i != j2]
        order = [j1, n_pos1 + j2, n_pos1 + n_pos2] + others1 + others2
        inverse = [order.index(i) for i in range(len(dims))]
        return permute_op(op, [dims[i] for i in order], inverse)

    pairs = list(product(range(n_pos1), range(n_pos2)))
    gammas = np.array([embed(t_full, dims, [j1, n_pos1 + j2, n_pos1 + n_pos2]) for j1, j2 in pairs])
    povm = pretty_good_measurement(gammas)
    msg = np.array([(j1 // k1) * m2 + j2 // k2 for j1, j2 in pairs])
    errs = []
    for i, (j1, j2) in enumerate(pairs):
        probs = povm.probabilities(placed(j1, j2))
        errs.append(_message_error(probs[None, :], msg[i : i + 1], msg, m1 * m2)[0])
    return float(np.mean(errs))


# --------------------------------------------------------------------------
# lemma checks


@dataclass(frozen=True, eq=False)
class MultiHypothesisResult:
    """One test against several commuting alternatives.

    ``type2[i] = Tr(T theta_i)``; ``exponents[i] = -log2 type2[i]``;
    ``dh_each[i] = D_H^eps(mu || theta_i)`` and ``dh_mixture`` the divergence
    against the equal mixture that defines the test.
    """

    test: np.ndarray = field(repr=False)
    type1: float
    type2: tuple
    exponents: tuple
    dh_each: tuple
    dh_mixture: float
    penalty: float | None = None
    c: float | None = None
    budget: float | None = None

    @property
    def worst_exponent(self) -> float:
        return min(self.exponents)


def multiple_hypothesis_commuting(mu, thetas, eps: float, delta: float | None = None) -> MultiHypothesisResult:
    """Single test of ``mu`` against pairwise commuting ``theta_1..theta_r``.

    The test is the optimal one against the equal mixture.  With ``delta``
    the rate penalty ``log2(4 eps / delta^2)``, the constant ``c = delta/eps``
    and the error budget ``eps + 2 delta`` are reported as well.
    """
    mu = check_density(mu, "mu")
    thetas = [check_density(t, f"theta_{i + 1}") for i, t in enumerate(thetas)]
    if not thetas:
        raise InvalidParams("thetas_nonempty", "at least one alternative hypothesis is required")
    for i in range(len(thetas)):
        for j in range(i + 1, len(thetas)):
            comm = thetas[i] @ thetas[j] - thetas[j] @ thetas[i]
            if np.abs(comm).max() > COMMUTE_TOL:
                raise InvalidParams("thetas_commute", f"theta_{i + 1} and theta_{j + 1} do not commute")
    p_mu = support_projector(mu)
    for i, t in enumerate(thetas):
        outside = p_mu - support_projector(t) @ p_mu
        if np.abs(outside).max() > 1e-7:
            raise InvalidParams("support_contained", f"supp(mu) is not contained in supp(theta_{i + 1})")
    mix = sum(thetas) / len(thetas)
    dh_mix, cert = hypothesis_testing_relative_entropy(mu, mix, eps)
    t = cert.test
    type2 = tuple(float(np.trace(t @ th).real) for th in thetas)
    expo = tuple(-math.log2(v) if v > 0 else math.inf for v in type2)
    dh_each = tuple(hypothesis_testing_relative_entropy(mu, th, eps)[0] for th in thetas)
    extra = {}
    if delta is not None:
        if not 0 < delta:
            raise InvalidParams("delta_positive", f"delta must be positive, got {delta!r}")
        extra = dict(penalty=math.log2(4 * eps / delta**2), c=delta / eps, budget=eps + 2 * delta)
    return MultiHypothesisResult(t, cert.type1, type2, expo, dh_each, dh_mix, **extra)


@dataclass(frozen=True)
class ConvexSplitReport:
    """Distances of the convex-split state from the product references.

    ``distance`` uses the true ``B`` marginal, ``distance_smoothed`` the
    smoothed marginal; ``condition`` is the size condition and ``holds``
    records that the distance bound is met whenever the condition is.
    """

    k: int
    distance: float
    distance_smoothed: float
    condition: bool
    log_k: float
    required: float
    radius: float

    @property
    def best_distance(self) -> float:
        return min(self.distance, self.distance_smoothed)

    @property
    def holds(self) -> bool:
        return (not self.condition) or self.best_distance <= self.radius + 1e-9


def convex_split_state(rho_xb: np.ndarray, dim_x: int, dim_b: int, k: int) -> np.ndarray:
    """``(1/K) sum_k rho_X^(k-1) (x) rho_{X_k B} (x) rho_X^(K-k)`` on ``X_1..X_K B``."""
    rho_x = trace_out(rho_xb, [dim_x, dim_b], [1])
    dims = [dim_x] * k + [dim_b]
    acc = np.zeros((dim_x**k * dim_b,) * 2, dtype=complex)
    rest = rho_x
    for _ in range(k - 2):
        rest = np.kron(rest, rho_x)
    for pos in range(k):
        op = np.kron(rho_xb, rest) if k > 1 else rho_xb
        order = [pos, k] + [i for i in range(k) if i != pos]
        inverse = [order.index(i) for i in range(k + 1)]
        acc += permute_op(op, [dims[i] for i in order], inverse)
    return acc / k


def convex_split_verify(s, x, b, k: int, eps: float, delta: float, cap: int = DENSE_CAP) -> ConvexSplitReport:
    """Check the convex split lemma for the two-register state ``s`` on ``x``, ``b``."""
    if not 0 < eps < 1:
        raise InvalidParams("eps_in_unit", f"eps must lie in (0, 1), got {eps!r}")
    if not 0 < delta <= math.sqrt(eps):
        raise InvalidParams("delta_in_sqrt_eps", f"need 0 < delta <= sqrt(eps), got {delta!r}")
    if k < 1:
        raise InvalidParams("k_positive", f"K must be positive, got {k!r}")
    s2 = s.marginal([x, b])
    dx, db = s2.dims
    if dx**k * db > cap:
        raise CapExceeded("convex-split state", dx**k * db, cap)
    radius_smooth = math.sqrt(eps) - delta
    if radius_smooth > 1e-15:
        info, rho_b_s = alt_smooth_max_mi_witness(s2, b, x, radius_smooth)
        rho_b_s = rho_b_s.op
    else:
        info, rho_b_s = max_mi(s2, x, b), s2.marginal([b]).op
    rho_b_s = rho_b_s / np.trace(rho_b_s).real
    tau = convex_split_state(s2.op, dx, db, k)
    rho_x = s2.marginal([x]).op
    prod_x = rho_x
    for _ in range(k - 1):
        prod_x = np.kron(prod_x, rho_x)
    p_true = purified_distance(tau, np.kron(prod_x, s2.marginal([b]).op))
    p_smooth = purified_distance(tau, np.kron(prod_x, rho_b_s))
    required = info + 2 * math.log2(1 / delta)
    log_k = math.log2(k)
    return ConvexSplitReport(k, p_true, p_smooth, log_k >= required, log_k, required, math.sqrt(eps))


# --------------------------------------------------------------------------
# eavesdropper leakage


@dataclass(frozen=True, eq=False)
class LeakageEstimate:
    """Monte-Carlo estimate of ``E || (1/K1K2) sum rho_Z^{x1_i x2_j} - rho_Z ||_1``."""

    mean: float
    stderr: float
    values: np.ndarray = field(repr=False)
    bound: float | None = None

    @property
    def vacuous(self) -> bool:
        """The trace distance never exceeds 2, so larger bounds carry no information."""
        return self.bound is not None and self.bound >= 2.0


def leakage_estimate(
    ch: CqMaWtc, law: MacLaw, k1: int, k2: int, trials: int, seed: int = 0, delta_prime: float | None = None
) -> LeakageEstimate:
    """Each trial draws ``k1`` and ``k2`` independent symbols from its own spawned stream.

    The deviation is formed as ``sum (w_emp - w) (rho_Z^x - rho_Z^ref)``,
    which is identical to the plain difference but cancels exactly when the
    eavesdropper output does not depend on the inputs.
    """
    p1, p2 = _mac_marginals(law)
    if min(k1, k2, trials) < 1:
        raise InvalidParams("sizes_positive", "junk sizes and trial count must be positive")
    n1, n2 = ch.sizes
    z = np.array([[ch.output_z(a, b) for b in range(n2)] for a in range(n1)])
    diff = z - z[0, 0]
    diff[np.abs(diff).max(axis=(2, 3)) <= SILENT_TOL] = 0.0
    w_true = np.outer(p1, p2)
    values = np.empty(trials)
    for t, child in enumerate(np.random.SeedSequence(seed).spawn(trials)):
        rng = np.random.default_rng(child)
        c1 = np.bincount(rng.choice(n1, size=k1, p=p1), minlength=n1) / k1
        c2 = np.bincount(rng.choice(n2, size=k2, p=p2), minlength=n2) / k2
        dev = np.einsum("ab,abij->ij", np.outer(c1, c2) - w_true, diff)
        values[t] = trace_norm(dev) if np.any(dev) else 0.0
    stderr = float(values.std(ddof=1) / math.sqrt(trials)) if trials > 1 else math.nan
    bound = None if delta_prime is None else 20.0 * delta_prime**0.125
    return LeakageEstimate(float(values.mean()), stderr, values, bound)


# --------------------------------------------------------------------------
# successive decoding for the point-to-point wiretap channel


@dataclass(frozen=True)
class SuccessiveResult:
    """Exact message errors of the two-stage decoder and the budgets it is compared with."""

    order: str
    p_e1: float
    p_e2: float
    budget_reliability: str = "eps1 + sqrt(eps2)"
    budget_secrecy: str = "2(eps1 + sqrt(eps2)) + sqrt(eps1')"

    @property
    def p_total(self) -> float:
        return self.p_e1 + self.p_e2


def _pp_y_outputs(ch: PpQwtc) -> np.ndarray:
    n1, n2 = ch.sizes
    dims = [ch.dim_y, ch.dim_z]
    return np.array([[trace_out(ch.outputs[a, b], dims, [1]) for b in range(n2)] for a in range(n1)])


def successive_tests(y: np.ndarray, p: np.ndarray, eps: float) -> tuple[TestOperator, TestOperator]:
    """First stage tests ``rho_{U1 Y}`` against ``rho_U1 (x) rho_Y``; the second tests
    ``rho_{U2 Y | U1}`` against ``rho_{U2|U1} (x) rho_{Y|U1}``, blockwise in ``(u1, u2)``."""
    n1, n2, d, _ = y.shape
    p1 = p.sum(axis=1)
    y_u1 = np.einsum("ab,abij->aij", p, y)
    y_avg = y_u1.sum(axis=0)
    cond1 = [y_u1[a] / p1[a] if p1[a] > 0 else y_avg for a in range(n1)]
    c1 = _np_blocks([y_u1[a] for a in range(n1)], [p1[a] * y_avg for a in range(n1)], eps)
    mu2 = [p[a, b] * y[a, b] for a in range(n1) for b in range(n2)]
    sg2 = [p[a, b] * cond1[a] for a in range(n1) for b in range(n2)]
    c2 = _np_blocks(mu2, sg2, eps)
    t1 = TestOperator(np.array(c1.blocks), c1.type1, c1)
    t2 = TestOperator(np.array(c2.blocks).reshape(n1, n2, d, d), c2.type1, c2)
    return t1, t2


def _successive(y, t1, t2, cb1: Codebook, cb2: Codebook) -> tuple[float, float]:
    u1, u2 = cb1.flat, cb2.flat
    first = pretty_good_measurement(t1.blocks[u1])
    # second-stage measurement for each possible first-stage outcome
    second = [pretty_good_measurement(t2.blocks[u1[j], u2]) for j in range(u1.size)]
    roots = [psd_function(e, np.sqrt) for e in first.elements]
    pos2 = np.arange(u2.size)
    msg2 = cb2.message_of(pos2)
    e1 = e2 = 0.0
    for j1 in range(u1.size):
        m1 = cb1.message_of(j1)
        for j2 in range(u2.size):
            rho = y[u1[j1], u2[j2]]
            pr1 = first.probabilities(rho)
            if cb1.n_messages > 1:
                e1 += 1.0 - pr1[cb1.message_of(np.arange(u1.size)) == m1].sum()
            if cb2.n_messages == 1:
                continue
            ok2 = 0.0
            for jj, r in enumerate(roots):
                if pr1[jj] <= 0:
                    continue
                post = r @ rho @ r
                ok2 += second[jj].probabilities(post)[msg2 == msg2[j2]].sum()
            e2 += 1.0 - ok2
    n = u1.size * u2.size
    return e1 / n, e2 / n


def successive_decoder_sim(
    ch: PpQwtc, law: PpLaw, cb1: Codebook, cb2: Codebook, eps: float, order: str = "12"
) -> SuccessiveResult:
    """Two-stage decoding with the square-root instrument between the stages.

    ``order="12"`` decodes ``(m1, k1)`` first from ``U1`` and then
    ``(m2, k2)`` anchored at the decoded ``u1``; ``"21"`` swaps the roles.
    The stage-one completion outcome is a failure for both messages.
    """
    if order not in ("12", "21"):
        raise InvalidParams("order_valid", f"order must be '12' or '21', got {order!r}")
    y = _pp_y_outputs(ch)
    p = law.p_u1u2
    if order == "21":
        y = y.transpose(1, 0, 2, 3)
        p = p.T
        cb1, cb2 = cb2, cb1
    t1, t2 = successive_tests(y, p, eps)
    a, b = _successive(y, t1, t2, cb1, cb2)
    if order == "21":
        a, b = b, a
    return SuccessiveResult(order, max(0.0, float(a)), max(0.0, float(b)))


# --------------------------------------------------------------------------
# superposition decoding for the broadcast channel


@dataclass(frozen=True)
class SuperpositionResult:
    """Receiver 1 decodes ``(m1, mc)``, receiver 2 decodes ``mc``.

    ``bound`` is the exponent sum ``sum_i 2^(-I_i - 2 + log2 eps)`` over the
    three hypothesis-testing informations in ``rates``; it is reported, not
    asserted, since at one shot it is often vacuous.
    """

    p_e1: float
    p_e2: float
    rates: dict
    bound: float


def superposition_tests(ch: Qbc, law: QbcLaw, eps: float) -> tuple[TestOperator, TestOperator]:
    """Receiver 1 tests ``rho_{UXY1}`` against ``rho_UX (x) rho_Y1``; receiver 2
    tests ``rho_{UY2}`` against ``rho_U (x) rho_Y2``."""
    nu, nx = law.sizes
    y1 = np.array([ch.output_y1(x) for x in range(nx)])
    y2 = np.array([ch.output_y2(x) for x in range(nx)])
    pux = law.p_u[:, None] * law.p_x_u
    y1_avg = np.einsum("ux,xij->ij", pux, y1)
    y2_avg = np.einsum("ux,xij->ij", pux, y2)
    c1 = _np_blocks(
        [pux[u, x] * y1[x] for u in range(nu) for x in range(nx)],
        [pux[u, x] * y1_avg for u in range(nu) for x in range(nx)],
        eps,
    )
    y2_u = np.einsum("ux,xij->uij", pux, y2)
    c2 = _np_blocks(list(y2_u), [law.p_u[u] * y2_avg for u in range(nu)], eps)
    d1 = ch.dim_y1
    return (
        TestOperator(np.array(c1.blocks).reshape(nu, nx, d1, d1), c1.type1, c1),
        TestOperator(np.array(c2.blocks), c2.type1, c2),
    )


def superposition_decoder_sim(ch: Qbc, law: QbcLaw, cb_u: Codebook, cb_x: Codebook, eps: float) -> SuperpositionResult:
    """Exact errors of both pretty-good-measurement receivers for one realization.

    ``cb_u`` has one column (``entries[mc, 0]``); ``cb_x.entries[m1, mc]`` is
    the transmitted symbol.
    """
    if cb_u.n_junk != 1 or cb_x.n_junk != cb_u.n_messages:
        raise InvalidParams("codebook_shape", "superposition codebooks must have shapes (|Mc|, 1) and (|M1|, |Mc|)")
    t1, t2 = superposition_tests(ch, law, eps)
    u = cb_u.flat
    xs = cb_x.entries
    n1, nc = xs.shape
    y1 = np.array([ch.output_y1(x) for x in range(ch.size)])
    y2 = np.array([ch.output_y2(x) for x in range(ch.size)])

    g1 = t1.blocks[u[None, :], xs].reshape(-1, ch.dim_y1, ch.dim_y1)
    pov1 = pretty_good_measurement(g1)
    rho1 = y1[xs.reshape(-1)]
    pr1 = np.einsum("jab,iba->ij", pov1.elements, rho1).real
    lab = np.arange(n1 * nc)
    e1 = _message_error(pr1, lab, lab, n1 * nc).mean()

    pov2 = pretty_good_measurement(t2.blocks[u])
    rho2 = y2[xs.reshape(-1)]
    pr2 = np.einsum("jab,iba->ij", pov2.elements, rho2).real
    mc_true = np.tile(np.arange(nc), n1)
    e2 = _message_error(pr2, mc_true, np.arange(nc), nc).mean()

    s = control_state_qbc(ch, law)
    rates = {
        "I_H(UX;Y1)": hypothesis_testing_mi(s, ["U", "X"], ["Y1"], eps),
        "I_H(X;Y1|U)": conditional_hypothesis_testing_mi(s, ["X"], ["Y1"], ["U"], eps),
        "I_H(U;Y2)": hypothesis_testing_mi(s, ["U"], ["Y2"], eps),
        "I_H(X;Y1)": hypothesis_testing_mi(s, ["X"], ["Y1"], eps),
    }
    bound = sum(2.0 ** (-rates[k] - 2 + math.log2(eps)) for k in ("I_H(X;Y1|U)", "I_H(U;Y2)", "I_H(X;Y1)"))
    return SuperpositionResult(max(0.0, float(e1)), max(0.0, float(e2)), rates, bound)


__all__ = [
    "Codebook",
    "ConvexSplitReport",
    "DecoderParams",
    "EnsembleError",
    "LeakageEstimate",
    "MultiHypothesisResult",
    "PovmSet",
    "SimultaneousError",
    "SimultaneousHypotheses",
    "SuccessiveResult",
    "SuperpositionResult",
    "TestOperator",
    "build_pgm_simultaneous",
    "convex_split_state",
    "convex_split_verify",
    "ensemble_bound",
    "ensemble_error_simultaneous",
    "exact_error_simultaneous",
    "hayashi_nagaoka_check",
    "leakage_estimate",
    "multiple_hypothesis_commuting",
    "position_based_error_dense",
    "pretty_good_measurement",
    "random_hn_instance",
    "simultaneous_hypotheses",
    "simultaneous_test",
    "successive_decoder_sim",
    "successive_tests",
    "superposition_decoder_sim",
    "superposition_tests",
    "support_test",
]
