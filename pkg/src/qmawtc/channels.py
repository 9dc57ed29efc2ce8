"""Finite-alphabet classical-quantum channels and their control states.

Three channel families are supported: the two-sender wiretap MAC
(``CqMaWtc``), its single-sender two-message counterpart (``PpQwtc``), and the
two-receiver broadcast channel (``Qbc``).  Outputs are dense tables of density
matrices on the joint output space.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .qstate import (
    MultipartiteState,
    StateError,
    check_density,
    check_distribution,
    classical,
    partial_trace,
    quantum,
    random_density,
    random_distribution,
    trace_out,
)


def _output_table(outputs, lead: int, dim: int, name: str) -> np.ndarray:
    arr = np.array(outputs, dtype=complex)
    if arr.ndim != lead + 2 or arr.shape[-2:] != (dim, dim):
        raise StateError(f"{name}: output table shape {arr.shape} does not match {lead} inputs and dim {dim}")
    for idx in product(*[range(n) for n in arr.shape[:lead]]):
        check_density(arr[idx], name=f"{name} output {idx}")
    arr.flags.writeable = False
    return arr


def _conditional_rows(p, rows: int, cols: int, name: str) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (rows, cols):
        raise StateError(f"{name}: expected shape {(rows, cols)}, got {p.shape}")
    for i in range(rows):
        check_distribution(p[i], name=f"{name} row {i}")
    return p


def _block_state(registers, probs: np.ndarray, blocks) -> MultipartiteState:
    """Block-diagonal cq state from a flat law and matching list of conditional operators."""
    dq = blocks[0].shape[0]
    n = len(probs)
    op = np.zeros((n * dq, n * dq), dtype=complex)
    for k, (p, b) in enumerate(zip(probs, blocks)):
        if p:
            op[k * dq:(k + 1) * dq, k * dq:(k + 1) * dq] = p * b
    return MultipartiteState(tuple(registers), op, validate=False)


# --------------------------------------------------------------------------
# multiple-access wiretap channel


@dataclass(frozen=True, eq=False)
class CqMaWtc:
    """Two classical inputs, legitimate output ``Y`` and eavesdropper output ``Z``.

    ``outputs[x1, x2]`` is the density matrix on ``Y (x) Z``.
    """

    outputs: np.ndarray
    dim_y: int
    dim_z: int

    def __post_init__(self):
        arr = np.asarray(self.outputs)
        if arr.ndim != 4:
            raise StateError(f"MAC output table must have shape (|X1|, |X2|, d, d), got {arr.shape}")
        object.__setattr__(self, "outputs", _output_table(arr, 2, self.dim_y * self.dim_z, "MAC"))

    @property
    def sizes(self) -> tuple[int, int]:
        return self.outputs.shape[0], self.outputs.shape[1]

    def output(self, x1: int, x2: int) -> np.ndarray:
        return self.outputs[x1, x2]

    def output_y(self, x1: int, x2: int) -> np.ndarray:
        return trace_out(self.outputs[x1, x2], [self.dim_y, self.dim_z], [1])

    def output_z(self, x1: int, x2: int) -> np.ndarray:
        return trace_out(self.outputs[x1, x2], [self.dim_y, self.dim_z], [0])

    @classmethod
    def eve_silent(cls, y_outputs, z_state) -> "CqMaWtc":
        """Channel whose eavesdropper output is the same state for every input pair."""
        y = np.asarray(y_outputs, dtype=complex)
        z = check_density(z_state, name="eavesdropper state")
        n1, n2, dy, _ = y.shape
        table = np.array([[np.kron(y[a, b], z) for b in range(n2)] for a in range(n1)])
        return cls(table, dy, z.shape[0])

    @classmethod
    def from_parts(cls, y_outputs, z_outputs) -> "CqMaWtc":
        """Product outputs ``rho_Y^{x1 x2} (x) rho_Z^{x1 x2}``."""
        y = np.asarray(y_outputs, dtype=complex)
        z = np.asarray(z_outputs, dtype=complex)
        n1, n2 = y.shape[:2]
        table = np.array([[np.kron(y[a, b], z[a, b]) for b in range(n2)] for a in range(n1)])
        return cls(table, y.shape[-1], z.shape[-1])


@dataclass(frozen=True, eq=False)
class MacLaw:
    """``p_Q(q) p_{X1|Q}(x1|q) p_{X2|Q}(x2|q)``."""

    p_q: np.ndarray
    p_x1_q: np.ndarray
    p_x2_q: np.ndarray

    def __post_init__(self):
        p_q = check_distribution(self.p_q, "p_Q")
        nq = p_q.size
        x1 = np.asarray(self.p_x1_q, dtype=float)
        x2 = np.asarray(self.p_x2_q, dtype=float)
        if x1.ndim == 1:
            x1 = np.tile(x1, (nq, 1))
        if x2.ndim == 1:
            x2 = np.tile(x2, (nq, 1))
        object.__setattr__(self, "p_q", p_q)
        object.__setattr__(self, "p_x1_q", _conditional_rows(x1, nq, x1.shape[-1], "p_X1|Q"))
        object.__setattr__(self, "p_x2_q", _conditional_rows(x2, nq, x2.shape[-1], "p_X2|Q"))

    @property
    def sizes(self) -> tuple[int, int, int]:
        return self.p_q.size, self.p_x1_q.shape[1], self.p_x2_q.shape[1]

    @classmethod
    def independent(cls, p_x1, p_x2) -> "MacLaw":
        return cls(np.ones(1), np.asarray(p_x1, float)[None, :], np.asarray(p_x2, float)[None, :])

    @classmethod
    def uniform(cls, n1: int, n2: int, nq: int = 1) -> "MacLaw":
        return cls(np.full(nq, 1.0 / nq), np.full((nq, n1), 1.0 / n1), np.full((nq, n2), 1.0 / n2))

    def joint(self) -> np.ndarray:
        """Array ``p[q, x1, x2]``."""
        return self.p_q[:, None, None] * self.p_x1_q[:, :, None] * self.p_x2_q[:, None, :]

    def marginals(self) -> tuple[np.ndarray, np.ndarray]:
        """Input marginals ``(p_X1, p_X2)`` after averaging out ``Q``."""
        return self.p_q @ self.p_x1_q, self.p_q @ self.p_x2_q


def _check_mac_sizes(ch: CqMaWtc, law: MacLaw):
    if law.sizes[1:] != ch.sizes:
        raise StateError(f"law alphabet sizes {law.sizes[1:]} do not match channel {ch.sizes}")


def control_state_mawtc(ch: CqMaWtc, law: MacLaw) -> MultipartiteState:
    """Control state on ``Q X1 X2 Y Z``."""
    _check_mac_sizes(ch, law)
    nq, n1, n2 = law.sizes
    regs = [classical("Q", nq), classical("X1", n1), classical("X2", n2), quantum("Y", ch.dim_y), quantum("Z", ch.dim_z)]
    probs = law.joint().reshape(-1)
    blocks = [ch.outputs[a, b] for _, a, b in product(range(nq), range(n1), range(n2))]
    return _block_state(regs, probs, blocks)


def control_state_sen(ch: CqMaWtc, law: MacLaw) -> MultipartiteState:
    """Control state on ``Q X1 X2 Y`` (eavesdropper traced out)."""
    return partial_trace(control_state_mawtc(ch, law), {"Z"})


# --------------------------------------------------------------------------
# point-to-point wiretap channel with two messages


@dataclass(frozen=True, eq=False)
class PpQwtc:
    """Single sender, auxiliary pair ``(u1, u2)`` mapped to a physical input.

    ``outputs[u1, u2]`` is the density matrix on ``Y (x) Z`` produced by the
    physical symbol ``encoding[u1, u2]``.
    """

    outputs: np.ndarray
    dim_y: int
    dim_z: int
    encoding: np.ndarray | None = None

    def __post_init__(self):
        arr = np.asarray(self.outputs)
        if arr.ndim != 4:
            raise StateError(f"PP output table must have shape (|U1|, |U2|, d, d), got {arr.shape}")
        object.__setattr__(self, "outputs", _output_table(arr, 2, self.dim_y * self.dim_z, "PP"))
        n1, n2 = arr.shape[:2]
        enc = np.arange(n1 * n2).reshape(n1, n2) if self.encoding is None else np.asarray(self.encoding, dtype=int)
        if enc.shape != (n1, n2):
            raise StateError(f"encoding table shape {enc.shape} does not match auxiliary sizes {(n1, n2)}")
        enc.flags.writeable = False
        object.__setattr__(self, "encoding", enc)

    @property
    def sizes(self) -> tuple[int, int]:
        return self.outputs.shape[0], self.outputs.shape[1]

    @classmethod
    def eve_silent(cls, y_outputs, z_state) -> "PpQwtc":
        mac = CqMaWtc.eve_silent(y_outputs, z_state)
        return mawtc_to_ppqwtc(mac)

    @classmethod
    def from_parts(cls, y_outputs, z_outputs) -> "PpQwtc":
        return mawtc_to_ppqwtc(CqMaWtc.from_parts(y_outputs, z_outputs))


@dataclass(frozen=True, eq=False)
class PpLaw:
    """Joint auxiliary law ``p(u1, u2)``."""

    p_u1u2: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p_u1u2, dtype=float)
        if p.ndim != 2:
            raise StateError(f"p(u1,u2) must be a matrix, got shape {p.shape}")
        check_distribution(p.reshape(-1), "p(u1,u2)")
        object.__setattr__(self, "p_u1u2", p)

    @property
    def sizes(self) -> tuple[int, int]:
        return self.p_u1u2.shape

    @classmethod
    def independent(cls, p1, p2) -> "PpLaw":
        return cls(np.outer(check_distribution(p1, "p_U1"), check_distribution(p2, "p_U2")))

    @classmethod
    def uniform(cls, n1: int, n2: int) -> "PpLaw":
        return cls(np.full((n1, n2), 1.0 / (n1 * n2)))


def control_state_ppqwtc(ch: PpQwtc, law: PpLaw) -> MultipartiteState:
    """Control state on ``U1 U2 Y Z``."""
    if law.sizes != ch.sizes:
        raise StateError(f"law alphabet sizes {law.sizes} do not match channel {ch.sizes}")
    n1, n2 = ch.sizes
    regs = [classical("U1", n1), classical("U2", n2), quantum("Y", ch.dim_y), quantum("Z", ch.dim_z)]
    blocks = [ch.outputs[a, b] for a, b in product(range(n1), range(n2))]
    return _block_state(regs, law.p_u1u2.reshape(-1), blocks)


def mawtc_to_ppqwtc(ch: CqMaWtc) -> PpQwtc:
    """Treat the two MAC inputs as the auxiliary pair of a single sender.

    The physical symbol is the enumerated pair ``x = x1 * |X2| + x2`` and the
    output table is shared, so every operator is preserved exactly.
    """
    n1, n2 = ch.sizes
    return PpQwtc(ch.outputs, ch.dim_y, ch.dim_z, np.arange(n1 * n2).reshape(n1, n2))


# --------------------------------------------------------------------------
# broadcast channel


@dataclass(frozen=True, eq=False)
class Qbc:
    """One classical input, receiver outputs ``Y1`` and ``Y2``."""

    outputs: np.ndarray
    dim_y1: int
    dim_y2: int

    def __post_init__(self):
        arr = np.asarray(self.outputs)
        if arr.ndim != 3:
            raise StateError(f"broadcast output table must have shape (|X|, d, d), got {arr.shape}")
        object.__setattr__(self, "outputs", _output_table(arr, 1, self.dim_y1 * self.dim_y2, "QBC"))

    @property
    def size(self) -> int:
        return self.outputs.shape[0]

    @classmethod
    def from_parts(cls, y1_outputs, y2_outputs) -> "Qbc":
        y1 = np.asarray(y1_outputs, dtype=complex)
        y2 = np.asarray(y2_outputs, dtype=complex)
        table = np.array([np.kron(a, b) for a, b in zip(y1, y2)])
        return cls(table, y1.shape[-1], y2.shape[-1])

    def output_y1(self, x: int) -> np.ndarray:
        return trace_out(self.outputs[x], [self.dim_y1, self.dim_y2], [1])

    def output_y2(self, x: int) -> np.ndarray:
        return trace_out(self.outputs[x], [self.dim_y1, self.dim_y2], [0])


@dataclass(frozen=True, eq=False)
class QbcLaw:
    """Superposition law ``p_U(u) p_{X|U}(x|u)``."""

    p_u: np.ndarray
    p_x_u: np.ndarray

    def __post_init__(self):
        p_u = check_distribution(self.p_u, "p_U")
        px = np.asarray(self.p_x_u, dtype=float)
        object.__setattr__(self, "p_u", p_u)
        object.__setattr__(self, "p_x_u", _conditional_rows(px, p_u.size, px.shape[-1], "p_X|U"))

    @property
    def sizes(self) -> tuple[int, int]:
        return self.p_x_u.shape


@dataclass(frozen=True, eq=False)
class QbcPairLaw:
    """``p_U(u) p_{X1|U}(x1|u) p_{X2|U X1}(x2|u,x1)``; the physical input is ``x1 * |X2| + x2``."""

    p_u: np.ndarray
    p_x1_u: np.ndarray
    p_x2_ux1: np.ndarray

    def __post_init__(self):
        p_u = check_distribution(self.p_u, "p_U")
        p1 = np.asarray(self.p_x1_u, dtype=float)
        p2 = np.asarray(self.p_x2_ux1, dtype=float)
        nu = p_u.size
        p1 = _conditional_rows(p1, nu, p1.shape[-1], "p_X1|U")
        if p2.ndim != 3 or p2.shape[:2] != (nu, p1.shape[1]):
            raise StateError(f"p_X2|UX1 must have shape (|U|, |X1|, |X2|), got {p2.shape}")
        for u in range(nu):
            for a in range(p1.shape[1]):
                check_distribution(p2[u, a], f"p_X2|UX1 row {(u, a)}")
        object.__setattr__(self, "p_u", p_u)
        object.__setattr__(self, "p_x1_u", p1)
        object.__setattr__(self, "p_x2_ux1", p2)

    @property
    def sizes(self) -> tuple[int, int, int]:
        return self.p_x2_ux1.shape


def control_state_qbc(ch: Qbc, law: QbcLaw | QbcPairLaw) -> MultipartiteState:
    """Control state on ``U X Y1 Y2`` (or ``U X1 X2 Y1 Y2`` for a pair law)."""
    outs = [quantum("Y1", ch.dim_y1), quantum("Y2", ch.dim_y2)]
    if isinstance(law, QbcPairLaw):
        nu, n1, n2 = law.sizes
        if n1 * n2 != ch.size:
            raise StateError(f"pair law enumerates {n1 * n2} inputs, channel has {ch.size}")
        probs = (law.p_u[:, None, None] * law.p_x1_u[:, :, None] * law.p_x2_ux1).reshape(-1)
        blocks = [ch.outputs[a * n2 + b] for _, a, b in product(range(nu), range(n1), range(n2))]
        regs = [classical("U", nu), classical("X1", n1), classical("X2", n2)] + outs
        return _block_state(regs, probs, blocks)
    nu, nx = law.sizes
    if nx != ch.size:
        raise StateError(f"law alphabet size {nx} does not match channel {ch.size}")
    probs = (law.p_u[:, None] * law.p_x_u).reshape(-1)
    blocks = [ch.outputs[x] for _, x in product(range(nu), range(nx))]
    return _block_state([classical("U", nu), classical("X", nx)] + outs, probs, blocks)


# --------------------------------------------------------------------------
# shared randomness


def copies_state(p, labels) -> MultipartiteState:
    """``sum_x p(x) |x..x><x..x|`` on the given classical registers."""
    p = check_distribution(p)
    n = p.size
    k = len(labels)
    d = n**k
    op = np.zeros((d, d), dtype=complex)
    stride = sum(n**j for j in range(k))
    for x in range(n):
        op[x * stride, x * stride] = p[x]
    return MultipartiteState(tuple(classical(lab, n) for lab in labels), op, validate=False)


def shared_randomness_states(p1, p2) -> tuple[MultipartiteState, MultipartiteState]:
    """Three perfectly correlated classical copies of each sender's input."""
    return copies_state(p1, ["X1", "X1p", "X1pp"]), copies_state(p2, ["X2", "X2p", "X2pp"])


# --------------------------------------------------------------------------
# random instances


def random_mawtc(rng: np.random.Generator, n1: int = 2, n2: int = 2, dim_y: int = 2, dim_z: int = 2) -> CqMaWtc:
    d = dim_y * dim_z
    table = np.array([[random_density(d, rng) for _ in range(n2)] for _ in range(n1)])
    return CqMaWtc(table, dim_y, dim_z)


def random_mac_law(rng: np.random.Generator, n1: int = 2, n2: int = 2, nq: int = 1) -> MacLaw:
    return MacLaw(
        random_distribution(nq, rng),
        np.array([random_distribution(n1, rng) for _ in range(nq)]),
        np.array([random_distribution(n2, rng) for _ in range(nq)]),
    )


def random_qbc(rng: np.random.Generator, nx: int = 2, dim_y1: int = 2, dim_y2: int = 2) -> Qbc:
    d = dim_y1 * dim_y2
    return Qbc(np.array([random_density(d, rng) for _ in range(nx)]), dim_y1, dim_y2)


def basis_mac(n1: int, n2: int, dim_z: int = 1, z_state=None) -> CqMaWtc:
    """Noiseless MAC: ``Y`` holds ``|x1, x2>`` exactly, ``Z`` is input independent."""
    dy = n1 * n2
    y = np.zeros((n1, n2, dy, dy), dtype=complex)
    for a in range(n1):
        for b in range(n2):
            y[a, b, a * n2 + b, a * n2 + b] = 1.0
    z = np.eye(dim_z) / dim_z if z_state is None else z_state
    return CqMaWtc.eve_silent(y, z)


__all__ = [
    "CqMaWtc",
    "MacLaw",
    "PpLaw",
    "PpQwtc",
    "Qbc",
    "QbcLaw",
    "QbcPairLaw",
    "basis_mac",
    "control_state_mawtc",
    "control_state_ppqwtc",
    "control_state_qbc",
    "control_state_sen",
    "copies_state",
    "mawtc_to_ppqwtc",
    "random_mac_law",
    "random_mawtc",
    "random_qbc",
    "shared_randomness_states",
]
