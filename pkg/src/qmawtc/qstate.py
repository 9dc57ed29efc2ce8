"""Dense multipartite quantum states over labelled registers.

Every operator is a plain complex ``numpy`` matrix.  Registers are addressed by
label, never by position; classical registers live inside the same dense
matrix as block-diagonal structure.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass
from itertools import product
from typing import Iterable, Mapping, Sequence

import numpy as np

HERMITIAN_TOL = 1e-9
PSD_TOL = 1e-9
TRACE_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-8
DISTRIBUTION_TOL = 1e-12
# eigenvalues above this fraction of the largest one span the support
SUPPORT_REL = 1e-9

CLASSICAL = "classical"
QUANTUM = "quantum"


class StateError(ValueError):
    """Raised when an operator or register set violates a state invariant."""


@dataclass(frozen=True)
class Register:
    label: str
    dim: int
    kind: str = QUANTUM

    def __post_init__(self):
        if not self.label:
            raise StateError("register label must be non-empty")
        if int(self.dim) != self.dim or self.dim < 1:
            raise StateError(f"register {self.label!r}: dim must be a positive integer, got {self.dim}")
        if self.kind not in (CLASSICAL, QUANTUM):
            raise StateError(f"register {self.label!r}: kind must be classical or quantum")

    @property
    def classical(self) -> bool:
        return self.kind == CLASSICAL


def classical(label: str, dim: int) -> Register:
    return Register(label, dim, CLASSICAL)


def quantum(label: str, dim: int) -> Register:
    return Register(label, dim, QUANTUM)


# --------------------------------------------------------------------------
# spectral helpers


def _as_square(h) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise StateError(f"expected a square matrix, got shape {h.shape}")
    return h


def hermiticity_error(h) -> float:
    h = _as_square(h)
    return float(np.abs(h - h.conj().T).max(initial=0.0))


def eigh(h, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending.

    The input is symmetrized as ``(h + h^dagger)/2`` before decomposition.  The
    Hermiticity tolerance is scaled by ``max(1, max|h|)`` so that unnormalized
    operators are judged on the same relative footing as states.
    """
    h = _as_square(h)
    scale = max(1.0, float(np.abs(h).max(initial=0.0)))
    err = hermiticity_error(h)
    if err > tol * scale:
        raise StateError(f"matrix is not Hermitian (max |H - H^dagger| = {err:.3e})")
    return np.linalg.eigh((h + h.conj().T) / 2)


def eigvalsh(h) -> np.ndarray:
    h = _as_square(h)
    return np.linalg.eigvalsh((h + h.conj().T) / 2)


def psd_function(h, fn, *, support_only: bool = False, rel: float = SUPPORT_REL) -> np.ndarray:
    """Apply ``fn`` to the (clipped, nonnegative) spectrum of ``h``.

    With ``support_only`` the function is evaluated on the support alone and the
    kernel maps to zero, which is how negative powers are defined throughout.
    """
    w, v = eigh(h)
    w = np.clip(w, 0.0, None)
    if support_only:
        keep = w > rel * max(w.max(initial=0.0), 0.0)
        if not keep.any():
            return np.zeros_like(v)
        v, w = v[:, keep], w[keep]
    return (v * fn(w)) @ v.conj().T


def sqrtm_psd(h) -> np.ndarray:
    return psd_function(h, np.sqrt)


def inv_sqrtm_psd(h, rel: float = SUPPORT_REL) -> np.ndarray:
    """Pseudo-inverse square root on the support of ``h``."""
    return psd_function(h, lambda w: 1.0 / np.sqrt(w), support_only=True, rel=rel)


def support_projector(h, rel: float = SUPPORT_REL) -> np.ndarray:
    return psd_function(h, np.ones_like, support_only=True, rel=rel)


def min_eigenvalue(h) -> float:
    return float(eigvalsh(h)[0])


# --------------------------------------------------------------------------
# validation


def check_density(op, name: str = "state") -> np.ndarray:
    """Validate a density matrix and return it as a complex array."""
    op = _as_square(op)
    err = hermiticity_error(op)
    if err > HERMITIAN_TOL:
        raise StateError(f"{name}: not Hermitian (max |rho - rho^dagger| = {err:.3e})")
    tr = np.trace(op).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise StateError(f"{name}: trace is {tr!r}, expected 1")
    lo = min_eigenvalue(op)
    if lo < -PSD_TOL:
        raise StateError(f"{name}: not positive semidefinite (min eigenvalue {lo:.3e})")
    return op


def check_distribution(p, name: str = "distribution") -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.size == 0:
        raise StateError(f"{name}: empty")
    if not np.all(np.isfinite(p)) or (p < 0).any():
        raise StateError(f"{name}: entries must be finite and nonnegative")
    if abs(p.sum() - 1.0) > DISTRIBUTION_TOL:
        raise StateError(f"{name}: sums to {p.sum()!r}, expected 1")
    return p


# --------------------------------------------------------------------------
# index gymnastics


def permute_op(op: np.ndarray, dims: Sequence[int], perm: Sequence[int]) -> np.ndarray:
    """Reorder the tensor factors of ``op``; factor ``perm[i]`` becomes factor ``i``."""
    n = len(dims)
    perm = list(perm)
    if perm == list(range(n)):
        return op
    d = int(np.prod(dims))
    t = op.reshape(tuple(dims) * 2)
    t = t.transpose(perm + [p + n for p in perm])
    return t.reshape(d, d)


def trace_out(op: np.ndarray, dims: Sequence[int], drop: Iterable[int]) -> np.ndarray:
    """Partial trace over the factor positions in ``drop``."""
    dims = list(dims)
    drop = sorted(set(drop), reverse=True)
    if not drop:
        return op
    t = op.reshape(tuple(dims) * 2)
    n = len(dims)
    for i in drop:
        t = np.trace(t, axis1=i, axis2=i + n)
        n -= 1
        dims.pop(i)
    d = int(np.prod(dims)) if dims else 1
    return t.reshape(d, d)


def embed(op: np.ndarray, dims: Sequence[int], positions: Sequence[int]) -> np.ndarray:
    """Place ``op`` (acting on the factors at ``positions``) into the full space,
    tensored with the identity on every other factor."""
    positions = list(positions)
    rest = [i for i in range(len(dims)) if i not in positions]
    d_rest = int(np.prod([dims[i] for i in rest])) if rest else 1
    full = np.kron(op, np.eye(d_rest))
    order = positions + rest
    # factor k of ``full`` currently lives on register order[k]
    inverse = [order.index(i) for i in range(len(dims))]
    return permute_op(full, [dims[i] for i in order], inverse)


# --------------------------------------------------------------------------
# states


@dataclass(frozen=True, eq=False)
class MultipartiteState:
    """A density operator together with its ordered register metadata."""

    registers: tuple[Register, ...]
    op: np.ndarray
    validate: InitVar[bool] = True

    def __post_init__(self, validate: bool):
        regs = tuple(self.registers)
        labels = [r.label for r in regs]
        if len(set(labels)) != len(labels):
            dup = next(lab for lab in labels if labels.count(lab) > 1)
            raise StateError(f"duplicate register label {dup!r}")
        op = np.array(self.op, dtype=complex)
        dim = int(np.prod([r.dim for r in regs])) if regs else 1
        if op.shape != (dim, dim):
            raise StateError(f"operator shape {op.shape} does not match register dims {[r.dim for r in regs]}")
        op.flags.writeable = False
        object.__setattr__(self, "registers", regs)
        object.__setattr__(self, "op", op)
        if validate:
            check_density(op)
            self._check_classical()

    # -- basic accessors --------------------------------------------------

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.registers)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(r.dim for r in self.registers)

    @property
    def dim(self) -> int:
        return self.op.shape[0]

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise StateError(f"unknown register {label!r}; state has {list(self.labels)}") from None

    def register(self, label: str) -> Register:
        return self.registers[self.index(label)]

    def __repr__(self):
        regs = ", ".join(f"{r.label}[{r.dim}{'c' if r.classical else ''}]" for r in self.registers)
        return f"MultipartiteState({regs})"

    def _check_classical(self):
        cls = [i for i, r in enumerate(self.registers) if r.classical]
        if not cls:
            return
        quantum_idx = [i for i, r in enumerate(self.registers) if not r.classical]
        marg = trace_out(self.op, self.dims, quantum_idx)
        off = marg - np.diag(np.diag(marg))
        if np.abs(off).max(initial=0.0) > HERMITIAN_TOL:
            bad = [self.registers[i].label for i in cls]
            raise StateError(f"classical registers {bad} are not diagonal in the computational basis")

    # -- structural operations ---------------------------------------------

    def ptrace(self, drop: Iterable[str]) -> "MultipartiteState":
        return partial_trace(self, drop)

    def reorder(self, labels: Sequence[str]) -> "MultipartiteState":
        labels = list(labels)
        if sorted(labels) != sorted(self.labels):
            raise StateError(f"reorder needs a permutation of {list(self.labels)}, got {labels}")
        perm = [self.index(lab) for lab in labels]
        regs = tuple(self.registers[i] for i in perm)
        return MultipartiteState(regs, permute_op(self.op, self.dims, perm), validate=False)

    def marginal(self, labels: Sequence[str]) -> "MultipartiteState":
        """Reduced state on ``labels``, in exactly that order."""
        labels = list(labels)
        for lab in labels:
            self.index(lab)
        if len(set(labels)) != len(labels):
            raise StateError(f"repeated label in {labels}")
        reduced = partial_trace(self, [lab for lab in self.labels if lab not in labels])
        return reduced.reorder(labels)

    def relabel(self, mapping: Mapping[str, str]) -> "MultipartiteState":
        regs = tuple(Register(mapping.get(r.label, r.label), r.dim, r.kind) for r in self.registers)
        return MultipartiteState(regs, self.op, validate=False)

    def tensor(self, other: "MultipartiteState") -> "MultipartiteState":
        return tensor(self, other)

    def power(self, n: int, sep: str = "_") -> "MultipartiteState":
        """``n``-fold tensor power; copy ``i`` has labels suffixed ``{sep}{i}``."""
        if n < 1:
            raise StateError("tensor power needs n >= 1")
        regs = tuple(
            Register(f"{r.label}{sep}{i}", r.dim, r.kind) for i in range(1, n + 1) for r in self.registers
        )
        op = self.op
        for _ in range(n - 1):
            op = np.kron(op, self.op)
        return MultipartiteState(regs, op, validate=False)

    def condition(self, labels: Sequence[str]) -> list[tuple[float, tuple[int, ...], "MultipartiteState"]]:
        """Split on classical registers: ``[(p(z), z, rho^z), ...]`` for every ``p(z) > 0``.

        The conditional states live on the remaining registers, in their
        original order.
        """
        labels = list(labels)
        for lab in labels:
            if not self.register(lab).classical:
                raise StateError(f"conditioning register {lab!r} is not classical")
        rest = [lab for lab in self.labels if lab not in labels]
        s = self.reorder(labels + rest)
        zdims = [self.register(lab).dim for lab in labels]
        dz = int(np.prod(zdims)) if zdims else 1
        dr = s.dim // dz
        t = s.op.reshape(dz, dr, dz, dr)
        off = t.copy()
        for z in range(dz):
            off[z, :, z, :] = 0
        if np.abs(off).max(initial=0.0) > HERMITIAN_TOL:
            raise StateError(f"registers {labels} carry coherences with the rest of the state")
        regs = tuple(self.register(lab) for lab in rest)
        out = []
        for z, zidx in enumerate(product(*[range(d) for d in zdims])):
            block = t[z, :, z, :]
            p = float(np.trace(block).real)
            if p > DISTRIBUTION_TOL:
                out.append((p, zidx, MultipartiteState(regs, block / p, validate=False)))
        return out

    def classical_distribution(self, labels: Sequence[str]) -> np.ndarray:
        """Diagonal of the marginal on classical registers, shaped by their dims."""
        m = self.marginal(labels)
        return np.diag(m.op).real.reshape([self.register(lab).dim for lab in labels])


def tensor(a: MultipartiteState, b: MultipartiteState) -> MultipartiteState:
    clash = set(a.labels) & set(b.labels)
    if clash:
        raise StateError(f"register label collision: {sorted(clash)[0]!r}")
    return MultipartiteState(a.registers + b.registers, np.kron(a.op, b.op), validate=False)


def partial_trace(s: MultipartiteState, drop: Iterable[str]) -> MultipartiteState:
    drop = set(drop)
    unknown = drop - set(s.labels)
    if unknown:
        raise StateError(f"unknown register {sorted(unknown)[0]!r}; state has {list(s.labels)}")
    idx = [i for i, lab in enumerate(s.labels) if lab in drop]
    regs = tuple(r for r in s.registers if r.label not in drop)
    return MultipartiteState(regs, trace_out(s.op, s.dims, idx), validate=False)


def _matrix(x) -> np.ndarray:
    if isinstance(x, MultipartiteState):
        return x.op
    return _as_square(x)


def _same_shape(rho, sigma) -> tuple[np.ndarray, np.ndarray]:
    r, s = _matrix(rho), _matrix(sigma)
    if r.shape != s.shape:
        raise StateError(f"dimension mismatch: {r.shape} vs {s.shape}")
    return r, s


def trace_norm(h) -> float:
    return float(np.abs(eigvalsh(h)).sum())


def trace_distance(rho, sigma) -> float:
    """Unnormalized trace distance ``Tr|sigma - rho|`` in ``[0, 2]``."""
    r, s = _same_shape(rho, sigma)
    return trace_norm(s - r)


def fidelity(rho, sigma) -> float:
    """Squared fidelity ``|| sqrt(rho) sqrt(sigma) ||_1 ** 2``."""
    r, s = _same_shape(rho, sigma)
    sv = np.linalg.svd(sqrtm_psd(r) @ sqrtm_psd(s), compute_uv=False)
    return float(min(1.0, max(0.0, sv.sum() ** 2)))


def purified_distance(rho, sigma) -> float:
    return float(np.sqrt(max(0.0, 1.0 - fidelity(rho, sigma))))


def cq_state(
    p,
    conditionals,
    classical_registers: Sequence[Register],
    quantum_registers: Sequence[Register],
) -> MultipartiteState:
    """Block-diagonal state ``sum_x p(x) |x><x| (x) rho^x``.

    ``p`` is indexed by the classical registers (flat or shaped) and
    ``conditionals`` is either an array of shape ``(*classical_dims, d, d)`` or a
    mapping from index tuples to ``d x d`` density matrices.
    """
    cregs = [Register(r.label, r.dim, CLASSICAL) for r in classical_registers]
    qregs = list(quantum_registers)
    cdims = [r.dim for r in cregs]
    n_c = int(np.prod(cdims)) if cdims else 1
    dq = int(np.prod([r.dim for r in qregs])) if qregs else 1
    p = check_distribution(np.asarray(p, dtype=float).reshape(-1))
    if p.size != n_c:
        raise StateError(f"distribution has {p.size} entries, classical registers need {n_c}")
    indices = list(product(*[range(d) for d in cdims]))
    if isinstance(conditionals, Mapping):
        missing = [i for i in indices if i not in conditionals]
        if missing:
            raise StateError(f"missing conditional state for index {missing[0]}")
        blocks = [np.asarray(conditionals[i], dtype=complex) for i in indices]
    else:
        arr = np.asarray(conditionals, dtype=complex)
        if arr.shape[:-2] != tuple(cdims) and arr.shape[0] != n_c:
            raise StateError(f"conditionals shape {arr.shape} does not match classical dims {cdims}")
        blocks = list(arr.reshape(n_c, arr.shape[-2], arr.shape[-1]))
    op = np.zeros((n_c * dq, n_c * dq), dtype=complex)
    for k, (idx, block) in enumerate(zip(indices, blocks)):
        if block.shape != (dq, dq):
            raise StateError(f"conditional {idx} has shape {block.shape}, expected {(dq, dq)}")
        check_density(block, name=f"conditional state {idx}")
        op[k * dq:(k + 1) * dq, k * dq:(k + 1) * dq] = p[k] * block
    return MultipartiteState(tuple(cregs) + tuple(qregs), op, validate=False)


# --------------------------------------------------------------------------
# constructors used by tests, scripts and channel builders


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def pure(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex).reshape(-1)
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def basis_density(index: int, dim: int) -> np.ndarray:
    return pure(ket(index, dim))


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def bell_state() -> np.ndarray:
    return pure([1, 0, 0, 1])


def random_density(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-distributed density matrix of the given rank (full rank by default)."""
    rank = dim if rank is None else rank
    g = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_distribution(k: int, rng: np.random.Generator) -> np.ndarray:
    p = rng.dirichlet(np.ones(k))
    return p / p.sum()


def state(op, registers: Sequence[Register]) -> MultipartiteState:
    return MultipartiteState(tuple(registers), op)
