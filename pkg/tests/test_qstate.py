import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given
from hypothesis import strategies as st

from conftest import density_from_seed, seeds
from qmawtc.qstate import (
    MultipartiteState,
    StateError,
    basis_density,
    bell_state,
    check_density,
    check_distribution,
    classical,
    cq_state,
    embed,
    fidelity,
    maximally_mixed,
    partial_trace,
    permute_op,
    purified_distance,
    quantum,
    random_density,
    sqrtm_psd,
    state,
    support_projector,
    tensor,
    trace_distance,
    trace_out,
)


def loop_partial_trace(op, da, db):
    """Trace out the second factor entry by entry."""
    out = np.zeros((da, da), dtype=complex)
    for i in range(da):
        for j in range(da):
            out[i, j] = sum(op[i * db + k, j * db + k] for k in range(db))
    return out


def test_trace_out_matches_loop_oracle(rng):
    rho = random_density(6, rng)
    assert np.allclose(trace_out(rho, [2, 3], [1]), loop_partial_trace(rho, 2, 3), atol=1e-14)
    swapped = permute_op(rho, [2, 3], [1, 0])
    assert np.allclose(trace_out(rho, [2, 3], [0]), loop_partial_trace(swapped, 3, 2), atol=1e-14)


def test_permute_op_swaps_product_factors(rng):
    a, b, c = random_density(2, rng), random_density(3, rng), random_density(2, rng)
    op = np.kron(np.kron(a, b), c)
    assert np.allclose(permute_op(op, [2, 3, 2], [2, 0, 1]), np.kron(np.kron(c, a), b))


def test_embed_places_operator_on_positions(rng):
    a = random_density(2, rng)
    b = random_density(3, rng)
    full = embed(np.kron(a, b), [3, 2, 2, 3], [1, 3])
    expect = permute_op(np.kron(np.kron(a, b), np.eye(6)), [2, 3, 3, 2], [2, 0, 3, 1])
    assert np.allclose(full, expect)


def test_fidelity_matches_scipy_sqrtm(rng):
    for _ in range(10):
        r, s = random_density(3, rng), random_density(3, rng)
        root = sla.sqrtm(r) @ sla.sqrtm(s)
        f = np.linalg.svd(root, compute_uv=False).sum() ** 2
        assert fidelity(r, s) == pytest.approx(f, abs=1e-9)


def test_distances_on_orthogonal_and_equal_states():
    a, b = basis_density(0, 2), basis_density(1, 2)
    assert trace_distance(a, b) == pytest.approx(2.0)
    assert purified_distance(a, b) == pytest.approx(1.0)
    assert purified_distance(a, a) == pytest.approx(0.0, abs=1e-7)


@given(seeds, seeds)
def test_purified_distance_dominates_half_trace_distance(s1, s2):
    r, s = density_from_seed(s1, 3), density_from_seed(s2, 3)
    p = purified_distance(r, s)
    assert 0.0 <= p <= 1.0
    assert 0.5 * trace_distance(r, s) <= p + 1e-9


def test_check_density_rejects_bad_operators():
    with pytest.raises(StateError):
        check_density(np.array([[1, 0], [0, -0.1]]) / 0.9)
    with pytest.raises(StateError):
        check_density(np.eye(2))
    with pytest.raises(StateError):
        check_density(np.array([[0.5, 1j], [0, 0.5]]))


def test_check_distribution():
    with pytest.raises(StateError):
        check_distribution([0.5, 0.6])
    with pytest.raises(StateError):
        check_distribution([1.2, -0.2])
    assert np.allclose(check_distribution([0.25, 0.75]), [0.25, 0.75])


def test_state_marginal_reorder_and_ptrace(rng):
    a, b = random_density(2, rng), random_density(3, rng)
    s = state(np.kron(a, b), [quantum("A", 2), quantum("B", 3)])
    assert np.allclose(s.marginal(["B"]).op, b)
    assert np.allclose(s.ptrace({"B"}).op, a)
    assert np.allclose(s.reorder(["B", "A"]).op, np.kron(b, a))
    assert s.labels == ("A", "B") and s.dims == (2, 3)


def test_state_is_read_only(rng):
    s = state(random_density(2, rng), [quantum("A", 2)])
    with pytest.raises(ValueError):
        s.op[0, 0] = 1.0


def test_power_and_tensor_dimensions(rng):
    s = state(random_density(2, rng), [quantum("A", 2)])
    p = s.power(3)
    assert p.labels == ("A_1", "A_2", "A_3")
    assert np.allclose(p.op, np.kron(np.kron(s.op, s.op), s.op))
    t = tensor(s, s.relabel({"A": "B"}))
    assert t.labels == ("A", "B")


def test_cq_state_condition_recovers_blocks(rng):
    p = np.array([0.2, 0.8])
    blocks = [random_density(2, rng), random_density(2, rng)]
    s = cq_state(p, blocks, [classical("X", 2)], [quantum("Y", 2)])
    parts = s.condition(["X"])
    assert [round(q, 12) for q, _, _ in parts] == [0.2, 0.8]
    for (_, idx, sub), blk in zip(parts, blocks):
        assert np.allclose(sub.op, blk)
    assert np.allclose(s.classical_distribution(["X"]), p)


def test_classical_register_must_be_block_diagonal():
    with pytest.raises(StateError):
        MultipartiteState((classical("X", 2),), np.full((2, 2), 0.5))


def test_support_projector_and_sqrt():
    rho = np.diag([0.7, 0.3, 0.0])
    assert np.allclose(support_projector(rho), np.diag([1, 1, 0]))
    assert np.allclose(sqrtm_psd(rho) @ sqrtm_psd(rho), rho)


def test_partial_trace_of_bell_state_is_maximally_mixed():
    s = state(bell_state(), [quantum("A", 2), quantum("B", 2)])
    assert np.allclose(partial_trace(s, {"B"}).op, maximally_mixed(2))


@given(seeds, st.integers(min_value=1, max_value=3))
def test_random_density_rank(seed, rank):
    rho = density_from_seed(seed, 3, rank)
    w = np.linalg.eigvalsh(rho)
    assert np.sum(w > 1e-10) == rank
    assert np.trace(rho).real == pytest.approx(1.0)
