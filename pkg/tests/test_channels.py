import numpy as np
import pytest
from hypothesis import given

from conftest import seeds
from qmawtc.channels import (
    CqMaWtc,
    MacLaw,
    PpLaw,
    Qbc,
    QbcLaw,
    QbcPairLaw,
    basis_mac,
    control_state_mawtc,
    control_state_ppqwtc,
    control_state_qbc,
    control_state_sen,
    copies_state,
    mawtc_to_ppqwtc,
    random_mac_law,
    random_mawtc,
    random_qbc,
    shared_randomness_states,
)
from qmawtc.qstate import StateError, maximally_mixed, random_density


def test_control_state_blocks_match_channel(rng):
    ch = random_mawtc(rng)
    law = random_mac_law(rng)
    s = control_state_mawtc(ch, law)
    assert s.labels == ("Q", "X1", "X2", "Y", "Z")
    for p, idx, st in s.condition(["Q", "X1", "X2"]):
        _, a, b = idx
        assert p == pytest.approx(law.joint()[idx])
        assert np.allclose(st.op, ch.output(a, b))


def test_sen_state_traces_out_eavesdropper(rng):
    ch = random_mawtc(rng)
    law = random_mac_law(rng)
    s = control_state_sen(ch, law)
    assert s.labels == ("Q", "X1", "X2", "Y")
    for _, (_, a, b), st in s.condition(["Q", "X1", "X2"]):
        assert np.allclose(st.op, ch.output_y(a, b))


def test_time_sharing_law_joint_sums_to_one(rng):
    law = random_mac_law(rng, 2, 3, nq=3)
    assert law.joint().shape == (3, 2, 3)
    assert law.joint().sum() == pytest.approx(1.0)
    p1, p2 = law.marginals()
    assert p1.sum() == pytest.approx(1.0) and p2.sum() == pytest.approx(1.0)


def test_eve_silent_outputs_are_constant(rng):
    z = random_density(2, rng)
    y = np.array([[random_density(2, rng) for _ in range(2)] for _ in range(2)])
    ch = CqMaWtc.eve_silent(y, z)
    for a in range(2):
        for b in range(2):
            assert np.allclose(ch.output_z(a, b), z)
            assert np.allclose(ch.output_y(a, b), y[a, b])


def test_conversion_preserves_operators(rng):
    ch = random_mawtc(rng, 2, 3)
    pp = mawtc_to_ppqwtc(ch)
    assert pp.sizes == (2, 3)
    assert pp.encoding.tolist() == [[0, 1, 2], [3, 4, 5]]
    assert np.array_equal(pp.outputs, ch.outputs)
    s = control_state_ppqwtc(pp, PpLaw.uniform(2, 3))
    m = control_state_mawtc(ch, MacLaw.uniform(2, 3))
    assert np.allclose(s.op, m.op)


def test_qbc_states(rng):
    ch = random_qbc(rng, nx=4)
    law = QbcLaw([0.5, 0.5], [[0.25] * 4, [0.7, 0.1, 0.1, 0.1]])
    s = control_state_qbc(ch, law)
    assert s.labels == ("U", "X", "Y1", "Y2")
    pair = QbcPairLaw([1.0], [[0.5, 0.5]], [[[0.5, 0.5], [0.2, 0.8]]])
    s2 = control_state_qbc(ch, pair)
    assert s2.labels == ("U", "X1", "X2", "Y1", "Y2")
    assert np.allclose(s2.classical_distribution(["X1", "X2"]).reshape(-1), [0.25, 0.25, 0.1, 0.4])
    assert np.allclose(ch.output_y1(0), np.trace(ch.outputs[0].reshape(2, 2, 2, 2), axis1=1, axis2=3))


def test_copies_state_is_perfectly_correlated():
    s = copies_state([0.3, 0.7], ["A", "B", "C"])
    d = s.classical_distribution(["A", "B", "C"]).reshape(2, 2, 2)
    assert d[0, 0, 0] == pytest.approx(0.3) and d[1, 1, 1] == pytest.approx(0.7)
    assert d.sum() == pytest.approx(1.0)
    s1, s2 = shared_randomness_states([0.5, 0.5], [1.0, 0.0])
    assert s1.labels == ("X1", "X1p", "X1pp") and s2.labels == ("X2", "X2p", "X2pp")


def test_basis_mac_is_noiseless():
    ch = basis_mac(2, 2)
    outs = [ch.output_y(a, b) for a in range(2) for b in range(2)]
    for i, o in enumerate(outs):
        assert o[i, i] == pytest.approx(1.0)
    assert np.allclose(ch.output_z(1, 0), maximally_mixed(1))


def test_invalid_channels_rejected(rng):
    with pytest.raises(StateError):
        CqMaWtc(np.zeros((2, 2, 4, 4)), 2, 2)
    with pytest.raises(StateError):
        CqMaWtc(np.array([[random_density(3, rng)]]), 2, 2)
    with pytest.raises(StateError):
        control_state_mawtc(random_mawtc(rng), MacLaw.uniform(3, 2))
    with pytest.raises(StateError):
        MacLaw([1.0], [[0.5, 0.6]], [[1.0]])
    with pytest.raises(StateError):
        QbcPairLaw([1.0], [[0.5, 0.5]], [[0.5, 0.5]])
    with pytest.raises(StateError):
        control_state_qbc(Qbc(np.array([random_density(4, rng)] * 3), 2, 2), QbcLaw([1.0], [[0.5, 0.5]]))


def test_tables_are_read_only(rng):
    ch = random_mawtc(rng)
    with pytest.raises(ValueError):
        ch.outputs[0, 0, 0, 0] = 1.0


@given(seeds)
def test_control_state_is_density(seed):
    rng = np.random.default_rng(seed)
    s = control_state_mawtc(random_mawtc(rng), random_mac_law(rng, nq=2))
    w = np.linalg.eigvalsh(s.op)
    assert w[0] >= -1e-12
    assert np.trace(s.op).real == pytest.approx(1.0)
