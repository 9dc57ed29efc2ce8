"""Exact decoder errors against their bounds on small instances."""

import numpy as np

from qmawtc.channels import PpLaw, QbcLaw, mawtc_to_ppqwtc, random_mac_law, random_mawtc, random_qbc
from qmawtc.decoders import (
    Codebook,
    DecoderParams,
    convex_split_verify,
    ensemble_error_simultaneous,
    leakage_estimate,
    simultaneous_test,
    successive_decoder_sim,
    superposition_decoder_sim,
)
from qmawtc.qstate import quantum, state


def main():
    rng = np.random.default_rng(3)
    ch, law = random_mawtc(rng), random_mac_law(rng)
    test = simultaneous_test(ch, law, 0.1)
    for sizes in [(2, 1, 2, 1), (2, 2, 2, 1), (2, 2, 2, 2)]:
        e = ensemble_error_simultaneous(ch, law, test, DecoderParams(sizes))
        print(f"simultaneous {sizes}: error {e.error:.4f}  index error {e.index_error:.4f}  bound {e.bound:.4f}")

    for k in (1, 4, 16, 64):
        est = leakage_estimate(ch, law, k, k, 200, seed=1, delta_prime=0.3)
        print(f"leakage K1=K2={k:3d}: {est.mean:.4f} +- {est.stderr:.4f}")

    pp = mawtc_to_ppqwtc(ch)
    p = PpLaw.uniform(2, 2)
    cb1, cb2 = Codebook.draw([0.5, 0.5], 2, 2, seed=1), Codebook.draw([0.5, 0.5], 2, 2, seed=2)
    for order in ("12", "21"):
        r = successive_decoder_sim(pp, p, cb1, cb2, 0.1, order)
        print(f"successive order {order}: p_e1 {r.p_e1:.4f}  p_e2 {r.p_e2:.4f}")

    bc = random_qbc(rng, 2)
    bl = QbcLaw([0.5, 0.5], [[0.8, 0.2], [0.1, 0.9]])
    cb_u = Codebook.draw(bl.p_u, 2, 1, seed=5)
    cb_x = Codebook.draw_conditional(bl.p_x_u, cb_u, 2, seed=6)
    r = superposition_decoder_sim(bc, bl, cb_u, cb_x, 0.1)
    print(f"superposition: p_e1 {r.p_e1:.4f}  p_e2 {r.p_e2:.4f}  exponent sum {r.bound:.4f}")

    op = np.zeros((4, 4))
    op[0, 0] = op[3, 3] = 0.35
    op[1, 1] = op[2, 2] = 0.15
    op[0, 3] = op[3, 0] = 0.1
    s = state(op, [quantum("X", 2), quantum("B", 2)])
    for k in (1, 2, 4, 8):
        c = convex_split_verify(s, "X", "B", k, 0.3, 0.5)
        print(f"convex split K={k}: P {c.distance:.4f}  condition {c.condition}  sqrt(eps) {c.radius:.4f}")


if __name__ == "__main__":
    main()
