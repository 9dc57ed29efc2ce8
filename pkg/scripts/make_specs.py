"""Regenerate the example channel specs in scripts/specs/."""

from pathlib import Path

import numpy as np

from qmawtc.channels import (
    CqMaWtc,
    MacLaw,
    PpLaw,
    Qbc,
    QbcLaw,
    QbcPairLaw,
    basis_mac,
    mawtc_to_ppqwtc,
    random_mawtc,
    random_qbc,
)
from qmawtc.params import SmoothingParams
from qmawtc.qstate import basis_density, maximally_mixed, random_density
from qmawtc.specfile import spec_for, write_spec

OUT = Path(__file__).resolve().parent / "specs"

MAC_PARAMS = SmoothingParams(eps=0.1, delta=0.05, eps_prime=0.01, delta_prime=0.3)
PP_PARAMS = SmoothingParams(eps1=0.2, eps2=0.3, delta1=0.1, delta2=0.2)


def main():
    OUT.mkdir(exist_ok=True)
    rng = np.random.default_rng(2024)
    specs = {}

    y = np.array([[random_density(2, rng) for _ in range(2)] for _ in range(2)])
    specs["eve_silent_mac"] = spec_for(CqMaWtc.eve_silent(y, maximally_mixed(2)), MacLaw.uniform(2, 2), MAC_PARAMS)
    specs["random_mac"] = spec_for(random_mawtc(rng), MacLaw.independent([0.5, 0.5], [0.4, 0.6]), MAC_PARAMS)
    specs["orthogonal_mac"] = spec_for(basis_mac(2, 2), MacLaw.uniform(2, 2), MAC_PARAMS)
    flat = np.array([[maximally_mixed(2)] * 2] * 2)
    specs["noisy_mac"] = spec_for(CqMaWtc.eve_silent(flat, maximally_mixed(2)), MacLaw.uniform(2, 2), MAC_PARAMS)

    specs["noiseless_pp"] = spec_for(mawtc_to_ppqwtc(basis_mac(2, 2)), PpLaw.uniform(2, 2), PP_PARAMS)
    specs["random_pp"] = spec_for(mawtc_to_ppqwtc(random_mawtc(rng)), PpLaw.uniform(2, 2), PP_PARAMS)

    bits = Qbc(np.array([basis_density(0, 2), basis_density(1, 2)]), 2, 1)
    specs["correlated_bits"] = spec_for(bits, QbcLaw(np.ones(1), np.array([[0.5, 0.5]])), SmoothingParams(eps=0.3))
    ref = Qbc(np.array([basis_density(0, 2), maximally_mixed(2)]), 2, 1)
    specs["dmax_reference"] = spec_for(ref, None, SmoothingParams(eps=0.1))
    prod = Qbc(np.array([random_density(2, rng)] * 2), 2, 1)
    specs["product_state"] = spec_for(
        prod, QbcLaw(np.ones(1), np.array([[0.5, 0.5]])), SmoothingParams(eps=0.5, delta=0.5)
    )
    pair = np.full((2, 2, 2), 0.5)
    specs["random_qbc_pair"] = spec_for(
        random_qbc(rng, 4), QbcPairLaw(np.array([0.5, 0.5]), np.array([[0.3, 0.7], [0.6, 0.4]]), pair),
        SmoothingParams(eps=0.1),
    )
    specs["random_qbc"] = spec_for(
        random_qbc(rng, 2), QbcLaw(np.array([0.5, 0.5]), np.array([[0.7, 0.3], [0.2, 0.8]])), SmoothingParams(eps=0.1)
    )
    for name, spec in specs.items():
        write_spec(spec, OUT / f"{name}.json")
        print(OUT / f"{name}.json")


if __name__ == "__main__":
    main()
