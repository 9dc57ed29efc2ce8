"""Print the one-shot MAC wiretap regions and the successive-decoding region for a random instance."""

import numpy as np

from qmawtc.channels import PpLaw, mawtc_to_ppqwtc, random_mac_law, random_mawtc
from qmawtc.params import SmoothingParams
from qmawtc.regions import asymptotic_region, mac_terms, region_corollary1, region_theorem1, region_theorem2


def show(region):
    print(f"[{region.name}]  budget: {region.budget_label}")
    for con in region.constraints:
        print(f"  {con.label:6s} <= {con.bound:9.4f}")
        for name, v in con.terms:
            print(f"      {name:32s} {v:9.4f}")
    for note in region.notes:
        print(f"  note: {note}")
    print(f"  corners: {np.round(region.corners(clamp=True), 4).tolist()}")


def main():
    rng = np.random.default_rng(7)
    ch, law = random_mawtc(rng), random_mac_law(rng)
    mac = SmoothingParams(eps=0.1, delta=0.1, eps_prime=0.01, delta_prime=0.3)
    terms = mac_terms(ch, law, mac.eps, mac.eta)
    show(region_corollary1(ch, law, mac, terms))
    # with delta = eps the two penalties coincide
    show(region_theorem1(ch, law, mac, terms))

    pp = mawtc_to_ppqwtc(ch)
    plaw = PpLaw.uniform(2, 2)
    show(region_theorem2(pp, plaw, SmoothingParams(eps1=0.2, eps2=0.3, delta1=0.1, delta2=0.2)))
    show(asymptotic_region(pp, plaw))


if __name__ == "__main__":
    main()
