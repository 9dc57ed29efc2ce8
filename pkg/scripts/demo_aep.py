"""Per-copy hypothesis-testing information against the mutual information."""

import numpy as np

from qmawtc.qstate import classical, quantum, random_density, state
from qmawtc.regions import aep_table


def main():
    op = np.zeros((4, 4))
    op[0, 0] = op[3, 3] = 0.5
    bits = state(op, [classical("X", 2), classical("Y", 2)])
    noisy = state(random_density(4, np.random.default_rng(0)), [quantum("A", 2), quantum("B", 2)])
    for name, s, a, b in (("correlated bits", bits, "X", "Y"), ("random two-qubit", noisy, "A", "B")):
        print(name)
        for eps in (0.1, 0.3):
            for row in aep_table(s, [a], [b], eps, 4):
                print(f"  eps={eps} n={row.n}: {row.per_copy:.4f} vs {row.target:.4f}  gap {row.gap:.4f}")


if __name__ == "__main__":
    main()
