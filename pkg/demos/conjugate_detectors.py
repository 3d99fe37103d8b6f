"""Two independent routes to conjugate points, side by side.

detect_conjugate watches the transported vertical direction for its
first return to vertical; jacobi_conjugate_oracle runs the scalar
three-term recursion for kick maps and reports the first sign change.
They bracket the same crossing, so they agree up to one index.
"""

import numpy as np

from twistlab import (
    conjugate_report,
    detect_conjugate,
    detect_overconjugate,
    jacobi_conjugate_oracle,
    standard,
)


def main() -> None:
    rng = np.random.default_rng(7)
    print(f"{'k':>4} {'point':>22} {'detector':>9} {'oracle':>7} {'overconj':>9}")
    for k in (0.5, 1.0, 1.5):
        m = standard(k)
        for _ in range(6):
            p = (rng.uniform(0, 1), rng.uniform(-0.5, 0.5))
            conj = detect_conjugate(m, p, 200)
            orc = jacobi_conjugate_oracle(m, p, 200)
            oc = detect_overconjugate(m, p, 260)
            c = "-" if conj is None else str(conj[0])
            o = "-" if orc is None else str(orc)
            v = "-" if oc is None else str(oc)
            print(f"{k:>4} ({p[0]:>8.4f}, {p[1]:>8.4f}) {c:>9} {o:>7} {v:>9}")

    print()
    p = (0.02, 0.0)
    rep = conjugate_report(standard(1.0), p, 100)
    print(f"full report near the elliptic point {p}: {rep}")
    print("every conjugate time is chased by an over-conjugate time")
    print("within two steps, after which the winding never recovers.")


if __name__ == "__main__":
    main()
