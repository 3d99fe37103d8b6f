"""Torsion of the integrable shear against its closed form.

The shear (x, y) -> (x + y, y) transports the vertical direction to
(n, 1) after n steps, so the accumulated angle is -arctan(n)/(2 pi) and
the finite-time torsion is that divided by n.  This script tabulates the
numerical trace against the formula over five decades of horizon.
"""

import math

from twistlab import shear, torsion_trace

TWO_PI = 2.0 * math.pi


def main() -> None:
    m = shear()
    point = (0.3, 0.7)
    print(f"{'n':>8}  {'torsion':>22}  {'closed form':>22}  {'error':>10}")
    for n in (1, 10, 100, 1000, 10_000, 100_000):
        trace = torsion_trace(m, point, n=n)
        want = -math.atan(n) / (TWO_PI * n)
        err = abs(trace.torsion - want)
        print(f"{n:>8}  {trace.torsion:>22.16f}  {want:>22.16f}  {err:>10.2e}")
    print()
    print("The value decays like -1/(4n): the vertical tilts a quarter")
    print("turn in total, and torsion averages that over the horizon.")


if __name__ == "__main__":
    main()
