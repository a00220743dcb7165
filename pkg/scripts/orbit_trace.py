"""Trace one orbit of the fixed-point example and print the distance decay.

Usage: python scripts/orbit_trace.py [start_rational]
"""
import sys
from fractions import Fraction

from soldyn import (
    AsymptoticToFiber,
    classify_orbit,
    induce,
    pl_new,
    sigma,
)


def main():
    start = Fraction(sys.argv[1]) if len(sys.argv) > 1 else Fraction(1, 2)
    f = induce(pl_new(1, [(0, 0), (Fraction(1, 2), Fraction(3, 4))]), 0)
    v = classify_orbit(
        f, sigma(start), 0, 1, max_iters=10_000, tol=Fraction(1, 10**9),
        collect_trace=True,
    )
    if not isinstance(v, AsymptoticToFiber):
        print(f"verdict: {v}")
        return
    print(f"start sigma({start}) -> target {v.target}")
    for i, d in v.trace[:40]:
        print(f"  iter {i:>4}  dist {float(d):.3e}")
    print(f"reached {float(v.distance):.3e} after {v.iterations} iterations")


if __name__ == "__main__":
    main()
