"""Counting common zeros of two forms along a conic.

The conic x0^2 - x1^2 - x2^2 carries a 2x2 determinantal representation.
For pairs of forms with a known number of shared zeros on it, the blown
Sylvester and Bezout constructions both recover that number.
"""

from __future__ import annotations

from curvelim.curve import curve_count, pairing, principal_subspace
from curvelim.detrep import det_poly, kernel_at
from curvelim.fixtures import conic, conic_point
from curvelim.poly import parse_poly


def main() -> None:
    C = conic()
    print("det =", det_poly(C))
    for n in range(1, 4):
        print(f"dim V_{n} = {principal_subspace(C, n).dim}")

    cases = [
        ("x1", "x2", "no shared zeros"),
        ("x1", "x0 - x2", "share (1, 0, 1)"),
        ("x1", "3*x1", "proportional: both zeros of x1"),
        ("x1*x2", "x1*x0 + x1^2", "share both zeros of x1 and (1, -1, 0)"),
    ]
    for p, q, note in cases:
        out = curve_count(C, parse_poly(p), parse_poly(q))
        print(f"p = {p:8s} q = {q:14s} sylvester {out['sylvester_count']}  bezout {out['bezout_count']}  ({note})")

    x, y = conic_point(1, 2), conic_point(3, -1)
    value = pairing(C, kernel_at(C, x), kernel_at(C, y))
    fmt = lambda pt: "(" + ", ".join(str(v) for v in pt) + ")"
    print(f"\npairing at {fmt(x)}, {fmt(y)}: {value}")


if __name__ == "__main__":
    main()
