"""Classical elimination on the line: Sylvester vs Bezout.

Builds two cubics sharing the roots 2 and -1/3, shows both matrices, and
reads the number of common roots off their kernels.  Then recovers the
unit circle from its Pythagorean parametrization.
"""

from __future__ import annotations

from curvelim import linalg
from curvelim.classical import (
    UniPoly,
    bezout,
    count_common_roots,
    line_image_pencil,
    parse_binary_form,
    resultant,
    sylvester,
)
from curvelim.detrep import det_poly
from curvelim.poly import parse_poly


def show(A) -> str:
    return "\n".join("  " + " ".join(f"{str(v):>5}" for v in row) for row in A)


def main() -> None:
    p = parse_poly("(x - 2)*(3*x + 1)*(x - 5)", ("x",))
    q = parse_poly("(x - 2)*(3*x + 1)*(x + 4)", ("x",))
    p, q = UniPoly(p.coeffs, 3), UniPoly(q.coeffs, 3)
    S, B = sylvester(p, q), bezout(p, q)
    print("p =", p, " q =", q)
    print("Sylvester matrix:\n" + show(S))
    print("Bezout matrix:\n" + show(B))
    print("resultant:", resultant(p, q))
    print("rank S =", linalg.rank(S), " rank B =", linalg.rank(B))
    print("common roots (Sylvester):", count_common_roots(p, q, "sylvester"))
    print("common roots (Bezout):   ", count_common_roots(p, q, "bezout"))

    forms = [parse_binary_form(t) for t in ("s^2 + t^2", "2*s*t", "s^2 - t^2")]
    M = line_image_pencil(*forms)
    print("\nimage pencil of (s^2+t^2, 2st, s^2-t^2):")
    for k, Mk in enumerate(M):
        print(f"M{k}:\n" + show(Mk))
    print("det =", det_poly(M))


if __name__ == "__main__":
    main()
