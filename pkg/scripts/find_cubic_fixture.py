"""Search small symmetric integer pencils for a smooth, irreducible cubic.

Fixes D0 = I3 and D1 = diag(0, 1, -1) and enumerates symmetric D2 with
entries in {0, 1}.  A candidate is kept when det(x0 D0 + x1 D1 + x2 D2) is
irreducible over Q, smooth (no common projective zero of the partials) and
has at least four rational points found on small lines.  Prints the first
hits; the packaged cubic fixture is one of them.
"""

from __future__ import annotations

import itertools

import sympy

x0, x1, x2 = sympy.symbols("x0 x1 x2")
D0 = sympy.eye(3)
D1 = sympy.diag(0, 1, -1)


def is_smooth(f) -> bool:
    grads = [sympy.diff(f, v) for v in (x0, x1, x2)]
    for v in (x0, x1, x2):
        chart = [g.subs(v, 1) for g in grads]
        if sympy.groebner(chart, x0, x1, x2, order="grevlex").exprs != [1]:
            return False
    return True


def rational_points(f, bound: int = 2) -> set:
    pts = set()
    for a, b in itertools.product(range(-bound, bound + 1), repeat=2):
        for pt in ((1, a, b), (0, 1, a), (0, 0, 1)):
            if f.subs(dict(zip((x0, x1, x2), pt))) == 0:
                pts.add(pt)
    return pts


def main(limit: int = 5) -> None:
    found = 0
    for a, b, c, d, e, g in itertools.product((0, 1), repeat=6):
        D2 = sympy.Matrix([[a, b, c], [b, d, e], [c, e, g]])
        f = sympy.expand((x0 * D0 + x1 * D1 + x2 * D2).det())
        if sympy.Poly(f, x0, x1, x2).total_degree() != 3:
            continue
        _, factors = sympy.factor_list(f)
        if len(factors) != 1 or factors[0][1] != 1:
            continue
        if not is_smooth(f):
            continue
        pts = rational_points(f)
        if len(pts) < 4:
            continue
        print(f"D2 = {D2.tolist()}  det = {f}  points = {sorted(pts)}")
        found += 1
        if found >= limit:
            break


if __name__ == "__main__":
    main()
