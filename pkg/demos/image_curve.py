"""Pushing a determinantal representation through rational maps.

A degree-2 self-map of the conic, and a map with a basepoint on the conic
whose raw image pencil is degenerate until the basepoint is removed.
"""

from __future__ import annotations

import warnings

from curvelim.fixtures import conic
from curvelim.poly import parse_poly
from curvelim.ratmap import RationalMap, image_pencil, verify_image


def main() -> None:
    C = conic()
    r = RationalMap(*(parse_poly(t) for t in ("x1^2 + x2^2", "2*x1*x2", "x2^2 - x1^2")))
    pencil = image_pencil(C, r)
    print("self-map image pencil size:", pencil.size)
    print("det =", pencil.det_poly())
    print("verification:", verify_image(pencil, samples=20).as_dict())

    rb = RationalMap(
        parse_poly("x1^2"),
        parse_poly("x1*x0"),
        parse_poly("(x0 - x2)*(x0 + 2*x2)"),
        basepoints=[(1, 0, 1)],
    )
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        raw = image_pencil(C, rb, reduce=False, check=False)
    print("\nbasepoint map, unreduced det =", raw.det_poly(allow_degenerate=True))
    reduced = image_pencil(C, rb)
    print("reduced pencil size:", reduced.size)
    print("reduced det =", reduced.det_poly())
    print("verified:", verify_image(reduced, samples=20).passed)


if __name__ == "__main__":
    main()
