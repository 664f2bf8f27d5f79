"""Inspect the connecting maps of the Cuntz system.

The map from stage k to stage k+1 is fixed on the two generators of the
real part: the unit class in KO_0 goes to twice the unit class and the
second KO_2 summand goes to (alpha, 1). Both alpha = 0 and alpha = 1 give
morphisms; this prints every nonzero block for both and runs the colimit
check against N2.
"""

import argparse

from crtkit import catalog
from crtkit.crt_core import PARTS, validate_morphism, verify_colimit


def show(phi):
    for x in PARTS:
        for d in range(8):
            b = phi.part(x)[d]
            if b.domain.is_zero:
                continue
            mat = "; ".join(" ".join(str(e) for e in row) for row in b.matrix)
            print(f"  {x}/{d}: {b.domain} -> {b.codomain}: [{mat}]")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--stages", type=int, default=6)
    args = ap.parse_args()
    for alpha in (0, 1):
        sys = catalog.cuntz_system(stages=args.stages, alpha=alpha)
        phi = sys.maps[0]
        print(f"alpha = {alpha}: k=2 -> k=3 morphism {validate_morphism(phi)}")
        show(phi)
        print(f"  colimit: {verify_colimit(sys)}")


if __name__ == "__main__":
    main()
