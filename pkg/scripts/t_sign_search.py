"""Which sign choices for the beta actions on T(N) satisfy every relation?

For each catalog module, try all sixteen diagonal sign patterns and list the
ones that pass check_relations (and check_acyclic).
"""

import argparse

from crtkit import catalog
from crtkit.crt_core import check_acyclic, check_relations
from crtkit.hom_ext import T_SIGNS, _t_candidate


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("names", nargs="*", help="catalog modules (default: all)")
    args = ap.parse_args()
    for name in args.names or catalog.module_names():
        N = catalog.module(name)
        good = []
        for su, sv in T_SIGNS:
            m = _t_candidate(N, su, sv)
            if check_relations(m).ok:
                good.append((su, sv, check_acyclic(m).ok))
        cells = ", ".join(f"U{su} T{sv}{'' if ac else ' (not acyclic)'}" for su, sv, ac in good)
        print(f"{name:15s} {len(good):2d} passing: {cells}")


if __name__ == "__main__":
    main()
