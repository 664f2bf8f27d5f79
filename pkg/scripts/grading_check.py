"""Compare candidate grading conventions against the KK-group table.

The frozen convention reads Hom^X_n as [M, Sigma^n H_X(N)]_0 and places
Ext^X_{n+1} under it. The alternatives flip the sign of the suspension or
the Ext offset; each is scored by the number of the 72 entries it misses.
The table only involves free sources, so Ext vanishes throughout and the
offset is not pinned down here; only the sign of the suspension is.
"""

from crtkit import _tables as tb
from crtkit import catalog
from crtkit.graded_group import AbelianGroup
from crtkit.hom_ext import hom_crt
from crtkit.uct import UctTerm


def score(sign, offset):
    mods = {k: catalog.module(f"KCRT_{k}") for k in "RCT"}
    miss = 0
    for (a, b), row in tb.TABLE1_KK.items():
        res = hom_crt(mods[a], mods[b])
        for n, want in enumerate(row):
            t = UctTerm.of(res.group("O", sign * n), res.ext.group("O", sign * n + offset))
            if t.resolved is None or t.resolved != AbelianGroup.parse(want):
                miss += 1
    return miss


def main():
    for sign in (1, -1):
        for offset in (1, 0, -1):
            print(f"Hom degree {'+n' if sign > 0 else '-n'}, Ext offset {offset:+d}: "
                  f"{score(sign, offset)} of 72 entries missed")


if __name__ == "__main__":
    main()
