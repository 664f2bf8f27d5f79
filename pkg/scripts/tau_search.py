"""Search the entry of tau in degree 0 for the real K-theory fixture.

The printed operation rows leave tau_0 : KT_0 -> KO_1 (Z -> Z/2) to be read
off; this tries both values and reports which relations break.
"""

from crtkit import _tables as tb
from crtkit.crt_core import check_acyclic, check_relations


def main():
    for value in (0, 1):
        rows = {k: dict(v) for k, v in tb.FREE_R_ROWS.items()}
        rows["tau"][0] = value
        m = tb.table_module(tb.FREE_R_GROUPS, rows)
        rel, acy = check_relations(m), check_acyclic(m)
        print(f"tau_0 = {value}: relations {rel}; acyclic {acy}")


if __name__ == "__main__":
    main()
