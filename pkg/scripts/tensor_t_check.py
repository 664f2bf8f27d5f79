"""Compare the printed F(b,0,T) tensor table with the computed modules.

Also prints the group formula N^T_n + N^T_{n-1} for the T part, which is
what the disputed entries are checked against.
"""

from crtkit import _tables as tb
from crtkit import catalog
from crtkit.free_crt import tensor_monogenic
from crtkit.graded_group import AbelianGroup


def main():
    for row in ("N1", "N2"):
        N = catalog.module(f"KCRT_{row}")
        t = tensor_monogenic("T", 0, N)
        for x in "OUT":
            for d in range(8):
                printed = tb.TABLE7_PRINTED[row][x][d]
                got = t.group(x, d)
                try:
                    same = AbelianGroup.parse(printed) == got
                except ValueError:
                    same = False
                if not same:
                    extra = ""
                    if x == "T":
                        extra = f", N^T_{d} + N^T_{d - 1} = {N.group('T', d).direct_sum(N.group('T', d - 1))}"
                    print(f"{row} {x}/{d}: printed {printed!r}, computed {got}{extra}")


if __name__ == "__main__":
    main()
