"""Hand transcriptions of the operation tables.

Every table row is a dict {source degree: entry}, where an entry is a
scalar for a 1x1 block or a nested list (rows = target summands in
left-to-right order, columns = source summands). Degrees not listed are
zero blocks. ``beta_U`` and ``beta_T`` rows use the same format.
"""

from fractions import Fraction

from .crt_core import OPS, CrtModule
from .graded_group import PERIOD, AbelianGroup, AbMap, GradedGroup, GroupHom


def graded(row):
    return GradedGroup(tuple(AbelianGroup.parse(g) for g in row))


def hom(src, dst, degree, entries):
    blocks = []
    for d in range(PERIOD):
        a, b = src[d], dst[d + degree]
        e = entries.get(d)
        if e is None:
            blocks.append(AbMap(a, b))
            continue
        mat = e if isinstance(e, list) else [[e]]
        blocks.append(AbMap(a, b, mat))
    return GroupHom(src, dst, degree, tuple(blocks))


def table_module(groups, rows):
    """Build a module from group rows and operation rows, deriving the rest."""
    parts = {x: graded(groups[x]) for x in "OUT"}
    ops = {}
    for name, entries in rows.items():
        src, dst, deg = OPS[name]
        ops[name] = hom(parts[src], parts[dst], deg, entries)
    return CrtModule.build(parts["O"], parts["U"], parts["T"], ops)


H = Fraction(1, 2)

# K-theory of the reals, with all three parts. The complex part has a
# generator in every even degree related by beta_U, and the self-conjugate
# part one generator per nonzero group, related by beta_T.
FREE_R_GROUPS = {
    "O": ["Z", "Z/2", "Z/2", "0", "Z", "0", "0", "0"],
    "U": ["Z", "0", "Z", "0", "Z", "0", "Z", "0"],
    "T": ["Z", "Z/2", "0", "Z", "Z", "Z/2", "0", "Z"],
}
FREE_R_ROWS = {
    "eps": {0: 1, 1: 1, 4: 2},
    "zeta": {0: 1, 4: 1},
    "psiU": {0: 1, 2: -1, 4: 1, 6: -1},
    "psiT": {0: 1, 1: 1, 3: -1, 4: 1, 5: 1, 7: -1},
    "gamma": {0: 1, 2: 1, 4: 1, 6: 1},
    "tau": {0: 1, 1: 1, 3: 1, 7: 2},
    "betaU": {0: 1, 2: 1, 4: 1, 6: 1},
    "betaT": {0: 1, 1: 1, 3: 1, 4: 1, 5: 1, 7: 1},
}

# The rational algebra N1.
N1_GROUPS = {
    "O": ["Q", "0", "0", "0", "Q", "0", "0", "0"],
    "U": ["Q", "0", "Q", "0", "Q", "0", "Q", "0"],
    "T": ["Q", "0", "0", "Q", "Q", "0", "0", "Q"],
}
N1_ROWS = {
    "c": {0: 1, 4: 2},
    "r": {0: 2, 4: 1},
    "eps": {0: 1, 4: 2},
    "zeta": {0: 1, 4: 1},
    "psiU": {0: 1, 2: -1, 4: 1, 6: -1},
    "psiT": {0: 1, 3: -1, 4: 1, 7: -1},
    "gamma": {0: 1, 4: 1},
    "tau": {3: 1, 7: 2},
}

# The 2-divisible algebra N2.
N2_GROUPS = {
    "O": ["Z(2^inf)", "0", "Z/2", "Z/2", "Z(2^inf)", "0", "0", "0"],
    "U": ["Z(2^inf)", "0", "Z(2^inf)", "0", "Z(2^inf)", "0", "Z(2^inf)", "0"],
    "T": ["Z(2^inf)", "0", "Z/2", "Z(2^inf)", "Z(2^inf)", "0", "Z/2", "Z(2^inf)"],
}
N2_ROWS = {
    "c": {0: 1, 2: H, 4: 2},
    "r": {0: 2, 4: 1},
    "eps": {0: 1, 2: 1, 3: H, 4: 2},
    "zeta": {0: 1, 2: H, 4: 1, 6: H},
    "psiU": {0: 1, 2: -1, 4: 1, 6: -1},
    "psiT": {0: 1, 2: 1, 3: -1, 4: 1, 6: 1, 7: -1},
    "gamma": {0: 1, 4: 1},
    "tau": {2: 1, 3: 1, 7: 2},
}


def cuntz_groups(k):
    q = f"Z/{2 ** k}"
    return {
        "O": [q, "Z/2", "Z/2+Z/2", "Z/2", q, "0", "0", "0"],
        "U": [q, "0", q, "0", q, "0", q, "0"],
        "T": [q, "Z/2", "Z/2", q, q, "Z/2", "Z/2", q],
    }


def cuntz_rows(k):
    h = 2 ** (k - 1)
    return {
        "c": {0: 1, 2: [[0, h]], 4: 2},
        "r": {0: 2, 2: [[1], [0]], 4: 1},
        "eps": {0: 1, 1: 1, 2: [[0, 1]], 3: h, 4: 2},
        "zeta": {0: 1, 2: h, 4: 1, 6: h},
        "psiU": {0: 1, 2: -1, 4: 1, 6: -1},
        "psiT": {0: 1, 1: 1, 2: 1, 3: -1, 4: 1, 5: 1, 6: 1, 7: -1},
        "gamma": {0: 1, 2: 1, 4: 1, 6: 1},
        "tau": {0: 1, 1: [[1], [0]], 2: 1, 3: 1, 7: 2},
    }


def _row(text):
    return tuple(text.split())


# KK_n(A, B) for A, B in R, C, T, degrees 0..7.
TABLE1_KK = {
    ("R", "R"): _row("Z Z/2 Z/2 0 Z 0 0 0"),
    ("R", "C"): _row("Z 0 Z 0 Z 0 Z 0"),
    ("R", "T"): _row("Z Z/2 0 Z Z Z/2 0 Z"),
    ("C", "R"): _row("Z 0 Z 0 Z 0 Z 0"),
    ("C", "C"): _row("Z+Z 0 Z+Z 0 Z+Z 0 Z+Z 0"),
    ("C", "T"): _row("Z Z Z Z Z Z Z Z"),
    ("T", "R"): _row("Z Z Z/2 0 Z Z Z/2 0"),
    ("T", "C"): _row("Z Z Z Z Z Z Z Z"),
    ("T", "T"): _row("Z+Z Z+Z/2 Z/2 Z Z+Z Z+Z/2 Z/2 Z"),
}

_P = "Z(2^inf)"

# F(b,0,C) tensored with N1 and N2.
TABLE6_TENSOR_C = {
    "N1": {
        "O": _row("Q 0 Q 0 Q 0 Q 0"),
        "U": _row("Q+Q 0 Q+Q 0 Q+Q 0 Q+Q 0"),
        "T": _row("Q Q Q Q Q Q Q Q"),
    },
    "N2": {
        "O": (_P, "0", _P, "0", _P, "0", _P, "0"),
        "U": (f"{_P}+{_P}", "0") * 4,
        "T": (_P,) * 8,
    },
}

# F(b,0,T) tensored with N1 and N2, as printed. The U row of N2 in degree
# 5 reads "0Z(2^inf)" and is kept verbatim.
TABLE7_PRINTED = {
    "N1": {
        "O": _row("Q Q 0 0 Q Q 0 0"),
        "U": _row("Q Q Q Q Q Q Q Q"),
        "T": _row("Q+Q Q 0 Q Q+Q Q 0 Q"),
    },
    "N2": {
        "O": (_P, _P, "0", "Z/2", _P, _P, "0", "Z/2"),
        "U": (_P, _P, _P, _P, _P, "0Z(2^inf)", _P, _P),
        "T": (f"{_P}+{_P}", _P, "Z/2", _P, f"{_P}+{_P}", _P, "Z/2", _P),
    },
}

# (row, part, degree) -> corrected entry. The T part of F(b,0,T) x N is
# N^T_n + N^T_{n-1} as a group, which is Z(2^inf) + Z/2 for N2 in degrees
# 3 and 7; the printed entry drops the Z/2.
TABLE7_CORRECTIONS = {
    ("N2", "U", 5): _P,
    ("N2", "T", 3): f"Z/2+{_P}",
    ("N2", "T", 7): f"Z/2+{_P}",
}


def _corrected(printed, fixes):
    out = {}
    for row, parts in printed.items():
        out[row] = {}
        for x, vals in parts.items():
            out[row][x] = tuple(fixes.get((row, x, d), v) for d, v in enumerate(vals))
    return out


TABLE7_TENSOR_T = _corrected(TABLE7_PRINTED, TABLE7_CORRECTIONS)
