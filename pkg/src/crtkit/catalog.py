"""Named fixtures and expected-output tables.

Module fixtures live as ``crtmod v1`` files in the package's ``fixtures``
directory (or in ``$CRT_CATALOG_PATH``). ``scripts/build_catalog.py``
regenerates them from the transcriptions in :mod:`crtkit._tables`.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import _tables as tb
from .crt_core import (
    PARTS, ColimitSystem, CrtModule, check_acyclic, check_relations, direct_sum, suspend,
    verify_colimit,
)
from .graded_group import PERIOD, AbelianGroup
from .modfile import parse_document, serialize

FIXTURE_DIR = Path(__file__).with_name("fixtures")
SUFFIX = ".crtmod"


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    module: CrtModule = None
    table: dict = None
    provenance: str = ""

    @property
    def is_module(self):
        return self.module is not None


# ------------------------------------------------------------- builders

def _with_unit_betas(groups, rows):
    """Table rows plus identity beta_U and beta_T blocks on every nonzero group."""
    rows = dict(rows)
    for op, x in (("betaU", "U"), ("betaT", "T")):
        block = {}
        for d, g in enumerate(groups[x]):
            n = len(AbelianGroup.parse(g))
            if n:
                block[d] = [[int(i == j) for j in range(n)] for i in range(n)]
        rows[op] = block
    return tb.table_module(groups, rows)


def build_n1():
    return _with_unit_betas(tb.N1_GROUPS, tb.N1_ROWS)


def build_n2():
    return _with_unit_betas(tb.N2_GROUPS, tb.N2_ROWS)


def build_cuntz(k):
    return _with_unit_betas(tb.cuntz_groups(k), tb.cuntz_rows(k))


CUNTZ_KS = (2, 3, 4, 5, 6, 7)

PROVENANCE = {
    "FREE_R": "free module on one real generator in degree 0",
    "FREE_C": "free module on one complex generator in degree 0",
    "FREE_T": "free module on one self-conjugate generator in degree 0",
    "KCRT_R": "united K-theory of R, identified with FREE_R",
    "KCRT_C": "united K-theory of C, identified with FREE_C",
    "KCRT_T": "united K-theory of T, identified with FREE_T suspended by 1",
    "KCRT_N1": "united K-theory of the rational algebra N1",
    "KCRT_N2": "united K-theory of the 2-divisible algebra N2",
    "KCRT_N": "N1 + Sigma^2 N2, the injective target",
    "ZERO": "the zero module",
    "TABLE1_KK": "KK_n(A, B) for A, B in R, C, T (expected output)",
    "TABLE6_TENSOR_C": "F(b,0,C) tensored with N1 and N2 (expected output)",
    "TABLE7_TENSOR_T": "F(b,0,T) tensored with N1 and N2 (expected output, corrected)",
}
for _k in CUNTZ_KS:
    PROVENANCE[f"KCRT_CUNTZ_k{_k}"] = f"united K-theory of the Cuntz algebra O_(2^{_k}+1)"


def build_modules() -> dict:
    """Every module fixture, computed from the transcriptions."""
    from .free_crt import monogenic
    R, C, T = monogenic(0, "O"), monogenic(0, "U"), monogenic(0, "T")
    n1, n2 = build_n1(), build_n2()
    out = {
        "FREE_R": R, "FREE_C": C, "FREE_T": T,
        "KCRT_R": R, "KCRT_C": C, "KCRT_T": suspend(T, 1),
        "KCRT_N1": n1, "KCRT_N2": n2, "KCRT_N": direct_sum(n1, suspend(n2, 2)),
        "ZERO": CrtModule.zero(),
    }
    for k in CUNTZ_KS:
        out[f"KCRT_CUNTZ_k{k}"] = build_cuntz(k)
    return out


TABLES = {
    "TABLE1_KK": tb.TABLE1_KK,
    "TABLE6_TENSOR_C": tb.TABLE6_TENSOR_C,
    "TABLE7_TENSOR_T": tb.TABLE7_TENSOR_T,
}


def write_fixtures(directory: Path = FIXTURE_DIR) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for name, m in build_modules().items():
        meta = {"bootstrap_asserted": True, "provenance": PROVENANCE[name].replace(" ", "_")}
        path = directory / f"{name}{SUFFIX}"
        path.write_text(serialize(m, name, meta), encoding="utf-8")
        written.append(path)
    return written


# ---------------------------------------------------------------- access

def catalog_dir() -> Path:
    env = os.environ.get("CRT_CATALOG_PATH")
    return Path(env) if env else FIXTURE_DIR


_CACHE = {}


def _load(directory: Path) -> dict:
    key = str(directory.resolve()) if directory.exists() else str(directory)
    if key not in _CACHE:
        entries = {}
        if directory.is_dir():
            for path in sorted(directory.glob(f"*{SUFFIX}")):
                doc = parse_document(path.read_text(encoding="utf-8"))
                name = doc.name or path.stem
                prov = str(doc.meta.get("provenance", "")).replace("_", " ")
                entries[name] = CatalogEntry(name, module=doc.module, provenance=prov)
        for name, table in TABLES.items():
            entries[name] = CatalogEntry(name, table=table, provenance=PROVENANCE[name])
        _CACHE[key] = entries
    return _CACHE[key]


def entries(directory=None) -> dict:
    return _load(Path(directory) if directory else catalog_dir())


def get(name: str, directory=None) -> CatalogEntry:
    try:
        return entries(directory)[name]
    except KeyError:
        raise UnknownEntry(name) from None


def module(name: str, directory=None) -> CrtModule:
    e = get(name, directory)
    if not e.is_module:
        raise UnknownEntry(f"{name} is a table, not a module")
    return e.module


def list_names(prefix: str = "", directory=None) -> list:
    return sorted(n for n in entries(directory) if n.startswith(prefix))


def module_names(directory=None) -> list:
    return sorted(n for n, e in entries(directory).items() if e.is_module)


# --------------------------------------------------------- colimit system

def cuntz_system(stages: int = 6, alpha: int = 0, directory=None) -> ColimitSystem:
    """The Cuntz modules k = 2, 3, ... under the connecting maps, with N2 claimed.

    The connecting map doubles the unit class in KO_0 and sends the second
    KO_2 summand to (alpha, 1); the cocone sends the unit class of stage k
    to 1/2^k and the second KO_2 summand to the generator of KO_2(N2).
    """
    from .free_crt import morphism_on_generators
    avail = entries(directory)
    mods = []
    for k in range(2, 2 + stages):
        name = f"KCRT_CUNTZ_k{k}"
        mods.append(avail[name].module if name in avail else build_cuntz(k))
    n2 = avail["KCRT_N2"].module if "KCRT_N2" in avail else build_n2()
    maps = tuple(
        morphism_on_generators(a, b, [(("O", 0, (1,)), (2,)), (("O", 2, (0, 1)), (alpha, 1))])
        for a, b in zip(mods, mods[1:]))
    cocone = tuple(
        morphism_on_generators(m, n2, [(("O", 0, (1,)), (Fraction(1, 2 ** k),)),
                                       (("O", 2, (0, 1)), (1,))])
        for k, m in zip(range(2, 2 + stages), mods))
    return ColimitSystem(tuple(mods), maps, n2, cocone, stages)


# -------------------------------------------------------------- selftest

@dataclass
class SelftestReport:
    ok: bool = True
    lines: list = field(default_factory=list)
    failures: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    def record(self, label, ok, detail=""):
        self.lines.append(f"{'pass' if ok else 'FAIL'}  {label}" + (f": {detail}" if detail else ""))
        if not ok:
            self.ok = False
            self.failures.append(label)


def _groups_match(m: CrtModule, expected: dict):
    for x in PARTS:
        for d in range(PERIOD):
            got = m.group(x, d)
            want = AbelianGroup.parse(expected[x][d])
            if got != want:
                return f"{x}/{d}: {got} vs {want}"
    return None


def table1_mismatches(directory=None) -> list:
    from .uct import kk_real
    mods = {"R": module("KCRT_R", directory), "C": module("KCRT_C", directory),
            "T": module("KCRT_T", directory)}
    bad = []
    for (a, b), row in tb.TABLE1_KK.items():
        got = kk_real(mods[a], mods[b])
        for n, want in enumerate(row):
            g = got[n].resolved
            if g is None or g != AbelianGroup.parse(want):
                bad.append(f"KK_{n}({a},{b}): {g} vs {want}")
    return bad


def tensor_mismatches(directory=None) -> list:
    from .free_crt import tensor_monogenic
    bad = []
    for X, table in (("U", tb.TABLE6_TENSOR_C), ("T", tb.TABLE7_TENSOR_T)):
        for row, expected in table.items():
            t = tensor_monogenic(X, 0, module(f"KCRT_{row}", directory))
            diff = _groups_match(t, expected)
            if diff:
                bad.append(f"F(b,0,{X}) x {row} {diff}")
    return bad


def selftest(directory=None) -> SelftestReport:
    rep = SelftestReport()
    ents = entries(directory)
    names = [n for n, e in ents.items() if e.is_module]
    if not names:
        rep.warnings.append("catalog contains no module fixtures")
        rep.lines.append("warning: no module fixtures found, nothing to check")
        return rep
    for name in sorted(names):
        m = ents[name].module
        r, a = check_relations(m), check_acyclic(m)
        rep.record(f"{name} relations", r.ok, "" if r.ok else str(r))
        rep.record(f"{name} acyclic", a.ok, "" if a.ok else str(a))
    required = {"KCRT_R", "KCRT_C", "KCRT_T", "KCRT_N1", "KCRT_N2"}
    missing = required - set(names)
    if missing:
        rep.warnings.append(f"regressions skipped, missing {sorted(missing)}")
        return rep
    t0 = time.perf_counter()
    bad = table1_mismatches(directory)
    rep.record("KK-groups of R, C, T", not bad, "; ".join(bad[:3]) or f"{time.perf_counter() - t0:.2f}s")
    bad = tensor_mismatches(directory)
    rep.record("tensor with F(b,0,C) and F(b,0,T)", not bad, "; ".join(bad[:3]))
    res = verify_colimit(cuntz_system(directory=directory))
    rep.record("Cuntz system converges to N2", res.ok, str(res))
    return rep


__all__ = [
    "CatalogEntry", "UnknownEntry", "SelftestReport", "get", "module", "list_names",
    "module_names", "entries", "selftest", "cuntz_system", "build_modules", "write_fixtures",
    "catalog_dir", "TABLES", "PROVENANCE",
]
