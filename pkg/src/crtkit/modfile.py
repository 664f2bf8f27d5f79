"""The ``crtmod v1`` text format.

A file looks like::

    crtmod v1
    name KCRT_N1
    meta bootstrap_asserted true
    part O
      0: Q
      4: Q
    part U
      ...
    op c
      0: 1
      4: 2
    op r
      2: 1 0; 0 1/2

Group lines list summands with ``+`` in coordinate order; degrees that are
not listed are 0. An operation block gives, per source degree, a matrix
whose rows (separated by ``;``) are target summands and whose columns are
source summands. Missing blocks are zero, except ``betaO`` which defaults
to the identity. A ``derive`` line recomputes eta_O, xi, eta_T and omega
from their defining composites, and sets missing c and r to zeta eps and
tau gamma.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .crt_core import OPS, PARTS, CrtModule
from .graded_group import PERIOD, AbelianGroup, AbMap, EntryError, GradedGroup, GroupHom

HEADER = "crtmod v1"


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True, eq=False)
class ModuleFile:
    module: CrtModule
    name: str = ""
    meta: dict = field(default_factory=dict)


def _group_text(G: AbelianGroup) -> str:
    return "+".join(str(s) for s in G.summands) or "0"


def _entry_text(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def serialize(m: CrtModule, name: str = "", meta: dict = None) -> str:
    lines = [HEADER]
    if name:
        lines.append(f"name {name}")
    for k, v in sorted((meta or {}).items()):
        lines.append(f"meta {k} {str(v).lower() if isinstance(v, bool) else v}")
    for x in PARTS:
        lines.append(f"part {x}")
        for d, G in enumerate(m.part(x).groups):
            if not G.is_zero:
                lines.append(f"  {d}: {_group_text(G)}")
    for name_ in OPS:
        f = m[name_]
        rows = []
        for d, block in enumerate(f.blocks):
            if block.domain.is_zero or block.codomain.is_zero:
                continue
            if all(e == 0 for row in block.matrix for e in row) and name_ != "betaO":
                continue
            mat = "; ".join(" ".join(_entry_text(e) for e in row) for row in block.matrix)
            rows.append(f"  {d}: {mat}")
        if rows or name_ == "betaO":
            lines.append(f"op {name_}")
            lines.extend(rows)
    return "\n".join(lines) + "\n"


def _parse_entry(tok: str, lineno: int) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"bad matrix entry {tok!r}") from None


def _parse_degree(tok: str, lineno: int) -> int:
    try:
        d = int(tok)
    except ValueError:
        raise ParseError(lineno, f"bad degree {tok!r}") from None
    if not 0 <= d < PERIOD:
        raise ParseError(lineno, f"degree {d} outside 0..7")
    return d


def parse_document(text: str) -> ModuleFile:
    lines = text.splitlines()
    content = [(i + 1, ln.split("#", 1)[0].rstrip()) for i, ln in enumerate(lines)]
    content = [(i, ln) for i, ln in content if ln.strip()]
    if not content or content[0][1].strip() != HEADER:
        raise ParseError(content[0][0] if content else 1, f"expected header {HEADER!r}")
    name, meta, derive = "", {}, False
    groups = {x: {} for x in PARTS}
    ops = {}
    section = None
    for lineno, ln in content[1:]:
        indented = ln[:1].isspace()
        words = ln.split()
        if not indented:
            key = words[0]
            if key == "name":
                name = " ".join(words[1:])
            elif key == "meta":
                if len(words) != 3:
                    raise ParseError(lineno, "meta lines take a key and a value")
                v = words[2]
                meta[words[1]] = {"true": True, "false": False}.get(v, v)
            elif key == "derive":
                derive = True
            elif key == "part":
                if len(words) != 2 or words[1] not in PARTS:
                    raise ParseError(lineno, "part must be one of O, U, T")
                section = ("part", words[1])
            elif key == "op":
                if len(words) != 2 or words[1] not in OPS:
                    raise ParseError(lineno, f"unknown operation {' '.join(words[1:])!r}")
                if words[1] in ops:
                    raise ParseError(lineno, f"operation {words[1]} given twice")
                section = ("op", words[1])
                ops[words[1]] = {}
            else:
                raise ParseError(lineno, f"unknown section {key!r}")
            continue
        if section is None:
            raise ParseError(lineno, "indented line outside a section")
        deg, sep, body = ln.strip().partition(":")
        if not sep:
            raise ParseError(lineno, "expected 'degree: value'")
        d = _parse_degree(deg.strip(), lineno)
        kind, key = section
        table = groups[key] if kind == "part" else ops[key]
        if d in table:
            raise ParseError(lineno, f"degree {d} given twice")
        if kind == "part":
            try:
                table[d] = (lineno, AbelianGroup.parse(body))
            except ValueError as e:
                raise ParseError(lineno, str(e)) from None
        else:
            rows = [r.split() for r in body.split(";")]
            table[d] = (lineno, [[_parse_entry(t, lineno) for t in r] for r in rows])
    parts = {
        x: GradedGroup(tuple(groups[x].get(d, (0, AbelianGroup()))[1] for d in range(PERIOD)))
        for x in PARTS}
    homs = {}
    for op_name, table in ops.items():
        src, dst, deg = OPS[op_name]
        a, b = parts[src], parts[dst]
        blocks = []
        for d in range(PERIOD):
            if d not in table:
                if op_name == "betaO":
                    blocks.append(AbMap.identity(a[d]))
                else:
                    blocks.append(AbMap(a[d], b[d + deg]))
                continue
            lineno, mat = table[d]
            if mat == [[]]:
                mat = []
            try:
                blocks.append(AbMap(a[d], b[d + deg], mat))
            except (EntryError, ValueError) as e:
                raise ParseError(lineno, f"{op_name} degree {d}: {e}") from None
        homs[op_name] = GroupHom(a, b, deg, tuple(blocks))
    if derive:
        m = CrtModule.build(parts["O"], parts["U"], parts["T"], homs)
    else:
        m = CrtModule(parts["O"], parts["U"], parts["T"], homs)
    return ModuleFile(m, name, meta)


def parse(text: str) -> CrtModule:
    return parse_document(text).module


__all__ = ["HEADER", "ParseError", "ModuleFile", "serialize", "parse", "parse_document"]
