"""Command-line interface.

Module arguments are either paths to ``crtmod v1`` files or catalog names.
Exit codes: 0 success, 1 validation failure, 2 parse error or unknown
input, 3 unsupported group class, 4 indeterminate.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog
from .crt_core import PARTS, CrtModule, check_acyclic, check_relations
from .free_crt import FreenessPresentationFailure, NotAcyclic, free_resolution, tensor_monogenic
from .graded_group import PERIOD, AbelianGroup, UnsupportedGroupClass
from .hom_ext import hom_crt
from .modfile import ParseError, parse_document, serialize
from .uct import kk_crt, kk_equivalent

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_UNSUPPORTED, EXIT_INDETERMINATE = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def load_module(ref: str) -> CrtModule:
    path = Path(ref)
    if path.is_file():
        return parse_document(path.read_text(encoding="utf-8")).module
    try:
        return catalog.module(ref)
    except catalog.UnknownEntry:
        raise InputError(f"no file or catalog module named {ref!r}") from None


def _summands(G: AbelianGroup):
    return [str(s) for s in G.canonical_group().summands]


def _selected(args):
    parts = [args.part] if args.part else list(PARTS)
    degrees = [args.degree % PERIOD] if args.degree is not None else list(range(PERIOD))
    return parts, degrees


def _groups_json(group_of, args):
    parts, degrees = _selected(args)
    return {x: {str(n): _summands(group_of(x, n)) for n in degrees} for x in parts}


def _groups_table(group_of, args, title=""):
    parts, degrees = _selected(args)
    cells = {(x, n): str(group_of(x, n).canonical_group()) for x in parts for n in degrees}
    width = max([len(c) for c in cells.values()] + [3])
    lines = [title] if title else []
    lines.append("   " + " ".join(f"{n:>{width}}" for n in degrees))
    for x in parts:
        lines.append(f"{x}  " + " ".join(f"{cells[(x, n)]:>{width}}" for n in degrees))
    return "\n".join(lines)


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------- commands

def cmd_validate(args):
    m = load_module(args.module)
    rel, acy = check_relations(m), check_acyclic(m)
    payload = {
        "relations": {"ok": rel.ok, "failures": [[a, d] for a, d in rel.failures]},
        "acyclic": {"ok": acy.ok, "failures": [[a, d] for a, d in acy.failures]},
    }
    _emit(args, payload, f"relations: {rel}\nacyclic: {acy}")
    return EXIT_OK if rel.ok and acy.ok else EXIT_INVALID


def cmd_hom(args):
    res = hom_crt(load_module(args.source), load_module(args.target))
    _emit(args, {"groups": _groups_json(res.group, args)},
          _groups_table(res.group, args, "Hom"))
    return EXIT_OK


def cmd_ext(args):
    ext = hom_crt(load_module(args.source), load_module(args.target)).ext
    _emit(args, {"groups": _groups_json(ext.group, args)}, _groups_table(ext.group, args, "Ext"))
    return EXIT_OK


def cmd_kk(args):
    res = kk_crt(load_module(args.source), load_module(args.target), bootstrap_asserted=True)
    parts, degrees = _selected(args)
    payload = {
        "bootstrap_asserted": res.bootstrap_asserted,
        "parts": {x: {str(n): res.term(x, n).as_dict() for n in degrees} for x in parts},
    }
    lines = []
    for x in parts:
        for n in degrees:
            t = res.term(x, n)
            mid = str(t.resolved.canonical_group()) if t.resolved is not None else "?"
            lines.append(f"{x}/{n}: hom {t.hom_term.canonical_group()}  "
                         f"ext {t.ext_term.canonical_group()}  kk {mid}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _parse_gen(text):
    kind, sep, deg = text.partition(":")
    if not sep or kind not in ("R", "C", "T"):
        raise InputError(f"--gen expects R:i, C:i or T:i, got {text!r}")
    try:
        return kind, int(deg)
    except ValueError:
        raise InputError(f"bad degree in --gen {text!r}") from None


def cmd_tensor(args):
    kind, i = _parse_gen(args.gen)
    t = tensor_monogenic(kind, i, load_module(args.module))
    if args.json:
        print(json.dumps({"groups": _groups_json(t.group, args)}, indent=2, sort_keys=True))
    elif args.emit:
        sys.stdout.write(serialize(t, f"F(b,{i},{kind})x{args.module}"))
    else:
        print(_groups_table(t.group, args, f"F(b,{i},{kind}) x {args.module}"))
    return EXIT_OK


def cmd_iso(args):
    r = kk_equivalent(load_module(args.first), load_module(args.second))
    payload = {"verdict": r.verdict}
    if r.verdict == "Equivalent":
        text = "Equivalent"
    elif r.verdict == "NotEquivalent":
        payload["invariant"] = r.invariant
        text = f"NotEquivalent ({r.invariant})"
    else:
        payload["reason"] = r.reason
        text = f"Indeterminate ({r.reason})"
    _emit(args, payload, text)
    return EXIT_INDETERMINATE if r.verdict == "Indeterminate" else EXIT_OK


def cmd_resolve(args):
    res = free_resolution(load_module(args.module))

    def gens(spec):
        return [{"part": g.part, "degree": g.degree} for g in spec.generators]

    payload = {"F0": gens(res.F0), "F1": gens(res.F1)}
    text = "\n".join(
        f"{k}: " + (", ".join(f"{g['part']}@{g['degree']}" for g in v) or "0")
        for k, v in payload.items())
    _emit(args, payload, text)
    return EXIT_OK


def cmd_catalog(args):
    if args.action == "list":
        names = catalog.list_names()
        _emit(args, {"names": names}, "\n".join(names))
        return EXIT_OK
    if args.action == "show":
        if not args.name:
            raise InputError("catalog show needs a NAME")
        try:
            e = catalog.get(args.name)
        except catalog.UnknownEntry:
            raise InputError(f"unknown catalog entry {args.name!r}") from None
        if e.is_module:
            if args.json:
                print(json.dumps({"name": e.name, "provenance": e.provenance,
                                  "groups": _groups_json(e.module.group, args)},
                                 indent=2, sort_keys=True))
            else:
                sys.stdout.write(serialize(e.module, e.name))
        else:
            table = {"|".join(k) if isinstance(k, tuple) else k: v for k, v in e.table.items()}
            if args.json:
                print(json.dumps({"name": e.name, "provenance": e.provenance, "table": table},
                                 indent=2, sort_keys=True))
            else:
                print(f"# {e.provenance}")
                for k, v in table.items():
                    print(f"{k}: {v}")
        return EXIT_OK
    rep = catalog.selftest()
    _emit(args, {"ok": rep.ok, "failures": rep.failures, "warnings": rep.warnings,
                 "lines": rep.lines}, "\n".join(rep.lines + [f"warning: {w}" for w in rep.warnings]))
    return EXIT_OK if rep.ok else EXIT_INVALID


# ------------------------------------------------------------------ parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--part", choices=PARTS)
    common.add_argument("--degree", type=int)
    ap = argparse.ArgumentParser(prog="crtkit", parents=[common],
                                 description="CRT-module computations")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("validate", cmd_validate, "module", help="check relations and acyclicity")
    add("hom", cmd_hom, "source", "target", help="Hom_CRT groups")
    add("ext", cmd_ext, "source", "target", help="Ext_CRT groups")
    add("kk", cmd_kk, "source", "target", help="groups of the UCT sequence")
    t = add("tensor", cmd_tensor, "module", help="tensor with a free monogenic module")
    t.add_argument("--gen", required=True, help="R:i, C:i or T:i")
    t.add_argument("--emit", action="store_true", help="print the module in crtmod format")
    add("iso", cmd_iso, "first", "second", help="decide KK-equivalence")
    add("resolve", cmd_resolve, "module", help="free resolution of an acyclic module")
    c = add("catalog", cmd_catalog, help="list, show or selftest the fixtures")
    c.add_argument("action", choices=["list", "show", "selftest"])
    c.add_argument("name", nargs="?")
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_PARSE if e.code else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, InputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except (NotAcyclic, FreenessPresentationFailure) as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID
    except UnsupportedGroupClass as e:
        print(f"unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
