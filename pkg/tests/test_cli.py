import json

import pytest
from hypothesis import given, settings, strategies as st

from crtkit import catalog
from crtkit.cli import run
from crtkit.crt_core import CrtModule, check_relations, suspend
from crtkit.modfile import ParseError, parse, parse_document, serialize

NAMES = catalog.module_names()

BAD_PSI = """crtmod v1
name bad_psi
part U
  0: Z
  2: Z
op psiU
  0: 1
  2: 1
op betaU
  0: 1
"""


# ------------------------------------------------------------ file format

@pytest.mark.parametrize("name", NAMES)
def test_round_trip(name):
    m = catalog.module(name)
    assert parse(serialize(m)) == m
    doc = parse_document(serialize(m, name, {"bootstrap_asserted": True}))
    assert doc.name == name and doc.meta == {"bootstrap_asserted": True}


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(NAMES), st.integers(0, 7))
def test_round_trip_after_suspension(name, k):
    m = suspend(catalog.module(name), k)
    assert parse(serialize(m)) == m


def test_fixture_file_matches_catalog():
    text = (catalog.FIXTURE_DIR / "KCRT_N1.crtmod").read_text()
    assert parse(text) == catalog.module("KCRT_N1")


def test_zero_module_file():
    assert parse("crtmod v1\npart O\npart U\npart T\n") == CrtModule.zero()
    assert parse("crtmod v1\n") == CrtModule.zero()


def test_mutated_psi_parses_but_fails():
    m = parse(BAD_PSI)
    rep = check_relations(m)
    assert not rep.ok
    assert "psiU.betaU=-betaU.psiU" in [name for name, _ in rep.failures]


@pytest.mark.parametrize("text, line, fragment", [
    ("crtmod v2\n", 1, "header"),
    ("crtmod v1\nfoo\n", 2, "unknown section"),
    ("crtmod v1\npart X\n", 2, "part must be"),
    ("crtmod v1\npart O\n  9: Z\n", 3, "outside 0..7"),
    ("crtmod v1\npart O\n  0: Z/1\n", 3, "Z/n"),
    ("crtmod v1\npart O\n  0: Z\nop c\n  0: 1\n", 5, "c degree 0"),
    ("crtmod v1\npart O\n  0: Z\n  0: Z\n", 4, "given twice"),
    ("crtmod v1\nop nope\n", 2, "unknown operation"),
    ("crtmod v1\n  0: Z\n", 2, "outside a section"),
    ("crtmod v1\npart O\n  0: Z\npart U\n  0: Z\nop c\n  0: x\n", 7, "bad matrix entry"),
])
def test_parse_errors_carry_lines(text, line, fragment):
    with pytest.raises(ParseError) as e:
        parse(text)
    assert e.value.line == line
    assert fragment in str(e.value)


# -------------------------------------------------------------------- CLI

def cli(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_kk_json(capsys):
    code, out, _ = cli(capsys, "kk", "KCRT_C", "KCRT_C", "--part", "O", "--degree", "0", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["parts"]["O"]["0"]["resolved"] == "Z+Z"
    assert set(data["parts"]["O"]["0"]) == {"hom_term", "ext_term", "resolved", "split_forced"}


def test_validate(capsys, tmp_path):
    assert cli(capsys, "validate", "ZERO")[0] == 0
    bad = tmp_path / "bad.crtmod"
    bad.write_text(BAD_PSI)
    code, out, _ = cli(capsys, "validate", str(bad), "--json")
    assert code == 1
    assert ["psiU.betaU=-betaU.psiU", 0] in json.loads(out)["relations"]["failures"]


def test_iso(capsys):
    code, out, _ = cli(capsys, "iso", "KCRT_N1", "KCRT_N2", "--json")
    assert code == 0
    assert json.loads(out) == {"verdict": "NotEquivalent", "invariant": "O/0: Q vs Z(2^inf)"}
    code, out, _ = cli(capsys, "iso", "KCRT_N1", "KCRT_N1")
    assert code == 0 and out.strip() == "Equivalent"


def test_hom_and_ext(capsys):
    code, out, _ = cli(capsys, "hom", "FREE_R", "KCRT_N1", "--part", "O", "--json")
    assert code == 0
    assert json.loads(out)["groups"]["O"]["0"] == ["Q"]
    code, out, _ = cli(capsys, "ext", "KCRT_CUNTZ_k2", "KCRT_N", "--json")
    groups = json.loads(out)["groups"]
    assert all(v == [] for part in groups.values() for v in part.values())


def test_tensor(capsys, tmp_path):
    code, out, _ = cli(capsys, "tensor", "KCRT_N1", "--gen", "C:0", "--part", "U", "--json")
    assert code == 0 and json.loads(out)["groups"]["U"]["0"] == ["Q", "Q"]
    code, out, _ = cli(capsys, "tensor", "KCRT_N1", "--gen", "T:0", "--emit")
    assert code == 0 and str(parse(out).group("T", 0)) == "Q+Q"
    assert cli(capsys, "tensor", "KCRT_N1", "--gen", "X:0")[0] == 2


def test_resolve(capsys):
    code, out, _ = cli(capsys, "resolve", "KCRT_CUNTZ_k2", "--json")
    data = json.loads(out)
    assert code == 0 and data["F0"] and data["F1"]
    assert cli(capsys, "resolve", "KCRT_N1")[0] == 3


def test_exit_codes(capsys, tmp_path):
    assert cli(capsys, "hom", "KCRT_N1", "KCRT_N1")[0] == 3
    assert cli(capsys, "validate", "NO_SUCH_MODULE")[0] == 2
    garbled = tmp_path / "g.crtmod"
    garbled.write_text("crtmod v1\npart Q\n")
    code, _, err = cli(capsys, "validate", str(garbled))
    assert code == 2 and "line 2" in err
    assert cli(capsys, "frobnicate")[0] == 2


def test_iso_indeterminate_exit(capsys, tmp_path):
    from crtkit.crt_core import OPS, PARTS
    from crtkit.graded_group import GroupHom
    r = catalog.module("KCRT_R")
    flip = {x: GroupHom.scalar(r.part(x), -1 if x == "U" else 1) for x in PARTS}
    ops = {n: flip[OPS[n][1]] @ f @ flip[OPS[n][0]] for n, f in r.ops.items()}
    path = tmp_path / "twisted.crtmod"
    path.write_text(serialize(CrtModule(r.O, r.U, r.T, ops)))
    code, out, _ = cli(capsys, "iso", "KCRT_R", str(path), "--json")
    assert code == 4 and json.loads(out)["verdict"] == "Indeterminate"


def test_catalog_commands(capsys):
    code, out, _ = cli(capsys, "catalog", "list", "--json")
    names = json.loads(out)["names"]
    assert {"KCRT_N1", "KCRT_CUNTZ_k2", "ZERO"} <= set(names) and len(names) >= 12
    code, out, _ = cli(capsys, "catalog", "show", "KCRT_CUNTZ_k2", "--json")
    assert json.loads(out)["groups"]["O"]["0"] == ["Z/4"]
    code, out, _ = cli(capsys, "catalog", "show", "TABLE1_KK")
    assert code == 0 and "R|R" in out
    assert cli(capsys, "catalog", "show", "NOPE")[0] == 2
    assert cli(capsys, "catalog", "selftest")[0] == 0
