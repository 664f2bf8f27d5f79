from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from crtkit import catalog
from crtkit.crt_core import (
    OPS, PARTS, RELATION_IDS, CoconeMismatch, ColimitSystem, CrtModule, CrtMorphism,
    check_acyclic, check_relations, cokernel_module, direct_sum, is_injective, iso_test,
    kernel_module, suspend, validate_morphism, verify_colimit, verify_group_colimit,
)
from crtkit.free_crt import monogenic
from crtkit.graded_group import AbelianGroup, AbMap, GroupHom

G = AbelianGroup.parse
N1 = catalog.module("KCRT_N1")
N2 = catalog.module("KCRT_N2")
FR = monogenic(0, "O")
NAMES = catalog.module_names()


def test_relation_count():
    assert len(RELATION_IDS) == 27


def test_n1_spot_values():
    assert check_relations(N1).ok
    # r c = 2 on KO_0 = Q, with c_0 = 1 and r_0 = 2
    assert N1["c"][0].matrix[0][0] == 1 and N1["r"][0].matrix[0][0] == 2
    assert check_relations(CrtModule.zero()).ok


def test_mutated_c_breaks_rc():
    bad = N1.replace_block("c", 0, AbMap.zero(N1.group("O", 0), N1.group("U", 0)))
    rep = check_relations(bad)
    assert not rep.ok
    assert ("rc=2", 0) in rep.failures


def test_acyclic_examples():
    assert check_acyclic(catalog.module("KCRT_N")).ok
    assert check_acyclic(CrtModule.zero()).ok
    bad = N1.replace_block("eps", 0, AbMap.zero(N1.group("O", 0), N1.group("T", 0)))
    rep = check_acyclic(bad)
    assert not rep.ok
    assert any("(etaO^2, eps, tau.betaT^-1)" in label for label, _ in rep.failures)


@pytest.mark.parametrize("name", NAMES)
def test_catalog_module_is_valid(name):
    m = catalog.module(name)
    assert check_relations(m).ok
    assert check_acyclic(m).ok


# ---------------------------------------------------------- constructions

def test_suspend_examples():
    assert suspend(FR, 0) is FR
    assert suspend(FR, -1).group("O", 1) == G("Z")
    assert suspend(FR, -1).group("O", 0).is_zero
    s2 = suspend(N2, 2)
    for x in PARTS:
        for n in range(8):
            assert s2.group(x, n) == N2.group(x, n + 2)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["KCRT_N1", "KCRT_CUNTZ_k3", "FREE_T"]), st.integers(-9, 9), st.integers(-9, 9))
def test_suspend_composes(name, a, b):
    m = catalog.module(name)
    assert suspend(suspend(m, a), b) == suspend(m, a + b)
    assert suspend(m, 8 * a) == m
    assert check_relations(suspend(m, a)).ok


def test_direct_sum_examples():
    assert direct_sum(N1, CrtModule.zero()) == N1
    N = direct_sum(N1, suspend(N2, 2))
    assert N.group("O", 0) == G("Q+Z/2")
    assert iso_test(direct_sum(N1, N2), direct_sum(N2, N1)).verdict != "not_equivalent"
    assert check_relations(N).ok and check_acyclic(N).ok


def test_is_injective():
    assert is_injective(N1)
    assert not is_injective(FR)
    assert is_injective(CrtModule.zero())
    assert is_injective(catalog.module("KCRT_N"))


# -------------------------------------------------------------- morphisms

def test_validate_morphism():
    assert validate_morphism(CrtMorphism.identity(N1)).ok
    phi = catalog.cuntz_system(stages=2).maps[0]
    assert validate_morphism(phi).ok
    # multiplication by 2 on KO_0
    assert phi.fO[0].matrix[0][0] % 8 == 2
    half = CrtMorphism(N1, N1, 0, GroupHom.identity(N1.O), GroupHom.zero(N1.U, N1.U),
                       GroupHom.identity(N1.T))
    rep = validate_morphism(half)
    assert not rep.ok and "c" in [name for name, _ in rep.failures]


def test_morphism_algebra():
    one = CrtMorphism.identity(FR)
    two = one + one
    assert two.equals(one.scaled(2))
    assert (two - one).equals(one)
    assert (one @ two).equals(two)
    assert (one - one).is_zero


# ------------------------------------------------------------------- iso

def test_iso_examples():
    r = iso_test(N1, N1)
    assert r.verdict == "equivalent" and r.morphism.equals(CrtMorphism.identity(N1))
    r = iso_test(N1, N2)
    assert r.verdict == "not_equivalent" and r.invariant == "O/0: Q vs Z(2^inf)"
    r = iso_test(FR, suspend(FR, 1))
    assert r.verdict == "not_equivalent" and r.invariant == "O/0: Z vs Z/2"


def test_iso_finds_nontrivial_isomorphism():
    # the same Cuntz module with the sign of every U and T coordinate flipped
    m = catalog.module("KCRT_CUNTZ_k2")
    flip = {x: GroupHom.scalar(m.part(x), -1 if x != "O" else 1) for x in PARTS}
    ops = {}
    for name, f in m.ops.items():
        src, dst, _ = OPS[name]
        ops[name] = flip[dst] @ f @ flip[src]
    twisted = CrtModule(m.O, m.U, m.T, ops)
    r = iso_test(m, twisted)
    assert r.verdict == "equivalent"
    assert validate_morphism(r.morphism).ok


@pytest.mark.parametrize("pair", [("KCRT_N1", "KCRT_N2"), ("KCRT_CUNTZ_k2", "KCRT_CUNTZ_k3"),
                                  ("FREE_R", "FREE_C")])
def test_iso_symmetric(pair):
    a, b = (catalog.module(n) for n in pair)
    assert iso_test(a, b).verdict == iso_test(b, a).verdict == "not_equivalent"


# ------------------------------------------------- kernels and cokernels

def test_cokernel_of_two_on_free():
    C, proj = cokernel_module(CrtMorphism.identity(FR).scaled(2))
    assert C.group("O", 0) == G("Z/2")
    assert C.group("O", 4) == G("Z/2")
    assert check_relations(C).ok
    assert not check_acyclic(C).ok
    assert validate_morphism(proj).ok


def test_kernel_of_two_on_n2():
    K, inc = kernel_module(CrtMorphism.identity(N2).scaled(2))
    assert check_relations(K).ok and validate_morphism(inc).ok
    assert K.group("O", 0) == G("Z/2")


# -------------------------------------------------------------- colimits

def test_cuntz_colimit():
    rep = verify_colimit(catalog.cuntz_system(stages=6))
    assert rep.ok and rep.verified_stage == 6
    assert verify_colimit(catalog.cuntz_system(stages=6, alpha=1)).ok


def test_cuntz_ko0_row_group_level():
    stages = [G(f"Z/{2 ** k}") for k in range(2, 8)]
    maps = [AbMap(a, b, [[2]]) for a, b in zip(stages, stages[1:])]
    P = G("Z(2^inf)")
    cocone = [AbMap(s, P, [[Fraction(1, 2 ** k)]]) for k, s in zip(range(2, 8), stages)]
    assert verify_group_colimit(stages, maps, P, cocone, 6) == []
    # a constant Z/2 system only reaches the 2-torsion of Z(2^inf)
    Z2 = G("Z/2")
    fails = verify_group_colimit([Z2] * 3, [AbMap.identity(Z2)] * 2, P,
                                 [AbMap(Z2, P, [[Fraction(1, 2)]])] * 3, 3)
    assert fails == ["Z(2^inf) element 1/4 not reached"]


def test_constant_system():
    one = CrtMorphism.identity(N1)
    sys = ColimitSystem((N1, N1, N1), (one, one), N1, (one, one, one), 3)
    assert verify_colimit(sys).ok


def test_zero_maps_kill_everything():
    Z2, zero = G("Z/2"), G("0")
    stages = [Z2] * 4
    maps = [AbMap.zero(Z2, Z2)] * 3
    cocone = [AbMap.zero(Z2, zero)] * 4
    assert verify_group_colimit(stages, maps, zero, cocone, 4) == []
    # identity maps keep the kernel alive
    maps = [AbMap.identity(Z2)] * 3
    assert verify_group_colimit(stages, maps, zero, cocone, 4)


def test_claimed_too_big():
    Z2, Z4 = G("Z/2"), G("Z/4")
    stages = [Z2] * 3
    maps = [AbMap.identity(Z2)] * 2
    cocone = [AbMap(Z2, Z4, [[2]])] * 3
    fails = verify_group_colimit(stages, maps, Z4, cocone, 3)
    assert fails and "not reached" in fails[0]


def test_cocone_must_commute():
    Z2 = G("Z/2")
    stages = [Z2] * 2
    with pytest.raises(CoconeMismatch):
        verify_group_colimit(stages, [AbMap.zero(Z2, Z2)], Z2,
                             [AbMap.identity(Z2)] * 2, 2)
