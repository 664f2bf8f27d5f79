from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from crtkit import catalog
from crtkit.crt_core import (
    PARTS, CrtModule, CrtMorphism, check_acyclic, check_relations, cokernel_module, direct_sum,
    suspend,
)
from crtkit.free_crt import FreeSpec, generator, monogenic, morphism_on_generators
from crtkit.graded_group import AbelianGroup, UnsupportedGroupClass
from crtkit.hom_ext import (
    GradedTriple, c_construction, ext_crt, hom_crt, hom_free, hom_induced, t_construction,
)

import oracles

G = AbelianGroup.parse
FR = monogenic(0, "O")
KR, KC, KT = (catalog.module(n) for n in ("KCRT_R", "KCRT_C", "KCRT_T"))
N1 = catalog.module("KCRT_N1")
K2 = catalog.module("KCRT_CUNTZ_k2")
NAMES = catalog.module_names()
FG_NAMES = [n for n in NAMES if catalog.module(n).finitely_generated]


# ------------------------------------------------------ the two shapes

def test_b_construction_examples():
    assert c_construction(CrtModule.zero()).is_zero
    assert c_construction(KR).group("U", 0) == G("Z+Z")
    assert c_construction(N1).group("O", 0) == G("Q")


def test_t_construction_examples():
    assert t_construction(CrtModule.zero()).is_zero
    T = t_construction(KR)
    assert all(T.group("U", n) == G("Z") for n in range(8))
    assert t_construction(N1).group("O", 0) == G("Q")


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("shape", [c_construction, t_construction])
def test_shapes_are_acyclic(name, shape):
    m = shape(catalog.module(name))
    assert check_relations(m).ok
    assert check_acyclic(m).ok


# ----------------------------------------------------------- free sources

def test_hom_free_examples():
    assert hom_free(FreeSpec.of(("O", 0)), N1) == N1
    assert hom_free(FreeSpec(), N1).is_zero
    h = hom_free(FreeSpec.of(("O", 0), ("U", 0)), KR)
    assert h.group("O", 0) == G("Z+Z")
    assert GradedTriple.of(h) == GradedTriple.of(direct_sum(KR, c_construction(KR)))


def test_hom_induced_identity_and_doubling():
    spec = FreeSpec.of(("O", 0))
    b = generator("O")
    ident = hom_induced(spec, spec, [b], N1)
    double = hom_induced(spec, spec, [FR.group("O", 0).scale(2, b)], N1)
    for x in PARTS:
        for n in range(8):
            d = len(N1.group(x, n))
            eye = [[int(i == j) for j in range(d)] for i in range(d)]
            assert [list(r) for r in ident.part(x)[n].matrix] == eye
            assert [list(r) for r in double.part(x)[n].matrix] == [[2 * e for e in r] for r in eye]


def test_hom_induced_psi_swaps():
    spec = FreeSpec.of(("U", 0))
    b = generator("U")
    mu = monogenic(0, "U").apply("psiU", 0, b)
    ind = hom_induced(spec, spec, [mu], FR)
    for n in (0, 2, 4, 6):
        assert [list(r) for r in ind.part("U")[n].matrix] == [[0, 1], [1, 0]]
        assert ind.part("O")[n].matrix == FR["psiU"][n].matrix


# ------------------------------------------------------------------ Hom

@pytest.mark.parametrize("name", NAMES)
def test_hom_from_free_real_is_identity(name):
    N = catalog.module(name)
    res = hom_crt(FR, N)
    assert res.groups == GradedTriple.of(N)
    assert res.module == N


def test_hom_examples():
    assert hom_crt(K2, CrtModule.zero()).groups.is_zero
    res = hom_crt(KC, KR)
    assert [str(g) for g in res.part("O").groups] == ["Z", "0", "Z", "0"] * 2


@pytest.mark.parametrize("src", FG_NAMES)
@pytest.mark.parametrize("dst", NAMES)
def test_complex_part_matches_ku_modules(src, dst):
    M, N = catalog.module(src), catalog.module(dst)
    res = hom_crt(M, N)
    for n in range(8):
        assert res.group("U", n) == G(oracles.hom_ku(M, N, n))


@pytest.mark.parametrize("i", range(8))
def test_real_part_counts_morphisms(i):
    P = suspend(K2, i)
    g0, g2 = P.group("O", 0), P.group("O", 2)
    count = 0
    for a, b in product(g0.elements(), g2.elements()):
        try:
            morphism_on_generators(K2, P, [(("O", 0, (1,)), a), (("O", 2, (0, 1)), b)])
        except ValueError:
            continue
        count += 1
    assert hom_crt(K2, K2).group("O", i).order() == count


@settings(max_examples=12, deadline=None)
@given(st.sampled_from(FG_NAMES), st.sampled_from(NAMES), st.integers(-8, 8))
def test_suspension_formula(src, dst, k):
    M, N = catalog.module(src), catalog.module(dst)
    assert hom_crt(suspend(M, k), N).groups == hom_crt(M, N).groups.shift(-k)


def test_non_fg_source_is_unsupported():
    with pytest.raises(UnsupportedGroupClass):
        hom_crt(N1, N1)


# ------------------------------------------------------------------ Ext

@pytest.mark.parametrize("dst", NAMES)
def test_ext_vanishes_on_free(dst):
    N = catalog.module(dst)
    for F in (FR, monogenic(3, "U"), monogenic(5, "T")):
        assert ext_crt(F, N).is_zero


@pytest.mark.parametrize("src", FG_NAMES)
def test_ext_into_injective_vanishes(src):
    assert ext_crt(catalog.module(src), catalog.module("KCRT_N")).is_zero


def test_ext_of_cuntz_into_reals_is_nonzero():
    assert not ext_crt(K2, KR).is_zero


def test_ext_independent_of_generator_order():
    K3 = catalog.module("KCRT_CUNTZ_k3")
    a = ext_crt(direct_sum(K2, K3), KT)
    b = ext_crt(direct_sum(K3, K2), KT)
    assert a == b
    parts = [ext_crt(K2, KT), ext_crt(K3, KT)]
    for x in PARTS:
        for n in range(8):
            assert a.group(x, n) == parts[0].group(x, n).direct_sum(parts[1].group(x, n))


ETA = {"O": "etaO", "T": "etaT"}


@pytest.mark.parametrize("x", PARTS)
def test_ext_of_cokernel_of_two(x):
    C, _ = cokernel_module(CrtMorphism.identity(FR).scaled(2))
    ext = ext_crt(C, KR)
    for n in range(8):
        G0, G1 = KR.group(x, n), KR.group(x, n + 1)
        if x == "U":
            eta = [[0] * len(G0) for _ in range(len(G1))]
        else:
            eta = oracles.integer_matrix(KR[ETA[x]][n])
        free, tors = oracles.ext_coker_two(KR, x, n, eta)
        assert ext.group(x, n) == AbelianGroup.from_canonical(free, tors)
    assert not ext.part(x).is_zero
