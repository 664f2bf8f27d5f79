"""Computations with CRT-modules: united K-theory data, Hom and Ext, and the
group side of the universal coefficient sequence for KK-theory of real
C*-algebras."""

from .crt_core import (
    ColimitSystem, CrtModule, CrtMorphism, check_acyclic, check_relations, direct_sum,
    is_injective, iso_test, suspend, verify_colimit,
)
from .free_crt import (
    FreeResolution, FreeSpec, Gen, free_morphism, free_resolution, monogenic,
    submodule_generated, tensor_monogenic,
)
from .graded_group import AbelianGroup, AbMap, GradedGroup, GroupHom
from .hom_ext import c_construction, ext_crt, hom_crt, hom_free, t_construction
from .modfile import parse, serialize
from .uct import kk_crt, kk_equivalent, kk_real

__all__ = [
    "AbelianGroup", "AbMap", "GradedGroup", "GroupHom", "CrtModule", "CrtMorphism",
    "ColimitSystem", "check_relations", "check_acyclic", "suspend", "direct_sum",
    "is_injective", "iso_test", "verify_colimit", "FreeSpec", "Gen", "FreeResolution",
    "monogenic", "free_morphism", "free_resolution", "submodule_generated",
    "tensor_monogenic", "c_construction", "t_construction", "hom_free", "hom_crt", "ext_crt",
    "kk_crt", "kk_real", "kk_equivalent", "parse", "serialize",
]
