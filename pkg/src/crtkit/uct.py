"""Group data of the universal coefficient sequence 0 -> Ext -> KK -> Hom -> 0.

Only groups are produced. KK classes and the maps of the sequence are not
represented, so the middle group is reported only when every extension of
the two ends splits.
"""

from __future__ import annotations

from dataclasses import dataclass

from .crt_core import PARTS, CrtModule, Indeterminate, check_acyclic, iso_test
from .free_crt import NotAcyclic
from .graded_group import PERIOD, AbelianGroup
from .hom_ext import hom_crt


def _split_forced(hom: AbelianGroup, ext: AbelianGroup) -> bool:
    """True when Ext^1_Z(hom, ext) = 0, so the middle group is hom + ext."""
    if hom.is_zero or ext.is_zero or hom.is_free or ext.is_divisible:
        return True
    ext_bounded = ext.is_finite
    for s in hom.summands:
        if s.kind == "C":
            # Ext(Z/m, E) = E/mE
            if not _m_divisible(ext, s.n):
                return False
        elif s.kind == "Q":
            # bounded groups are cotorsion
            if not ext_bounded:
                return False
        elif s.kind == "P":
            # Ext(Z(p^inf), E) vanishes when E is finite without p-torsion
            if not ext_bounded or any(t.n % s.n == 0 for t in ext.summands):
                return False
    return True


def _m_divisible(G: AbelianGroup, m: int) -> bool:
    """G = mG."""
    from math import gcd
    for s in G.summands:
        if s.kind == "Z" and m != 1:
            return False
        if s.kind == "C" and gcd(s.n, m) != 1:
            return False
    return True


@dataclass(frozen=True)
class UctTerm:
    hom_term: AbelianGroup
    ext_term: AbelianGroup
    resolved: AbelianGroup = None
    split_forced: bool = False

    @classmethod
    def of(cls, hom: AbelianGroup, ext: AbelianGroup) -> "UctTerm":
        if _split_forced(hom, ext):
            return cls(hom, ext, hom.direct_sum(ext).canonical_group(), True)
        return cls(hom, ext)

    def as_dict(self):
        return {
            "hom_term": str(self.hom_term),
            "ext_term": str(self.ext_term),
            "resolved": None if self.resolved is None else str(self.resolved),
            "split_forced": self.split_forced,
        }


@dataclass(frozen=True)
class UctResult:
    """terms[X][n] for X in O, U, T and n in 0..7."""

    terms: dict
    bootstrap_asserted: bool = False

    def term(self, x, n) -> UctTerm:
        return self.terms[x][n % PERIOD]

    def resolved_part(self, x):
        return [t.resolved for t in self.terms[x]]

    def as_dict(self):
        return {
            "bootstrap_asserted": self.bootstrap_asserted,
            "parts": {x: {str(n): t.as_dict() for n, t in enumerate(self.terms[x])}
                      for x in PARTS},
        }


def kk_crt(KA: CrtModule, KB: CrtModule, bootstrap_asserted: bool = False) -> UctResult:
    """Hom and Ext ends of the sequence, with the middle group when it is forced."""
    for name, m in (("first", KA), ("second", KB)):
        rep = check_acyclic(m)
        if not rep.ok:
            raise NotAcyclic(f"{name} argument is not acyclic: {rep.failures[0]}")
    res = hom_crt(KA, KB)
    terms = {}
    for x in PARTS:
        terms[x] = tuple(
            UctTerm.of(res.group(x, n), res.ext.group(x, n + 1)) for n in range(PERIOD))
    return UctResult(terms, bootstrap_asserted)


@dataclass(frozen=True)
class RealTerm:
    """One degree of the real corollary: [KA, KB]_n, Ext_[,] and the middle group."""

    degree: int
    brackets: AbelianGroup
    ext: AbelianGroup
    resolved: AbelianGroup = None
    split_forced: bool = False


def kk_real(KA: CrtModule, KB: CrtModule, bootstrap_asserted: bool = False):
    """The O-part of kk_crt, one RealTerm per degree."""
    res = kk_crt(KA, KB, bootstrap_asserted)
    return [RealTerm(n, t.hom_term, t.ext_term, t.resolved, t.split_forced)
            for n, t in enumerate(res.terms["O"])]


@dataclass(frozen=True)
class Equivalent:
    witness: object

    verdict = "Equivalent"


@dataclass(frozen=True)
class NotEquivalent:
    invariant: str

    verdict = "NotEquivalent"


@dataclass(frozen=True)
class IndeterminateResult:
    reason: str = ""

    verdict = "Indeterminate"


def kk_equivalent(KA: CrtModule, KB: CrtModule, bound: int = 4096):
    """KK-equivalence decided through an isomorphism of united K-theory."""
    r = iso_test(KA, KB, bound)
    if r.verdict == "equivalent":
        return Equivalent(r.morphism)
    if r.verdict == "not_equivalent":
        return NotEquivalent(r.invariant)
    return IndeterminateResult(r.invariant)


__all__ = [
    "UctTerm", "UctResult", "RealTerm", "kk_crt", "kk_real", "kk_equivalent",
    "Equivalent", "NotEquivalent", "IndeterminateResult", "Indeterminate",
]
