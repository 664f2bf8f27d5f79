"""Free CRT-modules, morphisms out of them, generated submodules and
free resolutions.

The three monogenic free modules are realized concretely: F(b,0,R) is the
real K-theory fixture, F(b,0,C) is B(F(b,0,R)) and F(b,0,T) is the
desuspended T(F(b,0,R)). Every element of a monogenic free module is an
integer combination of words in the operations applied to the generator;
a morphism out of it is fixed by where the generator goes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .crt_core import (
    OPS, PARTS, CrtModule, CrtMorphism, check_acyclic, direct_sum_all, group_morphism_parts,
    suspend,
)
from .graded_group import (
    PERIOD, AbelianGroup, AbMap, GroupHom, UnsupportedGroupClass, ZZ, cokernel_map, image_map,
    kernel_map, solve,
)

WORD_OPS = tuple(n for n in OPS if n != "betaO")


class NotAcyclic(ValueError):
    pass


class FreenessPresentationFailure(RuntimeError):
    pass


@dataclass(frozen=True)
class Gen:
    id: str
    degree: int
    part: str


@dataclass(frozen=True)
class FreeSpec:
    generators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        ids = [g.id for g in gens]
        if len(set(ids)) != len(ids):
            raise ValueError("generator ids must be unique")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, *pairs):
        """FreeSpec.of(("O", 0), ("U", 2), ...)"""
        return cls(tuple(Gen(f"g{k}", d, x) for k, (x, d) in enumerate(pairs)))

    def __len__(self):
        return len(self.generators)


# ------------------------------------------------------------- monogenic

@lru_cache(maxsize=None)
def _base(X) -> CrtModule:
    from ._tables import FREE_R_GROUPS, FREE_R_ROWS, table_module
    from .hom_ext import c_construction, t_construction
    R = table_module(FREE_R_GROUPS, FREE_R_ROWS)
    if X == "O":
        return R
    if X == "U":
        return c_construction(R)
    return suspend(t_construction(R), -1)


# generator of F(b,0,X), as an element of part X in degree 0
_GEN_VALUES = {"O": (1,), "U": (1, 0), "T": (0, 1)}


def generator(X):
    m = _base(X)
    return m.group(X, 0).element(_GEN_VALUES[X])


def monogenic(i: int, X: str) -> CrtModule:
    """F(b,i,X): the free module on one generator of part X in degree i."""
    return _monogenic(i % PERIOD, X)


@lru_cache(maxsize=None)
def _monogenic(i, X):
    return suspend(_base(X), -i)


def _memo(N: CrtModule) -> dict:
    # per-instance cache; modules are immutable once built
    return N.__dict__.setdefault("_memo", {})


@lru_cache(maxsize=None)
def _words(X):
    """Spanning words of F(b,0,X) for every part and degree.

    Returns {(Y, d): (words, W)} where W is the AbMap Z^k -> F^Y_d whose
    columns are the images of the generator under the words.
    """
    m = _base(X)
    spans = {(Y, d): ([], []) for Y in PARTS for d in range(PERIOD)}
    queue = deque([((), X, 0, generator(X))])
    while queue:
        word, Y, d, v = queue.popleft()
        if all(t == 0 for t in v):
            continue
        words, imgs = spans[(Y, d)]
        G = m.group(Y, d)
        if imgs:
            W = AbMap.from_columns(AbelianGroup((ZZ,) * len(imgs)), G, imgs)
            if solve(W, v) is not None:
                continue
        words.append(word)
        imgs.append(v)
        for name in WORD_OPS:
            src, dst, deg = OPS[name]
            if src == Y:
                queue.append((word + (name,), dst, (d + deg) % PERIOD, m.apply(name, d, v)))
    out = {}
    for key, (words, imgs) in spans.items():
        G = m.group(*key)
        W = AbMap.from_columns(AbelianGroup((ZZ,) * len(imgs)), G, imgs)
        out[key] = (tuple(words), W)
    return out


def word_coefficients(X, Y, d, y):
    """Integer coefficients expressing y in F(b,0,X)^Y_d through words."""
    words, W = _words(X)[(Y, d % PERIOD)]
    c = solve(W, y)
    if c is None:
        raise ValueError("element is not in the module")
    return words, [int(t) for t in c]


def word_map(N: CrtModule, X, i, word) -> AbMap:
    """The composite of the operations in ``word`` on N, starting at N^X_i."""
    key = ("word", X, i % PERIOD, word)
    memo = _memo(N)
    if key not in memo:
        memo[key] = _word_map(N, X, i, word)
    return memo[key]


def _word_map(N, X, i, word):
    if word:
        name = word[-1]
        deg = i + sum(OPS[w][2] for w in word[:-1])
        return N[name][deg].compose(word_map(N, X, i, word[:-1]))
    return AbMap.identity(N.group(X, i))


def eval_map(N: CrtModule, X, i, Y, d, y) -> AbMap:
    """t -> phi_t(y) for y in F(b,i,X)^Y_d, where phi_t sends b to t in N^X_i."""
    key = ("eval", X, i % PERIOD, Y, d % PERIOD, tuple(y))
    memo = _memo(N)
    if key not in memo:
        memo[key] = _eval_map(N, X, i, Y, d, y)
    return memo[key]


def _eval_map(N, X, i, Y, d, y):
    words, coeffs = word_coefficients(X, Y, d - i, y)
    out = AbMap(N.group(X, i), N.group(Y, d))
    for w, c in zip(words, coeffs):
        if c:
            out = out + word_map(N, X, i, w).scaled(c)
    return out


def adjunct_element(i, X, N: CrtModule, target) -> CrtMorphism:
    """The morphism F(b,i,X) -> N sending the generator to ``target``."""
    G = N.group(X, i)
    t = G.element(target)
    F = monogenic(i, X)
    blocks = {}
    for Y in PARTS:
        row = []
        for d in range(PERIOD):
            A = F.group(Y, d)
            cols = [eval_map(N, X, i, Y, d, e)(t) for e in A.generators()]
            row.append(AbMap.from_columns(A, N.group(Y, d), cols))
        blocks[Y] = row
    return group_morphism_parts(F, N, blocks)


def realize(spec: FreeSpec) -> CrtModule:
    return direct_sum_all(monogenic(g.degree, g.part) for g in spec.generators)


def _offsets(spec: FreeSpec, Y, d):
    out, off = [], 0
    for g in spec.generators:
        out.append(off)
        off += len(monogenic(g.degree, g.part).group(Y, d))
    return out, off


def generator_element(spec: FreeSpec, k: int):
    """(part, degree, element) of the k-th generator inside realize(spec)."""
    g = spec.generators[k]
    offs, total = _offsets(spec, g.part, g.degree)
    vec = [Fraction(0)] * total
    for t, v in enumerate(generator(g.part)):
        vec[offs[k] + t] = Fraction(v)
    return g.part, g.degree, tuple(vec)


def split_element(spec: FreeSpec, Y, d, y):
    """Components of y in F^Y_d, one per generator summand."""
    offs, total = _offsets(spec, Y, d)
    out = []
    for k, g in enumerate(spec.generators):
        n = len(monogenic(g.degree, g.part).group(Y, d))
        out.append(tuple(y[offs[k]:offs[k] + n]))
    return out


def free_morphism(spec: FreeSpec, N: CrtModule, images, source: CrtModule = None) -> CrtMorphism:
    """The morphism realize(spec) -> N sending generator k to images[k]."""
    F = source if source is not None else realize(spec)
    blocks = {}
    for Y in PARTS:
        row = []
        for d in range(PERIOD):
            cols = []
            for g, img in zip(spec.generators, images):
                A = monogenic(g.degree, g.part).group(Y, d)
                t = N.group(g.part, g.degree).element(img)
                for e in A.generators():
                    cols.append(eval_map(N, g.part, g.degree, Y, d, e)(t))
            row.append(AbMap.from_columns(F.group(Y, d), N.group(Y, d), cols))
        blocks[Y] = row
    return group_morphism_parts(F, N, blocks)


# ---------------------------------------------------------------- tensor

def tensor_monogenic(X: str, i: int, N: CrtModule) -> CrtModule:
    """F(b,i,X) tensored with N."""
    from .hom_ext import c_construction, t_construction
    if X in ("R", "O"):
        base = N
    elif X in ("C", "U"):
        base = c_construction(N)
    elif X == "T":
        base = suspend(t_construction(N), -1)
    else:
        raise ValueError(f"unknown generator type {X!r}")
    return suspend(base, -i)


# ------------------------------------------------------------ submodules

class _Span:
    """Subgroups of each M^Y_d spanned by explicit elements."""

    def __init__(self, M: CrtModule):
        self.M = M
        self.gens = {(Y, d): [] for Y in PARTS for d in range(PERIOD)}

    def contains(self, Y, d, v):
        if all(t == 0 for t in v):
            return True
        gs = self.gens[(Y, d)]
        if not gs:
            return False
        W = AbMap.from_columns(AbelianGroup((ZZ,) * len(gs)), self.M.group(Y, d), gs)
        return solve(W, v) is not None

    def saturate(self, seeds):
        """Close under all operations; returns True when something was added."""
        queue = deque(seeds)
        grew = False
        while queue:
            Y, d, v = queue.popleft()
            d %= PERIOD
            v = self.M.group(Y, d).element(v)
            if self.contains(Y, d, v):
                continue
            self.gens[(Y, d)].append(v)
            grew = True
            for name in WORD_OPS:
                src, dst, deg = OPS[name]
                if src == Y:
                    queue.append((dst, d + deg, self.M.apply(name, d, v)))
        return grew

    def inclusion(self, Y, d):
        gs = self.gens[(Y, d)]
        G = self.M.group(Y, d)
        W = AbMap.from_columns(AbelianGroup((ZZ,) * len(gs)), G, gs)
        return image_map(W)


def submodule_generated(M: CrtModule, seeds):
    """Smallest submodule containing the seeds, with its inclusion."""
    span = _Span(M)
    span.saturate([(Y, d, v) for Y, d, v in seeds])
    return _submodule_from_span(M, span)


def _submodule_from_span(M, span):
    from .graded_group import GradedGroup
    incl = {(Y, d): span.inclusion(Y, d) for Y in PARTS for d in range(PERIOD)}
    parts = {Y: GradedGroup(tuple(incl[(Y, d)].domain for d in range(PERIOD))) for Y in PARTS}
    ops = {}
    for name, (src, dst, deg) in OPS.items():
        blocks = []
        for d in range(PERIOD):
            i_src, i_dst = incl[(src, d)], incl[(dst, (d + deg) % PERIOD)]
            cols = []
            for e in i_src.domain.generators():
                img = M.apply(name, d, i_src(e))
                pre = solve(i_dst, img)
                if pre is None:
                    raise ArithmeticError(f"submodule is not closed under {name}")
                cols.append(pre)
            blocks.append(AbMap.from_columns(i_src.domain, i_dst.domain, cols))
        ops[name] = GroupHom(parts[src], parts[dst], deg, tuple(blocks))
    S = CrtModule(parts["O"], parts["U"], parts["T"], ops)
    inc = group_morphism_parts(
        S, M, {Y: [incl[(Y, d)] for d in range(PERIOD)] for Y in PARTS})
    return S, inc


# ------------------------------------------------------------ resolutions

@dataclass(frozen=True, eq=False)
class FreeResolution:
    F1: FreeSpec
    F0: FreeSpec
    mu1: CrtMorphism
    mu0: CrtMorphism
    M: CrtModule
    images1: tuple = ()  # mu1 of each F1 generator, as (part, degree, element of F0)

    def check(self) -> bool:
        from .graded_group import is_exact_at
        for x in PARTS:
            f, g = self.mu1.part(x), self.mu0.part(x)
            if not (g @ f).is_zero:
                return False
            if not is_exact_at(f, g):
                return False
            for d in range(PERIOD):
                if not kernel_map(f[d]).domain.is_zero:
                    return False
                if not cokernel_map(g[d]).codomain.is_zero:
                    return False
        return True


def _element_candidates(M: CrtModule):
    for Y in PARTS:
        for d in range(PERIOD):
            for e in M.group(Y, d).generators():
                yield Y, d, e


def _prune(M, gens):
    """Drop generators lying in the submodule spanned by the others."""
    gens = list(gens)
    k = 0
    while k < len(gens):
        span = _Span(M)
        span.saturate(gens[:k] + gens[k + 1:])
        if span.contains(*gens[k]):
            del gens[k]
        else:
            k += 1
    return gens


def presentation(M: CrtModule):
    """A free module F0 onto M: (spec, mu0, generators of ker mu0)."""
    if not M.finitely_generated:
        raise UnsupportedGroupClass("free resolutions need finitely generated groups")
    span = _Span(M)
    gens = []
    for Y, d, e in _element_candidates(M):
        if span.saturate([(Y, d, e)]):
            gens.append((Y, d, e))
    gens = _prune(M, gens)
    images = [e for _, _, e in gens]
    spec = FreeSpec(tuple(Gen(f"g{k}", d, Y) for k, (Y, d, _) in enumerate(gens)))
    F0 = realize(spec)
    mu0 = free_morphism(spec, M, images, source=F0)
    rels = []
    for Y in PARTS:
        for d in range(PERIOD):
            inc = kernel_map(mu0.part(Y)[d])
            for e in inc.domain.generators():
                rels.append((Y, d, inc(e)))
    return spec, mu0, rels


def _injective(f: CrtMorphism):
    return all(kernel_map(f.part(Y)[d]).domain.is_zero for Y in PARTS for d in range(PERIOD))


def free_resolution(M: CrtModule, max_candidates: int = 2000) -> FreeResolution:
    """0 -> F1 -> F0 -> M -> 0 with F0, F1 free."""
    if not M.finitely_generated:
        raise UnsupportedGroupClass("free resolutions need finitely generated groups")
    if not check_acyclic(M):
        raise NotAcyclic("free resolutions of length one need an acyclic module")
    spec0, mu0, rels = presentation(M)
    F0 = mu0.source
    kernel_span = _Span(F0)
    kernel_span.saturate(rels)
    chosen, images = [], []
    span = _Span(F0)
    tried = 0
    pending = list(rels)
    # also offer pairwise sums of kernel generators in the same spot
    for a in range(len(rels)):
        for b in range(a + 1, len(rels)):
            if rels[a][:2] == rels[b][:2]:
                Y, d = rels[a][:2]
                pending.append((Y, d, F0.group(Y, d).add(rels[a][2], rels[b][2])))
    for Y, d, v in pending:
        if all(span.contains(Y2, d2, v2) for Y2, d2, v2 in rels):
            break
        if span.contains(Y, d, v):
            continue
        tried += 1
        if tried > max_candidates:
            raise FreenessPresentationFailure("kernel basis search exceeded its bound")
        trial = FreeSpec(tuple(chosen) + (Gen(f"k{len(chosen)}", d, Y),))
        f = free_morphism(trial, F0, images + [v])
        if not _injective(f):
            continue
        chosen.append(trial.generators[-1])
        images.append(v)
        span.saturate([(Y, d, v)])
    if not all(span.contains(Y, d, v) for Y, d, v in rels):
        raise FreenessPresentationFailure("no free basis of the kernel was found")
    spec1 = FreeSpec(tuple(chosen))
    mu1 = free_morphism(spec1, F0, images)
    res = FreeResolution(spec1, spec0, mu1, mu0, M,
                         tuple((g.part, g.degree, v) for g, v in zip(chosen, images)))
    if not res.check():
        raise FreenessPresentationFailure("resolution failed its exactness check")
    return res


@dataclass(frozen=True, eq=False)
class Presentation:
    """F2 -> F1 -> F0 -> M -> 0, exact at F0 and M and at F1.

    For an acyclic M this is a resolution with F2 = 0. For other finitely
    generated modules F1 -> F0 is not injective and F2 covers its kernel,
    which is all that Ext^1 needs.
    """

    specs: tuple  # (F0, F1, F2) FreeSpecs
    images: tuple  # (images of F1 gens in F0, images of F2 gens in F1)
    M: CrtModule
    acyclic: bool


def _free_cover(F: CrtModule, elems):
    """Greedy generators (taken from elems) of the submodule they span."""
    span = _Span(F)
    gens, images = [], []
    for Y, d, v in elems:
        if span.saturate([(Y, d, v)]):
            gens.append(Gen(f"k{len(gens)}", d, Y))
            images.append(v)
    return FreeSpec(tuple(gens)), images


def _kernel_elements(f: CrtMorphism):
    out = []
    for Y in PARTS:
        for d in range(PERIOD):
            inc = kernel_map(f.part(Y)[d])
            for e in inc.domain.generators():
                out.append((Y, d, inc(e)))
    return out


def presentation2(M: CrtModule) -> Presentation:
    """A length-two free presentation; a genuine resolution when M is acyclic."""
    memo = _memo(M)
    if "presentation2" not in memo:
        memo["presentation2"] = _presentation2(M)
    return memo["presentation2"]


def _presentation2(M: CrtModule) -> Presentation:
    if not M.finitely_generated:
        raise UnsupportedGroupClass("free presentations need finitely generated groups")
    if check_acyclic(M):
        res = free_resolution(M)
        imgs1 = tuple(v for _, _, v in res.images1)
        return Presentation((res.F0, res.F1, FreeSpec()), (imgs1, ()), M, True)
    spec0, mu0, rels = presentation(M)
    F0 = mu0.source
    spec1, imgs1 = _free_cover(F0, rels)
    mu1 = free_morphism(spec1, F0, imgs1)
    spec2, imgs2 = _free_cover(mu1.source, _kernel_elements(mu1))
    return Presentation((spec0, spec1, spec2), (tuple(imgs1), tuple(imgs2)), M, False)


def morphism_on_generators(M: CrtModule, N: CrtModule, assignments) -> CrtMorphism:
    """The degree-0 morphism M -> N fixed by values on generators of M.

    ``assignments`` is a list of ((part, degree, element of M), element of N).
    Raises ValueError when the elements do not generate M or when the values
    violate a relation among them.
    """
    from .crt_core import _descend
    spec = FreeSpec(tuple(Gen(f"a{k}", d, Y) for k, ((Y, d, _), _) in enumerate(assignments)))
    F = realize(spec)
    mu = free_morphism(spec, M, [e for (_, _, e), _ in assignments], source=F)
    g = free_morphism(spec, N, [v for _, v in assignments], source=F)
    for Y in PARTS:
        for d in range(PERIOD):
            if not cokernel_map(mu.part(Y)[d]).codomain.is_zero:
                raise ValueError(f"the elements do not generate {Y}/{d}")
            inc = kernel_map(mu.part(Y)[d])
            for e in inc.domain.generators():
                if any(g.part(Y)[d](inc(e))):
                    raise ValueError(f"the values violate a relation at {Y}/{d}")
    h = _descend(mu, g, M, N)
    if h is None:
        raise ValueError("the induced maps do not commute with the operations")
    return h
