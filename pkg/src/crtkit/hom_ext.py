"""Internal Hom of CRT-modules and its derived functor Ext.

Hom out of a free monogenic module is one of three explicit shapes:
N itself, the construction B(N) (``c_construction``) or the construction
T(N) (``t_construction``). Hom out of any other finitely generated module
is the kernel of the map induced by a free resolution, and Ext is the
cokernel of the same map.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .crt_core import (
    PARTS, CrtModule, check_relations, direct_sum_all, suspend,
)
from .graded_group import (
    PERIOD, AbelianGroup, AbMap, GradedGroup, GroupHom, block_map, cokernel_map, kernel_map,
    solve,
)


def _sum2(a: GradedGroup, b: GradedGroup) -> GradedGroup:
    return a.direct_sum(b)


def _block2(src_parts, dst_parts, degree, entries):
    """GroupHom between two-fold sums from {(i, j): GroupHom or None}.

    ``src_parts``/``dst_parts`` are lists of GradedGroups; entry (i, j) maps
    summand j of the source into summand i of the target.
    """
    src = GradedGroup(tuple(
        AbelianGroup(sum((p[d].summands for p in src_parts), ())) for d in range(PERIOD)))
    dst = GradedGroup(tuple(
        AbelianGroup(sum((p[d].summands for p in dst_parts), ())) for d in range(PERIOD)))
    blocks = []
    for d in range(PERIOD):
        pieces = {}
        for (i, j), f in entries.items():
            if f is not None:
                pieces[(i, j)] = f[d]
        blocks.append(block_map([p[d] for p in src_parts],
                                [p[d + degree] for p in dst_parts], pieces))
    return GroupHom(src, dst, degree, tuple(blocks))


def _sign_by_parity(f: GroupHom, offset: int) -> GroupHom:
    """Multiply block d of f by (-1)^(d + offset)."""
    return GroupHom(f.domain, f.codomain, f.degree,
                    tuple(b.scaled(-1) if (d + offset) % 2 else b for d, b in enumerate(f.blocks)))


def c_construction(N: CrtModule) -> CrtModule:
    """B(N) = (N^U, N^U + N^U, Sigma N^U + N^U)."""
    U = N.U
    SU = U.shift(1)
    O_ = U
    U_ = _sum2(U, U)
    T_ = _sum2(SU, U)
    idU = GroupHom.identity(U)
    bu = N["betaU"]
    ops = {
        # eps(n) = (0, n)
        "eps": _block2([U], [SU, U], 0, {(1, 0): idU}),
        # zeta(n1, n2) = (n2, n2)
        "zeta": _block2([SU, U], [U, U], 0, {(0, 1): idU, (1, 1): idU}),
        "psiU": _block2([U, U], [U, U], 0, {(0, 1): idU, (1, 0): idU}),
        "psiT": _block2([SU, U], [SU, U], 0,
                        {(0, 0): GroupHom.identity(SU).scaled(-1), (1, 1): idU}),
        # gamma(n1, n2) = (n1 + n2, 0): U_n -> T_{n-1} = U_n + U_{n-1}
        "gamma": _block2([U, U], [SU, U], -1,
                         {(0, 0): GroupHom(U, SU, -1, idU.blocks),
                          (0, 1): GroupHom(U, SU, -1, idU.blocks)}),
        # tau(n1, n2) = n1: T_n -> O_{n+1}
        "tau": _block2([SU, U], [U], 1, {(0, 0): GroupHom(SU, U, 1, GroupHom.identity(SU).blocks)}),
        "betaU": _block2([U, U], [U, U], 2, {(0, 0): bu, (1, 1): -bu}),
        "betaT": _block2([SU, U], [SU, U], 4,
                         {(0, 0): (bu @ bu).shift(1), (1, 1): bu @ bu}),
    }
    return CrtModule.build(O_, U_, T_, ops)


def _t_candidate(N: CrtModule, su, sv) -> CrtModule:
    U, T = N.U, N.T
    SU, ST = U.shift(1), T.shift(1)
    O_ = T
    U_ = _sum2(U, SU)
    T_ = _sum2(T, ST)
    eps, tau, zeta = N["eps"], N["tau"], N["zeta"]
    et = eps @ tau  # T_n -> T_{n+1}
    # eps(n) = (n, (-1)^n eps tau(n))
    e2 = GroupHom(T, ST, 0, _sign_by_parity(et, 0).blocks)
    omega_b = N["betaT"].inverse() @ N["omega"]  # degree -1
    # psiT(n1, n2) = (psiT n1 + (-1)^(|n2|+1) betaT^-1 omega n2, psiT n2), |n2| = n + 1
    w = GroupHom(ST, T, 0, _sign_by_parity(omega_b, 1).shift(1).blocks)
    ops = {
        "eps": _block2([T], [T, ST], 0, {(0, 0): GroupHom.identity(T), (1, 0): e2}),
        "zeta": _block2([T, ST], [U, SU], 0, {(0, 0): zeta, (1, 1): zeta.shift(1)}),
        "psiU": _block2([U, SU], [U, SU], 0, {(0, 0): N["psiU"], (1, 1): N["psiU"].shift(1)}),
        "psiT": _block2([T, ST], [T, ST], 0,
                        {(0, 0): N["psiT"], (0, 1): w, (1, 1): N["psiT"].shift(1)}),
        "gamma": _block2([U, SU], [T, ST], -1,
                         {(0, 0): N["gamma"], (1, 1): N["gamma"].shift(1)}),
        # tau(n1, n2) = eps tau(n1) + etaT(n1) + (-1)^|n2| n2
        "tau": _block2([T, ST], [T], 1, {
            (0, 0): et + N["etaT"],
            (0, 1): GroupHom(ST, T, 1, _sign_by_parity(GroupHom.identity(ST), 1).blocks),
        }),
        "betaU": _block2([U, SU], [U, SU], 2,
                         {(0, 0): N["betaU"].scaled(su[0]), (1, 1): N["betaU"].shift(1).scaled(su[1])}),
        "betaT": _block2([T, ST], [T, ST], 4,
                         {(0, 0): N["betaT"].scaled(sv[0]), (1, 1): N["betaT"].shift(1).scaled(sv[1])}),
    }
    return CrtModule.build(O_, U_, T_, ops)


T_SIGNS = [((a, b), (c, d)) for a, b, c, d in product((1, -1), repeat=4)]


def t_construction(N: CrtModule) -> CrtModule:
    """T(N) = (N^T, N^U + Sigma N^U, N^T + Sigma N^T).

    The beta actions are diagonal; their component signs are the first
    choice (in a fixed order) for which all relations hold.
    """
    first = None
    for su, sv in T_SIGNS:
        m = _t_candidate(N, su, sv)
        if first is None:
            first = m
        if check_relations(m, stop_early=True):
            return m
    return first


def h_construction(X: str, N: CrtModule) -> CrtModule:
    """Hom out of F(b,0,X): N, B(N) or T(N)."""
    from .free_crt import _memo
    if X == "O":
        return N
    if X not in ("U", "T"):
        raise ValueError(f"unknown part {X!r}")
    memo = _memo(N)
    key = ("shape", X)
    if key not in memo:
        memo[key] = c_construction(N) if X == "U" else t_construction(N)
    return memo[key]


def _suspended(H: CrtModule, n: int) -> CrtModule:
    # shared so that evaluation maps cached on the suspension are reused
    from .free_crt import _memo
    memo = _memo(H)
    key = ("suspend", n % PERIOD)
    if key not in memo:
        memo[key] = suspend(H, n)
    return memo[key]


def hom_free(F, N: CrtModule) -> CrtModule:
    """Hom out of the free module on ``F`` (a FreeSpec): a product of shifted shapes.

    A generator of part X in degree i contributes suspend(H_X(N), i), whose
    part Y in degree n is H_X(N)^Y_{n+i}.
    """
    cache = {}
    out = []
    for g in F.generators:
        if g.part not in cache:
            cache[g.part] = h_construction(g.part, N)
        out.append(suspend(cache[g.part], g.degree))
    return direct_sum_all(out)


@dataclass(frozen=True, eq=False)
class GradedTriple:
    """Three graded groups, one per part; the group data of a module."""

    O: GradedGroup
    U: GradedGroup
    T: GradedGroup

    def part(self, x) -> GradedGroup:
        return {"O": self.O, "U": self.U, "T": self.T}[x]

    def group(self, x, n) -> AbelianGroup:
        return self.part(x)[n]

    def invariants(self):
        return {x: tuple(str(g) for g in self.part(x).groups) for x in PARTS}

    @property
    def is_zero(self):
        return all(self.part(x).is_zero for x in PARTS)

    def __eq__(self, other):
        return all(self.group(x, n) == other.group(x, n) for x in PARTS for n in range(PERIOD))

    __hash__ = None

    @classmethod
    def of(cls, m):
        return cls(m.O, m.U, m.T)

    def shift(self, k):
        return GradedTriple(self.O.shift(k), self.U.shift(k), self.T.shift(k))


def _spot_sum(P: CrtModule, spec):
    """The group [F, P]_0 = sum over generators of P^{X_j}_{i_j}."""
    groups = [P.group(g.part, g.degree) for g in spec.generators]
    return groups, AbelianGroup(sum((G.summands for G in groups), ()))


def evaluation_map(P: CrtModule, src_spec, dst_spec, images) -> AbMap:
    """[F_src, P]_0 -> [F_dst, P]_0, phi -> phi o mu.

    ``images[k]`` is mu of the k-th generator of dst_spec, an element of
    the realized free module on src_spec (so mu: F_dst -> F_src).
    """
    from .free_crt import eval_map, split_element
    src_groups, A = _spot_sum(P, src_spec)
    dst_groups, B = _spot_sum(P, dst_spec)
    blocks = {}
    for k, (g, y) in enumerate(zip(dst_spec.generators, images)):
        comps = split_element(src_spec, g.part, g.degree, y)
        for j, (h, yj) in enumerate(zip(src_spec.generators, comps)):
            if any(yj):
                blocks[(k, j)] = eval_map(P, h.part, h.degree, g.part, g.degree, yj)
    return block_map(src_groups, dst_groups, blocks)


@dataclass(frozen=True, eq=False)
class HomResult:
    """Hom_CRT(M, N): group data for every part and degree.

    ``module`` carries the full CRT-module structure when M is free (then
    it is hom_free of the generating set); ``presentation`` is the free
    presentation of M that was used.
    """

    groups: GradedTriple
    module: CrtModule = None
    presentation: object = None
    ext: GradedTriple = None

    def group(self, x, n):
        return self.groups.group(x, n)

    def part(self, x):
        return self.groups.part(x)


def _hom_ext_groups(M: CrtModule, N: CrtModule, pres):
    spec0, spec1, spec2 = pres.specs
    imgs1, imgs2 = pres.images
    hom = {x: [None] * PERIOD for x in PARTS}
    ext = {x: [None] * PERIOD for x in PARTS}
    for x in PARTS:
        H = h_construction(x, N)
        for n in range(PERIOD):
            P = _suspended(H, n)
            e1 = evaluation_map(P, spec0, spec1, imgs1)
            hom[x][n] = kernel_map(e1).domain
            if spec2.generators:
                e2 = evaluation_map(P, spec1, spec2, imgs2)
                inc = kernel_map(e2)
                cols = [solve(inc, e1(gen)) for gen in e1.domain.generators()]
                e1k = AbMap.from_columns(e1.domain, inc.domain, cols)
                ext[x][n] = cokernel_map(e1k).codomain
            else:
                ext[x][n] = cokernel_map(e1).codomain
    tri = lambda d: GradedTriple(*(GradedGroup(tuple(d[x])) for x in PARTS))
    return tri(hom), tri(ext)


def hom_crt(M: CrtModule, N: CrtModule) -> HomResult:
    """Hom_CRT(M, N); part X in degree n is [M, suspend(H_X(N), n)]_0."""
    from .free_crt import presentation2
    pres = presentation2(M)
    hom, ext = _hom_ext_groups(M, N, pres)
    module = None
    if not pres.specs[1].generators:
        module = hom_free(pres.specs[0], N)
    return HomResult(hom, module, pres, ext)


def ext_crt(M: CrtModule, N: CrtModule) -> GradedTriple:
    """Ext_CRT(M, N), the first derived functor of Hom_CRT(-, N)."""
    return hom_crt(M, N).ext


@dataclass(frozen=True, eq=False)
class InducedMap:
    """Precomposition with mu: F -> F' as maps [F', Sigma^n H_X N]_0 -> [F, Sigma^n H_X N]_0."""

    parts: dict  # part -> GroupHom (degree 0) between the evaluation groups

    def part(self, x) -> GroupHom:
        return self.parts[x]


def hom_induced(src_spec, dst_spec, images, N: CrtModule) -> InducedMap:
    """Map induced on Hom(-, N) by the morphism from the free module on
    ``dst_spec`` to the free module on ``src_spec`` that sends generator k to
    ``images[k]``. Contravariant: the result goes from Hom(F_src, N) to
    Hom(F_dst, N)."""
    parts = {}
    for x in PARTS:
        H = h_construction(x, N)
        blocks = [evaluation_map(_suspended(H, n), src_spec, dst_spec, images) for n in range(PERIOD)]
        dom = GradedGroup(tuple(b.domain for b in blocks))
        cod = GradedGroup(tuple(b.codomain for b in blocks))
        parts[x] = GroupHom(dom, cod, 0, tuple(blocks))
    return InducedMap(parts)
