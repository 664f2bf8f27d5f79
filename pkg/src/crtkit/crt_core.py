"""CRT-modules: three graded groups (real, complex, self-conjugate) tied
together by fifteen operation homomorphisms.

A module is stored with every operation explicit. The ring actions
eta_O, xi, eta_T and omega are usually derived from the eight natural
transformations plus beta_U and beta_T (see :meth:`CrtModule.build`);
beta_O is always the identity because degrees are stored mod 8.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .graded_group import (
    PERIOD, AbelianGroup, AbMap, GradedGroup, GroupHom, UnsupportedGroupClass,
    is_exact_at, kernel_map, solve,
)

PARTS = ("O", "U", "T")

# name -> (source part, target part, degree)
OPS = {
    "c": ("O", "U", 0),
    "r": ("U", "O", 0),
    "eps": ("O", "T", 0),
    "zeta": ("T", "U", 0),
    "psiU": ("U", "U", 0),
    "psiT": ("T", "T", 0),
    "gamma": ("U", "T", -1),
    "tau": ("T", "O", 1),
    "etaO": ("O", "O", 1),
    "xi": ("O", "O", 4),
    "betaO": ("O", "O", 8),
    "betaU": ("U", "U", 2),
    "etaT": ("T", "T", 1),
    "omega": ("T", "T", 3),
    "betaT": ("T", "T", 4),
}
OP_NAMES = tuple(OPS)
DERIVED = ("etaO", "xi", "etaT", "omega", "betaO")


class DegreeMismatch(ValueError):
    pass


class CoconeMismatch(ValueError):
    pass


class BoundExceeded(Exception):
    """A bounded search ran out of room; this is not a refutation."""


class Indeterminate(Exception):
    pass


@dataclass(frozen=True, eq=False)
class CrtModule:
    """A CRT-module: parts O, U, T and all fifteen operations."""

    O: GradedGroup
    U: GradedGroup
    T: GradedGroup
    ops: dict = field(default_factory=dict)

    def __post_init__(self):
        ops = dict(self.ops)
        for name, (src, dst, deg) in OPS.items():
            a, b = self.part(src), self.part(dst)
            f = ops.get(name)
            if f is None:
                if name == "betaO":
                    f = GroupHom(a, b, 8, tuple(AbMap.identity(g) for g in a.groups))
                else:
                    f = GroupHom.zero(a, b, deg)
            if (f.degree - deg) % PERIOD:
                raise DegreeMismatch(f"{name} has degree {f.degree}, expected {deg}")
            if f.degree != deg:
                f = GroupHom(f.domain, f.codomain, deg, f.blocks)
            if not (f.domain.same_layout(a) and f.codomain.same_layout(b)):
                raise DegreeMismatch(f"{name} does not map {src} to {dst}")
            ops[name] = f
        unknown = set(ops) - set(OPS)
        if unknown:
            raise ValueError(f"unknown operations {sorted(unknown)}")
        object.__setattr__(self, "ops", ops)

    # construction ------------------------------------------------------
    @classmethod
    def build(cls, O, U, T, ops):
        """Fill in the ring actions that are composites of other operations.

        Missing c and r are set to zeta eps and tau gamma; eta_O, xi, eta_T and
        omega are always recomputed from their defining composites.
        """
        tmp = cls(O, U, T, ops)
        o = dict(tmp.ops)
        if "c" not in ops:
            o["c"] = o["zeta"] @ o["eps"]
        if "r" not in ops:
            o["r"] = o["tau"] @ o["gamma"]
        bu, bt = o["betaU"], o["betaT"]
        o["etaO"] = o["tau"] @ o["eps"]
        o["xi"] = o["r"] @ bu @ bu @ o["c"]
        o["etaT"] = o["gamma"] @ bu @ o["zeta"]
        o["omega"] = bt @ o["gamma"] @ o["zeta"]
        return cls(O, U, T, o)

    @classmethod
    def zero(cls):
        z = GradedGroup.zero()
        return cls(z, z, z)

    def part(self, x) -> GradedGroup:
        return {"O": self.O, "U": self.U, "T": self.T}[x]

    def group(self, x, n) -> AbelianGroup:
        return self.part(x)[n]

    def __getitem__(self, name) -> GroupHom:
        return self.ops[name]

    def replace_op(self, name, f: GroupHom) -> "CrtModule":
        ops = dict(self.ops)
        ops[name] = f
        return CrtModule(self.O, self.U, self.T, ops)

    def replace_block(self, name, degree, block: AbMap) -> "CrtModule":
        f = self.ops[name]
        blocks = list(f.blocks)
        blocks[degree % PERIOD] = block
        return self.replace_op(name, GroupHom(f.domain, f.codomain, f.degree, tuple(blocks)))

    # comparison --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, CrtModule):
            return NotImplemented
        return (all(self.part(x).same_layout(other.part(x)) for x in PARTS)
                and all(self.ops[n].equals(other.ops[n]) for n in OPS))

    def __hash__(self):
        return hash(tuple(hash(self.part(x)) for x in PARTS))

    def invariants(self):
        """Canonical group data, part by part."""
        return {x: tuple(str(g) for g in self.part(x).groups) for x in PARTS}

    @property
    def is_zero(self):
        return all(self.part(x).is_zero for x in PARTS)

    @property
    def finitely_generated(self):
        return all(g.finitely_generated for x in PARTS for g in self.part(x).groups)

    def __repr__(self):
        inv = self.invariants()
        return "CrtModule(" + "; ".join(f"{x}: {', '.join(inv[x])}" for x in PARTS) + ")"

    # elements ------------------------------------------------------------
    def apply(self, name, n, x):
        """Apply an operation to an element x of its source part in degree n."""
        return self.ops[name](n, x)


# --------------------------------------------------------------- relations

def _id(m, x):
    p = m.part(x)
    return GroupHom.identity(p)


def _relations():
    """(id, lhs, rhs) triples; each side is a function of the module."""
    def R(name, lhs, rhs):
        return (name, lhs, rhs)

    return [
        R("rc=2", lambda m: m["r"] @ m["c"], lambda m: _id(m, "O").scaled(2)),
        R("cr=1+psiU", lambda m: m["c"] @ m["r"], lambda m: _id(m, "U") + m["psiU"]),
        R("r=tau.gamma", lambda m: m["r"], lambda m: m["tau"] @ m["gamma"]),
        R("c=zeta.eps", lambda m: m["c"], lambda m: m["zeta"] @ m["eps"]),
        R("psiU^2=1", lambda m: m["psiU"] @ m["psiU"], lambda m: _id(m, "U")),
        R("psiT^2=1", lambda m: m["psiT"] @ m["psiT"], lambda m: _id(m, "T")),
        R("psiT.eps=eps", lambda m: m["psiT"] @ m["eps"], lambda m: m["eps"]),
        R("zeta.gamma=0", lambda m: m["zeta"] @ m["gamma"],
          lambda m: GroupHom.zero(m.U, m.U, -1)),
        R("zeta=psiU.zeta", lambda m: m["zeta"], lambda m: m["psiU"] @ m["zeta"]),
        R("psiU.betaU=-betaU.psiU", lambda m: m["psiU"] @ m["betaU"],
          lambda m: -(m["betaU"] @ m["psiU"])),
        R("psiT.betaT=betaT.psiT", lambda m: m["psiT"] @ m["betaT"],
          lambda m: m["betaT"] @ m["psiT"]),
        R("eps.betaO=betaT^2.eps", lambda m: m["eps"] @ m["betaO"],
          lambda m: m["betaT"] @ m["betaT"] @ m["eps"]),
        R("zeta.betaT=betaU^2.zeta", lambda m: m["zeta"] @ m["betaT"],
          lambda m: m["betaU"] @ m["betaU"] @ m["zeta"]),
        R("gamma.betaU^2=betaT.gamma", lambda m: m["gamma"] @ m["betaU"] @ m["betaU"],
          lambda m: m["betaT"] @ m["gamma"]),
        R("tau.betaT^2=betaO.tau", lambda m: m["tau"] @ m["betaT"] @ m["betaT"],
          lambda m: m["betaO"] @ m["tau"]),
        R("gamma=gamma.psiU", lambda m: m["gamma"], lambda m: m["gamma"] @ m["psiU"]),
        R("etaO=tau.eps", lambda m: m["etaO"], lambda m: m["tau"] @ m["eps"]),
        R("etaT=gamma.betaU.zeta", lambda m: m["etaT"],
          lambda m: m["gamma"] @ m["betaU"] @ m["zeta"]),
        R("xi=r.betaU^2.c", lambda m: m["xi"],
          lambda m: m["r"] @ m["betaU"] @ m["betaU"] @ m["c"]),
        R("omega=betaT.gamma.zeta", lambda m: m["omega"],
          lambda m: m["betaT"] @ m["gamma"] @ m["zeta"]),
        R("betaT.eps.tau=eps.tau.betaT+etaT.betaT",
          lambda m: m["betaT"] @ m["eps"] @ m["tau"],
          lambda m: m["eps"] @ m["tau"] @ m["betaT"] + m["etaT"] @ m["betaT"]),
        R("eps.r.zeta=1+psiT", lambda m: m["eps"] @ m["r"] @ m["zeta"],
          lambda m: _id(m, "T") + m["psiT"]),
        R("gamma.c.tau=1-psiT", lambda m: m["gamma"] @ m["c"] @ m["tau"],
          lambda m: _id(m, "T") - m["psiT"]),
        R("tau=-tau.psiT", lambda m: m["tau"], lambda m: -(m["tau"] @ m["psiT"])),
        R("tau.betaT.eps=0", lambda m: m["tau"] @ m["betaT"] @ m["eps"],
          lambda m: GroupHom.zero(m.O, m.O, 5)),
        R("eps.xi=2betaT.eps", lambda m: m["eps"] @ m["xi"],
          lambda m: (m["betaT"] @ m["eps"]).scaled(2)),
        R("xi.tau=2tau.betaT", lambda m: m["xi"] @ m["tau"],
          lambda m: (m["tau"] @ m["betaT"]).scaled(2)),
    ]


RELATIONS = _relations()
RELATION_IDS = tuple(r[0] for r in RELATIONS)


@dataclass(frozen=True)
class Report:
    """Outcome of a check: ``ok`` plus a list of (label, degree) failures."""

    ok: bool
    failures: tuple = ()
    note: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "pass" + (f" ({self.note})" if self.note else "")
        return "fail: " + ", ".join(f"{a} @ {d}" for a, d in self.failures)


def check_relations(m: CrtModule, stop_early=False) -> Report:
    fails = []
    for name, lhs, rhs in RELATIONS:
        a, b = lhs(m), rhs(m)
        if (a.degree - b.degree) % PERIOD:
            raise DegreeMismatch(f"relation {name} has sides of different degree")
        d = a.first_difference(b)
        if d is not None:
            fails.append((name, d))
            if stop_early:
                break
    return Report(not fails, tuple(fails))


def _sequences(m: CrtModule):
    bu_inv = m["betaU"].inverse()
    bt_inv = m["betaT"].inverse()
    eta, c, rb = m["etaO"], m["c"], m["r"] @ bu_inv
    eta2, eps, tb = m["etaO"] @ m["etaO"], m["eps"], m["tau"] @ bt_inv
    gam, zeta, one_psi = m["gamma"], m["zeta"], _id(m, "U") - m["psiU"]
    return {
        "(etaO, c, r.betaU^-1)": [eta, c, rb],
        "(etaO^2, eps, tau.betaT^-1)": [eta2, eps, tb],
        "(gamma, zeta, 1-psiU)": [gam, zeta, one_psi],
    }


def _periodicity_failures(m: CrtModule):
    from .graded_group import invert
    fails = []
    for name in ("betaU", "betaT"):
        for d, block in enumerate(m[name].blocks):
            try:
                invert(block)
            except ValueError:
                fails.append((f"{name} invertible", d))
    return fails


def check_acyclic(m: CrtModule) -> Report:
    """Exactness at every spot of the three long periodic sequences."""
    fails = _periodicity_failures(m)
    if fails:
        # the sequences use the inverse periodicity maps
        return Report(False, tuple(fails))
    for label, maps in _sequences(m).items():
        for i in range(3):
            f, g = maps[i - 1], maps[i]
            rep = is_exact_at(f, g)
            if not rep:
                fails.append((f"{label} at {OP_SPOT[label][i]}", rep.degree))
    return Report(not fails, tuple(fails))


OP_SPOT = {
    "(etaO, c, r.betaU^-1)": ("O (into etaO)", "O (into c)", "U (into r.betaU^-1)"),
    "(etaO^2, eps, tau.betaT^-1)": ("O (into etaO^2)", "O (into eps)", "T (into tau.betaT^-1)"),
    "(gamma, zeta, 1-psiU)": ("U (into gamma)", "T (into zeta)", "U (into 1-psiU)"),
}


# ------------------------------------------------------------ constructions

def suspend(m: CrtModule, k: int) -> CrtModule:
    """Suspension by k: (suspend(m, k))_n = m_{n+k} in every part."""
    k %= PERIOD
    if k == 0:
        return m
    return CrtModule(m.O.shift(k), m.U.shift(k), m.T.shift(k),
                     {n: f.shift(k) for n, f in m.ops.items()})


def direct_sum(a: CrtModule, b: CrtModule) -> CrtModule:
    from .graded_group import block_map

    def dsum(f, g):
        blocks = tuple(
            block_map([f.domain[d], g.domain[d]],
                      [f.codomain[d + f.degree], g.codomain[d + g.degree]],
                      {(0, 0): f[d], (1, 1): g[d]})
            for d in range(PERIOD))
        return GroupHom(f.domain.direct_sum(g.domain), f.codomain.direct_sum(g.codomain),
                        f.degree, blocks)

    return CrtModule(a.O.direct_sum(b.O), a.U.direct_sum(b.U), a.T.direct_sum(b.T),
                     {n: dsum(a.ops[n], b.ops[n]) for n in OPS})


def direct_sum_all(mods):
    out = CrtModule.zero()
    for m in mods:
        out = direct_sum(out, m)
    return out


def is_injective(m: CrtModule) -> bool:
    """Acyclic with divisible complex part."""
    if not all(g.is_divisible for g in m.U.groups):
        return False
    return bool(check_acyclic(m))


# ---------------------------------------------------------------- morphisms

@dataclass(frozen=True, eq=False)
class CrtMorphism:
    source: CrtModule
    target: CrtModule
    degree: int
    fO: GroupHom
    fU: GroupHom
    fT: GroupHom

    def part(self, x) -> GroupHom:
        return {"O": self.fO, "U": self.fU, "T": self.fT}[x]

    @classmethod
    def identity(cls, m: CrtModule):
        return cls(m, m, 0, *(GroupHom.identity(m.part(x)) for x in PARTS))

    @classmethod
    def zero(cls, a: CrtModule, b: CrtModule, degree=0):
        return cls(a, b, degree, *(GroupHom.zero(a.part(x), b.part(x), degree) for x in PARTS))

    @classmethod
    def from_parts(cls, a, b, degree, parts):
        return cls(a, b, degree, *(parts[x] for x in PARTS))

    def compose(self, other: "CrtMorphism") -> "CrtMorphism":
        """self after other."""
        return CrtMorphism(other.source, self.target, self.degree + other.degree,
                           *(self.part(x) @ other.part(x) for x in PARTS))

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        return CrtMorphism(self.source, self.target, self.degree,
                           *(self.part(x) + other.part(x) for x in PARTS))

    def __neg__(self):
        return CrtMorphism(self.source, self.target, self.degree,
                           *(-self.part(x) for x in PARTS))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return CrtMorphism(self.source, self.target, self.degree,
                           *(self.part(x).scaled(k) for x in PARTS))

    def __call__(self, x, n, v):
        return self.part(x)(n, v)

    def equals(self, other) -> bool:
        return all(self.part(x).equals(other.part(x)) for x in PARTS)

    @property
    def is_zero(self):
        return all(self.part(x).is_zero for x in PARTS)


def validate_morphism(f: CrtMorphism) -> Report:
    """Check that f commutes with every operation, degree by degree."""
    for x in PARTS:
        p = f.part(x)
        if not (p.domain.same_layout(f.source.part(x)) and p.codomain.same_layout(f.target.part(x))):
            raise DegreeMismatch(f"component {x} has the wrong shape")
        if (p.degree - f.degree) % PERIOD:
            raise DegreeMismatch(f"component {x} has the wrong degree")
    fails = []
    for name, (src, dst, _) in OPS.items():
        lhs = f.part(dst) @ f.source[name]
        rhs = f.target[name] @ f.part(src)
        d = lhs.first_difference(rhs)
        if d is not None:
            fails.append((name, d))
    return Report(not fails, tuple(fails))


def is_bijective(f: CrtMorphism) -> bool:
    from .graded_group import cokernel_map
    for x in PARTS:
        for d in range(PERIOD):
            b = f.part(x)[d]
            if not kernel_map(b).domain.is_zero:
                return False
            if not cokernel_map(b).codomain.is_zero:
                return False
    return True


# ---------------------------------------------------------- isomorphism test

@dataclass(frozen=True)
class IsoResult:
    verdict: str  # "equivalent", "not_equivalent", "indeterminate"
    morphism: CrtMorphism = None
    invariant: str = ""

    def __bool__(self):
        return self.verdict == "equivalent"


def distinguishing_invariant(a: CrtModule, b: CrtModule):
    for x in PARTS:
        for n in range(PERIOD):
            ga, gb = a.group(x, n), b.group(x, n)
            if ga != gb:
                return f"{x}/{n}: {ga} vs {gb}"
    return None


def iso_test(a: CrtModule, b: CrtModule, bound: int = 4096) -> IsoResult:
    """Decide whether a and b are isomorphic as CRT-modules.

    Group invariants refute quickly; equal modules give the identity.
    Otherwise a morphism is searched for among the images of a generating
    set of a, as long as the number of candidates stays within ``bound``.
    """
    inv = distinguishing_invariant(a, b)
    if inv is not None:
        return IsoResult("not_equivalent", invariant=inv)
    if a == b:
        return IsoResult("equivalent", CrtMorphism.identity(a))
    if not (a.finitely_generated and all(g.is_finite for x in PARTS for g in b.part(x).groups)):
        return IsoResult("indeterminate", invariant="search needs finite target groups")
    from .free_crt import free_morphism, presentation
    spec, mu0, rel_images = presentation(a)
    pools = []
    total = 1
    for gen in spec.generators:
        pool = list(b.group(gen.part, gen.degree).elements())
        total *= len(pool)
        pools.append(pool)
    if total > bound:
        return IsoResult("indeterminate", invariant=f"{total} candidate maps exceed bound {bound}")
    for images in product(*pools):
        g = free_morphism(spec, b, list(images))
        if not all(_vanishes(g, rel) for rel in rel_images):
            continue
        h = _descend(mu0, g, a, b)
        if h is not None and is_bijective(h):
            return IsoResult("equivalent", h)
    return IsoResult("not_equivalent", invariant="no invertible morphism exists")


def _vanishes(g, rel):
    x, n, v = rel
    return all(t == 0 for t in g(x, n, v))


def _descend(mu0: CrtMorphism, g: CrtMorphism, a: CrtModule, b: CrtModule):
    """The morphism h: a -> b with h mu0 = g, given g kills ker mu0."""
    parts = {}
    for x in PARTS:
        blocks = []
        for d in range(PERIOD):
            A = a.group(x, d)
            cols = []
            for gen in A.generators():
                pre = solve(mu0.part(x)[d], gen)
                if pre is None:
                    return None
                cols.append(g.part(x)[d](pre))
            blocks.append(AbMap.from_columns(A, b.group(x, d), cols))
        parts[x] = GroupHom(a.part(x), b.part(x), 0, tuple(blocks))
    h = CrtMorphism.from_parts(a, b, 0, parts)
    return h if validate_morphism(h) else None


# ----------------------------------------------------------------- colimits

@dataclass(frozen=True)
class ColimitSystem:
    stages: tuple
    maps: tuple
    claimed: CrtModule
    cocone: tuple
    stage_bound: int


@dataclass(frozen=True)
class ColimitReport:
    ok: bool
    verified_stage: int
    failures: tuple = ()

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return f"verified up to stage {self.verified_stage}"
        return "inconclusive: " + "; ".join(self.failures)


def _probes(s, bound):
    """Elements of one summand that must lie in the image of the cocone."""
    if s.kind in ("Z", "C"):
        return [Fraction(1)]
    if s.kind == "P":
        return [Fraction(1, s.n ** j) for j in range(1, bound + 1)]
    return [Fraction(1, j) for j in range(1, bound + 1)]


def verify_group_colimit(stages, maps, claimed, cocone, bound):
    """Check a claimed colimit of abelian groups; returns a list of failures.

    ``stages`` are AbelianGroups, ``maps[i]``: stages[i] -> stages[i+1],
    ``cocone[i]``: stages[i] -> claimed.
    """
    n = min(len(stages), bound)
    fails = []
    for i in range(min(len(maps), n - 1)):
        if not cocone[i + 1].compose(maps[i]) == cocone[i]:
            raise CoconeMismatch(f"cocone triangle at stage {i} does not commute")
    for j, s in enumerate(claimed.summands):
        for val in _probes(s, bound):
            y = tuple(val if t == j else Fraction(0) for t in range(len(claimed)))
            if not any(solve(cocone[i], y) is not None for i in range(n)):
                fails.append(f"{s} element {val} not reached")
                break
    # the last stage has no successor in which its kernel could die
    for i in range(n - 1):
        inc = kernel_map(cocone[i])
        for gen in inc.domain.generators():
            x = inc(gen)
            for t in range(i, n):
                if all(v == 0 for v in x):
                    break
                if t == n - 1:
                    fails.append(f"stage {i} kernel element {x} survives")
                    break
                x = maps[t](x)
    return fails


def verify_colimit(sys: ColimitSystem) -> ColimitReport:
    n = min(len(sys.stages), sys.stage_bound)
    for i in range(min(len(sys.maps), n - 1)):
        tri = sys.cocone[i + 1] @ sys.maps[i]
        if not tri.equals(sys.cocone[i]):
            raise CoconeMismatch(f"cocone triangle at stage {i} does not commute")
    fails = []
    for x in PARTS:
        for d in range(PERIOD):
            try:
                f = verify_group_colimit(
                    [s.group(x, d) for s in sys.stages],
                    [m.part(x)[d] for m in sys.maps],
                    sys.claimed.group(x, d),
                    [c.part(x)[d] for c in sys.cocone],
                    n)
            except CoconeMismatch as exc:
                raise CoconeMismatch(f"{x}/{d}: {exc}") from None
            fails += [f"{x}/{d}: {msg}" for msg in f]
    return ColimitReport(not fails, n, tuple(fails))


def _induced_ops(M: CrtModule, parts, sections, projections):
    """Operations on a subquotient given per-spot lifts and projections."""
    ops = {}
    for name, (src, dst, deg) in OPS.items():
        blocks = []
        for d in range(PERIOD):
            lift, proj = sections[(src, d)], projections[(dst, (d + deg) % PERIOD)]
            A = parts[src][d]
            cols = [proj(M.apply(name, d, lift(e))) for e in A.generators()]
            blocks.append(AbMap.from_columns(A, parts[dst][d + deg], cols))
        ops[name] = GroupHom(parts[src], parts[dst], deg, tuple(blocks))
    return ops


def cokernel_module(f: CrtMorphism):
    """coker f as a CRT-module, with the projection from f.target."""
    from .graded_group import cokernel_map
    if f.degree % PERIOD:
        raise DegreeMismatch("cokernel modules need a degree 0 morphism")
    M = f.target
    prs = {(x, d): cokernel_map(f.part(x)[d]) for x in PARTS for d in range(PERIOD)}
    parts = {x: GradedGroup(tuple(prs[(x, d)].codomain for d in range(PERIOD))) for x in PARTS}

    def section(pr):
        return lambda e: solve(pr, e)

    sections = {k: section(pr) for k, pr in prs.items()}
    projections = {k: pr for k, pr in prs.items()}
    C = CrtModule(parts["O"], parts["U"], parts["T"],
                  _induced_ops(M, parts, sections, projections))
    proj = CrtMorphism.from_parts(M, C, 0, {
        x: GroupHom(M.part(x), parts[x], 0, tuple(prs[(x, d)] for d in range(PERIOD)))
        for x in PARTS})
    return C, proj


def kernel_module(f: CrtMorphism):
    """ker f as a CRT-module, with its inclusion into f.source."""
    if f.degree % PERIOD:
        raise DegreeMismatch("kernel modules need a degree 0 morphism")
    M = f.source
    incs = {(x, d): kernel_map(f.part(x)[d]) for x in PARTS for d in range(PERIOD)}
    parts = {x: GradedGroup(tuple(incs[(x, d)].domain for d in range(PERIOD))) for x in PARTS}

    def proj(inc):
        return lambda v: solve(inc, v)

    K = CrtModule(parts["O"], parts["U"], parts["T"],
                  _induced_ops(M, parts, {k: i for k, i in incs.items()},
                               {k: proj(i) for k, i in incs.items()}))
    inc = CrtMorphism.from_parts(K, M, 0, {
        x: GroupHom(parts[x], M.part(x), 0, tuple(incs[(x, d)] for d in range(PERIOD)))
        for x in PARTS})
    return K, inc


def group_morphism_parts(a: CrtModule, b: CrtModule, blocks_by_part, degree=0):
    """Assemble a CrtMorphism from {part: [AbMap per degree]}."""
    parts = {x: GroupHom(a.part(x), b.part(x), degree, tuple(blocks_by_part[x])) for x in PARTS}
    return CrtMorphism.from_parts(a, b, degree, parts)


__all__ = [
    "PARTS", "OPS", "OP_NAMES", "RELATION_IDS", "CrtModule", "CrtMorphism", "ColimitSystem",
    "ColimitReport", "IsoResult", "Report", "DegreeMismatch", "CoconeMismatch", "BoundExceeded",
    "Indeterminate", "UnsupportedGroupClass", "check_relations", "check_acyclic", "suspend",
    "direct_sum", "direct_sum_all", "is_injective", "validate_morphism", "is_bijective",
    "iso_test", "verify_colimit", "cokernel_module", "kernel_module", "verify_group_colimit", "distinguishing_invariant",
]
