"""Graded abelian groups in the class generated by Z, Z/n, Q and Z(p^inf).

Elements of a group are tuples of Fractions, one coordinate per summand:
an integer for Z, an integer mod n for Z/n, a rational for Q and a rational
with p-power denominator mod 1 for Z(p^inf).  A homomorphism between two
groups is a matrix whose column j is the image of the j-th summand generator
(for Q and Z(p^inf) columns the entry is a multiplier instead).

Kernels and cokernels are computed by splitting each group into its
finitely generated lattice part (Smith normal form), its rational part
(linear algebra over Q) and its p-primary parts.  A p-primary part is
handled through Pontryagin duality, which turns it into a finitely
generated module over the p-local integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor

from . import _linalg as la

PERIOD = 8


class UnsupportedGroupClass(Exception):
    """Raised when a result would leave the representable coefficient class."""


class EntryError(ValueError):
    """A matrix entry that does not define a homomorphism."""


class CompositionMismatch(ValueError):
    pass


# ------------------------------------------------------------------ summands

@dataclass(frozen=True, order=True)
class Summand:
    kind: str  # "Z", "C" (cyclic Z/n), "Q", "P" (Pruefer)
    n: int = 0

    def __post_init__(self):
        if self.kind not in ("Z", "C", "Q", "P"):
            raise ValueError(f"unknown summand kind {self.kind!r}")
        if self.kind == "C" and self.n < 2:
            raise ValueError("Z/n needs n >= 2")
        if self.kind == "P" and not _is_prime(self.n):
            raise ValueError("Z(p^inf) needs p prime")

    def __str__(self):
        return {"Z": "Z", "Q": "Q"}.get(self.kind) or (
            f"Z/{self.n}" if self.kind == "C" else f"Z({self.n}^inf)")

    @property
    def divisible(self):
        return self.kind in ("Q", "P")

    def reduce(self, x) -> Fraction:
        x = Fraction(x)
        if self.kind == "Z":
            if x.denominator != 1:
                raise EntryError(f"{x} is not an element of Z")
            return x
        if self.kind == "C":
            if x.denominator != 1:
                raise EntryError(f"{x} is not an element of Z/{self.n}")
            return Fraction(x.numerator % self.n)
        if self.kind == "Q":
            return x
        if not _is_power_of(x.denominator, self.n):
            raise EntryError(f"{x} is not an element of Z({self.n}^inf)")
        return x - floor(x)


ZZ = Summand("Z")
QQ = Summand("Q")


def cyclic(n: int) -> Summand:
    return Summand("C", n)


def prufer(p: int) -> Summand:
    return Summand("P", p)


def _is_prime(n):
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _is_power_of(d, p):
    while d % p == 0 and d > 1:
        d //= p
    return d == 1


def _elem_order(s: Summand, x: Fraction):
    """Additive order of x in summand s (0 for infinite order)."""
    if x == 0:
        return 1
    if s.kind in ("Z", "Q"):
        return 0
    if s.kind == "C":
        from math import gcd
        return s.n // gcd(int(x), s.n)
    return x.denominator


def normalize_entry(src: Summand, dst: Summand, x) -> Fraction:
    """Reduce a matrix entry for a map src -> dst, checking it is legal."""
    x = Fraction(x)
    if x == 0:
        return x
    sk, dk = src.kind, dst.kind
    if sk == "Z":
        return dst.reduce(x)
    if sk == "C":
        if dk in ("Z", "Q"):
            raise EntryError(f"nonzero entry {x} from {src} into {dst}")
        y = dst.reduce(x)
        if dk == "C" and (src.n * y) % dst.n:
            raise EntryError(f"entry {x} from {src} into {dst} is not well defined")
        if dk == "P" and (src.n * y).denominator != 1:
            raise EntryError(f"entry {x} from {src} into {dst} is not well defined")
        return y
    if sk == "Q":
        if dk != "Q":
            raise EntryError(f"nonzero entry {x} from Q into {dst}")
        return x
    # Pruefer source: only integer multiplications into the same prime
    if dk != "P" or dst.n != src.n:
        raise EntryError(f"nonzero entry {x} from {src} into {dst}")
    if x.denominator != 1:
        raise EntryError(f"Z(p^inf) endomorphism entries must be integers, got {x}")
    return x


# ------------------------------------------------------------ abelian groups

def _canonical(summands):
    from collections import Counter
    rank = sum(1 for s in summands if s.kind == "Z")
    qrank = sum(1 for s in summands if s.kind == "Q")
    pru = Counter(s.n for s in summands if s.kind == "P")
    primary = {}
    for s in summands:
        if s.kind == "C":
            for p, e in la.factorize(s.n).items():
                primary.setdefault(p, []).append(p ** e)
    width = max((len(v) for v in primary.values()), default=0)
    inv = [1] * width
    for p, powers in primary.items():
        powers.sort(reverse=True)
        for i, q in enumerate(powers):
            inv[i] *= q
    inv = tuple(sorted(inv))
    return rank, inv, qrank, tuple(sorted(pru.items()))


@dataclass(frozen=True, eq=False)
class AbelianGroup:
    """A finite direct sum of Z, Z/n, Q and Z(p^inf) summands.

    ``summands`` fixes the coordinates used by elements and maps. Two
    groups compare equal when their canonical forms agree, i.e. when they
    are isomorphic; use :meth:`same_layout` for coordinate equality.
    """

    summands: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(self.summands))

    # construction -------------------------------------------------------
    @classmethod
    def of(cls, *summands):
        return cls(tuple(summands))

    @classmethod
    def from_canonical(cls, rank=0, invariants=(), qrank=0, prufer_ranks=()):
        ss = [ZZ] * rank + [cyclic(d) for d in invariants] + [QQ] * qrank
        for p, k in prufer_ranks:
            ss += [prufer(p)] * k
        return cls(tuple(ss))

    @classmethod
    def parse(cls, text: str) -> "AbelianGroup":
        text = text.strip()
        if text in ("0", ""):
            return cls(())
        out = []
        for term in text.split("+"):
            term = term.strip()
            mult = 1
            if "^" in term and not term.startswith("Z(") and not term.endswith(")"):
                term, _, m = term.rpartition("^")
                mult = int(m)
            if term == "Z":
                s = ZZ
            elif term == "Q":
                s = QQ
            elif term.startswith("Z/"):
                s = cyclic(int(term[2:]))
            elif term.startswith("Z(") and term.endswith("^inf)"):
                s = prufer(int(term[2:-5]))
            else:
                raise ValueError(f"cannot parse group term {term!r}")
            out += [s] * mult
        return cls(tuple(out))

    # canonical form -----------------------------------------------------
    def canonical(self):
        return _canonical(self.summands)

    def canonical_group(self) -> "AbelianGroup":
        return AbelianGroup.from_canonical(*self.canonical())

    def __eq__(self, other):
        if not isinstance(other, AbelianGroup):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def same_layout(self, other) -> bool:
        return self.summands == other.summands

    def __str__(self):
        rank, inv, qrank, pru = self.canonical()
        terms = ["Z"] * rank + [f"Z/{d}" for d in inv] + ["Q"] * qrank
        for p, k in pru:
            terms += [f"Z({p}^inf)"] * k
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"AbelianGroup({str(self)!r})"

    def __len__(self):
        return len(self.summands)

    # properties ---------------------------------------------------------
    @property
    def is_zero(self):
        return not self.summands

    @property
    def is_finite(self):
        return all(s.kind == "C" for s in self.summands)

    @property
    def finitely_generated(self):
        return all(s.kind in ("Z", "C") for s in self.summands)

    @property
    def is_divisible(self):
        return all(s.divisible for s in self.summands)

    @property
    def is_free(self):
        return all(s.kind == "Z" for s in self.summands)

    def order(self):
        """Cardinality for finite groups, None otherwise."""
        if not self.is_finite:
            return None
        out = 1
        for s in self.summands:
            out *= s.n
        return out

    # elements -----------------------------------------------------------
    def zero(self):
        return tuple(Fraction(0) for _ in self.summands)

    def element(self, values):
        values = tuple(values)
        if len(values) != len(self.summands):
            raise ValueError("wrong number of coordinates")
        return tuple(s.reduce(v) for s, v in zip(self.summands, values))

    def add(self, x, y):
        return tuple(s.reduce(a + b) for s, a, b in zip(self.summands, x, y))

    def neg(self, x):
        return tuple(s.reduce(-a) for s, a in zip(self.summands, x))

    def scale(self, k, x):
        return tuple(s.reduce(k * a) for s, a in zip(self.summands, x))

    def generators(self):
        """Unit vectors; they generate unless a divisible summand is present."""
        n = len(self.summands)
        return [self.element([1 if j == i else 0 for j in range(n)]) for i in range(n)]

    def element_order(self, x):
        from math import lcm
        out = 1
        for s, a in zip(self.summands, x):
            o = _elem_order(s, a)
            if o == 0:
                return 0
            out = lcm(out, o)
        return out

    def elements(self):
        if not self.is_finite:
            raise ValueError("cannot enumerate an infinite group")
        for vals in product(*[range(s.n) for s in self.summands]):
            yield tuple(Fraction(v) for v in vals)

    def direct_sum(self, other):
        return AbelianGroup(self.summands + other.summands)


ZERO_GROUP = AbelianGroup(())


# ------------------------------------------------------------------ maps

@dataclass(frozen=True, eq=False)
class AbMap:
    """Homomorphism between two AbelianGroups given by an entry matrix."""

    domain: AbelianGroup
    codomain: AbelianGroup
    matrix: tuple = None

    def __post_init__(self):
        m, n = len(self.codomain), len(self.domain)
        mat = self.matrix
        if mat is None:
            mat = [[0] * n for _ in range(m)]
        if len(mat) != m or any(len(row) != n for row in mat):
            raise EntryError(f"matrix shape does not match {m}x{n}")
        norm = tuple(
            tuple(normalize_entry(self.domain.summands[j], self.codomain.summands[i], mat[i][j])
                  for j in range(n))
            for i in range(m))
        object.__setattr__(self, "matrix", norm)

    @classmethod
    def zero(cls, a, b):
        return cls(a, b)

    @classmethod
    def identity(cls, a):
        n = len(a)
        return cls(a, a, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def scalar(cls, a, k):
        n = len(a)
        return cls(a, a, [[k if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, a, b, columns):
        m = len(b)
        return cls(a, b, [[columns[j][i] for j in range(len(a))] for i in range(m)])

    def column(self, j):
        return tuple(row[j] for row in self.matrix)

    def __call__(self, x):
        out = []
        for i, s in enumerate(self.codomain.summands):
            row = self.matrix[i]
            out.append(s.reduce(sum((row[j] * x[j] for j in range(len(x))), Fraction(0))))
        return tuple(out)

    def compose(self, other: "AbMap") -> "AbMap":
        """self after other."""
        if not other.codomain.same_layout(self.domain):
            raise CompositionMismatch(f"{other.codomain!r} vs {self.domain!r}")
        m, k, n = len(self.codomain), len(self.domain), len(other.domain)
        mat = [[sum((self.matrix[i][t] * other.matrix[t][j] for t in range(k)), Fraction(0))
                for j in range(n)] for i in range(m)]
        return AbMap(other.domain, self.codomain, mat)

    def __matmul__(self, other):
        return self.compose(other)

    def _check_same(self, other):
        if not (self.domain.same_layout(other.domain) and self.codomain.same_layout(other.codomain)):
            raise CompositionMismatch("maps have different layouts")

    def __add__(self, other):
        self._check_same(other)
        return AbMap(self.domain, self.codomain,
                     [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.matrix, other.matrix)])

    def __neg__(self):
        return AbMap(self.domain, self.codomain, [[-a for a in r] for r in self.matrix])

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return AbMap(self.domain, self.codomain, [[k * a for a in r] for r in self.matrix])

    @property
    def is_zero(self):
        return all(a == 0 for r in self.matrix for a in r)

    def __eq__(self, other):
        if not isinstance(other, AbMap):
            return NotImplemented
        return (self.domain.same_layout(other.domain) and self.codomain.same_layout(other.codomain)
                and self.matrix == other.matrix)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        rows = [[str(a) for a in r] for r in self.matrix]
        return f"AbMap({self.domain} -> {self.codomain}, {rows})"


def block_map(domains, codomains, blocks):
    """Assemble a map between direct sums from a dict {(i, j): AbMap}."""
    dom = AbelianGroup(sum((d.summands for d in domains), ()))
    cod = AbelianGroup(sum((c.summands for c in codomains), ()))
    mat = [[0] * len(dom) for _ in range(len(cod))]
    roff = 0
    for i, c in enumerate(codomains):
        coff = 0
        for j, d in enumerate(domains):
            b = blocks.get((i, j))
            if b is not None:
                for r in range(len(c)):
                    for s in range(len(d)):
                        mat[roff + r][coff + s] = b.matrix[r][s]
            coff += len(d)
        roff += len(c)
    return AbMap(dom, cod, mat)


# ------------------------------------------------------ primary coordinates

def _crt_idempotent(q, n):
    """e with e = 1 mod q and e = 0 mod n/q."""
    m = n // q
    # m * inv(m mod q) mod n
    return (m * pow(m, -1, q)) % n if q > 1 else 0


class _Primary:
    """Coordinates of a group split into Z, Q and p-primary blocks."""

    def __init__(self, group: AbelianGroup):
        self.group = group
        pieces = []  # (category key, summand, source index, crt element)
        for idx, s in enumerate(group.summands):
            if s.kind == "Z":
                pieces.append((("Z", 0), s, idx, None))
            elif s.kind == "Q":
                pieces.append((("Q", 0), s, idx, None))
            elif s.kind == "P":
                pieces.append((("P", s.n), s, idx, None))
            else:
                for p, e in sorted(la.factorize(s.n).items()):
                    q = p ** e
                    pieces.append((("P", p), cyclic(q), idx, _crt_idempotent(q, s.n)))
        pieces.sort(key=lambda t: (t[0][0] != "Z", t[0][0] != "Q", t[0][1]))
        self.pieces = pieces
        self.layout = AbelianGroup(tuple(p[1] for p in pieces))
        fwd = [[0] * len(group) for _ in pieces]
        back = [[0] * len(pieces) for _ in range(len(group))]
        for r, (_, s, idx, e) in enumerate(pieces):
            fwd[r][idx] = 1
            back[idx][r] = 1 if e is None else e
        self.to = AbMap(group, self.layout, fwd)
        self.back = AbMap(self.layout, group, back)
        self.blocks = {}
        for r, (key, _, _, _) in enumerate(pieces):
            self.blocks.setdefault(key, []).append(r)

    def indices(self, key):
        return self.blocks.get(key, [])

    @property
    def z(self):
        return self.indices(("Z", 0))

    @property
    def q(self):
        return self.indices(("Q", 0))

    def primes(self):
        return sorted(k[1] for k in self.blocks if k[0] == "P")

    @property
    def rest(self):
        return [i for i in range(len(self.pieces)) if self.pieces[i][0][0] != "Z"]


def _sub(mat, rows, cols):
    return [[mat[i][j] for j in cols] for i in rows]


def _exp(s: Summand, p):
    """Exponent of a p-primary summand, None for Z(p^inf)."""
    if s.kind == "P":
        return None
    return la.p_valuation(s.n, p)


def _to_lambda(x, src_e, dst_e, p):
    """Entry -> multiplier on the ambient Z(p^inf) coordinates."""
    x = Fraction(x)
    if src_e is None:
        return int(x)
    elem = x / p ** dst_e if dst_e is not None else x
    lam = elem * p ** src_e
    assert lam.denominator == 1
    return int(lam)


def _from_lambda(lam, src_e, dst_e, p):
    if src_e is None:
        if dst_e is not None:
            if lam:
                raise EntryError("nonzero map from a divisible into a finite summand")
            return Fraction(0)
        return Fraction(lam)
    elem = Fraction(lam, p ** src_e)
    if dst_e is None:
        return elem - floor(elem)
    val = elem * p ** dst_e
    if val.denominator != 1:
        raise EntryError("multiplier does not define a map")
    return Fraction(int(val) % p ** dst_e)


def _localize(inv, p):
    """Invariant of a Z-module -> exponent at p (None: free, -1: vanishes)."""
    if inv == 0:
        return None
    v = la.p_valuation(inv, p)
    return v if v else -1


def _p_kernel(src, dst, mat, p):
    """Kernel of a p-primary map. Returns (summands, inclusion columns)."""
    se = [_exp(s, p) for s in src]
    de = [_exp(s, p) for s in dst]
    lam = [[_to_lambda(mat[i][j], se[j], de[i], p) for j in range(len(src))]
           for i in range(len(dst))]
    dual = la.transpose(lam, len(src)) if dst else [[] for _ in src]
    rels_a = [0 if e is None else p ** e for e in se]
    invs, rows = la.fg_cokernel(dual, rels_a, len(dst))
    summands, cols = [], []
    for inv, row in zip(invs, rows):
        v = _localize(inv, p)
        if v == -1:
            continue
        ke = v
        if ke is None:
            summands.append(prufer(p))
        else:
            summands.append(cyclic(p ** ke))
            row = [x % p ** ke for x in row]
        cols.append([_from_lambda(row[i], ke, se[i], p) for i in range(len(src))])
    return summands, cols


def _p_cokernel(src, dst, mat, p):
    """Cokernel of a p-primary map. Returns (summands, projection rows)."""
    se = [_exp(s, p) for s in src]
    de = [_exp(s, p) for s in dst]
    lam = [[_to_lambda(mat[i][j], se[j], de[i], p) for j in range(len(src))]
           for i in range(len(dst))]
    dual = la.transpose(lam, len(src)) if dst else []
    rels_b = [0 if e is None else p ** e for e in de]
    rels_a = [0 if e is None else p ** e for e in se]
    invs, gens = la.fg_kernel(dual, rels_b, rels_a)
    summands, rows = [], []
    for inv, g in zip(invs, gens):
        v = _localize(inv, p)
        if v == -1:
            continue
        if v is None:
            summands.append(prufer(p))
        else:
            summands.append(cyclic(p ** v))
        rows.append([_from_lambda(g[i], de[i], v, p) for i in range(len(dst))])
    return summands, rows


def _p_solve(src, dst, mat, y, p):
    """Some x with mat x = y in a p-primary block, or None."""
    se = [_exp(s, p) for s in src]
    de = [_exp(s, p) for s in dst]
    if all(v == 0 for v in y):
        return [Fraction(0)] * len(src)
    j = 0
    for s, v, e in zip(dst, y, de):
        elem = Fraction(v) if e is None else Fraction(v) / p ** e
        j = max(j, la.p_valuation(elem.denominator, p) or 0)
    lam = [[_to_lambda(mat[i][jj], se[jj], de[i], p) for jj in range(len(src))]
           for i in range(len(dst))]
    slack = 1 + max([e for e in se + de if e is not None], default=0)
    if lam and src:
        d = la.diagonal(la.smith(lam, len(dst), len(src))[0])
        slack += sum(la.p_valuation(x, p) for x in d if x)
    for level in range(max(j, 1), j + slack + 1):
        ts = [level if e is None else min(e, level) for e in se]
        td = [level if e is None else min(e, level) for e in de]
        # element of the ambient Z(p^inf) for generator of truncated source
        f = [[0] * len(src) for _ in dst]
        for jj in range(len(src)):
            for i in range(len(dst)):
                # multiplier acts on ambient elements: image of 1/p^ts
                elem = Fraction(lam[i][jj], p ** ts[jj])
                val = elem * p ** td[i]
                if val.denominator != 1:
                    break
                f[i][jj] = int(val)
        target = []
        ok = True
        for v, e, t in zip(y, de, td):
            elem = Fraction(v) if e is None else Fraction(v) / p ** e
            val = elem * p ** t
            if val.denominator != 1:
                ok = False
                break
            target.append(int(val))
        if not ok:
            continue
        sol = la.fg_solve(f, [p ** t for t in td], target, len(src))
        if sol is None:
            continue
        x = []
        for jj, (s, e) in enumerate(zip(src, se)):
            elem = Fraction(sol[jj], p ** ts[jj])
            x.append(s.reduce(elem if e is None else elem * p ** e))
        return x
    return None


# ------------------------------------------------------- the divisible regime

def _rest_kernel(src, dst, mat, pa, pb):
    """Kernel of a map with no Z summands (in primary coordinates)."""
    summands, cols = [], []
    n = len(src)
    aq, bq = pa["Q"], pb["Q"]
    if aq:
        qm = _sub(mat, bq, aq)
        for vec in la.q_nullspace(qm, len(aq)) if bq else [
                [Fraction(int(i == j)) for i in range(len(aq))] for j in range(len(aq))]:
            col = [Fraction(0)] * n
            for t, idx in enumerate(aq):
                col[idx] = vec[t]
            summands.append(QQ)
            cols.append(col)
    for p in sorted(pa["P"]):
        ai = pa["P"][p]
        bi = pb["P"].get(p, [])
        ss, cc = _p_kernel([src[i] for i in ai], [dst[i] for i in bi], _sub(mat, bi, ai), p)
        for s, c in zip(ss, cc):
            col = [Fraction(0)] * n
            for t, idx in enumerate(ai):
                col[idx] = c[t]
            summands.append(s)
            cols.append(col)
    return summands, cols


def _rest_cokernel(src, dst, mat, pa, pb):
    summands, rows = [], []
    m = len(dst)
    aq, bq = pa["Q"], pb["Q"]
    if bq:
        qm = _sub(mat, bq, aq)
        if aq:
            left = la.q_left_nullspace(qm, len(bq))
        else:
            left = [[Fraction(int(i == j)) for j in range(len(bq))] for i in range(len(bq))]
        for vec in left:
            row = [Fraction(0)] * m
            for t, idx in enumerate(bq):
                row[idx] = vec[t]
            summands.append(QQ)
            rows.append(row)
    for p in sorted(pb["P"]):
        bi = pb["P"][p]
        ai = pa["P"].get(p, [])
        ss, rr = _p_cokernel([src[i] for i in ai], [dst[i] for i in bi], _sub(mat, bi, ai), p)
        for s, r in zip(ss, rr):
            row = [Fraction(0)] * m
            for t, idx in enumerate(bi):
                row[idx] = r[t]
            summands.append(s)
            rows.append(row)
    return summands, rows


def _rest_solve(src, dst, mat, y, pa, pb):
    x = [Fraction(0)] * len(src)
    aq, bq = pa["Q"], pb["Q"]
    if bq:
        yq = [y[i] for i in bq]
        if any(yq):
            if not aq:
                return None
            sol = la.q_solve(_sub(mat, bq, aq), yq, len(aq))
            if sol is None:
                return None
            for t, idx in enumerate(aq):
                x[idx] = sol[t]
    for p in sorted(pb["P"]):
        bi = pb["P"][p]
        ai = pa["P"].get(p, [])
        yp = [y[i] for i in bi]
        if not any(yp):
            continue
        if not ai:
            return None
        sol = _p_solve([src[i] for i in ai], [dst[i] for i in bi], _sub(mat, bi, ai), yp, p)
        if sol is None:
            return None
        for t, idx in enumerate(ai):
            x[idx] = sol[t]
    return x


def _partition(prim: _Primary, idx):
    """Split a subset of primary indices into Q and per-prime lists (local positions)."""
    out = {"Q": [], "P": {}}
    for local, i in enumerate(idx):
        key = prim.pieces[i][0]
        if key[0] == "Q":
            out["Q"].append(local)
        elif key[0] == "P":
            out["P"].setdefault(key[1], []).append(local)
    return out


class _Split:
    """A map in primary coordinates split into its Z and non-Z blocks."""

    def __init__(self, f: AbMap):
        self.f = f
        self.pa, self.pb = _Primary(f.domain), _Primary(f.codomain)
        g = self.pb.to.compose(f).compose(self.pa.back)
        self.g = g
        self.az, self.ar = self.pa.z, self.pa.rest
        self.bz, self.br = self.pb.z, self.pb.rest
        A, B = self.pa.layout.summands, self.pb.layout.summands
        self.src_r = [A[i] for i in self.ar]
        self.dst_r = [B[i] for i in self.br]
        self.part_a = _partition(self.pa, self.ar)
        self.part_b = _partition(self.pb, self.br)
        self.m_rr = _sub(g.matrix, self.br, self.ar)
        self.m_rz = _sub(g.matrix, self.br, self.az)
        self.m_zz = [[int(x) for x in row] for row in _sub(g.matrix, self.bz, self.az)]

    def rest_cokernel(self):
        return _rest_cokernel(self.src_r, self.dst_r, self.m_rr, self.part_a, self.part_b)

    def rest_solve(self, y):
        return _rest_solve(self.src_r, self.dst_r, self.m_rr, y, self.part_a, self.part_b)

    def z_constraints(self, c_sum, c_rows, target_r=None, target_z=None):
        """Integer rows/rels encoding (m_zz z, pi m_rz z) on the Z coordinates.

        With targets, also returns the matching integer right-hand side.
        """
        nz = len(self.az)
        rows, rels, rhs = [], [], []
        for i in range(len(self.bz)):
            rows.append(list(self.m_zz[i]))
            rels.append(0)
            rhs.append(int(target_z[i]) if target_z is not None else 0)
        for s, prow in zip(c_sum, c_rows):
            coeffs = [sum((prow[t] * self.m_rz[t][j] for t in range(len(self.br))), Fraction(0))
                      for j in range(nz)]
            tval = Fraction(0)
            if target_r is not None:
                tval = sum((prow[t] * target_r[t] for t in range(len(self.br))), Fraction(0))
            if s.kind == "C":
                rows.append([int(c) % s.n for c in coeffs])
                rels.append(s.n)
                rhs.append(int(tval) % s.n)
                continue
            if s.kind == "P":
                coeffs = [c - floor(c) for c in coeffs]
                tval = tval - floor(tval)
            den = 1
            for c in coeffs + [tval]:
                den = la.lcm(den, c.denominator)
            rows.append([int(c * den) for c in coeffs])
            rels.append(0 if s.kind == "Q" else den)
            rhs.append(int(tval * den))
        return rows, rels, rhs


def kernel_map(f: AbMap) -> AbMap:
    """Inclusion of ker f into the domain of f."""
    sp = _Split(f)
    k_sum, k_cols = _rest_kernel(sp.src_r, sp.dst_r, sp.m_rr, sp.part_a, sp.part_b)
    nA = len(sp.pa.layout)
    summands, cols = [], []
    if sp.az:
        c_sum, c_rows = sp.rest_cokernel()
        rows, rels, _ = sp.z_constraints(c_sum, c_rows)
        invs, gens = la.fg_kernel(rows, [0] * len(sp.az), rels) if rows else (
            [0] * len(sp.az), [[int(i == j) for i in range(len(sp.az))] for j in range(len(sp.az))])
        for inv, z in zip(invs, gens):
            target = [-sum((sp.m_rz[t][j] * z[j] for j in range(len(sp.az))), Fraction(0))
                      for t in range(len(sp.br))]
            target = [sp.dst_r[t].reduce(v) for t, v in enumerate(target)]
            w = sp.rest_solve(target)
            if w is None:
                raise ArithmeticError("kernel lift failed")
            col = [Fraction(0)] * nA
            for t, idx in enumerate(sp.az):
                col[idx] = Fraction(z[t])
            for t, idx in enumerate(sp.ar):
                col[idx] = w[t]
            summands.append(ZZ)
            cols.append(col)
    for s, c in zip(k_sum, k_cols):
        col = [Fraction(0)] * nA
        for t, idx in enumerate(sp.ar):
            col[idx] = c[t]
        summands.append(s)
        cols.append(col)
    K = AbelianGroup(tuple(summands))
    incl = AbMap.from_columns(K, sp.pa.layout, cols)
    return sp.pa.back.compose(incl)


def cokernel_map(f: AbMap) -> AbMap:
    """Projection from the codomain of f onto coker f."""
    sp = _Split(f)
    c_sum, c_rows = sp.rest_cokernel()
    fin = [i for i, s in enumerate(c_sum) if s.kind == "C"]
    div = [i for i, s in enumerate(c_sum) if s.kind != "C"]
    nz = len(sp.az)
    for i in div:
        for j in range(nz):
            v = sum((c_rows[i][t] * sp.m_rz[t][j] for t in range(len(sp.br))), Fraction(0))
            if c_sum[i].reduce(v) != 0:
                raise UnsupportedGroupClass(
                    "cokernel of a lattice mapping into a divisible group")
    # H = B_Z + finite part of the rest cokernel
    h_sum = [ZZ] * len(sp.bz) + [c_sum[i] for i in fin]
    h_rels = [0] * len(sp.bz) + [c_sum[i].n for i in fin]
    rows, _, _ = sp.z_constraints([c_sum[i] for i in fin], [c_rows[i] for i in fin])
    invs, prows = la.fg_cokernel(rows, h_rels, nz)
    out_sum = [ZZ if d == 0 else cyclic(d) for d in invs] + [c_sum[i] for i in div]
    C = AbelianGroup(tuple(out_sum))
    H = AbelianGroup(tuple(h_sum))
    Bp = sp.pb.layout
    # stage 1: B' -> H + divisible part
    mid = AbelianGroup(tuple(h_sum) + tuple(c_sum[i] for i in div))
    m1 = [[0] * len(Bp) for _ in range(len(mid))]
    for t, idx in enumerate(sp.bz):
        m1[t][idx] = 1
    for r, i in enumerate(fin + div):
        for t, idx in enumerate(sp.br):
            m1[len(sp.bz) + r][idx] = c_rows[i][t]
    s1 = AbMap(Bp, mid, m1)
    m2 = [[0] * len(mid) for _ in range(len(C))]
    for r, prow in enumerate(prows):
        for c in range(len(H)):
            m2[r][c] = prow[c]
    for r in range(len(div)):
        m2[len(prows) + r][len(H) + r] = 1
    s2 = AbMap(mid, C, m2)
    return s2.compose(s1).compose(sp.pb.to)


def solve(f: AbMap, y):
    """Some x with f(x) = y, or None when y is not in the image."""
    sp = _Split(f)
    yp = sp.pb.to(y)
    yz = [yp[i] for i in sp.bz]
    yr = [yp[i] for i in sp.br]
    nz = len(sp.az)
    z = [0] * nz
    if nz:
        c_sum, c_rows = sp.rest_cokernel()
        rows, rels, rhs = sp.z_constraints(c_sum, c_rows, target_r=yr, target_z=yz)
        if rows:
            z = la.fg_solve(rows, rels, rhs, nz)
            if z is None:
                return None
    elif any(yz):
        return None
    resid = [sp.dst_r[t].reduce(yr[t] - sum((sp.m_rz[t][j] * z[j] for j in range(nz)), Fraction(0)))
             for t in range(len(sp.br))]
    w = sp.rest_solve(resid)
    if w is None:
        return None
    xp = [Fraction(0)] * len(sp.pa.layout)
    for t, idx in enumerate(sp.az):
        xp[idx] = Fraction(z[t])
    for t, idx in enumerate(sp.ar):
        xp[idx] = w[t]
    x = sp.pa.back(tuple(xp))
    if f(x) != f.codomain.element(y):
        raise ArithmeticError("solver produced a wrong preimage")
    return x


def invert(f: AbMap) -> AbMap:
    """Inverse of an isomorphism.

    Columns for Z, Z/n and Q sources are preimages of unit vectors. The
    Z(p^inf) block of an isomorphism is an integer matrix and its inverse
    must again be integral to stay inside the representable class.
    """
    k = kernel_map(f)
    if not k.domain.is_zero:
        raise ValueError("map is not injective")
    A, B = f.domain, f.codomain
    cols = [None] * len(B)
    by_prime = {}
    for j, s in enumerate(B.summands):
        if s.kind == "P":
            by_prime.setdefault(s.n, []).append(j)
            continue
        pre = solve(f, tuple(Fraction(int(i == j)) for i in range(len(B))))
        if pre is None:
            raise ValueError("map is not surjective")
        cols[j] = list(pre)
    for p, bj in by_prime.items():
        ai = [i for i, s in enumerate(A.summands) if s.kind == "P" and s.n == p]
        if len(ai) != len(bj):
            raise ValueError("map is not an isomorphism")
        block = [[f.matrix[r][c] for c in ai] for r in bj]
        aug = [list(row) + [Fraction(int(r == t)) for t in range(len(bj))]
               for r, row in enumerate(block)]
        rows, piv = la.rref(aug, 2 * len(bj))
        if piv[:len(bj)] != list(range(len(bj))) or len(rows) < len(bj):
            raise ValueError("map is not an isomorphism")
        inv = [row[len(bj):] for row in rows]
        if any(x.denominator != 1 for row in inv for x in row):
            raise UnsupportedGroupClass("inverse needs a p-adic unit outside Z")
        for t, j in enumerate(bj):
            col = [Fraction(0)] * len(A)
            for r, i in enumerate(ai):
                col[i] = inv[r][t]
            cols[j] = col
    g = AbMap.from_columns(B, A, cols)
    if not g.compose(f) == AbMap.identity(A) or not f.compose(g) == AbMap.identity(B):
        raise ValueError("map is not an isomorphism")
    return g


def image_map(f: AbMap) -> AbMap:
    """Inclusion of im f into the codomain, for f with finitely generated domain."""
    if not f.domain.finitely_generated:
        raise UnsupportedGroupClass("image of a map out of a divisible group")
    k = kernel_map(f)
    proj = cokernel_map(k)
    cols = []
    for gen in proj.codomain.generators():
        pre = solve(proj, gen)
        cols.append(f(pre))
    return AbMap.from_columns(proj.codomain, f.codomain, cols)


def exactness_witness(f: AbMap, g: AbMap):
    """None when im f = ker g, else a description of the failure."""
    if not f.codomain.same_layout(g.domain):
        raise CompositionMismatch("f and g are not composable")
    gf = g.compose(f)
    if not gf.is_zero:
        for j, gen in enumerate(f.domain.generators()):
            if any(gf.column(j)):
                return ("composite_nonzero", gen)
        return ("composite_nonzero", None)
    incl = kernel_map(g)
    if incl.domain.finitely_generated:
        for gen in incl.domain.generators():
            if solve(f, incl(gen)) is None:
                return ("missed_kernel_element", incl(gen))
        return None
    proj = cokernel_map(f)
    test = proj.compose(incl)
    for j, gen in enumerate(incl.domain.generators()):
        if any(test.column(j)):
            return ("missed_kernel_element", incl(gen))
    return None


# --------------------------------------------------------------- graded

def _deg(n):
    return n % PERIOD


@dataclass(frozen=True, eq=False)
class GradedGroup:
    """Period-8 graded group: one AbelianGroup per degree 0..7."""

    groups: tuple = ()

    def __post_init__(self):
        gs = tuple(self.groups) or tuple(ZERO_GROUP for _ in range(PERIOD))
        if len(gs) != PERIOD:
            raise ValueError("a graded group needs exactly 8 degrees")
        object.__setattr__(self, "groups", gs)

    @classmethod
    def zero(cls):
        return cls(tuple(ZERO_GROUP for _ in range(PERIOD)))

    def __getitem__(self, n):
        return self.groups[_deg(n)]

    def shift(self, k):
        """(shift(k))_n = self_{n+k}."""
        return GradedGroup(tuple(self[n + k] for n in range(PERIOD)))

    def direct_sum(self, other):
        return GradedGroup(tuple(a.direct_sum(b) for a, b in zip(self.groups, other.groups)))

    def same_layout(self, other):
        return all(a.same_layout(b) for a, b in zip(self.groups, other.groups))

    def __eq__(self, other):
        if not isinstance(other, GradedGroup):
            return NotImplemented
        return all(a == b for a, b in zip(self.groups, other.groups))

    def __hash__(self):
        return hash(tuple(g.canonical() for g in self.groups))

    @property
    def is_zero(self):
        return all(g.is_zero for g in self.groups)

    def __repr__(self):
        return "GradedGroup(" + ", ".join(str(g) for g in self.groups) + ")"


@dataclass(frozen=True, eq=False)
class GroupHom:
    """Graded homomorphism of a fixed degree; blocks[d] maps degree d."""

    domain: GradedGroup
    codomain: GradedGroup
    degree: int
    blocks: tuple = ()

    def __post_init__(self):
        bl = tuple(self.blocks) or tuple(
            AbMap(self.domain[d], self.codomain[d + self.degree]) for d in range(PERIOD))
        if len(bl) != PERIOD:
            raise ValueError("need 8 blocks")
        for d, b in enumerate(bl):
            if not (b.domain.same_layout(self.domain[d])
                    and b.codomain.same_layout(self.codomain[d + self.degree])):
                raise CompositionMismatch(f"block at degree {d} has the wrong shape")
        object.__setattr__(self, "blocks", bl)

    @classmethod
    def zero(cls, a, b, degree=0):
        return cls(a, b, degree)

    @classmethod
    def identity(cls, a):
        return cls(a, a, 0, tuple(AbMap.identity(g) for g in a.groups))

    @classmethod
    def scalar(cls, a, k, degree=0):
        if degree % PERIOD:
            raise ValueError("scalar maps need degree divisible by 8")
        return cls(a, a, degree, tuple(AbMap.scalar(g, k) for g in a.groups))

    def __getitem__(self, d):
        return self.blocks[_deg(d)]

    def __call__(self, d, x):
        return self.blocks[_deg(d)](x)

    def compose(self, other: "GroupHom") -> "GroupHom":
        """self after other."""
        blocks = tuple(self[d + other.degree].compose(other[d]) for d in range(PERIOD))
        return GroupHom(other.domain, self.codomain, self.degree + other.degree, blocks)

    def __matmul__(self, other):
        return self.compose(other)

    def _same(self, other):
        if (self.degree - other.degree) % PERIOD:
            raise CompositionMismatch("degree mismatch")

    def __add__(self, other):
        self._same(other)
        return GroupHom(self.domain, self.codomain, self.degree,
                        tuple(a + b for a, b in zip(self.blocks, other.blocks)))

    def __neg__(self):
        return GroupHom(self.domain, self.codomain, self.degree, tuple(-b for b in self.blocks))

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, k):
        return GroupHom(self.domain, self.codomain, self.degree,
                        tuple(b.scaled(k) for b in self.blocks))

    def shift(self, k):
        """The same map viewed between shifted gradings."""
        return GroupHom(self.domain.shift(k), self.codomain.shift(k), self.degree,
                        tuple(self[d + k] for d in range(PERIOD)))

    def inverse(self) -> "GroupHom":
        blocks = [None] * PERIOD
        for d in range(PERIOD):
            blocks[_deg(d + self.degree)] = invert(self.blocks[d])
        return GroupHom(self.codomain, self.domain, -self.degree, tuple(blocks))

    @property
    def is_zero(self):
        return all(b.is_zero for b in self.blocks)

    def equals(self, other):
        return ((self.degree - other.degree) % PERIOD == 0
                and all(a == b for a, b in zip(self.blocks, other.blocks)))

    def first_difference(self, other):
        for d in range(PERIOD):
            if self.blocks[d] != other.blocks[d]:
                return d
        return None


def kernel(f):
    """Kernel of an AbMap or GroupHom: (groups, inclusion)."""
    if isinstance(f, AbMap):
        inc = kernel_map(f)
        return inc.domain, inc
    incs = tuple(kernel_map(b) for b in f.blocks)
    K = GradedGroup(tuple(i.domain for i in incs))
    return K, GroupHom(K, f.domain, 0, incs)


def cokernel(f):
    """Cokernel of an AbMap or GroupHom: (groups, projection)."""
    if isinstance(f, AbMap):
        pr = cokernel_map(f)
        return pr.codomain, pr
    prs = [None] * PERIOD
    for d in range(PERIOD):
        prs[_deg(d + f.degree)] = cokernel_map(f.blocks[d])
    C = GradedGroup(tuple(p.codomain for p in prs))
    return C, GroupHom(f.codomain, C, 0, tuple(prs))


@dataclass(frozen=True)
class ExactnessReport:
    exact: bool
    degree: int = None
    reason: str = None
    witness: tuple = None

    def __bool__(self):
        return self.exact


def is_exact_at(f, g) -> ExactnessReport:
    """Check im f = ker g (degreewise for graded maps)."""
    if isinstance(f, AbMap):
        w = exactness_witness(f, g)
        return ExactnessReport(True) if w is None else ExactnessReport(False, 0, w[0], w[1])
    if not f.codomain.same_layout(g.domain):
        raise CompositionMismatch("codomain of f is not the domain of g")
    for d in range(PERIOD):
        w = exactness_witness(f[d], g[d + f.degree])
        if w is not None:
            return ExactnessReport(False, _deg(d + f.degree), w[0], w[1])
    return ExactnessReport(True)


def smith_normal_form(m):
    """(D, U, V) with U m V = D, invariant factors d1 | d2 | ... on the diagonal."""
    d, u, _, v, _ = la.smith(m)
    return d, u, v
