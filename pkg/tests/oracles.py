"""Independent reference computations used by the tests.

Nothing here calls the package's kernel/cokernel/solve machinery: finite
groups are handled by listing elements, finitely generated ones by sympy's
Smith and Hermite normal forms.
"""

from itertools import product
from math import gcd

from sympy import Matrix, ZZ as SZZ
from sympy.matrices.normalforms import hermite_normal_form, smith_normal_form


# ---------------------------------------------------------- finite groups

def orders(G):
    """Cyclic orders of a finite group's summands, in layout order."""
    out = []
    for s in G.summands:
        assert s.kind == "C", "enumeration needs finite groups"
        out.append(s.n)
    return out


def elements(G):
    return [tuple(v) for v in product(*(range(n) for n in orders(G)))]


def apply(f, x):
    """Image of an integer vector under f, reduced into f.codomain, as integers."""
    ns = orders(f.codomain)
    out = []
    for i, n in enumerate(ns):
        v = sum(f.matrix[i][j] * x[j] for j in range(len(x)))
        assert v.denominator == 1
        out.append(int(v) % n)
    return tuple(out)


def as_int(G, v):
    return tuple(int(t) % n for t, n in zip(v, orders(G)))


def kernel_set(f):
    return {x for x in elements(f.domain) if not any(apply(f, x))}


def image_set(f):
    return {apply(f, x) for x in elements(f.domain)}


# ---------------------------------------------------------- smith via sympy

def invariant_factors(mat, nrows):
    """Nonunit diagonal of the Smith form of an integer matrix with nrows rows,
    plus the free rank of the cokernel."""
    if nrows == 0:
        return [], 0
    cols = len(mat[0]) if mat else 0
    if cols == 0:
        return [], nrows
    M = Matrix(mat)
    D = smith_normal_form(M, domain=SZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    nonzero = [d for d in diag if d != 0]
    free = nrows - len(nonzero)
    return sorted(d for d in nonzero if d != 1), free


def cokernel_invariants(mat, nrows):
    tors, free = invariant_factors(mat, nrows)
    return free, tors


# ------------------------------------------------- Hom of abelian groups

def torsion_part(G, m):
    """The m-torsion subgroup G[m], as a list of summand strings."""
    out = []
    for s in G.summands:
        if s.kind == "C":
            g = gcd(s.n, m)
            if g > 1:
                out.append(f"Z/{g}")
        elif s.kind == "P":
            k = 1
            while m % (s.n ** k) == 0:
                k += 1
            if k > 1:
                out.append(f"Z/{s.n ** (k - 1)}")
    return out


def hom_ab(A, B):
    """Hom_Z(A, B) for finitely generated A, as a '+'-joined string."""
    out = []
    for s in A.summands:
        if s.kind == "Z":
            out += [str(t) for t in B.summands]
        elif s.kind == "C":
            out += torsion_part(B, s.n)
        else:
            raise ValueError("source must be finitely generated")
    return "+".join(out) or "0"


def hom_ku(M, N, n):
    """Degree-n maps of KU_*-modules from M^U to N^U, by 2-periodicity."""
    parts = [hom_ab(M.group("U", 0), N.group("U", n)),
             hom_ab(M.group("U", 1), N.group("U", n + 1))]
    return "+".join(p for p in parts if p != "0") or "0"


# ------------------------------------------ Ext of the cokernel of two

def ext_coker_two(N, x, n, eta_matrix):
    """Ext^x_n(coker(2 on F(b,0,R)), N) from the presentation
    F(b,1,R) -eta-> F(b,0,R) -2-> F(b,0,R), i.e. ker(eta on N^x_n) / 2 N^x_n.

    ``eta_matrix`` is the integer matrix of eta: N^x_n -> N^x_{n+1} (zero for
    x = U). Both groups must be finitely generated. Returns (free rank,
    torsion invariants) of the quotient, computed with sympy's Smith form.
    """
    G, H = N.group(x, n), N.group(x, n + 1)
    r = len(G)
    rel_G = [s.n if s.kind == "C" else 0 for s in G.summands]
    mod_H = [s.n if s.kind == "C" else 0 for s in H.summands]

    def in_kernel(v):
        for i, m in enumerate(mod_H):
            t = sum(eta_matrix[i][j] * v[j] for j in range(r))
            if (m == 0 and t != 0) or (m and t % m):
                return False
        return True

    # ker(eta) contains 2 Z^r since eta has order two, so it is spanned by
    # 2 Z^r and lifts of {0,1}-vectors
    lifts = [v for v in product((0, 1), repeat=r) if any(v) and in_kernel(v)]
    basis = [[2 if i == j else 0 for i in range(r)] for j in range(r)] + [list(v) for v in lifts]
    # lattice basis of the kernel lift
    K = Matrix(basis).T if basis else Matrix.zeros(r, 0)
    Kb = hermite_normal_form(K) if r else K
    # relations: 2 e_j and m_j e_j, expressed in the kernel basis
    rels = []
    for j in range(r):
        e = [0] * r
        e[j] = 2 if rel_G[j] == 0 else gcd(2, rel_G[j])
        rels.append(e)
    if r == 0:
        return 0, []
    coords = Kb.solve(Matrix(rels).T)
    mat = [[int(coords[i, j]) for j in range(coords.shape[1])] for i in range(coords.shape[0])]
    return cokernel_invariants(mat, Kb.shape[1])


def integer_matrix(block):
    out = []
    for row in block.matrix:
        r = []
        for e in row:
            assert e.denominator == 1
            r.append(int(e))
        out.append(r)
    return out
