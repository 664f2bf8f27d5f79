"""Exact integer and rational linear algebra.

Everything here works on plain lists of Python ints or Fractions.
The integer routines treat a finitely generated abelian group as
Z^k modulo a diagonal relation vector ``rels`` (0 for a free coordinate).
"""

from fractions import Fraction
from math import gcd


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def matvec(a, v):
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def transpose(a, nrows=None):
    if not a:
        return [[] for _ in range(nrows or 0)]
    return [list(col) for col in zip(*a)]


class _Smith:
    """Smith normal form with both transforms and their inverses tracked."""

    def __init__(self, m, nrows, ncols):
        self.a = [list(map(int, row)) for row in m]
        self.m, self.n = nrows, ncols
        self.u, self.uinv = identity(nrows), identity(nrows)
        self.v, self.vinv = identity(ncols), identity(ncols)

    # row i += c * row j
    def row_add(self, i, j, c):
        if c == 0:
            return
        for mat in (self.a, self.u):
            ri, rj = mat[i], mat[j]
            for k in range(len(ri)):
                ri[k] += c * rj[k]
        for row in self.uinv:
            row[j] -= c * row[i]

    def row_swap(self, i, j):
        if i == j:
            return
        for mat in (self.a, self.u):
            mat[i], mat[j] = mat[j], mat[i]
        for row in self.uinv:
            row[i], row[j] = row[j], row[i]

    def row_neg(self, i):
        for mat in (self.a, self.u):
            mat[i] = [-x for x in mat[i]]
        for row in self.uinv:
            row[i] = -row[i]

    # col i += c * col j
    def col_add(self, i, j, c):
        if c == 0:
            return
        for mat in (self.a, self.v):
            for row in mat:
                row[i] += c * row[j]
        ri, rj = self.vinv[i], self.vinv[j]
        for k in range(len(rj)):
            rj[k] -= c * ri[k]

    def col_swap(self, i, j):
        if i == j:
            return
        for mat in (self.a, self.v):
            for row in mat:
                row[i], row[j] = row[j], row[i]
        self.vinv[i], self.vinv[j] = self.vinv[j], self.vinv[i]

    def run(self):
        a = self.a
        for t in range(min(self.m, self.n)):
            while True:
                best = None
                for i in range(t, self.m):
                    for j in range(t, self.n):
                        if a[i][j] and (best is None or abs(a[i][j]) < best[0]):
                            best = (abs(a[i][j]), i, j)
                if best is None:
                    return
                _, i, j = best
                self.row_swap(t, i)
                self.col_swap(t, j)
                p = a[t][t]
                dirty = False
                for i in range(t + 1, self.m):
                    q = a[i][t] // p
                    self.row_add(i, t, -q)
                    dirty = dirty or a[i][t] != 0
                for j in range(t + 1, self.n):
                    q = a[t][j] // p
                    self.col_add(j, t, -q)
                    dirty = dirty or a[t][j] != 0
                if dirty:
                    continue
                bad = next(((i, j) for i in range(t + 1, self.m)
                            for j in range(t + 1, self.n) if a[i][j] % p), None)
                if bad is None:
                    break
                self.row_add(t, bad[0], 1)
            if a[t][t] < 0:
                self.row_neg(t)


def smith(m, nrows=None, ncols=None):
    """Return (D, U, Uinv, V, Vinv) with U*m*V = D diagonal, d1 | d2 | ..."""
    nrows = len(m) if nrows is None else nrows
    ncols = (len(m[0]) if m else 0) if ncols is None else ncols
    s = _Smith(m, nrows, ncols)
    s.run()
    return s.a, s.u, s.uinv, s.v, s.vinv


def diagonal(d):
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def _relation_matrix(f, rels_dst, k):
    m = len(rels_dst)
    rows = []
    for i in range(m):
        row = [int(x) for x in f[i]] if k else []
        row += [rels_dst[i] if j == i else 0 for j in range(m)]
        rows.append(row)
    return rows


def fg_cokernel(f, rels_dst, k):
    """Cokernel of f: Z^k -> Z^m / rels_dst.

    Returns (invariants, projection rows) where invariants[i] is 0 for a
    free coordinate and >1 for a cyclic one.
    """
    m = len(rels_dst)
    if m == 0:
        return [], []
    r = _relation_matrix(f, rels_dst, k)
    d, u, _, _, _ = smith(r, m, len(r[0]))
    diag = diagonal(d)
    invariants, rows = [], []
    for i in range(m):
        di = diag[i] if i < len(diag) else 0
        if di == 1:
            continue
        invariants.append(di)
        rows.append(list(u[i]))
    return invariants, rows


def int_nullspace(r, ncols):
    """Integer basis (columns as lists) of {x : r x = 0}."""
    if not r:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    d, _, _, v, _ = smith(r, len(r), ncols)
    diag = diagonal(d)
    rank = sum(1 for x in diag if x)
    return [[v[i][j] for i in range(ncols)] for j in range(rank, ncols)]


def lattice_basis(gens, dim):
    """Basis of the sublattice of Z^dim spanned by gens, plus helpers.

    Returns (basis, coords) where coords(x) gives the coordinates of a lattice
    vector in that basis (exact; raises if x is not in the lattice).
    """
    if not gens:
        return [], lambda x: []
    g = transpose(gens)
    d, u, uinv, _, _ = smith(g, dim, len(gens))
    diag = diagonal(d)
    r = sum(1 for x in diag if x)
    basis = [[diag[i] * uinv[row][i] for row in range(dim)] for i in range(r)]

    def coords(x):
        ux = matvec(u, x)
        out = []
        for i in range(r):
            if ux[i] % diag[i]:
                raise ValueError("vector not in lattice")
            out.append(ux[i] // diag[i])
        if any(ux[i] for i in range(r, dim)):
            raise ValueError("vector not in lattice")
        return out

    return basis, coords


def fg_kernel(f, rels_src, rels_dst):
    """Kernel of a well-defined map Z^k/rels_src -> Z^m/rels_dst.

    Returns (invariants, generators) with generators given as vectors in
    Z^k, one per invariant (0 = free, >1 = cyclic of that order).
    """
    k = len(rels_src)
    if k == 0:
        return [], []
    m = len(rels_dst)
    if m == 0:
        r, width = [], k
    else:
        r = _relation_matrix(f, rels_dst, k)
        width = k + m
    null = int_nullspace(r, width)
    gens = [vec[:k] for vec in null]
    gens = [g for g in gens if any(g)]
    basis, coords = lattice_basis(gens, k)
    rk = len(basis)
    if rk == 0:
        return [], []
    rel_cols = [coords([rels_src[i] if j == i else 0 for j in range(k)])
                for i in range(k) if rels_src[i]]
    if rel_cols:
        c = transpose(rel_cols)
        d2, _, u2inv, _, _ = smith(c, rk, len(rel_cols))
        diag2 = diagonal(d2)
    else:
        u2inv = identity(rk)
        diag2 = []
    invariants, out = [], []
    for i in range(rk):
        di = diag2[i] if i < len(diag2) else 0
        if di == 1:
            continue
        col = [u2inv[row][i] for row in range(rk)]
        vec = [sum(basis[b][row] * col[b] for b in range(rk)) for row in range(k)]
        invariants.append(di)
        out.append(vec)
    return invariants, out


def fg_solve(f, rels_dst, y, k):
    """Some x in Z^k with f x = y modulo rels_dst, or None."""
    m = len(rels_dst)
    if m == 0:
        return [0] * k
    r = _relation_matrix(f, rels_dst, k)
    width = k + m
    d, u, _, v, _ = smith(r, m, width)
    diag = diagonal(d)
    z = matvec(u, [int(t) for t in y])
    w = [0] * width
    for i in range(m):
        di = diag[i] if i < len(diag) else 0
        if di == 0:
            if z[i]:
                return None
        else:
            if z[i] % di:
                return None
            w[i] = z[i] // di
    return matvec(v, w)[:k]


# ---------------------------------------------------------------- rationals

def rref(m, ncols):
    """Reduced row echelon form over Q. Returns (rows, pivot columns)."""
    a = [[Fraction(x) for x in row] for row in m]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                fac = a[i][c]
                a[i] = [x - fac * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def q_nullspace(m, ncols):
    rows, pivots = rref(m, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for row, pc in zip(rows, pivots):
            vec[pc] = -row[fc]
        basis.append(vec)
    return basis


def q_left_nullspace(m, nrows):
    """Vectors u (length nrows) with u m = 0."""
    ncols = len(m[0]) if m and m[0] else 0
    if ncols == 0:
        return [[Fraction(int(i == j)) for j in range(nrows)] for i in range(nrows)]
    return q_nullspace(transpose(m), nrows)


def q_solve(m, y, ncols):
    """Some x with m x = y over Q, or None."""
    aug = [list(row) + [yy] for row, yy in zip(m, y)]
    rows, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in zip(rows, pivots):
        x[pc] = row[ncols]
    return x


def lcm(a, b):
    return a * b // gcd(a, b) if a and b else 0


def p_valuation(n, p):
    if n == 0:
        return None
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out
