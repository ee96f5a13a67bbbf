"""Exact integer linear algebra: Smith normal form, kernels, lattice solves.

All matrices are lists of lists of Python ints (arbitrary precision), row
major.  Sizes here are tiny (chain complexes of one-polygon triangulations),
so clarity wins over asymptotics.
"""

from __future__ import annotations


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    m, k = len(a), len(b)
    n = len(b[0]) if b else 0
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x:
                bt = b[t]
                for j in range(n):
                    oi[j] += x * bt[j]
    return out


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def smith_normal_form(a):
    """Return (d, u, v) with u*a*v = d diagonal, u and v unimodular.

    Diagonal entries divide successive ones and are non-negative.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [row[:] for row in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row[dst] += c*row[src]
        d[dst] = [x + c * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x + c * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # find pivot: smallest nonzero |entry| in remaining block
        piv = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x and (best is None or abs(x) < best):
                    best = abs(x)
                    piv = (i, j)
        if piv is None:
            break
        i, j = piv
        swap_rows(t, i)
        swap_cols(t, j)
        if d[t][t] < 0:
            negate_row(t)
        dirty = False
        for i in range(t + 1, m):
            if d[i][t]:
                q = d[i][t] // d[t][t]
                add_row(t, i, -q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if d[t][j]:
                q = d[t][j] // d[t][t]
                add_col(t, j, -q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue
        # force divisibility of the rest of the block by d[t][t]
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % d[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(bad, t, 1)
            continue
        t += 1
    return d, u, v


def solve_integer(a, b):
    """One integer solution x of a*x = b, or None if none exists."""
    m = len(a)
    n = len(a[0]) if m else 0
    if m == 0:
        return [0] * n
    d, u, v = smith_normal_form(a)
    c = mat_vec(u, b)
    y = [0] * n
    for i in range(min(m, n)):
        di = d[i][i]
        if di:
            if c[i] % di:
                return None
            y[i] = c[i] // di
        elif c[i]:
            return None
    for i in range(n, m):
        if c[i]:
            return None
    # also rows min(m,n)..m with zero diagonal handled above when m>n
    for i in range(min(m, n), m):
        if c[i]:
            return None
    return mat_vec(v, y)


def in_column_lattice(a, b):
    """Whether b lies in the integer column span of a."""
    return solve_integer(a, b) is not None


def kernel_basis(a):
    """Basis (list of columns) of the integer kernel of a."""
    m = len(a)
    n = len(a[0]) if m else 0
    if n == 0:
        return []
    if m == 0:
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    d, u, v = smith_normal_form(a)
    r = 0
    for i in range(min(m, n)):
        if d[i][i]:
            r += 1
    cols = []
    for j in range(r, n):
        cols.append([v[i][j] for i in range(n)])
    return cols


def column_style_matrix(cols, dim):
    """Matrix whose columns are the given vectors (dim rows)."""
    return [[col[i] for col in cols] for i in range(dim)]


def det(a):
    """Integer determinant by fraction-free elimination via SNF."""
    n = len(a)
    if n == 0:
        return 1
    d, u, v = smith_normal_form(a)
    p = 1
    for i in range(n):
        p *= d[i][i]
    # u, v unimodular with det ±1; recover the sign by expansion on small n
    return p * _sign_det(u) * _sign_det(v)


def _sign_det(a):
    n = len(a)
    m = [row[:] for row in a]
    sign = 1
    from fractions import Fraction

    fm = [[Fraction(x) for x in row] for row in m]
    for i in range(n):
        piv = None
        for r in range(i, n):
            if fm[r][i]:
                piv = r
                break
        if piv is None:
            return 0
        if piv != i:
            fm[i], fm[piv] = fm[piv], fm[i]
            sign = -sign
        for r in range(i + 1, n):
            f = fm[r][i] / fm[i][i]
            if f:
                fm[r] = [x - f * y for x, y in zip(fm[r], fm[i])]
    val = sign
    for i in range(n):
        val *= 1 if fm[i][i] > 0 else -1
    return val


def invert_unimodular(a):
    """Inverse of an integer matrix with determinant ±1."""
    n = len(a)
    d, u, v = smith_normal_form(a)
    for i in range(n):
        if d[i][i] != 1:
            raise ValueError("matrix is not unimodular")
    # a = u^-1 d v^-1 with d = I, so a^-1 = v*u
    return mat_mul(v, u)
