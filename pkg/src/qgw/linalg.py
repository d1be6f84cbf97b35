"""Small dense linear algebra over a workbench field.

Matrices are lists of lists of scalars.  Everything here is written
against the Field surface from :mod:`qgw.scalars`, so the same Gaussian
elimination runs exactly over Q(v) and in floating point; numeric mode
picks the largest pivot, exact mode the first nonzero one.
"""

from __future__ import annotations

from .scalars import ScalarError


def zeros(field, r, c):
    return [[field.zero for _ in range(c)] for _ in range(r)]


def identity(field, n):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def shape(a):
    return len(a), (len(a[0]) if a else 0)


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(s, a):
    return [[s * x for x in row] for row in a]


def mat_mul(a, b):
    n, k = shape(a)
    k2, m = shape(b)
    if k != k2:
        raise ValueError(f"shape mismatch {n}x{k} @ {k2}x{m}")
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_pow(field, a, n):
    out = identity(field, len(a))
    for _ in range(n):
        out = mat_mul(out, a)
    return out


def matvec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def kron(field, a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    out = zeros(field, ra * rb, ca * cb)
    for i in range(ra):
        for j in range(ca):
            for k in range(rb):
                for l in range(cb):
                    out[i * rb + k][j * cb + l] = a[i][j] * b[k][l]
    return out


def trace(a):
    return sum(a[i][i] for i in range(len(a)))


def conj_transpose(field, a):
    return [[field.conj(x) for x in col] for col in zip(*a)] if a else []


def is_zero_mat(field, a, tol=None):
    return all(field.is_zero(x, tol) for row in a for x in row)


def mat_eq(field, a, b, tol=None):
    if shape(a) != shape(b):
        return False
    return all(field.eq(x, y, tol) for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def max_abs_residual(field, a, b, q=None):
    """Largest |entry| of a - b after numeric evaluation; exact mode gives 0.0
    for equal matrices."""
    worst = 0.0
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            d = x - y
            if field.is_exact:
                worst = max(worst, 0.0 if not d else 1.0)
            else:
                worst = max(worst, abs(d))
    return worst


def _pivot_row(field, rows, col, start):
    if field.is_exact:
        for i in range(start, len(rows)):
            if not field.is_zero(rows[i][col]):
                return i
        return None
    best, besta = None, 0.0
    for i in range(start, len(rows)):
        a = abs(rows[i][col])
        if a > besta:
            best, besta = i, a
    return best if besta > field.tol else None


def rref(field, a):
    """Reduced row echelon form; returns (matrix, pivot column list)."""
    m = [list(row) for row in a]
    nr, nc = shape(m)
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        p = _pivot_row(field, m, c, r)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = field.inv(m[r][c])
        m[r] = [inv * x for x in m[r]]
        for i in range(nr):
            if i != r and not field.is_zero(m[i][c]):
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(field, a):
    return len(rref(field, a)[1])


def nullspace(field, a):
    """Kernel basis, each vector scaled so its first nonzero entry is 1."""
    nr, nc = shape(a)
    r, pivots = rref(field, a)
    free = [c for c in range(nc) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * nc
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        lead = next(j for j in range(nc) if not field.is_zero(v[j]))
        inv = field.inv(v[lead])
        basis.append([inv * x for x in v])
    return basis


def solve(field, a, b):
    """Solve a x = b for a single right-hand-side vector."""
    cols = solve_many(field, a, [[x] for x in b])
    return [row[0] for row in cols]


def solve_many(field, a, b):
    """Solve a X = B; B given as a matrix of stacked column right sides."""
    nr, nc = shape(a)
    nb = shape(b)[1]
    aug = [list(ra) + list(rb) for ra, rb in zip(a, b)]
    red, pivots = rref(field, aug)
    if any(p >= nc for p in pivots):
        raise ScalarError("inconsistent linear system")
    if len(pivots) < nc:
        raise ScalarError("underdetermined linear system")
    x = zeros(field, nc, nb)
    for i, p in enumerate(pivots):
        for j in range(nb):
            x[p][j] = red[i][nc + j]
    return x


def inverse(field, a):
    n = len(a)
    return solve_many(field, a, identity(field, n))


def to_numpy(field, a, q=None):
    import numpy as np

    nr, nc = shape(a)
    out = np.zeros((nr, nc), dtype=complex)
    for i in range(nr):
        for j in range(nc):
            out[i, j] = field.to_complex(a[i][j], q) if field.is_exact else complex(a[i][j])
    return out
