"""Exact integer matrix helpers shared by the lattice and symplectic layers.

Everything here works on small dense matrices given as lists of lists of
Python ints, so there is no overflow and no tolerance anywhere.
"""

from __future__ import annotations

from math import gcd


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    return [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(m)] for i in range(n)]


def mat_t(a):
    return [list(row) for row in zip(*a)]


def mat_eq(a, b):
    return all(ra == rb for ra, rb in zip(a, b))


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def det3(a):
    return (
        a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
        - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
        + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
    )


def adj3(a):
    """Adjugate of a 3x3 matrix, so that a @ adj3(a) == det3(a) * I."""
    c = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [r_ for r_ in range(3) if r_ != j]
            s = [c_ for c_ in range(3) if c_ != i]
            minor = a[r[0]][s[0]] * a[r[1]][s[1]] - a[r[0]][s[1]] * a[r[1]][s[0]]
            c[i][j] = (-1) ** (i + j) * minor
    return c


def inv_unimodular(u):
    """Exact inverse of an integer matrix with det = +-1 (3x3)."""
    d = det3(u)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    adj = adj3(u)
    return [[d * adj[i][j] for j in range(3)] for i in range(3)]


def gcd_list(values):
    g = 0
    for v in values:
        g = gcd(g, abs(v))
        if g == 1:
            return 1
    return g


def hnf_row(mat):
    """Row-style Hermite normal form of an integer matrix.

    Returns ``(h, u)`` with ``u`` unimodular and ``u @ mat == h``.  Pivots are
    positive and leftmost possible, entries above a pivot are reduced into
    ``[0, pivot)``, rows below a pivot are zero in its column.
    """
    h = [list(row) for row in mat]
    nrows, ncols = len(h), len(h[0])
    u = identity(nrows)
    pivot_row = 0
    for col in range(ncols):
        if pivot_row >= nrows:
            break
        # clear the column below pivot_row by gcd steps
        while True:
            nz = [r for r in range(pivot_row + 1, nrows) if h[r][col] != 0]
            if not nz:
                break
            rows = [r for r in range(pivot_row, nrows) if h[r][col] != 0]
            r_min = min(rows, key=lambda r: abs(h[r][col]))
            if r_min != pivot_row:
                h[pivot_row], h[r_min] = h[r_min], h[pivot_row]
                u[pivot_row], u[r_min] = u[r_min], u[pivot_row]
            p = h[pivot_row][col]
            for r in range(pivot_row + 1, nrows):
                if h[r][col] != 0:
                    q = h[r][col] // p
                    if q:
                        h[r] = [x - q * y for x, y in zip(h[r], h[pivot_row])]
                        u[r] = [x - q * y for x, y in zip(u[r], u[pivot_row])]
        if h[pivot_row][col] == 0:
            continue
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
            u[pivot_row] = [-x for x in u[pivot_row]]
        p = h[pivot_row][col]
        for r in range(pivot_row):
            q = h[r][col] // p
            if q:
                h[r] = [x - q * y for x, y in zip(h[r], h[pivot_row])]
                u[r] = [x - q * y for x, y in zip(u[r], u[pivot_row])]
        pivot_row += 1
    return h, u


def snf(mat):
    """Smith normal form with transforms: returns (s, u, v), u @ mat @ v == s.

    ``u`` and ``v`` are unimodular; ``s`` is diagonal with s[i][i] | s[i+1][i+1].
    """
    s = [list(row) for row in mat]
    nrows, ncols = len(s), len(s[0])
    u = identity(nrows)
    v = identity(ncols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        s[dst] = [x + q * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in s:
            row[dst] += q * row[src]
        for row in v:
            row[dst] += q * row[src]

    k = 0
    while k < min(nrows, ncols):
        # find a nonzero pivot in the remaining block
        found = None
        for i in range(k, nrows):
            for j in range(k, ncols):
                if s[i][j] != 0:
                    found = (i, j)
                    break
            if found:
                break
        if not found:
            break
        i0, j0 = min(
            ((i, j) for i in range(k, nrows) for j in range(k, ncols) if s[i][j] != 0),
            key=lambda t: abs(s[t[0]][t[1]]),
        )
        swap_rows(k, i0)
        swap_cols(k, j0)
        # eliminate row and column k; restart if a remainder shrinks the pivot
        while True:
            p = s[k][k]
            dirty = False
            for i in range(k + 1, nrows):
                if s[i][k] != 0:
                    add_row(i, k, -(s[i][k] // p))
                    if s[i][k] != 0:
                        swap_rows(k, i)
                        dirty = True
                        break
            if dirty:
                continue
            for j in range(k + 1, ncols):
                if s[k][j] != 0:
                    add_col(j, k, -(s[k][j] // p))
                    if s[k][j] != 0:
                        swap_cols(k, j)
                        dirty = True
                        break
            if not dirty:
                break
        if s[k][k] < 0:
            s[k] = [-x for x in s[k]]
            u[k] = [-x for x in u[k]]
        # enforce divisibility s[k][k] | s[i][j] for the trailing block
        p = s[k][k]
        bad = None
        for i in range(k + 1, nrows):
            for j in range(k + 1, ncols):
                if s[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            add_row(k, bad, 1)
            continue
        k += 1
    return s, u, v


def solve_right_inverse(mat):
    """Integer right inverse: returns y (cols x rows) with mat @ y == I.

    Requires the rows of ``mat`` to span a saturated sublattice (all Smith
    invariants 1); raises ValueError otherwise.
    """
    nrows, ncols = len(mat), len(mat[0])
    s, u, v = snf(mat)
    for i in range(nrows):
        if s[i][i] != 1:
            raise ValueError("matrix has a nontrivial elementary divisor")
    # mat = u^-1 [I 0] v^-1  =>  y = v[:, :nrows] @ u
    vcols = [[v[i][j] for j in range(nrows)] for i in range(ncols)]
    return mat_mul(vcols, u)


def unimodular_matrices_entrybound(max_entry):
    """All U in GL3(Z) with every entry in [-max_entry, max_entry]."""
    rng = range(-max_entry, max_entry + 1)
    vecs = [(x, y, z) for x in rng for y in rng for z in rng if (x, y, z) != (0, 0, 0)]
    out = []
    for v1 in vecs:
        for v2 in vecs:
            cx = v1[1] * v2[2] - v1[2] * v2[1]
            cy = v1[2] * v2[0] - v1[0] * v2[2]
            cz = v1[0] * v2[1] - v1[1] * v2[0]
            if cx == cy == cz == 0:
                continue
            for v3 in vecs:
                d = cx * v3[0] + cy * v3[1] + cz * v3[2]
                if d == 1 or d == -1:
                    out.append([[v1[0], v2[0], v3[0]],
                                [v1[1], v2[1], v3[1]],
                                [v1[2], v2[2], v3[2]]])
    return out


def unimodular_matrices_colnorm(max_norm2):
    """All U in GL3(Z) whose columns each have squared euclidean norm <= bound.

    Deterministic lexicographic order over (col1, col2, col3).
    """
    r = int(max_norm2**0.5)
    vecs = []
    for x in range(-r, r + 1):
        for y in range(-r, r + 1):
            for z in range(-r, r + 1):
                if 0 < x * x + y * y + z * z <= max_norm2:
                    vecs.append((x, y, z))
    out = []
    for v1 in vecs:
        for v2 in vecs:
            # quick rank-2 test via cross product
            cx = v1[1] * v2[2] - v1[2] * v2[1]
            cy = v1[2] * v2[0] - v1[0] * v2[2]
            cz = v1[0] * v2[1] - v1[1] * v2[0]
            if cx == cy == cz == 0:
                continue
            for v3 in vecs:
                d = cx * v3[0] + cy * v3[1] + cz * v3[2]
                if d == 1 or d == -1:
                    out.append([[v1[0], v2[0], v3[0]],
                                [v1[1], v2[1], v3[1]],
                                [v1[2], v2[2], v3[2]]])
    return out
