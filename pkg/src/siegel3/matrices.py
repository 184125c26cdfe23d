"""Symmetric 3x3 matrix algebra, Siegel-space membership and symplectic actions.

Complex points of the degree-3 Siegel space are plain 3x3 numpy arrays laid
out as

    [[tau1, z1, z2],
     [z1, tau2, z3],
     [z2, z3, tau3]]

Integer-exact objects (symplectic matrices, unimodular congruences) are lists
of lists of Python ints and never touch floating point.
"""

from __future__ import annotations

import numpy as np

from . import _intlinalg as il
from .errors import NotPositiveDefinite, SingularDenominator

POSDEF_REL_TOL = 1e-12


def sym3(tau1, z1, z2, tau2, z3, tau3):
    """Assemble a symmetric 3x3 array from its six independent entries."""
    return np.array([[tau1, z1, z2], [z1, tau2, z3], [z2, z3, tau3]])


def leading_minors(y):
    y = np.asarray(y)
    m1 = y[0, 0]
    m2 = y[0, 0] * y[1, 1] - y[0, 1] * y[1, 0]
    m3 = (
        y[0, 0] * (y[1, 1] * y[2, 2] - y[1, 2] * y[2, 1])
        - y[0, 1] * (y[1, 0] * y[2, 2] - y[1, 2] * y[2, 0])
        + y[0, 2] * (y[1, 0] * y[2, 1] - y[1, 1] * y[2, 0])
    )
    return m1, m2, m3


def is_positive_definite(y, rel_tol=POSDEF_REL_TOL):
    """Strict leading-minor test with a relative tolerance on floating input."""
    y = np.asarray(y, dtype=float)
    scale = max(1.0, float(np.max(np.abs(y))))
    m1, m2, m3 = leading_minors(y)
    return m1 > rel_tol * scale and m2 > rel_tol * scale**2 and m3 > rel_tol * scale**3


def is_siegel_point(z, rel_tol=POSDEF_REL_TOL):
    """True iff z is symmetric with positive-definite imaginary part."""
    z = np.asarray(z, dtype=complex)
    if z.shape != (3, 3) or not np.allclose(z, z.T, rtol=0, atol=1e-12 * (1 + np.abs(z).max())):
        return False
    return is_positive_definite(z.imag, rel_tol)


def cholesky_lower(y):
    """Lower Cholesky factor of a positive-definite 3x3 matrix.

    Returns (t1, t2, t3, t4, t5, t6) with

        L = [[t1, 0, 0], [t4, t2, 0], [t5, t6, t3]],   L @ L.T == y.
    """
    y = np.asarray(y, dtype=float)
    if y[0, 0] <= 0:
        raise NotPositiveDefinite("pivot 1 is not positive")
    t1 = np.sqrt(y[0, 0])
    t4 = y[1, 0] / t1
    t5 = y[2, 0] / t1
    p2 = y[1, 1] - t4 * t4
    if p2 <= 0:
        raise NotPositiveDefinite("pivot 2 is not positive")
    t2 = np.sqrt(p2)
    t6 = (y[2, 1] - t4 * t5) / t2
    p3 = y[2, 2] - t5 * t5 - t6 * t6
    if p3 <= 0:
        raise NotPositiveDefinite("pivot 3 is not positive")
    t3 = np.sqrt(p3)
    return t1, t2, t3, t4, t5, t6


def congruence(y, u):
    """t(u) @ y @ u for numpy input, exact lists-of-ints passed through as such."""
    if isinstance(y, np.ndarray) or isinstance(u, np.ndarray):
        y = np.asarray(y)
        u = np.asarray(u)
        return u.T @ y @ u
    return il.mat_mul(il.mat_t(u), il.mat_mul(y, u))


def adjugate(y):
    """Adjugate matrix: y @ adjugate(y) == det(y) * I, exact on exact input."""
    if isinstance(y, np.ndarray):
        out = np.empty_like(np.asarray(y))
        a = np.asarray(y)
        for i in range(3):
            for j in range(3):
                r = [k for k in range(3) if k != j]
                c = [k for k in range(3) if k != i]
                out[i, j] = (-1) ** (i + j) * (
                    a[r[0], c[0]] * a[r[1], c[1]] - a[r[0], c[1]] * a[r[1], c[0]]
                )
        return out
    return il.adj3(y)


# --- symplectic layer (exact integers) -------------------------------------

def symplectic_j():
    """The standard symplectic form J = [[0, I], [-I, 0]] of size 6."""
    j = [[0] * 6 for _ in range(6)]
    for i in range(3):
        j[i][3 + i] = 1
        j[3 + i][i] = -1
    return j


def is_symplectic(m):
    """Exact integer check of t(M) @ J @ M == J."""
    j = symplectic_j()
    return il.mat_eq(il.mat_mul(il.mat_t(m), il.mat_mul(j, m)), j)


def blocks(m):
    a = [row[:3] for row in m[:3]]
    b = [row[3:] for row in m[:3]]
    c = [row[:3] for row in m[3:]]
    d = [row[3:] for row in m[3:]]
    return a, b, c, d


def from_blocks(a, b, c, d):
    return [list(a[i]) + list(b[i]) for i in range(3)] + [list(c[i]) + list(d[i]) for i in range(3)]


def inversion6():
    """The block matrix (0, -I; I, 0), acting as Z -> -Z^(-1)."""
    z3 = [[0] * 3 for _ in range(3)]
    i3 = il.identity(3)
    return from_blocks(z3, il.mat_neg(i3), i3, z3)


def translation6(s):
    """(I, S; 0, I) for integer symmetric S."""
    i3 = il.identity(3)
    z3 = [[0] * 3 for _ in range(3)]
    return from_blocks(i3, s, z3, i3)


def embed_gl6(u):
    """(U, 0; 0, t(U)^(-1)) for unimodular U."""
    z3 = [[0] * 3 for _ in range(3)]
    return from_blocks(u, z3, z3, il.mat_t(il.inv_unimodular(u)))


def mobius(m, z, cond_limit=1e12):
    """Apply the symplectic fractional-linear action.

    Returns ``(m . z, det(C z + D))``.  Raises SingularDenominator when
    C z + D is numerically singular, which cannot happen for an exactly
    symplectic m at a genuine Siegel point.
    """
    z = np.asarray(z, dtype=complex)
    a, b, c, d = blocks(m)
    a = np.array(a, dtype=complex)
    b = np.array(b, dtype=complex)
    c = np.array(c, dtype=complex)
    d = np.array(d, dtype=complex)
    den = c @ z + d
    jval = np.linalg.det(den)
    if not np.isfinite(jval) or abs(jval) < 1e-300 or np.linalg.cond(den) > cond_limit:
        raise SingularDenominator("C Z + D is numerically singular")
    num = a @ z + b
    mz = np.linalg.solve(den.T, num.T).T
    return 0.5 * (mz + mz.T), jval


def random_siegel(rng, min_im=0.5, real_scale=1.0):
    """Random Siegel point with Im(Z) >= min_im * I (shifted Gram matrix)."""
    g = rng.standard_normal((3, 3))
    y = g @ g.T + min_im * np.eye(3)
    x = real_scale * (rng.random((3, 3)) * 2 - 1)
    x = 0.5 * (x + x.T)
    return x + 1j * y


def random_symplectic(rng, max_entry=3, max_factors=6):
    """Random element of Sp3(Z) with all entries bounded by max_entry.

    Built from translations, GL3 embeddings and the inversion; candidates
    violating the entry bound are rejected and rebuilt.
    """
    i3 = il.identity(3)
    while True:
        m = from_blocks(i3, [[0] * 3 for _ in range(3)], [[0] * 3 for _ in range(3)], i3)
        for _ in range(int(rng.integers(1, max_factors + 1))):
            kind = int(rng.integers(0, 3))
            if kind == 0:
                s = [[int(rng.integers(-1, 2)) for _ in range(3)] for _ in range(3)]
                s = [[s[i][j] if i <= j else s[j][i] for j in range(3)] for i in range(3)]
                f = translation6(s)
            elif kind == 1:
                u = _random_unimodular(rng)
                f = embed_gl6(u)
            else:
                f = inversion6()
            m = il.mat_mul(m, f)
        if max(abs(x) for row in m for x in row) <= max_entry:
            return m


def _random_unimodular(rng):
    """Random small unimodular matrix: a product of elementary shears."""
    u = il.identity(3)
    for _ in range(int(rng.integers(1, 4))):
        i, j = rng.permutation(3)[:2]
        e = il.identity(3)
        e[int(i)][int(j)] = int(rng.integers(-1, 2))
        u = il.mat_mul(u, e)
    if int(rng.integers(0, 2)):
        p = list(rng.permutation(3))
        pm = [[1 if p[i] == j else 0 for j in range(3)] for i in range(3)]
        if il.det3(pm) == -1:
            pm[0] = [-x for x in pm[0]]
        u = il.mat_mul(u, pm)
    return u
