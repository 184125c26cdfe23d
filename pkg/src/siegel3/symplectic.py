"""Coprime symmetric pairs, symplectic completion, and truncated coset sums.

The bottom blocks (C, D) of an integer symplectic matrix satisfy C D^T
symmetric with [C D] primitive (all Smith invariants 1); left association
(C, D) ~ (UC, UD) is canonicalized by the row Hermite normal form of the
3x6 block.  Completion to a full symplectic matrix solves an integer linear
system and repairs isotropy of the top rows with a symmetric shear.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import _intlinalg as il
from .errors import CompletionFailure, NotCoprimePair
from .eisenstein import TruncationSpec, selberg_E
from .forms import HalfIntegralForm, automorphism_count, congruence_form, reduced_classes
from .matrices import from_blocks, is_symplectic, mobius
from .specfun import complex_gamma


@dataclass(frozen=True)
class CoprimePair:
    c: tuple  # 3x3 int rows
    d: tuple

    def stacked(self):
        return [list(self.c[i]) + list(self.d[i]) for i in range(3)]


def _det_small(sub):
    n = len(sub)
    if n == 1:
        return sub[0][0]
    if n == 2:
        return sub[0][0] * sub[1][1] - sub[0][1] * sub[1][0]
    return il.det3(sub)


def _maximal_minor_gcd(mat):
    rows = len(mat)
    cols = list(zip(*mat))
    g = 0
    for pick in combinations(range(len(cols)), rows):
        sub = [[cols[j][i] for j in pick] for i in range(rows)]
        g = math.gcd(g, abs(_det_small(sub)))
        if g == 1:
            return 1
    return g


def is_coprime_symmetric(c, d):
    """C D^T symmetric and [C D] with all elementary divisors 1, exactly.

    Works for any square size (the rank-2 analogue backs the exhaustive
    enumeration cross-check).
    """
    cd_t = il.mat_mul(c, il.mat_t(d))
    if not il.mat_eq(cd_t, il.mat_t(cd_t)):
        return False
    stacked = [list(c[i]) + list(d[i]) for i in range(len(c))]
    return _maximal_minor_gcd(stacked) == 1


def canonical_pair(c, d):
    """Left-association representative: row HNF of the stacked n x 2n block."""
    if not is_coprime_symmetric(c, d):
        raise NotCoprimePair("pair is not coprime symmetric")
    n = len(c)
    stacked = [list(c[i]) + list(d[i]) for i in range(n)]
    h, _ = il.hnf_row(stacked)
    return CoprimePair(
        c=tuple(tuple(row[:n]) for row in h),
        d=tuple(tuple(row[n:]) for row in h),
    )


def _hnf_structures(max_abs, nrows=3):
    """All row-HNF (nrows x 2 nrows) integer matrices with bounded entries.

    Yields candidates by pivot-column pattern; pivots positive, entries above
    a pivot reduced mod the pivot, rows echeloned left to right.
    """
    cols = 2 * nrows
    for pivots in combinations(range(cols), nrows):
        free_positions = [
            (i, j) for i in range(nrows) for j in range(pivots[i] + 1, cols)
        ]

        def fill(idx, current, pvals):
            if idx == len(free_positions):
                yield [row[:] for row in current]
                return
            i, j = free_positions[idx]
            later_pivot = [p for p in range(i + 1, nrows) if pivots[p] == j]
            if later_pivot:
                # entry above a pivot is reduced into [0, pivot)
                bound = range(0, min(pvals[later_pivot[0]], max_abs + 1))
            else:
                bound = range(-max_abs, max_abs + 1)
            for v in bound:
                current[i][j] = v
                yield from fill(idx + 1, current, pvals)
            current[i][j] = 0

        def pivot_loop(pi, current, pvals):
            if pi == nrows:
                yield from fill(0, current, pvals)
                return
            for p in range(1, max_abs + 1):
                current[pi][pivots[pi]] = p
                pvals[pi] = p
                yield from pivot_loop(pi + 1, current, pvals)
            current[pi][pivots[pi]] = 0

        base = [[0] * cols for _ in range(nrows)]
        yield from pivot_loop(0, base, [0] * nrows)


def enumerate_pairs(max_abs, nrows=3):
    """All canonical coprime symmetric pairs with entries in the box.

    Enumerates row-HNF candidates directly (every canonical representative is
    its own HNF), then filters symmetry and coprimality.
    """
    out = []
    for h in _hnf_structures(max_abs, nrows):
        c = tuple(tuple(row[:nrows]) for row in h)
        d = tuple(tuple(row[nrows:]) for row in h)
        if not is_coprime_symmetric(c, d):
            continue
        out.append(CoprimePair(c=c, d=d))
    out.sort(key=lambda p: (p.c, p.d))
    return out


def complete_to_symplectic(pair: CoprimePair):
    """Integer (A0, B0) making (A0 B0; C D) exactly symplectic.

    Solves A0 D^T - B0 C^T = I over Z, then shears the top rows by a
    symmetric S to restore isotropy A0 B0^T = B0 A0^T.
    """
    c = [list(r) for r in pair.c]
    d = [list(r) for r in pair.d]
    # solve (A0 B0) @ N = I over Z for N = (D^T ; -C^T), i.e. A0 D^T - B0 C^T = I
    n = il.mat_t(d) + [[-x for x in row] for row in il.mat_t(c)]
    try:
        y = il.solve_right_inverse(il.mat_t(n))  # (3x6) @ y(6x3) = I
    except ValueError as exc:
        raise CompletionFailure("no integer completion: %s" % exc) from exc
    x = il.mat_t(y)  # 3x6, x @ n = I
    a0 = [row[:3] for row in x]
    b0 = [row[3:] for row in x]
    # gram defect of the top rows: G = A0 B0^T - B0 A0^T (antisymmetric)
    g = il.mat_mul(a0, il.mat_t(b0))
    g = [[g[i][j] - g[j][i] for j in range(3)] for i in range(3)]
    s = [[g[i][j] if i > j else 0 for j in range(3)] for i in range(3)]
    a0 = [[a0[i][j] + sum(s[i][t] * c[t][j] for t in range(3)) for j in range(3)] for i in range(3)]
    b0 = [[b0[i][j] + sum(s[i][t] * d[t][j] for t in range(3)) for j in range(3)] for i in range(3)]
    m = from_blocks(a0, b0, c, d)
    if not is_symplectic(m):
        raise CompletionFailure("completion is not symplectic (bug)")
    return m


def poincare_trunc(k, t: HalfIntegralForm, z, max_abs, gl_ball=None, pairs=None):
    """Truncated weight-k Poincare sum over translation cosets.

    (1/2) sum over U in a GL3(Z) column-norm ball and canonical pairs {C, D}
    of e^{2 pi i tr(T[U] M0 Z)} j(M0, Z)^(-k); M0 completes {C, D}.  The
    truncation error is not certified.
    """
    if k <= 6 or k % 2:
        raise ValueError("weight must be even and > 6")
    z = np.asarray(z, dtype=complex)
    if gl_ball is None:
        gl_ball = il.unimodular_matrices_colnorm(max_abs * max_abs)
    if pairs is None:
        pairs = enumerate_pairs(max_abs)
    tus = [congruence_form(t, u) for u in gl_ball]
    coeffs = np.array(
        [[f.t1, f.t2, f.t3, f.b12, f.b13, f.b23] for f in tus], dtype=float
    )
    total = 0.0 + 0.0j
    n_terms = 0
    for pair in pairs:
        m0 = complete_to_symplectic(pair)
        mz, jv = mobius(m0, z)
        entries = np.array(
            [mz[0, 0], mz[1, 1], mz[2, 2], mz[0, 1], mz[0, 2], mz[1, 2]]
        )
        tr = coeffs @ entries
        total += jv ** (-k) * np.exp(2j * np.pi * tr).sum()
        n_terms += coeffs.shape[0]
    return complex(0.5 * total), n_terms


def kernel_trunc(k, exponents, z, det_bound, flag_spec: TruncationSpec, max_abs):
    """Truncated kernel via the Poincare-series representation.

    prefactor * sum over classes of (1/eps_T) E(T | w, s, -s-w-u+2) P_{k,T}(Z),
    prefactor = (2/pi^(3/2)) (-2 pi i)^(s+2w+3u) / (Gamma(s+w+u-1)
    Gamma(w+u-1/2) Gamma(u)).
    """
    s, w, u = (complex(e) for e in exponents)
    sigma = s + 2 * w + 3 * u
    pref = (
        2.0
        / math.pi**1.5
        * np.exp(sigma * (math.log(2.0 * math.pi) - 0.5j * np.pi))
        / (complex_gamma(s + w + u - 1) * complex_gamma(w + u - 0.5) * complex_gamma(u))
    )
    classes = reduced_classes(det_bound)
    gl_ball = il.unimodular_matrices_colnorm(max_abs * max_abs)
    pairs = enumerate_pairs(max_abs)
    total = 0.0 + 0.0j
    pk_terms = 0
    for t in classes:
        eps = automorphism_count(t)
        ev = selberg_E(t, (w, s, -s - w - u + 2.0), flag_spec)
        pk, n_terms = poincare_trunc(k, t, z, max_abs, gl_ball=gl_ball, pairs=pairs)
        pk_terms += n_terms
        total += ev.value * pk / eps
    warnings = []
    if not (
        s.real > 1 and w.real > 3 and u.real > 4
        and (2 * s + 4 * w + u).real < k - 4
    ):
        warnings.append(
            "outside Re(s)>1, Re(w)>3, Re(u)>4, Re(2s+4w+u)<k-4: the class sum "
            "need not converge as det_bound grows"
        )
    return {
        "value": complex(pref * total),
        "classes_used": len(classes),
        "pairs_used": len(pairs),
        "gl3_ball_size": len(gl_ball),
        "poincare_terms": pk_terms,
        "warnings": warnings,
    }
