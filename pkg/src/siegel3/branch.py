"""Holomorphic branch functions h1, h2, h3 on the degree-3 Siegel space.

The three-exponent power function is p_{s,w,u}(Z) = exp(s h1 + w h2 + u h3)
with exp(h_j) = det Z_j (j-th leading corner).  The h_j are evaluated from
closed principal-log formulas; the split of h3 into two separate logs is
deliberate and must not be merged, because each argument individually avoids
the cut while their product need not.

All internals are numpy-vectorized over the six independent entries so that
large lattice sums reuse one code path.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BranchCutError

CUT_TOL = 1e-14

# anti-diagonal permutation, reverses coordinate order under congruence
W3 = np.array([[0, 0, 1], [0, 1, 0], [1, 0, 0]])


@dataclass(frozen=True)
class BranchValue:
    h1: complex
    h2: complex
    h3: complex


def _plog(z, cut_tol=CUT_TOL):
    """Principal log raising BranchCutError near the cut (-inf, 0]."""
    z = np.asarray(z, dtype=complex)
    az = np.abs(z)
    bad = (az == 0.0) | ((z.real <= 0.0) & (np.abs(z.imag) <= cut_tol * az))
    if np.any(bad):
        raise BranchCutError("principal-log argument within %g of the cut" % cut_tol)
    return np.log(z)


def _entries(z):
    z = np.asarray(z, dtype=complex)
    return z[0, 0], z[0, 1], z[0, 2], z[1, 1], z[1, 2], z[2, 2]


def _dets(tau1, z1, z2, tau2, z3, tau3):
    d1 = tau1
    d2 = tau1 * tau2 - z1 * z1
    d3 = (
        tau1 * tau2 * tau3
        + 2.0 * z1 * z2 * z3
        - tau1 * z3 * z3
        - tau2 * z2 * z2
        - tau3 * z1 * z1
    )
    q = z3 * z3 - tau2 * tau3
    return d1, d2, d3, q


def _branch_arrays(tau1, z1, z2, tau2, z3, tau3, cut_tol=CUT_TOL):
    d1, d2, d3, q = _dets(tau1, z1, z2, tau2, z3, tau3)
    h1 = _plog(d1, cut_tol)
    h2 = _plog(-d2, cut_tol) + 1j * np.pi
    h3 = _plog(d3 / q, cut_tol) + _plog(q, cut_tol) + 2j * np.pi
    return h1, h2, h3


def _branch_inverse_arrays(tau1, z1, z2, tau2, z3, tau3, cut_tol=CUT_TOL):
    d1, d2, d3, q = _dets(tau1, z1, z2, tau2, z3, tau3)
    h1 = _plog(q / d3, cut_tol)
    h2 = _plog(-tau3 / d3, cut_tol) + 1j * np.pi
    h3 = -_plog(d3 / q, cut_tol) - _plog(q, cut_tol) + 1j * np.pi
    return h1, h2, h3


def branch_h(z, cut_tol=CUT_TOL):
    """Branch values (h1, h2, h3) at a Siegel point; exp(h_j) = det Z_j."""
    h1, h2, h3 = _branch_arrays(*_entries(z), cut_tol=cut_tol)
    return BranchValue(complex(h1), complex(h2), complex(h3))


def branch_h_inverse(z, cut_tol=CUT_TOL):
    """Branch values of -Z^(-1) from the explicit entry formulas."""
    h1, h2, h3 = _branch_inverse_arrays(*_entries(z), cut_tol=cut_tol)
    return BranchValue(complex(h1), complex(h2), complex(h3))


def power_p(exponents, z, cut_tol=CUT_TOL):
    """The power function p_{s,w,u}(Z) = exp(s h1 + w h2 + u h3)."""
    s, w, u = exponents
    h = branch_h(z, cut_tol)
    return complex(np.exp(s * h.h1 + w * h.h2 + u * h.h3))


def power_p_at_inverse(exponents, z, cut_tol=CUT_TOL):
    """p_{s,w,u}(-Z^(-1)) without forming the inverse matrix."""
    s, w, u = exponents
    h = branch_h_inverse(z, cut_tol)
    return complex(np.exp(s * h.h1 + w * h.h2 + u * h.h3))


def power_inversion_gap(exponents, z, cut_tol=CUT_TOL):
    """Relative gap in the inversion identity of the power function.

    p_{s1,s2,s3}(-Z^(-1)) equals exp(i pi (s1+2 s2+3 s3)) times
    p_{s2,s1,-s1-s2-s3}(Z[W]) with W the anti-diagonal permutation.
    """
    s1, s2, s3 = exponents
    lhs = power_p_at_inverse((s1, s2, s3), z, cut_tol)
    zw = W3 @ np.asarray(z, dtype=complex) @ W3
    rhs = np.exp(1j * np.pi * (s1 + 2 * s2 + 3 * s3)) * power_p(
        (s2, s1, -s1 - s2 - s3), zw, cut_tol
    )
    return abs(lhs - rhs) / abs(lhs)


def _is_small_int(x, limit=64):
    return abs(x.imag) == 0.0 and x.real == int(x.real) and abs(x.real) <= limit


def _ipow(base, n):
    """Integer power by squaring; exact branch-free power for n in Z."""
    if n == 0:
        return np.ones_like(base)
    invert = n < 0
    n = abs(n)
    result = None
    acc = base
    while n:
        if n & 1:
            result = acc if result is None else result * acc
        n >>= 1
        if n:
            acc = acc * acc
    return 1.0 / result if invert else result


def power_terms(exponents, tau1, z1, z2, tau2, z3, tau3, cut_tol=CUT_TOL):
    """Vectorized p_{s,w,u} over arrays of matrix entries.

    For integer exponents the branch functions drop out (exp(n h_j) is the
    algebraic n-th power of det Z_j), which avoids all transcendental calls
    in large lattice sums.
    """
    s, w, u = (complex(e) for e in exponents)
    if all(_is_small_int(e) for e in (s, w, u)):
        d1, d2, d3, _ = _dets(tau1, z1, z2, tau2, z3, tau3)
        if np.any(d1 == 0) or np.any(d2 == 0) or np.any(d3 == 0):
            raise BranchCutError("zero corner determinant in power sum")
        return _ipow(d1, int(s.real)) * _ipow(d2, int(w.real)) * _ipow(d3, int(u.real))
    h1, h2, h3 = _branch_arrays(tau1, z1, z2, tau2, z3, tau3, cut_tol)
    return np.exp(s * h1 + w * h2 + u * h3)
