"""Koecher-Maass series over classes of half-integral forms.

Coefficient data comes either from a text file (one reduced form and one
complex value per line) or from synthetic providers; genuine degree-3 cusp
form coefficients are out of desk reach, so providers exercise the series
machinery.  Lookups canonicalize through Minkowski reduction; for even
weight the unimodular sign ambiguity is invisible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .eisenstein import TruncationSpec, selberg_E
from .errors import DuplicateKey, NonReducedKey, ParseError, PoleError
from .forms import HalfIntegralForm, automorphism_count, minkowski_reduce, reduced_classes
from .specfun import complex_gamma, xi2


@dataclass
class CoefficientTable:
    """Fourier-coefficient source: table-backed or synthetic.

    ``data`` maps canonical reduced keys to complex values; ``provider`` (if
    set) computes a value from a reduced HalfIntegralForm instead, and never
    misses.  Missing table keys contribute 0 and bump ``misses``.
    """

    k: int
    data: dict = field(default_factory=dict)
    provider: object = None
    name: str = "table"
    misses: int = 0

    def coefficient(self, t: HalfIntegralForm):
        red = minkowski_reduce(t).form
        if self.provider is not None:
            return complex(self.provider(red))
        key = red.key()
        if key in self.data:
            return self.data[key]
        self.misses += 1
        return 0.0 + 0.0j


def ones_provider(k=24):
    return CoefficientTable(k=k, provider=lambda red: 1.0 + 0.0j, name="ones")


def det_power_provider(alpha, k=24):
    return CoefficientTable(
        k=k, provider=lambda red: float(red.det()) ** alpha + 0.0j,
        name="det_power(%g)" % alpha,
    )


def load_coefficients(path):
    """Parse 'k <even>' header then lines 't1 t2 t3 b12 b13 b23 re im'.

    Keys must already be canonical reduced representatives; auto-reduction is
    deliberately not performed so upstream data mistakes surface here.
    """
    data = {}
    k = None
    with open(path) as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if k is None:
                if len(parts) != 2 or parts[0] != "k":
                    raise ParseError("line %d: expected header 'k <even-int>'" % lineno)
                k = int(parts[1])
                if k <= 0 or k % 2:
                    raise ParseError("line %d: weight must be a positive even integer" % lineno)
                continue
            if len(parts) != 8:
                raise ParseError("line %d: expected 8 fields" % lineno)
            try:
                t = HalfIntegralForm(*(int(x) for x in parts[:6]))
                value = complex(float(parts[6]), float(parts[7]))
            except ValueError as exc:
                raise ParseError("line %d: %s" % (lineno, exc)) from exc
            if not t.is_positive_definite():
                raise ParseError("line %d: form is not positive definite" % lineno)
            red = minkowski_reduce(t).form
            if red != t:
                raise NonReducedKey(
                    "line %d: %s is not the canonical reduced representative" % (lineno, t)
                )
            if t.key() in data:
                raise DuplicateKey("line %d: duplicate key %s" % (lineno, t))
            data[t.key()] = value
    if k is None:
        raise ParseError("missing 'k <even-int>' header")
    return CoefficientTable(k=k, data=data)


@dataclass
class SeriesValue:
    value: complex
    classes_used: int
    max_det: Fraction
    misses: int
    warnings: list = field(default_factory=list)


def km_classic(table: CoefficientTable, s, det_bound):
    """sum over classes (det <= bound) of A_T / (eps_T det(T)^s)."""
    s = complex(s)
    classes = reduced_classes(det_bound)
    misses0 = table.misses
    total = 0.0 + 0.0j
    max_det = Fraction(0)
    for t in classes:
        a = table.coefficient(t)
        eps = automorphism_count(t)
        total += a / eps * np.exp(-s * math.log(float(t.det())))
        max_det = max(max_det, t.det())
    warnings = []
    if not s.real > 2 + table.k / 2:
        warnings.append("outside the absolute-convergence region Re(s) > 2 + k/2")
    return SeriesValue(
        value=complex(total),
        classes_used=len(classes),
        max_det=max_det,
        misses=table.misses - misses0,
        warnings=warnings,
    )


def km_twisted(table: CoefficientTable, exponents, det_bound, flag_spec: TruncationSpec):
    """sum over classes of (A_T / eps_T) E(T | s, w, u), all truncated."""
    s, w, u = (complex(e) for e in exponents)
    classes = reduced_classes(det_bound)
    misses0 = table.misses
    total = 0.0 + 0.0j
    max_det = Fraction(0)
    for t in classes:
        a = table.coefficient(t)
        eps = automorphism_count(t)
        ev = selberg_E(t, (s, w, u), flag_spec)
        total += a / eps * ev.value
        max_det = max(max_det, t.det())
    warnings = []
    if not (s.real > 1 and w.real > 1 and u.real > table.k / 2 + 1):
        warnings.append(
            "outside region Re(s)>1, Re(w)>1, Re(u)>k/2+1"
            " (stricter variant requires Re(u)>k+1)"
        )
    return SeriesValue(
        value=complex(total),
        classes_used=len(classes),
        max_det=max_det,
        misses=table.misses - misses0,
        warnings=warnings,
    )


def lambda_completed(table: CoefficientTable, exponents, km_value, pole_tol=1e-10):
    """Completed-series gamma/xi factor applied to a series value.

    (2 pi)^(-(s+2w+3u)) Gamma(s+w+u-1) Gamma(w+u-1/2) Gamma(u)
        xi2(s) xi2(w) xi2(s+w-1/2) times km_value.
    """
    s, w, u = (complex(e) for e in exponents)
    sigma = s + 2 * w + 3 * u
    for g_arg in (s + w + u - 1, w + u - 0.5, u):
        gr = round((g_arg).real)
        if gr <= 0 and abs(g_arg - gr) <= pole_tol:
            raise PoleError("gamma factor pole at %s" % g_arg)
    for x_arg in (s, w, s + w - 0.5):
        if min(abs(x_arg), abs(x_arg - 0.5)) <= pole_tol:
            raise PoleError("xi factor pole at %s" % x_arg)
    factor = (
        np.exp(-sigma * math.log(2.0 * math.pi))
        * complex_gamma(s + w + u - 1)
        * complex_gamma(w + u - 0.5)
        * complex_gamma(u)
        * xi2(s)
        * xi2(w)
        * xi2(s + w - 0.5)
    )
    return complex(factor * km_value)
