"""Acceptance criteria, runnable as a library (CLI selftest) or via pytest.

Each criterion function returns a CriterionResult with per-clause outcomes.
Three clauses are implemented faithfully but are expected to fail: the class
list with det <= 1 is {I3} (and the two matching single-class series
identities hold) only if the cone of forms is read with integer
off-diagonals, which contradicts both the half-integral convention used
everywhere else and the two-sided lattice identity (criterion 3).  See the
README and the per-clause messages.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import _intlinalg as il
from . import branch, eisenstein as eis, fegroup as fg, forms, lipschitz as lip
from . import matrices as mx
from . import series, specfun as sf, symplectic as sp

DEFAULT_SEED = 42


@dataclass
class CriterionResult:
    cid: int
    title: str
    passed: bool
    runtime: float
    clauses: list = field(default_factory=list)  # (name, ok, detail)

    def add(self, name, ok, detail=""):
        self.clauses.append({"clause": name, "ok": bool(ok), "detail": str(detail)})

    def finish(self, t0):
        self.runtime = time.time() - t0
        self.passed = all(c["ok"] for c in self.clauses)
        return self


def _rng(seed):
    return np.random.default_rng(seed)


def criterion_1(seed=DEFAULT_SEED):
    res = CriterionResult(1, "power-function inversion identity", False, 0.0)
    t0 = time.time()
    rng = _rng(seed)
    worst = 0.0
    for _ in range(1000):
        z = mx.random_siegel(rng, min_im=0.5)
        e = tuple(rng.uniform(-3, 3, 3) + 1j * rng.uniform(-3, 3, 3))
        worst = max(worst, branch.power_inversion_gap(e, z))
    res.add("1000 samples gap <= 1e-10", worst <= 1e-10, "worst gap %.3g" % worst)
    res.add("runtime < 10 s", time.time() - t0 < 10.0)
    return res.finish(t0)


def criterion_2(seed=DEFAULT_SEED):
    res = CriterionResult(2, "cone integral vs closed-form gamma factor", False, 0.0)
    t0 = time.time()
    rng = _rng(seed)
    worst = 0.0
    for _ in range(10):
        z = mx.random_siegel(rng, min_im=1.0)
        for swu in ((1.5, 1.0, 2.0), (2.0, 1.5, 3.0)):
            worst = max(worst, sf.cone_integral_gap(swu, z))
    res.add("20 quadrature gaps <= 1e-8", worst <= 1e-8, "worst gap %.3g" % worst)
    res.add("runtime < 60 s", time.time() - t0 < 60.0)
    return res.finish(t0)


def _fixed_lipschitz_points():
    xs = (
        [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        [[0.25, 0.125, 0.0], [0.125, -0.25, 0.0], [0.0, 0.0, 0.125]],
        [[0.125, 0.0625, -0.0625], [0.0625, 0.25, 0.0], [-0.0625, 0.0, -0.125]],
    )
    return [np.array(x, dtype=float) + 1j * np.eye(3) for x in xs]


def criterion_3(seed=DEFAULT_SEED):
    res = CriterionResult(3, "two-sided lattice summation identity", False, 0.0)
    t0 = time.time()
    for i, z in enumerate(_fixed_lipschitz_points()):
        r1 = lip.lipschitz_report((2.0, 4.0, 5.0), z, 8, 12, tail_correction=True)
        r2 = lip.lipschitz_report((2.0, 4.0, 5.0), z, 9, 13, tail_correction=True)
        res.add(
            "Z%d gap <= 1e-3 at (8,12)" % i,
            r1.relative_gap <= 1e-3,
            "gap %.3g" % r1.relative_gap,
        )
        res.add(
            "Z%d gap decreases at (9,13)" % i,
            r2.relative_gap < r1.relative_gap,
            "gap %.3g -> %.3g" % (r1.relative_gap, r2.relative_gap),
        )
    res.add("runtime < 120 s", time.time() - t0 < 120.0)
    return res.finish(t0)


def criterion_4(seed=DEFAULT_SEED):
    res = CriterionResult(4, "classical one-variable summation formula", False, 0.0)
    t0 = time.time()
    for tau in (1j, 0.5 + 1j):
        rep, closed = lip.classical_lipschitz(tau, 2.0, 4000)
        gap = abs(rep.rhs - closed) / abs(closed)
        res.add("tau=%s rhs vs closed form <= 1e-12" % tau, gap <= 1e-12, "gap %.3g" % gap)
    res.add("runtime < 1 s", time.time() - t0 < 1.0)
    return res.finish(t0)


def criterion_5(seed=DEFAULT_SEED):
    res = CriterionResult(5, "degree-3 gamma factor closed form", False, 0.0)
    t0 = time.time()
    val = sf.gamma3(0.0, 0.0, 2.0)
    target = -math.pi**2 / 2.0
    gap = abs(val - target) / abs(target)
    res.add("gamma3(0,0,2) = -pi^2/2 to 1e-13", gap <= 1e-13, "gap %.3g" % gap)
    rng = _rng(seed)
    worst = 0.0
    for _ in range(100):
        s, w, u = rng.uniform(0.2, 2.5, 3) + 1j * rng.uniform(-1.5, 1.5, 3)
        lhs = sf.gamma3(-w, -s, s + w + u)
        rhs = sf.gamma3(w - 1.0, 0.5 - s - w, s + w + u)
        worst = max(worst, abs(lhs - rhs) / abs(lhs))
    res.add("argument-swap identity on 100 triples <= 1e-12", worst <= 1e-12,
            "worst gap %.3g" % worst)
    return res.finish(t0)


def criterion_6(seed=DEFAULT_SEED):
    res = CriterionResult(6, "reduction, automorphisms and class list", False, 0.0)
    t0 = time.time()
    e1 = forms.automorphism_count(forms.HalfIntegralForm(1, 1, 1, 0, 0, 0))
    e2 = forms.automorphism_count(forms.HalfIntegralForm(1, 1, 2, 0, 0, 0))
    res.add("eps(I3) == 24", e1 == 24, "got %d" % e1)
    res.add("eps(diag(1,1,2)) == 8", e2 == 8, "got %d" % e2)
    rng = _rng(seed)
    target = forms.HalfIntegralForm(1, 2, 3, 0, 0, 0)
    ok = 0
    for _ in range(500):
        u = _random_unimodular_bounded(rng, 3)
        scrambled = forms.congruence_form(target, u)
        red = forms.minkowski_reduce(scrambled)
        if red.form == target and forms.congruence_form(
            scrambled, [list(r) for r in red.reducer]
        ) == red.form:
            ok += 1
    res.add("500 scrambled diag(1,2,3) round-trips", ok == 500, "%d/500" % ok)
    classes = forms.reduced_classes(1)
    keys = [c.key() for c in classes]
    res.add(
        "reduced_classes(1) == {I3}  [known inconsistent expectation]",
        keys == [(1, 1, 1, 0, 0, 0)],
        "got %d classes %s; the half-integral cone contains classes of det 1/2 and 3/4 "
        "below det 1, so {I3} is only correct for integer off-diagonals, which would "
        "contradict the lattice identity of criterion 3" % (len(keys), keys),
    )
    res.add("runtime < 30 s", time.time() - t0 < 30.0)
    return res.finish(t0)


def _random_unimodular_bounded(rng, max_entry):
    while True:
        u = mx._random_unimodular(rng)
        if max(abs(x) for row in u for x in row) <= max_entry:
            return u


def brute_force_flag_sum(y: forms.HalfIntegralForm, exponents, colnorm2):
    """Oracle: enumerate unimodular matrices, dedupe parabolic cosets by their
    flag, and sum the power-function terms through the branch machinery.

    Independent of the production flag-sum path: terms are evaluated as
    exp((s+2w+3u) pi i/2) p_{-s,-w,-u}(i Y[gamma]) at one representative per
    coset.
    """
    s, w, u = (complex(e) for e in exponents)
    sigma = s + 2 * w + 3 * u
    seen = {}
    for g in il.unimodular_matrices_colnorm(colnorm2):
        v = _canon(tuple(g[i][0] for i in range(3)))
        col2 = tuple(g[i][1] for i in range(3))
        n = _canon(_cross(v, col2))
        key = (v, n)
        if key not in seen:
            seen[key] = g
    total = 0.0 + 0.0j
    phase = np.exp(0.5j * np.pi * sigma)
    for (v, n), g in sorted(seen.items()):
        yg = forms.congruence_form(y, g)
        zi = 0.5j * np.array(yg.gram2(), dtype=float)
        total += phase * branch.power_p((-s, -w, -u), zi)
    return complex(total), seen


def _canon(v):
    from math import gcd
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    v = tuple(x // g for x in v)
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def criterion_7(seed=DEFAULT_SEED):
    res = CriterionResult(7, "flag parametrization vs brute-force cosets", False, 0.0)
    t0 = time.time()
    rng = _rng(seed)
    ys = [forms.HalfIntegralForm(1, 1, 1, 0, 0, 0)]
    while True:
        cand = forms.HalfIntegralForm(
            int(rng.integers(1, 3)), int(rng.integers(1, 3)), int(rng.integers(2, 4)),
            int(rng.integers(-1, 2)), int(rng.integers(-1, 2)), int(rng.integers(-1, 2)),
        )
        if cand.is_positive_definite():
            ys.append(forms.minkowski_reduce(cand).form)
            break
    for y in ys:
        oracle, cosets = brute_force_flag_sum(y, (2.0, 2.0, 0.0), colnorm2=5)
        flag_total = 0.0 + 0.0j
        adj2 = il.adj3(y.gram2())
        for (v, n) in sorted(cosets):
            qv = Fraction(y.value2(v), 2)
            qn = Fraction(_form_value(adj2, n), 4)
            flag_total += float(qv) ** -2.0 * float(qn) ** -2.0
        gap = abs(oracle - flag_total) / abs(oracle)
        res.add("matched-coset agreement (Y=%s) <= 1e-12" % (y.key(),), gap <= 1e-12,
                "gap %.3g over %d cosets" % (gap, len(cosets)))
        # the production enumerator must reproduce exactly the brute-force
        # flags within the brute-force ball's guaranteed coverage
        bounds = eis.TruncationSpec(q_bound=2.0, g_bound=2.0)
        spec_flags = {(f.v, f.n) for f in eis.enumerate_flags(y, bounds)}
        brute_flags = {
            (v, n)
            for (v, n) in cosets
            if Fraction(y.value2(v), 2) <= 2 and Fraction(_form_value(adj2, n), 4) <= 2
        }
        res.add("enumerate_flags matches brute force at small bounds (Y=%s)" % (y.key(),),
                spec_flags == brute_flags,
                "%d vs %d flags" % (len(spec_flags), len(brute_flags)))
    # exact GL3-invariance through the term bijection
    y = ys[1]
    u = _random_unimodular_bounded(_rng(seed + 1), 2)
    yu = forms.congruence_form(y, u)
    spec0 = eis.TruncationSpec(q_bound=6.0, g_bound=12.0)
    f_y = eis.enumerate_flags(y, spec0)
    f_yu = eis.enumerate_flags(yu, spec0)
    uinv = il.inv_unimodular(u)
    ut_inv = il.mat_t(uinv)
    mapped = {
        (_canon(tuple(sum(u[i][j] * f.v[j] for j in range(3)) for i in range(3))),
         _canon(tuple(sum(ut_inv[i][j] * f.n[j] for j in range(3)) for i in range(3))))
        for f in f_yu
    }
    res.add("GL3-invariance: flag sets biject exactly",
            mapped == {(f.v, f.n) for f in f_y},
            "%d flags" % len(f_y))
    ev_y = eis.selberg_E(y, (2.0, 2.0, 0.0), spec0)
    ev_yu = eis.selberg_E(yu, (2.0, 2.0, 0.0), spec0)
    gap = abs(ev_y.value - ev_yu.value) / abs(ev_y.value)
    res.add("GL3-invariance: values agree", gap <= 1e-12, "gap %.3g" % gap)
    res.add("runtime < 60 s", time.time() - t0 < 60.0)
    return res.finish(t0)


def _form_value(g, v):
    return sum(v[i] * g[i][j] * v[j] for i in range(3) for j in range(3))


def criterion_8(seed=DEFAULT_SEED):
    res = CriterionResult(8, "Epstein zeta and real-analytic bridge", False, 0.0)
    t0 = time.time()
    z = eis.epstein(np.eye(2), 2.0, 500.0**2)
    ref = 3.01340601984597006177313
    err = abs(z.value - ref)
    res.add("Z(I2,2) within recorded tail estimate",
            err <= z.tail_estimate, "err %.3g vs tail %.3g" % (err, z.tail_estimate))
    res.add("tail estimate <= 1e-4 at radius 500", z.tail_estimate <= 1e-4,
            "%.3g" % z.tail_estimate)
    for s in (2.0, 3.0):
        e = eis.real_analytic_E(1j, s, 500.0**2)
        lhs = sf.complex_zeta(2 * s) * e.value
        rhs = eis.epstein(np.eye(2), s, 500.0**2).value
        gap = abs(lhs - rhs) / abs(rhs)
        res.add("zeta(2s) E_s(i) = Z(I2,s) at s=%g to 1e-8" % s, gap <= 1e-8,
                "gap %.3g" % gap)
    return res.finish(t0)


def criterion_9(seed=DEFAULT_SEED):
    res = CriterionResult(9, "Bessel tail of the real-analytic series", False, 0.0)
    t0 = time.time()
    for (s, tau, bound) in ((2.3, 0.3 + 1.7j, 9.0e5), (3.0, 1j, 9.0e5)):
        _, _, residual = eis.zeta_Z2_decomposition(s, tau, bound)
        res.add("decomposition residual at (s=%g, tau=%s) <= 1e-8" % (s, tau),
                residual <= 1e-8, "residual %.3g" % residual)
    z5 = eis.zeta_Z2_star(2.0, 0.3 + 5j).value
    z10 = eis.zeta_Z2_star(2.0, 0.3 + 10j).value
    ratio = abs(z10) / abs(z5)
    res.add("exponential decay: |zeta*(t=10)| / |zeta*(t=5)| <= 10 exp(-10 pi)",
            ratio <= 10 * math.exp(-10 * math.pi), "ratio %.3g" % ratio)
    return res.finish(t0)


def criterion_10(seed=DEFAULT_SEED):
    res = CriterionResult(10, "functional-equation group is D12", False, 0.0)
    t0 = time.time()
    g = fg.generators()
    table = fg.closure([g["w"], g["a"], g["aba"]])
    res.add("closure has 12 elements", len(table.elements) == 12,
            "%d" % len(table.elements))
    aw = fg.compose(g["a"], g["w"])
    awi = table.index_of(aw)
    res.add("order(aw) == 6", table.order_of(awi) == 6)
    bi = table.index_of(g["b"])
    res.add("b in closure", bi is not None)
    conj = table.table[table.table[bi][awi]][bi]
    res.add("b aw b == aw^-1", conj == table.inverse_of(awi))
    ok, witness = fg.certify_dihedral(table)
    res.add("certify_dihedral", ok)
    res.add("runtime < 1 s", time.time() - t0 < 1.0)
    return res.finish(t0)


def criterion_11(seed=DEFAULT_SEED):
    res = CriterionResult(11, "Koecher-Maass series plumbing", False, 0.0)
    t0 = time.time()
    ones = series.ones_provider(k=24)
    spec0 = eis.TruncationSpec(q_bound=8.0, g_bound=8.0)
    tw = series.km_twisted(ones, (2.5, 2.5, 13.5), 1, spec0)
    e_i3 = eis.selberg_E(forms.HalfIntegralForm(1, 1, 1, 0, 0, 0), (2.5, 2.5, 13.5), spec0)
    gap_tw = abs(tw.value - e_i3.value / 24.0) / abs(e_i3.value / 24.0)
    res.add(
        "ones, det<=1 twisted == E(I3|.)/24  [known inconsistent expectation]",
        gap_tw <= 1e-12,
        "gap %.3g with %d classes; det <= 1 contains the det-1/2 and det-3/4 classes "
        "of the half-integral cone" % (gap_tw, tw.classes_used),
    )
    cl = series.km_classic(ones, 15.0, 1)
    gap_cl = abs(cl.value - 1.0 / 24.0) * 24.0
    res.add(
        "ones, det<=1 classic == 1/24  [known inconsistent expectation]",
        gap_cl <= 1e-12,
        "gap %.3g with %d classes (same cause)" % (gap_cl, cl.classes_used),
    )
    # class path vs scrambled brute-force automorphism recomputation, det <= 10
    rng = _rng(seed)
    classes = forms.reduced_classes(10)
    s = 7.0
    direct = 0.0
    for t in classes:
        u = _random_unimodular_bounded(rng, 1)
        scr = forms.congruence_form(t, u)
        direct += 1.0 / (forms.automorphism_count(scr) * float(t.det()) ** s)
    km = series.km_classic(ones, s, 10)
    gap = abs(km.value - direct) / abs(direct)
    res.add("class path vs brute-force eps recomputation (det <= 10) <= 1e-12",
            gap <= 1e-12, "gap %.3g over %d classes" % (gap, len(classes)))
    # completeness of the class list against enumerate-reduce-dedupe at det <= 2
    brute = {
        forms.minkowski_reduce(t).form
        for t in forms.enumerate_J(6)
        if t.det() <= 2
    }
    listed = set(forms.reduced_classes(2))
    res.add("class list complete vs enumerate+reduce+dedupe (det <= 2)",
            brute == listed, "%d vs %d" % (len(brute), len(listed)))
    # exact linearity in the coefficient table
    alpha, beta = 2.0 - 1.0j, 0.5 + 0.25j
    det2 = series.det_power_provider(0.5, k=24)
    mixed = series.CoefficientTable(
        k=24, provider=lambda red: alpha * 1.0 + beta * float(red.det()) ** 0.5,
        name="mixed",
    )
    va = series.km_classic(ones, s, 4).value
    vb = series.km_classic(det2, s, 4).value
    vm = series.km_classic(mixed, s, 4).value
    lin_gap = abs(vm - (alpha * va + beta * vb)) / abs(vm)
    res.add("linearity in the table", lin_gap <= 1e-14, "gap %.3g" % lin_gap)
    return res.finish(t0)


def criterion_12(seed=DEFAULT_SEED):
    res = CriterionResult(12, "symplectic completion and left-association", False, 0.0)
    t0 = time.time()
    rng = _rng(seed)
    ok = 0
    for _ in range(500):
        m = mx.random_symplectic(rng, max_entry=12, max_factors=8)
        _, _, c, d = mx.blocks(m)
        pair = sp.canonical_pair(c, d)
        m0 = sp.complete_to_symplectic(pair)
        if mx.is_symplectic(m0):
            ok += 1
    res.add("500 random pairs complete to exact symplectic matrices",
            ok == 500, "%d/500" % ok)
    ball = il.unimodular_matrices_entrybound(2)
    stable = True
    checked = 0
    for i in range(50):
        m = mx.random_symplectic(rng, max_entry=10, max_factors=6)
        _, _, c, d = mx.blocks(m)
        base = sp.canonical_pair(c, d)
        # full ball on the first pairs, a deterministic stride on the rest
        # (the full 50 x 135408 sweep alone would take minutes)
        search = ball if i < 2 else ball[i % 97::97]
        for u in search:
            checked += 1
            if sp.canonical_pair(il.mat_mul(u, c), il.mat_mul(u, d)) != base:
                stable = False
                break
        if not stable:
            break
    res.add("canonical_pair constant on left orbits (entry-bound-2 search)",
            stable,
            "%d orbit translates checked (ball size %d; full ball on 2 pairs, "
            "stride-sampled on 48)" % (checked, len(ball)))
    return res.finish(t0)


def criterion_13(seed=DEFAULT_SEED):
    res = CriterionResult(13, "per-coset kernel surrogate", False, 0.0)
    t0 = time.time()
    i3 = tuple(tuple(row) for row in il.identity(3))
    z3 = tuple(tuple([0] * 3) for _ in range(3))
    mixed_c = ((1, 0, 0), (0, 0, 0), (0, 0, 0))
    mixed_d = ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    pairs = [
        sp.CoprimePair(c=z3, d=i3),
        sp.CoprimePair(c=i3, d=z3),
        sp.canonical_pair(mixed_c, mixed_d),
    ]
    # evaluate each slashed coset term at the point whose image under the
    # completed matrix is a well-conditioned W (so M0 Z = W exactly); the
    # round trip through the completion exercises the coset machinery
    for pair, w_point in zip(pairs, _fixed_lipschitz_points()):
        m0 = sp.complete_to_symplectic(pair)
        m0_inv = _symplectic_inverse(m0)
        z, _ = mx.mobius(m0_inv, w_point)
        zp, jv = mx.mobius(m0, z)
        roundtrip = float(np.max(np.abs(zp - w_point)))
        rep = lip.lipschitz_report((2.0, 4.0, 5.0), zp, 8, 12, tail_correction=True)
        res.add(
            "slashed two-sided gap <= 1e-3 at pair C=%s" % (pair.c,),
            rep.relative_gap <= 1e-3 and roundtrip < 1e-10,
            "gap %.3g, coset round-trip defect %.2g, min Im eigenvalue %.3g"
            % (rep.relative_gap, roundtrip, float(np.min(np.linalg.eigvalsh(zp.imag)))),
        )
    return res.finish(t0)


def _symplectic_inverse(m):
    """Exact inverse of a symplectic integer matrix: J^-1 M^T J."""
    a, b, c, d = mx.blocks(m)
    return mx.from_blocks(
        il.mat_t(d), [[-x for x in row] for row in il.mat_t(b)],
        [[-x for x in row] for row in il.mat_t(c)], il.mat_t(a),
    )


ALL_CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
    criterion_6, criterion_7, criterion_8, criterion_9, criterion_10,
    criterion_11, criterion_12, criterion_13,
]

KNOWN_DEFECT_CLAUSES = {
    (6, "reduced_classes(1) == {I3}  [known inconsistent expectation]"),
    (11, "ones, det<=1 twisted == E(I3|.)/24  [known inconsistent expectation]"),
    (11, "ones, det<=1 classic == 1/24  [known inconsistent expectation]"),
}


def run_all(seed=DEFAULT_SEED):
    return [f(seed) for f in ALL_CRITERIA]
