import numpy as np
import pytest

from siegel3 import branch, matrices as mx
from siegel3.errors import BranchCutError


def test_branch_at_imaginary_identity():
    b = branch.branch_h(1j * np.eye(3))
    assert abs(b.h1 - 0.5j * np.pi) < 1e-15
    assert abs(b.h2 - 1j * np.pi) < 1e-15
    assert abs(b.h3 - 1.5j * np.pi) < 1e-15


def test_branch_at_imaginary_diagonal():
    b = branch.branch_h(1j * np.diag([1.0, 1.0, 4.0]))
    assert abs(b.h3 - (1.5j * np.pi + np.log(4))) < 1e-14


def test_exp_consistency_and_inverse_agreement(rng):
    worst_exp = worst_inv = 0.0
    for _ in range(1000):
        z = mx.random_siegel(rng)
        b = branch.branch_h(z)
        d1 = z[0, 0]
        d2 = z[0, 0] * z[1, 1] - z[0, 1] ** 2
        d3 = np.linalg.det(z)
        worst_exp = max(
            worst_exp,
            abs(np.exp(b.h1) - d1) / abs(d1),
            abs(np.exp(b.h2) - d2) / abs(d2),
            abs(np.exp(b.h3) - d3) / abs(d3),
        )
        direct = branch.branch_h(mx.mobius(mx.inversion6(), z)[0])
        explicit = branch.branch_h_inverse(z)
        worst_inv = max(
            worst_inv,
            abs(direct.h1 - explicit.h1),
            abs(direct.h2 - explicit.h2),
            abs(direct.h3 - explicit.h3),
        )
    assert worst_exp <= 1e-12
    assert worst_inv <= 1e-12


def test_h3_inversion_sum(rng):
    for _ in range(100):
        z = mx.random_siegel(rng)
        total = branch.branch_h(z).h3 + branch.branch_h_inverse(z).h3
        assert abs(total - 3j * np.pi) < 1e-12
        # the imaginary part of h3 stays within its a-priori bound
        assert abs(branch.branch_h(z).h3.imag) <= 4.5 * np.pi + 1e-12


def test_power_examples():
    val = branch.power_p((1, 1, 1), 2j * np.eye(3))
    assert abs(val + 64.0) < 1e-12
    s, w, u = 0.7 - 0.2j, 1.3 + 0.5j, -0.4 + 1.1j
    val = branch.power_p((s, w, u), 1j * np.eye(3))
    assert abs(val - np.exp(0.5j * np.pi * (s + 2 * w + 3 * u))) < 1e-13


def test_power_scaling(rng):
    for _ in range(50):
        g = rng.standard_normal((3, 3))
        y = g @ g.T + 0.3 * np.eye(3)
        c = float(rng.uniform(0.5, 3.0))
        e = tuple(rng.uniform(-2, 2, 3) + 1j * rng.uniform(-2, 2, 3))
        lhs = branch.power_p(e, 1j * c * y)
        rhs = c ** (e[0] + 2 * e[1] + 3 * e[2]) * branch.power_p(e, 1j * y)
        assert abs(lhs - rhs) / abs(rhs) <= 1e-12


def test_power_at_imaginary_closed_form(rng):
    for _ in range(50):
        g = rng.standard_normal((3, 3))
        y = g @ g.T + 0.3 * np.eye(3)
        e = tuple(rng.uniform(-2, 2, 3) + 1j * rng.uniform(-2, 2, 3))
        s, w, u = e
        d1 = y[0, 0]
        d2 = np.linalg.det(y[:2, :2])
        d3 = np.linalg.det(y)
        rhs = (
            np.exp(0.5j * np.pi * (s + 2 * w + 3 * u))
            * d1**s * d2**w * d3**u
        )
        assert abs(branch.power_p(e, 1j * y) - rhs) / abs(rhs) <= 1e-12


def test_inversion_identity_examples(rng):
    assert branch.power_inversion_gap((0.8, -1.2, 2.1), 1j * np.eye(3)) <= 1e-13
    assert branch.power_inversion_gap((1, 0, 0), np.diag([1j, 2j, 3j])) <= 1e-12
    worst = 0.0
    for _ in range(200):
        z = mx.random_siegel(rng, min_im=0.5)
        e = tuple(rng.uniform(-3, 3, 3) + 1j * rng.uniform(-3, 3, 3))
        worst = max(worst, branch.power_inversion_gap(e, z))
    assert worst <= 1e-10


def test_anti_diagonal_congruence_preserves_h3(rng):
    w = branch.W3
    for _ in range(100):
        z = mx.random_siegel(rng)
        zw = w @ z @ w
        assert abs(branch.branch_h(z).h3 - branch.branch_h(zw).h3) < 1e-12


def test_path_continuity(rng):
    # straight segments between Siegel points stay inside the space (the
    # imaginary parts average), and the branch values never jump
    for _ in range(100):
        za = mx.random_siegel(rng)
        zb = mx.random_siegel(rng)
        ts = np.linspace(0.0, 1.0, 1000)
        zs = za[None, :, :] * (1 - ts)[:, None, None] + zb[None, :, :] * ts[:, None, None]
        h1, h2, h3 = branch._branch_arrays(
            zs[:, 0, 0], zs[:, 0, 1], zs[:, 0, 2], zs[:, 1, 1], zs[:, 1, 2], zs[:, 2, 2]
        )
        for h in (h1, h2, h3):
            assert np.max(np.abs(np.diff(h))) < 0.1


def test_branch_cut_detection():
    with pytest.raises(BranchCutError):
        branch._plog(-1.0)
    with pytest.raises(BranchCutError):
        branch._plog(0.0)
    branch._plog(-1.0 + 1e-8j)  # off the cut: fine


def test_integer_power_fast_path_matches_logs(rng):
    zs = np.array([mx.random_siegel(rng) for _ in range(64)])
    args = (zs[:, 0, 0], zs[:, 0, 1], zs[:, 0, 2], zs[:, 1, 1], zs[:, 1, 2], zs[:, 2, 2])
    fast = branch.power_terms((-2, -4, 5), *args)
    slow = branch.power_terms((-2.0 + 0j, -4.0 + 1e-30j, 5.0 + 0j), *args)
    assert np.max(np.abs(fast - slow) / np.abs(slow)) <= 1e-12
