import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zetamellin.contour import (
    ContourSpec,
    Domain,
    Kernel,
    Normalization,
    auto_ray_angle,
    build_hankel,
    integrate_contour,
    integrate_real_axis,
    mellin,
)
from zetamellin.errors import ConfigError, DomainError, PoleError
from zetamellin.special import BranchConvention, gamma

ZETA2 = math.pi**2 / 6
ETA2 = math.pi**2 / 12
H = Domain.HANKEL
R_AX = Domain.REAL_AXIS


def hankel_raw(kernel, alpha, **spec_kw):
    spec = ContourSpec(**spec_kw).resolved(alpha, kernel)
    return integrate_contour(build_hankel(spec), kernel, alpha)


# --- path construction ---------------------------------------------------


def test_path_endpoints_and_winding():
    path = build_hankel(ContourSpec(inner_radius=0.5, truncation=40.0))
    assert abs(path.start) == pytest.approx(40.0)
    assert abs(path.end) == pytest.approx(40.0)
    lo, hi = path.angle_range
    assert hi - lo == pytest.approx(2 * math.pi, abs=1e-15)
    g, ang = path.sample(200)
    assert np.max(np.abs(np.diff(ang))) < 0.1
    assert ang[-1] - ang[0] == pytest.approx(2 * math.pi)
    # angles are genuine arguments of the sampled points
    assert np.max(np.abs(np.angle(g * np.exp(-1j * ang)))) < 1e-12


def test_path_clears_bose_poles():
    for r in (0.2, 0.5, 0.99):
        path = build_hankel(ContourSpec(inner_radius=r, truncation=40.0))
        assert path.distance_to(2j * math.pi) >= 2 * math.pi - r - 1e-12


def test_rotated_path_is_consistent():
    spec = ContourSpec(inner_radius=0.5, truncation=40.0, ray_angle=0.7)
    g, ang = build_hankel(spec).sample(50)
    assert np.max(np.abs(np.angle(g * np.exp(-1j * ang)))) < 1e-12
    assert abs(build_hankel(spec).start - 40 * cmath.exp(0.7j)) < 1e-12


@pytest.mark.parametrize(
    "kw",
    [
        dict(inner_radius=0.0),
        dict(inner_radius=2.0, truncation=1.0),
        dict(ray_angle=math.pi / 2),
        dict(nodes_per_segment=10),
    ],
)
def test_contour_spec_validation(kw):
    with pytest.raises(ConfigError):
        build_hankel(ContourSpec(**kw))


def test_auto_ray_angle():
    assert auto_ray_angle(0.5 + 1j) == 0.0
    assert 0 < auto_ray_angle(0.5 + 30j) < math.pi / 2
    assert auto_ray_angle(0.5 - 30j) == -auto_ray_angle(0.5 + 30j)


# --- kernels --------------------------------------------------------------


@pytest.mark.parametrize("kernel", [Kernel.bose(), Kernel.fermi()])
def test_laurent_head_matches_kernel(kernel):
    power, coeffs = kernel.laurent(4)
    g = 1e-2
    series = sum(c * g ** (power + k) for k, c in enumerate(coeffs))
    # remainder is of the first omitted order
    assert abs(kernel(np.array([g]))[0] - series) < 1e-2 * g ** (power + len(coeffs)) + 1e-14


def test_kernel_poles():
    assert 2j * math.pi in Kernel.bose().poles(10)
    assert 1j * math.pi in Kernel.fermi().poles(10)
    assert Kernel.exp().poles(10) == []


def test_trace_kernel_sum():
    k = Kernel.trace([1.0, 2.0, 3.0])
    g = np.array([0.3, 1.7])
    assert np.allclose(k(g), np.exp(-g) + np.exp(-2 * g) + np.exp(-3 * g), rtol=1e-15)


def test_kernel_constructors_validate():
    with pytest.raises(ConfigError):
        Kernel.scaled_exp(0)
    with pytest.raises(ConfigError):
        Kernel.trace([1.0, -2.0])


# --- raw integrals ---------------------------------------------------------


def test_exp_normalisation_at_half():
    raw = hankel_raw(Kernel.exp(), 0.5).value
    weight = math.pi / math.sin(math.pi / 2) / (2j * math.pi * gamma(0.5))
    assert abs(weight * raw - 1) < 1e-12


def test_exp_integer_edges_cancel():
    assert abs(hankel_raw(Kernel.exp(), 2).value) < 1e-9


def test_symmetric_branch_edge_factor():
    # raw Hankel = 2i sin(pi a) * real-axis transform
    a = 1.7 + 0.4j
    raw = hankel_raw(Kernel.exp(), a).value
    assert abs(raw - 2j * cmath.sin(math.pi * a) * gamma(a)) < 1e-11 * abs(raw)


@pytest.mark.parametrize("a", [0.5 + 3j, 2.3 - 1j, -1.4 + 7j])
def test_branch_law(a):
    kernel = Kernel.bose()
    sym = hankel_raw(kernel, a, branch=BranchConvention.SYMMETRIC).value
    ztp = hankel_raw(kernel, a, branch=BranchConvention.ZERO_TWO_PI).value
    ratio = ztp / sym
    assert abs(abs(ratio) - abs(cmath.exp(1j * math.pi * a))) < 1e-10 * abs(ratio)
    assert abs(ratio - cmath.exp(1j * math.pi * a)) < 1e-10 * abs(ratio)


def test_real_axis_examples():
    assert abs(integrate_real_axis(Kernel.exp(), 2).value - 1) < 1e-13
    assert abs(integrate_real_axis(Kernel.exp(), 0.5).value - math.sqrt(math.pi)) < 1e-12
    assert abs(integrate_real_axis(Kernel.fermi(), 2).value - ETA2) < 1e-10


def test_real_axis_domain():
    with pytest.raises(DomainError):
        integrate_real_axis(Kernel.bose(), 1.0)
    with pytest.raises(DomainError):
        integrate_real_axis(Kernel.fermi(), -0.1)


def test_err_estimate_covers_true_error_real_axis():
    for a in (0.3, 1.5 + 2j, 4 - 7j):
        res = integrate_real_axis(Kernel.exp(), a)
        assert abs(res.value - gamma(a)) <= max(res.err_estimate, 1e-15 * abs(gamma(a)))


# --- mellin with normalisations ---------------------------------------------


def test_mellin_examples():
    assert abs(mellin(Kernel.bose(), 2, Normalization.GAMMA, R_AX).value - ZETA2) < 1e-12
    hz = mellin(Kernel.bose(), 3, Normalization.HANKEL_GAMMA, H).value
    rz = mellin(Kernel.bose(), 3, Normalization.GAMMA, R_AX).value
    assert abs(hz - rz) < 1e-8
    for a in (0.5, 1.5 + 2j, 3.0):
        v = mellin(Kernel.scaled_exp(2.0), a, Normalization.GAMMA, R_AX).value
        assert abs(v - 2.0 ** (-a)) < 1e-12 * abs(2.0 ** (-a))


def test_bose_hankel_zeta2():
    res = mellin(Kernel.bose(), 2, Normalization.HANKEL_GAMMA, H)
    assert abs(res.value - ZETA2) < 1e-8
    assert "near-pole-normalization" in res.warnings
    assert "removable-singularity" in res.warnings


def test_bose_hankel_pole_at_one():
    with pytest.raises(PoleError):
        mellin(Kernel.bose(), 1, Normalization.HANKEL_GAMMA, H)


def test_eta_normalisations():
    corrected = mellin(Kernel.fermi(), 2, Normalization.ETA_GAMMA_CORRECTED, R_AX).value
    written = mellin(Kernel.fermi(), 2, Normalization.ETA_GAMMA_AS_WRITTEN, R_AX).value
    assert abs(corrected - ETA2) < 1e-10
    assert abs(written - math.pi**2 / 24) < 1e-10


def test_haar_normalisation_is_gamma_times_hankel_gamma():
    a = 0.4 + 2j
    hg = Normalization.HANKEL_GAMMA.weight(a)
    hh = Normalization.HANKEL_HAAR.weight(a)
    assert abs(hh / hg - gamma(a)) < 1e-12 * abs(gamma(a))


def test_pole_warning_thresholds():
    assert Normalization.HANKEL_GAMMA.pole_warning(3 + 1e-4)
    assert not Normalization.HANKEL_GAMMA.pole_warning(2.5)
    assert Normalization.ETA_GAMMA_CORRECTED.pole_warning(1 + 1e-4j)


@pytest.mark.parametrize("r", [0.2, 0.5, 1.0])
@pytest.mark.parametrize("big_r", [35.0, 50.0])
def test_contour_deformation_invariance(r, big_r):
    a = 0.5 + 3j
    base = mellin(Kernel.bose(), a, Normalization.HANKEL_GAMMA, H).value
    moved = mellin(
        Kernel.bose(), a, Normalization.HANKEL_GAMMA, H, ContourSpec(inner_radius=r, truncation=big_r)
    ).value
    assert abs(moved - base) < 1e-9


def test_ray_rotation_invariance():
    a = 0.5 + 6j
    vals = [
        mellin(Kernel.bose(), a, Normalization.HANKEL_GAMMA, H, ContourSpec(ray_angle=psi)).value
        for psi in (0.0, 0.5, 1.0)
    ]
    assert max(abs(v - vals[0]) for v in vals) < 1e-9


def test_real_axis_hankel_agreement_grid():
    res = []
    for x in np.linspace(1.15, 3.9, 5):
        for y in (-10.0, -3.0, 3.0, 10.0):
            a = complex(x, y)
            h = mellin(Kernel.bose(), a, Normalization.HANKEL_GAMMA, H).value
            r = mellin(Kernel.bose(), a, Normalization.GAMMA, R_AX).value
            res.append(abs(h - r))
    assert len(res) == 20
    assert max(res) < 1e-8


@settings(max_examples=30, deadline=None)
@given(st.floats(-1.9, 3.9), st.floats(-20, 20))
def test_doubling_within_estimate(x, y):
    a = complex(x, y)
    if abs(a - round(x)) < 0.05:
        return
    res = mellin(Kernel.bose(), a, Normalization.HANKEL_GAMMA, H, check_doubling=True)
    assert res.doubling_delta <= max(res.err_estimate, 1e-15)
