"""Acceptance suite: one check per criterion, each printing a PASS/FAIL line.

Run under pytest (``pytest tests/test_acceptance.py -s``) or directly with
``python tests/test_acceptance.py``.
"""

import cmath
import math
import sys
import time
import warnings

import numpy as np
import pytest

from zetamellin.contour import Domain, Kernel, Normalization, mellin
from zetamellin.errors import AccuracyError, NearIntegerWarning
from zetamellin.identity import (
    MatrixOperand,
    PhaseBranch,
    Spectrum,
    exp_tr_det_check,
    hc_relation_check,
    normalization_constant,
    random_matrix,
    scalar_det_side,
    theorem_residual,
    theorem_rhs,
)
from zetamellin.special import gamma
from zetamellin.zeta import (
    count_zeros_rectangle,
    eta_hankel,
    eta_series,
    find_zeros,
    involution_check,
    zeta_hankel,
    zeta_mellin_real,
    zeta_ref,
)

# first ten ordinates, from mpmath.zetazero (independent of this package)
ZERO_ORDINATES = (
    14.134725141734693790,
    21.022039638771554993,
    25.010857580145688763,
    30.424876125859513210,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159727,
    49.773832477672302182,
)


def _off_integer(x: float, gap: float = 0.02) -> bool:
    return abs(x - round(x)) > gap


def _grid_real_axis():
    rng = np.random.default_rng(2002)
    pts = []
    while len(pts) < 20:
        a = complex(rng.uniform(1.1, 4.0), rng.uniform(-30, 30))
        if _off_integer(a.real):
            pts.append(a)
    return pts


def _grid_ref():
    rng = np.random.default_rng(2050)
    pts = []
    while len(pts) < 50:
        a = complex(rng.uniform(-2.0, 4.0), rng.uniform(-30, 30))
        if _off_integer(a.real):
            pts.append(a)
    return pts


def criterion_1():
    t0 = time.perf_counter()
    alphas = (0.1, 0.25, 0.5, 0.75, 1.5, 2.48, 2.5, 2.52)
    errs = [abs(normalization_constant(a).value - 1) for a in alphas]
    elapsed = time.perf_counter() - t0
    ok = max(errs) < 1e-9 and elapsed < 10
    return ok, f"max |N-1| = {max(errs):.2e}, {elapsed:.2f}s"


def criterion_2():
    t0 = time.perf_counter()
    d_real = max(abs(zeta_hankel(a).value - zeta_mellin_real(a).value) for a in _grid_real_axis())
    d_ref = max(abs(zeta_hankel(a).value - zeta_ref(a)) for a in _grid_ref())
    elapsed = time.perf_counter() - t0
    ok = d_real < 1e-8 and d_ref < 1e-8 and elapsed < 120
    return ok, f"hankel-vs-real {d_real:.2e}, hankel-vs-ref {d_ref:.2e}, {elapsed:.2f}s"


def criterion_3():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NearIntegerWarning)
        cases = [
            ("zeta(0)", zeta_hankel(0).value, zeta_ref(0), -0.5),
            ("zeta(-1)", zeta_hankel(-1).value, zeta_ref(-1), -1 / 12),
            ("zeta(2)", zeta_hankel(2).value, zeta_ref(2), math.pi**2 / 6),
            ("eta(1)", eta_hankel(1).value, eta_series(1), math.log(2)),
            ("eta(2)", eta_hankel(2).value, eta_series(2), math.pi**2 / 12),
        ]
    worst = 0.0
    for _, contour, oracle, exact in cases:
        assert abs(oracle - exact) < 1e-12
        worst = max(worst, abs(contour - oracle), abs(contour - exact))
    return worst < 1e-8, f"worst spot error {worst:.2e}"


def criterion_4():
    t0 = time.perf_counter()
    zeros = find_zeros(1, 50)
    problems = []
    if len(zeros) != 10:
        problems.append(f"{len(zeros)} zeros")
    for z, ref in zip(zeros, ZERO_ORDINATES):
        if not (z.residual < 1e-6 and abs(z.t - ref) < 1e-6):
            problems.append(f"zero {z.t}")
        rec = involution_check(z.alpha)
        if rec.reflected_point != rec.alpha0 or abs(rec.zeta_at_reflected) >= 1e-5:
            problems.append(f"involution {z.t}")
    n_strip = count_zeros_rectangle(0, 1, 1, 50)
    n_right = count_zeros_rectangle(2, 3, 0, 50)
    if n_strip != 10 or n_right != 0:
        problems.append(f"counts {n_strip}/{n_right}")
    elapsed = time.perf_counter() - t0
    if elapsed >= 300:
        problems.append("runtime")
    detail = f"{len(zeros)} zeros, counts {n_strip}/{n_right}, {elapsed:.2f}s"
    return not problems, detail + ("; " + ", ".join(problems) if problems else "")


def criterion_5():
    rng = np.random.default_rng(505)
    worst = 0.0
    done = 0
    while done < 20:
        a = complex(rng.uniform(-2, 3), rng.uniform(-20, 20))
        if min(abs(a - n) for n in range(-3, 5)) < 0.05:
            continue
        lhs = zeta_hankel(a).value
        rhs = 2**a * math.pi ** (a - 1) * cmath.sin(math.pi * a / 2) * gamma(1 - a) * zeta_hankel(1 - a).value
        worst = max(worst, abs(lhs - rhs))
        done += 1
    return worst < 1e-8, f"max residual {worst:.2e}"


def criterion_6():
    t0 = time.perf_counter()
    kinds = ("hermitian", "triangular", "general")
    rand = [
        exp_tr_det_check(random_matrix(kinds[i % 3], 2 + i % 7, 6000 + i)).rel_residual for i in range(200)
    ]
    exact = []
    for d in range(1, 9):
        exact.append(exp_tr_det_check(random_matrix("nilpotent", d, 6500 + d)).rel_residual)
        exact.append(exp_tr_det_check(MatrixOperand(np.diag(np.linspace(-1.5, 2.0, d)))).rel_residual)
    elapsed = time.perf_counter() - t0
    ok = max(rand) < 1e-9 and max(exact) < 1e-12 and elapsed < 30
    return ok, f"random max {max(rand):.2e}, exact max {max(exact):.2e}, {elapsed:.2f}s"


def criterion_7():
    worst = 0.0
    for c in (0.5, 1.0, 2.0):
        for a in _grid_real_axis():
            exact = cmath.exp(c * a)
            worst = max(worst, abs(scalar_det_side(c, a) - exact) / math.exp(c * a.real))
    return worst < 1e-8, f"max scaled error {worst:.2e}"


def criterion_8():
    spec = Spectrum.explicit([0.5, 1.0, 3.0])
    phase_err = 0.0
    for a in (0.1, 0.3, 0.5, 0.9, 1.5, 2.7):
        ratio = theorem_rhs(spec, a, PhaseBranch(1, 1)).value / theorem_rhs(spec, a).value
        phase_err = max(phase_err, abs(abs(ratio) - 1))
    gf_err = 0.0
    for t in np.linspace(0.5, 60, 25):
        gf_err = max(gf_err, abs(hc_relation_check(complex(0.5, t), spec).gamma_factor - 1))
    zero_checks = [hc_relation_check(z.alpha, spec) for z in find_zeros(1, 50)]
    for rec in zero_checks:
        gf_err = max(gf_err, abs(rec.gamma_factor - 1))
    holds = bool(zero_checks) and all(rec.holds_at_half for rec in zero_checks)
    ok = phase_err < 1e-12 and gf_err < 1e-10 and holds
    return ok, f"|ratio|-1 {phase_err:.1e}, gamma_factor-1 {gf_err:.1e}, holds_at_half {holds}"


def criterion_9():
    one = Spectrum.explicit([1.0])
    one_two = Spectrum.explicit([1.0, 2.0])
    r1 = theorem_residual(one, 1.0, PhaseBranch(0, 1))
    r2 = theorem_residual(one_two, 2.0, PhaseBranch(0, 1))
    closed = abs(r1.log_gap + 2) < 1e-9 and abs(r2.log_gap + 7.25) < 1e-9
    stable = True
    for spec in (one, one_two, Spectrum.natural_numbers(50)):
        for a in (0.3, 1.0, 2.0, 0.5 + 4j):
            first = theorem_residual(spec, a)
            again = theorem_residual(spec, a)
            fields = (first.log_gap, first.phase_gap, abs(first.log_lhs), abs(first.log_rhs))
            stable &= first == again and all(math.isfinite(x) for x in fields)
    return closed and stable, f"gaps {r1.log_gap:.12f}, {r2.log_gap:.12f}; deterministic+finite {stable}"


def criterion_10():
    rng = np.random.default_rng(1010)
    violations = 0
    for i in range(100):
        kind = i % 4
        while True:
            a = complex(rng.uniform(-2, 4), rng.uniform(-30, 30))
            if _off_integer(a.real) or abs(a.imag) > 0.02:
                break
        try:
            if kind == 0:
                res = mellin(Kernel.bose(), a, Normalization.HANKEL_GAMMA, Domain.HANKEL, check_doubling=True)
            elif kind == 1:
                res = mellin(Kernel.fermi(), a, Normalization.HANKEL_GAMMA, Domain.HANKEL, check_doubling=True)
            elif kind == 2:
                a = complex(rng.uniform(1.1, 4), rng.uniform(-30, 30))
                res = mellin(Kernel.bose(), a, Normalization.GAMMA, Domain.REAL_AXIS, check_doubling=True)
            else:
                res = mellin(
                    Kernel.trace([0.5, 1.0, 2.5]), a, Normalization.HANKEL_GAMMA, Domain.HANKEL, check_doubling=True
                )
        except AccuracyError:
            violations += 1
            continue
        if res.doubling_delta > res.err_estimate:
            violations += 1
    return violations <= 5, f"{violations} of 100 doubling deltas exceed err_estimate"


CRITERIA = [
    (1, "normalization constant", criterion_1),
    (2, "representation equivalence", criterion_2),
    (3, "continuation spot values", criterion_3),
    (4, "zeros and involution", criterion_4),
    (5, "functional equation", criterion_5),
    (6, "exp-trace/det anchor", criterion_6),
    (7, "scalar det-side substitution", criterion_7),
    (8, "phase structure and H_C", criterion_8),
    (9, "theorem residual ledger", criterion_9),
    (10, "quadrature honesty", criterion_10),
]


def _line(num, name, ok, detail):
    return f"criterion {num:2d} [{'PASS' if ok else 'FAIL'}] {name}: {detail}"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"c{n}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, name, ok, detail))
    sys.exit(1 if failed else 0)
