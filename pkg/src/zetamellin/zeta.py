"""Riemann zeta and Dirichlet eta: series oracle, Mellin/Hankel evaluators, zeros.

The reference values come from the alternating Dirichlet series for eta,
summed with Borwein's acceleration, and never touch the quadrature code.
Zeros are searched on the critical line through sign changes of the
Riemann-Siegel Z function; rectangle counts use the argument principle and
are the independent check that nothing off the line was missed.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .contour import ContourSpec, Domain, Kernel, Normalization, QuadratureResult, mellin
from .errors import (
    AccuracyError,
    BoundaryZeroError,
    ConditioningError,
    DomainError,
    NearIntegerWarning,
    PhaseTrackingError,
    PoleError,
)
from .identity import PhaseBranch, Spectrum, involution_chain_residual, log_det_exp
from .special import gamma, log_gamma

__all__ = [
    "DomainStrip",
    "ZeroRecord",
    "InvolutionRecord",
    "eta_series",
    "zeta_ref",
    "zeta_mellin_real",
    "eta_mellin_real",
    "zeta_hankel",
    "eta_hankel",
    "riemann_siegel_theta",
    "hardy_z",
    "find_zeros",
    "count_zeros_rectangle",
    "involution_check",
]

_LOG_BORWEIN = math.log(3.0 + math.sqrt(8.0))
SCAN_STEP = 0.05


@dataclass(frozen=True)
class DomainStrip:
    """Open vertical strip ``lo < Re alpha < hi`` minus excluded abscissae."""

    lo: float
    hi: float
    excluded: tuple[float, ...] = ()

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DomainError("strip needs lo < hi", lo=self.lo, hi=self.hi)

    def __contains__(self, alpha) -> bool:
        x = complex(alpha).real
        if not self.lo < x < self.hi:
            return False
        return all(abs(x - e) > 1e-9 for e in self.excluded)


MELLIN_ZETA_STRIP = DomainStrip(1.0, math.inf)
MELLIN_ETA_STRIP = DomainStrip(0.0, math.inf)
HANKEL_STRIP = DomainStrip(-math.inf, math.inf, (1.0,))


def _borwein_weights(n: int) -> np.ndarray:
    # 1 - d_k/d_n for k = 0..n-1, built in log space to dodge overflow.
    i = np.arange(1, n + 1)
    log_ratio = np.log(4.0 * (n + i - 1) * (n - i + 1)) - np.log((2 * i - 1) * (2.0 * i))
    log_terms = np.concatenate([[0.0], np.cumsum(log_ratio)])
    log_d = np.logaddexp.accumulate(log_terms)
    return -np.expm1(log_d[:-1] - log_d[-1])


def _borwein_order(s: np.ndarray, rtol: float) -> int:
    t = float(np.max(np.abs(s.imag))) if s.size else 0.0
    sigma = float(np.min(s.real)) if s.size else 0.0
    # error ~ exp(pi|t|/2) |Gamma(s)|^{-1} (3+sqrt 8)^{-n}
    need = math.pi * t + (abs(sigma) + 1.0) * math.log(2.0 + t) - math.log(rtol) + 5.0
    return max(20, int(math.ceil(need / _LOG_BORWEIN)))


def _eta_sum(s: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    w = _borwein_weights(n)
    k = np.arange(n)
    signed = np.where(k % 2 == 0, 1.0, -1.0) * w
    logk = np.log(k + 1.0)
    terms = signed[None, :] * np.exp(-s[:, None] * logk[None, :])
    # each term carries a relative error of about eps * |s log(k+1)|
    spread = np.abs(terms) * (1.0 + np.abs(s[:, None]) * logk[None, :])
    return terms.sum(axis=1), np.sqrt((spread**2).sum(axis=1))


def _eta_direct(s: np.ndarray, rtol: float) -> tuple[np.ndarray, np.ndarray]:
    n = _borwein_order(s, rtol)
    a, _ = _eta_sum(s, n)
    b, spread = _eta_sum(s, n + 12)
    err = np.abs(a - b) + 4 * np.finfo(float).eps * spread
    return b, err


def _eta_reflected(s: np.ndarray, rtol: float) -> tuple[np.ndarray, np.ndarray]:
    # eta(s) = (1 - 2^{1-s}) chi(s) eta(1-s) / (1 - 2^s),
    # chi(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s)
    mirror, err = _eta_direct(1.0 - s, rtol)
    chi = np.array([
        2.0**x * math.pi ** (x - 1) * cmath.sin(math.pi * x / 2) * gamma(1.0 - x) for x in s
    ])
    factor = chi * (1.0 - 2.0 ** (1.0 - s)) / (1.0 - 2.0**s)
    value = factor * mirror
    # Lanczos gamma and the powers each add a few ulps scaled by |log| sizes
    extra = 8 * np.finfo(float).eps * (1.0 + np.abs(s)) * np.abs(value)
    return value, np.abs(factor) * err + extra


def _eta_many(s, rtol: float = 1e-12, method: str = "auto") -> np.ndarray:
    """Vectorised eta with a built-in convergence check.

    ``method="auto"`` sums the series directly for ``Re s >= -1/4`` and goes
    through the functional equation further left, where the large terms
    ``(k+1)**(-s)`` would cost digits.
    """
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    if method not in ("auto", "direct"):
        raise DomainError(f"unknown eta method {method!r}")
    left = (s.real < -0.25) if method == "auto" else np.zeros(s.shape, dtype=bool)
    value = np.empty(s.shape, dtype=complex)
    err = np.empty(s.shape)
    if np.any(~left):
        value[~left], err[~left] = _eta_direct(s[~left], rtol)
    if np.any(left):
        value[left], err[left] = _eta_reflected(s[left], rtol)
    scale = np.maximum(np.abs(value), 1.0)
    bad = err > rtol * scale
    if np.any(bad):
        i = int(np.argmax(err / scale))
        raise AccuracyError(
            "eta series did not reach the requested tolerance",
            alpha=complex(s[i]),
            estimate=float(err[i] / scale[i]),
            tol=rtol,
        )
    return value


def eta_series(alpha, tol: float = 1e-12, method: str = "auto") -> complex:
    """Dirichlet eta via Borwein-accelerated alternating series.

    ``tol`` bounds the error relative to ``max(1, |eta|)``; an
    :class:`AccuracyError` is raised when the internal estimate exceeds it.
    """
    if tol < 1e-13:
        raise DomainError("eta_series tolerance must be at least 1e-13", tol=tol)
    return complex(_eta_many([complex(alpha)], tol, method)[0])


def _two_factor(alpha: complex) -> complex:
    return 1.0 - 2.0 ** (1.0 - alpha)


def zeta_ref(alpha, tol: float = 1e-12) -> complex:
    """Reference zeta as ``eta(alpha) / (1 - 2**(1 - alpha))``."""
    alpha = complex(alpha)
    if abs(alpha - 1.0) <= 1e-12:
        raise PoleError("zeta has a pole at alpha = 1", alpha=alpha)
    factor = _two_factor(alpha)
    if abs(factor) <= 1e-6:
        raise ConditioningError("1 - 2**(1-alpha) vanishes here", alpha=alpha, factor=abs(factor))
    return eta_series(alpha, tol) / factor


def _zeta_many(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    return _eta_many(s, 1e-12) / (1.0 - 2.0 ** (1.0 - s))


def zeta_mellin_real(alpha) -> QuadratureResult:
    """Bose kernel, Gamma weight, positive real axis; valid for ``Re alpha > 1``."""
    if complex(alpha) not in MELLIN_ZETA_STRIP:
        raise DomainError("real-axis zeta needs Re alpha > 1", alpha=complex(alpha))
    return mellin(Kernel.bose(), alpha, Normalization.GAMMA, Domain.REAL_AXIS)


def eta_mellin_real(alpha, mode: str = "corrected") -> QuadratureResult:
    """Fermi kernel on the real axis.

    ``mode="as-written"`` applies the weight ``(1 - 2**(1-alpha))/Gamma`` and
    so returns ``(1 - 2**(1-alpha)) * eta``; ``"corrected"`` returns eta.
    """
    if complex(alpha) not in MELLIN_ETA_STRIP:
        raise DomainError("real-axis eta needs Re alpha > 0", alpha=complex(alpha))
    norms = {
        "corrected": Normalization.ETA_GAMMA_CORRECTED,
        "as-written": Normalization.ETA_GAMMA_AS_WRITTEN,
    }
    if mode not in norms:
        raise DomainError(f"unknown eta mode {mode!r}")
    return mellin(Kernel.fermi(), alpha, norms[mode], Domain.REAL_AXIS)


def _hankel_eval(kernel, alpha, contour, allow_fallback, reference, label):
    alpha = complex(alpha)
    n = round(alpha.real)
    near = n >= 1 and abs(alpha - n) <= 1e-2
    if near and allow_fallback:
        value = reference(alpha)
        return QuadratureResult(value, 1e-12 * max(1.0, abs(value)), 0, [f"fallback:{label}"])
    if near:
        warnings.warn(
            f"alpha={alpha} is within 1e-2 of the normalization pole at {n}; "
            "using the removable-singularity average",
            NearIntegerWarning,
            stacklevel=3,
        )
    return mellin(kernel, alpha, Normalization.HANKEL_GAMMA, Domain.HANKEL, contour)


def zeta_hankel(alpha, contour: ContourSpec | None = None, *, allow_fallback: bool = False) -> QuadratureResult:
    """Zeta from the Hankel-contour representation, valid on all of C minus {1}.

    Near positive integers the Hankel weight has a removable pole.  By
    default a :class:`NearIntegerWarning` is issued and the contour value is
    taken as a circle average; with ``allow_fallback`` the series reference
    is returned instead (tagged ``fallback:zeta_ref``).
    """
    alpha = complex(alpha)
    if abs(alpha - 1.0) <= 1e-12:
        raise PoleError("zeta has a pole at alpha = 1", alpha=alpha)
    return _hankel_eval(Kernel.bose(), alpha, contour, allow_fallback, zeta_ref, "zeta_ref")


def eta_hankel(alpha, contour: ContourSpec | None = None, *, allow_fallback: bool = False) -> QuadratureResult:
    """Eta from the Hankel contour with the Fermi kernel (entire in alpha)."""
    return _hankel_eval(Kernel.fermi(), alpha, contour, allow_fallback, eta_series, "eta_series")


def riemann_siegel_theta(t: float) -> float:
    """``Im log Gamma(1/4 + i t/2) - (t/2) log pi``."""
    if t < 0:
        raise DomainError("theta is evaluated for t >= 0", t=t)
    return log_gamma(complex(0.25, 0.5 * t)).imag - 0.5 * t * math.log(math.pi)


def hardy_z(t) -> np.ndarray | float:
    """Real-valued ``Z(t) = exp(i theta(t)) zeta(1/2 + i t)``."""
    ts = np.atleast_1d(np.asarray(t, dtype=float))
    theta = np.array([riemann_siegel_theta(x) for x in ts])
    z = np.exp(1j * theta) * _zeta_many(0.5 + 1j * ts)
    return float(z.real[0]) if np.ndim(t) == 0 else z.real


@dataclass
class ZeroRecord:
    t: float
    residual: float
    bracket: tuple[float, float]
    winding_confirmed: bool

    @property
    def alpha(self) -> complex:
        return complex(0.5, self.t)


def _bisect(t_lo: float, t_hi: float, z_lo: float, xtol: float = 1e-10) -> tuple[float, float]:
    for _ in range(200):
        if t_hi - t_lo <= xtol:
            return t_lo, t_hi
        mid = 0.5 * (t_lo + t_hi)
        z_mid = hardy_z(mid)
        if z_mid == 0.0:
            return mid, mid
        if (z_mid > 0) == (z_lo > 0):
            t_lo, z_lo = mid, z_mid
        else:
            t_hi = mid
    raise AccuracyError("bisection did not converge", bracket=(t_lo, t_hi))


def find_zeros(t_min: float, t_max: float, max_count: int | None = None, *, step: float = SCAN_STEP) -> list[ZeroRecord]:
    """Zeros ``1/2 + i t`` with ``t_min < t < t_max``, sorted by ``t``.

    Each sign change of Z on a ``step`` grid is bisected to 1e-10 and then
    confirmed by a winding count of one around a small rectangle.
    """
    if not 0 < t_min < t_max:
        raise DomainError("need 0 < t_min < t_max", t_min=t_min, t_max=t_max)
    if step > SCAN_STEP:
        raise DomainError("scan step must not exceed 0.05", step=step)
    n = int(math.ceil((t_max - t_min) / step))
    grid = np.linspace(t_min, t_max, n + 1)
    z = hardy_z(grid)
    brackets = []
    for i in range(n):
        if z[i] == 0.0:
            brackets.append((grid[i], grid[i], z[i]))
        elif z[i] * z[i + 1] < 0:
            brackets.append((grid[i], grid[i + 1], z[i]))
    ordinates = []
    for lo, hi, z_lo in brackets:
        if lo == hi:
            ordinates.append((lo, lo, hi))
            continue
        a, b = _bisect(lo, hi, z_lo)
        ordinates.append((0.5 * (a + b), a, b))
        if max_count is not None and len(ordinates) >= max_count:
            break
    out = []
    for i, (t, a, b) in enumerate(ordinates):
        residual = abs(_zeta_many(np.array([0.5 + 1j * t]))[0])
        if residual >= 1e-6:
            raise AccuracyError("bisected point is not a zero", t=t, residual=residual)
        gaps = [abs(t - o[0]) for j, o in enumerate(ordinates) if j != i]
        half = min([0.25] + [0.45 * g for g in gaps])
        count = count_zeros_rectangle(0.25, 0.75, t - half, t + half)
        out.append(ZeroRecord(float(t), float(residual), (float(a), float(b)), count == 1))
    return out


def _boundary_zeta(points: np.ndarray) -> np.ndarray:
    # Off the 2**(1-alpha) = 1 points the series oracle is used; on them the
    # contour representation takes over.
    values = np.empty(points.shape, dtype=complex)
    bad = np.abs(1.0 - 2.0 ** (1.0 - points)) < 1e-3
    if np.any(~bad):
        values[~bad] = _zeta_many(points[~bad])
    for i in np.flatnonzero(bad):
        values[i] = zeta_hankel(points[i]).value
    return values


def count_zeros_rectangle(re_lo: float, re_hi: float, t_lo: float, t_hi: float, *, step: float = 0.05) -> int:
    """Zeros of zeta inside the rectangle, by the argument principle.

    The boundary is walked counter-clockwise and sampled every ``step``;
    segments whose phase jumps by more than pi/2 are halved until none do.
    """
    if not (re_lo < re_hi and t_lo < t_hi):
        raise DomainError("degenerate rectangle")
    if re_lo <= 1.0 <= re_hi and t_lo <= 0.0 <= t_hi:
        raise DomainError("rectangle contains the pole at alpha = 1")
    corners = [complex(re_lo, t_lo), complex(re_hi, t_lo), complex(re_hi, t_hi), complex(re_lo, t_hi)]
    pts = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        m = max(2, int(math.ceil(abs(b - a) / step)))
        pts.append(a + (b - a) * np.arange(m) / m)
    pts = np.concatenate(pts + [np.array([corners[0]])])
    vals = _boundary_zeta(pts)
    for _ in range(40):
        if np.min(np.abs(vals)) < 1e-8:
            raise BoundaryZeroError("zeta vanishes on the rectangle boundary", min_abs=float(np.min(np.abs(vals))))
        jumps = np.abs(np.angle(vals[1:] / vals[:-1]))
        wide = np.flatnonzero(jumps > math.pi / 2)
        if wide.size == 0:
            break
        mids = 0.5 * (pts[wide] + pts[wide + 1])
        mid_vals = _boundary_zeta(mids)
        pts = np.insert(pts, wide + 1, mids)
        vals = np.insert(vals, wide + 1, mid_vals)
    else:
        raise PhaseTrackingError("phase refinement did not settle")
    winding = float(np.sum(np.angle(vals[1:] / vals[:-1]))) / (2 * math.pi)
    count = round(winding)
    if abs(winding - count) >= 0.05:
        raise PhaseTrackingError("winding number is not close to an integer", winding=winding)
    return int(count)


@dataclass
class InvolutionRecord:
    alpha0: complex
    zeta_at: complex
    zeta_at_reflected: complex
    reflected_point: complex
    chain_residual: float
    chain_residuals: dict[tuple[int, int], float] = field(default_factory=dict)


def involution_check(alpha0, spectrum: Spectrum | None = None, contour: ContourSpec | None = None) -> InvolutionRecord:
    """Zeta at ``alpha0`` and at ``1 - conj(alpha0)`` plus the chain residuals.

    The chain residual is ``|exp(+-4 n pi i Re a) D**(2 Re a) - D|`` with
    ``D = det exp(beta)`` for ``spectrum`` (default ``{1}``), reported for
    ``n in {0, 1}`` and both signs; ``chain_residual`` is their maximum.
    """
    a = complex(alpha0)
    if not 0 < a.real < 1:
        raise DomainError("involution check needs 0 < Re alpha0 < 1", alpha0=a)
    spectrum = spectrum or Spectrum.explicit([1.0])
    reflected = complex(1.0 - a.real, a.imag)
    z0 = zeta_hankel(a, contour, allow_fallback=True).value
    z1 = z0 if reflected == a else zeta_hankel(reflected, contour, allow_fallback=True).value
    det_log = log_det_exp(spectrum)
    residuals = {
        (n, sign): involution_chain_residual(a, det_log, PhaseBranch(n, sign))
        for n in (0, 1)
        for sign in (1, -1)
    }
    return InvolutionRecord(a, z0, z1, reflected, max(residuals.values()), residuals)
