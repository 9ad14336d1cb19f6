"""Mellin transforms of spectral kernels on the positive axis and on a Hankel path.

Integrals are taken against the multiplicative Haar measure ``dg/g``, so
``mellin(f)(alpha) = weight(alpha) * integral f(g) g**alpha dg/g``.  Both
domains are integrated in the logarithmic variable ``u = log g`` (rays) or
the winding angle (inner circle) with adaptive Gauss-Legendre panels.

The Hankel path comes in from ``R*exp(i*psi)``, circles the origin once
counter-clockwise at radius ``r`` and leaves again along the same ray on
the next sheet.  ``psi = 0`` is the classical keyhole hugging the positive
real axis.  For large ``|Im alpha|`` the ray is turned towards the imaginary
axis; the value is unchanged (no kernel pole is crossed) but the
exponential cancellation between edges and circle disappears.
"""

from __future__ import annotations

import cmath
import dataclasses
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import AccuracyError, ConfigError, DomainError, PoleError
from .special import BranchConvention, reflection_weight, rgamma

__all__ = [
    "Normalization",
    "Domain",
    "Kernel",
    "ContourSpec",
    "Segment",
    "HankelPath",
    "QuadratureResult",
    "build_hankel",
    "integrate_contour",
    "integrate_real_axis",
    "mellin",
    "auto_ray_angle",
]

EPS = np.finfo(float).eps

_GL_ORDER = 16
_GL_X, _GL_W = np.polynomial.legendre.leggauss(_GL_ORDER)
_ROUNDOFF_FACTOR = 64.0

# Removable-singularity handling for the Hankel normalizations at positive
# integers: the weighted transform is averaged over a circle around alpha.
NEAR_INTEGER_TOL = 1e-2
_AVERAGE_RADIUS = 0.25
_AVERAGE_POINTS = 32


class Normalization(enum.Enum):
    """Multiplicative weights applied to the raw Haar-measure integral."""

    GAMMA = "gamma"
    ETA_GAMMA_AS_WRITTEN = "eta-gamma-as-written"
    ETA_GAMMA_CORRECTED = "eta-gamma-corrected"
    HANKEL_GAMMA = "hankel-gamma"
    HANKEL_HAAR = "hankel-haar"

    @property
    def is_hankel(self) -> bool:
        return self in (Normalization.HANKEL_GAMMA, Normalization.HANKEL_HAAR)

    def weight(self, alpha) -> complex:
        alpha = complex(alpha)
        if self is Normalization.GAMMA:
            return rgamma(alpha)
        if self is Normalization.ETA_GAMMA_AS_WRITTEN:
            return (1.0 - 2.0 ** (1.0 - alpha)) * rgamma(alpha)
        if self is Normalization.ETA_GAMMA_CORRECTED:
            # as-written weight divided by (1 - 2**(1-alpha))
            return rgamma(alpha)
        if self is Normalization.HANKEL_GAMMA:
            return reflection_weight(alpha) / (2j * math.pi)
        s = cmath.sin(math.pi * alpha)
        if abs(s) < 1e-12:
            raise PoleError(f"csc(pi*alpha) is singular at {alpha}", alpha=alpha)
        return 1.0 / (2j * s)

    def pole_warning(self, alpha: complex) -> bool:
        if self.is_hankel:
            return abs(cmath.sin(math.pi * alpha)) < 1e-3
        if self is not Normalization.GAMMA:
            return abs(1.0 - 2.0 ** (1.0 - alpha)) < 1e-3
        return False


class Domain(enum.Enum):
    REAL_AXIS = "real-axis"
    HANKEL = "hankel"


@dataclass(frozen=True)
class Kernel:
    """A kernel ``f(g)`` whose Mellin transform is taken.

    Build with the class methods; ``kind`` is one of ``bose``, ``fermi``,
    ``exp``, ``scaled_exp`` or ``trace``.
    """

    kind: str
    scale: float = 1.0
    spectrum: tuple[float, ...] = ()

    @classmethod
    def bose(cls) -> "Kernel":
        return cls("bose")

    @classmethod
    def fermi(cls) -> "Kernel":
        return cls("fermi")

    @classmethod
    def exp(cls) -> "Kernel":
        return cls("exp")

    @classmethod
    def scaled_exp(cls, c: float) -> "Kernel":
        if not c > 0:
            raise ConfigError("scaled_exp needs c > 0", c=c)
        return cls("scaled_exp", scale=float(c))

    @classmethod
    def trace(cls, eigenvalues: Sequence[float]) -> "Kernel":
        eig = tuple(float(e) for e in eigenvalues)
        if not eig or min(eig) <= 0:
            raise ConfigError("trace kernel needs a non-empty positive spectrum")
        return cls("trace", spectrum=eig)

    def __call__(self, g):
        g = np.asarray(g, dtype=complex)
        if self.kind == "bose":
            return -np.exp(-g) / np.expm1(-g)
        if self.kind == "fermi":
            e = np.exp(-g)
            return e / (1.0 + e)
        if self.kind == "exp":
            return np.exp(-g)
        if self.kind == "scaled_exp":
            return np.exp(-self.scale * g)
        eig = np.asarray(self.spectrum)
        out = np.zeros(g.shape, dtype=complex)
        flat = g.reshape(-1)
        acc = out.reshape(-1)
        for start in range(0, eig.size, 256):
            block = eig[start:start + 256, None]
            acc += np.exp(-block * flat[None, :]).sum(axis=0)
        return out

    @property
    def decay_rate(self) -> float:
        """Exponential decay rate of ``f`` along the positive axis."""
        if self.kind == "scaled_exp":
            return self.scale
        if self.kind == "trace":
            return min(self.spectrum)
        return 1.0

    @property
    def max_rate(self) -> float:
        if self.kind == "scaled_exp":
            return self.scale
        if self.kind == "trace":
            return max(self.spectrum)
        return 1.0

    @property
    def min_real_alpha(self) -> float:
        """Real-axis integrability needs ``Re alpha`` above this."""
        return 1.0 if self.kind == "bose" else 0.0

    def laurent(self, order: int = 4) -> tuple[int, list[float]]:
        """Leading power and first ``order`` coefficients of ``f`` at ``g = 0``."""
        if self.kind == "bose":
            return -1, [1.0, -0.5, 1.0 / 12.0, 0.0, -1.0 / 720.0][:order]
        if self.kind == "fermi":
            return 0, [0.5, -0.25, 0.0, 1.0 / 48.0, 0.0][:order]
        if self.kind == "trace":
            eig = np.asarray(self.spectrum)
            return 0, [float(np.sum((-eig) ** k)) / math.factorial(k) for k in range(order)]
        c = self.scale
        return 0, [(-c) ** k / math.factorial(k) for k in range(order)]

    def poles(self, radius: float) -> list[complex]:
        """Kernel poles with modulus at most ``radius``."""
        if self.kind == "bose":
            step, offset = 2.0 * math.pi, 0.0
        elif self.kind == "fermi":
            step, offset = 2.0 * math.pi, math.pi
        else:
            return []
        out = []
        k = 0
        while offset + k * step <= radius:
            y = offset + k * step
            out.append(1j * y)
            if y != 0.0:
                out.append(-1j * y)
            k += 1
        return out

    def describe(self) -> str:
        if self.kind == "scaled_exp":
            return f"scaled_exp({self.scale:g})"
        if self.kind == "trace":
            return f"trace({len(self.spectrum)} eigenvalues)"
        return self.kind


@dataclass(frozen=True)
class ContourSpec:
    """Hankel contour geometry.

    ``None`` fields are chosen from ``alpha`` and the kernel by
    :meth:`resolved`: ``inner_radius`` becomes ``min(1, 1/max_rate)``,
    ``ray_angle`` comes from :func:`auto_ray_angle` and ``truncation`` keeps
    the discarded ray tail below double precision.
    """

    inner_radius: float | None = None
    truncation: float | None = None
    nodes_per_segment: int = 8192
    branch: BranchConvention = BranchConvention.SYMMETRIC
    ray_angle: float | None = None
    orientation: str = "counter-clockwise"

    def __post_init__(self):
        r, big_r, psi = self.inner_radius, self.truncation, self.ray_angle
        if r is not None and not r > 0:
            raise ConfigError("inner radius must be positive", r=r)
        if r is not None and big_r is not None and not r < big_r:
            raise ConfigError("inner radius must be below the ray truncation", r=r, R=big_r)
        if psi is not None and not abs(psi) < math.pi / 2:
            raise ConfigError("ray angle must lie strictly inside (-pi/2, pi/2)", ray_angle=psi)
        if self.nodes_per_segment < 3 * _GL_ORDER:
            raise ConfigError("node budget too small", nodes_per_segment=self.nodes_per_segment)
        if self.orientation != "counter-clockwise":
            raise ConfigError("only the counter-clockwise orientation is supported")

    def resolved(self, alpha=None, kernel: Kernel | None = None) -> "ContourSpec":
        alpha = complex(alpha) if alpha is not None else 0.0j
        rate = kernel.decay_rate if kernel is not None else 1.0
        max_rate = kernel.max_rate if kernel is not None else 1.0
        r = self.inner_radius if self.inner_radius is not None else min(1.0, 1.0 / max_rate)
        psi = self.ray_angle if self.ray_angle is not None else auto_ray_angle(alpha)
        big_r = self.truncation
        if big_r is None:
            big_r = max(_auto_truncation(alpha, rate, psi), 2.0 * r)
        return dataclasses.replace(self, inner_radius=r, truncation=big_r, ray_angle=psi)


def _auto_truncation(alpha: complex, rate: float, psi: float) -> float:
    sigma = max(alpha.real, 0.0)
    base = max(40.0, sigma * math.log(sigma + 2.0) + 40.0)
    # extra room for the e^{|t| (pi/2 - |psi|)} cancellation
    base += abs(alpha.imag) * (math.pi / 2 - abs(psi))
    return base / (rate * math.cos(psi))


def auto_ray_angle(alpha) -> float:
    """Ray direction that avoids edge/circle cancellation for ``alpha``.

    Stays on the positive real axis for ``|Im alpha| < 2`` and turns to
    within ``max(0.25, 3/|t|)`` of the imaginary axis beyond that.
    """
    t = complex(alpha).imag
    if abs(t) < 2.0:
        return 0.0
    gap = max(0.25, min(math.pi / 2, 3.0 / abs(t)))
    return math.copysign(math.pi / 2 - gap, t)


@dataclass(frozen=True)
class Segment:
    """One piece of the path, parametrised over ``[lo, hi]``.

    ``point(s)`` returns ``(g, angle, dlog)`` where ``angle`` is the assigned
    winding angle of ``g`` and ``dlog`` is ``d(log g)/ds`` including the
    traversal direction.
    """

    name: str
    lo: float
    hi: float
    point: Callable[[np.ndarray], tuple[np.ndarray, np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class HankelPath:
    spec: ContourSpec
    segments: tuple[Segment, ...]

    @property
    def start(self) -> complex:
        return self.spec.truncation * cmath.exp(1j * self.spec.ray_angle)

    @property
    def end(self) -> complex:
        return self.start

    @property
    def angle_range(self) -> tuple[float, float]:
        psi = self.spec.ray_angle
        return psi, psi + 2.0 * math.pi

    def distance_to(self, p: complex) -> float:
        """Euclidean distance from ``p`` to the path (rays plus circle)."""
        r, big_r, psi = self.spec.inner_radius, self.spec.truncation, self.spec.ray_angle
        q = p * cmath.exp(-1j * psi)
        if r <= q.real <= big_r:
            d_ray = abs(q.imag)
        else:
            d_ray = min(abs(q - r), abs(q - big_r))
        return min(d_ray, abs(abs(p) - r))

    def sample(self, n: int = 64):
        """Evenly spaced ``(g, angle)`` samples in traversal order."""
        gs, angles = [], []
        for seg in self.segments:
            s = np.linspace(seg.lo, seg.hi, n)
            if seg.name == "upper-ray":
                s = s[::-1]
            g, ang, _ = seg.point(s)
            gs.append(g)
            angles.append(ang)
        return np.concatenate(gs), np.concatenate(angles)


def build_hankel(spec: ContourSpec | None = None) -> HankelPath:
    """Materialise the Hankel path described by ``spec``."""
    spec = (spec or ContourSpec()).resolved()
    r, big_r, psi = spec.inner_radius, spec.truncation, spec.ray_angle
    if not r < big_r:
        raise ConfigError("inner radius must be below the ray truncation", r=r, R=big_r)
    direction = cmath.exp(1j * psi)
    length = math.log(big_r / r)

    def upper(u):
        g = r * np.exp(u) * direction
        return g, np.full(u.shape, psi), -np.ones(u.shape, dtype=complex)

    def circle(theta):
        return r * np.exp(1j * theta), theta, np.full(theta.shape, 1j)

    def lower(u):
        g = r * np.exp(u) * direction
        return g, np.full(u.shape, psi + 2.0 * math.pi), np.ones(u.shape, dtype=complex)

    segments = (
        Segment("upper-ray", 0.0, length, upper),
        Segment("circle", psi, psi + 2.0 * math.pi, circle),
        Segment("lower-ray", 0.0, length, lower),
    )
    return HankelPath(spec, segments)


@dataclass
class QuadratureResult:
    value: complex
    err_estimate: float
    nodes_used: int
    warnings: list[str] = field(default_factory=list)
    doubling_delta: float | None = None

    def scaled(self, w: complex) -> "QuadratureResult":
        return QuadratureResult(
            self.value * w,
            self.err_estimate * abs(w),
            self.nodes_used,
            list(self.warnings),
            None if self.doubling_delta is None else self.doubling_delta * abs(w),
        )


@dataclass
class _Panels:
    value: complex
    err: float
    l1: float
    nodes: int
    panels: list[tuple[float, float]]
    exhausted: bool


def _gl_on(lo: np.ndarray, hi: np.ndarray):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _GL_X[None, :]
    w = half[:, None] * _GL_W[None, :]
    return x, w


def _adaptive(func, lo: float, hi: float, rtol: float, budget: int, initial: int = 8) -> _Panels:
    """Adaptive bisection with paired Gauss-Legendre rules.

    Each panel is integrated once whole and once as two halves; the halves
    are kept and ``|halves - whole|`` is the panel's error estimate.  A
    panel's error is never reported below a round-off floor proportional to
    the absolute mass of the integrand on it.
    """
    edges = np.linspace(lo, hi, initial + 1)
    pending = list(zip(edges[:-1], edges[1:]))
    span = hi - lo
    done_val, done_err, done_l1 = [], [], []
    done_panels: list[tuple[float, float]] = []
    nodes = 0
    exhausted = False
    while pending:
        a = np.array([p[0] for p in pending])
        b = np.array([p[1] for p in pending])
        m = 0.5 * (a + b)
        xc, wc = _gl_on(a, b)
        xl, wl = _gl_on(a, m)
        xr, wr = _gl_on(m, b)
        f = func(np.concatenate([xc.ravel(), xl.ravel(), xr.ravel()]))
        k = a.size * _GL_ORDER
        fc = f[:k].reshape(a.size, _GL_ORDER)
        fl = f[k:2 * k].reshape(a.size, _GL_ORDER)
        fr = f[2 * k:].reshape(a.size, _GL_ORDER)
        nodes += 3 * k
        coarse = (wc * fc).sum(axis=1)
        fine = (wl * fl).sum(axis=1) + (wr * fr).sum(axis=1)
        l1 = (np.abs(wl * fl)).sum(axis=1) + (np.abs(wr * fr)).sum(axis=1)
        if not np.all(np.isfinite(fine)):
            raise AccuracyError("non-finite integrand encountered")
        diff = np.abs(fine - coarse)
        floor = _ROUNDOFF_FACTOR * EPS * l1
        total = sum(done_val) + fine.sum()
        total_l1 = sum(done_l1) + l1.sum()
        target = max(rtol * abs(total), _ROUNDOFF_FACTOR * EPS * total_l1, 1e-300)
        share = target * (b - a) / span
        ok = (diff <= share) | (diff <= floor)
        if nodes >= budget:
            ok[:] = True
            exhausted = True
        new_pending = []
        for i in range(a.size):
            if ok[i]:
                done_val.append(fine[i])
                done_err.append(max(diff[i], floor[i]))
                done_l1.append(l1[i])
                done_panels.append((a[i], b[i]))
            else:
                new_pending.append((a[i], m[i]))
                new_pending.append((m[i], b[i]))
        pending = new_pending
    order = np.argsort([p[0] for p in done_panels])
    value = complex(math.fsum(np.real(done_val)), math.fsum(np.imag(done_val)))
    return _Panels(
        value=value,
        err=float(math.fsum(done_err)),
        l1=float(math.fsum(done_l1)),
        nodes=nodes,
        panels=[done_panels[i] for i in order],
        exhausted=exhausted,
    )


def _refined_value(func, panels: list[tuple[float, float]]) -> complex:
    """Re-integrate with every accepted panel split in half (twice the nodes)."""
    a = np.array([p[0] for p in panels])
    b = np.array([p[1] for p in panels])
    m = 0.5 * (a + b)
    q = 0.5 * (a + m)
    s = 0.5 * (m + b)
    total = 0.0j
    for lo, hi in ((a, q), (q, m), (m, s), (s, b)):
        x, w = _gl_on(lo, hi)
        vals = (w * func(x.ravel()).reshape(x.shape)).sum(axis=1)
        total += complex(math.fsum(vals.real), math.fsum(vals.imag))
    return total


def _segment_integrand(seg: Segment, kernel: Kernel, alpha: complex, branch: BranchConvention):
    def f(s):
        g, angle, dlog = seg.point(s)
        logmod = np.log(np.abs(g))
        if branch is BranchConvention.SYMMETRIC:
            # (-g)**alpha with arg(-g) = angle - pi
            power = np.exp(alpha * (logmod + 1j * (angle - math.pi)))
        else:
            power = np.exp(alpha * (logmod + 1j * angle))
        return kernel(g) * power * dlog

    return f


def _check_target(rtol: float) -> float:
    if not 0 < rtol < 1:
        raise ConfigError("relative tolerance must lie in (0, 1)", rtol=rtol)
    return rtol


def integrate_contour(
    path: HankelPath,
    kernel: Kernel,
    alpha,
    *,
    rtol: float = 1e-12,
    check_doubling: bool = False,
) -> QuadratureResult:
    """Raw ``integral_C f(g) g**alpha dg/g`` along ``path`` (no normalization).

    With the default symmetric branch, a kernel whose real-axis transform is
    ``F(alpha)`` gives ``2i sin(pi*alpha) F(alpha)``.
    """
    alpha = complex(alpha)
    _check_target(rtol)
    spec = path.spec
    clearance = spec.inner_radius / 2
    for pole in kernel.poles(spec.truncation + spec.inner_radius):
        if pole != 0 and path.distance_to(pole) < clearance:
            raise DomainError(
                "kernel pole too close to the contour", pole=pole, clearance=clearance
            )
    warnings: list[str] = []
    total, err, l1, nodes = 0.0j, 0.0, 0.0, 0
    parts = []
    for seg in path.segments:
        f = _segment_integrand(seg, kernel, alpha, spec.branch)
        res = _adaptive(f, seg.lo, seg.hi, rtol, spec.nodes_per_segment)
        if res.exhausted:
            warnings.append(f"node-budget-exhausted:{seg.name}")
        parts.append((f, res))
        total += res.value
        err += res.err
        l1 += res.l1
        nodes += res.nodes
    # discarded ray tails: |integrand| at R over the decay rate in u
    tail = 0.0
    for seg in (path.segments[0], path.segments[2]):
        f = _segment_integrand(seg, kernel, alpha, spec.branch)
        end = abs(f(np.array([seg.hi]))[0])
        tail += end / max(kernel.decay_rate * spec.truncation * math.cos(spec.ray_angle), 1e-300)
    if tail > max(rtol * abs(total), err):
        warnings.append("truncation-tail")
    err += tail
    out = QuadratureResult(total, err, nodes, warnings)
    if check_doubling:
        refined = sum(_refined_value(f, res.panels) for f, res in parts)
        out.doubling_delta = abs(refined - total)
        _raise_if_unstable(out, rtol)
    return out


def _raise_if_unstable(res: QuadratureResult, rtol: float) -> None:
    target = max(rtol * abs(res.value), res.err_estimate)
    if res.doubling_delta is not None and res.doubling_delta > 10 * target:
        raise AccuracyError(
            "node doubling moved the result beyond ten times the error target",
            delta=res.doubling_delta,
            target=target,
        )


def integrate_real_axis(
    kernel: Kernel,
    alpha,
    R: float | None = None,
    *,
    ray_angle: float | None = None,
    rtol: float = 1e-12,
    check_doubling: bool = False,
) -> QuadratureResult:
    """Raw ``integral_0^inf f(g) g**alpha dg/g``.

    Every supported kernel is analytic and decaying in the open right
    half-plane, so the ray may be turned to ``g = rho * exp(i*ray_angle)``
    without changing the value; the default :func:`auto_ray_angle` removes
    the ``exp(pi |Im alpha| / 2)`` cancellation a real ray suffers.
    Integrated in ``u = log rho`` on ``[log g0, 0]`` and ``[0, log R]``; the
    piece below ``g0`` comes from the kernel's series at the origin.
    """
    alpha = complex(alpha)
    _check_target(rtol)
    if not alpha.real > kernel.min_real_alpha:
        raise DomainError(
            f"real-axis Mellin of {kernel.describe()} needs Re alpha > {kernel.min_real_alpha}",
            alpha=alpha,
        )
    psi = auto_ray_angle(alpha) if ray_angle is None else float(ray_angle)
    if not abs(psi) < math.pi / 2:
        raise ConfigError("ray angle must lie strictly inside (-pi/2, pi/2)", ray_angle=psi)
    if R is None:
        R = _auto_truncation(alpha, kernel.decay_rate, psi)
    if not R > 1:
        raise ConfigError("real-axis truncation must exceed 1", R=R)
    g0 = 1e-4 / max(1.0, kernel.max_rate)
    direction = cmath.exp(1j * psi)
    # g**alpha on the ray, with the angle psi carried explicitly
    rot = cmath.exp(1j * psi * alpha)

    def f(u):
        g = np.exp(u) * direction
        return kernel(g) * np.exp(alpha * u) * rot

    warnings: list[str] = []
    parts = []
    total, err, l1, nodes = 0.0j, 0.0, 0.0, 0
    for lo, hi in ((math.log(g0), 0.0), (0.0, math.log(R))):
        res = _adaptive(f, lo, hi, rtol, 1 << 15)
        if res.exhausted:
            warnings.append("node-budget-exhausted")
        parts.append(res)
        total += res.value
        err += res.err
        l1 += res.l1
        nodes += res.nodes
    power, coeffs = kernel.laurent()
    head = 0.0j
    log_g0 = complex(math.log(g0), psi)
    for k, c in enumerate(coeffs):
        e = power + k + alpha
        head += c * cmath.exp(e * log_g0) / e
    # first neglected series term bounds the head error
    head_err = abs(cmath.exp((power + len(coeffs) + alpha) * log_g0)) * kernel.max_rate ** len(coeffs)
    total += head
    tail = abs(f(np.array([math.log(R)]))[0]) / (kernel.decay_rate * R * math.cos(psi))
    err += head_err + tail
    out = QuadratureResult(total, err, nodes, warnings)
    if check_doubling:
        refined = sum(_refined_value(f, res.panels) for res in parts) + head
        out.doubling_delta = abs(refined - total)
        _raise_if_unstable(out, rtol)
    return out


def _near_positive_integer(alpha: complex) -> int | None:
    n = round(alpha.real)
    if n >= 1 and abs(alpha - n) <= NEAR_INTEGER_TOL:
        return n
    return None


def mellin(
    kernel: Kernel,
    alpha,
    norm: Normalization = Normalization.GAMMA,
    domain: Domain = Domain.REAL_AXIS,
    contour: ContourSpec | None = None,
    *,
    rtol: float = 1e-12,
    check_doubling: bool = False,
) -> QuadratureResult:
    """Normalised Mellin transform ``weight(alpha) * raw integral``.

    On the Hankel domain the Hankel normalizations have removable poles at
    positive integers.  Within ``NEAR_INTEGER_TOL`` of one the weighted
    transform is evaluated as its mean over a small circle around ``alpha``
    (after removing the ``alpha = 1`` pole a kernel with a ``1/g``
    singularity produces); the result carries a ``removable-singularity``
    warning.
    """
    alpha = complex(alpha)
    domain = Domain(domain)
    warnings = []
    if norm.pole_warning(alpha):
        warnings.append("near-pole-normalization")
    if domain is Domain.REAL_AXIS:
        raw = integrate_real_axis(kernel, alpha, rtol=rtol, check_doubling=check_doubling)
        out = raw.scaled(norm.weight(alpha))
        out.warnings = warnings + out.warnings
        return out

    base = contour or ContourSpec()
    n = _near_positive_integer(alpha) if norm.is_hankel else None
    if n is None:
        spec = base.resolved(alpha, kernel)
        raw = integrate_contour(
            build_hankel(spec), kernel, alpha, rtol=rtol, check_doubling=check_doubling
        )
        out = raw.scaled(norm.weight(alpha))
        out.warnings = warnings + out.warnings
        return out

    power, coeffs = kernel.laurent(1)
    residue = coeffs[0] if power == -1 else 0.0
    if n == 1 and residue and abs(alpha - 1) <= 1e-12:
        raise PoleError("transform has a pole at alpha = 1", alpha=alpha)
    acc, err, nodes = 0.0j, 0.0, 0
    delta = 0.0 if check_doubling else None
    inner = []
    for k in range(_AVERAGE_POINTS):
        a = alpha + _AVERAGE_RADIUS * cmath.exp(2j * math.pi * (k + 0.5) / _AVERAGE_POINTS)
        res = mellin(kernel, a, norm, domain, base, rtol=rtol, check_doubling=check_doubling)
        pole = residue / (a - 1) if residue else 0.0
        acc += res.value - pole
        err += res.err_estimate
        nodes += res.nodes_used
        if delta is not None:
            delta += res.doubling_delta or 0.0
        inner.extend(w for w in res.warnings if w not in inner)
    value = acc / _AVERAGE_POINTS
    if residue:
        value += residue / (alpha - 1)
    warnings.append("removable-singularity")
    out = QuadratureResult(
        value,
        err / _AVERAGE_POINTS,
        nodes,
        warnings + inner,
        None if delta is None else delta / _AVERAGE_POINTS,
    )
    return out
