"""Both sides of the exp-trace / determinant relation at finite truncation.

The left side is ``exp(-Mellin[trace kernel](alpha))``; the right side is
``exp(i*phi) * det(exp(beta))**alpha * N(alpha)`` with ``phi = +-2*n*pi*alpha``.
Determinants are handled in log space throughout because
``det exp(beta) = exp(sum of eigenvalues)`` overflows for modest spectra.
Nothing here asserts the two sides agree; :func:`theorem_residual` only
measures the gap.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg

from .contour import ContourSpec, Domain, Kernel, Normalization, QuadratureResult, mellin
from .errors import ConfigError
from .special import log_gamma

__all__ = [
    "Spectrum",
    "PhaseBranch",
    "MatrixOperand",
    "ExpTraceDetResult",
    "RhsResult",
    "TheoremResidual",
    "HCRelation",
    "exp_tr_det_check",
    "random_matrix",
    "spectral_zeta",
    "euler_maclaurin_tail",
    "log_det_exp",
    "theorem_lhs",
    "theorem_rhs",
    "normalization_constant",
    "scalar_det_side",
    "theorem_residual",
    "hc_relation_check",
    "involution_chain_residual",
]


@dataclass(frozen=True)
class Spectrum:
    """Finite positive spectrum: an explicit list or ``1..N``."""

    eigenvalues: tuple[float, ...]
    natural: int | None = None

    @classmethod
    def explicit(cls, values: Sequence[float]) -> "Spectrum":
        vals = tuple(sorted(float(v) for v in values))
        if not vals:
            raise ConfigError("spectrum must not be empty")
        if vals[0] <= 0:
            raise ConfigError("spectrum must be positive", smallest=vals[0])
        return cls(vals)

    @classmethod
    def natural_numbers(cls, n: int) -> "Spectrum":
        if n < 1:
            raise ConfigError("NATURAL(N) needs N >= 1", N=n)
        return cls(tuple(float(j) for j in range(1, n + 1)), natural=n)

    @classmethod
    def parse(cls, text: str) -> "Spectrum":
        """``"natural:N"`` or a comma separated list of eigenvalues."""
        text = text.strip()
        if text.startswith("natural:"):
            return cls.natural_numbers(int(text.split(":", 1)[1]))
        try:
            return cls.explicit([float(v) for v in text.split(",")])
        except ValueError as exc:
            raise ConfigError(f"cannot parse spectrum {text!r}") from exc

    def __len__(self) -> int:
        return len(self.eigenvalues)

    def describe(self) -> str:
        if self.natural is not None:
            return f"natural:{self.natural}"
        return ",".join(f"{v:g}" for v in self.eigenvalues)

    def kernel(self) -> Kernel:
        return Kernel.trace(self.eigenvalues)


@dataclass(frozen=True)
class PhaseBranch:
    n: int = 0
    sign: int = 1

    def __post_init__(self):
        if self.n < 0:
            raise ConfigError("phase branch index must be non-negative", n=self.n)
        if self.sign not in (1, -1):
            raise ConfigError("phase sign must be +1 or -1", sign=self.sign)

    def phase(self, alpha) -> complex:
        """``phi(alpha) = sign * 2 * n * pi * alpha``."""
        return self.sign * 2.0 * self.n * math.pi * complex(alpha)


@dataclass
class MatrixOperand:
    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        m = np.asarray(self.entries, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ConfigError("matrix must be square", shape=m.shape)
        if m.shape[0] > 64:
            raise ConfigError("matrix dimension above 64", d=m.shape[0])
        if self.hermitian and np.max(np.abs(m - m.conj().T)) >= 1e-12:
            raise ConfigError("matrix flagged hermitian is not")
        self.entries = m

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


@dataclass
class ExpTraceDetResult:
    lhs: complex
    rhs: complex
    rel_residual: float
    log_space: bool = False


def exp_tr_det_check(m: MatrixOperand, *, log_space: bool = False) -> ExpTraceDetResult:
    """Compare ``exp(tr M)`` with ``det(expm(M))``.

    With ``log_space=True`` the two logarithms are compared instead
    (``tr M`` against ``log det expm(M)``, residual relative to ``|tr M|``
    or 1), which never overflows.
    """
    a = m.entries
    d = m.dimension
    tr = complex(np.trace(a))
    if not log_space and abs(tr.real) >= 300:
        raise OverflowError("exp(tr M) out of range; retry with log_space=True")
    if m.hermitian:
        log_rhs = complex(np.sum(np.linalg.eigvalsh(a)))
    else:
        # shift by the mean eigenvalue so expm stays in range
        shift = tr / d
        e = scipy.linalg.expm(a - shift * np.eye(d))
        sign, logabs = np.linalg.slogdet(e)
        log_rhs = complex(d * shift + logabs + cmath.log(sign))
    if log_space:
        diff = log_rhs - tr
        diff = complex(diff.real, (diff.imag + math.pi) % (2 * math.pi) - math.pi)
        return ExpTraceDetResult(tr, log_rhs, abs(diff) / max(abs(tr), 1.0), True)
    lhs = cmath.exp(tr)
    if m.hermitian:
        rhs = cmath.exp(log_rhs)
    else:
        rhs = complex(np.linalg.det(scipy.linalg.expm(a)))
    return ExpTraceDetResult(lhs, rhs, abs(lhs - rhs) / abs(lhs))


def random_matrix(kind: str, d: int, seed: int, radius: float = 3.0) -> MatrixOperand:
    """Seeded test operand: ``hermitian``, ``triangular``, ``nilpotent`` or ``general``.

    Hermitian, triangular and general draws are rescaled to spectral
    radius ``radius * 0.9``; nilpotent ones have spectral radius zero.
    """
    rng = np.random.default_rng(np.uint64(seed))
    z = rng.uniform(-1, 1, (d, d)) + 1j * rng.uniform(-1, 1, (d, d))
    if kind == "nilpotent":
        return MatrixOperand(np.triu(z, 1))
    if kind == "hermitian":
        m = (z + z.conj().T) / 2
    elif kind == "triangular":
        m = np.triu(z)
    elif kind == "general":
        m = z
    else:
        raise ConfigError(f"unknown matrix kind {kind!r}")
    rho = np.max(np.abs(np.linalg.eigvals(m)))
    return MatrixOperand(m * (0.9 * radius / rho), hermitian=kind == "hermitian")


def spectral_zeta(spectrum: Spectrum, alpha) -> complex:
    """Finite Dirichlet sum ``sum_j eps_j**(-alpha)`` with principal powers."""
    alpha = complex(alpha)
    eig = np.asarray(spectrum.eigenvalues)
    terms = np.exp(-alpha * np.log(eig))
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def euler_maclaurin_tail(n: int, alpha) -> complex:
    """``sum_{j > n} j**(-alpha)`` for ``Re alpha > 1`` by Euler-Maclaurin."""
    s = complex(alpha)
    if not s.real > 1:
        raise ConfigError("tail estimate needs Re alpha > 1", alpha=s)
    nn = float(n)
    p = lambda e: cmath.exp(-e * math.log(nn))  # noqa: E731
    tail = p(s - 1) / (s - 1) - 0.5 * p(s)
    # Bernoulli corrections B2/2!, B4/4!, B6/6!
    rising = s
    tail += rising * p(s + 1) / 12.0
    rising *= (s + 1) * (s + 2)
    tail -= rising * p(s + 3) / 720.0
    rising *= (s + 3) * (s + 4)
    tail += rising * p(s + 5) / 30240.0
    return tail


def log_det_exp(spectrum: Spectrum) -> float:
    """``log det exp(beta) = sum of eigenvalues`` (exact for NATURAL)."""
    if spectrum.natural is not None:
        n = spectrum.natural
        return float(n * (n + 1) // 2)
    return math.fsum(spectrum.eigenvalues)


def theorem_lhs(
    spectrum: Spectrum,
    alpha,
    norm: Normalization = Normalization.GAMMA,
    domain: Domain = Domain.REAL_AXIS,
    contour: ContourSpec | None = None,
) -> complex:
    """``exp(-Mellin[sum_j exp(-eps_j g)](alpha))``."""
    res = mellin(spectrum.kernel(), alpha, norm, domain, contour)
    return cmath.exp(-res.value)


def normalization_constant(alpha, contour: ContourSpec | None = None) -> QuadratureResult:
    """``N(alpha)``: Hankel-normalised contour Mellin transform of ``exp(-g)``.

    Equals 1 for ``Re alpha > 0`` on the symmetric branch.
    """
    return mellin(Kernel.exp(), alpha, Normalization.HANKEL_GAMMA, Domain.HANKEL, contour)


@dataclass
class RhsResult:
    log_value: complex
    phase_applied: complex
    det_log: float
    n_alpha: complex

    @property
    def value(self) -> complex:
        return cmath.exp(self.log_value)


def theorem_rhs(
    spectrum: Spectrum,
    alpha,
    phase: PhaseBranch = PhaseBranch(),
    norm: Normalization = Normalization.HANKEL_GAMMA,
    domain: Domain = Domain.HANKEL,
    contour: ContourSpec | None = None,
) -> RhsResult:
    """``log rhs = i*phi + alpha * log det exp(beta) + log N(alpha)``."""
    alpha = complex(alpha)
    phi = phase.phase(alpha)
    det_log = log_det_exp(spectrum)
    n_alpha = mellin(Kernel.exp(), alpha, norm, domain, contour).value
    log_value = 1j * phi + alpha * det_log + cmath.log(n_alpha)
    return RhsResult(log_value, cmath.exp(1j * phi), det_log, n_alpha)


def scalar_det_side(c: float, alpha) -> complex:
    """Gamma-normalised real-axis Mellin transform of ``exp(-exp(-c) g)``.

    By substitution this is ``exp(c * alpha)``; computed here by quadrature.
    """
    if not c < 300:
        raise ConfigError("scalar det side needs c < 300", c=c)
    kernel = Kernel.scaled_exp(math.exp(-c))
    return mellin(kernel, alpha, Normalization.GAMMA, Domain.REAL_AXIS).value


@dataclass
class TheoremResidual:
    log_lhs: complex
    log_rhs: complex
    log_gap: float
    phase_gap: float


def theorem_residual(
    spectrum: Spectrum,
    alpha,
    phase: PhaseBranch = PhaseBranch(),
    norm: Normalization = Normalization.HANKEL_GAMMA,
    domain: Domain = Domain.HANKEL,
    contour: ContourSpec | None = None,
) -> TheoremResidual:
    """Log-magnitude and phase gap between the two sides; never asserts equality."""
    log_lhs = -mellin(spectrum.kernel(), alpha, norm, domain, contour).value
    rhs = theorem_rhs(spectrum, alpha, phase, norm, domain, contour)
    gap = log_lhs - rhs.log_value
    phase_gap = (gap.imag + math.pi) % (2 * math.pi) - math.pi
    return TheoremResidual(log_lhs, rhs.log_value, gap.real, phase_gap)


def involution_chain_residual(alpha0, det_log: float, phase: PhaseBranch) -> float:
    """``|exp(+-4 n pi i Re a) D**(2 Re a) - D|`` with ``D = exp(det_log)``."""
    sigma = complex(alpha0).real
    angle = phase.sign * 4.0 * phase.n * math.pi * sigma
    scale = math.exp(det_log)
    return scale * abs(cmath.exp(1j * angle + (2 * sigma - 1) * det_log) - 1.0)


@dataclass
class HCRelation:
    alpha0: complex
    gamma_factor: complex
    ratio: complex
    holds_at_half: bool
    branch_ratios: dict[tuple[int, int], complex] = field(default_factory=dict)


def hc_relation_check(alpha0, spectrum: Spectrum, *, tol: float = 1e-9) -> HCRelation:
    """Evaluate the Haar-normalised (H_C) form of the involution relation.

    ``gamma_factor = Gamma(conj a) Gamma(1 - conj a) / |Gamma(a)|**2``; the
    relation compares ``det exp(beta)`` with
    ``exp(+-4 n pi i Re a) * gamma_factor * det exp(beta)**(2 Re a)``.
    ``ratio`` is right over left for ``n = 0``; the relation is reported as
    holding when every branch ``n in {0, 1}``, both signs, gives a ratio
    within ``tol`` of 1.
    """
    a = complex(alpha0)
    ac = a.conjugate()
    log_gf = log_gamma(ac) + log_gamma(1.0 - ac) - 2.0 * log_gamma(a).real
    gf = cmath.exp(log_gf)
    det_log = log_det_exp(spectrum)
    ratios = {}
    for n in (0, 1):
        for sign in (1, -1):
            log_ratio = 1j * sign * 4.0 * n * math.pi * a.real + log_gf + (2 * a.real - 1) * det_log
            ratios[(n, sign)] = cmath.exp(log_ratio)
    holds = all(abs(r - 1.0) < tol for r in ratios.values())
    return HCRelation(a, gf, ratios[(0, 1)], holds, ratios)

