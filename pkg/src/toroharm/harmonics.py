"""Interior toroidal harmonics, planar harmonic families, and the exact
rational derivative tables for the Cartesian partials.

The interior toroidal harmonics are

    I_{n,m}^{nu,mu} = sqrt(cosh(eta) - cos(theta))
                      * Q_{n-1/2}^m(cosh(eta))
                      * trig_nu(n theta) * trig_mu(m phi)

with ``trig_+ = cos`` and ``trig_- = sin``.  The index combinations
``(n, nu) = (0, -)`` and ``(m, mu) = (0, -)`` are identically zero and are
rejected at construction.

Each Cartesian partial of an ``I`` is again a finite rational combination
of ``I``'s.  The tables below give those combinations exactly; every
coefficient has been arbitrated against high-order finite differences, so
they can serve as ground truth for the rest of the package.  For
``d/dx0`` the nonzero coefficients at fixed ``(n, m)`` (target ``nu``
flipped, ``mu`` kept) are ``nu * kappa(k, m, n)`` with

    kappa(1, m, 0) = m - 1/2                       (n = 0 row)
    kappa(n-1, m, n) = -(2(n+m) - 1)/4
    kappa(n,   m, n) = n
    kappa(n+1, m, n) = -(2(n-m) + 1)/4             (n >= 1)

``d/dx1`` keeps both signs and moves ``m`` by one; ``d/dx2`` is the same
table with the target ``mu`` flipped and a ``mu``-dependent sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

import numpy as np

from .geometry import CartesianPoint, ToroidalPoint
from .special_functions import gamma_half, q_half_grid

Sign = int  # +1 or -1

_SIGN_CHARS = {"+": 1, "-": -1, "+1": 1, "-1": -1, "1": 1}


def parse_sign(s) -> Sign:
    """Normalize ``'+'``/``'-'`` (or +-1) to an integer sign."""
    if isinstance(s, str):
        if s in _SIGN_CHARS:
            return _SIGN_CHARS[s]
        raise ValueError(f"not a sign: {s!r}")
    if s in (1, -1):
        return int(s)
    raise ValueError(f"not a sign: {s!r}")


def sign_char(s: Sign) -> str:
    return "+" if s > 0 else "-"


@dataclass(frozen=True)
class HarmonicIndex:
    """Label ``(n, m, nu, mu)`` of an interior toroidal harmonic.

    ``nu`` and ``mu`` are +-1 and select cosine (+) or sine (-) in the
    ``theta`` and ``phi`` factors.  Zero-function combinations are
    rejected.
    """

    n: int
    m: int
    nu: Sign
    mu: Sign

    def __post_init__(self) -> None:
        if self.n < 0 or self.m < 0:
            raise ValueError(f"indices must be nonnegative, got n={self.n}, m={self.m}")
        if self.nu not in (1, -1) or self.mu not in (1, -1):
            raise ValueError("nu and mu must be +1 or -1")
        if self.n == 0 and self.nu == -1:
            raise ValueError("(n, nu) = (0, -) labels the zero function")
        if self.m == 0 and self.mu == -1:
            raise ValueError("(m, mu) = (0, -) labels the zero function")

    def __str__(self) -> str:
        return f"I[{self.n},{self.m}]^({sign_char(self.nu)},{sign_char(self.mu)})"


def index_is_valid(n: int, m: int, nu: Sign, mu: Sign) -> bool:
    """True when ``(n, m, nu, mu)`` labels a nonzero harmonic."""
    return (
        n >= 0 and m >= 0
        and not (n == 0 and nu == -1)
        and not (m == 0 and mu == -1)
    )


@dataclass(frozen=True)
class DerivativeTerm:
    """One term ``coefficient * I_index`` of an expanded partial derivative."""

    index: HarmonicIndex
    coefficient: Fraction

    def __post_init__(self) -> None:
        if self.coefficient == 0:
            raise ValueError("zero coefficients are dropped, not stored")


def _trig(k: int, sign: Sign, angle):
    return np.cos(k * np.asarray(angle)) if sign > 0 else np.sin(k * np.asarray(angle))


def eval_I_batch(idx: HarmonicIndex, eta, theta, phi, q=None) -> np.ndarray:
    """Vectorized harmonic evaluation on coordinate arrays.

    ``q``, if given, is a precomputed ``q_half_grid`` table over the same
    flattened ``eta`` points with extents covering ``(idx.n, idx.m)``.
    """
    eta = np.asarray(eta, dtype=float)
    t = np.cosh(eta)
    if q is None:
        q = q_half_grid(idx.n, idx.m, t.ravel())
    radial = q[idx.n, idx.m].reshape(eta.shape)
    return (
        np.sqrt(t - np.cos(theta))
        * radial
        * _trig(idx.n, idx.nu, theta)
        * _trig(idx.m, idx.mu, phi)
    )


def eval_I(idx: HarmonicIndex, p: ToroidalPoint) -> float:
    """Value of the interior toroidal harmonic at a toroidal point."""
    return float(eval_I_batch(idx, np.array([p.eta]), p.theta, p.phi)[0])


def eval_J(m: int, sign: Sign, x: CartesianPoint) -> float:
    """Planar harmonic ``J_m^+ = Re (x1 + i x2)^m`` or ``J_m^- = Im``.

    Defined for every integer ``m``; negative powers need ``(x1, x2)``
    off the axis.
    """
    sign = parse_sign(sign)
    z = complex(x.x1, x.x2)
    if m < 0 and z == 0:
        raise ValueError("negative powers are singular on the x0-axis")
    w = z**m
    return w.real if sign > 0 else w.imag


def eval_Jhat(x: CartesianPoint) -> float:
    """The logarithmic planar harmonic ``-log |x1 + i x2|``."""
    r = x.rho()
    if r == 0:
        raise ValueError("logarithm is singular on the x0-axis")
    return -math.log(r)


# ---------------------------------------------------------------------------
# derivative tables
# ---------------------------------------------------------------------------

def kappa(k: int, m: int, n: int) -> Fraction:
    """Exact coefficient of the degree-``k`` harmonic in ``d/dx0`` of the
    degree-``n`` one (at fixed order ``m``, before the ``nu`` prefactor)."""
    if n == 0:
        return Fraction(2 * m - 1, 2) if k == 1 else Fraction(0)
    if k == n - 1:
        return Fraction(-(2 * (n + m) - 1), 4)
    if k == n:
        return Fraction(n)
    if k == n + 1:
        return Fraction(-(2 * (n - m) + 1), 4)
    return Fraction(0)


def _filtered_terms(raw: Dict[Tuple[int, int, Sign, Sign], Fraction]) -> List[DerivativeTerm]:
    out = []
    for (k, mm, nu, mu), c in sorted(raw.items()):
        if c != 0 and index_is_valid(k, mm, nu, mu):
            out.append(DerivativeTerm(HarmonicIndex(k, mm, nu, mu), c))
    return out


def d0_terms(idx: HarmonicIndex) -> List[DerivativeTerm]:
    """Expansion of ``d/dx0`` applied to ``I_idx``.

    The result lives at the same ``(m, mu)`` with ``nu`` flipped and the
    degree shifted by at most one; the overall ``nu`` prefactor (absent in
    compressed tabulations, which state only the ``nu = +`` case) is
    included.
    """
    n, m = idx.n, idx.m
    raw: Dict[Tuple[int, int, Sign, Sign], Fraction] = {}
    for k in (max(n - 1, 0), n, n + 1):
        c = idx.nu * kappa(k, m, n)
        if c != 0:
            raw[(k, m, -idx.nu, idx.mu)] = raw.get((k, m, -idx.nu, idx.mu), Fraction(0)) + c
    return _filtered_terms(raw)


def _d1_raw(n: int, m: int) -> Dict[Tuple[int, int], Fraction]:
    """Coefficients of ``d/dx1`` at fixed signs: maps (degree, order) -> c.

    The ``n = 0`` and ``m = 0`` rows double the degree-raising and
    order-raising entries respectively (the sine component that would
    otherwise cancel is identically zero there).
    """
    out: Dict[Tuple[int, int], Fraction] = {}
    dn = 2 if n == 0 else 1
    dm = 2 if m == 0 else 1
    if m >= 1:
        if n >= 1:
            out[(n - 1, m - 1)] = Fraction(-(2 * n + 2 * m - 3) * (2 * n + 2 * m - 1), 16)
        out[(n, m - 1)] = Fraction((2 * n + 2 * m - 1) * (2 * n - 2 * m + 1), 8)
        out[(n + 1, m - 1)] = dn * Fraction(-(2 * n - 2 * m + 1) * (2 * n - 2 * m + 3), 16)
    if n >= 1:
        out[(n - 1, m + 1)] = dm * Fraction(-1, 4)
    out[(n, m + 1)] = dm * Fraction(1, 2)
    out[(n + 1, m + 1)] = dn * dm * Fraction(-1, 4)
    return out


def d1_terms(idx: HarmonicIndex) -> List[DerivativeTerm]:
    """Expansion of ``d/dx1``: both signs are preserved, the order moves
    by one."""
    raw = {
        (k, mm, idx.nu, idx.mu): c
        for (k, mm), c in _d1_raw(idx.n, idx.m).items()
    }
    return _filtered_terms(raw)


def d2_terms(idx: HarmonicIndex) -> List[DerivativeTerm]:
    """Expansion of ``d/dx2``: the ``d/dx1`` table with ``mu`` flipped, a
    ``mu`` prefactor, and a sign flip on the order-lowering terms."""
    n, m = idx.n, idx.m
    raw = {}
    for (k, mm), c in _d1_raw(n, m).items():
        flip = -1 if mm == m - 1 else 1
        raw[(k, mm, idx.nu, -idx.mu)] = idx.mu * flip * c
    return _filtered_terms(raw)


def eval_terms(terms: List[DerivativeTerm], p: ToroidalPoint) -> float:
    """Evaluate a finite combination of harmonics at a point."""
    return float(sum(float(t.coefficient) * eval_I(t.index, p) for t in terms))


# ---------------------------------------------------------------------------
# expansion coefficients of the planar families
# ---------------------------------------------------------------------------

def _gamma_half_signed(k: int) -> float:
    """``Gamma(k + 1/2)`` for any integer ``k`` (never a pole)."""
    if k >= 0:
        return gamma_half(k)
    val = math.sqrt(math.pi)
    for i in range(k, 0):
        val /= i + 0.5
    return val


def j_coefficient(n: int, m: int, sign: Sign = 1) -> float:
    """Coefficient of ``I_{n,|m|}^{+,sign}`` in the toroidal-harmonic
    expansion of ``J_m^sign``.

    The degree-dependent factor is ``2 - delta_{0,n}`` (1 at ``n = 0``,
    2 afterwards), the placement forced by the Fourier quadrature oracle;
    see :func:`j_coefficient_quadrature`.  For ``m < 0`` the two sign
    families differ by an overall sign and a ratio of half-integer Gamma
    values.
    """
    sign = parse_sign(sign)
    if n < 0:
        raise ValueError("n must be nonnegative")
    neumann = 1.0 if n == 0 else 2.0
    base = neumann * (-1) ** abs(m) * math.sqrt(2.0 / math.pi) / _gamma_half_signed(m)
    if m >= 0:
        return base
    ratio = math.prod((l + 0.5) for l in range(n + m, n - m)) or 1.0
    return sign * base / ratio


def fourier_cosine_coefficients(m: int, eta: float, N: int, n_nodes: int = 0) -> np.ndarray:
    """Theta-Fourier cosine coefficients ``a_0..a_N`` of
    ``(cosh(eta) - cos(theta))^(-(m + 1/2))`` by periodic-trapezoid
    quadrature (spectrally accurate)."""
    if eta <= 0:
        raise ValueError("eta must be positive")
    npts = n_nodes or max(512, 8 * (N + 1))
    theta = 2.0 * np.pi * np.arange(npts) / npts
    f = (np.cosh(eta) - np.cos(theta)) ** (-(m + 0.5))
    # real FFT gives sum f cos(n theta); normalize to cosine-series form
    spectrum = np.fft.rfft(f).real / npts
    a = 2.0 * spectrum[: N + 1]
    a[0] *= 0.5
    return a


def j_coefficient_quadrature(n: int, m: int, sign: Sign, eta: float) -> float:
    """Slow oracle for :func:`j_coefficient` via Fourier quadrature.

    Divides the quadrature cosine coefficient by the radial factor, using
    ``(x1 + i x2)^m = rho^m e^(i m phi)`` and
    ``rho = sinh(eta) / (cosh(eta) - cos(theta))``.
    """
    sign = parse_sign(sign)
    a = fourier_cosine_coefficients(m, eta, n)[n]
    q = q_half_grid(n, abs(m), np.array([math.cosh(eta)]))[n, abs(m), 0]
    value = a * math.sinh(eta) ** m / q
    return value if m >= 0 else sign * value


def fourier_power_check(m: int, eta: float, N: int) -> float:
    """Maximum deviation, over ``n <= N``, between the quadrature Fourier
    coefficients of ``(cosh(eta) - cos(theta))^(-(m+1/2))`` and the
    closed-form series

    ``sqrt(2/pi)/Gamma(m+1/2) * (2 - delta_{0,n})
      * (-1)^m Q_{n-1/2}^m(cosh(eta)) / sinh(eta)^m``.

    The ``(-1)^m / sinh(eta)^m`` factor undoes the order-raising prefactor
    baked into this package's Q normalization; it is invisible at ``m = 0``
    and forced by the quadrature oracle for ``m >= 1``.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    a = fourier_cosine_coefficients(m, eta, N)
    q = q_half_grid(N, m, np.array([math.cosh(eta)]))[:, m, 0]
    neumann = np.where(np.arange(N + 1) == 0, 1.0, 2.0)
    predicted = (
        math.sqrt(2.0 / math.pi) / gamma_half(m) * neumann
        * (-1) ** m * q / math.sinh(eta) ** m
    )
    return float(np.max(np.abs(a - predicted)))
