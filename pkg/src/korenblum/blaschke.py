"""Finite Blaschke products and their truncated Taylor expansions.

Each factor (z - a)/(1 - conj(a) z) expands as -a + (1 - |a|^2) sum_{k>=1} conj(a)^(k-1) z^k.
The tail bound comes from Cauchy's estimate on a circle |z| = R with
1 < R < 1/max|a_j|, where the product is analytic:

    |b_k| <= M(R) R^-k,   M(R) = prod_j (R + |a_j|) / (1 - |a_j| R),

so the Bergman norm of sum_{k>N} b_k z^k is at most
M(R) R^-(N+1) / sqrt((N + 2)(1 - R^-2)).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bergman import Poly, TruncatedSeries, series_norm
from .errors import DomainError, ZeroTooCloseToBoundary

MAX_ZERO_MODULUS = 0.95
MIN_ORDER = 16
MAX_ORDER = 1 << 15


@dataclass(frozen=True)
class BlaschkeProduct:
    zeros: tuple = ()
    phase: float = 0.0

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        if any(abs(a) >= 1.0 - 1e-9 for a in zs):
            raise DomainError("Blaschke zeros must lie in |a| < 1 - 1e-9")
        object.__setattr__(self, "zeros", zs)

    @property
    def order(self):
        return len(self.zeros)

    def __call__(self, z):
        val = cmath.exp(1j * self.phase)
        for a in self.zeros:
            val *= (z - a) / (1.0 - a.conjugate() * z)
        return val

    def rational_parts(self):
        """(P, Q) with B = P/Q: P = e^{i phase} prod (z - a_j), Q = prod (1 - conj(a_j) z)."""
        num = Poly([cmath.exp(1j * self.phase)])
        den = Poly([1.0])
        for a in self.zeros:
            num = num * Poly([-a, 1.0])
            den = den * Poly([1.0, -a.conjugate()])
        return num, den


def tail_bound(zeros, N):
    """Upper bound on the Bergman norm of the Taylor tail beyond z^N."""
    rho = max((abs(a) for a in zeros), default=0.0)
    if not zeros:
        return 0.0
    if rho == 0.0:
        # B = e^{i phase} z^m has no tail once N >= m
        return 0.0 if N >= len(zeros) else math.inf
    best = math.inf
    r_max = 1.0 / rho
    for frac in np.linspace(0.02, 0.98, 49):
        R = 1.0 + frac * (r_max - 1.0)
        log_m = sum(math.log((R + abs(a)) / (1.0 - abs(a) * R)) for a in zeros)
        log_b = log_m - (N + 1) * math.log(R) - 0.5 * math.log((N + 2) * (1.0 - R ** -2))
        best = min(best, log_b)
    return math.exp(best) if best > -700 else 0.0


def _factor_series(a, N):
    s = np.empty(N + 1, dtype=complex)
    s[0] = -a
    if N >= 1:
        s[1:] = (1.0 - abs(a) ** 2) * a.conjugate() ** np.arange(N)
    return s


def blaschke_to_series(B, N=None, width=1e-8):
    """Taylor coefficients b_0..b_N of B with an analytic tail bound.

    With ``N=None`` the order doubles from 16 until the norm interval is
    narrower than ``width``.
    """
    if any(abs(a) > MAX_ZERO_MODULUS * (1 + 1e-12) for a in B.zeros):
        raise ZeroTooCloseToBoundary(
            f"zeros beyond |a| = {MAX_ZERO_MODULUS} need a larger truncation than allowed"
        )
    if N is None:
        N = MIN_ORDER
        while tail_bound(B.zeros, N) >= width and N < MAX_ORDER:
            N *= 2
    elif N < MIN_ORDER:
        raise DomainError(f"truncation order N={N} below {MIN_ORDER}")
    coeffs = np.zeros(N + 1, dtype=complex)
    coeffs[0] = cmath.exp(1j * B.phase)
    for a in B.zeros:
        coeffs = np.convolve(coeffs, _factor_series(a, N))[: N + 1]
    return TruncatedSeries(coeffs, N, tail_bound(B.zeros, N))


def blaschke_norm(B, width=1e-8):
    """Midpoint of the Bergman-norm interval of B."""
    lo, hi = series_norm(blaschke_to_series(B, width=width))
    return 0.5 * (lo + hi)
