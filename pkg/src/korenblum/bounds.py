"""Explicit bounds, example pairs and the dual-problem demonstration.

The example families are unit-norm monomial pairs whose admissibility on the
annulus c <= |z| < 1 reduces to one inequality at |z| = c. The dual demo
uses psi(z) = (z^n - r^n)/(1 - r^n z^n), a Blaschke product whose zeros are
the n-th roots of r^n, to show that sup |f/g| over |z| <= r can be made
arbitrarily small at fixed Bergman norm.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

from .bergman import Poly, bergman_norm_sq, series_norm
from .blaschke import MAX_ZERO_MODULUS, BlaschkeProduct, blaschke_to_series
from .errors import DomainError
from .quotient import QuotientPair, circle_max, objective_FB_violation


def _check_open(c, name="c"):
    if not 0.0 < c < 1.0:
        raise DomainError(f"{name}={c} outside (0, 1)")


def bound_FB(c):
    """Upper bound c^2 for F_B(c)."""
    _check_open(c)
    return c * c


def bound_F_lower(c):
    """Strict lower bound sqrt(1 - c^2) for F(c)."""
    _check_open(c)
    return math.sqrt(1.0 - c * c)


def within_FB_sandwich(value, c, slack_low=1e-3, slack_high=1e-6):
    """True when an F_B estimate lies in [max(0, c^2 - 1/2) - slack_low, c^2 + slack_high]."""
    lo = max(0.0, c * c - 0.5) - slack_low
    return lo <= value <= bound_FB(c) + slack_high


def above_F_lower(value, c):
    return value > bound_F_lower(c)


# -- example families ---------------------------------------------------------

def example_pair_monomial(n):
    """(1, sqrt(n) z^(n-1)) with admissibility threshold (1/n)^(1/(2(n-1)))."""
    if n < 2:
        raise DomainError(f"monomial family needs n >= 2, got {n}")
    g = Poly([0.0] * (n - 1) + [math.sqrt(n)])
    return (Poly([1.0]), g), (1.0 / n) ** (1.0 / (2 * (n - 1)))


def example_pair_shifted_monomial(n):
    """(sqrt(n-1) z^(n-2), sqrt(n) z^(n-1)) with threshold sqrt((n-1)/n)."""
    if n < 2:
        raise DomainError(f"shifted monomial family needs n >= 2, got {n}")
    f = Poly([0.0] * (n - 2) + [math.sqrt(n - 1)])
    g = Poly([0.0] * (n - 1) + [math.sqrt(n)])
    return (f, g), math.sqrt((n - 1) / n)


@dataclass(frozen=True)
class HaymanReport:
    a: float
    c: float
    violation: float
    norm_f_sq: float
    norm_g_sq: float

    @property
    def admissible(self):
        return self.violation == 0.0

    @property
    def norm_gap(self):
        return self.norm_f_sq - self.norm_g_sq


def hayman_counterexample(a, c):
    """f = a, g = z for 1/sqrt(2) < a <= c < 1: |f| <= |g| on the annulus yet ||f|| > ||g||."""
    _check_open(c)
    if a <= 1.0 / math.sqrt(2.0) or a > c:
        raise DomainError(f"need 1/sqrt(2) < a <= c, got a={a}, c={c}")
    f, g = Poly([a]), Poly([0.0, 1.0])
    return HaymanReport(
        a=a,
        c=c,
        violation=objective_FB_violation(f, g, c),
        norm_f_sq=bergman_norm_sq(f),
        norm_g_sq=bergman_norm_sq(g),
    )


# -- dual problem -----------------------------------------------------------

@dataclass(frozen=True)
class DualDemoRow:
    n: int
    r: float
    psi_norm_sq: float
    psi_max_sq_on_circle: float
    fn_max_sq: float
    # independent routes, kept for the record
    norm_sq_from_coeffs: float | None = None
    scan_max_sq: float | None = None
    argmax_angle: float | None = None

    def csv_row(self):
        return [self.n, self.r, self.psi_norm_sq, self.psi_max_sq_on_circle, self.fn_max_sq]


DUAL_HEADER = ("n", "r", "psi_norm_sq", "psi_max_sq", "fn_max_sq")


def psi_pair(n, r):
    """psi = (z^n - r^n) / (1 - r^n z^n) as a polynomial quotient."""
    rn = r ** n
    num = Poly([-rn] + [0.0] * (n - 1) + [1.0])
    den = Poly([1.0] + [0.0] * (n - 1) + [-rn])
    return QuotientPair(num, den)


def psi_tail_sum(n, r, tol=1e-16):
    """sum_{k>=1} r^(2n(k-1)) / (kn + 1), summed until the term drops below tol."""
    q = r ** (2 * n)
    total, term_q, k = 0.0, 1.0, 1
    while True:
        term = term_q / (k * n + 1)
        total += term
        if term < tol:
            return total
        term_q *= q
        k += 1


def psi_tail_sum_log(r):
    """The n = 1 sum in closed form: 1/2 + r^-4 (-log(1 - r^2) - r^2 - r^4/2).

    For n = 1 every index m = k + 1 >= 3 appears, so the shifted sum is the
    logarithm series minus its first two terms. For n > 1 only m = 1 (mod n)
    appear and no such closed form holds.
    """
    x = r * r
    rest = -math.log1p(-x) - x - 0.5 * x * x
    return 0.5 + rest / (x * x)


def psi_norm_sq(n, r):
    q = r ** (2 * n)
    return q + (1.0 - q) ** 2 * psi_tail_sum(n, r)


def psi_max_sq(n, r):
    """Closed-form max of |psi|^2 on |z| = r, attained where cos(n theta) = -1."""
    q = r ** (2 * n)
    return 4.0 * q / (1.0 + q) ** 2


def dual_demo(n, r, n_grid=4096, refine_iters=60):
    """One row of the dual demonstration.

    psi is analytic on |z| <= r (its poles sit on |z| = 1/r), so by the
    maximum principle its largest modulus on the closed disk is taken on
    |z| = r; f_n = psi/||psi|| therefore has max |f_n|^2 = max|psi|^2 / ||psi||^2.
    """
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    _check_open(r, "r")
    norm_sq = psi_norm_sq(n, r)
    max_sq = psi_max_sq(n, r)

    coeff_norm_sq = None
    if r <= MAX_ZERO_MODULUS:
        zeros = tuple(r * complex(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n))
                      for k in range(n))
        lo, hi = series_norm(blaschke_to_series(BlaschkeProduct(zeros), width=1e-12))
        coeff_norm_sq = (0.5 * (lo + hi)) ** 2

    scan = circle_max(psi_pair(n, r), r, n_grid, refine_iters)
    return DualDemoRow(
        n=n,
        r=r,
        psi_norm_sq=norm_sq,
        psi_max_sq_on_circle=max_sq,
        fn_max_sq=max_sq / norm_sq,
        norm_sq_from_coeffs=coeff_norm_sq,
        scan_max_sq=scan.value ** 2,
        argmax_angle=scan.arg_max_angle,
    )


def is_odd_multiple(theta, n, tol=1e-6):
    """Whether theta is an odd multiple of pi/n (mod 2 pi)."""
    k = theta * n / math.pi
    nearest = round(k)
    return abs(k - nearest) < tol * max(1.0, n) and nearest % 2 == 1


def rows_to_csv(rows, fmt=None):
    fmt = fmt or repr
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(DUAL_HEADER)
    for row in rows:
        w.writerow([row.n] + [fmt(v) for v in row.csv_row()[1:]])
    return buf.getvalue()
