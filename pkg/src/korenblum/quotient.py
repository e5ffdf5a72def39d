"""Suprema of |f/g| over circles and annuli, with pole bookkeeping.

For a quotient that is analytic on the closed annulus c <= |z| <= 1 the
maximum modulus sits on one of the two boundary circles, so an annulus
supremum reduces to two circle scans. Denominator zeros inside the annulus
are either cancelled by numerator zeros of at least the same order (and
divided out) or make the supremum infinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .bergman import Poly
from .errors import DomainError, PoleOnCircle, UncancelledPole, ZeroDenominator, ZeroPolynomial

TAU_BOUNDARY = 1e-9
TAU_CLUSTER = 1e-7
# relative size below which a Taylor coefficient at a root counts as zero
TAU_VANISH = 1e-8
MERGE_RADIUS = 1e-3
# |f| - |g| at or below this is rounding noise (pairs live near the unit sphere)
TAU_VIOLATION = 1e-14

DEFAULT_GRID = 1024
DEFAULT_REFINE = 60


@dataclass(frozen=True)
class QuotientPair:
    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")

    def __call__(self, z):
        return self.num(z) / self.den(z)


@dataclass(frozen=True)
class PoleReport:
    c: float
    uncancelled_poles: tuple = ()
    cancelled_zeros: tuple = ()

    @property
    def analytic_in_annulus(self):
        return not self.uncancelled_poles

    @property
    def total_deficit(self):
        return sum(m for _, m in self.uncancelled_poles)


@dataclass(frozen=True)
class CircleMaxResult:
    radius: float
    value: float
    arg_max_angle: float
    samples_used: int
    pole_report: PoleReport | None = field(default=None, compare=False)

    @property
    def infinite(self):
        return math.isinf(self.value)

    @property
    def arg_max(self):
        return self.radius * complex(math.cos(self.arg_max_angle), math.sin(self.arg_max_angle))


# -- roots -----------------------------------------------------------------

def _taylor_shift(a, c):
    """Coefficients t_j = p^(j)(c)/j! and matching magnitude scales."""
    t = np.array(a, dtype=complex)
    s = np.abs(t)
    n = t.size
    ac = abs(c)
    for j in range(n - 1):
        for k in range(n - 2, j - 1, -1):
            t[k] += c * t[k + 1]
            s[k] += ac * s[k + 1]
    return t, s


def root_multiplicity(p, z, max_order=None, tol=TAU_VANISH):
    """Order of vanishing of p at z, judged on relative Taylor coefficients."""
    t, s = _taylor_shift(p.coeffs, z)
    limit = t.size - 1 if max_order is None else min(max_order, t.size - 1)
    m = 0
    while m < limit and abs(t[m]) <= tol * s[m]:
        m += 1
    return m


def _polish(a, z, iters=3):
    da = a[1:] * np.arange(1, a.size)
    best = z
    best_res = abs(_kernels.horner(a, z))
    for _ in range(iters):
        d = _kernels.horner(da, z)
        if d == 0:
            break
        z = z - _kernels.horner(a, z) / d
        res = abs(_kernels.horner(a, z))
        if res < best_res:
            best, best_res = z, res
        else:
            break
    return best


def _cluster(points, tol):
    """Single-link clusters of complex points, distance scaled by max(1, |z|)."""
    groups = []
    for z in points:
        hits = [g for g in groups if any(abs(z - w) <= tol * max(1.0, abs(w)) for w in g)]
        merged = [z]
        for g in hits:
            merged.extend(g)
            groups.remove(g)
        groups.append(merged)
    return groups


def _vanishes_to_order(a, c, m):
    t, s = _taylor_shift(a, c)
    return all(abs(t[j]) <= TAU_VANISH * s[j] for j in range(m))


def _clustered_roots(b, raw):
    groups = _cluster(list(raw), TAU_CLUSTER)
    # scattered multiple roots can sit farther apart than TAU_CLUSTER
    changed = True
    while changed and len(groups) > 1:
        changed = False
        cents = [np.mean(g) for g in groups]
        pairs = sorted(
            (abs(cents[i] - cents[j]), i, j)
            for i in range(len(groups))
            for j in range(i + 1, len(groups))
        )
        for dist, i, j in pairs:
            if dist > MERGE_RADIUS * max(1.0, abs(cents[i])):
                break
            merged = groups[i] + groups[j]
            if _vanishes_to_order(b, np.mean(merged), len(merged)):
                groups = [g for k, g in enumerate(groups) if k not in (i, j)] + [merged]
                changed = True
                break
    out = []
    for g in groups:
        if len(g) == 1:
            out.append((complex(_polish(b, complex(g[0]))), 1))
        else:
            out.append((complex(np.mean(g)), len(g)))
    return out


def roots(p):
    """Roots of p with multiplicities, as a list of (location, multiplicity).

    Companion-matrix eigenvalues, clustered to detect multiple roots (cluster
    centroids confirmed by derivative vanishing), simple roots Newton-polished.
    """
    if p.is_zero():
        raise ZeroPolynomial("roots of the zero polynomial are undefined")
    a = p.coeffs
    if a.size == 1:
        return []
    if a.size == 2:
        return [(complex(-a[0] / a[1]), 1)]
    k0 = 0
    while a[k0] == 0:
        k0 += 1
    out = [(0j, k0)] if k0 else []
    b = a[k0:]
    if b.size == 1:
        return out
    raw = np.roots(b[::-1])
    if raw.size > 1:
        gaps = np.abs(raw[:, None] - raw[None, :])
        np.fill_diagonal(gaps, np.inf)
        isolated = gaps.min() > MERGE_RADIUS * max(1.0, float(np.abs(raw).max()))
    else:
        isolated = True
    if isolated:
        out.extend((complex(_polish(b, complex(z))), 1) for z in raw)
    else:
        out.extend(_clustered_roots(b, raw))
    out.sort(key=lambda item: (abs(item[0]), math.atan2(item[0].imag, item[0].real)))
    return out


# -- poles over the annulus -------------------------------------------------

def _check_c(c):
    if not 0.0 < c < 1.0:
        raise DomainError(f"annulus radius c={c} outside (0, 1)")


def in_annulus(z, c, tau=TAU_BOUNDARY):
    return c - tau <= abs(z) <= 1.0 + tau


def classify_poles(pair, c):
    """Split denominator roots in c <= |z| <= 1 (within TAU_BOUNDARY) into
    cancelled zeros and uncancelled poles."""
    _check_c(c)
    if pair.den.is_zero():
        raise ZeroDenominator("denominator is the zero polynomial")
    poles, cancelled = [], []
    for zeta, m_den in roots(pair.den):
        if not in_annulus(zeta, c):
            continue
        if pair.num.is_zero():
            m_num = m_den
        else:
            m_num = root_multiplicity(pair.num, zeta, max_order=m_den)
        if m_num >= m_den:
            cancelled.append((zeta, m_den))
        else:
            poles.append((zeta, m_den - m_num))
    return PoleReport(c=c, uncancelled_poles=tuple(poles), cancelled_zeros=tuple(cancelled))


def _divide_out(p, zeta, m):
    a = p.coeffs
    for _ in range(m):
        # synthetic division by (z - zeta), remainder dropped
        n = a.size - 1
        q = np.zeros(n, dtype=complex)
        acc = a[-1]
        for k in range(n - 1, -1, -1):
            q[k] = acc
            acc = a[k] + zeta * acc
        a = q
    return Poly(a)


def deflate_common_zeros(pair, c, report=None):
    """Divide common annulus zeros out of numerator and denominator."""
    report = classify_poles(pair, c) if report is None else report
    if not report.analytic_in_annulus:
        raise UncancelledPole(f"uncancelled poles at {list(report.uncancelled_poles)}")
    if not report.cancelled_zeros:
        return pair
    num, den = pair.num, pair.den
    for zeta, m in report.cancelled_zeros:
        den = _divide_out(den, zeta, m)
        if not num.is_zero():
            num = _divide_out(num, zeta, m)
    return QuotientPair(num, den)


# -- circle and annulus maxima ------------------------------------------------

def _scan(pair, r, n_grid, refine_iters, mode=0):
    value, theta = _kernels.circle_scan(
        pair.num.coeffs, pair.den.coeffs, float(r), int(n_grid), int(refine_iters), mode
    )
    return float(value), float(theta)


def circle_max(pair, r, n_grid=DEFAULT_GRID, refine_iters=DEFAULT_REFINE):
    """Maximum of |num/den| on |z| = r."""
    if n_grid < 64:
        raise ValueError("n_grid must be at least 64")
    for zeta, _ in roots(pair.den):
        if abs(abs(zeta) - r) <= TAU_BOUNDARY:
            raise PoleOnCircle(f"denominator root {zeta} lies on |z| = {r}")
    value, theta = _scan(pair, r, n_grid, refine_iters)
    return CircleMaxResult(radius=r, value=value, arg_max_angle=theta,
                           samples_used=n_grid + refine_iters + 2)


def annulus_sup(pair, c, n_grid=DEFAULT_GRID, refine_iters=DEFAULT_REFINE):
    """sup of |num/den| over c <= |z| < 1, or an infinite result on uncancelled poles."""
    report = classify_poles(pair, c)
    if not report.analytic_in_annulus:
        return CircleMaxResult(radius=c, value=math.inf, arg_max_angle=0.0,
                               samples_used=0, pole_report=report)
    work = deflate_common_zeros(pair, c, report)
    inner = _scan(work, c, n_grid, refine_iters)
    outer = _scan(work, 1.0, n_grid, refine_iters)
    used = 2 * (n_grid + refine_iters + 2)
    if outer[0] > inner[0]:
        return CircleMaxResult(1.0, outer[0], outer[1], used, report)
    return CircleMaxResult(c, inner[0], inner[1], used, report)


# -- pointwise objectives ---------------------------------------------------

def objective_FB_violation(f, g, c, n_grid=DEFAULT_GRID, refine_iters=DEFAULT_REFINE):
    """max (|f| - |g|)^+ sampled on |z| in {c, (c+1)/2, 1}; 0 means admissible."""
    _check_c(c)
    worst = 0.0
    for r in (c, 0.5 * (c + 1.0), 1.0):
        val, _ = _kernels.circle_scan(f.coeffs, g.coeffs, r, n_grid, refine_iters, 1)
        worst = max(worst, float(val))
    return worst if worst > TAU_VIOLATION else 0.0


def objective_G(f, g, c, n_r=64, n_theta=256, refine_rounds=50):
    """Grid approximation of min over c <= |z| <= 1 of |g|^2 - |f|^2.

    No boundary principle governs |g|^2 - |f|^2, so a full polar grid is
    scanned and the best node is refined by a shrinking 3x3 stencil. The
    result carries no attainment guarantee.
    """
    _check_c(c)
    radii = np.linspace(c, 1.0, n_r)
    best, r0, th0 = _kernels.polar_grid_max(f.coeffs, g.coeffs, radii, n_theta, 2)
    dr = (1.0 - c) / max(n_r - 1, 1)
    dth = 2.0 * math.pi / n_theta
    for _ in range(refine_rounds):
        improved = False
        for sr in (-1, 0, 1):
            for st in (-1, 0, 1):
                r = min(1.0, max(c, r0 + sr * dr))
                th = th0 + st * dth
                val = _kernels.profile(f.coeffs, g.coeffs, r * complex(math.cos(th), math.sin(th)), 2)
                if val > best:
                    best, r1, th1, improved = val, r, th, True
        if improved:
            r0, th0 = r1, th1
        else:
            dr *= 0.5
            dth *= 0.5
    return -float(best)
