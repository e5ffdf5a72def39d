"""Closed-form solution of the degree-1 problem.

A unit-norm degree-1 pair gives the Mobius quotient

    phi_t(z) = (alpha + beta e^{it} z) / (gamma + delta z),

whose pole -gamma/delta must sit in the hole |z| < c. The image of |z| = c
is a circle; its farthest point from the origin is the circle maximum.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .bergman import Poly
from .errors import DegenerateCircle, DomainError

KAPPA_1 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class Deg1Params:
    alpha: float
    beta: float
    gamma: float
    delta: float
    t: float = 0.0

    def __post_init__(self):
        if min(self.alpha, self.beta, self.gamma, self.delta) < 0:
            raise DomainError("alpha, beta, gamma, delta must be nonnegative")

    @classmethod
    def unit_norm(cls, alpha, gamma, t=0.0):
        """Parameters of a pair with both polynomials of Bergman norm 1."""
        if not (0 <= alpha <= 1 and 0 <= gamma <= 1):
            raise DomainError("alpha and gamma must lie in [0, 1] for unit-norm pairs")
        return cls(alpha, math.sqrt(2 * (1 - alpha ** 2)), gamma, math.sqrt(2 * (1 - gamma ** 2)), t)

    @property
    def a(self):
        return self.alpha / self.beta

    @property
    def b(self):
        return self.gamma / self.delta

    def pole_in_hole(self, c):
        return self.delta > 0 and self.gamma / self.delta < c

    def polys(self):
        num = Poly([self.alpha, self.beta * cmath.exp(1j * self.t)])
        den = Poly([self.gamma, self.delta])
        return num, den

    def __call__(self, z):
        return (self.alpha + self.beta * cmath.exp(1j * self.t) * z) / (self.gamma + self.delta * z)


def _denominator(p, c):
    d = p.gamma ** 2 - p.delta ** 2 * c ** 2
    if abs(d) < 1e-12:
        raise DegenerateCircle("pole lies on |z| = c")
    return d


def image_center(p, c):
    """Center of phi_t(|z| = c): the image of the pole's mirror point."""
    d = _denominator(p, c)
    return (p.alpha * p.gamma - p.beta * p.delta * c ** 2 * cmath.exp(1j * p.t)) / d


def image_radius(p, c):
    d = _denominator(p, c)
    return c * abs(p.alpha * p.delta - p.beta * p.gamma * cmath.exp(1j * p.t)) / abs(d)


def farthest_modulus(p, c):
    """max over theta of |phi_t(c e^{i theta})| for a pole inside |z| < c."""
    d = _denominator(p, c)
    e = cmath.exp(1j * p.t)
    return (abs(p.alpha * p.gamma - p.beta * p.delta * c ** 2 * e)
            + c * abs(p.alpha * p.delta - p.beta * p.gamma * e)) / abs(d)


def f1_closed_form(c):
    """F_1(c): 1 up to 1/sqrt(2), then 1/(sqrt(2) c)."""
    if not 0.0 < c <= 1.0:
        raise DomainError(f"c={c} outside (0, 1]")
    if c <= KAPPA_1:
        return 1.0
    return 1.0 / (math.sqrt(2.0) * c)


def case_candidates(c):
    """Stationary values of the case analysis for 1/sqrt(2) < c <= 1.

    Labels: ``a=c,b=1/(2c)`` gives 2 sqrt(2) c / (1 + 2c^2); ``a=c^2/b,b->0``
    gives 1/(sqrt(2) c); ``trivial`` entries are the a=b collapses at value 1.
    """
    if not KAPPA_1 < c <= 1.0:
        raise DomainError(f"nontrivial candidates need 1/sqrt(2) < c <= 1, got {c}")
    return [
        ("a=c,b=1/(2c)", 2.0 * math.sqrt(2.0) * c / (1.0 + 2.0 * c * c)),
        ("a=c^2/b,b->0", 1.0 / (math.sqrt(2.0) * c)),
        ("trivial", 1.0),
    ]


def extremal_pair_deg1():
    """(1, sqrt(2) z): the limit b -> 0, a = c^2/b -> infinity; independent of c."""
    return Poly([1.0]), Poly([0.0, math.sqrt(2.0)])
