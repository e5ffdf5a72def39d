"""Bergman-space arithmetic on polynomials and truncated power series.

Every norm in production code comes from the Taylor-coefficient formula

    ||f||^2 = sum_k |a_k|^2 / (k + 1),

which is exact for polynomials. Disk quadrature lives in the test suite only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ParseError, ZeroPolynomial

# trailing coefficients below TAU_ZERO * max|a_k| are dropped
TAU_ZERO = 1e-14


class Poly:
    """Analytic polynomial a_0 + a_1 z + ... + a_n z^n (ascending coefficients).

    Instances are immutable; the coefficient array is read-only.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        a = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel().copy()
        if a.size == 0:
            a = np.zeros(1, dtype=complex)
        mags = np.abs(a)
        top = mags.max()
        if top == 0.0:
            a = np.zeros(1, dtype=complex)
        else:
            keep = np.nonzero(mags >= TAU_ZERO * top)[0][-1]
            a = a[: keep + 1]
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def monomial(cls, k, coeff=1.0):
        a = np.zeros(k + 1, dtype=complex)
        a[k] = coeff
        return cls(a)

    @classmethod
    def from_roots(cls, roots, leading=1.0):
        # np.poly gives descending coefficients
        desc = np.atleast_1d(np.poly(np.asarray(roots, dtype=complex))) * leading
        return cls(np.asarray(desc, dtype=complex)[::-1])

    @property
    def degree(self):
        return self.coeffs.size - 1

    def is_zero(self):
        return self.coeffs.size == 1 and self.coeffs[0] == 0

    def __call__(self, z):
        return eval_poly(self, z)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(np.convolve(self.coeffs, other.coeffs))
        return Poly(self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return Poly(self.coeffs / complex(scalar))

    def __add__(self, other):
        b = other.coeffs if isinstance(other, Poly) else np.array([complex(other)])
        n = max(self.coeffs.size, b.size)
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] += self.coeffs
        out[: b.size] += b
        return Poly(out)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __eq__(self, other):
        return isinstance(other, Poly) and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    def __repr__(self):
        return f"Poly({self.coeffs.tolist()!r})"

    def allclose(self, other, atol=1e-12):
        n = max(self.coeffs.size, other.coeffs.size)
        a = np.zeros(n, dtype=complex)
        b = np.zeros(n, dtype=complex)
        a[: self.coeffs.size] = self.coeffs
        b[: other.coeffs.size] = other.coeffs
        return bool(np.allclose(a, b, rtol=0.0, atol=atol))

    def compose_rotation(self, phi):
        """Return z -> p(e^{i phi} z)."""
        k = np.arange(self.coeffs.size)
        return Poly(self.coeffs * np.exp(1j * phi * k))

    def to_json(self):
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(parse_coefficients(data))


def parse_coefficients(data):
    """Turn a JSON value (array of [re, im] pairs or plain numbers) into a complex array."""
    if not isinstance(data, list) or not data:
        raise ParseError("coefficient data must be a non-empty JSON array")
    out = []
    for i, item in enumerate(data):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            out.append(complex(item, 0.0))
        elif (
            isinstance(item, list)
            and len(item) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)
        ):
            out.append(complex(item[0], item[1]))
        else:
            raise ParseError(f"coefficient {i} is not a [re, im] pair: {item!r}")
    return np.array(out, dtype=complex)


def loads_poly(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno, column=exc.colno) from exc
    return Poly.from_json(data)


def eval_poly(p, z):
    """Horner evaluation; z may be a scalar or an array."""
    a = p.coeffs
    if np.ndim(z) == 0:
        acc = 0j
        zc = complex(z)
        for coef in a[::-1]:
            acc = acc * zc + coef
        return acc
    return np.polyval(a[::-1], np.asarray(z, dtype=complex))


def bergman_norm_sq(p):
    a = p.coeffs
    return float(np.sum((a.real ** 2 + a.imag ** 2) / np.arange(1, a.size + 1)))


def bergman_norm(p):
    return float(np.sqrt(bergman_norm_sq(p)))


def normalize(p):
    nrm = bergman_norm(p)
    if nrm < TAU_ZERO:
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    return Poly(p.coeffs / nrm)


def _check_rho(rho, closed):
    ok = 0.0 < rho <= 1.0 if closed else 0.0 < rho < 1.0
    if not ok:
        interval = "(0, 1]" if closed else "(0, 1)"
        raise DomainError(f"dilation radius {rho} outside {interval}")


def dilate(p, rho):
    """f_rho(z) = f(rho z)."""
    _check_rho(rho, closed=True)
    if rho == 1.0:
        return p
    return Poly(p.coeffs * rho ** np.arange(p.coeffs.size))


def dilation_norm_derivative(p, rho):
    """d/drho of ||f_rho||^2 = sum_{k>=1} 2k rho^(2k-1) |a_k|^2 / (k+1)."""
    _check_rho(rho, closed=False)
    a = p.coeffs
    k = np.arange(1, a.size)
    if k.size == 0:
        return 0.0
    mag2 = np.abs(a[1:]) ** 2
    return float(np.sum(2.0 * k * rho ** (2 * k - 1) * mag2 / (k + 1)))


@dataclass(frozen=True)
class TruncatedSeries:
    """Partial sum a_0..a_N of a power series plus a bound on the discarded tail.

    ``tail_bound`` bounds the Bergman norm of sum_{k>N} a_k z^k and is supplied by
    whoever built the series; this module never estimates tails itself.
    """

    coeffs: np.ndarray
    truncation_order: int
    tail_bound: float = 0.0

    def __post_init__(self):
        a = np.asarray(self.coeffs, dtype=complex).ravel()
        if a.size == 0:
            raise ValueError("series needs at least one coefficient")
        if not np.isfinite(self.tail_bound) or self.tail_bound < 0:
            raise ValueError("tail_bound must be finite and nonnegative")
        a = a.copy()
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)

    def as_poly(self):
        return Poly(self.coeffs)


def series_norm(s):
    """Interval [lower, upper] containing the Bergman norm of the full series."""
    lower = bergman_norm(Poly(s.coeffs))
    return (lower, lower + float(s.tail_bound))
