"""Coefficient-space searches for Korenblum's functions.

``minimize_F`` and ``minimize_F_blaschke`` return upper bounds (the objective
of an explicit admissible pair); ``maximize_FB`` returns a lower bound (the
norm gap of an explicitly repaired admissible pair). Nothing here certifies
global optimality.

Each restart draws its starting point from ``default_rng([seed, index])`` and
runs Nelder-Mead followed by a few re-seeded simplex polishes. Restarts are
independent, so they may run on a thread pool; the winner is chosen by
(objective, restart index), which keeps results independent of scheduling.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.optimize import minimize

from .bergman import Poly, bergman_norm, bergman_norm_sq, normalize
from .blaschke import MAX_ZERO_MODULUS, BlaschkeProduct, blaschke_norm, blaschke_to_series
from .errors import ConfigError, ZeroPolynomial
from .quotient import (
    DEFAULT_GRID,
    DEFAULT_REFINE,
    QuotientPair,
    annulus_sup,
    objective_FB_violation,
    roots,
)

log = logging.getLogger(__name__)

KAPPA_LOWER_KNOWN = 0.28185
THREADS_ENV = "KORENBLUM_THREADS"


@dataclass(frozen=True)
class SearchConfig:
    n: int = 1
    c: float = 0.8
    restarts: int = 16
    seed: int = 0
    max_iters: int = 2000
    simplex_tol: float = 1e-7
    penalty_weight: float = 1e3
    n_grid: int = 256
    refine_iters: int = 30
    polish_rounds: int = 2
    embed_deg1: bool = True
    workers: int | None = None

    def validate(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ConfigError(f"degree n must be a positive integer, got {self.n!r}")
        if not 0.0 < self.c < 1.0:
            raise ConfigError(f"c={self.c} outside (0, 1)")
        if self.restarts < 1:
            raise ConfigError("restarts must be >= 1")
        if self.max_iters < 1:
            raise ConfigError("max_iters must be >= 1")
        if not self.simplex_tol > 0:
            raise ConfigError("simplex_tol must be positive")
        if not self.penalty_weight > 0:
            raise ConfigError("penalty_weight must be positive")
        if self.n_grid < 64:
            raise ConfigError("n_grid must be >= 64")
        if self.seed < 0:
            raise ConfigError("seed must be unsigned")
        return self


@dataclass
class SearchResult:
    kind: str
    bound: str
    objective: float
    witness_f: Poly
    witness_g: Poly
    attained_radius: float
    attained_angle: float
    restarts_summary: list
    converged: bool
    config: SearchConfig
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self):
        cfg = asdict(self.config)
        cfg.pop("workers")
        return {
            "kind": self.kind,
            "bound": self.bound,
            "objective": self.objective,
            "witness_f": self.witness_f.to_json(),
            "witness_g": self.witness_g.to_json(),
            "attained_radius": self.attained_radius,
            "attained_angle": self.attained_angle,
            "converged": self.converged,
            "config": cfg,
            "restarts": self.restarts_summary,
            "diagnostics": self.diagnostics,
        }


def worker_count(requested=None):
    hw = os.cpu_count() or 1
    env = os.environ.get(THREADS_ENV)
    n = requested if requested is not None else (int(env) if env else hw)
    return max(1, int(n))


def _run_restarts(task, count, workers):
    workers = min(worker_count(workers), count)
    if workers == 1:
        return [task(i) for i in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(task, range(count)))


# -- objectives --------------------------------------------------------------

def objective_F(f, g, c, penalty_weight=1e3, n_grid=DEFAULT_GRID, refine_iters=DEFAULT_REFINE):
    """sup over the annulus of |f/g| after projecting both onto the unit sphere.

    Uncancelled poles cost ``penalty_weight * (1 + total deficit)`` instead of
    infinity so the simplex can back away from them.
    """
    pair = QuotientPair(normalize(f), normalize(g))
    res = annulus_sup(pair, c, n_grid, refine_iters)
    if res.infinite:
        return penalty_weight * (1 + res.pole_report.total_deficit)
    return res.value


def _split(x, n):
    k = n + 1
    f = Poly(x[:k] + 1j * x[k:2 * k])
    g = Poly(x[2 * k:3 * k] + 1j * x[3 * k:4 * k])
    return f, g


def _pack(f, g, n):
    def part(p):
        a = np.zeros(n + 1, dtype=complex)
        a[: p.coeffs.size] = p.coeffs
        return a
    a, b = part(f), part(g)
    return np.concatenate([a.real, a.imag, b.real, b.imag])


def _nelder_mead(fun, x0, cfg):
    """Nelder-Mead plus re-seeded simplex polishes around the incumbent."""
    opts = dict(maxfev=cfg.max_iters, xatol=cfg.simplex_tol, fatol=cfg.simplex_tol, adaptive=x0.size > 6)
    res = minimize(fun, x0, method="Nelder-Mead", options=opts)
    x, fx, nfev = res.x, float(res.fun), res.nfev
    success = bool(res.success)
    scale = 0.05
    for _ in range(cfg.polish_rounds):
        simplex = np.vstack([x] + [x + scale * np.eye(x.size)[i] for i in range(x.size)])
        res = minimize(fun, x, method="Nelder-Mead", options=dict(opts, initial_simplex=simplex))
        nfev += res.nfev
        success = bool(res.success)
        gain = fx - float(res.fun)
        if float(res.fun) < fx:
            x, fx = res.x, float(res.fun)
        if gain <= cfg.simplex_tol:
            break
        scale *= 0.5
    return x, fx, nfev, success


def _feasible_start(rng, fun, dim, limit, penalty_weight, accept=None):
    """First uniform draw in [-1, 1]^dim with a finite objective (and ``accept(x)``)."""
    x = rng.uniform(-1.0, 1.0, dim)
    for _ in range(limit):
        if fun(x) < penalty_weight and (accept is None or accept(x)):
            return x
        x = rng.uniform(-1.0, 1.0, dim)
    return x


def _den_zero_in_hole(n, c):
    # an extremal pair with F < 1 has a denominator zero in |z| < c
    def accept(x):
        _, g = _split(x, n)
        return g.degree >= 1 and any(abs(z) < c for z, _ in roots(g))
    return accept


def _rotation_phase_canonical(f, g):
    """Rotate z and the global phases so witnesses are easy to compare.

    Moduli |f(z)|, |g(z)| on circles are unchanged by z -> e^{i phi} z and by
    unimodular factors, so this never changes an objective.
    """
    def lead_phase(p):
        k = int(np.argmax(np.abs(p.coeffs) > 1e-8 * np.abs(p.coeffs).max()))
        return np.angle(p.coeffs[k])
    f = f * np.exp(-1j * lead_phase(f))
    g = g * np.exp(-1j * lead_phase(g))
    return f, g


# -- F_n(c) -------------------------------------------------------------------

def minimize_F(config):
    """Upper-bound estimate of F_n(c) by multistart Nelder-Mead over 4(n+1) reals."""
    cfg = config.validate()
    dim = 4 * (cfg.n + 1)

    def fun(x):
        f, g = _split(x, cfg.n)
        try:
            return objective_F(f, g, cfg.c, cfg.penalty_weight, cfg.n_grid, cfg.refine_iters)
        except ZeroPolynomial:
            return 2 * cfg.penalty_weight

    # for n >= 2 one extra start sits at the degree-1 extremal pair (1, sqrt(2) z),
    # so the estimate never exceeds the degree-1 value
    extra = cfg.n >= 2 and cfg.embed_deg1

    def restart(i):
        if i == cfg.restarts:
            x0 = _pack(Poly([1.0]), Poly([0.0, math.sqrt(2.0)]), cfg.n)
        else:
            rng = np.random.default_rng([cfg.seed, i])
            x0 = _feasible_start(rng, fun, dim, 500, cfg.penalty_weight, _den_zero_in_hole(cfg.n, cfg.c))
        x, fx, nfev, ok = _nelder_mead(fun, x0, cfg)
        return {"restart": i, "objective": fx, "nfev": int(nfev), "success": ok, "x": x}

    runs = _run_restarts(restart, cfg.restarts + int(extra), cfg.workers)
    # f = g = 1 gives objective 1, so F_n(c) <= 1 whatever the restarts find
    baseline = {"restart": -1, "objective": 1.0, "nfev": 0, "success": True,
                "x": _pack(Poly([1.0]), Poly([1.0]), cfg.n)}
    best = min(runs + [baseline], key=lambda r: (r["objective"], r["restart"]))
    f, g = _split(best["x"], cfg.n)
    f, g = _rotation_phase_canonical(normalize(f), normalize(g))
    final = annulus_sup(QuotientPair(f, g), cfg.c)
    if final.infinite:
        objective = math.inf
    else:
        objective = final.value
    return SearchResult(
        kind="F_n",
        bound="upper",
        objective=objective,
        witness_f=f,
        witness_g=g,
        attained_radius=final.radius,
        attained_angle=final.arg_max_angle,
        restarts_summary=_summary(runs),
        converged=_converged(best, runs) and math.isfinite(objective),
        config=cfg,
        diagnostics=_dispersion(runs, cfg),
    )


def _converged(best, runs):
    # when the trivial baseline wins, trust it only if some restart converged
    if best["restart"] == -1:
        return any(r["success"] for r in runs)
    return bool(best["success"])


def _summary(runs):
    return [
        {"restart": r["restart"], "objective": r["objective"], "nfev": r["nfev"], "success": r["success"]}
        for r in runs
    ]


def _dispersion(runs, cfg, tol=1e-3):
    """How many restarts land near the best value, and how far apart their witnesses are."""
    best = min(r["objective"] for r in runs)
    near = [r for r in runs if r["objective"] <= best + tol]
    mods = []
    for r in near:
        f, g = _split(r["x"], cfg.n)
        try:
            f, g = normalize(f), normalize(g)
        except ZeroPolynomial:
            continue
        mods.append(np.concatenate([np.abs(_pad(f.coeffs, cfg.n)), np.abs(_pad(g.coeffs, cfg.n))]))
    spread = float(np.max(np.ptp(np.array(mods), axis=0))) if len(mods) > 1 else 0.0
    return {"restarts_near_best": len(near), "witness_modulus_spread": spread}


def _pad(a, n):
    out = np.zeros(n + 1, dtype=complex)
    out[: a.size] = a
    return out


# -- F_B(c) -------------------------------------------------------------------

def repair_admissible(f, g, c, n_grid=DEFAULT_GRID, refine_iters=DEFAULT_REFINE):
    """Scale (f, g) into FG(c): norms <= 1 and |f| <= |g| on the annulus."""
    s = max(1.0, bergman_norm(f), bergman_norm(g))
    f, g = f / s, g / s
    if f.is_zero():
        return f, g
    if g.is_zero():
        return Poly([0.0]), g
    sup = annulus_sup(QuotientPair(f, g), c, n_grid, refine_iters)
    if sup.infinite:
        return Poly([0.0]), g
    if sup.value > 1.0:
        f = f / sup.value
    return f, g


def maximize_FB(config):
    """Lower-bound estimate of F_B(c) restricted to degree <= n polynomials.

    The penalized gap ||f||^2 - ||g||^2 - W viol - W ((||f||-1)^+ + (||g||-1)^+)
    is maximized first. Each restart then polishes on the gap of the repaired
    pair, which is feasible by construction and has no penalty walls for the
    simplex to stall against. The winner is repaired at full precision before
    its gap is reported.
    """
    cfg = config.validate()
    dim = 4 * (cfg.n + 1)
    W = cfg.penalty_weight

    def fun(x):
        f, g = _split(x, cfg.n)
        nf, ng = bergman_norm(f), bergman_norm(g)
        viol = objective_FB_violation(f, g, cfg.c, cfg.n_grid, cfg.refine_iters)
        gap = nf * nf - ng * ng
        return -(gap - W * viol - W * (max(nf - 1.0, 0.0) + max(ng - 1.0, 0.0)))

    def repaired(x):
        f, g = _split(x, cfg.n)
        f, g = repair_admissible(f, g, cfg.c, cfg.n_grid, cfg.refine_iters)
        return -(bergman_norm_sq(f) - bergman_norm_sq(g))

    # for n >= 2 one extra start is Hayman's admissible pair (c, z), whose gap is c^2 - 1/2
    extra = cfg.n >= 2 and cfg.embed_deg1

    def restart(i):
        if i == cfg.restarts:
            f, g = Poly([cfg.c]), Poly([0.0, 1.0])
        else:
            rng = np.random.default_rng([cfg.seed, i])
            f, g = _split(rng.uniform(-1.0, 1.0, dim), cfg.n)
            # start admissible: g on the unit sphere, f shrunk below |g| on the annulus
            g = normalize(g) if not g.is_zero() else Poly([1.0])
            f, g = repair_admissible(0.5 * normalize(f), g, cfg.c)
        x0 = _pack(f, g, cfg.n)
        x, fx, nfev, _ = _nelder_mead(fun, x0, cfg)
        x, _, nfev2, ok = _nelder_mead(repaired, x, cfg)
        nfev += nfev2
        f, g = repair_admissible(*_split(x, cfg.n), cfg.c)
        gap = bergman_norm_sq(f) - bergman_norm_sq(g)
        return {"restart": i, "objective": -gap, "penalized": -fx, "nfev": int(nfev), "success": ok,
                "x": _pack(f, g, cfg.n)}

    runs = _run_restarts(restart, cfg.restarts + int(extra), cfg.workers)
    best = min(runs, key=lambda r: (r["objective"], r["restart"]))
    f, g = _split(best["x"], cfg.n)
    f, g = _rotation_phase_canonical(f, g) if not f.is_zero() else (f, g)
    gap = bergman_norm_sq(f) - bergman_norm_sq(g)
    if f.is_zero() or g.is_zero():
        radius, angle = cfg.c, 0.0
    else:
        sup = annulus_sup(QuotientPair(f, g), cfg.c)
        radius, angle = sup.radius, sup.arg_max_angle
    summary = [
        {"restart": r["restart"], "objective": -r["objective"], "penalized": r["penalized"],
         "nfev": r["nfev"], "success": r["success"]}
        for r in runs
    ]
    return SearchResult(
        kind="F_B",
        bound="lower",
        objective=gap,
        witness_f=f,
        witness_g=g,
        attained_radius=radius,
        attained_angle=angle,
        restarts_summary=summary,
        converged=bool(best["success"]),
        config=cfg,
        diagnostics={
            "violation": objective_FB_violation(f, g, cfg.c) if not f.is_zero() else 0.0,
            "norm_f": bergman_norm(f),
            "norm_g": bergman_norm(g),
        },
    )


# -- kappa_n ----------------------------------------------------------------

@dataclass
class KappaEstimate:
    n: int
    lower: float
    upper: float
    eps: float
    evaluations: int
    history: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)


def estimate_kappa_n(n, eps=1e-3, base_config=None, lo=0.28, hi=0.95, width=5e-3):
    """Bracket kappa_n by bisection on c with the test F_n-estimate(c) < 1 - eps.

    Endpoints are not searched: lo sits below the known lower bound for kappa
    (so F_n(lo) = 1) and F_n(hi) <= F_1(hi) < 1 - eps.
    """
    if not 1e-4 < eps < 0.1:
        raise ConfigError(f"eps={eps} outside (1e-4, 0.1)")
    base = base_config or SearchConfig()
    history = []
    while hi - lo >= width:
        mid = 0.5 * (lo + hi)
        res = minimize_F(replace(base, n=n, c=mid))
        above = res.objective < 1.0 - eps
        history.append({"c": mid, "objective": res.objective, "above": above})
        if above:
            hi = mid
        else:
            lo = mid
    return KappaEstimate(n=n, lower=lo, upper=hi, eps=eps, evaluations=len(history), history=history)


def kappa_sweep(ns, eps=1e-3, base_config=None):
    """Brackets for several degrees; non-monotone brackets are flagged, not hidden."""
    out = []
    for n in ns:
        est = estimate_kappa_n(n, eps, base_config)
        for prev in out:
            if prev.n < n and est.lower >= prev.upper:
                msg = f"NonMonotoneBracket: kappa_{n} bracket lies above kappa_{prev.n} bracket"
                est.diagnostics.append(msg)
                log.warning(msg)
        out.append(est)
    return out


# -- Blaschke products ------------------------------------------------------

def squash_to_disk(u, v, radius=MAX_ZERO_MODULUS):
    """Smooth map R^2 -> open disk of the given radius."""
    rho = math.hypot(u, v)
    if rho == 0.0:
        return 0j
    return complex(u, v) * (radius * math.tanh(rho) / rho)


def _blaschke_from(x, m):
    return BlaschkeProduct(tuple(squash_to_disk(x[2 * j], x[2 * j + 1]) for j in range(m)))


def blaschke_pair_objective(B1, B2, c, penalty_weight=1e3, n_grid=DEFAULT_GRID,
                            refine_iters=DEFAULT_REFINE):
    """sup over the annulus of |f/g| with f = B1/||B1||, g = B2/||B2||.

    B1/B2 = P1 Q2 / (Q1 P2) is a polynomial quotient, so the annulus machinery
    applies exactly; the normalization contributes the factor ||B2||/||B1||.
    """
    p1, q1 = B1.rational_parts()
    p2, q2 = B2.rational_parts()
    res = annulus_sup(QuotientPair(p1 * q2, q1 * p2), c, n_grid, refine_iters)
    if res.infinite:
        return penalty_weight * (1 + res.pole_report.total_deficit), res
    scale = blaschke_norm(B2) / blaschke_norm(B1)
    return scale * res.value, res


def minimize_F_blaschke(config):
    """Upper-bound estimate of F_n^B(c) over pairs of Blaschke products of order <= n.

    Restart i works on the order pair (m_f, m_g) at position i of the list of
    all pairs other than (0, 0); the pair of two constants (value 1) is the
    baseline every search starts from.
    """
    cfg = config.validate()
    orders = [(mf, mg) for mf in range(cfg.n + 1) for mg in range(cfg.n + 1) if (mf, mg) != (0, 0)]

    def fun_for(mf, mg):
        def fun(x):
            B1 = _blaschke_from(x[: 2 * mf], mf)
            B2 = _blaschke_from(x[2 * mf:], mg)
            val, _ = blaschke_pair_objective(B1, B2, cfg.c, cfg.penalty_weight, cfg.n_grid,
                                             cfg.refine_iters)
            return val
        return fun

    def restart(i):
        mf, mg = orders[i % len(orders)]
        rng = np.random.default_rng([cfg.seed, i])
        fun = fun_for(mf, mg)
        x0 = _feasible_start(rng, fun, 2 * (mf + mg), 200, cfg.penalty_weight)
        x, fx, nfev, ok = _nelder_mead(fun, x0, cfg)
        return {"restart": i, "orders": [mf, mg], "objective": fx, "nfev": int(nfev), "success": ok, "x": x}

    runs = _run_restarts(restart, cfg.restarts, cfg.workers)
    baseline = {"restart": -1, "orders": [0, 0], "objective": 1.0, "nfev": 0, "success": True,
                "x": np.zeros(0)}
    best = min(runs + [baseline], key=lambda r: (r["objective"], r["restart"]))
    mf, mg = best["orders"]
    B1 = _blaschke_from(best["x"][: 2 * mf], mf)
    B2 = _blaschke_from(best["x"][2 * mf:], mg)
    objective, res = blaschke_pair_objective(B1, B2, cfg.c)
    s1, s2 = blaschke_to_series(B1), blaschke_to_series(B2)
    return SearchResult(
        kind="F_n^B",
        bound="upper",
        objective=objective,
        witness_f=normalize(s1.as_poly()),
        witness_g=normalize(s2.as_poly()),
        attained_radius=res.radius,
        attained_angle=res.arg_max_angle,
        restarts_summary=[{k: v for k, v in r.items() if k != "x"} for r in runs],
        converged=_converged(best, runs),
        config=cfg,
        diagnostics={
            "zeros_f": [[a.real, a.imag] for a in B1.zeros],
            "zeros_g": [[a.real, a.imag] for a in B2.zeros],
            "tail_bound_f": s1.tail_bound,
            "tail_bound_g": s2.tail_bound,
        },
    )
