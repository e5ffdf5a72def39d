import math

import numpy as np
import pytest

from korenblum import search
from korenblum.bergman import Poly, bergman_norm
from korenblum.bounds import bound_F_lower, bound_FB
from korenblum.errors import ConfigError
from korenblum.mobius import f1_closed_form
from korenblum.quotient import QuotientPair, annulus_sup, objective_FB_violation
from korenblum.search import (
    KappaEstimate,
    SearchConfig,
    estimate_kappa_n,
    kappa_sweep,
    maximize_FB,
    minimize_F,
    minimize_F_blaschke,
    objective_F,
    repair_admissible,
    squash_to_disk,
)

SQ2 = math.sqrt(2.0)


@pytest.mark.parametrize("bad", [
    dict(n=0), dict(c=0.0), dict(c=1.0), dict(restarts=0), dict(simplex_tol=0.0),
    dict(penalty_weight=-1.0), dict(n_grid=32), dict(seed=-1), dict(max_iters=0),
])
def test_config_validation(bad):
    with pytest.raises(ConfigError):
        SearchConfig(**bad).validate()


def test_objective_F_examples():
    assert objective_F(Poly([1.0]), Poly([0.0, SQ2]), 0.8) == pytest.approx(0.8838834764831844, abs=1e-12)
    p = Poly([0.4, -0.2j, 1.0])
    assert objective_F(p, p, 0.7) == pytest.approx(1.0, abs=1e-12)
    assert objective_F(Poly([1.0]), Poly([-0.9, 1.0]), 0.8, penalty_weight=1e3) == 2e3


def test_objective_F_scale_free():
    f, g = Poly([1.0, 0.2]), Poly([0.1, 2.0])
    assert objective_F(f * 3.0, g * 0.5j, 0.8) == pytest.approx(objective_F(f, g, 0.8), rel=1e-12)


def test_minimize_F_degree1():
    res = minimize_F(SearchConfig(n=1, c=0.8, restarts=8, seed=3))
    assert abs(res.objective - f1_closed_form(0.8)) <= 1e-3
    assert res.bound == "upper"
    assert bergman_norm(res.witness_f) == pytest.approx(1.0, abs=1e-9)
    assert bergman_norm(res.witness_g) == pytest.approx(1.0, abs=1e-9)
    sup = annulus_sup(QuotientPair(res.witness_f, res.witness_g), 0.8).value
    assert sup == pytest.approx(res.objective, abs=1e-12)
    # (1, sqrt(2) z) up to rotation and phase
    mf = np.abs(np.pad(res.witness_f.coeffs, (0, 2))[:2])
    mg = np.abs(np.pad(res.witness_g.coeffs, (0, 2))[:2])
    assert np.allclose(mf, [1.0, 0.0], atol=0.05)
    assert np.allclose(mg, [0.0, SQ2], atol=0.05)


def test_minimize_F_below_kappa1_is_trivial():
    res = minimize_F(SearchConfig(n=1, c=0.6, restarts=8))
    assert res.objective >= 1 - 1e-3
    assert res.objective <= 1 + 1e-9


def test_minimize_F_deterministic_across_threads():
    cfg = SearchConfig(n=1, c=0.85, restarts=4, seed=11)
    a = minimize_F(cfg.__class__(**{**cfg.__dict__, "workers": 1})).to_dict()
    b = minimize_F(cfg.__class__(**{**cfg.__dict__, "workers": 4})).to_dict()
    assert a == b


def test_minimize_F_beats_lower_bound():
    for c in (0.75, 0.9):
        res = minimize_F(SearchConfig(n=1, c=c, restarts=4))
        assert bound_F_lower(c) < res.objective <= 1 + 1e-9


def test_repair_admissible():
    f, g = Poly([0.9, 0.9]), Poly([0.0, 1.0])
    rf, rg = repair_admissible(f, g, 0.8)
    assert objective_FB_violation(rf, rg, 0.8) == 0.0
    assert bergman_norm(rf) <= 1 + 1e-12 and bergman_norm(rg) <= 1 + 1e-12


def test_maximize_FB_degree1():
    c = 0.9
    res = maximize_FB(SearchConfig(n=1, c=c, restarts=6))
    assert res.bound == "lower"
    assert c * c - 0.5 - 1e-3 <= res.objective <= bound_FB(c) + 1e-6
    assert res.diagnostics["violation"] == 0.0
    assert res.diagnostics["norm_f"] <= 1 + 1e-12
    assert res.diagnostics["norm_g"] <= 1 + 1e-12


def test_maximize_FB_below_kappa():
    res = maximize_FB(SearchConfig(n=1, c=0.25, restarts=4))
    assert res.objective <= 1e-3


def test_kappa_eps_validation():
    with pytest.raises(ConfigError):
        estimate_kappa_n(1, eps=0.5)
    with pytest.raises(ConfigError):
        estimate_kappa_n(1, eps=1e-5)


def test_kappa_sweep_flags_non_monotone(monkeypatch, caplog):
    fake = {1: (0.70, 0.71), 2: (0.72, 0.73)}

    def estimate(n, eps, base_config):
        lo, hi = fake[n]
        return KappaEstimate(n=n, lower=lo, upper=hi, eps=eps, evaluations=0)

    monkeypatch.setattr(search, "estimate_kappa_n", estimate)
    out = kappa_sweep([1, 2])
    assert out[0].diagnostics == []
    assert any("NonMonotoneBracket" in d for d in out[1].diagnostics)
    assert "NonMonotoneBracket" in caplog.text


def test_squash_to_disk():
    for u, v in [(0, 0), (1, 2), (1e3, -1e3), (-0.1, 0.05)]:
        assert abs(squash_to_disk(u, v)) <= 0.95 * (1 + 1e-15)


def test_minimize_F_blaschke_degree1():
    res = minimize_F_blaschke(SearchConfig(n=1, c=0.8, restarts=3))
    assert res.objective <= 1.0
    assert abs(res.objective - f1_closed_form(0.8)) < 1e-3
    assert bergman_norm(res.witness_f) == pytest.approx(1.0, abs=1e-9)
    assert bergman_norm(res.witness_g) == pytest.approx(1.0, abs=1e-9)


def test_blaschke_pair_at_origin_gives_one():
    from korenblum.blaschke import BlaschkeProduct
    from korenblum.search import blaschke_pair_objective
    B = BlaschkeProduct((0.0,))
    val, _ = blaschke_pair_objective(B, B, 0.7)
    assert val == pytest.approx(1.0, abs=1e-12)


# -- slower checks ---------------------------------------------------------------

@pytest.mark.slow
@pytest.mark.parametrize("c", [0.72, 0.85, 0.95])
def test_degree1_oracle(c):
    res = minimize_F(SearchConfig(n=1, c=c, restarts=64))
    assert abs(res.objective - f1_closed_form(c)) <= 1e-3


@pytest.mark.slow
def test_nesting_degree2():
    for c in (0.75, 0.85):
        one = minimize_F(SearchConfig(n=1, c=c, restarts=8)).objective
        two = minimize_F(SearchConfig(n=2, c=c, restarts=8)).objective
        assert two <= one + 2e-3


@pytest.mark.slow
def test_monotone_trends_on_grid():
    cs = np.linspace(0.72, 0.95, 20)
    f_vals = [minimize_F(SearchConfig(n=1, c=c, restarts=8)).objective for c in cs]
    fb_vals = [maximize_FB(SearchConfig(n=1, c=c, restarts=4)).objective for c in cs]
    assert np.all(np.diff(f_vals) <= 2e-3)
    assert np.all(np.diff(fb_vals) >= -2e-3)
