import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from sarc.analysis import (
    Inapplicable,
    TheoryConstants,
    binomial_margin,
    c1_constant,
    compute_constants,
    eps_floor,
    h_of_alpha,
    mu_ceiling,
    reliability_p,
    sigma_bar,
    tail_bound,
    tail_floor,
    trace_stats,
)
from sarc.driver import SarcConfig, Trace, run
from sarc.oracles import exact_suite, laplace_gaussian_suite
from sarc.problems import make_problem

from conftest import load_script

# frozen from scripts/verify_constants_mp.py (50 significant digits, rounded)
EPS_FLOOR_EXAMPLE = 0.053523377561045921627
P_U4K = 0.76466471676338730811
P_U2K = 0.5321205588285576784
H_EXAMPLE = 0.000025537873578153109328
TAIL_EXAMPLE = 0.99033064104396298704


def tail_constants(p=0.7647, K=1.0, c1=1000.0, R=1.0):
    # preconditions hold at epsilon = 1: the p_hat window is (0.501, p) and the t floor is near 10
    return TheoryConstants(sigma_bar=6.0, alpha_bar=1 / 6, K=K, u=4 * K, p=p, eps_floor=0.0, c1=c1, R=R)


def test_sigma_bar_examples():
    assert sigma_bar(1, 1, 1, 1, 0.5) == pytest.approx(6.0, rel=1e-15)
    assert sigma_bar(2, 1, 1, 1, 0.3) == pytest.approx(7 / 0.9, rel=1e-15)
    assert sigma_bar(0, 0, 3.0, 0, 1e-12) == pytest.approx(3.0, rel=1e-11)


@pytest.mark.parametrize("theta", [0.0, 1.0])
def test_sigma_bar_rejects_theta(theta):
    with pytest.raises(ValueError):
        sigma_bar(1, 1, 1, 1, theta)


def test_eps_floor_examples():
    assert eps_floor(0, 0.5, 0.5, 1, 6, 0.9, 1e-6) == pytest.approx(EPS_FLOOR_EXAMPLE, rel=1e-12)
    # vanishing bias drives the floor to zero like eps_f'^(2/3)
    assert eps_floor(0, 0.5, 0.5, 1, 6, 0.9, 1e-30) == pytest.approx(EPS_FLOOR_EXAMPLE * 1e-16, rel=1e-12)
    with pytest.raises(ValueError):
        eps_floor(0, 0.5, 0.5, 1, 6, 0.5, 1e-6)


def test_eps_floor_matches_extended_precision():
    mp_script = load_script("verify_constants_mp")
    rng = np.random.default_rng(0)
    for _ in range(10):
        mu, eta, theta = rng.uniform(0, 1e-3), rng.uniform(0.05, 0.95), rng.uniform(0.05, 0.95)
        smin, sb, p, efp = rng.uniform(0.01, 2), rng.uniform(1, 50), rng.uniform(0.55, 1), 10 ** rng.uniform(-10, -3)
        ref = mp_script.eps_floor(*(mp_script.mpf(float(v)) for v in (mu, eta, theta, smin, sb, p, efp)))
        assert eps_floor(mu, eta, theta, smin, sb, p, efp) == pytest.approx(float(ref), rel=1e-13)


def test_reliability_examples():
    r = reliability_p(0.05, 0.05, 0.0, 4.0, 1.0, 0.0)
    assert (r.K, r.u) == (1.0, 4.0)
    assert r.p == pytest.approx(P_U4K, rel=1e-14) and r.p_above_half
    assert reliability_p(0.05, 0.05, 0.0, 2.0, 1.0, 0.0).p == pytest.approx(P_U2K, rel=1e-14)
    assert reliability_p(0.0, 0.0, 0.0, 1e3, 1.0, 0.0).p == 1.0
    assert reliability_p(0.0, 0.0, 0.0, 1.0, math.inf, 0.0).p == 1.0


def test_reliability_uses_larger_scale_when_a_positive():
    r = reliability_p(0.0, 0.0, 0.0, 1.0, 10.0, 0.01, C=2.0)
    assert r.K == pytest.approx(2.0 * math.log(2) / 0.01)


def test_reliability_needs_margin():
    with pytest.raises(ValueError):
        reliability_p(0.05, 0.05, 1e-3, 1e-3, 1.0, 0.0)


def test_h_example():
    assert h_of_alpha(1 / 6, 0.5, 0.5, 1.0, 1 / 6, 0.1) == pytest.approx(H_EXAMPLE, rel=1e-12)
    with pytest.raises(ValueError):
        h_of_alpha(0.0, 0.5, 0.5, 1.0, 1 / 6, 0.1)


@settings(max_examples=100)
@given(st.floats(1e-6, 1e3), st.floats(1e-6, 1e3))
def test_h_monotone(a1, a2):
    lo, hi = sorted((a1, a2))
    assert h_of_alpha(hi, 0.5, 0.3, 0.2, 0.1, 0.01) >= h_of_alpha(lo, 0.5, 0.3, 0.2, 0.1, 0.01)


@settings(max_examples=100)
@given(
    st.floats(0.05, 0.95), st.floats(0.05, 0.95), st.floats(0.01, 10), st.floats(0.1, 100),
    st.floats(0.51, 1.0), st.floats(1e-12, 1e-2), st.floats(1.0001, 100),
)
def test_progress_beats_noise_above_floor(theta, eta, smin, sb, p, efp, factor):
    eps = factor * eps_floor(0.0, eta, theta, smin, sb, p, efp)
    assert h_of_alpha(1 / sb, theta, eta, smin, 1 / sb, eps) > 4 * efp / (p - 0.5)


@settings(max_examples=100)
@given(
    st.fractions(Fraction(0), Fraction(1, 10)), st.fractions(Fraction(1, 20), Fraction(19, 20)),
    st.fractions(Fraction(1, 20), Fraction(19, 20)), st.fractions(Fraction(1, 100), Fraction(10)),
    st.fractions(Fraction(1), Fraction(100)), st.fractions(Fraction(1, 1000), Fraction(1)),
)
def test_mu_condition_inverts_first_floor_term(mu, eta, theta, smin, sb, eps):
    term1 = (1 + (1 - theta / 3) * sb / smin) * mu / (1 - eta)
    assert (mu <= mu_ceiling(eta, theta, smin, sb, eps)) == (eps >= term1)


def test_tail_example():
    c = tail_constants()
    assert tail_bound(200, c.K, 0.6, c, 1.0, 0.0) == pytest.approx(TAIL_EXAMPLE, rel=1e-12)


def test_tail_inapplicable_reasons():
    c = tail_constants()
    r = tail_bound(200, c.K, 0.8, c, 1.0, 0.0)
    assert isinstance(r, Inapplicable) and r.reason.startswith("p_hat < p")
    r = tail_bound(5, c.K, 0.6, c, 1.0, 0.0)
    assert isinstance(r, Inapplicable) and r.reason.startswith("t >= R/(")
    r = tail_bound(200, c.K, 0.6, tail_constants(c1=1e-3), 1.0, 0.0)
    assert isinstance(r, Inapplicable) and r.reason.startswith("p_hat > 1/2")


def test_tail_floor_matches_applicability():
    c = tail_constants()
    floor = tail_floor(c.K, 0.6, c, 1.0, 0.0)
    assert not isinstance(tail_bound(math.ceil(floor), c.K, 0.6, c, 1.0, 0.0), Inapplicable)
    assert isinstance(tail_bound(math.ceil(floor) - 1, c.K, 0.6, c, 1.0, 0.0), Inapplicable)
    assert tail_floor(c.K, 0.9, c, 1.0, 0.0) == math.inf


@settings(max_examples=50)
@given(st.floats(0.55, 0.99), st.floats(0.0, 5.0), st.floats(0.01, 10.0))
def test_tail_monotone_in_t(p, s, K):
    c = tail_constants(p=p, K=K, R=0.5)
    p_hat = 0.5 * (0.5 + (4e-9 + s) / c.c1 + p)
    assume(p_hat > 0.5 + (4e-9 + s) / c.c1)
    vals = [tail_bound(t, s, p_hat, c, 1.0, 1e-9) for t in np.geomspace(1, 1e6, 60)]
    vals = [v for v in vals if not isinstance(v, Inapplicable)]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_binomial_margin():
    assert binomial_margin(0.5, 100) == pytest.approx(0.15)
    assert binomial_margin(1.0, 100) == 0.0


def test_compute_constants_exact_quadratic():
    p = make_problem("quadratic", 2)
    oracles = exact_suite(p)
    cfg = SarcConfig(epsilon=1e-2)
    c = compute_constants(p, oracles, cfg)
    assert c.sigma_bar == pytest.approx(4 / (1 - 0.5 / 3))
    assert c.K == 0.0 and c.p == pytest.approx(0.9) and c.within_theory
    assert c.c1 == pytest.approx(c1_constant(0.5, 0.5, 0.1, c.sigma_bar))
    assert c.R > (p.value(p.x0) - p.phi_star) / (c.c1 * 1e-3)
    assert all(isinstance(v, (int, float, str, bool)) for v in c.to_dict().values())


def test_noisy_constants_label_small_epsilon_outside():
    p = make_problem("quadratic", 2)
    oracles = laplace_gaussian_suite(p, 1e-9, 1.0, 1.0)
    cfg = SarcConfig(mu=1e-4, eps_f_prime=5e-9)
    assert compute_constants(p, oracles, cfg, epsilon=0.02).within_theory
    assert not compute_constants(p, oracles, cfg, epsilon=1e-3).within_theory


def test_trace_stats_single_trace():
    p = make_problem("quadratic", 1)
    tr = run(p, exact_suite(p), SarcConfig(epsilon=1e-3))
    st_ = trace_stats([tr])
    assert st_.ecdf(tr.T_eps - 1) == 0.0 and st_.ecdf(tr.T_eps) == 1.0
    assert st_.pooled_true_freq == 1.0


def test_trace_stats_cdf_from_stopping_time():
    st_ = trace_stats([Trace([], 3, np.zeros(1), 0.1)])
    assert [v for _, v in st_.cdf_table()] == [0.0, 0.0, 0.0, 1.0]
    assert st_.median_T() == 3.0


def test_trace_stats_exact_traces_are_degenerate():
    p = make_problem("nonconvex_sum_sin", 2)
    traces = [run(p, exact_suite(p), SarcConfig(epsilon=1e-3, master_seed=s)) for s in range(5)]
    st_ = trace_stats(traces)
    assert len(set(st_.T_eps)) == 1


def test_trace_stats_needs_input():
    with pytest.raises(ValueError):
        trace_stats([])
