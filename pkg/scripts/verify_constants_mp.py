"""Recompute the worked constant values at 50 significant digits.

Independent of the ``sarc`` package: formulas are re-typed here with
mpmath arithmetic so that the float64 implementation can be checked
against them.  Run directly to print the table.
"""

from mpmath import mp, mpf, exp, log, sqrt

mp.dps = 50


def sigma_bar(kg, kh, L, LH, theta):
    return (2 * kg + kh + L + LH) / (1 - theta / 3)


def eps_floor(mu, eta, theta, sigma_min, sb, p, efp):
    t1 = (1 + (1 - theta / 3) * sb / sigma_min) * mu / (1 - eta)
    t2 = ((2 - theta / 3) * sb / (1 - eta)) * (24 * efp / ((p - mpf(1) / 2) * theta * sigma_min)) ** (mpf(2) / 3)
    return max(t1, t2)


def reliability_p(d1, d2, u_over_K):
    # with K = 1 so that u = u_over_K
    u = u_over_K
    return 1 - d1 - d2 - exp(-min(u * u / 2, u / 2))


def h_of_alpha(alpha, theta, eta, sigma_min, alpha_bar, eps):
    return (theta / 6) * (1 - eta) ** (mpf(3) / 2) * sigma_min * (1 / alpha + (1 - theta / 3) / alpha_bar) ** (-mpf(3) / 2) * eps ** (mpf(3) / 2)


def tail(t, s, p, p_hat, K):
    return 1 - exp(-((p - p_hat) ** 2) / (2 * p * p) * t) - exp(-min(s * s * t / (8 * K * K), s * t / (4 * K)))


def compute() -> dict:
    """Worked values keyed by name, as mpf."""
    half = mpf(1) / 2
    return {
        "sigma_bar(1,1,1,1,0.5)": sigma_bar(1, 1, 1, 1, half),
        "sigma_bar(2,1,1,1,0.3)": sigma_bar(2, 1, 1, 1, mpf("0.3")),
        "eps_floor(mu=0,eta=.5,theta=.5,smin=1,sb=6,p=.9,efp=1e-6)": eps_floor(0, half, half, 1, 6, mpf("0.9"), mpf("1e-6")),
        "p(d=.05,.05,u=4K)": reliability_p(mpf("0.05"), mpf("0.05"), 4),
        "p(d=.05,.05,u=2K)": reliability_p(mpf("0.05"), mpf("0.05"), 2),
        "h(alpha=1/6,theta=.5,eta=.5,smin=1,abar=1/6,eps=.1)": h_of_alpha(mpf(1) / 6, half, half, 1, mpf(1) / 6, mpf("0.1")),
        "tail(t=200,s=K,p=.7647,p_hat=.6)": tail(200, 1, mpf("0.7647"), mpf("0.6"), 1),
        "secular_root(H=I,g=1,sigma=1)": (sqrt(5) - 1) / 2,
        "chi2_2_quantile(0.95)": -2 * log(mpf("0.05")),
    }


if __name__ == "__main__":
    for name, value in compute().items():
        print(f"{name:60s} {mp.nstr(value, 20)}")
