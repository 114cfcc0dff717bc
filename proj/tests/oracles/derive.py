"""Independent reference values for the unit tests (mpmath / scipy, no shared code).

Run once; the printed values are frozen in tests/unit/reference_values.hpp.
"""
import math

import mpmath as mp
import numpy as np
from scipy.stats import levy_stable

mp.mp.dps = 30


def K(psi, x):
    # (1/pi) int_0^inf (1 - cos xs)/psi(s) ds: body on [0, 1], oscillatory tail by quadosc
    body = mp.quad(lambda s: (1 - mp.cos(x * s)) / psi(s), [0, 1])
    tail1 = mp.quad(lambda s: 1 / psi(s), [1, mp.inf])
    tail2 = mp.quadosc(lambda s: mp.cos(x * s) / psi(s), [1, mp.inf], omega=x)
    return (body + tail1 - tail2) / mp.pi


def u0(psi, lam):
    return mp.quad(lambda s: 1 / (lam + psi(s)), [0, 1, mp.inf]) / mp.pi


def K_lambda(psi, x, lam):
    return K(lambda s: lam + psi(s), x)


def stable(a):
    return lambda s: s ** a


def cauchy_bm(s):
    return s + s * s


def log_perturbed_psi(xi):
    nu = lambda x: (mp.log(2 + 1 / x) / x) ** 2 * mp.log(2 + x)
    f = lambda x: (1 - mp.cos(xi * x)) * nu(x)
    head = mp.quad(f, [0, 1 / xi, 1])
    tail = mp.quad(lambda x: nu(x), [1, mp.inf]) - mp.quadosc(lambda x: mp.cos(xi * x) * nu(x), [1, mp.inf], omega=xi)
    return 2 * (head + tail)


def atomic_psi(xi, a=1.5, N=10**7):
    # psi = 2 sum_k 2 sin^2(xi/2k) (k^a - (k-1)^a): exact float64 terms up to N,
    # summed with fsum, plus the midpoint-integral tail (error ~ N^{-3.5}).
    # nsum's extrapolation is off in the 6th digit here.
    k = np.arange(1, N + 1, dtype=np.float64)
    s = np.sin(0.5 * xi / k)
    head = mp.fsum((2 * s * s * (k ** a - (k - 1) ** a))[::-1].tolist())
    tail = mp.quad(lambda q: 2 * mp.sin(xi / (2 * q)) ** 2 * (q ** a - (q - 1) ** a), [N + 0.5, mp.inf])
    return 2 * (head + tail)


def point_tail(psi, x, t, u0_closed=None):
    # P^x(T_0 > t) = L^{-1}[(u^lam(0) - u^lam(x)) / (lam u^lam(0))](t), Talbot contour
    # (complex lam); Stehfest at 30 digits only gives ~1e-7 here.
    def F(lam):
        z = u0_closed(lam) if u0_closed else u0(psi, lam)
        ux = mp.quadosc(lambda s: mp.cos(x * s) / (lam + psi(s)), [0, mp.inf], omega=x) / mp.pi
        return (z - ux) / (lam * z)
    with mp.workdps(25):
        return mp.invertlaplace(F, t, method="talbot")


def stable_u0(a):
    a = mp.mpf(a)
    return lambda lam: lam ** (1 / a - 1) / (a * mp.sin(mp.pi / a))


def kappa(psi, xi):
    return mp.exp(mp.quad(lambda z: mp.log(psi(xi * z)) / (1 + z * z), [0, 1 / xi, 1, mp.inf]) / mp.pi)


def renewal_V(psi, x):
    # Stehfest needs many digits; degrees 24 and 32 agree to 1e-12 at 60 digits
    with mp.workdps(60):
        return mp.invertlaplace(lambda s: 1 / (s * kappa(psi, s)), x, method="stehfest", degree=32)


out = {}
out["stable15_K_1"] = K(stable(1.5), 1)
out["stable15_K_2p5"] = K(stable(1.5), 2.5)
# |xi|^a, 1 < a < 2: K(x) = -Gamma(1 - a) cos(pi (a - 1)/2) x^{a-1} / pi
out["stable12_K_1"] = -mp.gamma(mp.mpf("-0.2")) * mp.cos(mp.pi * mp.mpf("0.2") / 2) / mp.pi
out["cauchy_bm_K_1"] = K(cauchy_bm, 1)
out["cauchy_bm_K_10"] = K(cauchy_bm, 10)
out["stable15_u0_2"] = u0(stable(1.5), 2)
out["cauchy_bm_u0_1"] = u0(cauchy_bm, 1)
out["stable15_Klambda_1_3"] = K_lambda(stable(1.5), 1, 3)
out["log_perturbed_psi_1"] = log_perturbed_psi(1)
out["log_perturbed_psi_30"] = log_perturbed_psi(30)
out["atomic15_psi_0p5"] = atomic_psi(0.5)
out["atomic15_psi_10"] = atomic_psi(10)
out["stable15_renewal_constant"] = 1 / mp.gamma(1.75)
out["asymptotic_factor_1p5"] = 1.5 * mp.gamma(1 - 1 / 1.5) * mp.sin(mp.pi / 1.5) ** 2 / mp.pi
out["stable15_point_tail_1_1"] = point_tail(stable(1.5), 1, 1, stable_u0(1.5))
out["cauchy_bm_point_tail_1_1"] = point_tail(cauchy_bm, 1, 1)
out["cauchy_bm_V_1"] = renewal_V(cauchy_bm, 1)
out["stable15_density_1_1"] = levy_stable.pdf(1.0, 1.5, 0.0)
out["stable15_cdf_1_2"] = levy_stable.cdf(1.0, 1.5, 0.0, scale=2 ** (1 / 1.5))
out["brownian_tail_1_1"] = math.erf(0.5)

for k, v in out.items():
    print(f"inline constexpr double {k} = {mp.nstr(mp.mpf(v), 17)};")
