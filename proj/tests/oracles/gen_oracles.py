"""Independent reference values for the test suites.

Computed with mpmath (arbitrary precision) and scipy quadrature; nothing here
touches the C++ implementation.  Run with `python3 gen_oracles.py`; the
printed numbers are frozen in oracle_values.hpp.
"""
import math

from mpmath import mp, mpf, mpc, besselk, cosh, erfc, exp, gamma, gammainc, loggamma, meijerg, quad, sqrt, inf
from scipy.integrate import quad as squad

mp.dps = 30
print("log_gamma(1+1i)", loggamma(mpc(1, 1)))
print("Gamma(0.5, 2) by quadrature", quad(lambda t: t ** (-0.5) * exp(-t), [2, inf]), gammainc(0.5, 2))
print("K_0(2) by quadrature", quad(lambda u: exp(-2 * cosh(u)), [0, 1, 2, 3, 5]), besselk(0, 2))
print("erfc(2)/2", erfc(2) / 2)


def pdf(mm, ms, om, g):
    b = sqrt(mpf(mm) * ms / om)
    return 2 * b ** (mm + ms) / (gamma(mm) * gamma(ms)) * g ** (mpf(mm + ms) / 2 - 1) * besselk(ms - mm, 2 * b * sqrt(g))


def cdf(mm, ms, om, g):
    return meijerg([[1], []], [[mm, ms], [0]], mpf(mm) * ms / om * g) / (gamma(mm) * gamma(ms))


print("GK CDF (1,2,1) at 1, quadrature of the PDF", quad(lambda g: pdf(1, 2, 1, g), [0, 0.5, 1]))
for g in [0.1, 1, 5, 20, 100]:
    print("GK CDF (2,4,5) at", g, cdf(2, 4, 5, g))

mp.dps = 18


def ber(mm1, ms1, mm2, ms2, om, p, q):
    c = q ** p / (2 * math.gamma(p))
    f = lambda g: c * math.exp(-q * g) * g ** (p - 1) * float(cdf(mm1, ms1, om, g) * cdf(mm2, ms2, om, g))
    a = squad(f, 0, p / q, epsrel=1e-11, epsabs=0, limit=200)
    b = squad(f, p / q, math.inf, epsrel=1e-11, epsabs=0, limit=200)
    return a[0] + b[0]


print("BER reference point", ber(1, 2, 1, 2, 10 ** 1.5, 0.5, 1))
for name, p, q in [("bpsk", 0.5, 1), ("dpsk", 1, 1), ("bfsk", 0.5, 0.5)]:
    for snr in [0, 5, 10, 15, 20]:
        print("BER inid grid", name, snr, ber(1, 0.5, 2, 4, 10 ** (snr / 10), p, q))
