#!/usr/bin/env python3
"""Generate the shipped zero fixtures for zeta and the odd character mod 4.

Zeros are located as sign changes of the Hardy-type real function
Z(t) = exp(i*theta(t)) * L(1/2 + it) on a fine grid and refined with
Brent's method. L is evaluated through Euler-Maclaurin summation of
Hurwitz zeta values. Counts are checked against the Riemann-von Mangoldt
smooth term (Turing-style mean test) before the file is written.

usage: gen_zeros.py {zeta|chi4} HEIGHT OUT
"""
import math
import sys

import numpy as np
from scipy.optimize import brentq
from scipy.special import loggamma

# B_{2k}/(2k)! for k = 1..20
_BERN = [
    1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
    43867 / 798, -174611 / 330, 854513 / 138, -236364091 / 2730, 8553103 / 6,
    -23749461029 / 870, 8615841276005 / 14322, -7709321041217 / 510,
    2577687858367 / 6, -26315271553053477373 / 1919190, 2929993913841559 / 6,
    -261082718496449122051 / 13530,
]
_EM = [b / math.factorial(2 * k) for k, b in enumerate(_BERN, start=1)]


def hurwitz(s, a):
    """Hurwitz zeta at complex s (Re s = 1/2), shift a in (0, 1]."""
    t = abs(s.imag)
    n_terms = int(t / math.pi) + 30
    n = np.arange(n_terms, dtype=np.float64) + a
    head = np.exp(-s * np.log(n)).sum()
    big = n_terms + a
    tail = big ** (1 - s) / (s - 1) + 0.5 * big ** (-s)
    poch = s
    power = big ** (-s - 1)
    for k, coef in enumerate(_EM, start=1):
        tail += coef * poch * power
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        power /= big * big
    return head + tail


class Zeta:
    name = "zeta"

    def theta(self, t):
        return loggamma(0.25 + 0.5j * t).imag - 0.5 * t * math.log(math.pi)

    def value(self, t):
        return hurwitz(complex(0.5, t), 1.0)

    def smooth_count(self, t):
        # N(T) ~ theta(T)/pi + 1
        return self.theta(t) / math.pi + 1.0


class Chi4:
    name = "chi4"

    def theta(self, t):
        return 0.5 * t * math.log(4 / math.pi) + loggamma(0.75 + 0.5j * t).imag

    def value(self, t):
        s = complex(0.5, t)
        return 4 ** (-s) * (hurwitz(s, 0.25) - hurwitz(s, 0.75))

    def smooth_count(self, t):
        # zeros with 0 < gamma <= T; the completed function is real on the line
        return (self.theta(t) - self.theta(0.0)) / math.pi


def hardy(fam, t):
    z = np.exp(1j * fam.theta(t)) * fam.value(t)
    return z.real


def find_zeros(fam, height):
    zeros = []
    t0 = 0.05 if fam.name == "chi4" else 10.0
    prev_t, prev_z = t0, hardy(fam, t0)
    t = t0
    while t < height:
        spacing = 2 * math.pi / max(math.log(max(t, 10.0) / (2 * math.pi)), 1.0)
        step = min(0.05, spacing / 40)
        t = min(t + step, height)
        z = hardy(fam, t)
        if z == 0.0 or (z > 0) != (prev_z > 0):
            root = brentq(lambda u: hardy(fam, u), prev_t, t, xtol=1e-13, rtol=1e-15)
            zeros.append(root)
        prev_t, prev_z = t, z
    return zeros


def turing_check(fam, zeros, height):
    # mean of S(t) = N(t) - smooth(t) over the top stretch must be near 0
    sample = np.linspace(height * 0.9, height, 2001)
    arr = np.asarray(zeros)
    s_vals = [np.searchsorted(arr, u, side="right") - fam.smooth_count(u) for u in sample]
    mean = float(np.mean(s_vals))
    print(f"{fam.name}: {len(zeros)} zeros below {height}, mean S on top decile = {mean:.4f}",
          file=sys.stderr)
    if abs(mean) > 0.5:
        raise SystemExit("count check failed: a zero pair was probably missed")


def main():
    fam = {"zeta": Zeta, "chi4": Chi4}[sys.argv[1]]()
    height = float(sys.argv[2])
    out = sys.argv[3]
    zeros = find_zeros(fam, height)
    turing_check(fam, zeros, height)
    with open(out, "w", encoding="utf-8") as fh:
        label = "Riemann zeta" if fam.name == "zeta" else "L(s, chi_-4)"
        fh.write(f"# source {label}; Euler-Maclaurin + Brent, tools/gen_zeros.py\n")
        fh.write(f"# completeness {height:g}\n")
        fh.write("# half\n")
        for g in zeros:
            fh.write(f"{g:.12f}\n")


if __name__ == "__main__":
    main()
