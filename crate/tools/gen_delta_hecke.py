#!/usr/bin/env python3
"""Write normalized Hecke eigenvalues tau(p)/p^(11/2) of the discriminant form.

tau(n) is read off q * prod (1 - q^n)^24 = q * (sum (-1)^k (2k+1) q^(k(k+1)/2))^8,
using exact integers and the sparse Jacobi series for the cube of eta.

usage: gen_delta_hecke.py PMAX OUT
"""
import sys


def primes_upto(n):
    mark = bytearray([1]) * (n + 1)
    mark[0:2] = b"\x00\x00"
    for p in range(2, int(n ** 0.5) + 1):
        if mark[p]:
            mark[p * p :: p] = bytearray(len(mark[p * p :: p]))
    return [i for i in range(n + 1) if mark[i]]


def tau_table(nmax):
    deg = nmax  # need coefficients of q^0..q^(nmax-1) of eta^24
    sparse = []
    k = 0
    while k * (k + 1) // 2 < deg:
        sparse.append((k * (k + 1) // 2, (-1) ** k * (2 * k + 1)))
        k += 1
    series = [0] * deg
    for e, c in sparse:
        series[e] = c
    for _ in range(7):
        out = [0] * deg
        for e, c in sparse:
            for i in range(deg - e):
                v = series[i]
                if v:
                    out[i + e] += c * v
        series = out
    # tau(n) = coefficient of q^(n-1)
    return [0] + series


def main():
    pmax = int(sys.argv[1])
    out = sys.argv[2]
    tau = tau_table(pmax + 1)
    assert tau[1] == 1 and tau[2] == -24 and tau[3] == 252 and tau[5] == 4830
    with open(out, "w", encoding="utf-8") as fh:
        fh.write("# Ramanujan Delta, level 1, weight 12: p  tau(p)/p^(11/2)\n")
        for p in primes_upto(pmax):
            fh.write(f"{p} {tau[p] / p ** 5.5!r}\n")


if __name__ == "__main__":
    main()
