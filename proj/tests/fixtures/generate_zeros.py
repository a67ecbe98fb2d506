#!/usr/bin/env python3
"""Regenerates the zero-ordinate fixtures with mpmath.

The engine never computes zeros; these tables are external input. Each table is
validated in-repo by spike matching against the prime side before other tests
rely on it.

Usage: python3 generate_zeros.py OUTDIR
"""
import sys

import mpmath

mpmath.mp.dps = 30


def write(path, header, values):
    with open(path, "w") as f:
        f.write(header)
        for v in values:
            f.write(mpmath.nstr(v, 18, strip_zeros=False) + "\n")


def zeta_zeros(count):
    return [mpmath.zetazero(n).imag for n in range(1, count + 1)]


def zeta_zeros_near(t_lo, t_hi):
    lo = int(mpmath.nzeros(t_lo)) + 1
    hi = int(mpmath.nzeros(t_hi))
    return [mpmath.zetazero(n).imag for n in range(lo, hi + 1)]


def dirichlet_zeros(chi, t_lo, t_hi, step=0.02):
    """Critical-line zeros of L(s, chi) in [t_lo, t_hi], refined by findroot."""
    f = lambda s: mpmath.dirichlet(s, chi)
    found = []
    t = mpmath.mpf(t_lo)
    prev = abs(f(mpmath.mpc(0.5, t - step)))
    cur = abs(f(mpmath.mpc(0.5, t)))
    while t < t_hi:
        nxt = abs(f(mpmath.mpc(0.5, t + step)))
        if cur < prev and cur <= nxt:
            root = mpmath.findroot(f, mpmath.mpc(0.5, t))
            if abs(root.real - 0.5) < 1e-12 and t_lo <= root.imag <= t_hi:
                if not found or abs(root.imag - found[-1]) > 1e-8:
                    found.append(root.imag)
        prev, cur = cur, nxt
        t += step
    return sorted(found)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else "."
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 1000
    write(f"{out}/zeta_zeros_100.txt",
          "# first 100 ordinates of nontrivial zeros of zeta (mpmath.zetazero)\n",
          zeta_zeros(100))
    write(f"{out}/zeta_zeros_1e6.txt",
          "# zeta zero ordinates in [1e6, 1e6+10] (mpmath.zetazero)\n",
          zeta_zeros_near(1000000, 1000010))
    # chi mod 5 with chi(2) = i: chi(1)=1, chi(2)=i, chi(4)=-1, chi(3)=-i.
    chi5 = [0, 1, 1j, -1j, -1]
    pos = dirichlet_zeros(chi5, 0.5, 60)
    write(f"{out}/chi5_zeros.txt",
          "# positive zero ordinates of L(s, chi mod 5, chi(2)=i) (mpmath.dirichlet + findroot)\n",
          pos[:20])
    neg = dirichlet_zeros(chi5, -60, -0.5)
    write(f"{out}/chi5_zeros_negative.txt",
          "# |ordinate| of negative zeros of L(s, chi mod 5, chi(2)=i), ascending\n",
          sorted(-g for g in neg)[:20])
    chi4 = [0, 1, 0, -1]
    write(f"{out}/chi4_zeros.txt",
          "# positive zero ordinates of L(s, chi_-4) (mpmath.dirichlet + findroot)\n",
          dirichlet_zeros(chi4, 0.5, 60)[:20])
    write(f"{out}/zeta_zeros_{n}.txt",
          f"# first {n} ordinates of nontrivial zeros of zeta (mpmath.zetazero)\n",
          zeta_zeros(n))


if __name__ == "__main__":
    main()
