"""Brute-force Hilbert-Schmidt mass of the off-diagonal block K+.

hs^2 = sum_{-W<=m<=-1, 1<=n<=W} exp(-2a (m + delta_m - n)^2), exact rationals
replaced by 50-digit floats.
"""
import mpmath as mp

mp.mp.dps = 50


def hs_sq(a, W, delta):
    return mp.fsum(mp.exp(-2 * a * (m + delta(m) - n) ** 2) for m in range(-W, 0) for n in range(1, W + 1))


print("delta=0 a=1 W=20:", mp.nstr(hs_sq(1, 20, lambda m: 0), 17))
print("delta=0 a=1 W=6:", mp.nstr(hs_sq(1, 6, lambda m: 0), 17))
print("delta=0 a=2 W=20:", mp.nstr(hs_sq(2, 20, lambda m: 0), 17))
print("periodic (0.45,-0.35) a=1 W=20:", mp.nstr(hs_sq(1, 20, lambda m: 0.45 if m % 2 == 0 else -0.35), 17))
print("e^-8:", mp.nstr(mp.exp(-8), 17))
