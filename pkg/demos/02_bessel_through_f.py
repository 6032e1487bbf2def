"""J_nu(2w) = w^nu / Gamma(nu+1) * F(w/(nu+1), w/(nu+2), ...), checked against mpmath."""

import mpmath

from finjac import bessel_j, bessel_ratio_cf, cf_limit, bessel_sequence

print(f"{'nu':>6} {'w':>6} {'via F':>22} {'mpmath':>22}")
for nu in (0, 1 / 3, 0.5, 2.7):
    for w in (0.5, 2.0, 5.0):
        print(f"{nu:6.3f} {w:6.2f} {bessel_j(nu, w):22.16f} {float(mpmath.besselj(nu, 2 * w)):22.16f}")

nu, w = 0.5, 1.0
ratio = w / (nu + 1) * cf_limit(bessel_sequence(nu, w), 1e-15)
print("\nJ_{3/2}(2)/J_{1/2}(2) from convergents:", ratio)
print("same from the classical fraction:     ", bessel_ratio_cf(nu, 2 * w))
