"""Determinants and characteristic polynomials of tridiagonal matrices."""

from fractions import Fraction

from finjac import JacobiMatrix, charpoly_antisym, charpoly_oracle, det_constant_offdiag, det_oracle
from finjac.numeric import Poly

y = [Fraction(2), Fraction(-1, 2), Fraction(3), Fraction(5, 4), Fraction(-2)]
w = Fraction(2, 3)
print("det via F formula :", det_constant_offdiag(y, w))
print("det via recurrence:", det_oracle(JacobiMatrix(y, w, centered=True)))

lam = [Fraction(1, 2), Fraction(3)]
red = charpoly_antisym(lam, w)
full = charpoly_oracle(JacobiMatrix([-lam[1], -lam[0], 0, lam[0], lam[1]], w, centered=True))
print("\nreduced characteristic polynomial:", [str(c) for c in red.coeffs])
print("(-1)^(d+1) z * reduced == det(K - z):", red * Poly.z() * (-1) ** (len(lam) + 1) == full)
