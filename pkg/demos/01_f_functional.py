"""F on finite sequences: recursions, reversal and the splitting identity."""

from fractions import Fraction

from finjac import f_direct_sum, f_finite, f_split, truncate_left

x = (Fraction(1, 2), Fraction(-3), Fraction(2, 5), Fraction(7), Fraction(1, 3))
print("x =", ", ".join(map(str, x)))
print("F(x)                     =", f_finite(x))
print("sum over gapped subsets  =", f_direct_sum(x))
print("F(reversed x)            =", f_finite(x[::-1]))
print("F(Tx) - x1 x2 F(T^2 x)   =", f_finite(truncate_left(x)) - x[0] * x[1] * f_finite(truncate_left(x, 2)))
for k in range(1, len(x)):
    print(f"split at k={k}              =", f_split(x, k))
