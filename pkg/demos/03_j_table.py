"""A window of the antisymmetric matrix J(m, n; w) and its three evaluators."""

from fractions import Fraction

from finjac import j_entry, j_entry_f, j_entry_recurrence

w = Fraction(1, 3)
span = range(-3, 4)
print(f"J(m, n; {w}) for m, n in -3..3")
for m in span:
    print(" ".join(f"{str(j_entry(m, n, w)):>9}" for n in span))

m, n = 2, 5
print(f"\nJ({m},{n}): closed {j_entry(m, n, w)}, recurrence {j_entry_recurrence(m, n, w)}, via F {j_entry_f(m, n, w)}")
