"""K(w) = diag(-d..d) + w (E+ + E-): closed characteristic polynomial and spectrum."""

from fractions import Fraction

import numpy as np

from finjac import charpoly_closed, k_matrix, spectrum

d, w = 3, Fraction(1, 2)
print(f"chi_red for d={d}, w={w}:", [str(c) for c in charpoly_closed(d, w).coeffs])

for d, w in ((1, 1.0), (5, 2.0), (20, 7.5)):
    res = spectrum(d, w)
    dense = np.linalg.eigvalsh(k_matrix(d, w).to_dense().astype(float))
    print(f"\nd={d}, w={w}: {len(res.eigenvalues)} eigenvalues")
    print("  smallest positive:", res.eigenvalues[d + 1] if d else None)
    print("  max residual     :", float(res.residuals.max()))
    print("  max |diff| vs numpy eigvalsh:", float(np.max(np.abs(res.eigenvalues - dense))))
