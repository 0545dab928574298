"""The digraph on Z_5 with steps 1 and 2, by hand and by machine.

Every degree has a ten-dimensional space of allowed chains, spanned by the
monotone paths (alpha) and the alternating sums with one double step (beta).
On a Fourier mode the boundary is a 2x2 matrix of Laurent polynomials whose
determinant vanishes, which is why all homology above degree 1 cancels.

    python demos/c5_walkthrough.py
"""

from pathhom import circulant
from pathhom.constructions import (alpha_beta_boundary, alpha_beta_symbol, alpha_chain,
                                   beta_chain, recursion_variant)
from pathhom.pathcomplex import betti, boundary

g = circulant(5, (1, 2))
table = betti(g, 6)
print("dim Omega_m :", table.omega_dims)
print("betti       :", table.betti)
print()

for m in (1, 2, 3):
    print(f"alpha_0^({m}) =", alpha_chain(5, 0, m))
    print(f"beta_0^({m})  =", beta_chain(5, 0, m))
print()

# boundary of alpha in the alpha/beta basis, one degree down
for m in (3, 4, 5):
    al, be = alpha_beta_boundary(5, m)["alpha"]
    al, be = [int(x) for x in al], [int(x) for x in be]
    print(f"d alpha_0^({m}): alpha coords {al}, beta coords {be}  [{recursion_variant(5, m)}]")
print("d beta_0^(3)  =", boundary(beta_chain(5, 0, 3)))
print()

for m in (3, 4):
    (a, b), (c, d) = alpha_beta_symbol(5, m)
    print(f"symbol in degree {m}: [[{a}, {b}], [{c}, {d}]]   det = {a * d - b * c}")
