"""Symbol matrices and their ranks at roots of unity.

Prints the boundary symbols of the steps {1, 2, 4} and {1, 2, 5} in low
degrees, their ranks at each conductor, and the per-mode homology for one
concrete n. The rank never drops away from the trivial mode, so the whole
homology is carried by lambda = 1.

    python demos/fourier_symbols.py
"""

from pathhom.circulant_fourier import betti_via_fourier, symbol_matrix, word_basis
from pathhom.digraph import ConnectionSet
from pathhom.exactalg import cyc_rank, generic_rank

for S in [(1, 2, 4), (1, 2, 5)]:
    c = ConnectionSet(None, S)
    print(f"S = {set(S)}")
    for m in (1, 2, 3):
        sm = symbol_matrix(c, m)
        print(f"  M_{m}: {sm.shape[0]}x{sm.shape[1]}, rows {sm.rows.pivots}")
        for row in sm.entries:
            print("     ", "  ".join(f"{str(x):>10}" for x in row))
    print("  dims of a single mode:", [len(word_basis(c, m)) for m in range(7)])
    for m in range(1, 6):
        M = symbol_matrix(c, m).as_lists()
        print(f"  rank M_{m}: generic {generic_rank(M)}, at q=1..10",
              [cyc_rank(M, q) for q in range(1, 11)])
    t = betti_via_fourier(ConnectionSet(12, S), 4)
    print("  n = 12 modes:", {q: v["dims"] for q, v in t.modes.items()})
    print("  n = 12 betti:", t.betti)
    print()
