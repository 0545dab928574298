"""Circulant graphs as discrete tori, and path versus clique homology.

    python demos/tori_and_cliques.py
"""

from pathhom import circulant
from pathhom.constructions import square_filler, w_cycle
from pathhom.digraph import (ConnectionSet, TorusLattice, circulant_digraph, symmetrize,
                             torus_circulant_iso)
from pathhom.pathcomplex import betti, boundary, clique_homology, is_boundary

for n, gammas in [(7, (3,)), (11, (2, 4)), (13, (3, 5))]:
    cert = torus_circulant_iso(TorusLattice(n, gammas))
    print(f"n={n} gammas={gammas}: invariants {cert.invariants}, valid {cert.valid}")
print()

g = circulant(7, (1, 3))
W = w_cycle(7, 1, 3)
print("directed steps {1,3} on Z_7, betti:", betti(g, 3).betti)
print("W is a cycle:", boundary(W).is_zero(), " W is a boundary:", is_boundary(g, W))

sym = symmetrize(ConnectionSet(7, (1, 3)))
gs = circulant_digraph(sym)
filler = -square_filler(7, 1, 3, sym.S) - square_filler(7, 4, 4, sym.S)
print("undirected: d(filler) == W:", boundary(filler) == W)
print("undirected path betti :", betti(gs, 2).betti)
print("undirected clique betti:", clique_homology(gs, 2).betti)
