"""Collapsing the steps {1..d} onto {1, 2}.

First the local recipe: split the first long step of each path and correct
by a boundary. It works on single edges but can push an allowed chain out of
the allowed complex, as the second example shows. Then the equivariant
construction solved degree by degree, whose homotopy identity is checked
exactly.

    python demos/retraction.py
"""

from pathhom.constructions import (AlgebraicRetraction, RetractionError, homotopy_H, pi_step,
                                   retraction_suite, split_h)
from pathhom.pathcomplex import Chain

e = Chain.path
n, d = 12, 3

u = e(0, 3)
print("u          =", u)
print("h(u)       =", split_h(u, n, d))
print("pi(u)      =", pi_step(u, n, d))
print("certificate:", homotopy_H(u, n, d).valid)
print()

x = e(0, 3, 5) - e(0, 2, 5)
print("x          =", x)
try:
    pi_step(x, n, d)
except RetractionError as exc:
    print(f"local step fails ({exc.kind}): {exc}")
print()

alg = AlgebraicRetraction(n, d, 3)
cert = alg.certificate(x)
print("algebraic Pi(x) =", cert.Pi)
print("algebraic H(x)  =", cert.H)
print("dH + Hd = Id - Pi on x:", cert.identity_holds, " Pi(x) in subcomplex:", cert.Pi_in_subcomplex)
print()

for method in ("algebraic", "local"):
    rep = retraction_suite(n, d, 3, method=method)
    print(f"{method:>9}: {rep.checked} checks, valid={rep.valid}, failures={len(rep.failures)}")
