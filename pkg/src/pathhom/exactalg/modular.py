"""Ranks of Laurent matrices at a root of unity reduced modulo a prime.

For a prime p = 1 (mod q) the field F_p contains a primitive q-th root of
unity z, and t -> z is the reduction of Z[zeta_q] at a prime above p. Rank
can only drop under reduction, so ``modp_rank(m, q) <= cyc_rank(m, q)``.
That one-sided bound is what makes the result usable exactly: if the reduced
complex is exact in some degree, so is the complex over Q(zeta_q).
"""

from __future__ import annotations

from functools import lru_cache

import flint

from .poly import LaurentPoly

_START = 1 << 30


def _prime_factors(k):
    out, d = [], 2
    while d * d <= k:
        if k % d == 0:
            out.append(d)
            while k % d == 0:
                k //= d
        d += 1
    if k > 1:
        out.append(k)
    return out


@lru_cache(maxsize=None)
def prime_for_conductor(q: int, index: int = 0):
    """The ``index``-th prime p > 2^30 with q | p - 1, and a primitive q-th
    root of unity in F_p. Returns ``(p, z)``."""
    if q < 1:
        raise ValueError("conductor must be >= 1")
    k = _START // q + 1
    found = -1
    while True:
        p = k * q + 1
        if flint.fmpz(p).is_prime():
            found += 1
            if found == index:
                break
        k += 1
    if q == 1:
        return p, 1
    qf = _prime_factors(q)
    for g in range(2, p):
        z = pow(g, (p - 1) // q, p)
        if all(pow(z, q // r, p) != 1 for r in qf):
            return p, z
    raise ArithmeticError("no primitive root found")   # unreachable for prime p


def _evaluate(e: LaurentPoly, q, p, z):
    s = 0
    for k, c in e.items():
        s += int(c) * pow(z, k % q, p)
    return s % p


def modp_rank_sparse(nrows: int, ncols: int, triples, q: int, index: int = 0) -> int:
    """``modp_rank`` for a matrix given as ``(i, j, LaurentPoly)`` triples."""
    if not nrows or not ncols:
        return 0
    p, z = prime_for_conductor(q, index)
    flat = [0] * (nrows * ncols)
    for i, j, e in triples:
        flat[i * ncols + j] = _evaluate(e, q, p, z)
    return flint.nmod_mat(nrows, ncols, flat, p).rank()


def sparse_triples(m):
    """Nonzero entries of a Laurent matrix as ``(i, j, LaurentPoly)``, checking
    that all coefficients are integers."""
    out = []
    for i, row in enumerate(m):
        for j, e in enumerate(row):
            if not e:
                continue
            if not isinstance(e, LaurentPoly):
                e = LaurentPoly.const(e)
            if any(getattr(c, "denominator", 1) != 1 for _, c in e.items()):
                raise ValueError("modular ranks need integer coefficients")
            out.append((i, j, e))
    return out


def modp_rank(m, q: int, index: int = 0) -> int:
    """Rank of the Laurent matrix ``m`` (integer coefficients) at a primitive
    q-th root of unity in F_p; a lower bound for the rank over Q(zeta_q)."""
    if not m or not m[0]:
        return 0
    return modp_rank_sparse(len(m), len(m[0]), sparse_triples(m), q, index)
