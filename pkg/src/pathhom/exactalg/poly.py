"""Integer/rational Laurent polynomials, cyclotomic polynomials and the
cyclotomic residue fields Q[t]/Phi_q(t).

Dense coefficient lists are stored low degree first.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational as _Rational


def _norm(c):
    """Collapse integral Fractions to int so equality/hashing stays uniform."""
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (lists, low -> high)

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                  for i in range(n)])


def poly_divmod(a, b):
    """Long division a = q*b + r. Exact over Z when b is monic; otherwise
    Fractions may appear."""
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return [], a
    lead = b[-1]
    q = [0] * (len(a) - len(b) + 1)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1]
        if c == 0:
            continue
        if lead == 1:
            coef = c
        elif isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
            coef = c // lead
        else:
            coef = Fraction(c) / lead
        q[k] = coef
        for i, y in enumerate(b):
            r[k + i] -= coef * y
    return _trim([_norm(x) for x in q]), _trim([_norm(x) for x in r])


def poly_exact_div(a, b):
    q, r = poly_divmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def poly_reduce(a, modulus):
    """Remainder of a modulo a monic polynomial, with integer arithmetic."""
    a = list(a)
    d = len(modulus) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            off = k - d
            for i in range(d + 1):
                a[off + i] -= c * modulus[i]
    return _trim(a[:d])


# ---------------------------------------------------------------------------

_TERM_RE = re.compile(
    r"(?P<sign>[+-]?)(?P<coef>\d+(?:/\d+)?)?\*?(?P<var>t)?(?:\^(?P<exp>-?\d+))?")


class LaurentPoly:
    """Sparse Laurent polynomial in t with integer (or rational) coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if c:
                    clean[int(e)] = clean.get(int(e), 0) + c
        self._terms = {e: _norm(c) for e, c in clean.items() if c != 0}
        self._hash = None

    # constructors
    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, e, c=1):
        return cls({e: c})

    @classmethod
    def from_coeffs(cls, coeffs, shift=0):
        return cls({i + shift: c for i, c in enumerate(coeffs)})

    @classmethod
    def parse(cls, text):
        """Parse strings like ``"t^2 - 1"``, ``"1-t^5"``, ``"-t^-1 + 3"``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s:
            raise ValueError("empty polynomial")
        terms = {}
        pos = 0
        for m in _TERM_RE.finditer(s):
            if m.start() != pos or not m.group(0):
                raise ValueError(f"cannot parse polynomial {text!r}")
            pos = m.end()
            sign = -1 if m.group("sign") == "-" else 1
            coef, var, exp = m.group("coef"), m.group("var"), m.group("exp")
            if not coef and not var:
                raise ValueError(f"cannot parse polynomial {text!r}")
            c = Fraction(coef) if coef else 1
            e = (int(exp) if exp else 1) if var else 0
            terms[e] = terms.get(e, 0) + sign * c
            if pos == len(s):
                break
        if pos != len(s):
            raise ValueError(f"cannot parse polynomial {text!r}")
        return cls(terms)

    # inspection
    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    @property
    def min_exp(self):
        return min(self._terms) if self._terms else 0

    @property
    def max_exp(self):
        return max(self._terms) if self._terms else 0

    def coeff(self, e):
        return self._terms.get(e, 0)

    def to_poly(self):
        """Return ``(shift, coeffs)`` with self = t^shift * sum coeffs[i] t^i."""
        if not self._terms:
            return 0, []
        lo = self.min_exp
        out = [0] * (self.max_exp - lo + 1)
        for e, c in self._terms.items():
            out[e - lo] = c
        return lo, out

    def dense(self):
        """Coefficient list of an ordinary polynomial (requires min_exp >= 0)."""
        if self._terms and self.min_exp < 0:
            raise ValueError("negative exponents present; shift first")
        out = [0] * (self.max_exp + 1) if self._terms else []
        for e, c in self._terms.items():
            out[e] = c
        return out

    def shift(self, k):
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __call__(self, x):
        return sum(c * x ** e for e, c in self._terms.items())

    evaluate = __call__

    # arithmetic
    def _coerce(self, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, (int, Fraction)) or isinstance(other, _Rational):
            return LaurentPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for e, c in other._terms.items():
            terms[e] = terms.get(e, 0) + c
        return LaurentPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                terms[e1 + e2] = terms.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative powers of a Laurent polynomial are not closed")
        out = LaurentPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for e, c in sorted(self._terms.items(), reverse=True):
            mag = abs(c)
            sign = "-" if c < 0 else "+"
            if e == 0:
                body = str(mag)
            else:
                mono = "t" if e == 1 else f"t^{e}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


T = LaurentPoly.monomial(1)


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(q):
    if q < 1:
        raise ValueError("cyclotomic_polynomial needs q >= 1")
    num = [-1] + [0] * (q - 1) + [1]  # t^q - 1
    for d in range(1, q):
        if q % d == 0:
            num = poly_exact_div(num, list(_cyclotomic_coeffs(d)))
    return tuple(num)


def cyclotomic_polynomial(q: int) -> LaurentPoly:
    """Monic q-th cyclotomic polynomial, via t^q - 1 = prod_{d|q} Phi_d."""
    return LaurentPoly.from_coeffs(_cyclotomic_coeffs(q))


@lru_cache(maxsize=None)
def euler_phi(q: int) -> int:
    return sum(1 for k in range(1, q + 1) if gcd(k, q) == 1)


def divisors(n: int):
    return [d for d in range(1, n + 1) if n % d == 0]


def _laurent_residue(p: LaurentPoly, q: int):
    """Residue of p modulo Phi_q in Z[t] (well defined since t is a unit)."""
    phi = _cyclotomic_coeffs(q)
    if p.is_zero():
        return []
    if p.min_exp < 0:
        # t^-1 == t^(q-1) modulo t^q - 1, which Phi_q divides
        k = (-p.min_exp + q - 1) // q * q
        p = p.shift(k)
    return poly_reduce(p.dense(), phi)


class CyclotomicNumber:
    """An element of Q[t]/Phi_q(t), i.e. of Q(zeta_q)."""

    __slots__ = ("q", "residue")

    def __init__(self, q, residue):
        self.q = q
        phi = _cyclotomic_coeffs(q)
        res = list(residue)
        if len(res) >= len(phi):
            res = _reduce_rational(res, phi)
        self.residue = tuple(_norm(c) for c in _trim(res))

    @classmethod
    def from_laurent(cls, p: LaurentPoly, q: int):
        if any(isinstance(c, Fraction) for _, c in p.items()):
            den = 1
            for _, c in p.items():
                den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
            res = _laurent_residue(p * den, q)
            return cls(q, [Fraction(c, den) for c in res])
        return cls(q, _laurent_residue(p, q))

    def is_zero(self):
        return not self.residue

    def __bool__(self):
        return bool(self.residue)

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber(self.q, [other])
        if other.q != self.q:
            raise ValueError("cyclotomic numbers of different conductors")
        return other

    def __add__(self, other):
        other = self._check(other)
        n = max(len(self.residue), len(other.residue))
        a = list(self.residue) + [0] * (n - len(self.residue))
        b = list(other.residue) + [0] * (n - len(other.residue))
        return CyclotomicNumber(self.q, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.q, [-c for c in self.residue])

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        other = self._check(other)
        return CyclotomicNumber(self.q, poly_mul(self.residue, other.residue))

    __rmul__ = __mul__

    def inverse(self):
        if not self.residue:
            raise ZeroDivisionError("zero in Q(zeta_q)")
        # extended Euclid over Q[t]
        phi = [Fraction(c) for c in _cyclotomic_coeffs(self.q)]
        r0, r1 = phi, [Fraction(c) for c in self.residue]
        s0, s1 = [], [Fraction(1)]
        while r1:
            quo, rem = poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, poly_sub(s0, poly_mul(quo, s1))
        # r0 is a nonzero constant since Phi_q is irreducible
        c = Fraction(r0[0])
        return CyclotomicNumber(self.q, [Fraction(x) / c for x in s0])

    def __truediv__(self, other):
        return self * self._check(other).inverse()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber(self.q, [other])
        if not isinstance(other, CyclotomicNumber):
            return NotImplemented
        return self.q == other.q and self.residue == other.residue

    def __hash__(self):
        return hash((self.q, self.residue))

    def __repr__(self):
        return f"CyclotomicNumber(q={self.q}, {list(self.residue)})"


def _reduce_rational(a, modulus):
    a = list(a)
    d = len(modulus) - 1
    for k in range(len(a) - 1, d - 1, -1):
        c = a[k]
        if c:
            off = k - d
            for i in range(d + 1):
                a[off + i] -= c * modulus[i]
    return a[:d]
