"""Closed-form chains on circulant digraphs and the defect-reducing retraction
of C_n^{1..d} onto C_n^{1,2}."""

from __future__ import annotations

from dataclasses import dataclass

from .circulant_fourier import word_basis
from .digraph import ConnectionSet, circulant
from .exactalg import LaurentPoly, RankAccumulator, TrackedEchelon
from .pathcomplex import Chain, boundary, in_omega, is_allowed, omega_basis


def _steps_path(a, steps, n):
    v = [a % n]
    for s in steps:
        v.append((v[-1] + s) % n)
    return tuple(v)


# ---------------------------------------------------------------------------
# alpha / beta / gamma families for S = {1, 2} and S = {1, s}

def alpha_chain(n, a, m) -> Chain:
    """The monotone path a, a+1, ..., a+m."""
    if m < 0:
        raise ValueError("degree must be >= 0")
    return Chain({_steps_path(a, [1] * m, n): 1})


def beta_chain(n, a, m) -> Chain:
    """Alternating sum over the position j of the single +2 step:
    sum_j (-1)^(m-j) (a; 1^(j-1), 2, 1^(m-j))."""
    if m < 1:
        raise ValueError("beta chains start in degree 1")
    terms = {}
    for j in range(1, m + 1):
        steps = [1] * (j - 1) + [2] + [1] * (m - j)
        terms[_steps_path(a, steps, n)] = (-1) ** (m - j)
    return Chain(terms)


def commutator_square(n, a, s, t, S=None, allow_equal=False) -> Chain:
    """e_{a,a+s,a+s+t} - e_{a,a+t,a+s+t}.

    Equal steps are rejected unless ``allow_equal``, in which case the
    square is taken to be 0.
    """
    if S is not None and not (s % n in {x % n for x in S} and t % n in {x % n for x in S}):
        raise ValueError(f"steps {s}, {t} must lie in the connection set")
    if s % n == t % n:
        if not allow_equal:
            raise ValueError("commutator square needs s != t")
        return Chain()
    return Chain({_steps_path(a, [s, t], n): 1, _steps_path(a, [t, s], n): -1})


def w_cycle(n, s, t, S=None, allow_equal=False) -> Chain:
    out = Chain()
    for a in range(n):
        out = out + commutator_square(n, a, s, t, S, allow_equal)
    return out


def gamma_chain(n, a, s) -> Chain:
    return commutator_square(n, a, 1, s)


def square_filler(n, s, t, S) -> Chain:
    """Translation average of e_{a, a+s, a+r, a+r+s} with r = s + t."""
    steps = {x % n for x in S}
    r = (s + t) % n
    if s % n not in steps or t % n not in steps:
        raise ValueError("s and t must lie in the connection set")
    if r not in steps:
        raise ValueError(f"r = s + t = {r} is not in the connection set")
    return Chain({_steps_path(a, [s, t, s], n): 1 for a in range(n)})


# ---------------------------------------------------------------------------
# the alpha/beta boundary recursion on C_5^{1,2}

def alpha_beta_coordinates(c: Chain, n, m):
    """Coordinates of c in the basis {alpha_b^(m), beta_b^(m)}; returns
    ``(alpha_coeffs, beta_coeffs)`` indexed by b and checks the expansion."""
    al = [c.coeff(_steps_path(b, [1] * m, n)) for b in range(n)]
    # the (b; 2, 1, ..., 1) term of beta_b carries sign (-1)^(m-1)
    be = [(-1) ** (m - 1) * c.coeff(_steps_path(b, [2] + [1] * (m - 1), n)) for b in range(n)]
    recon = Chain()
    for b in range(n):
        recon = recon + al[b] * alpha_chain(n, b, m) + be[b] * beta_chain(n, b, m)
    if recon != c:
        raise ArithmeticError("chain is not in the alpha/beta span")
    return al, be


def alpha_beta_boundary(n, m):
    """Integer coordinates of the boundaries of alpha_0^(m) and beta_0^(m) in
    degree m-1. Returns ``{"alpha": (al, be), "beta": (al, be)}``."""
    return {"alpha": alpha_beta_coordinates(boundary(alpha_chain(n, 0, m)), n, m - 1),
            "beta": alpha_beta_coordinates(boundary(beta_chain(n, 0, m)), n, m - 1)}


def recursion_variant(n, m):
    """Which printed form of the boundary of alpha_a holds: "alpha_shift"
    (alpha_{a+1} term) or "beta_shift" (beta_{a+1} term)."""
    al, be = alpha_beta_boundary(n, m)["alpha"]
    sm = (-1) ** m
    alpha_form = (al[0] == sm and al[1 % n] == 1 and be[0] == -sm
                  and sum(1 for x in al if x) == 2 and sum(1 for x in be if x) == 1)
    beta_form = (al[0] == sm and be[1 % n] == 1 and be[0] == -sm
                 and sum(1 for x in al if x) == 1 and sum(1 for x in be if x) == 2)
    if alpha_form:
        return "alpha_shift"
    if beta_form:
        return "beta_shift"
    return "neither"


def alpha_beta_symbol(n, m):
    """2x2 Laurent matrix of the boundary on Fourier modes, columns being the
    images of (alpha, beta) in the (alpha, beta) basis one degree down."""
    exp = alpha_beta_boundary(n, m)
    cols = []
    for key in ("alpha", "beta"):
        al, be = exp[key]
        cols.append([sum((LaurentPoly.monomial(k) * int(x) for k, x in enumerate(v) if x),
                         LaurentPoly()) for v in (al, be)])
    # a term X_{a+k} contributes t^k; exponents above n/2 are folded to negatives
    def fold(p):
        out = LaurentPoly()
        for e, cf in p.items():
            out = out + LaurentPoly.monomial(e - n if 2 * e > n else e) * cf
        return out
    return [[fold(cols[j][i]) for j in range(2)] for i in range(2)]


# ---------------------------------------------------------------------------
# retraction of C_n^{1..d} onto C_n^{1,2}

#
# Two constructions live here. The local one splits the first long step of
# each path (operator h below); its defining properties are checked at
# runtime and violations raise RetractionError. The algebraic one builds an
# equivariant chain retraction and homotopy degree by degree with exact
# linear algebra; it is what the certificates in retraction_suite rely on.

class RetractionError(ArithmeticError):
    def __init__(self, kind, message, chain=None):
        super().__init__(message)
        self.kind = kind          # "left_omega" | "no_decrease" | "no_termination"
        self.chain = chain


@dataclass(frozen=True)
class DefectProfile:
    entries: tuple

    def __lt__(self, other):
        return self.entries < other.entries

    def is_zero(self):
        return not any(self.entries)

    def __iter__(self):
        return iter(self.entries)


def path_steps(p, n):
    return tuple((b - a) % n for a, b in zip(p, p[1:]))


def defect(p, d, n=None) -> DefectProfile:
    """Per-step excess over 2. ``p`` is a vertex path (needs n) or, with
    n=None, a step sequence."""
    steps = tuple(p) if n is None else path_steps(p, n)
    if any(not 1 <= s <= d for s in steps):
        raise ValueError(f"steps {steps} not in 1..{d}")
    return DefectProfile(tuple(max(0, s - 2) for s in steps))


def e_max(u: Chain, n, d):
    if u.is_zero():
        return None
    return max(defect(p, d, n) for p in u.support())


def _is_defect_free(u: Chain, n, d):
    return u.is_zero() or e_max(u, n, d).is_zero()


def _check_paths(u: Chain, n, d):
    if n <= 2 * d:
        raise ValueError(f"retraction needs n > 2d (n={n}, d={d})")
    for p in u.support():
        defect(p, d, n)


def split_h(u: Chain, n, d) -> Chain:
    """Insert v+1 at the first step >= 3; sign (-1)^j so that deleting the
    inserted vertex gives back the path with coefficient +1."""
    _check_paths(u, n, d)
    out = {}
    for p, c in u.items():
        steps = path_steps(p, n)
        j = next((r for r, s in enumerate(steps, 1) if s >= 3), None)
        if j is None:
            continue
        q = p[:j] + ((p[j - 1] + 1) % n,) + p[j:]
        out[q] = out.get(q, 0) + (-1) ** j * c
    return Chain(out)


def _pi(u, n, d):
    if u.is_zero():
        return u
    if u.degree == 0:
        return u - boundary(split_h(u, n, d))
    return u - boundary(split_h(u, n, d)) - split_h(boundary(u), n, d)


def pi_step(u: Chain, n, d) -> Chain:
    """One step of Id - (dh + hd) on Omega of C_n^{1..d}.

    Raises ValueError for inputs outside Omega and RetractionError when the
    output leaves Omega or the top defect profile fails to drop."""
    _check_paths(u, n, d)
    g = circulant(n, range(1, d + 1))
    if not in_omega(g, u):
        raise ValueError("input chain is not in Omega of C_n^{1..d}")
    out = _pi(u, n, d)
    if not in_omega(g, out):
        bad = [p for p in out.support() if not is_allowed(g, p)]
        if not bad and out.degree:
            bad = [f for f in boundary(out).support() if not is_allowed(g, f)]
        raise RetractionError("left_omega", f"pi(u) leaves Omega at {bad[:3]} for u = {u!r}", u)
    before = e_max(u, n, d)
    if before is not None and not before.is_zero():
        after = e_max(out, n, d)
        if after is not None and not after < before:
            raise RetractionError(
                "no_decrease", f"E_max went {before.entries} -> {after.entries} for u = {u!r}", u)
    return out


def _in_sub_complex(u, n, d):
    """u lies in Omega of C_n^{1,2}: u and its boundary use steps 1, 2 only."""
    if not _is_defect_free(u, n, d):
        return False
    return u.is_zero() or u.degree == 0 or _is_defect_free(boundary(u), n, d)


def _iterate(u, n, d):
    m = u.degree or 0
    # E_max of u drops at most (d-1)^m times, and that of du (d-1)^(m-1) times
    bound = (d - 1) ** m + ((d - 1) ** (m - 1) if m else 0)
    seq = [u]
    while not _in_sub_complex(seq[-1], n, d):
        if len(seq) > bound:
            raise RetractionError("no_termination",
                                  f"pi did not reach the {{1,2}} subcomplex in {bound} steps", u)
        seq.append(pi_step(seq[-1], n, d))
    return seq


def retract_Pi(u: Chain, n, d) -> Chain:
    return _iterate(u, n, d)[-1]


@dataclass
class HomotopyCertificate:
    n: int
    d: int
    u: Chain
    Pi: Chain
    H: Chain
    steps: int
    identity_holds: bool
    Pi_in_subcomplex: bool
    method: str = "local"

    @property
    def valid(self):
        return self.identity_holds and self.Pi_in_subcomplex

    def to_dict(self):
        return {"n": self.n, "d": self.d, "method": self.method, "u": self.u.to_json(),
                "Pi": self.Pi.to_json(), "H": self.H.to_json(), "steps": self.steps,
                "identity_holds": self.identity_holds,
                "Pi_in_subcomplex": self.Pi_in_subcomplex, "valid": self.valid}

    @classmethod
    def from_dict(cls, dct):
        return cls(dct["n"], dct["d"], Chain.from_json(dct["u"]), Chain.from_json(dct["Pi"]),
                   Chain.from_json(dct["H"]), dct["steps"], dct["identity_holds"],
                   dct["Pi_in_subcomplex"], dct.get("method", "local"))


def _local_H(u, n, d):
    seq = _iterate(u, n, d)
    H = Chain()
    for x in seq[:-1]:
        H = H + split_h(x, n, d)
    return H, seq


def _certify(n, d, u, Pi, H, H_du, steps, method):
    lhs = (Chain() if H.is_zero() else boundary(H)) + H_du
    g12 = circulant(n, (1, 2))
    sub = all(is_allowed(g12, p) for p in Pi.support()) and in_omega(g12, Pi)
    return HomotopyCertificate(n, d, u, Pi, H, steps, lhs == u - Pi, sub, method)


def homotopy_H(u: Chain, n, d) -> HomotopyCertificate:
    """Local construction: H(u) = sum of h over the pi-orbit of u, with
    dH(u) + H(du) = u - Pi(u) checked exactly. Raises RetractionError when
    the orbit leaves Omega or fails to terminate."""
    H, seq = _local_H(u, n, d)
    H_du = Chain()
    if not u.is_zero() and u.degree > 0:
        H_du = _local_H(boundary(u), n, d)[0]
    return _certify(n, d, u, seq[-1], H, H_du, len(seq) - 1, "local")


# ---------------------------------------------------------------------------
# algebraic retraction

def _shift(c: Chain, a, n):
    if not a:
        return c
    return Chain({tuple((v + a) % n for v in p): x for p, x in c.items()})


class AlgebraicRetraction:
    """Translation-equivariant chain retraction Pi of Omega(C_n^{1..d}) onto
    Omega(C_n^{1,2}) and homotopy H with dH + Hd = Id - Pi, in degrees
    0..m_max.

    Generators in degree m are word chains started at vertex 0: first a word
    basis of the {1,2} subcomplex (where Pi = Id and H = 0), then a
    complement. For a complement generator x, Pi(x) solves
    dPi(x) = Pi(dx) inside the subcomplex, and H(x) solves
    dH(x) = x - Pi(x) - H(dx) over nearby translates. The residual is a cycle
    of the big complex; in degree 1 its homology class is absorbed into
    Pi(x) using the monotone cycle. A failing solve raises ValueError: it
    would mean the inclusion is not a quasi-isomorphism in that degree.
    """

    def __init__(self, n, d, m_max):
        if n <= 2 * d or d < 2:
            raise ValueError(f"need d >= 2 and n > 2d (n={n}, d={d})")
        self.n, self.d, self.m_max = n, d, m_max
        self.big = ConnectionSet(n, tuple(range(1, d + 1)))
        small = ConnectionSet(n, (1, 2))
        self.gens, self.n_sub, self._word_solvers = [], [], []
        for m in range(m_max + 2):
            sub = list(word_basis(small, m).chains)
            acc = RankAccumulator()
            gens = []
            for c in sub:
                acc.add(c.terms)
                gens.append(c)
            for c in word_basis(self.big, m).chains:
                if acc.add(c.terms):
                    gens.append(c)
            if len(gens) != len(word_basis(self.big, m)):
                raise ArithmeticError("subcomplex generators are not independent")
            ws = TrackedEchelon()
            for i, c in enumerate(gens):
                ws.add(c.terms, i)
            self.gens.append(gens)
            self.n_sub.append(len(sub))
            self._word_solvers.append(ws)
        self.window = []
        self._Pi, self._H = [], []
        for m in range(m_max + 1):
            self._build(m)

    # chains <-> generator coordinates

    def place(self, m, i, a=0):
        return Chain({_steps_path(a, w, self.n): x for w, x in self.gens[m][i].items()})

    def coordinates(self, c: Chain):
        """``{(a, i): x}`` with c = sum x * tau^a(generator i)."""
        if c.is_zero():
            return {}
        m = c.degree
        by_start = {}
        for p, x in c.items():
            by_start.setdefault(p[0], {})[path_steps(p, self.n)] = x
        out = {}
        for a, vec in by_start.items():
            for i, x in self._word_solvers[m].solve(vec).items():
                out[(a, i)] = x
        return out

    def _apply(self, table, c: Chain):
        if c.is_zero():
            return Chain()
        acc = {}
        for (a, i), x in self.coordinates(c).items():
            for p, y in _shift(table[c.degree][i], a, self.n).items():
                acc[p] = acc.get(p, 0) + x * y
        return Chain(acc)

    def Pi(self, c: Chain) -> Chain:
        return self._apply(self._Pi, c)

    def H(self, c: Chain) -> Chain:
        return self._apply(self._H, c)

    # construction

    def _build(self, m):
        n = self.n
        k = self.n_sub[m]
        Pi = [self.place(m, i) for i in range(k)]
        H = [Chain() for _ in range(k)]
        if m == 0:
            self._Pi.append(Pi)
            self._H.append(H)
            self.window.append(0)
            return
        sub_solver = TrackedEchelon()
        for a in range(n):
            for i in range(k):
                sub_solver.add(boundary(self.place(m, i, a)).terms, (a, i))
        ys, rhos = [], []
        for i in range(k, len(self.gens[m])):
            x = self.place(m, i)
            dx = boundary(x)
            target = self._apply(self._Pi, dx)
            combo = sub_solver.solve(target.terms)
            y = Chain()
            for (a, j), cf in combo.items():
                y = y + cf * self.place(m, j, a)
            ys.append(y)
            rhos.append(x - y - self._apply(self._H, dx))
        cycle = Chain({(a, (a + 1) % n): 1 for a in range(n)}) if m == 1 else None
        r = 1
        while True:
            starts = sorted({a % n for a in range(-r, r + 1)})
            solver = TrackedEchelon()
            if cycle is not None:
                solver.add(cycle.terms, "cycle")
            for a in starts:
                for j in range(len(self.gens[m + 1])):
                    solver.add(boundary(self.place(m + 1, j, a)).terms, (a, j))
            try:
                combos = [solver.solve(rho.terms) for rho in rhos]
                break
            except ValueError:
                if len(starts) == n:
                    raise ValueError(f"degree-{m} residual is not a boundary; "
                                     "inclusion is not a quasi-isomorphism here") from None
                r += 1
        for y, combo in zip(ys, combos):
            lam = combo.pop("cycle", 0)
            Pi.append(y + lam * cycle if lam else y)
            z = {}
            for (a, j), cf in combo.items():
                for p, v in self.place(m + 1, j, a).items():
                    z[p] = z.get(p, 0) + cf * v
            H.append(Chain(z))
        self._Pi.append(Pi)
        self._H.append(H)
        self.window.append(r)

    def certificate(self, u: Chain) -> HomotopyCertificate:
        Pi, H = self.Pi(u), self.H(u)
        H_du = Chain() if u.is_zero() or u.degree == 0 else self.H(boundary(u))
        return _certify(self.n, self.d, u, Pi, H, H_du, 1, "algebraic")


@dataclass
class RetractionReport:
    n: int
    d: int
    m_max: int
    method: str
    checked: int
    sections_ok: bool        # Pi(u) = u on a basis of Omega of C_n^{1,2}
    homotopies_ok: bool
    failures: list

    @property
    def valid(self):
        return self.sections_ok and self.homotopies_ok

    def to_dict(self):
        return {"n": self.n, "d": self.d, "m_max": self.m_max, "method": self.method,
                "checked": self.checked, "sections_ok": self.sections_ok,
                "homotopies_ok": self.homotopies_ok, "valid": self.valid,
                "failures": [{"kind": k, "degree": m, "chain": c.to_json()}
                             for k, m, c in self.failures]}

    @classmethod
    def from_dict(cls, dct):
        return cls(dct["n"], dct["d"], dct["m_max"], dct["method"], dct["checked"],
                   dct["sections_ok"], dct["homotopies_ok"],
                   [(f["kind"], f["degree"], Chain.from_json(f["chain"]))
                    for f in dct["failures"]])


def retraction_suite(n, d, m_max, method="algebraic") -> RetractionReport:
    """Check Pi o i = Id on a basis of Omega(C_n^{1,2}) and the homotopy
    identity on the echelon basis of Omega(C_n^{1..d}), degrees <= m_max.

    With method="local" the first-long-step construction is used and every
    RetractionError is recorded as a failure (kind taken from the error)."""
    big, small = circulant(n, range(1, d + 1)), circulant(n, (1, 2))
    alg = AlgebraicRetraction(n, d, m_max) if method == "algebraic" else None
    failures, count, sec_ok, hom_ok = [], 0, True, True
    for m in range(m_max + 1):
        for u in omega_basis(small, m).chains:
            count += 1
            img = alg.Pi(u) if alg else _local_or_none(u, n, d)
            if img != u:
                sec_ok = False
                failures.append(("section", m, u))
        for u in omega_basis(big, m).chains:
            count += 1
            try:
                cert = alg.certificate(u) if alg else homotopy_H(u, n, d)
            except RetractionError as exc:
                hom_ok = False
                failures.append((exc.kind, m, u))
                continue
            if not cert.valid:
                hom_ok = False
                failures.append(("identity" if not cert.identity_holds else "subcomplex", m, u))
    return RetractionReport(n, d, m_max, method, count, sec_ok, hom_ok, failures)


def _local_or_none(u, n, d):
    try:
        return retract_Pi(u, n, d)
    except RetractionError:
        return None
