"""Digraphs, circulant digraphs and the discrete-torus model of circulant graphs."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from fractions import Fraction
from pathlib import Path

from .exactalg import int_det, smith_normal_form


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        edges = frozenset((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside vertex range 0..{self.n - 1}")
        object.__setattr__(self, "edges", edges)

    @cached_property
    def out_neighbors(self):
        out = [[] for _ in range(self.n)]
        for u, v in self.edges:
            out[u].append(v)
        return tuple(tuple(sorted(x)) for x in out)

    def has_edge(self, u, v):
        return (u, v) in self.edges

    def out_degree(self, v):
        return len(self.out_neighbors[v])

    def in_degree(self, v):
        return sum(1 for _, w in self.edges if w == v)

    def is_symmetric(self):
        return all((v, u) in self.edges for u, v in self.edges)

    def to_text(self):
        lines = [f"n={self.n}"] + [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ConnectionSet:
    """Steps of a circulant digraph.

    ``n=None`` means the steps are read as plain integers (no wrap-around);
    merged steps are then compared over Z, which is what the n-independent
    stability analysis needs.
    """

    n: int | None
    S: tuple

    def __post_init__(self):
        if self.n is None:
            steps = sorted(set(int(s) for s in self.S))
            if not steps or steps[0] <= 0:
                raise ValueError("integral connection sets need positive steps")
        else:
            if self.n < 2:
                raise ValueError("modulus must be at least 2")
            raw = [int(s) for s in self.S]
            if any(s % self.n == 0 for s in raw):
                raise ValueError("0 is not allowed in a connection set")
            steps = sorted(set(s % self.n for s in raw))
            if not steps:
                raise ValueError("connection set must be nonempty")
        object.__setattr__(self, "S", tuple(steps))

    def __contains__(self, s):
        if self.n is None:
            return s in self.S
        return s % self.n in self.S

    def __iter__(self):
        return iter(self.S)

    def __len__(self):
        return len(self.S)

    def merge(self, a, b):
        """Merged step of two consecutive steps, or None if the face is irregular."""
        r = a + b
        if self.n is not None:
            r %= self.n
            if r == 0:
                return None
        return r

    @property
    def no_wrap(self):
        """True for S = {1 < g1 < ... } with every element below n/2."""
        if self.S[0] != 1:
            return False
        return self.n is None or 2 * self.S[-1] < self.n


def circulant_digraph(c: ConnectionSet) -> Digraph:
    if c.n is None:
        raise ValueError("circulant digraph needs a modulus")
    return Digraph(c.n, frozenset((a, (a + s) % c.n) for a in range(c.n) for s in c.S))


def circulant(n, S):
    return circulant_digraph(ConnectionSet(n, tuple(S)))


def symmetrize(c: ConnectionSet) -> ConnectionSet:
    if c.n is None:
        raise ValueError("symmetrize needs a modulus")
    return ConnectionSet(c.n, tuple(set(c.S) | {(-s) % c.n for s in c.S}))


def weak_components(g: Digraph):
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        a, b = find(u), find(v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


# ---------------------------------------------------------------------------
# text formats

_CIRC_RE = re.compile(r"^circ:\s*n\s*=\s*(\d+)\s*;\s*S\s*=\s*([-\d,\s]+)$")


def parse_circ(spec: str) -> ConnectionSet:
    m = _CIRC_RE.match(spec.strip())
    if not m:
        raise ValueError(f"bad circulant spec {spec!r}; expected circ:n=<int>;S=<int>,...")
    steps = tuple(int(x) for x in m.group(2).split(",") if x.strip())
    return ConnectionSet(int(m.group(1)), steps)


def parse_digraph(text: str) -> Digraph:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("digraph text must start with a line 'n=<int>'")
    try:
        n = int(lines[0][2:])
        edges = []
        for ln in lines[1:]:
            u, v = ln.split()
            edges.append((int(u), int(v)))
    except ValueError as exc:
        raise ValueError(f"malformed digraph text: {exc}") from None
    if len(set(edges)) != len(edges):
        raise ValueError("duplicate edge in digraph text")
    return Digraph(n, frozenset(edges))


def load_source(source: str):
    """Resolve a ``circ:`` spec or a digraph file. Returns ``(digraph, connection_set)``,
    the latter being None for non-circulant sources."""
    if source.strip().startswith("circ:"):
        c = parse_circ(source)
        return circulant_digraph(c), c
    return parse_digraph(Path(source).read_text()), None


# ---------------------------------------------------------------------------
# discrete tori

@dataclass(frozen=True)
class TorusLattice:
    n: int
    gammas: tuple = ()

    def __post_init__(self):
        g = tuple(int(x) for x in self.gammas)
        object.__setattr__(self, "gammas", g)
        seq = (1,) + g
        if any(b <= a for a, b in zip(seq, seq[1:])):
            raise ValueError("need 1 < gamma_1 < ... < gamma_{d-1}")
        if g and not 2 * g[-1] < self.n:
            raise ValueError("gammas must stay below n/2")
        if self.n < 2:
            raise ValueError("n must be at least 2")

    @property
    def d(self):
        return len(self.gammas) + 1

    @property
    def connection(self):
        return (1,) + self.gammas


def torus_lattice_matrix(t: TorusLattice):
    d = t.d
    first = [t.n] + [-g for g in t.gammas]
    return [first] + [[int(i == j) for j in range(d)] for i in range(1, d)]


@dataclass
class TorusCertificate:
    n: int
    gammas: tuple
    invariants: tuple
    order: int
    vertex_map: dict          # coset representative (tuple) -> residue mod n
    valid: bool
    failure: str | None = None

    def to_dict(self):
        return {
            "n": self.n, "gammas": list(self.gammas), "invariants": list(self.invariants),
            "order": self.order, "valid": self.valid, "failure": self.failure,
            "vertex_map": [[list(k), v] for k, v in sorted(self.vertex_map.items())],
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["n"], tuple(d["gammas"]), tuple(d["invariants"]), d["order"],
                   {tuple(k): v for k, v in d["vertex_map"]}, d["valid"], d["failure"])


def torus_circulant_iso(t: TorusLattice) -> TorusCertificate:
    """Build Z^d / Lambda Z^d with nearest-neighbour edges and check that
    v -> v_1 + sum gamma_j v_{j+1} (mod n) is an isomorphism onto the
    symmetrized circulant graph on {1, gammas}."""
    lam = torus_lattice_matrix(t)
    d = t.d
    inv, U, _ = smith_normal_form(lam, transforms=True)
    order = abs(int_det(lam))
    Uinv = _unimodular_inverse(U)

    def canon(v):
        y = [sum(U[i][k] * v[k] for k in range(d)) for i in range(d)]
        return tuple(y[i] % inv[i] for i in range(d))

    def rep(y):
        return tuple(sum(Uinv[i][k] * y[k] for k in range(d)) for i in range(d))

    coords = list(itertools.product(*[range(x) for x in inv]))
    reps = {y: rep(y) for y in coords}

    def phi(v):
        return (v[0] + sum(g * v[j + 1] for j, g in enumerate(t.gammas))) % t.n

    vertex_map = {reps[y]: phi(reps[y]) for y in coords}
    cert = TorusCertificate(t.n, t.gammas, inv, order, vertex_map, False)
    if len(coords) != order:
        cert.failure = f"enumerated {len(coords)} cosets, expected {order}"
        return cert
    if len(set(vertex_map.values())) != t.n or order != t.n:
        cert.failure = "map is not a bijection onto Z_n"
        return cert
    # Phi must be constant on cosets: check a lattice column shift of every rep
    for y, v in reps.items():
        for col in range(d):
            w = tuple(v[i] + lam[i][col] for i in range(d))
            if canon(w) != y or phi(w) != phi(v):
                cert.failure = f"map not well defined at coset {v}"
                return cert
    target = circulant_digraph(symmetrize(ConnectionSet(t.n, t.connection)))
    image = set()
    for y, v in reps.items():
        for i in range(d):
            for sgn in (1, -1):
                w = list(v)
                w[i] += sgn
                yw = canon(w)
                if yw == y:
                    continue
                e = (phi(v), phi(reps[yw]))
                if e not in target.edges:
                    cert.failure = f"edge {v} -> {tuple(w)} maps to non-edge {e}"
                    return cert
                image.add(e)
    if image != set(target.edges):
        missing = sorted(set(target.edges) - image)[:3]
        cert.failure = f"edges not hit: {missing}"
        return cert
    cert.valid = True
    return cert


def _unimodular_inverse(U):
    """Inverse of a unimodular integer matrix by exact Gauss-Jordan."""
    k = len(U)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(k)]
         for i, row in enumerate(U)]
    for c in range(k):
        p = next(i for i in range(c, k) if a[i][c] != 0)
        a[c], a[p] = a[p], a[c]
        pv = a[c][c]
        a[c] = [x / pv for x in a[c]]
        for i in range(k):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    out = [[x for x in row[k:]] for row in a]
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]

