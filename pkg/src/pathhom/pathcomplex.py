"""GLMY path complex of an arbitrary finite digraph over Q.

Everything here is brute force and digraph-agnostic: allowed paths are
enumerated, Omega_m is the kernel of the forbidden-face map, and homology
is read off exact boundary ranks. It is the reference the circulant
Fourier pipeline is checked against.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction

from .digraph import Digraph
from .exactalg import RankAccumulator, SparseMatrix, kernel_basis, vectors_rank


class _LinComb:
    """Finite Q-linear combination of tuples; immutable after construction."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for k, c in items:
                k = tuple(k)
                acc[k] = acc.get(k, 0) + Fraction(c)
        self._terms = {k: c for k, c in acc.items() if c}
        degs = {self._degree_of(k) for k in self._terms}
        if len(degs) > 1:
            raise ValueError(f"mixed degrees {sorted(degs)} in one chain")

    @staticmethod
    def _degree_of(key):
        raise NotImplementedError

    @property
    def degree(self):
        for k in self._terms:
            return self._degree_of(k)
        return None

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def support(self):
        return sorted(self._terms)

    def coeff(self, key):
        return self._terms.get(tuple(key), Fraction(0))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.items())

    def __add__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        terms = dict(self._terms)
        for k, c in other._terms.items():
            terms[k] = terms.get(k, 0) + c
        return type(self)(terms)

    def __neg__(self):
        return type(self)({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, type(self)):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        s = Fraction(scalar)
        return type(self)({k: s * c for k, c in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, type(self)):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __repr__(self):
        if not self._terms:
            return f"{type(self).__name__}(0)"
        parts = []
        for k, c in self.items():
            name = "e_" + ",".join(map(str, k))
            parts.append(f"{c}*{name}" if c != 1 else name)
        return f"{type(self).__name__}({' + '.join(parts)})"


class Chain(_LinComb):
    """Linear combination of elementary paths (vertex tuples) of one length."""

    __slots__ = ()

    @staticmethod
    def _degree_of(path):
        return len(path) - 1

    @classmethod
    def path(cls, *vertices, coeff=1):
        return cls({tuple(vertices): coeff})

    def to_json(self):
        return [{"path": list(p), "coeff": str(c)} for p, c in self.items()]

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        return cls({tuple(d["path"]): Fraction(d["coeff"]) for d in data})

    def mod(self, n):
        """Reduce every vertex mod n."""
        acc = {}
        for p, c in self._terms.items():
            q = tuple(v % n for v in p)
            acc[q] = acc.get(q, 0) + c
        return Chain(acc)


def faces(path):
    """Regular faces of an elementary path with their signs. Deleting an
    interior vertex between two equal vertices gives an irregular path,
    which is zero in the regular path space and is skipped."""
    out = []
    m = len(path) - 1
    for j in range(m + 1):
        if 0 < j < m and path[j - 1] == path[j + 1]:
            continue
        out.append((path[:j] + path[j + 1:], -1 if j % 2 else 1))
    return out


def boundary(c: Chain) -> Chain:
    if c.is_zero():
        return Chain()
    if c.degree < 1:
        raise ValueError("boundary needs degree >= 1")
    acc = {}
    for p, coef in c._terms.items():
        for f, sgn in faces(p):
            acc[f] = acc.get(f, 0) + sgn * coef
    return Chain(acc)


def allowed_paths(g: Digraph, m: int):
    """All directed walks of length m that never repeat a vertex consecutively
    (automatic without self-loops), in lexicographic order."""
    if m < 0:
        raise ValueError("degree must be >= 0")
    paths = [(v,) for v in range(g.n)]
    nbrs = g.out_neighbors
    for _ in range(m):
        paths = [p + (w,) for p in paths for w in nbrs[p[-1]]]
    return paths


def is_allowed(g: Digraph, path) -> bool:
    return all((a, b) in g.edges for a, b in zip(path, path[1:]))


def in_omega(g: Digraph, c: Chain) -> bool:
    if c.is_zero():
        return True
    if not all(is_allowed(g, p) for p in c.support()):
        return False
    if c.degree == 0:
        return True
    return all(is_allowed(g, f) for f in boundary(c).support())


@dataclass
class OmegaBasis:
    degree: int
    chains: list

    def __len__(self):
        return len(self.chains)

    @property
    def dim(self):
        return len(self.chains)


def omega_constraints(g: Digraph, m: int, paths=None):
    """Matrix sending coefficients over allowed m-paths to the coefficients of
    their non-allowed faces."""
    if paths is None:
        paths = allowed_paths(g, m)
    row_of = {}
    rows = []
    for col, p in enumerate(paths):
        for j in range(1, m):
            if p[j - 1] == p[j + 1] or (p[j - 1], p[j + 1]) in g.edges:
                continue
            f = p[:j] + p[j + 1:]
            r = row_of.get(f)
            if r is None:
                r = row_of[f] = len(rows)
                rows.append({})
            rows[r][col] = rows[r].get(col, 0) + (-1 if j % 2 else 1)
    return SparseMatrix(len(rows), len(paths), rows), list(row_of)


def omega_basis(g: Digraph, m: int) -> OmegaBasis:
    """RREF basis of Omega_m(g) over the lexicographic allowed-path order."""
    paths = allowed_paths(g, m)
    if m <= 1:
        return OmegaBasis(m, [Chain({p: 1}) for p in paths])
    mat, _ = omega_constraints(g, m, paths)
    chains = [Chain({paths[c]: x for c, x in vec.items()})
              for _, vec in kernel_basis(mat)]
    return OmegaBasis(m, chains)


def boundary_rank(basis: OmegaBasis) -> int:
    if basis.degree == 0:
        return 0
    return vectors_rank(boundary(c).terms for c in basis.chains)


# ---------------------------------------------------------------------------

@dataclass
class BettiTable:
    n: int
    max_degree: int
    betti: list
    omega_dims: list
    ranks: list
    S: list | None = None
    modes: dict | None = None     # conductor -> {"phi": int, "dims": [...]}
    method: str = "direct"

    def __post_init__(self):
        self.check()

    def check(self):
        if len(self.omega_dims) != self.max_degree + 2 or len(self.ranks) != self.max_degree + 2:
            raise ValueError("omega_dims/ranks must cover degrees 0..max_degree+1")
        for m in range(self.max_degree + 1):
            expected = self.omega_dims[m] - self.ranks[m] - self.ranks[m + 1]
            if self.betti[m] != expected:
                raise ValueError(f"Euler bookkeeping broken at degree {m}")

    def same_homology(self, other):
        return (self.betti == other.betti and self.omega_dims == other.omega_dims
                and self.ranks == other.ranks)

    def to_dict(self):
        d = {"n": self.n, "S": self.S, "max_degree": self.max_degree, "betti": list(self.betti),
             "omega_dims": list(self.omega_dims), "ranks": list(self.ranks)}
        if self.modes is not None:
            d["modes"] = {str(q): {"phi": v["phi"], "dims": list(v["dims"])}
                          for q, v in sorted(self.modes.items())}
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d, method="direct"):
        modes = None
        if "modes" in d:
            modes = {int(q): {"phi": v["phi"], "dims": list(v["dims"])}
                     for q, v in d["modes"].items()}
        return cls(n=d["n"], max_degree=d["max_degree"], betti=list(d["betti"]),
                   omega_dims=list(d["omega_dims"]), ranks=list(d["ranks"]),
                   S=None if d.get("S") is None else list(d["S"]), modes=modes,
                   method="fourier" if modes is not None else method)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.to_dict() == other.to_dict()


def betti(g: Digraph, max_degree: int, S=None) -> BettiTable:
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    dims, ranks = [], []
    for m in range(max_degree + 2):
        basis = omega_basis(g, m)
        dims.append(basis.dim)
        ranks.append(boundary_rank(basis))
    bet = [dims[m] - ranks[m] - ranks[m + 1] for m in range(max_degree + 1)]
    return BettiTable(g.n, max_degree, bet, dims, ranks,
                      S=None if S is None else list(S))


def is_cycle(c: Chain) -> bool:
    if c.is_zero() or c.degree == 0:
        return True
    return boundary(c).is_zero()


def is_boundary(g: Digraph, c: Chain) -> bool:
    if c.is_zero():
        return True
    if not in_omega(g, c):
        raise ValueError("chain is not in Omega_m of this digraph")
    acc = RankAccumulator()
    for b in omega_basis(g, c.degree + 1).chains:
        acc.add(boundary(b).terms)
    return acc.contains(c.terms)


# ---------------------------------------------------------------------------
# clique complex comparison

def cliques(g: Digraph, max_size: int):
    """All cliques of the underlying undirected graph with at most max_size
    vertices, as sorted tuples grouped by size."""
    adj = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    by_size = {1: [(v,) for v in range(g.n)]}
    for k in range(2, max_size + 1):
        nxt = []
        for c in by_size[k - 1]:
            cand = set.intersection(*(adj[v] for v in c))
            nxt.extend(c + (w,) for w in sorted(cand) if w > c[-1])
        if not nxt:
            break
        by_size[k] = nxt
    return by_size


def clique_homology(g: Digraph, max_degree: int) -> BettiTable:
    if not g.is_symmetric():
        raise ValueError("clique homology needs a symmetric digraph")
    cl = cliques(g, max_degree + 2)
    dims = [len(cl.get(m + 1, [])) for m in range(max_degree + 2)]
    ranks = [0]
    for m in range(1, max_degree + 2):
        vecs = []
        for simplex in cl.get(m + 1, []):
            vecs.append({simplex[:j] + simplex[j + 1:]: (-1) ** j for j in range(m + 1)})
        ranks.append(vectors_rank(vecs))
    bet = [dims[m] - ranks[m] - ranks[m + 1] for m in range(max_degree + 1)]
    return BettiTable(g.n, max_degree, bet, dims, ranks, method="clique")


def random_chain(g: Digraph, m: int, rng, terms=5, coeff_range=5):
    paths = allowed_paths(g, m)
    if not paths:
        return Chain()
    picks = [paths[rng.randrange(len(paths))] for _ in range(terms)]
    return Chain({p: rng.randint(-coeff_range, coeff_range) for p in picks})


def all_regular_paths(n, m):
    """Every regular m-path on n vertices (small n only; used in tests)."""
    for p in itertools.product(range(n), repeat=m + 1):
        if all(a != b for a, b in zip(p, p[1:])):
            yield p
