"""Fourier block decomposition of the path complex of a circulant digraph.

An allowed path of a circulant digraph is a start vertex plus a step word.
Translation acts on the start vertex only, so each Fourier mode lambda
(lambda^n = 1) sees the same space of word combinations: the forbidden-face
constraints come from interior deletions, which never move the start vertex.
Boundaries become matrices over Z[t, 1/t] (the symbol) and the homology of
the whole complex is the sum over modes, grouped here by the order q of
lambda: all primitive q-th roots give the same ranks, so each conductor q
counts phi(q) times.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import lru_cache

from .digraph import ConnectionSet
from .exactalg import (LaurentPoly, SparseMatrix, cyc_rank, divisors, euler_phi,
                       generic_rank, kernel_basis, modp_rank_sparse, sparse_triples)
from .pathcomplex import BettiTable, _LinComb


class WordChain(_LinComb):
    """Linear combination of step words; a coordinate vector valid in every mode."""

    __slots__ = ()

    @staticmethod
    def _degree_of(word):
        return len(word)


def step_words(c: ConnectionSet, m: int):
    return list(itertools.product(c.S, repeat=m))


def word_constraint_matrix(c: ConnectionSet, m: int):
    """Forbidden-face system on S^m.

    Rows are the forbidden faces (as words carrying one illegal merged
    letter), columns the words of S^m in lexicographic order. Deleting
    interior vertex j contributes (-1)^j. Returns ``(matrix, words, faces)``.
    """
    words = step_words(c, m)
    row_of = {}
    rows = []
    for col, w in enumerate(words):
        for j in range(1, m):
            r = c.merge(w[j - 1], w[j])
            if r is None or r in c:
                continue
            face = w[:j - 1] + (r,) + w[j + 1:]
            i = row_of.get(face)
            if i is None:
                i = row_of[face] = len(rows)
                rows.append({})
            rows[i][col] = rows[i].get(col, 0) + (-1 if j % 2 else 1)
    return SparseMatrix(len(rows), len(words), rows), words, list(row_of)


@dataclass(frozen=True)
class WordBasis:
    degree: int
    chains: tuple          # WordChain basis of the per-mode Omega
    pivots: tuple          # the word carrying coefficient 1 in each chain

    def __len__(self):
        return len(self.chains)

    def coordinates(self, vector):
        """Coordinates of ``{word: value}`` in this basis, checked exactly."""
        coords = [vector.get(w, 0) for w in self.pivots]
        recon = {}
        for x, chain in zip(coords, self.chains):
            if not x:
                continue
            for w, cf in chain.items():
                recon[w] = recon.get(w, 0) + x * cf
        diff = {w: v for w, v in vector.items() if (v - recon.get(w, 0)) != 0}
        diff.update({w: -v for w, v in recon.items() if w not in vector and v != 0})
        if diff:
            raise ArithmeticError(
                f"boundary image leaves the degree-{self.degree} Omega span "
                f"(offending words: {sorted(diff)[:3]})")
        return coords


@lru_cache(maxsize=None)
def word_basis(c: ConnectionSet, m: int) -> WordBasis:
    """Echelon basis with the lexicographically smallest word of each free
    class as pivot (so sorted words such as 1^(m-k) 2^k come out with
    coefficient +1)."""
    if m < 0:
        raise ValueError("degree must be >= 0")
    if m <= 1:
        words = step_words(c, m)
        return WordBasis(m, tuple(WordChain({w: 1}) for w in words), tuple(words))
    mat, words, _ = word_constraint_matrix(c, m)
    order = list(range(len(words) - 1, -1, -1))
    kb = sorted(kernel_basis(mat, column_order=order), key=lambda item: item[0])
    chains = tuple(WordChain({words[j]: x for j, x in vec.items()}) for _, vec in kb)
    return WordBasis(m, chains, tuple(words[f] for f, _ in kb))


def omega_word_basis(c: ConnectionSet, m: int):
    return list(word_basis(c, m).chains)


def word_boundary(c: ConnectionSet, w):
    """Boundary of the Fourier generator f_w as ``{word: LaurentPoly}``,
    including forbidden faces (which must cancel inside Omega)."""
    m = len(w)
    out = {}

    def put(word, poly):
        out[word] = out.get(word, LaurentPoly()) + poly

    put(w[1:], LaurentPoly.monomial(w[0]))
    for j in range(1, m):
        r = c.merge(w[j - 1], w[j])
        if r is None:
            continue
        put(w[:j - 1] + (r,) + w[j + 1:], LaurentPoly.const(-1 if j % 2 else 1))
    put(w[:-1], LaurentPoly.const(-1 if m % 2 else 1))
    return out


@dataclass(frozen=True)
class SymbolMatrix:
    degree: int
    rows: WordBasis
    cols: WordBasis
    entries: tuple         # tuple of row tuples of LaurentPoly

    @property
    def shape(self):
        return len(self.rows), len(self.cols)

    def as_lists(self):
        return [list(r) for r in self.entries]

    def reordered(self, row_pivots, col_pivots):
        """Entries with rows/cols permuted to the given pivot-word orders."""
        ri = [self.rows.pivots.index(tuple(w)) for w in row_pivots]
        ci = [self.cols.pivots.index(tuple(w)) for w in col_pivots]
        return [[self.entries[i][j] for j in ci] for i in ri]


@lru_cache(maxsize=None)
def symbol_matrix(c: ConnectionSet, m: int) -> SymbolMatrix:
    if m < 1:
        raise ValueError("symbol matrices start in degree 1")
    src, dst = word_basis(c, m), word_basis(c, m - 1)
    columns = []
    for chain in src.chains:
        image = {}
        for w, cf in chain.items():
            for face, poly in word_boundary(c, w).items():
                image[face] = image.get(face, LaurentPoly()) + poly * cf
        image = {f: p for f, p in image.items() if not p.is_zero()}
        bad = [f for f in image if any(s not in c for s in f)]
        if bad:
            raise ArithmeticError(f"forbidden faces survive in degree {m}: {bad[:3]}")
        columns.append(dst.coordinates(image))
    entries = tuple(tuple(col[i] for col in columns) for i in range(len(dst)))
    return SymbolMatrix(m, dst, src, entries)


def _cell_rank(c: ConnectionSet, m: int, q: int) -> int:
    sm = symbol_matrix(c, m)
    if not sm.entries or not sm.cols.chains:
        return 0
    return cyc_rank(sm.as_lists(), q)


def _cell_generic(c: ConnectionSet, m: int) -> int:
    sm = symbol_matrix(c, m)
    if not sm.entries or not sm.cols.chains:
        return 0
    return generic_rank(sm.as_lists())


def _map(executor, fn, *iterables):
    if executor is None:
        return list(map(fn, *iterables))
    return list(executor.map(fn, *iterables))


@dataclass
class ModeHomology:
    q: int
    dims: list
    omega_dims: list
    ranks: list        # ranks[m] = rank M_m at conductor q (ranks[0] = 0)


def mode_homology(c: ConnectionSet, q: int, m_max: int, executor=None) -> ModeHomology:
    if c.n is not None and c.n % q:
        raise ValueError(f"conductor {q} does not divide n={c.n}")
    degs = list(range(1, m_max + 2))
    ranks = [0] + _map(executor, _cell_rank, [c] * len(degs), degs, [q] * len(degs))
    dims = [len(word_basis(c, m)) for m in range(m_max + 2)]
    hom = [dims[m] - ranks[m] - ranks[m + 1] for m in range(m_max + 1)]
    return ModeHomology(q, hom, dims, ranks)


def betti_via_fourier(c: ConnectionSet, m_max: int, executor=None) -> BettiTable:
    if c.n is None:
        raise ValueError("betti_via_fourier needs a modulus")
    n = c.n
    qs = divisors(n)
    degs = list(range(1, m_max + 2))
    cells = [(q, m) for q in qs for m in degs]
    flat = _map(executor, _cell_rank, [c] * len(cells), [m for _, m in cells],
                [q for q, _ in cells])
    per_q = {q: [0] + flat[i * len(degs):(i + 1) * len(degs)] for i, q in enumerate(qs)}
    wdims = [len(word_basis(c, m)) for m in range(m_max + 2)]
    modes, ranks = {}, [0] * (m_max + 2)
    for q in qs:
        r = per_q[q]
        phi = euler_phi(q)
        modes[q] = {"phi": phi,
                    "dims": [wdims[m] - r[m] - r[m + 1] for m in range(m_max + 1)]}
        for m in range(m_max + 2):
            ranks[m] += phi * r[m]
    omega = [n * d for d in wdims]
    bet = [sum(v["phi"] * v["dims"][m] for v in modes.values()) for m in range(m_max + 1)]
    return BettiTable(n, m_max, bet, omega, ranks, S=list(c.S), modes=modes, method="fourier")


# ---------------------------------------------------------------------------
# cyclotomic support and stability

@dataclass
class SupportReport:
    S: list
    probed_m: int
    probed_q: int
    conductors: list
    generic_ranks: list = field(default_factory=list)
    drops: dict = field(default_factory=dict)          # q -> degrees with rank drops
    homology: dict = field(default_factory=dict)       # q -> nonzero block dims
    partial: bool = True

    def to_dict(self):
        return {
            "S": list(self.S), "generic_ranks": list(self.generic_ranks),
            "drops": {str(q): v for q, v in sorted(self.drops.items())},
            "homology": {str(q): v for q, v in sorted(self.homology.items())},
            "support": {"probed_m": self.probed_m, "probed_q": self.probed_q,
                        "conductors": list(self.conductors), "partial": self.partial},
        }

    @classmethod
    def from_dict(cls, d):
        sup = d["support"]
        return cls(list(d["S"]), sup["probed_m"], sup["probed_q"], list(sup["conductors"]),
                   list(d.get("generic_ranks", [])),
                   {int(q): v for q, v in d.get("drops", {}).items()},
                   {int(q): v for q, v in d.get("homology", {}).items()},
                   sup.get("partial", True))

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)


def _no_wrap_set(S):
    c = ConnectionSet(None, tuple(S))
    if c.S[0] != 1:
        raise ValueError("cyclotomic support is defined for S containing 1")
    return c


def cyclotomic_support(S, m_max: int, q_max: int, executor=None) -> SupportReport:
    """Conductors 2..q_max at which a symbol rank drops below its generic value
    or a Fourier block has homology, for degrees <= m_max (ranks up to m_max+1).

    Allowedness is decided over the integers, which describes every n with
    n > 2 max(S). The result is a truncation to the probed bounds.
    """
    if isinstance(S, ConnectionSet):
        if S.n is not None and not S.no_wrap:
            raise ValueError("support scan needs a no-wrap connection set")
        S = S.S
    c = _no_wrap_set(S)
    degs = list(range(1, m_max + 2))
    generic = [0] + _map(executor, _cell_generic, [c] * len(degs), degs)
    qs = list(range(2, q_max + 1))
    cells = [(q, m) for q in qs for m in degs]
    flat = _map(executor, _cell_rank, [c] * len(cells), [m for _, m in cells],
                [q for q, _ in cells])
    wdims = [len(word_basis(c, m)) for m in range(m_max + 2)]
    report = SupportReport(list(c.S), m_max, q_max, [], generic)
    for i, q in enumerate(qs):
        r = [0] + flat[i * len(degs):(i + 1) * len(degs)]
        dropped = [m for m in degs if r[m] < generic[m]]
        dims = [wdims[m] - r[m] - r[m + 1] for m in range(m_max + 1)]
        if dropped:
            report.drops[q] = dropped
        if any(dims):
            report.homology[q] = dims
        if dropped or any(dims):
            report.conductors.append(q)
    return report


@dataclass
class ScanRow:
    n: int
    table: BettiTable
    changed: bool
    consistent: bool

    def to_dict(self):
        d = self.table.to_dict()
        d.update({"changed": self.changed, "consistent": self.consistent})
        return d


@dataclass
class StabilityScan:
    S: list
    m_max: int
    rows: list
    support: SupportReport | None = None

    @property
    def constant(self):
        return all(not r.changed for r in self.rows)

    @property
    def consistent(self):
        return all(r.consistent for r in self.rows)

    def to_dict(self):
        d = {"S": list(self.S), "max_degree": self.m_max,
             "rows": [r.to_dict() for r in self.rows],
             "constant": self.constant, "consistent": self.consistent}
        if self.support is not None:
            d["support"] = self.support.to_dict()["support"]
        return d

    def to_json(self, **kw):
        return json.dumps(self.to_dict(), **kw)

    @classmethod
    def from_dict(cls, d):
        rows = []
        for r in d["rows"]:
            body = {k: v for k, v in r.items() if k not in ("changed", "consistent")}
            rows.append(ScanRow(r["n"], BettiTable.from_dict(body), r["changed"],
                                r["consistent"]))
        sup = None
        if "support" in d:
            sup = SupportReport.from_dict({"S": d["S"], "support": d["support"]})
        return cls(list(d["S"]), d["max_degree"], rows, sup)


def stability_scan(S, n_range, m_max: int, support: SupportReport | None = None,
                   executor=None) -> StabilityScan:
    """Fourier Betti numbers for each n, flagged where they change.

    A row is ``consistent`` when its Betti numbers equal the trivial-mode
    homology or n is divisible by some conductor of ``support`` (when given).
    """
    S = tuple(sorted(set(S)))
    rows, prev = [], None
    for n in n_range:
        if not n > 2 * max(S):
            raise ValueError(f"n={n} is in the wrap-around regime for S={S}")
        table = betti_via_fourier(ConnectionSet(n, S), m_max, executor)
        changed = prev is not None and table.betti != prev
        trivial = table.modes[1]["dims"]
        ok = table.betti == trivial
        if not ok and support is not None:
            ok = any(n % q == 0 for q in support.conductors)
        rows.append(ScanRow(n, table, changed, ok))
        prev = table.betti
    return StabilityScan(list(S), m_max, rows, support)


_EXACT_CELLS = 4000      # entries (times phi^2) below which exact ranks are cheap


@lru_cache(maxsize=None)
def _symbol_triples(c, m):
    return sparse_triples(symbol_matrix(c, m).entries)


def _probe_rank(c, m, q, index=0):
    sm = symbol_matrix(c, m)
    if not sm.entries or not sm.cols.chains:
        return 0, True
    r, k = sm.shape
    if r * k * euler_phi(q) ** 2 <= _EXACT_CELLS:
        return cyc_rank(sm.as_lists(), q), True
    return modp_rank_sparse(r, k, _symbol_triples(c, m), q, index), False


def _probe_set(S, m_max, q_max):
    c = ConnectionSet(None, S)
    w = [len(word_basis(c, m)) for m in range(m_max + 2)]
    per_q, exact_q = {}, {}
    for q in range(1, q_max + 1):
        cells = [_probe_rank(c, m, q) for m in range(1, m_max + 2)]
        r = [0] + [x for x, _ in cells]
        exact = all(e for _, e in cells)
        dims = [w[m] - r[m] - r[m + 1] for m in range(m_max + 1)]
        if not exact and any(dims[3:]):
            # a second prime can only raise the ranks; keep the larger bound
            r2 = [0] + [_probe_rank(c, m, q, 1)[0] for m in range(1, m_max + 2)]
            r = [max(a, b) for a, b in zip(r, r2)]
            dims = [w[m] - r[m] - r[m + 1] for m in range(m_max + 1)]
        per_q[q], exact_q[q] = dims, exact
    high = {q: d[3:] for q, d in per_q.items() if any(d[3:])}
    return {"S": list(S), "omega_dims": w[:m_max + 1], "trivial_mode": per_q[1],
            "trivial_mode_exact": exact_q[1],
            "vanishes_above_2": not high,
            "counterexamples": {str(q): {"dims_above_2": v, "exact": exact_q[q]}
                                for q, v in high.items()}}


def conjecture_probe(max_size=4, max_step=8, m_max=6, q_max=12, executor=None):
    """Block homology above degree 2 for every no-wrap S with 1 in S.

    Small symbols get exact ranks. Large ones are reduced at a prime p = 1
    (mod q), which can only lower ranks, so the per-mode homology reported
    is an upper bound that is exact whenever it is zero. "vanishes_above_2"
    is therefore a certified statement within the probed range; the record
    flags which trivial-mode values are exact. This gathers evidence only.
    """
    sets = [(1,) + rest for k in range(max_size)
            for rest in itertools.combinations(range(2, max_step + 1), k)]
    n = len(sets)
    return _map(executor, _probe_set, sets, [m_max] * n, [q_max] * n)
