"""Exact ranks and kernels over Q, Q(zeta_q) and Q(t)."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .poly import (LaurentPoly, _cyclotomic_coeffs, _laurent_residue, poly_exact_div,
                   poly_mul, poly_reduce, poly_sub)


class SparseMatrix:
    """Row-major sparse matrix: ``rows[i]`` maps column index -> nonzero value."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows, ncols, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = [dict(r) for r in rows] if rows is not None else [{} for _ in range(nrows)]
        if len(self.rows) != nrows:
            raise ValueError("row count does not match stored rows")
        for r in self.rows:
            for j, v in list(r.items()):
                if not 0 <= j < ncols:
                    raise ValueError(f"column {j} out of range")
                if v == 0:
                    del r[j]

    @classmethod
    def from_dense(cls, dense, ncols=None):
        dense = [list(r) for r in dense]
        if ncols is None:
            ncols = len(dense[0]) if dense else 0
        return cls(len(dense), ncols, [{j: v for j, v in enumerate(r) if v} for r in dense])

    def to_dense(self):
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                out[i][j] = v
        return out

    @property
    def shape(self):
        return self.nrows, self.ncols

    def __repr__(self):
        nnz = sum(len(r) for r in self.rows)
        return f"SparseMatrix({self.nrows}x{self.ncols}, nnz={nnz})"


def _as_sparse(m):
    if isinstance(m, SparseMatrix):
        return m
    return SparseMatrix.from_dense(m)


# ---------------------------------------------------------------------------
# rank over Q

def _integral_row(row):
    """Scale a {key: rational} row to primitive integers."""
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items() if v}
    return _primitive(out)


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


class RankAccumulator:
    """Incremental fraction-free elimination over Q.

    Vectors are dicts with sortable keys; each stored vector is primitive
    over Z and indexed by its smallest key (the pivot).
    """

    def __init__(self):
        self.pivots = {}

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec):
        v = _integral_row(vec)
        while v:
            p = min(v)
            b = self.pivots.get(p)
            if b is None:
                return v
            a, c = b[p], v[p]
            g = gcd(a, c)
            a, c = a // g, c // g
            out = {k: a * x for k, x in v.items()}
            for k, y in b.items():
                nv = out.get(k, 0) - c * y
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
            v = _primitive(out)
        return v

    def add(self, vec):
        """Insert a vector; return True iff it raised the rank."""
        v = self.reduce(vec)
        if not v:
            return False
        self.pivots[min(v)] = v
        return True

    def contains(self, vec):
        return not self.reduce(vec)


class TrackedEchelon:
    """Echelon form over Q that remembers each pivot row as a combination of
    the labelled input vectors, so membership queries return a solution."""

    def __init__(self):
        self.pivots = {}     # key -> (row with row[key] == 1, {label: coeff})

    @property
    def rank(self):
        return len(self.pivots)

    def _reduce(self, vec):
        v = {k: Fraction(x) for k, x in vec.items() if x}
        combo = {}
        while v:
            p = min(v)
            hit = self.pivots.get(p)
            if hit is None:
                break
            row, rc = hit
            f = v[p]
            for k, y in row.items():
                nv = v.get(k, 0) - f * y
                if nv:
                    v[k] = nv
                else:
                    v.pop(k, None)
            for lab, y in rc.items():
                nv = combo.get(lab, 0) + f * y
                if nv:
                    combo[lab] = nv
                else:
                    combo.pop(lab, None)
        return v, combo

    def add(self, vec, label):
        """Insert ``vec`` under ``label``; return True iff the rank grew."""
        v, combo = self._reduce(vec)
        if not v:
            return False
        p = min(v)
        f = v[p]
        row = {k: x / f for k, x in v.items()}
        rc = {lab: -y / f for lab, y in combo.items()}
        rc[label] = rc.get(label, 0) + 1 / f
        self.pivots[p] = (row, rc)
        return True

    def solve(self, vec):
        """Coefficients ``{label: x}`` with sum x * input[label] == vec.

        Raises ValueError if vec is outside the span."""
        v, combo = self._reduce(vec)
        if v:
            raise ValueError("vector is not in the span")
        return combo


def vectors_rank(vectors):
    acc = RankAccumulator()
    for v in vectors:
        acc.add(v)
    return acc.rank


def rat_rank(m) -> int:
    """Exact rank over Q by fraction-free elimination (integers only)."""
    m = _as_sparse(m)
    return vectors_rank(m.rows)


# ---------------------------------------------------------------------------
# kernel over Q

def _components(rows, ncols):
    """Group columns that share a row (union-find)."""
    parent = list(range(ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for r in rows:
        cols = list(r)
        for c in cols[1:]:
            a, b = find(cols[0]), find(c)
            if a != b:
                parent[b] = a
    groups = {}
    for c in range(ncols):
        groups.setdefault(find(c), []).append(c)
    row_groups = {}
    for i, r in enumerate(rows):
        if r:
            row_groups.setdefault(find(next(iter(r))), []).append(i)
    return [(cols, row_groups.get(root, [])) for root, cols in groups.items()]


def _rref_block(rows, cols):
    """RREF of the given rows restricted to ``cols`` (ordered). Returns
    ``{pivot_col: {col: Fraction}}`` with each row normalized to 1 at its pivot."""
    order = {c: i for i, c in enumerate(cols)}
    reduced = []  # list of (pivot, row)
    for r in rows:
        v = {c: Fraction(x) for c, x in r.items()}
        for p, b in reduced:
            f = v.get(p)
            if f:
                for c, y in b.items():
                    nv = v.get(c, 0) - f * y
                    if nv:
                        v[c] = nv
                    else:
                        v.pop(c, None)
        if not v:
            continue
        p = min(v, key=order.__getitem__)
        inv = 1 / v[p]
        v = {c: x * inv for c, x in v.items()}
        # back-substitute into earlier rows to stay fully reduced
        for k, (q, b) in enumerate(reduced):
            f = b.get(p)
            if f:
                for c, y in v.items():
                    nv = b.get(c, 0) - f * y
                    if nv:
                        b[c] = nv
                    else:
                        b.pop(c, None)
        reduced.append((p, v))
    return dict(reduced)


def kernel_basis(m, column_order=None):
    """Sparse RREF kernel basis of ``m``.

    Pivots are taken as early as possible in ``column_order`` (default:
    natural order), so every free column gets one basis vector with a 1 in
    that column and 0 in all other free columns. Returns a list of
    ``(free_column, {col: Fraction})`` sorted by position of the free column.
    The block structure of ``m`` is exploited: columns that never share a
    row are eliminated independently.
    """
    m = _as_sparse(m)
    if column_order is None:
        column_order = list(range(m.ncols))
    position = {c: i for i, c in enumerate(column_order)}
    out = []
    for cols, row_ids in _components(m.rows, m.ncols):
        cols = sorted(cols, key=position.__getitem__)
        piv = _rref_block([m.rows[i] for i in row_ids], cols)
        for f in cols:
            if f in piv:
                continue
            vec = {f: Fraction(1)}
            for p, row in piv.items():
                x = row.get(f)
                if x:
                    vec[p] = -x
            out.append((f, vec))
    out.sort(key=lambda item: position[item[0]])
    return out


def rat_kernel(m, column_order=None):
    """Basis of the right null space as dense lists of Fractions."""
    m = _as_sparse(m)
    basis = []
    for _, vec in kernel_basis(m, column_order):
        dense = [Fraction(0)] * m.ncols
        for c, x in vec.items():
            dense[c] = x
        basis.append(dense)
    return basis


# ---------------------------------------------------------------------------
# ranks of Laurent matrices

def _shift_rows(m):
    """Multiply each row by a power of t so that all exponents are >= 0
    (unit scaling, rank neutral) and clear rational denominators."""
    rows = []
    for row in m:
        row = [e if isinstance(e, LaurentPoly) else LaurentPoly.const(e) for e in row]
        nz = [e for e in row if not e.is_zero()]
        lo = min((e.min_exp for e in nz), default=0)
        den = 1
        for e in nz:
            for _, c in e.items():
                if isinstance(c, Fraction):
                    den = den * c.denominator // gcd(den, c.denominator)
        rows.append([(e.shift(-lo) * den) for e in row])
    return rows


def cyc_rank(m, q: int) -> int:
    """Rank of a Laurent matrix with entries reduced into Q[t]/Phi_q.

    Each entry becomes its multiplication matrix on the power basis of
    Q(zeta_q), so the Q(zeta_q)-row space of a row is the Q-span of its
    multiples by 1, t, ..., t^(phi-1). The Q-rank of those vectors is phi
    times the rank over Q(zeta_q); sparse integer elimination does the rest.
    """
    if q < 1:
        raise ValueError("conductor must be >= 1")
    rows = _shift_rows(m)
    if not rows:
        return 0
    phi = list(_cyclotomic_coeffs(q))
    deg = len(phi) - 1
    acc = RankAccumulator()
    for row in rows:
        red = [(j, _laurent_residue(e, q)) for j, e in enumerate(row)]
        red = [(j, r) for j, r in red if r]
        if not red:
            continue
        for k in range(deg):
            vec = {}
            for j, r in red:
                for a, c in enumerate(poly_reduce([0] * k + list(r), phi)):
                    if c:
                        vec[(j, a)] = c
            if vec:
                acc.add(vec)
    rank, rem = divmod(acc.rank, deg)
    assert rem == 0, "Q-rank of a Q(zeta)-module must be a multiple of phi"
    return rank


def generic_rank(m) -> int:
    """Rank over Q(t): fraction-free Bareiss elimination with polynomial pivots."""
    rows = [[e.dense() for e in row] for row in _shift_rows(m)]
    if not rows or not rows[0]:
        return 0
    ncols = len(rows[0])
    nrows = len(rows)
    prev = [1]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, nrows) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        a = rows[rank][col]
        for i in range(rank + 1, nrows):
            c = rows[i][col]
            new = []
            for j in range(ncols):
                if j <= col:
                    new.append([])
                    continue
                v = poly_sub(poly_mul(a, rows[i][j]), poly_mul(c, rows[rank][j]))
                new.append(poly_exact_div(v, prev) if v else [])
            rows[i] = new
        # rows above pivot keep their entries; only the trailing block matters
        prev = a
        rank += 1
        if rank == nrows:
            break
    return rank


def evaluate_matrix(m, x):
    return [[(e(x) if isinstance(e, LaurentPoly) else e) for e in row] for row in m]


def matmul_laurent(a, b):
    """Product of two Laurent matrices (lists of rows)."""
    if not a or not b:
        return [[LaurentPoly() for _ in range(len(b[0]) if b else 0)] for _ in a]
    inner = len(b)
    out = []
    for row in a:
        if len(row) != inner:
            raise ValueError("shape mismatch")
        out.append([sum((row[k] * b[k][j] for k in range(inner)), LaurentPoly())
                    for j in range(len(b[0]))])
    return out
