"""Arithmetic over GF(p) and sparse-matrix rank computation.

Field elements are plain Python ints reduced into ``[0, p)``; the
characteristic rides along on each matrix.  Coefficients are restricted to
prime fields: p = 2 makes incidence signs irrelevant, odd p exercises them.
"""

from __future__ import annotations

from .errors import InvariantViolationError, PreconditionError


def is_prime(p):
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def check_prime(p):
    if not is_prime(p):
        raise PreconditionError(f"coefficient characteristic {p} is not prime")
    return p


class SparseMatrix:
    """Sparse matrix over GF(p): unique positions, nonzero values only.

    Entries are given as ``(row, col, value)`` triples; values are reduced
    mod p at construction and zero entries are dropped.  A duplicated
    position is a caller bug and raises.
    """

    __slots__ = ("rows", "cols", "p", "entries")

    def __init__(self, rows, cols, entries=(), p=2):
        check_prime(p)
        self.rows = int(rows)
        self.cols = int(cols)
        self.p = int(p)
        self.entries = {}
        for r, c, v in entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise PreconditionError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")
            v %= p
            if v == 0:
                continue
            if (r, c) in self.entries:
                raise PreconditionError(f"duplicate entry position ({r}, {c})")
            self.entries[(r, c)] = v

    @property
    def nnz(self):
        return len(self.entries)

    def transpose(self):
        return SparseMatrix(self.cols, self.rows,
                            ((c, r, v) for (r, c), v in self.entries.items()), self.p)

    def compose(self, other):
        """Matrix product self @ other over GF(p)."""
        if other.rows != self.cols or other.p != self.p:
            raise PreconditionError("shape or characteristic mismatch in composition")
        other_by_row = {}
        for (r, c), v in other.entries.items():
            other_by_row.setdefault(r, []).append((c, v))
        acc = {}
        for (r, mid), v in self.entries.items():
            for c, w in other_by_row.get(mid, ()):
                key = (r, c)
                acc[key] = (acc.get(key, 0) + v * w) % self.p
        return SparseMatrix(self.rows, other.cols,
                            ((r, c, v) for (r, c), v in acc.items()), self.p)

    def is_zero(self):
        return not self.entries

    def to_dense(self):
        import numpy as np

        out = np.zeros((self.rows, self.cols), dtype=np.int64)
        for (r, c), v in self.entries.items():
            out[r, c] = v
        return out

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={self.nnz}, p={self.p})"


def rank(m):
    """GF(p) rank by sparse Gaussian elimination.

    The pivot column is chosen by minimum nonzero count (a fill-reducing
    heuristic) with the sparsest row in that column as pivot; the result is
    independent of elimination order.  The empty matrix has rank 0.
    """
    p = m.p
    rows = {}
    col_rows = {}
    for (r, c), v in m.entries.items():
        rows.setdefault(r, {})[c] = v
        col_rows.setdefault(c, set()).add(r)

    rk = 0
    while col_rows:
        col = min(col_rows, key=lambda c: (len(col_rows[c]), c))
        members = col_rows[col]
        pr = min(members, key=lambda r: (len(rows[r]), r))
        pivot_row = rows.pop(pr)
        pivot_inv = pow(pivot_row[col], -1, p)
        for c in pivot_row:
            col_rows[c].discard(pr)
            if not col_rows[c]:
                del col_rows[c]

        for r in list(col_rows.get(col, ())):
            row = rows[r]
            factor = (row[col] * pivot_inv) % p
            for c, v in pivot_row.items():
                new = (row.get(c, 0) - factor * v) % p
                if new:
                    if c not in row:
                        col_rows.setdefault(c, set()).add(r)
                    row[c] = new
                elif c in row:
                    del row[c]
                    col_rows[c].discard(r)
                    if not col_rows[c]:
                        del col_rows[c]
            if not row:
                del rows[r]
        rk += 1
    return rk


def cohomology_dims(cx):
    """Cohomology dimensions of a cochain complex over GF(p).

    For each degree k, ``dim H^k = n_k - rank(d^k) - rank(d^(k-1))`` with
    ``d^(-1) = 0``.  Raises when successive codifferentials fail to compose
    to zero, which signals a cell set that is not locally closed.
    """
    cx.verify()
    ranks = [rank(d) for d in cx.codifferentials]
    out = []
    for k in range(len(cx.degrees)):
        n_k = len(cx.degrees[k])
        r_k = ranks[k] if k < len(ranks) else 0
        r_prev = ranks[k - 1] if k > 0 else 0
        out.append(n_k - r_k - r_prev)
    return out
