"""Local cochain complexes over open stars and differences of open stars.

The stalk over a cell w is the complex whose degree-k basis consists of the
alive k-dimensional cofaces of w, with codifferentials inherited from the
incidence degrees; its cohomology is the compactly-supported cohomology of
w's open star in the current subcomplex.  The difference complex over a
codimension-one pair x > y spans the alive cells >= y that are not >= x; its
cohomology vanishes exactly when the star inclusion induces isomorphisms, so
quasi-isomorphism tests never build a chain map.

Grading is absolute (by cell dimension), so delta-complex comparisons read
the same in every iteration.  Basis ordering within a degree is ascending
cell id for run-to-run determinism.
"""

from __future__ import annotations

from .complex import upset
from .errors import InvariantViolationError, PreconditionError
from .field import SparseMatrix


class CochainComplex:
    """Per-degree cell bases plus codifferential matrices over GF(p)."""

    __slots__ = ("degrees", "codifferentials", "p", "_verified")

    def __init__(self, degrees, codifferentials, p):
        self.degrees = degrees
        self.codifferentials = codifferentials
        self.p = p
        self._verified = False

    def rank_in_degree(self, k):
        return len(self.degrees[k]) if 0 <= k < len(self.degrees) else 0

    def total_cells(self):
        return sum(len(b) for b in self.degrees)

    def verify(self):
        """Check that successive codifferentials compose to zero."""
        if self._verified:
            return
        for k in range(len(self.codifferentials) - 1):
            if not self.codifferentials[k + 1].compose(self.codifferentials[k]).is_zero():
                raise InvariantViolationError(
                    f"codifferential composition nonzero in degrees {k}->{k + 2}"
                )
        self._verified = True


def _complex_over(cx, cells, p):
    """Cochain complex spanned by ``cells``, codifferentials restricted."""
    top = cx.n if cx.n >= 0 else -1
    degrees = [[] for _ in range(top + 1)]
    for c in cells:
        degrees[int(cx.dims[c])].append(int(c))
    for basis in degrees:
        basis.sort()
    pos = {}
    for basis in degrees:
        for i, c in enumerate(basis):
            pos[c] = i

    member = set(pos)
    codiffs = []
    for k in range(top):
        entries = []
        for z in degrees[k]:
            for w, deg in cx.coboundary(z):
                if w in member:
                    entries.append((pos[w], pos[z], deg))
        codiffs.append(SparseMatrix(len(degrees[k + 1]), len(degrees[k]), entries, p))
    return CochainComplex(degrees, codiffs, p)


def star_complex(cx, mask, w, p=2):
    """Stalk complex of the open star of ``w`` in the current subcomplex."""
    return _complex_over(cx, upset(cx, mask, None, w), p)


def diff_complex(cx, mask, x, y, p=2):
    """Complex over the alive cells >= y and not >= x, for x > y in
    codimension one.

    The restricted codifferential squares to zero because the spanned set is
    locally closed; this is asserted rather than assumed, and a violation
    raises ``InvariantViolationError``.
    """
    if cx.relation_index(x, y) < 0:
        raise PreconditionError(f"({x} > {y}) is not a codimension-one face relation")
    cc = _complex_over(cx, upset(cx, mask, x, y), p)
    cc.verify()
    return cc


def is_delta(dims, k):
    """True iff the dimension vector is 1 at index k and 0 elsewhere."""
    for i, v in enumerate(dims):
        if v != (1 if i == k else 0):
            return False
    return 0 <= k < len(dims)
