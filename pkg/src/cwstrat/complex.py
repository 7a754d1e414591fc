"""Finite regular CW complexes as face posets with signed incidences.

A complex is stored as a dense cell list (ids ``0..m-1``) with, for every
cell, its dimension and its codimension-one faces together with incidence
degrees in ``{+1, -1}``.  The transposed (coboundary) adjacency is built once
at construction; higher face relations are recovered by traversal, never
stored.  Instances are immutable after construction and safe to share across
worker threads.
"""

from __future__ import annotations

import itertools
import json
from collections import deque
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import MalformedInputError, PreconditionError


class CWComplex:
    """Cell complex with signed codimension-one incidences both ways.

    Attributes:
        m: number of cells.
        n: complex dimension (max cell dimension; -1 when empty).
        dims: int32 array, dimension per cell.
        labels: per-cell display labels (vertex tuples for simplicial input,
            user ids for explicit CW input).
    """

    __slots__ = (
        "m", "n", "dims", "labels",
        "bnd_ptr", "bnd_idx", "bnd_deg",
        "cob_ptr", "cob_idx", "cob_deg", "rel_src",
        "_max_star",
    )

    def __init__(self, dims, boundaries, labels=None):
        """Build from per-cell data.

        Args:
            dims: iterable of cell dimensions.
            boundaries: per cell, list of ``(face_id, deg)`` pairs with
                ``deg in {+1, -1}`` and ``dim(face) == dim(cell) - 1``.
            labels: optional JSON-serializable per-cell labels.
        """
        self.dims = np.asarray(list(dims), dtype=np.int32)
        self.m = int(self.dims.size)
        self.n = int(self.dims.max()) if self.m else -1
        if self.m and int(self.dims.min()) < 0:
            raise MalformedInputError("negative cell dimension")
        if len(boundaries) != self.m:
            raise MalformedInputError("boundary list length does not match cell count")

        counts = np.zeros(self.m + 1, dtype=np.int64)
        total = 0
        for x, faces in enumerate(boundaries):
            counts[x + 1] = len(faces)
            total += len(faces)
            for y, deg in faces:
                if not (0 <= y < self.m):
                    raise MalformedInputError(f"cell {x}: face {y} is not a declared cell")
                if deg not in (1, -1):
                    raise MalformedInputError(f"cell {x}: incidence degree {deg} outside {{+1, -1}}")
                if self.dims[y] != self.dims[x] - 1:
                    raise MalformedInputError(
                        f"cell {x} (dim {self.dims[x]}) lists face {y} of dim {self.dims[y]}"
                    )

        self.bnd_ptr = np.cumsum(counts)
        self.bnd_idx = np.empty(total, dtype=np.int32)
        self.bnd_deg = np.empty(total, dtype=np.int8)
        k = 0
        for faces in boundaries:
            for y, deg in faces:
                self.bnd_idx[k] = y
                self.bnd_deg[k] = deg
                k += 1

        # Coboundary = exact transpose, entries grouped by face cell.  The
        # k-th coboundary entry is the codimension-one relation
        # (cob_idx[k] > rel_src[k]); phase bookkeeping indexes relations by k.
        cob_counts = np.zeros(self.m + 1, dtype=np.int64)
        for y in self.bnd_idx:
            cob_counts[y + 1] += 1
        self.cob_ptr = np.cumsum(cob_counts)
        self.cob_idx = np.empty(total, dtype=np.int32)
        self.cob_deg = np.empty(total, dtype=np.int8)
        self.rel_src = np.empty(total, dtype=np.int32)
        cursor = self.cob_ptr[:-1].copy()
        for x in range(self.m):
            for k in range(self.bnd_ptr[x], self.bnd_ptr[x + 1]):
                y = self.bnd_idx[k]
                slot = cursor[y]
                self.cob_idx[slot] = x
                self.cob_deg[slot] = self.bnd_deg[k]
                self.rel_src[slot] = y
                cursor[y] += 1

        self.labels = list(labels) if labels is not None else list(range(self.m))
        if len(self.labels) != self.m:
            raise MalformedInputError("label list length does not match cell count")
        self._max_star = None

    def boundary(self, x):
        """Codimension-one faces of ``x`` as ``[(face, deg), ...]``."""
        lo, hi = self.bnd_ptr[x], self.bnd_ptr[x + 1]
        return [(int(self.bnd_idx[k]), int(self.bnd_deg[k])) for k in range(lo, hi)]

    def coboundary(self, y):
        """Codimension-one cofaces of ``y`` as ``[(coface, deg), ...]``."""
        lo, hi = self.cob_ptr[y], self.cob_ptr[y + 1]
        return [(int(self.cob_idx[k]), int(self.cob_deg[k])) for k in range(lo, hi)]

    def relations(self):
        """Iterate codimension-one relations as ``(k, x, y)`` with x > y."""
        for k in range(len(self.cob_idx)):
            yield k, int(self.cob_idx[k]), int(self.rel_src[k])

    def relation_index(self, x, y):
        """Index of the relation (x > y), or -1 when x is not a coface of y."""
        for k in range(self.cob_ptr[y], self.cob_ptr[y + 1]):
            if self.cob_idx[k] == x:
                return int(k)
        return -1

    @property
    def num_relations(self):
        return int(len(self.cob_idx))

    def cells_of_dim(self, d):
        return np.flatnonzero(self.dims == d)

    def max_star_size(self):
        """Largest open-star cardinality over all cells (computed once)."""
        if self._max_star is None:
            full = LiveMask.full(self)
            best = 0
            for v in range(self.m):
                # Star of a cell is contained in the star of any of its
                # vertices, but scanning every cell keeps this exact even for
                # inputs with no 0-cells.
                if self.dims[v] == 0 or self.bnd_ptr[v] == self.bnd_ptr[v + 1]:
                    best = max(best, len(_up_bfs(self, full.alive, v, ())))
            self._max_star = best
        return self._max_star

    def __repr__(self):
        return f"CWComplex(m={self.m}, n={self.n})"


class LiveMask:
    """Membership predicate for the current subcomplex.

    Masks produced by the stratification pipeline are face-closed: whenever a
    cell is alive, so are all its faces.  Construction does not enforce this
    (``face_closed`` checks it on demand).
    """

    __slots__ = ("alive",)

    def __init__(self, alive):
        # Shares the backing array when one is passed in; the pipeline
        # relies on this so phase D updates are visible through views.
        self.alive = np.asarray(alive, dtype=bool)

    @classmethod
    def full(cls, cx):
        return cls(np.ones(cx.m, dtype=bool))

    def copy(self):
        return LiveMask(self.alive.copy())

    def count(self):
        return int(self.alive.sum())

    def is_alive(self, i):
        return bool(self.alive[i])

    def cells(self):
        return np.flatnonzero(self.alive)

    def face_closed(self, cx):
        for x in np.flatnonzero(self.alive):
            lo, hi = cx.bnd_ptr[x], cx.bnd_ptr[x + 1]
            if not self.alive[cx.bnd_idx[lo:hi]].all():
                return False
        return True


def _up_bfs(cx, alive, root, blocked):
    """All alive cells >= root, skipping any cell in ``blocked``."""
    seen = {int(root)}
    queue = deque(seen)
    while queue:
        c = queue.popleft()
        for k in range(cx.cob_ptr[c], cx.cob_ptr[c + 1]):
            x = int(cx.cob_idx[k])
            if alive[x] and x not in seen and x not in blocked:
                seen.add(x)
                queue.append(x)
    return seen


def upset(cx, mask, u, v):
    """Alive cells w >= v, excluding those >= u when ``u`` is given.

    Two breadth-first passes over the alive coboundary: the up-set of ``u``
    is collected first, then the main search from ``v`` prunes against that
    membership set.  With ``u = None`` the result is the open star of ``v``
    inside the current subcomplex.
    """
    alive = mask.alive
    if not (0 <= v < cx.m) or not alive[v]:
        raise PreconditionError(f"cell {v} is not alive in the mask")
    blocked = ()
    if u is not None:
        if not (0 <= u < cx.m) or not alive[u]:
            raise PreconditionError(f"cell {u} is not alive in the mask")
        blocked = _up_bfs(cx, alive, u, ())
        if v in blocked:
            return set()
    return _up_bfs(cx, alive, v, blocked)


def build_from_simplices(maximal_simplices, labels_from_vertices=True):
    """Complex of all faces of the given simplices.

    Vertex ids are arbitrary integers; every simplex is stored with vertices
    sorted ascending, and the face omitting the i-th sorted vertex receives
    incidence degree ``(-1)**i``.  Faces are deduplicated across input
    simplices.
    """
    faces = set()
    for simplex in maximal_simplices:
        verts = list(simplex)
        if len(set(verts)) != len(verts):
            raise MalformedInputError(f"duplicate vertex in simplex {verts}")
        if not verts:
            raise MalformedInputError("empty simplex")
        verts = tuple(sorted(verts))
        for r in range(1, len(verts) + 1):
            faces.update(itertools.combinations(verts, r))

    ordered = sorted(faces, key=lambda t: (len(t), t))
    index = {t: i for i, t in enumerate(ordered)}
    dims = [len(t) - 1 for t in ordered]
    boundaries = []
    for t in ordered:
        if len(t) == 1:
            boundaries.append([])
            continue
        faces_of_t = []
        for i in range(len(t)):
            sub = t[:i] + t[i + 1:]
            faces_of_t.append((index[sub], (-1) ** i))
        boundaries.append(faces_of_t)
    labels = [list(t) for t in ordered] if labels_from_vertices else None
    return CWComplex(dims, boundaries, labels=labels)


def build_from_cw(description):
    """Complex from an explicit cell list with signed boundaries.

    ``description`` is a mapping with key ``cells``: a list of
    ``{"id": ..., "dim": int, "boundary": [[face_id, deg], ...]}`` entries.
    Cell ids may be arbitrary (strings or integers) and are remapped to dense
    indices in listing order; the originals are kept as labels.
    """
    if not isinstance(description, dict) or "cells" not in description:
        raise MalformedInputError("expected an object with a 'cells' list")
    cells = description["cells"]
    if not isinstance(cells, list):
        raise MalformedInputError("'cells' must be a list")

    index = {}
    for pos, cell in enumerate(cells):
        if not isinstance(cell, dict) or "id" not in cell or "dim" not in cell:
            raise MalformedInputError(f"cell #{pos} lacks 'id' or 'dim'")
        cid = cell["id"]
        if isinstance(cid, list):
            cid = tuple(cid)
        if cid in index:
            raise MalformedInputError(f"duplicate cell id {cell['id']!r}")
        index[cid] = pos

    dims = []
    boundaries = []
    labels = []
    for pos, cell in enumerate(cells):
        dim = cell["dim"]
        if not isinstance(dim, int) or dim < 0:
            raise MalformedInputError(f"cell {cell['id']!r}: bad dimension {dim!r}")
        dims.append(dim)
        labels.append(cell["id"])
        faces = []
        for entry in cell.get("boundary", []):
            try:
                ref, deg = entry
            except (TypeError, ValueError):
                raise MalformedInputError(
                    f"cell {cell['id']!r}: boundary entry {entry!r} is not a [face, deg] pair"
                ) from None
            if isinstance(ref, list):
                ref = tuple(ref)
            if ref not in index:
                raise MalformedInputError(f"cell {cell['id']!r}: dangling face reference {entry[0]!r}")
            if deg not in (1, -1):
                raise MalformedInputError(f"cell {cell['id']!r}: degree {deg!r} outside {{+1, -1}}")
            faces.append((index[ref], int(deg)))
        boundaries.append(faces)

    try:
        return CWComplex(dims, boundaries, labels=labels)
    except MalformedInputError:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise MalformedInputError(str(exc)) from exc


def parse_simplices(text):
    """Parse the plain-text simplicial format.

    One maximal simplex per line as whitespace-separated integer vertex ids;
    lines beginning with ``#`` (and blank lines) are ignored.
    """
    simplices = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            simplices.append([int(tok) for tok in stripped.split()])
        except ValueError:
            raise MalformedInputError(f"line {lineno}: expected integer vertex ids") from None
    if not simplices:
        raise MalformedInputError("no simplices in input")
    return simplices


def load_complex(path, fmt=None):
    """Read a complex from a file in either supported format.

    ``fmt`` is ``"simplices"`` or ``"cw"``; when omitted it is inferred from
    the extension (``.json`` means the explicit CW format).
    """
    if fmt is None:
        fmt = "cw" if str(path).endswith(".json") else "simplices"
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "simplices":
        return build_from_simplices(parse_simplices(text))
    if fmt == "cw":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedInputError(f"invalid JSON: {exc}") from None
        return build_from_cw(doc)
    raise MalformedInputError(f"unknown input format {fmt!r}")


@dataclass
class ValidationReport:
    """Outcome of structural checks, with offending cells per failed check."""

    failures: list = dc_field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def add(self, check, cells, message):
        self.failures.append((check, sorted(int(c) for c in cells), message))

    def summary(self):
        if self.ok:
            return "all checks passed"
        lines = [f"{check}: {message} (cells {cells})" for check, cells, message in self.failures]
        return "; ".join(lines)


def validate(cx, deep=False, p=2):
    """Structural validation of a complex.

    Shallow checks always run: incidence degrees in {+1, -1}, mutual
    transposition of boundary/coboundary, and integer composition of
    successive boundaries equal to zero.  With ``deep=True``, every cell of
    dimension d >= 1 must have proper-face subcomplex with the reduced GF(p)
    cohomology of a (d-1)-sphere; failure indicates a non-regular complex.
    """
    report = ValidationReport()

    bad = [x for x in range(cx.m)
           for k in range(cx.bnd_ptr[x], cx.bnd_ptr[x + 1])
           if cx.bnd_deg[k] not in (1, -1)]
    if bad:
        report.add("degree-range", set(bad), "incidence degree outside {+1, -1}")

    fwd = {(x, int(cx.bnd_idx[k]), int(cx.bnd_deg[k]))
           for x in range(cx.m) for k in range(cx.bnd_ptr[x], cx.bnd_ptr[x + 1])}
    rev = {(int(cx.cob_idx[k]), y, int(cx.cob_deg[k]))
           for y in range(cx.m) for k in range(cx.cob_ptr[y], cx.cob_ptr[y + 1])}
    if fwd != rev:
        off = {t[0] for t in fwd ^ rev}
        report.add("transpose", off, "boundary and coboundary are not mutual transposes")

    for x in range(cx.m):
        if cx.dims[x] < 2:
            continue
        acc = {}
        for y, deg1 in cx.boundary(x):
            for z, deg2 in cx.boundary(y):
                acc[z] = acc.get(z, 0) + deg1 * deg2
        nonzero = [z for z, v in acc.items() if v != 0]
        if nonzero:
            report.add("boundary-squared", {x}, "integer boundary composition is nonzero")

    if deep:
        from .field import SparseMatrix, rank  # local import keeps layering one-way

        for x in range(cx.m):
            d = int(cx.dims[x])
            if d < 1:
                continue
            if not _proper_faces_are_sphere(cx, x, d, p, SparseMatrix, rank):
                report.add("deep-sphere", {x},
                           f"proper faces lack the GF({p}) cohomology of S^{d - 1}")
    return report


def _proper_faces_are_sphere(cx, x, d, p, SparseMatrix, rank):
    """Reduced GF(p) cohomology of the proper-face subcomplex vs. S^(d-1)."""
    cells = set()
    queue = deque(y for y, _ in cx.boundary(x))
    while queue:
        c = queue.popleft()
        if c in cells:
            continue
        cells.add(c)
        queue.extend(y for y, _ in cx.boundary(c))
    if not cells:
        return False

    by_dim = [[] for _ in range(d)]
    for c in cells:
        by_dim[int(cx.dims[c])].append(c)
    for group in by_dim:
        group.sort()
    pos = {c: i for group in by_dim for i, c in enumerate(group)}

    ranks = []
    for k in range(d - 1):
        entries = []
        for z in by_dim[k]:
            for w, deg in cx.coboundary(z):
                if w in cells:
                    entries.append((pos[w], pos[z], deg))
        ranks.append(rank(SparseMatrix(len(by_dim[k + 1]), len(by_dim[k]), entries, p)))

    dims_h = []
    for k in range(d):
        r_k = ranks[k] if k < len(ranks) else 0
        r_prev = ranks[k - 1] if k > 0 else 0
        dims_h.append(len(by_dim[k]) - r_k - r_prev)
    dims_h[0] -= 1  # reduced cohomology
    expected = [0] * d
    expected[d - 1] = 1
    return dims_h == expected
