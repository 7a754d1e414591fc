"""Canonical strata from a codimension labeling, with the frontier order.

Strata are connected components of equal-codimension cells under the
codimension-one face relation; restricting union-find to those relations is
sound because each equal-codimension layer is interval-closed in the face
poset.  The frontier partial order is seeded by face relations between
distinct strata and stored as its transitive reduction next to a closure
matrix for reachability queries.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import InvariantViolationError, PreconditionError


class _DisjointSet:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, a):
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # attach the larger id under the smaller for determinism
            if ra > rb:
                ra, rb = rb, ra
            self.parent[rb] = ra


@dataclass
class Stratum:
    id: int
    codim: int
    dim: int
    cells: list


@dataclass
class Stratification:
    """Partition of cells into strata plus the frontier partial order."""

    n: int
    stratum_of: np.ndarray
    strata: list
    covers: list = dc_field(default_factory=list)
    _reach: np.ndarray = None  # closure matrix; reach[a, b] means a > b

    def preceq(self, a, b):
        """Frontier comparison on stratum ids: a >= b in the frontier order."""
        if self._reach is None:
            raise PreconditionError("frontier has not been computed")
        return a == b or bool(self._reach[a, b])

    def cells_of(self, sid):
        return self.strata[sid].cells


def components(cx, codim):
    """Group cells into strata: union-find over codimension-one relations
    whose endpoints carry the same codimension.

    Stratum ids are assigned by (codim, smallest contained cell id); the
    stratum dimension is ``n - codim``.
    """
    codim = np.asarray(codim)
    if cx.m and (codim < 0).any():
        raise PreconditionError("every cell must be labeled before grouping")

    ds = _DisjointSet(cx.m)
    for k, x, y in cx.relations():
        if codim[x] == codim[y]:
            ds.union(x, y)

    groups = {}
    for c in range(cx.m):
        groups.setdefault(ds.find(c), []).append(c)
    ordered = sorted(groups.values(), key=lambda cells: (int(codim[cells[0]]), cells[0]))

    strata = []
    stratum_of = np.full(cx.m, -1, dtype=np.int32)
    for sid, cells in enumerate(ordered):
        cd = int(codim[cells[0]])
        strata.append(Stratum(id=sid, codim=cd, dim=cx.n - cd, cells=cells))
        for c in cells:
            stratum_of[c] = sid
    return Stratification(n=cx.n, stratum_of=stratum_of, strata=strata)


def frontier(cx, strat):
    """Fill in the frontier partial order of a stratification.

    Seeds tau >= sigma whenever some codimension-one relation crosses from
    tau into sigma; reachability is the transitive closure and the stored
    covering relation is its transitive reduction.  A cycle would contradict
    the strict dimension drop along the order and raises.
    """
    k = len(strat.strata)
    adj = np.zeros((k, k), dtype=bool)
    sof = strat.stratum_of
    for _, x, y in cx.relations():
        a, b = int(sof[x]), int(sof[y])
        if a != b:
            if strat.strata[a].dim <= strat.strata[b].dim:
                raise InvariantViolationError(
                    "frontier seed does not drop dimension; codim labels are inconsistent")
            adj[a, b] = True

    reach = adj.copy()
    for mid in range(k):
        reach |= np.outer(reach[:, mid], reach[mid, :])
    if reach.diagonal().any():
        raise InvariantViolationError("cycle detected in the frontier relation")

    covers = []
    for a in range(k):
        for b in range(k):
            if reach[a, b] and not (reach[a, :] & reach[:, b]).any():
                covers.append((a, b))
    strat.covers = sorted(covers)
    strat._reach = reach
    return strat


def same_stratum(strat, a, b):
    """True iff two cells lie in the same canonical stratum."""
    return int(strat.stratum_of[a]) == int(strat.stratum_of[b])


def has_morphism(strat, w, z):
    """True iff the stratum of ``w`` is frontier-greater-or-equal to the
    stratum of ``z`` (so some descending path of face relations and
    within-stratum hops leads from w's stratum to z's)."""
    return strat.preceq(int(strat.stratum_of[w]), int(strat.stratum_of[z]))


def from_document(doc):
    """Rebuild a Stratification from a result document (round-trip)."""
    n = doc["complex"]["dim"]
    cells = doc["cells"]
    stratum_of = np.full(len(cells), -1, dtype=np.int32)
    for entry in cells:
        stratum_of[entry["id"]] = entry["stratum"]
    strata = []
    for s in doc["strata"]:
        members = [c["id"] for c in cells if c["stratum"] == s["id"]]
        strata.append(Stratum(id=s["id"], codim=n - s["dim"], dim=s["dim"], cells=members))
    strat = Stratification(n=n, stratum_of=stratum_of, strata=strata)

    k = len(strata)
    reach = np.zeros((k, k), dtype=bool)
    for a, b in doc["frontier"]:
        reach[a, b] = True
    for mid in range(k):
        reach |= np.outer(reach[:, mid], reach[mid, :])
    strat.covers = [tuple(e) for e in doc["frontier"]]
    strat._reach = reach
    return strat
