"""Iterative canonical-codimension assignment.

One iteration per codimension d = 0..n, each in four phases over the current
subcomplex:

  A. (parallel) star cohomology of every alive cell, reduced to a single
     bit: is it the delta complex concentrated in degree n - d?
  B. (parallel, independent of A) for every alive codimension-one relation
     whose level reached d - 1, test whether the difference of open stars
     has vanishing cohomology; if so the relation's level becomes d.
  C. (after A and B) assign codimension d to every alive (n-d)-cell, then
     sweep dimensions downward: a cell joins codimension d when its star
     cohomology passed the delta test and every alive coface already carries
     codimension d along a level-d relation.  Decreasing order makes the
     codimension-one check equivalent to quantifying over all cofaces.
  D. remove the newly labeled cells from the live mask.

Cells are masked, never deleted, so ids stay stable across iterations.
Output is independent of the worker count: phase results land in disjoint
per-item slots and phases are separated by barriers.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .complex import LiveMask, validate
from .engines import get_engine
from .errors import InvariantViolationError, PreconditionError, ValidationFailure
from .field import check_prime


@dataclass
class StratState:
    """Mutable run state: per-cell codimension, per-relation level, mask.

    ``codim[c] == -1`` means unset; once set it is never rewritten.
    ``level[k]`` is the level of the k-th codimension-one relation (indexed
    as in ``CWComplex.relations``); it starts at -1, never decreases, and
    never exceeds the current iteration index.
    """

    codim: np.ndarray
    level: np.ndarray
    d: int
    mask: LiveMask
    p: int = 2
    engine_name: str = ""
    timings: dict = dc_field(default_factory=lambda: {"ab": 0.0, "c": 0.0, "d": 0.0})

    def level_of(self, cx, x, y):
        k = cx.relation_index(x, y)
        if k < 0:
            raise PreconditionError(f"({x} > {y}) is not a codimension-one relation")
        return int(self.level[k])

    def codim_of(self, c):
        v = int(self.codim[c])
        return None if v < 0 else v


def initial_state(cx, p=2):
    return StratState(
        codim=np.full(cx.m, -1, dtype=np.int32),
        level=np.full(cx.num_relations, -1, dtype=np.int32),
        d=0,
        mask=LiveMask.full(cx),
        p=p,
    )


def iterate(state, cx, p=None, workers=1, engine=None, pool=None):
    """Advance the state by one iteration (one codimension value)."""
    if state.d > cx.n:
        raise PreconditionError(f"iteration {state.d} exceeds complex dimension {cx.n}")
    p = state.p if p is None else p
    check_prime(p)
    eng = engine if hasattr(engine, "ab_tasks") else get_engine(engine, cx)
    d = state.d
    target = cx.n - d
    alive = state.mask.alive
    hdelta = np.zeros(cx.m, dtype=np.uint8)

    t0 = time.perf_counter()
    tasks = eng.ab_tasks(cx, alive, state.level, d, target, p, hdelta, max(1, workers))
    if pool is not None and workers > 1 and len(tasks) > 1:
        for fut in [pool.submit(task) for task in tasks]:
            fut.result()
    else:
        for task in tasks:
            task()
    t1 = time.perf_counter()
    state.timings["ab"] += t1 - t0

    state.codim[alive & (cx.dims == target)] = d
    for i in range(target - 1, -1, -1):
        cand = np.flatnonzero(alive & (cx.dims == i)).astype(np.int32)
        eng.phase_c_slice(cx, cand, alive, hdelta, state.level, state.codim, d)
    t2 = time.perf_counter()
    state.timings["c"] += t2 - t1

    state.mask.alive[state.codim == d] = False
    state.timings["d"] += time.perf_counter() - t2
    state.d += 1
    state.engine_name = eng.name
    return state


def run(cx, p=2, workers=None, engine=None):
    """Assign a canonical codimension to every cell.

    The complex must pass shallow validation.  The result is deterministic:
    identical for any worker count and either engine.
    """
    check_prime(p)
    report = validate(cx)
    if not report.ok:
        raise ValidationFailure(report)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers < 1:
        raise PreconditionError("workers must be >= 1")

    state = initial_state(cx, p=p)
    if cx.m == 0:
        return state
    eng = get_engine(engine, cx)
    pool = ThreadPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for _ in range(cx.n + 1):
            iterate(state, cx, p=p, workers=workers, engine=eng, pool=pool)
    finally:
        if pool is not None:
            pool.shutdown(wait=True)
    if (state.codim < 0).any():
        raise InvariantViolationError("cells left unlabeled after the final iteration")
    return state
