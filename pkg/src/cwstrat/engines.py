"""Execution engines for the iteration phases.

The compiled core (Cython) runs the per-cell and per-relation cohomology
kernels with the GIL released, so a thread pool achieves real parallelism;
the pure-Python engine runs the same phases through the module-level
operations and serves as the fallback (and the readable reference).  Both
produce bit-identical phase results; selection happens at import with
``auto`` preferring the compiled core.
"""

from __future__ import annotations

from functools import partial

import numpy as np

from .complex import LiveMask
from .errors import InvariantViolationError, PreconditionError
from .field import cohomology_dims
from .localcohom import diff_complex, is_delta, star_complex

try:
    from . import _core
except ImportError:  # pragma: no cover - depends on build environment
    _core = None

HAVE_COMPILED = _core is not None


def _chunks(total, pieces):
    """Split range(total) into at most ``pieces`` contiguous ranges."""
    pieces = max(1, min(pieces, total)) if total else 0
    bounds = np.linspace(0, total, pieces + 1, dtype=np.int64)
    return [(int(bounds[i]), int(bounds[i + 1])) for i in range(pieces)
            if bounds[i] < bounds[i + 1]]


class PythonEngine:
    """Phase kernels built directly on the public module operations."""

    name = "python"

    def supports(self, cx):
        return True

    def ab_tasks(self, cx, alive, level, d, target, p, hdelta, workers):
        mask = LiveMask(alive)

        def run_a():
            for w in np.flatnonzero(alive):
                dims = cohomology_dims(star_complex(cx, mask, int(w), p))
                hdelta[w] = is_delta(dims, target)

        def run_b():
            cand = np.flatnonzero(
                (level == d - 1) & alive[cx.cob_idx] & alive[cx.rel_src])
            for k in cand:
                x = int(cx.cob_idx[k])
                y = int(cx.rel_src[k])
                dims = cohomology_dims(diff_complex(cx, mask, x, y, p))
                if not any(dims):
                    level[k] = d

        return [run_a, run_b]

    def phase_c_slice(self, cx, cand, alive, hdelta, level, codim, d):
        for u in cand:
            if not hdelta[u]:
                continue
            ok = True
            for k in range(cx.cob_ptr[u], cx.cob_ptr[u + 1]):
                x = cx.cob_idx[k]
                if alive[x] and (codim[x] != d or level[k] != d):
                    ok = False
                    break
            if ok:
                codim[u] = d


class CompiledEngine:
    """Thread-chunked wrappers around the Cython kernels."""

    name = "compiled"
    MAX_STAR = 1024  # dense local scratch is MAX_STAR^2 int64 per task
    MAX_DIM = 60

    def supports(self, cx):
        if _core is None or cx.n > self.MAX_DIM:
            return False
        if cx.m == 0:
            return True
        return self._star_bound(cx) <= self.MAX_STAR

    def _star_bound(self, cx):
        if cx._max_star is None:
            cx._max_star = int(_core.max_star_size(cx.cob_ptr, cx.cob_idx))
        return cx._max_star

    def ab_tasks(self, cx, alive, level, d, target, p, hdelta, workers):
        if cx.m == 0:
            return []
        cap = max(2, self._star_bound(cx))
        if cap > self.MAX_STAR:
            raise PreconditionError(
                f"star size {cap} exceeds the compiled engine bound {self.MAX_STAR}")
        alive_u8 = alive.view(np.uint8)
        tasks = []
        for lo, hi in _chunks(cx.m, workers * 4):
            tasks.append(partial(
                _core.phase_a_range, lo, hi, cx.dims,
                cx.cob_ptr, cx.cob_idx, cx.cob_deg,
                alive_u8, target, p, cx.n, cap, hdelta))
        for lo, hi in _chunks(cx.num_relations, workers * 4):
            tasks.append(partial(
                _core.phase_b_range, lo, hi, cx.dims,
                cx.cob_ptr, cx.cob_idx, cx.cob_deg, cx.rel_src,
                alive_u8, level, d, p, cx.n, cap))
        return tasks

    def phase_c_slice(self, cx, cand, alive, hdelta, level, codim, d):
        if len(cand) == 0:
            return
        _core.phase_c_slice(np.ascontiguousarray(cand, dtype=np.int32),
                            cx.cob_ptr, cx.cob_idx,
                            alive.view(np.uint8), hdelta, level, codim, d)


_PYTHON = PythonEngine()
_COMPILED = CompiledEngine() if HAVE_COMPILED else None


def available_engines():
    names = ["python"]
    if HAVE_COMPILED:
        names.insert(0, "compiled")
    return names


def get_engine(name=None, cx=None):
    """Resolve an engine by name; ``auto``/None prefers the compiled core.

    Falls back to pure Python when the compiled core is missing or the
    complex exceeds its star-size/dimension bounds.
    """
    if name is None or name == "auto":
        if _COMPILED is not None and (cx is None or _COMPILED.supports(cx)):
            return _COMPILED
        return _PYTHON
    if name == "python":
        return _PYTHON
    if name == "compiled":
        if _COMPILED is None:
            raise PreconditionError("compiled engine is not available in this build")
        if cx is not None and not _COMPILED.supports(cx):
            raise PreconditionError(
                "complex exceeds compiled-engine bounds (star size or dimension)")
        return _COMPILED
    raise PreconditionError(f"unknown engine {name!r}")
