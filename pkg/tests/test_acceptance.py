"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the report lines;
criterion 8 (scaling) is the long one and stays within its five-minute
budget on the compiled engine.
"""

from __future__ import annotations

import contextlib
import json
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from cwstrat import (
    LiveMask,
    build_from_cw,
    build_from_simplices,
    cohomology_dims,
    components,
    frontier,
    initial_state,
    is_delta,
    iterate,
    rank,
    run,
    star_complex,
)
from cwstrat.cli import main
from cwstrat.generators import (
    circle_cw,
    circle_simplices,
    parallelogram_flap,
    pinched_torus_disk,
    tetrahedron_boundary,
    torus_grid,
    torus_minimal,
    wedge_cone_cw,
)
from oracle import def51_stratify
from zoo import fixture_complexes, random_2complex, random_complex

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"


@contextlib.contextmanager
def criterion(num, description):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {num}: FAIL — {description}", file=sys.stderr, flush=True)
        raise
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE {num}: PASS — {description} ({elapsed:.2f}s)",
          file=sys.stderr, flush=True)


def by_label(cx):
    return {tuple(l) if isinstance(l, list) else l: c for c, l in enumerate(cx.labels)}


def degree_sizes(cc):
    return [len(b) for b in cc.degrees]


def nonzero_codiff_ranks(cc):
    return [rank(d) for d in cc.codifferentials if d.rows and d.cols]


# --------------------------------------------------------------- criterion 1


def test_criterion_1_wedge_cone_first_peel():
    with criterion(1, "cone-over-wedge fixture: first peel and stalk ranks"):
        t0 = time.perf_counter()
        cx = build_from_cw(wedge_cone_cw())
        by = by_label(cx)
        full = LiveMask.full(cx)

        # stalk ranks before any peeling, each with a rank-1 codifferential
        for lbl, shape in (("y1", [0, 1, 2]), ("y2", [0, 1, 2]),
                           ("w1", [0, 1, 1]), ("w2", [0, 1, 1]),
                           ("w3", [0, 1, 1]), ("w4", [0, 1, 1]),
                           ("e", [0, 1, 4])):
            cc = star_complex(cx, full, by[lbl])
            assert degree_sizes(cc) == shape, lbl
            assert nonzero_codiff_ranks(cc) == [1], lbl

        # the first peel removes exactly the x* and y* cells
        state = iterate(initial_state(cx), cx)
        removed = {cx.labels[c] for c in np.flatnonzero(state.codim == 0)}
        assert removed == {"x1", "x2", "x3", "x4", "y1", "y2"}
        survivors = {cx.labels[c] for c in state.mask.cells()}
        assert survivors == {"p", "q", "e", "w1", "w2", "w3", "w4", "z1", "z2"}

        # stalk of the wedge point inside the peeled subcomplex
        cc = star_complex(cx, state.mask, by["p"])
        assert degree_sizes(cc) == [1, 5, 0]
        assert nonzero_codiff_ranks(cc) == [1]
        assert time.perf_counter() - t0 < 1.0


# --------------------------------------------------------------- criterion 2


def test_criterion_2_flap_square_exclusions():
    with criterion(2, "flap-square fixture: upward-closure exclusions, two 2-strata"):
        t0 = time.perf_counter()
        cx = build_from_simplices(parallelogram_flap())
        by = by_label(cx)
        shared = by[(0, 4)]
        center = by[(4,)]

        assert len([c for c, _ in cx.coboundary(shared) if cx.dims[c] == 2]) == 3
        dims_h = cohomology_dims(star_complex(cx, LiveMask.full(cx), center))
        assert is_delta(dims_h, 2)  # the right local cohomology...

        state = iterate(initial_state(cx), cx)
        assert state.codim[shared] == -1  # ...but excluded from codim 0
        assert state.codim[center] == -1  # and so is the center, by closure

        full = run(cx)
        strat = frontier(cx, components(cx, full.codim))
        planes = [s for s in strat.strata if s.dim == 2]
        assert len(planes) == 2
        flap_cells = [{tuple(cx.labels[c]) for c in s.cells} for s in planes]
        assert {(0, 4, 5)} in flap_cells  # the lone extra triangle
        assert time.perf_counter() - t0 < 1.0


# --------------------------------------------------------------- criterion 3


def test_criterion_3_pinched_torus():
    with criterion(3, "pinched torus with disk: 4 strata, frontier chain"):
        t0 = time.perf_counter()
        cx = build_from_simplices(pinched_torus_disk(6, 4))
        state = run(cx)
        strat = frontier(cx, components(cx, state.codim))
        assert sorted(s.dim for s in strat.strata) == [0, 1, 2, 2]
        pinch = next(s.id for s in strat.strata if s.dim == 0)
        equator = next(s.id for s in strat.strata if s.dim == 1)
        sheets = [s.id for s in strat.strata if s.dim == 2]
        for sheet in sheets:
            assert strat.preceq(sheet, equator)
            assert strat.preceq(sheet, pinch)
        assert strat.preceq(equator, pinch)
        assert set(strat.covers) == {(sheets[0], equator), (sheets[1], equator),
                                     (equator, pinch)}
        assert time.perf_counter() - t0 < 5.0


# --------------------------------------------------------------- criterion 4


def test_criterion_4_two_coface_property():
    with criterion(4, "delta-star ridge cells have exactly two top cofaces"):
        complexes = [cx for _, cx in fixture_complexes() if cx.n >= 1]
        complexes += [random_2complex(seed, 50) for seed in range(100)]
        for cx in complexes:
            mask = LiveMask.full(cx)
            for c in cx.cells_of_dim(cx.n - 1):
                if is_delta(cohomology_dims(star_complex(cx, mask, int(c))), cx.n):
                    ncof = len([x for x, _ in cx.coboundary(int(c))
                                if cx.dims[x] == cx.n])
                    assert ncof == 2


# --------------------------------------------------------------- criterion 5


def test_criterion_5_oracle_equivalence():
    with criterion(5, "optimized run matches the literal inductive construction"):
        complexes = [(name, cx) for name, cx in fixture_complexes() if cx.m > 0]
        complexes += [(f"random-{seed}", random_complex(seed, max_cells=300))
                      for seed in range(1000, 1050)]
        for name, cx in complexes:
            res = def51_stratify(cx)
            state = run(cx)
            assert (state.codim == res.codim).all(), name

            strat = frontier(cx, components(cx, state.codim))
            parts = {frozenset(s.cells) for s in strat.strata}
            assert parts == set(res.partition), name

            index_of = {fs: i for i, fs in enumerate(res.partition)}
            rel = set()
            for a in range(len(strat.strata)):
                for b in range(len(strat.strata)):
                    if a != b and strat.preceq(a, b):
                        rel.add((index_of[frozenset(strat.strata[a].cells)],
                                 index_of[frozenset(strat.strata[b].cells)]))
            assert rel == res.frontier, name


# --------------------------------------------------------------- criterion 6


def test_criterion_6_manifold_sanity():
    with criterion(6, "S1, S2, T2 each give one full-dimensional stratum"):
        cases = [
            (build_from_cw(circle_cw(4)), 1),
            (build_from_simplices(circle_simplices(3)), 1),
            (build_from_simplices(tetrahedron_boundary()), 2),
            (build_from_simplices(torus_minimal()), 2),
            (build_from_simplices(torus_grid(5)), 2),
        ]
        for cx, dim in cases:
            state = run(cx)
            strat = frontier(cx, components(cx, state.codim))
            assert len(strat.strata) == 1
            assert strat.strata[0].dim == dim
            assert len(strat.strata[0].cells) == cx.m
            assert strat.covers == []


# --------------------------------------------------------------- criterion 7


def test_criterion_7_bytewise_determinism(tmp_path):
    with criterion(7, "byte-identical JSON for workers 1, 2, 8 on every fixture"):
        fixture_files = sorted(FIXTURES.glob("*.txt")) + sorted(FIXTURES.glob("*.json"))
        assert fixture_files
        for path in fixture_files:
            outputs = []
            for workers in ("1", "2", "8"):
                out = tmp_path / f"{path.stem}-{workers}.json"
                code = main(["--input", str(path), "--workers", workers,
                             "--output", str(out)])
                assert code == 0, path.name
                outputs.append(out.read_bytes())
            assert outputs[0] == outputs[1] == outputs[2], path.name


# --------------------------------------------------------------- criterion 8


def _timed_run(cx, workers):
    t0 = time.perf_counter()
    state = run(cx, workers=workers)
    return time.perf_counter() - t0, state


def test_criterion_8_scaling():
    with criterion(8, "near-linear scaling in m; phase A+B speedup 1 -> 4 workers"):
        budget_start = time.perf_counter()
        sizes = [13, 41, 129]  # grid sides: m = 6 g^2 ~ 1e3, 1e4, 1e5
        walls, cells = [], []
        largest = None
        for g in sizes:
            cx = build_from_simplices(torus_grid(g))
            best = min(_timed_run(cx, workers=1)[0] for _ in range(3 if g < 100 else 1))
            walls.append(best)
            cells.append(cx.m)
            largest = cx

        per_cell = [w / m for w, m in zip(walls, cells)]
        print(f"  scaling: m={cells} wall={['%.3f' % w for w in walls]} "
              f"per-cell={['%.2e' % t for t in per_cell]}", file=sys.stderr)
        ratio = walls[-1] / walls[0]
        linear = cells[-1] / cells[0]
        assert ratio <= 2.0 * linear, f"superlinear growth: {ratio:.1f} vs {linear:.1f}"
        assert ratio >= linear / 2.0, f"suspiciously sublinear: {ratio:.1f} vs {linear:.1f}"

        _, state1 = _timed_run(largest, workers=1)
        _, state4 = _timed_run(largest, workers=4)
        assert (state1.codim == state4.codim).all()
        ab1, ab4 = state1.timings["ab"], state4.timings["ab"]
        speedup = ab1 / ab4 if ab4 > 0 else float("inf")
        print(f"  speedup: phases A+B {ab1:.3f}s -> {ab4:.3f}s "
              f"({speedup:.2f}x with 4 workers)", file=sys.stderr)
        assert time.perf_counter() - budget_start < 300.0
        assert speedup >= 2.0, f"phase A+B speedup {speedup:.2f}x < 2x"
