"""Command-line front end.

Reads a complex (simplicial text or explicit CW JSON), validates it, runs
the stratification, and writes the result as JSON or as a DOT rendering of
the frontier order.  Volatile run metadata (worker count, per-phase wall
times, engine) goes to stderr so the output document stays byte-identical
across repeated runs and worker counts; ``--bench`` switches to the scaling
benchmark over grid tori.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import engines
from .complex import build_from_simplices, load_complex, validate
from .errors import MalformedInputError, PreconditionError
from .field import check_prime
from .generators import torus_grid
from .stratcast import run
from .strata import components, frontier

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INVALID = 2


@dataclass
class RunConfig:
    input: str = None
    format: str = None
    p: int = 2
    workers: int = None
    deep_validate: bool = False
    output: str = None
    emit: str = "json"
    engine: str = "auto"
    bench: bool = False
    sizes: list = None
    python_cap: int = 20000


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cwstrat",
        description="Canonical stratification of a finite regular CW complex.")
    ap.add_argument("--input", help="path to the input complex")
    ap.add_argument("--format", choices=["simplices", "cw"],
                    help="input format (default: inferred; .json means cw)")
    ap.add_argument("--coeff-p", type=int, default=2, metavar="P",
                    help="prime field characteristic (default 2)")
    ap.add_argument("--workers", type=int, default=None,
                    help="worker threads (default: available parallelism)")
    ap.add_argument("--deep-validate", action="store_true",
                    help="also check every cell's proper faces for sphere cohomology")
    ap.add_argument("--output", help="output path (default stdout)")
    ap.add_argument("--emit", choices=["json", "dot"], default="json",
                    help="output format (default json)")
    ap.add_argument("--engine", choices=["auto", "compiled", "python"], default="auto",
                    help="phase kernel implementation (default auto)")
    ap.add_argument("--bench", action="store_true",
                    help="run the grid-torus scaling benchmark instead of stratifying")
    ap.add_argument("--sizes", default="1000,10000,100000",
                    help="comma-separated target cell counts for --bench")
    ap.add_argument("--bench-python-cap", type=int, default=20000,
                    help="largest size at which --bench also times the python engine")
    return ap


def config_from_args(args):
    sizes = [int(s) for s in str(args.sizes).split(",") if s.strip()]
    return RunConfig(input=args.input, format=args.format, p=args.coeff_p,
                     workers=args.workers, deep_validate=args.deep_validate,
                     output=args.output, emit=args.emit, engine=args.engine,
                     bench=args.bench, sizes=sizes, python_cap=args.bench_python_cap)


def result_document(cx, state, strat):
    """Deterministic result document: cells, strata, frontier, stable meta."""
    return {
        "complex": {"cells": cx.m, "dim": cx.n},
        "coefficients": {"p": state.p},
        "cells": [
            {
                "id": c,
                "label": cx.labels[c],
                "dim": int(cx.dims[c]),
                "codim": int(state.codim[c]),
                "stratum": int(strat.stratum_of[c]),
            }
            for c in range(cx.m)
        ],
        "strata": [
            {"id": s.id, "dim": s.dim, "cell_count": len(s.cells)}
            for s in strat.strata
        ],
        "frontier": [list(edge) for edge in strat.covers],
    }


def render_dot(strat):
    """Frontier order as a DOT digraph; nodes labeled 'dim=k (#cells)'."""
    lines = ["digraph frontier {"]
    for s in strat.strata:
        lines.append(f'  s{s.id} [label="dim={s.dim} ({len(s.cells)})"];')
    for a, b in strat.covers:
        lines.append(f"  s{a} -> s{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def stratify_file(cfg):
    """Load, validate, stratify; returns (exit_code, text_or_None)."""
    try:
        check_prime(cfg.p)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED, None
    try:
        cx = load_complex(cfg.input, cfg.format)
    except MalformedInputError as exc:
        print(f"error: malformed input: {exc}", file=sys.stderr)
        return EXIT_MALFORMED, None
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MALFORMED, None

    report = validate(cx, deep=cfg.deep_validate, p=cfg.p)
    if not report.ok:
        print(f"validation failed: {report.summary()}", file=sys.stderr)
        return EXIT_INVALID, None

    t0 = time.perf_counter()
    state = run(cx, p=cfg.p, workers=cfg.workers, engine=cfg.engine)
    wall = time.perf_counter() - t0
    strat = frontier(cx, components(cx, state.codim))

    print(
        f"cwstrat: m={cx.m} n={cx.n} p={cfg.p} engine={state.engine_name} "
        f"workers={cfg.workers or 'auto'} strata={len(strat.strata)} "
        f"wall={wall:.3f}s phases: ab={state.timings['ab']:.3f}s "
        f"c={state.timings['c']:.3f}s d={state.timings['d']:.3f}s",
        file=sys.stderr)

    if cfg.emit == "dot":
        return EXIT_OK, render_dot(strat)
    doc = result_document(cx, state, strat)
    return EXIT_OK, json.dumps(doc, indent=2) + "\n"


def bench(cfg, sizes):
    """Grid-torus scaling benchmark; compares engines and worker counts.

    Returns a list of row dicts (size, engine, workers, wall and phase A+B
    seconds) and prints a table.  The largest size is also timed with one
    worker versus the configured count to expose the parallel speedup of
    phases A and B.
    """
    rows = []
    names = engines.available_engines() if cfg.engine == "auto" else [cfg.engine]
    for target in sorted(sizes):
        g = max(3, round((target / 6) ** 0.5))
        cx = build_from_simplices(torus_grid(g))
        for name in names:
            if name == "python" and cx.m > cfg.python_cap:
                continue
            workers_list = [cfg.workers or 1]
            if target == max(sizes) and name != "python":
                workers_list = sorted({1, cfg.workers or 4})
            for w in workers_list:
                t0 = time.perf_counter()
                state = run(cx, p=cfg.p, workers=w, engine=name)
                wall = time.perf_counter() - t0
                rows.append({
                    "m": cx.m, "engine": state.engine_name, "workers": w,
                    "wall_s": wall, "ab_s": state.timings["ab"],
                })
    header = f"{'m':>8}  {'engine':<9} {'workers':>7} {'wall_s':>9} {'ab_s':>9}"
    print(header)
    print("-" * len(header))
    for r in rows:
        print(f"{r['m']:>8}  {r['engine']:<9} {r['workers']:>7} "
              f"{r['wall_s']:>9.3f} {r['ab_s']:>9.3f}")
    return rows


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = config_from_args(args)

    if cfg.bench:
        if cfg.workers is None:
            cfg.workers = 4
        bench(cfg, cfg.sizes or [1000, 10000, 100000])
        return EXIT_OK

    if not cfg.input:
        print("error: --input is required (or use --bench)", file=sys.stderr)
        return EXIT_MALFORMED

    code, text = stratify_file(cfg)
    if text is not None:
        if cfg.output:
            with open(cfg.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return code


def console_main():
    raise SystemExit(main())
