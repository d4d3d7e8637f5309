"""Timing harness: build/search sweeps over n and worker-count sweeps.

Timings wrap the build or search call only (never data generation or
I/O) using a monotonic clock, the worker pool is warmed up beforehand so
thread startup is not billed to the first repeat, and the per-point
minimum over repeats is the statistic handed to the fits, which damps
scheduler noise at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from time import perf_counter
from typing import List, Optional, Tuple

from .distributed_search import run_search
from .distributed_tree import build_distributed_tree
from .engine import Engine, EngineConfig
from .fits import FitResult, fit_linear_nlogn, fit_scaling_model
from .testdata import BOXES_PER_SQUARE, SquareGridSpec, generate_test_data

__all__ = [
    "FULL_DEPTH",
    "BenchRecord",
    "run_build_bench",
    "run_search_bench",
    "run_scaling_bench",
]

# A cutoff no tree reaches: the pure dataset path, never collect-to-array.
FULL_DEPTH = 2**31


@dataclass(frozen=True)
class BenchRecord:
    phase: str  # "build" or "search"
    n: int
    workers: int
    repeat: int
    seconds: float


def _bench_boxes(n: int):
    if n < BOXES_PER_SQUARE or n % BOXES_PER_SQUARE:
        raise ValueError(f"benchmark sizes must be multiples of {BOXES_PER_SQUARE}, got {n}")
    return generate_test_data(SquareGridSpec(n // BOXES_PER_SQUARE))


def _warm(engine: Engine) -> None:
    # spin up the pool threads outside the timed region
    engine.from_items(range(engine.config.partitions * 2)).map(lambda x: x).collect()


def run_build_bench(
    min_exp: int,
    max_exp: int,
    workers: int,
    repeats: int,
    partitions: Optional[int] = None,
    cutoff: Optional[int] = 0,
) -> Tuple[List[BenchRecord], FitResult]:
    """Time the hybrid build for n = 2^min_exp .. 2^max_exp; fit n log n.

    The default cutoff of 0 collects at the root, which times the
    memory-dominant hybrid path; pass FULL_DEPTH for the pure dataset path
    or None for the auto cutoff.
    """
    if min_exp > max_exp:
        raise ValueError("empty exponent range")
    records: List[BenchRecord] = []
    mins: List[Tuple[int, float]] = []
    for exp in range(min_exp, max_exp + 1):
        n = 2**exp
        boxes = _bench_boxes(n)
        with Engine(EngineConfig(workers, partitions)) as engine:
            _warm(engine)
            best = float("inf")
            for rep in range(repeats):
                t0 = perf_counter()
                build_distributed_tree(boxes, engine, cutoff)
                dt = perf_counter() - t0
                records.append(BenchRecord("build", n, workers, rep, dt))
                best = min(best, dt)
        mins.append((n, best))
    return records, fit_linear_nlogn(mins)


def run_search_bench(
    min_exp: int,
    max_exp: int,
    workers: int,
    repeats: int,
    partitions: Optional[int] = None,
) -> Tuple[List[BenchRecord], FitResult]:
    """Time searching every box against the tree of all boxes; fit n log n."""
    if min_exp > max_exp:
        raise ValueError("empty exponent range")
    records: List[BenchRecord] = []
    mins: List[Tuple[int, float]] = []
    for exp in range(min_exp, max_exp + 1):
        n = 2**exp
        boxes = _bench_boxes(n)
        with Engine(EngineConfig(workers, partitions)) as engine:
            _warm(engine)
            tree_ds = build_distributed_tree(boxes, engine, 0)
            search_ds = engine.from_items([(b.name, b) for b in boxes])
            best = float("inf")
            for rep in range(repeats):
                t0 = perf_counter()
                run_search(search_ds, tree_ds)
                dt = perf_counter() - t0
                records.append(BenchRecord("search", n, workers, rep, dt))
                best = min(best, dt)
        mins.append((n, best))
    return records, fit_linear_nlogn(mins)


def run_scaling_bench(
    exp: int,
    max_workers: int,
    repeats: int,
    partitions: Optional[int] = None,
    cutoff: int = FULL_DEPTH,
    phase: str = "build",
) -> Tuple[List[BenchRecord], FitResult]:
    """Time one phase at n = 2^exp for w = 1..max_workers; fit the worker model.

    The default times the pure dataset-path build, where the per-worker
    coordination cost is most visible.
    """
    if phase not in ("build", "search"):
        raise ValueError(f"unknown phase {phase!r}")
    if max_workers < 3:
        raise ValueError("scaling fit needs at least 3 worker counts")
    n = 2**exp
    boxes = _bench_boxes(n)
    worker_counts = range(1, max_workers + 1)
    engines = {w: Engine(EngineConfig(w, partitions)) for w in worker_counts}
    records: List[BenchRecord] = []
    best = {w: float("inf") for w in worker_counts}
    try:
        inputs = {}
        for w, engine in engines.items():
            _warm(engine)
            if phase == "search":
                tree_ds = build_distributed_tree(boxes, engine, 0)
                search_ds = engine.from_items([(b.name, b) for b in boxes])
                inputs[w] = (search_ds, tree_ds)
            else:
                # one untimed run per engine: caches and pool fully hot
                build_distributed_tree(boxes, engine, cutoff)
        # round-robin over worker counts so slow machine-load drift spreads
        # evenly across the sweep instead of biasing one end of it
        for rep in range(repeats):
            for w in worker_counts:
                t0 = perf_counter()
                if phase == "build":
                    build_distributed_tree(boxes, engines[w], cutoff)
                else:
                    run_search(*inputs[w])
                dt = perf_counter() - t0
                records.append(BenchRecord(phase, n, w, rep, dt))
                best[w] = min(best[w], dt)
    finally:
        for engine in engines.values():
            engine.shutdown()
    return records, fit_scaling_model(sorted(best.items()))
