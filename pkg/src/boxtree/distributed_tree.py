"""Distributed tree build: the tree as a pair dataset of named nodes.

The upper tree is built by subdividing four presorted datasets (x_min,
y_min, x_max and y_max super-key order). Keeping all four orders lets a
node's bounding region be read off the first/last elements of the child
datasets, so nothing has to be returned as the recursion unwinds and
subtree builds can be handed to asynchronous tasks. Below a cutoff depth
the current datasets are collected to arrays and the subtree is built by
the memory-resident algorithm, which is several orders of magnitude
faster per element.
"""

from __future__ import annotations

import math
from concurrent.futures import Future, ThreadPoolExecutor
from dataclasses import dataclass
from operator import itemgetter
from time import perf_counter
from typing import List, NamedTuple, Optional, Sequence, Tuple

from .engine import Engine, PairDataset, PartitionedDataset
from .geometry import (
    AXIS_XMAX,
    AXIS_XMIN,
    AXIS_YMAX,
    AXIS_YMIN,
    Box,
    Region,
    ensure_unique_names,
    superkey,
)
from .memory_tree import KdNode, build_memory_tree, presort

__all__ = [
    "TreeNodeValue",
    "TreeGraphEntry",
    "CutoffParams",
    "four_way_presort",
    "region_from_sorted",
    "cutoff_depth",
    "measure_cutoff_params",
    "build_distributed_tree",
    "flatten_memory_subtree",
]

SORT_AXES = (AXIS_XMIN, AXIS_YMIN, AXIS_XMAX, AXIS_YMAX)


class TreeNodeValue(NamedTuple):
    """Value part of a tree entry: the node's box plus child links.

    Child names refer to other entries' keys; a box's name doubles as its
    node name since each box occupies exactly one node. Child regions are
    the bounding regions of the linked subtrees; absent children are None
    on both fields.
    """

    box: Box
    lt_name: Optional[int]
    lt_region: Optional[Region]
    gt_name: Optional[int]
    gt_region: Optional[Region]


# One element of the tree dataset: (node name, node value).
TreeGraphEntry = Tuple[int, TreeNodeValue]


@dataclass(frozen=True)
class CutoffParams:
    """Measured constants for the dataset-vs-array build trade-off.

    c_r and c_a are seconds per (n log2 n) element-steps for the dataset
    path and the array path respectively; w is the worker count and n the
    box count of the build being planned.
    """

    c_r: float
    c_a: float
    workers: int
    n: int

    def __post_init__(self) -> None:
        if self.c_r <= 0 or self.c_a <= 0:
            raise ValueError("c_r and c_a must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.n < 0:
            raise ValueError("n must be non-negative")


def cutoff_depth(params: CutoffParams) -> int:
    """Smallest depth at which the array path beats the dataset path.

    Solves d > log2(n) - c_r / (c_a * w) - 1 for the smallest non-negative
    integer d. A huge c_r / c_a ratio drives the cutoff to 0 (collect at
    the root); a ratio near 0 pushes it to the full tree depth.
    """
    if params.n < 1:
        raise ValueError("cutoff_depth needs n >= 1")
    bound = math.log2(params.n) - params.c_r / (params.c_a * params.workers) - 1.0
    return max(0, math.floor(bound) + 1)


def four_way_presort(
    engine: Engine, boxes: Sequence[Box]
) -> Tuple[PartitionedDataset, ...]:
    """Four datasets holding ``boxes`` sorted by each coordinate's super key."""
    ensure_unique_names(boxes)
    base = engine.from_items(boxes)
    out = []
    for axis in SORT_AXES:
        keyed = base.map(lambda b, a=axis: (superkey(b, a), b))
        out.append(keyed.sort_by_key().map(itemgetter(1)))
    return tuple(out)


def region_from_sorted(
    ds_xmin: PartitionedDataset,
    ds_ymin: PartitionedDataset,
    ds_xmax: PartitionedDataset,
    ds_ymax: PartitionedDataset,
) -> Region:
    """Bounding region of a box set, read off its four sorted datasets.

    First element of each min-sorted dataset, last element of each
    max-sorted one. Raises IndexError on empty datasets.
    """
    return Region(
        ds_xmin.first().x_min,
        ds_ymin.first().y_min,
        ds_xmax.last().x_max,
        ds_ymax.last().y_max,
    )


def measure_cutoff_params(
    engine: Engine, boxes: Sequence[Box], presorted: Optional[Tuple] = None
) -> CutoffParams:
    """Micro-benchmark c_r and c_a on this machine for these boxes.

    c_r comes from timing one root-level dataset subdivision (splitAt plus
    the three filters); c_a from timing an in-memory build of a small
    sample. Both are normalised to seconds per element-step.
    """
    n = len(boxes)
    if n < 2:
        raise ValueError("need at least 2 boxes to measure build constants")
    ds4 = presorted if presorted is not None else four_way_presort(engine, boxes)

    t0 = perf_counter()
    _subdivide(ds4, n, AXIS_XMIN)
    t_root = perf_counter() - t0
    # one node at depth 0 subdivides n elements across w workers
    c_r = max(t_root * engine.config.workers / n, 1e-12)

    sample = list(boxes[: min(n, 1024)])
    x_sorted, y_sorted = presort(sample)
    t0 = perf_counter()
    build_memory_tree(x_sorted, y_sorted)
    t_mem = perf_counter() - t0
    m = len(sample)
    c_a = max(t_mem / (m * math.log2(m)), 1e-12)

    return CutoffParams(c_r=c_r, c_a=c_a, workers=engine.config.workers, n=n)


def _subdivide(ds4: Tuple, n: int, axis: int):
    """Split the axis dataset at its median and filter the other three."""
    m = n // 2
    split_less, median, split_greater = ds4[axis].split_at(m)
    pivot = superkey(median, axis)
    coord = axis + 1
    less4: List[Optional[PartitionedDataset]] = [None] * 4
    greater4: List[Optional[PartitionedDataset]] = [None] * 4
    less4[axis], greater4[axis] = split_less, split_greater
    for other in SORT_AXES:
        if other == axis:
            continue
        ds = ds4[other]
        less4[other] = ds.filter(lambda b, p=pivot, c=coord: (b[c], b[0]) < p)
        greater4[other] = ds.filter(lambda b, p=pivot, c=coord: (b[c], b[0]) > p)
    return tuple(less4), median, tuple(greater4)


def build_distributed_tree(
    boxes: Sequence[Box], engine: Engine, cutoff: Optional[int] = 0
) -> PairDataset:
    """Build the tree as a pair dataset of (name, TreeNodeValue) entries.

    Depths above ``cutoff`` are built by subdividing the four sorted
    datasets; at the cutoff the x_min/y_min datasets are collected to
    arrays and the subtree is built in memory on an asynchronous task
    while the coordinator keeps subdividing the remaining datasets. The
    entry set is identical for every cutoff and worker count, and matches
    the flattened memory-resident tree. ``cutoff=None`` selects the depth
    automatically from measured build constants.
    """
    boxes = list(boxes)
    if not boxes:
        return engine.from_items([])
    ensure_unique_names(boxes)
    ds4 = four_way_presort(engine, boxes)
    if cutoff is None:
        if len(boxes) < 2:
            cutoff = 0
        else:
            cutoff = cutoff_depth(measure_cutoff_params(engine, boxes, ds4))
    if cutoff < 0:
        raise ValueError(f"cutoff depth must be >= 0, got {cutoff}")

    entries: List[TreeGraphEntry] = []
    tasks: List[Future] = []
    with ThreadPoolExecutor(
        max_workers=engine.config.workers, thread_name_prefix="subtree"
    ) as subtree_pool:
        _build(ds4, len(boxes), 0, cutoff, entries, tasks, subtree_pool)
        # final barrier: task buffers are appended in submission order
        buffers = [t.result() for t in tasks]
    for buf in buffers:
        entries.extend(buf)
    return engine.from_items(entries)


def _build(
    ds4: Tuple,
    n: int,
    depth: int,
    cutoff: int,
    entries: List[TreeGraphEntry],
    tasks: List[Future],
    subtree_pool: ThreadPoolExecutor,
) -> None:
    if n == 0:
        return
    if depth >= cutoff:
        # small enough: hand the rest of this branch to the array path
        x_items = ds4[AXIS_XMIN].collect()
        y_items = ds4[AXIS_YMIN].collect()
        tasks.append(subtree_pool.submit(_memory_subtree_entries, x_items, y_items, depth))
        return

    axis = depth & 1
    less4, median, greater4 = _subdivide(ds4, n, axis)
    n_less = n // 2
    n_greater = n - n_less - 1

    # child names/regions are read from the child datasets up front, so no
    # information ever needs to flow back up the recursion
    child_axis = (depth + 1) & 1
    lt_name = lt_region = gt_name = gt_region = None
    if n_less:
        lt_region = region_from_sorted(*less4)
        lt_name = less4[child_axis].element_at(n_less // 2).name
    if n_greater:
        gt_region = region_from_sorted(*greater4)
        gt_name = greater4[child_axis].element_at(n_greater // 2).name
    entries.append(
        (median.name, TreeNodeValue(median, lt_name, lt_region, gt_name, gt_region))
    )

    _build(less4, n_less, depth + 1, cutoff, entries, tasks, subtree_pool)
    _build(greater4, n_greater, depth + 1, cutoff, entries, tasks, subtree_pool)


def _memory_subtree_entries(
    x_items: List[Box], y_items: List[Box], depth: int
) -> List[TreeGraphEntry]:
    root = build_memory_tree(x_items, y_items, depth)
    return flatten_memory_subtree(root) if root is not None else []


def flatten_memory_subtree(root: KdNode) -> List[TreeGraphEntry]:
    """One (name, TreeNodeValue) entry per node of a memory-resident tree."""
    entries: List[TreeGraphEntry] = []
    stack = [root]
    while stack:
        node = stack.pop()
        less, greater = node.less, node.greater
        entries.append(
            (
                node.box.name,
                TreeNodeValue(
                    node.box,
                    less.box.name if less else None,
                    less.region if less else None,
                    greater.box.name if greater else None,
                    greater.region if greater else None,
                ),
            )
        )
        # pre-order: push greater first so the less branch is emitted first
        if greater is not None:
            stack.append(greater)
        if less is not None:
            stack.append(less)
    return entries
