import random

from boxtree.geometry import Box


def random_boxes(n, seed, lo=0.0, hi=1000.0, max_side=50.0):
    """Deterministic random box sets with names 0..n-1."""
    rng = random.Random(seed)
    out = []
    for name in range(n):
        x0 = rng.uniform(lo, hi)
        y0 = rng.uniform(lo, hi)
        out.append(
            Box(name, x0, y0, x0 + rng.uniform(0, max_side), y0 + rng.uniform(0, max_side))
        )
    return out
