"""
Timing harness for repeated sewing in a fixed dimension.

Each step sews the current polytope through its lexicographically first
tower.  Wall time is the minimum over a few repeats of a batch of
:func:`sew_levels` calls, divided by the batch size; batches are sized to
last a couple of milliseconds so timer resolution does not dominate small
inputs.  The tower search is not timed.  The operation counter is the number
of facet records the levels read.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .cyclic import cyclic_polytope
from .sewing import _polytope_from_masks, sew_levels
from .tower import find_towers


@dataclass(frozen=True)
class BenchRow:
    n: int  # vertices before the sew
    facets: int  # facets before the sew
    seconds: float
    touched: int

    @property
    def ratio(self) -> float:
        return self.seconds / self.facets


def _batch_size(P, T, label, target=0.002) -> int:
    batch = 1
    while True:
        t0 = time.perf_counter()
        for _ in range(batch):
            sew_levels(P, T, label)
        if time.perf_counter() - t0 >= target or batch >= 1 << 16:
            return batch
        batch *= 2


def run_bench(start_n: int, end_n: int, dim: int = 4, repeats: int = 7) -> list:
    """Sew from C(start_n, dim) up to ``end_n`` vertices, one row per sew.

    All steps are built first and then timed in round-robin passes, keeping
    the per-step minimum, so slow drift in machine load hits every size
    alike.
    """
    P = cyclic_polytope(start_n, dim)
    steps = []
    k = 1
    while P.n < end_n:
        T = find_towers(P, limit=1)[0]
        label = f"s{k}"
        levels = sew_levels(P, T, label)
        steps.append((P, T, label, levels.facets_touched))
        P = _polytope_from_masks(P.dim, P.labels + (label,), levels.levels[0].sewn)
        k += 1

    batches = [_batch_size(P, T, label) for P, T, label, _ in steps]
    best = [float("inf")] * len(steps)
    for _ in range(repeats):
        for i, (P, T, label, _) in enumerate(steps):
            t0 = time.perf_counter()
            for _ in range(batches[i]):
                sew_levels(P, T, label)
            best[i] = min(best[i], (time.perf_counter() - t0) / batches[i])
    return [BenchRow(P.n, len(P.facets), t, touched) for (P, _, _, touched), t in zip(steps, best)]


def ratio_spread(rows) -> float:
    """max/min of seconds per facet."""
    ratios = [r.ratio for r in rows]
    return max(ratios) / min(ratios)


def linear_fit(xs, ys) -> tuple:
    """Fit y ~ a*x + b minimising squared relative error.

    Returns ``(a, b, worst)`` with ``worst`` the largest |y - fit| / y.
    """
    # weighted normal equations with weights 1/y^2
    sw = swx = swxx = swy = swxy = 0.0
    for x, y in zip(xs, ys):
        w = 1.0 / (y * y)
        sw += w
        swx += w * x
        swxx += w * x * x
        swy += w * y
        swxy += w * x * y
    det = sw * swxx - swx * swx
    if det == 0:
        a, b = 0.0, swy / sw
    else:
        a = (sw * swxy - swx * swy) / det
        b = (swxx * swy - swx * swxy) / det
    worst = max(abs(y - (a * x + b)) / y for x, y in zip(xs, ys))
    return a, b, worst
