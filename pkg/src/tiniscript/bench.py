"""Benchmark the geometry kernels: compiled extension vs pure Python.

Workload is the simulator hot path per tick: one resolve_motion plus the
three sensor reads (one raycast, two light sums) against the bundled
corridor world, driven along a sweeping arc so rays hit varied geometry.
"""

from __future__ import annotations

import math
import time

from .sim import resolve_world
from .sim import _geom

try:
    from .sim import _geomfast
except ImportError:
    _geomfast = None


def _workload(kernels, walls, circles, lights, ticks: int) -> float:
    x, y, theta = 0.0, 0.0, 0.0
    vl, vr = 0.38, 0.42
    start = time.perf_counter()
    for i in range(ticks):
        x, y, theta, collided = kernels.resolve_motion(
            x, y, theta, vl, vr, 0.12, 0.08, 0.01, walls, circles
        )
        kernels.raycast(x, y, math.cos(theta), math.sin(theta), walls, circles)
        kernels.light_sum(x + 0.05, y + 0.05, lights)
        kernels.light_sum(x + 0.05, y - 0.05, lights)
        if collided or i % 400 == 399:
            # bounce back into the arena so the run keeps crossing geometry
            theta = kernels.normalize_angle(theta + 2.5)
            x, y = 0.2, 0.2
    return time.perf_counter() - start


def run_bench(ticks: int = 200_000) -> None:
    world = resolve_world("corridor")
    walls, circles, lights = world.arrays(default_intensity=100.0)

    pure_s = _workload(_geom, walls, circles, lights, ticks)
    per_pure = pure_s / ticks * 1e6
    print(f"pure:     {pure_s:8.3f} s for {ticks} ticks  ({per_pure:7.2f} us/tick)")

    if _geomfast is None:
        print("compiled: not built (pip install with a C compiler to enable)")
        return
    fast_s = _workload(_geomfast, walls, circles, lights, ticks)
    per_fast = fast_s / ticks * 1e6
    print(f"compiled: {fast_s:8.3f} s for {ticks} ticks  ({per_fast:7.2f} us/tick)")
    print(f"speedup:  {pure_s / fast_s:.1f}x")


if __name__ == "__main__":
    run_bench()
