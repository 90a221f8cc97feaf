"""Benchmark harness comparing the Hausdorff kernels.

Three kernels run on the same clustered coordinate sets: the numpy full-scan
oracle (whose inner-visit count is by definition ``2 * n * m`` for the two
directed passes), the early-break kernel on the compiled backend, and the
same scan on the pure-Python backend. Per-run records carry
``{kernel, n, m, seed, value, inner_visits, wall_ns}`` and serialize as JSON
lines.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from . import _kernels_py
from .hausdorff import BACKEND, CoordSet, hausdorff_naive
from .rng import philox

try:
    from . import _kernels as _compiled  # type: ignore[attr-defined]
except ImportError:
    _compiled = None


@dataclass(frozen=True)
class BenchRecord:
    kernel: str
    n: int
    m: int
    seed: int
    value: float
    inner_visits: int
    wall_ns: int


def gaussian_blobs(n: int, seed: int, separation: float = 6.0,
                   sigma: float = 1.0) -> CoordSet:
    """n points split between two planar Gaussian blobs; deterministic per seed."""
    rng = philox(seed)
    half = n // 2
    a = rng.normal((0.0, 0.0), sigma, size=(half, 2))
    b = rng.normal((separation, 0.0), sigma, size=(n - half, 2))
    return CoordSet.from_points(np.vstack([a, b]))


def _run_early_break(impl, a: CoordSet, b: CoordSet, seed: int):
    rng = philox(seed)
    order_b = rng.permutation(len(b)).astype(np.int64)
    order_a = rng.permutation(len(a)).astype(np.int64)
    start = time.perf_counter_ns()
    d1, v1 = impl.directed_coords(a.pts, b.pts, order_b)
    d2, v2 = impl.directed_coords(b.pts, a.pts, order_a)
    wall = time.perf_counter_ns() - start
    return float(max(d1, d2)), int(v1) + int(v2), wall


def run_bench(n: int = 10_000, m: Optional[int] = None,
              seeds=(0,), include_pure: bool = True) -> list[BenchRecord]:
    """Run all kernels over two-blob point sets; one record per kernel per seed."""
    m = n if m is None else m
    records: list[BenchRecord] = []
    for seed in seeds:
        a = gaussian_blobs(n, seed=2 * seed + 1)
        b = gaussian_blobs(m, seed=2 * seed + 2)
        start = time.perf_counter_ns()
        value = hausdorff_naive(a, b)
        wall = time.perf_counter_ns() - start
        records.append(BenchRecord("naive", n, m, seed, value, 2 * n * m, wall))
        if _compiled is not None:
            ev, visits, wall = _run_early_break(_compiled, a, b, seed)
            records.append(
                BenchRecord("early_break_compiled", n, m, seed, ev, visits, wall)
            )
            assert ev == value, "early-break value drifted from the oracle"
        if include_pure:
            ev, visits, wall = _run_early_break(_kernels_py, a, b, seed)
            records.append(
                BenchRecord("early_break_pure", n, m, seed, ev, visits, wall)
            )
            assert ev == value, "early-break value drifted from the oracle"
    return records


def summarize(records) -> dict:
    """Visit ratio and speedup of the preferred early-break kernel vs naive."""
    naive = [r for r in records if r.kernel == "naive"]
    fast_kernel = "early_break_compiled" if any(
        r.kernel == "early_break_compiled" for r in records
    ) else "early_break_pure"
    fast = [r for r in records if r.kernel == fast_kernel]
    visit_ratio = sum(r.inner_visits for r in fast) / sum(r.inner_visits for r in naive)
    speedup = sum(r.wall_ns for r in naive) / max(1, sum(r.wall_ns for r in fast))
    return {
        "kernel": fast_kernel,
        "backend": BACKEND,
        "visit_ratio": visit_ratio,
        "speedup": speedup,
        "runs": len(naive),
    }


def emit_records(records, path=None) -> str:
    lines = [json.dumps(asdict(r)) for r in records]
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
