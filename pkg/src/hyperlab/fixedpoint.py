"""Residuals and staged fixed-point searches for set-valued maps.

On a finite space infima are attained, so "almost fixed" collapses to
"fixed": the searches still execute the staged 1/n procedure so their traces
exhibit the shrinking-threshold argument, and a failed stage pinpoints where
the small-residual hypothesis stops holding.

Stage thresholds are non-strict (residual <= 1/n qualifies) and scans pick
the lowest point index first, so traces are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Sequence

import numpy as np

from .errors import (
    NotConvexPreservingError,
    NotInjectiveError,
    NotMonotoneError,
)
from .hausdorff import hausdorff_naive, pairwise_hausdorff_table
from .hyperspace import ModulusProfile
from .rng import philox
from .space import FiniteMetricSpace, SubsetHandle


@dataclass(frozen=True, eq=False)
class MultiMap:
    """A total set-valued map on one space: every point gets a nonempty image."""

    space: FiniteMetricSpace
    images: tuple[SubsetHandle, ...]

    def __post_init__(self):
        if len(self.images) != self.space.n:
            raise ValueError("images must assign every point")
        if any(img.space is not self.space for img in self.images):
            raise ValueError("image subsets must live in the map's space")

    @classmethod
    def from_indices(cls, space: FiniteMetricSpace,
                     image_sets: Sequence[Sequence[int]]) -> "MultiMap":
        return cls(space, tuple(space.subset(s) for s in image_sets))

    def __call__(self, x: int) -> SubsetHandle:
        return self.images[x]


class SearchStep(NamedTuple):
    stage: int
    point: int
    gap: float


@dataclass(frozen=True)
class SearchTrace:
    """Stage-by-stage record of a staged search.

    ``outcome`` is the found point (residual exactly zero) or None;
    ``failed_stage`` is the first stage with no qualifying point, or None
    when the stages ran out or the search succeeded.
    """

    steps: tuple[SearchStep, ...]
    outcome: Optional[int]
    final_gap: Optional[float]
    failed_stage: Optional[int]

    @property
    def succeeded(self) -> bool:
        return self.outcome is not None


def residual(f: MultiMap, x: int) -> float:
    """d(x, f(x)); zero exactly when x belongs to its own image."""
    return f.space.dist_to_set(x, f.images[x])


def residual_vector(f: MultiMap) -> np.ndarray:
    return np.array([residual(f, x) for x in range(f.space.n)])


def almost_fixed_point_search(f: MultiMap, n_max: int = 64) -> SearchTrace:
    """Staged scan for points with residual <= 1/n, tightening n upward.

    Each stage records the lowest-index qualifying point. A stage with no
    qualifying point ends the search (the small-residual hypothesis fails
    there); a qualifying point with residual exactly zero succeeds. On a
    finite space success for large enough ``n_max`` is equivalent to the
    existence of a genuinely fixed point.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    res = residual_vector(f)
    steps: list[SearchStep] = []
    for n in range(1, n_max + 1):
        hits = np.flatnonzero(res <= 1.0 / n)
        if hits.size == 0:
            return SearchTrace(tuple(steps), None, None, n)
        x = int(hits[0])
        steps.append(SearchStep(n, x, float(res[x])))
        if res[x] == 0.0:
            return SearchTrace(tuple(steps), x, 0.0, None)
    return SearchTrace(tuple(steps), None, None, None)


def hyper_fixed_search(f: MultiMap, use_inverse: bool = False,
                       n_max: int = 64) -> SearchTrace:
    """Staged search driven by the gap H({x}, f(x)), returning x in f(x).

    Two routes: the direct route checks each qualifying point's membership
    in its own image; the inverse route resolves each qualifying point's
    image back through the (required injective) image assignment before the
    membership check. On finite spaces both routes scan the same candidates
    and must agree; the inverse route exists so traces exhibit the
    image-clustering argument and fails with NOT_INJECTIVE when images
    collide.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    n = f.space.n
    inverse: dict[int, int] = {}
    if use_inverse:
        for x in range(n):
            bits = f.images[x].bits
            if bits in inverse:
                raise NotInjectiveError(
                    f"points {inverse[bits]} and {x} share the image "
                    f"{f.images[x].render()}"
                )
            inverse[bits] = x
    gaps = np.array([
        hausdorff_naive(f.space.singleton(x), f.images[x]) for x in range(n)
    ])
    steps: list[SearchStep] = []
    for stage in range(1, n_max + 1):
        hits = np.flatnonzero(gaps <= 1.0 / stage)
        if hits.size == 0:
            return SearchTrace(tuple(steps), None, None, stage)
        for x in map(int, hits):
            target = inverse[f.images[x].bits] if use_inverse else x
            if target in f.images[x]:
                steps.append(SearchStep(stage, target, float(gaps[x])))
                return SearchTrace(tuple(steps), target, 0.0, None)
        steps.append(SearchStep(stage, int(hits[0]), float(gaps[hits[0]])))
    return SearchTrace(tuple(steps), None, None, None)


def multimap_modulus(f: MultiMap) -> ModulusProfile:
    """Modulus of the image assignment: d(x, y) against H(f(x), f(y)).

    Attached to search reports so large image jumps are visible alongside a
    trace; no judgment is applied to them.
    """
    n = f.space.n
    if n < 2:
        return ModulusProfile(())
    h_img = pairwise_hausdorff_table(
        f.space.dist, [f.images[x].indices() for x in range(n)]
    )
    iu = np.triu_indices(n, 1)
    return ModulusProfile.from_pairs(f.space.dist[iu], h_img[iu])


def joint_continuity_gap(space: FiniteMetricSpace, max_exhaustive: int = 8,
                         samples: int = 20000, seed: int = 0) -> float:
    """Worst violation of |d(x,A) - d(y,B)| <= d(x,y) + H(A,B).

    Exhaustive over all points and all subset pairs up to
    ``max_exhaustive`` points; sampled beyond that. The bound holds in exact
    arithmetic, so anything above ~1e-9 indicates an implementation bug.
    Returns the max of the left side minus the right side (usually negative).
    """
    n = space.n
    d = space.dist
    if n <= max_exhaustive:
        total = (1 << n) - 1
        # point-to-subset distances for every subset, built over the bit DP
        p = np.empty((n, total))
        for bits in range(1, total + 1):
            low = bits & -bits
            rest = bits ^ low
            col = d[:, low.bit_length() - 1]
            p[:, bits - 1] = col if rest == 0 else np.minimum(p[:, rest - 1], col)
        h = pairwise_hausdorff_table(d, [
            [i for i in range(n) if (bits >> i) & 1] for bits in range(1, total + 1)
        ])
        worst = -np.inf
        for x in range(n):
            for y in range(n):
                lhs = np.abs(p[x][:, None] - p[y][None, :])
                worst = max(worst, float((lhs - h).max() - d[x, y]))
        return worst
    rng = philox(seed)
    worst = -np.inf
    full = (1 << n) - 1
    for _ in range(samples):
        x, y = map(int, rng.integers(0, n, size=2))
        abits = int(rng.integers(1, full + 1))
        bbits = int(rng.integers(1, full + 1))
        a = space.subset_from_bits(abits)
        b = space.subset_from_bits(bbits)
        lhs = abs(space.dist_to_set(x, a) - space.dist_to_set(y, b))
        rhs = d[x, y] + hausdorff_naive(a, b)
        worst = max(worst, lhs - rhs)
    return worst


@dataclass(frozen=True)
class ConvexDemoReport:
    """Outcome of the range-preserving fixed-point demo on a 1-D grid."""

    space: FiniteMetricSpace
    image_indices: tuple[int, ...]
    ranges: tuple[tuple[int, int], ...]
    trace: SearchTrace
    fixed_range: Optional[tuple[int, int]]
    fixed_point: Optional[int]

    @property
    def preserved(self) -> bool:
        # construction raises otherwise, so a report in hand means preserved
        return True


def snap_to_grid(values: np.ndarray, y: float) -> int:
    """Index of the grid value nearest to y; exact ties snap down."""
    j = int(np.searchsorted(values, y))
    if j == 0:
        return 0
    if j == len(values):
        return len(values) - 1
    return j - 1 if y - values[j - 1] <= values[j] - y else j


def convex_demo(grid_size: int,
                f: Callable[[float], float] | Sequence[int],
                n_max: int = 64) -> ConvexDemoReport:
    """Fixed-range search for a monotone map on the uniform grid of [0, 1].

    ``f`` is either a real function (snapped to the nearest grid point, ties
    down) or an explicit index map. The map must be nondecreasing and send
    every contiguous index range to a contiguous image set; the range
    collection then plays the role of the convex subsets, the induced map
    sends [i..j] to [f(i)..f(j)], and a staged search over the ranges looks
    for P with F(P) = P, reporting a fixed grid point inside P when one
    exists at grid resolution.
    """
    if grid_size < 2:
        raise ValueError("grid_size must be >= 2")
    values = np.linspace(0.0, 1.0, grid_size)
    space = FiniteMetricSpace.from_points(values)
    if callable(f):
        h = tuple(snap_to_grid(values, float(f(float(v)))) for v in values)
    else:
        h = tuple(int(k) for k in f)
        if len(h) != grid_size or any(not 0 <= k < grid_size for k in h):
            raise ValueError("index map must assign a grid index to every point")
    for k in range(grid_size - 1):
        if h[k + 1] < h[k]:
            raise NotMonotoneError(
                f"images decrease between grid points {k} and {k + 1}"
            )
    ranges = [(i, j) for i in range(grid_size) for j in range(i, grid_size)]
    for i, j in ranges:
        span = set(h[i : j + 1])
        if len(span) != h[j] - h[i] + 1:
            raise NotConvexPreservingError(
                f"range [{i}..{j}] maps onto a gapped image set"
            )
    handles = [space.subset(range(i, j + 1)) for i, j in ranges]
    image_handles = [space.subset(range(h[i], h[j] + 1)) for i, j in ranges]
    gaps = np.array([
        hausdorff_naive(handles[r], image_handles[r]) for r in range(len(ranges))
    ])
    steps: list[SearchStep] = []
    trace = None
    fixed_range = None
    for stage in range(1, n_max + 1):
        hits = np.flatnonzero(gaps <= 1.0 / stage)
        if hits.size == 0:
            trace = SearchTrace(tuple(steps), None, None, stage)
            break
        found = None
        for r in map(int, hits):
            i, j = ranges[r]
            if (h[i], h[j]) == (i, j):
                found = r
                break
        if found is not None:
            steps.append(SearchStep(stage, found, float(gaps[found])))
            trace = SearchTrace(tuple(steps), found, 0.0, None)
            fixed_range = ranges[found]
            break
        steps.append(SearchStep(stage, int(hits[0]), float(gaps[hits[0]])))
    if trace is None:
        trace = SearchTrace(tuple(steps), None, None, None)
    fixed_point = None
    if fixed_range is not None:
        for k in range(fixed_range[0], fixed_range[1] + 1):
            if h[k] == k:
                fixed_point = k
                break
    return ConvexDemoReport(
        space=space,
        image_indices=h,
        ranges=tuple(ranges),
        trace=trace,
        fixed_range=fixed_range,
        fixed_point=fixed_point,
    )
