"""Finite metric spaces with validated distance tables and scale diagnostics.

The central object is :class:`FiniteMetricSpace`, an immutable n-point space
backed by a dense symmetric distance table. Nonempty subsets are bitmask
handles (:class:`SubsetHandle`); in a finite metric space every nonempty
subset is closed, so handles range over the whole hyperspace of the base
space.

Threshold conventions, used consistently everywhere:

* neighborhoods are open: ``x`` belongs to the eps-neighborhood of ``A``
  iff ``d(x, A) < eps`` (strict);
* the delta-limit set collects points with isolation strictly below delta;
* a set is "uniformly discrete at scale eta" iff its packing radius
  (minimum pairwise distance) is ``>= eta`` (non-strict).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np

from .errors import MetricValidationError, SingletonSpaceError

#: Extended-real infinity. Distances are IEEE doubles, which already carry
#: the extended-real arithmetic the set-distance codomain needs (inf compares
#: greater than every finite value; max/min/+ behave as expected).
INFINITY = math.inf

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class Violation:
    """One failed metric axiom: ``kind`` plus the offending point indices."""

    kind: str  # ASYMMETRY | NONZERO_DIAGONAL | TRIANGLE_VIOLATION | COINCIDENT_POINTS
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}({','.join(str(i) for i in self.indices)})"


def check_metric(table, tol: float = DEFAULT_TOL) -> list[Violation]:
    """Scan a square table for metric-axiom violations and list all of them.

    Checks, in order: zero diagonal, symmetry, positivity of off-diagonal
    entries, and the triangle inequality ``d[i,j] <= d[i,k] + d[k,j] + tol``
    over all triples. Returns an empty list iff the table is a metric within
    ``tol``.
    """
    d = np.asarray(table, dtype=np.float64)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise ValueError(f"distance table must be square, got shape {d.shape}")
    if not np.isfinite(d).all():
        raise ValueError("distance table entries must be finite")
    n = d.shape[0]
    out: list[Violation] = []
    for i in np.flatnonzero(np.abs(np.diag(d)) > tol):
        out.append(Violation("NONZERO_DIAGONAL", (int(i),)))
    bad = np.argwhere(np.abs(d - d.T) > tol)
    for i, j in bad:
        if i < j:
            out.append(Violation("ASYMMETRY", (int(i), int(j))))
    # non-positive off-diagonal entries mean the two points are not
    # positively separated; negative entries land here as well
    bad = np.argwhere(d <= 0)
    for i, j in bad:
        if i < j:
            out.append(Violation("COINCIDENT_POINTS", (int(i), int(j))))
    for k in range(n):
        rhs = d[:, k][:, None] + d[k, :][None, :]
        bad = np.argwhere(d > rhs + tol)
        for i, j in bad:
            if i != k and j != k and i != j:
                out.append(Violation("TRIANGLE_VIOLATION", (int(i), int(j), int(k))))
    return out


def validate_metric(table, labels: Optional[Sequence[str]] = None,
                    tol: float = DEFAULT_TOL) -> "FiniteMetricSpace":
    """Validate ``table`` and wrap it in a :class:`FiniteMetricSpace`.

    Raises :class:`~hyperlab.errors.MetricValidationError` carrying every
    violation when any axiom fails.
    """
    violations = check_metric(table, tol)
    if violations:
        raise MetricValidationError(violations)
    d = np.array(table, dtype=np.float64)
    d.setflags(write=False)
    n = d.shape[0]
    if labels is None:
        labels = tuple(str(i) for i in range(n))
    else:
        labels = tuple(str(s) for s in labels)
        if len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
    return FiniteMetricSpace(d, labels, tol)


def euclidean_table(coords) -> np.ndarray:
    """Pairwise Euclidean distance table of an (n, k) coordinate array."""
    pts = np.asarray(coords, dtype=np.float64)
    if pts.ndim == 1:
        pts = pts[:, None]
    d2 = np.zeros((pts.shape[0], pts.shape[0]))
    for k in range(pts.shape[1]):
        diff = pts[:, k][:, None] - pts[:, k][None, :]
        d2 += diff * diff
    return np.sqrt(d2)


@dataclass(frozen=True, eq=False)
class FiniteMetricSpace:
    """An immutable finite metric space: points 0..n-1 with a distance table.

    Construct through :func:`validate_metric`, :meth:`from_points`, or a
    family generator; the table is read-only after validation and all
    operations are pure, so instances are safe to share across threads.
    """

    dist: np.ndarray
    labels: tuple[str, ...]
    tol: float = DEFAULT_TOL

    @classmethod
    def from_points(cls, coords, labels: Optional[Sequence[str]] = None,
                    tol: float = DEFAULT_TOL) -> "FiniteMetricSpace":
        """Build a space from coordinates under the Euclidean metric."""
        return validate_metric(euclidean_table(coords), labels=labels, tol=tol)

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    def __repr__(self) -> str:
        return f"FiniteMetricSpace(n={self.n})"

    # -- subset construction -------------------------------------------------

    def subset(self, indices: Iterable[int]) -> "SubsetHandle":
        bits = 0
        for i in indices:
            i = int(i)
            if not 0 <= i < self.n:
                raise ValueError(f"point index {i} out of range 0..{self.n - 1}")
            bits |= 1 << i
        if bits == 0:
            raise ValueError("subsets must be nonempty")
        return SubsetHandle(bits, self)

    def subset_from_bits(self, bits: int) -> "SubsetHandle":
        if bits <= 0 or bits >> self.n:
            raise ValueError(f"bit pattern {bits:#x} invalid for n={self.n}")
        return SubsetHandle(bits, self)

    def singleton(self, i: int) -> "SubsetHandle":
        return self.subset((i,))

    def full_set(self) -> "SubsetHandle":
        return SubsetHandle((1 << self.n) - 1, self)

    def sequence(self, items: Iterable[int]) -> "PointSequence":
        return PointSequence(tuple(int(i) for i in items), self)

    # -- base-space functionals ----------------------------------------------

    def dist_to_set(self, x: int, a: "SubsetHandle") -> float:
        """d(x, A): minimum distance from point ``x`` into subset ``A``.

        Zero iff ``x`` is a member (infima are attained in finite spaces).
        """
        self._own(a)
        return float(self.dist[x, a.to_array()].min())

    def neighborhood(self, a: "SubsetHandle", eps: float) -> "SubsetHandle":
        """Open eps-neighborhood ``{x : d(x, A) < eps}``; always contains A."""
        if eps <= 0:
            raise ValueError("eps must be positive")
        self._own(a)
        close = self.dist[:, a.to_array()].min(axis=1) < eps
        return self.subset(np.flatnonzero(close))

    def isolation(self, x: int) -> float:
        """I(x): the distance from ``x`` to the rest of the space."""
        if self.n == 1:
            raise SingletonSpaceError("isolation undefined on a one-point space")
        row = self.dist[x].copy()
        row[x] = INFINITY
        return float(row.min())

    def isolation_vector(self) -> np.ndarray:
        """I(x) for every point; ``inf`` entries on a one-point space."""
        if self.n == 1:
            return np.array([INFINITY])
        d = self.dist.copy()
        np.fill_diagonal(d, INFINITY)
        return d.min(axis=1)

    def limit_points_at_scale(self, delta: float) -> Optional["SubsetHandle"]:
        """The delta-limit set ``{x : I(x) < delta}``, or None when empty.

        Finite spaces have no true limit points, so this scale surrogate
        stands in for the limit-point set in every diagnostic.
        """
        if delta <= 0:
            raise ValueError("delta must be positive")
        idx = np.flatnonzero(self.isolation_vector() < delta)
        if idx.size == 0:
            return None
        return self.subset(idx)

    def packing_radius(self, a: Optional["SubsetHandle"] = None) -> float:
        """Minimum pairwise distance within ``a`` (whole space by default).

        Returns ``inf`` for singletons. A set is uniformly discrete at scale
        eta iff its packing radius is at least eta.
        """
        if a is None:
            a = self.full_set()
        self._own(a)
        idx = a.to_array()
        if idx.size == 1:
            return INFINITY
        sub = self.dist[np.ix_(idx, idx)].copy()
        np.fill_diagonal(sub, INFINITY)
        return float(sub.min())

    def diameter(self) -> float:
        return float(self.dist.max())

    def atsuji_profile(self, delta_grid: Sequence[float]) -> "AtsujiProfile":
        """Packing radii outside eps-neighborhoods of each delta-limit set.

        For each delta in the grid, takes the delta-limit set L, and for each
        eps in the same grid computes the packing radius of the complement of
        the open eps-neighborhood of L (``inf`` for empty or singleton
        complements). The returned table row-indexes delta and column-indexes
        eps; ``min_isolation`` is the smallest isolation over the space.
        """
        grid = tuple(float(g) for g in delta_grid)
        if not grid or any(g <= 0 for g in grid):
            raise ValueError("delta grid must be nonempty and strictly positive")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("delta grid must be strictly ascending")
        iso = self.isolation_vector()
        table = np.empty((len(grid), len(grid)))
        for di, delta in enumerate(grid):
            limit_idx = np.flatnonzero(iso < delta)
            if limit_idx.size == 0:
                # empty neighborhood, complement is the whole space
                dist_to_limit = np.full(self.n, INFINITY)
            else:
                dist_to_limit = self.dist[:, limit_idx].min(axis=1)
            for ei, eps in enumerate(grid):
                outside = np.flatnonzero(dist_to_limit >= eps)
                if outside.size <= 1:
                    table[di, ei] = INFINITY
                else:
                    sub = self.dist[np.ix_(outside, outside)].copy()
                    np.fill_diagonal(sub, INFINITY)
                    table[di, ei] = sub.min()
        return AtsujiProfile(grid, table, float(iso.min()))

    # -- internals ------------------------------------------------------------

    def _own(self, handle: "SubsetHandle") -> None:
        if handle.space is not self:
            raise ValueError("subset belongs to a different space")


@dataclass(frozen=True)
class AtsujiProfile:
    """(delta, eps) table of packing radii outside limit-set neighborhoods."""

    grid: tuple[float, ...]
    table: np.ndarray  # shape (len(grid), len(grid)), rows delta, cols eps
    min_isolation: float

    def radius(self, di: int, ei: int) -> float:
        return float(self.table[di, ei])


@dataclass(frozen=True, eq=False)
class SubsetHandle:
    """A nonempty subset of a space's points, stored as a bitmask.

    Handles compare equal iff they denote the same index set of the same
    space object. Construct via :meth:`FiniteMetricSpace.subset` and friends;
    the constructor itself does not validate.
    """

    bits: int
    space: FiniteMetricSpace

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubsetHandle):
            return NotImplemented
        return self.space is other.space and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((id(self.space), self.bits))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __contains__(self, i: int) -> bool:
        return bool((self.bits >> i) & 1)

    def __iter__(self) -> Iterator[int]:
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def to_array(self) -> np.ndarray:
        return np.fromiter(self, dtype=np.int64, count=len(self))

    def __or__(self, other: "SubsetHandle") -> "SubsetHandle":
        self._same(other)
        return SubsetHandle(self.bits | other.bits, self.space)

    def __and__(self, other: "SubsetHandle") -> Optional["SubsetHandle"]:
        self._same(other)
        bits = self.bits & other.bits
        return SubsetHandle(bits, self.space) if bits else None

    def issubset(self, other: "SubsetHandle") -> bool:
        self._same(other)
        return self.bits | other.bits == other.bits

    def complement(self) -> Optional["SubsetHandle"]:
        """Complement within the space; None when this is the full set."""
        bits = ((1 << self.space.n) - 1) ^ self.bits
        return SubsetHandle(bits, self.space) if bits else None

    def render(self) -> str:
        return "{" + ", ".join(self.space.labels[i] for i in self) + "}"

    def __repr__(self) -> str:
        return f"SubsetHandle({self.render()})"

    def _same(self, other: "SubsetHandle") -> None:
        if self.space is not other.space:
            raise ValueError("subsets belong to different spaces")


@dataclass(frozen=True, eq=False)
class PointSequence:
    """An ordered sequence of point indices (repeats allowed) in one space."""

    items: tuple[int, ...]
    space: FiniteMetricSpace

    def __post_init__(self):
        if not self.items:
            raise ValueError("sequences must be nonempty")
        if any(not 0 <= i < self.space.n for i in self.items):
            raise ValueError("sequence contains an out-of-range index")

    def __len__(self) -> int:
        return len(self.items)


def cauchy_subsequence_at_scale(seq: PointSequence, eps: float) -> Optional[tuple[int, ...]]:
    """Greedy search for a long subsequence with all pairwise distances < eps.

    Pivot rule: try each position in sequence order; a pivot collects every
    position whose point lies strictly within ``eps / 2`` of it (the pivot
    ball radius eps/2 makes all collected pairs strictly closer than eps).
    The first pivot whose cluster reaches ``ceil(len/2)`` wins and its
    cluster's positions are returned, sorted; None when no pivot succeeds.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    d = seq.space.dist
    need = (len(seq) + 1) // 2
    half = eps / 2.0
    for pivot_pos in range(len(seq)):
        p = seq.items[pivot_pos]
        cluster = tuple(
            pos for pos, q in enumerate(seq.items) if d[p, q] < half
        )
        if len(cluster) >= need:
            return cluster
    return None
