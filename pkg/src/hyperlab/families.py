"""Deterministic generators for the canonical example spaces.

Each generator returns a :class:`SpaceBundle`: the space itself plus named
points and named point/subset sequences that the verification suites keep
referring to. All tables pass metric validation at tol 1e-9 by construction.

Kinds:

* ``NATURALS(N)``: 1..N on the line; every point has isolation 1.
* ``RECIPROCALS(N)``: 1/1..1/N on the line; gaps shrink quadratically, the
  packing radius is 1/(N(N-1)).
* ``TANGENT_GRID(N)``: the points +-k/(k+1) of (-1, 1) together with a
  companion bijection onto the integer grid -N..N given by x/(1-|x|); the
  nested central blocks A_n are the named subset sequence "A_n".
* ``ORTHO_SCALED(M, N)``: scaled orthonormal directions e_m/n plus the
  origin, with the closed-form distances sqrt(1/p^2+1/q^2) (different
  directions), |1/p-1/q| (same direction), 1/n (to the origin). Stored
  implicitly via the closed form, never as high-dimensional coordinates.
* ``UNIFORM_RANDOM(n)``: n i.i.d. points in the unit square from a
  counter-based generator keyed only by the seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .errors import BadParamsError, UnknownNameError
from .hyperspace import PointMap
from .rng import philox
from .space import FiniteMetricSpace, PointSequence, SubsetHandle, validate_metric

KINDS = ("NATURALS", "RECIPROCALS", "TANGENT_GRID", "ORTHO_SCALED", "UNIFORM_RANDOM")

SequenceValue = Union[PointSequence, tuple[SubsetHandle, ...]]


@dataclass(frozen=True)
class FamilySpec:
    """A generator request: kind, integer parameters, optional seed."""

    kind: str
    params: dict[str, int] = field(default_factory=dict)
    seed: Optional[int] = None


@dataclass(frozen=True, eq=False)
class SpaceBundle:
    """A generated space with its named points and canonical sequences."""

    space: FiniteMetricSpace
    named_points: dict[str, int] = field(default_factory=dict)
    named_sequences: dict[str, SequenceValue] = field(default_factory=dict)
    companion_map: Optional[PointMap] = None


def sequence(bundle: SpaceBundle, name: str) -> SequenceValue:
    """Look up a named canonical sequence; UNKNOWN_NAME when absent."""
    try:
        return bundle.named_sequences[name]
    except KeyError:
        known = ", ".join(sorted(bundle.named_sequences)) or "(none)"
        raise UnknownNameError(f"no sequence {name!r}; known: {known}") from None


def generate(spec: FamilySpec) -> SpaceBundle:
    """Dispatch a :class:`FamilySpec` to the matching generator."""
    kind = spec.kind.upper()
    p = spec.params
    try:
        if kind == "NATURALS":
            return naturals(int(p["N"]))
        if kind == "RECIPROCALS":
            return reciprocals(int(p["N"]))
        if kind == "TANGENT_GRID":
            return tangent_grid(int(p["N"]))
        if kind == "ORTHO_SCALED":
            return ortho_scaled(int(p["M"]), int(p["N"]))
        if kind == "UNIFORM_RANDOM":
            return uniform_random(int(p["n"]), 0 if spec.seed is None else spec.seed)
    except KeyError as missing:
        raise BadParamsError(f"{kind} needs parameter {missing}") from None
    raise BadParamsError(f"unknown family kind {spec.kind!r}; known: {', '.join(KINDS)}")


def _line_space(values, labels) -> FiniteMetricSpace:
    v = np.asarray(values, dtype=np.float64)
    table = np.abs(v[:, None] - v[None, :])
    return validate_metric(table, labels=labels)


def naturals(n: int) -> SpaceBundle:
    """The integers 1..N under |m - n|."""
    if n < 1:
        raise BadParamsError("NATURALS needs N >= 1")
    space = _line_space(range(1, n + 1), [str(k) for k in range(1, n + 1)])
    return SpaceBundle(space)


def reciprocals(n: int) -> SpaceBundle:
    """The points 1/1, 1/2, ..., 1/N under the usual line metric."""
    if n < 1:
        raise BadParamsError("RECIPROCALS needs N >= 1")
    values = [1.0 / k for k in range(1, n + 1)]
    space = _line_space(values, [f"1/{k}" for k in range(1, n + 1)])
    return SpaceBundle(space)


def tangent_grid(n: int) -> SpaceBundle:
    """The grid +-k/(k+1), k <= N, with its blow-up onto the integers.

    The companion map sends the grid point of height k/(k+1) to the integer
    k (same for the negative side); both spaces are sorted ascending so the
    map is the identity on indices while the metrics differ: adjacent grid
    gaps shrink like 1/(k(k+1)) while every adjacent integer gap is 1. The
    named subset sequence ``A_n`` holds the nested central blocks
    {x : |x| <= n/(n+1)} for n = 1..N.
    """
    if n < 1:
        raise BadParamsError("TANGENT_GRID needs N >= 1")
    values = [-k / (k + 1.0) for k in range(n, 0, -1)]
    labels = [f"-{k}/{k + 1}" for k in range(n, 0, -1)]
    values += [0.0] + [k / (k + 1.0) for k in range(1, n + 1)]
    labels += ["0"] + [f"{k}/{k + 1}" for k in range(1, n + 1)]
    grid = _line_space(values, labels)
    codomain = _line_space(range(-n, n + 1), [str(z) for z in range(-n, n + 1)])
    fmap = PointMap(grid, codomain, tuple(range(2 * n + 1)))
    blocks = tuple(
        grid.subset(range(n - j, n + j + 1)) for j in range(1, n + 1)
    )
    return SpaceBundle(
        grid,
        named_points={"0": n},
        named_sequences={"A_n": blocks},
        companion_map=fmap,
    )


def ortho_scaled(m: int, n: int) -> SpaceBundle:
    """Scaled orthonormal directions e_m/n plus the origin.

    Point (m, p) sits at index (m-1)*N + (p-1); the origin is the last
    index. Distances follow the closed form of the ambient l2 norm, so the
    table is exact without ever materializing M-dimensional coordinates.

    Named extras: point "0" (the origin), subset sequence "pair_0_en" of the
    two-point sets {0, e_m} for m = 1..M, and point sequence "e1_over_n"
    walking e_1/1, e_1/2, ..., e_1/N toward the origin.
    """
    if m < 1 or n < 1:
        raise BadParamsError("ORTHO_SCALED needs M >= 1 and N >= 1")
    count = m * n + 1
    axis = np.empty(count, dtype=np.int64)
    inv = np.empty(count, dtype=np.float64)
    labels = []
    for mm in range(1, m + 1):
        for p in range(1, n + 1):
            i = (mm - 1) * n + (p - 1)
            axis[i] = mm
            inv[i] = 1.0 / p
            labels.append(f"e{mm}/{p}")
    origin = count - 1
    axis[origin] = 0  # sentinel: no direction
    inv[origin] = 0.0
    labels.append("0")
    same = axis[:, None] == axis[None, :]
    table = np.where(
        same,
        np.abs(inv[:, None] - inv[None, :]),
        np.sqrt(inv[:, None] ** 2 + inv[None, :] ** 2),
    )
    # origin rows: distance to e_m/p is 1/p, consistent with both branches
    table[origin, :] = inv
    table[:, origin] = inv
    table[origin, origin] = 0.0
    space = validate_metric(table, labels=labels)
    pairs = tuple(
        space.subset((origin, (mm - 1) * n)) for mm in range(1, m + 1)
    )
    walk = space.sequence((p - 1) for p in range(1, n + 1))
    return SpaceBundle(
        space,
        named_points={"0": origin},
        named_sequences={"pair_0_en": pairs, "e1_over_n": walk},
    )


def uniform_random(n: int, seed: int = 0) -> SpaceBundle:
    """n i.i.d. points in the unit square; identical seeds reproduce bit-identically."""
    if n < 1:
        raise BadParamsError("UNIFORM_RANDOM needs n >= 1")
    rng = philox(seed)
    pts = rng.random((n, 2))
    space = FiniteMetricSpace.from_points(pts)
    return SpaceBundle(space)
