"""Hyperspace machinery: materialized set-distance tables, induced maps,
moduli of continuity, and collection diagnostics.

For a finite base space the hyperspace of nonempty closed subsets is itself
finite, so it can be materialized as another :class:`FiniteMetricSpace`
whose points are subsets and whose table holds symmetric Hausdorff
distances. Singleton subsets embed the base space isometrically; a point map
between spaces lifts to the induced set map ``A -> {f(x) : x in A}``.

Moduli of continuity are empirical: a profile records, for each realized
argument distance t, the largest image distance over all argument pairs at
distance <= t. On finite spaces the profile of an induced map matches the
profile of its base map exactly, which is what
:func:`check_modulus_transfer` verifies.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .config import CAPS
from .errors import (
    MetricValidationError,
    MissingSingletonsError,
    ModulusDiscrepancyError,
    TooLargeError,
)
from .hausdorff import pairwise_hausdorff_table
from .space import INFINITY, AtsujiProfile, FiniteMetricSpace, SubsetHandle, check_metric


@dataclass(frozen=True, eq=False)
class PointMap:
    """A total map between two finite metric spaces, stored pointwise."""

    domain: FiniteMetricSpace
    codomain: FiniteMetricSpace
    images: tuple[int, ...]

    def __post_init__(self):
        if len(self.images) != self.domain.n:
            raise ValueError("images must assign every domain point")
        if any(not 0 <= y < self.codomain.n for y in self.images):
            raise ValueError("image index out of codomain range")

    @classmethod
    def identity(cls, space: FiniteMetricSpace) -> "PointMap":
        return cls(space, space, tuple(range(space.n)))

    @property
    def invertible(self) -> bool:
        return (
            self.domain.n == self.codomain.n
            and len(set(self.images)) == self.domain.n
        )

    def __call__(self, i: int) -> int:
        return self.images[i]


def induced_apply(f: PointMap, a: SubsetHandle) -> SubsetHandle:
    """Image set ``{f(x) : x in A}`` in the codomain; nonempty by totality."""
    if a.space is not f.domain:
        raise ValueError("subset does not belong to the map's domain")
    bits = 0
    for i in a:
        bits |= 1 << f.images[i]
    return SubsetHandle(bits, f.codomain)


def enumerate_subsets(space: FiniteMetricSpace,
                      max_n: Optional[int] = None) -> list[SubsetHandle]:
    """All nonempty subsets in ascending bit-pattern order (2^n - 1 handles)."""
    cap = CAPS.enumerate_n if max_n is None else max_n
    if space.n > cap:
        raise TooLargeError(
            f"subset enumeration capped at n <= {cap}, space has n = {space.n}"
        )
    return [SubsetHandle(bits, space) for bits in range(1, 1 << space.n)]


@dataclass(frozen=True, eq=False)
class HyperspaceView:
    """A sub-collection of subsets materialized as a metric space under H."""

    base: FiniteMetricSpace
    members: tuple[SubsetHandle, ...]
    space: FiniteMetricSpace  # one point per member; table of H values
    validated: bool

    def index_of(self, handle: SubsetHandle) -> int:
        return self._index[handle.bits]

    @property
    def _index(self) -> dict[int, int]:
        cached = getattr(self, "_index_cache", None)
        if cached is None:
            cached = {m.bits: i for i, m in enumerate(self.members)}
            object.__setattr__(self, "_index_cache", cached)
        return cached


def materialize(space: FiniteMetricSpace,
                members: Optional[Sequence[SubsetHandle]] = None,
                validate: Optional[bool] = None,
                max_members: Optional[int] = None) -> HyperspaceView:
    """Materialize the Hausdorff-distance table over ``members``.

    ``members`` defaults to every nonempty subset. Distances come from the
    early-break kernel in natural scan order, so the table is deterministic.
    The resulting table is fully revalidated against the metric axioms when
    the member count is small enough (config ``validate_members``), or when
    ``validate=True`` forces it; the triangle scan is cubic in the member
    count, hence the cap.
    """
    if members is None:
        members = enumerate_subsets(space)
    members = tuple(members)
    if not members:
        raise ValueError("member list must be nonempty")
    cap = CAPS.members if max_members is None else max_members
    if len(members) > cap:
        raise TooLargeError(
            f"materialization capped at {cap} members, got {len(members)}"
        )
    seen = set()
    for m in members:
        if m.space is not space:
            raise ValueError("member belongs to a different space")
        if m.bits in seen:
            raise ValueError(f"duplicate member {m.render()}")
        seen.add(m.bits)
    table = pairwise_hausdorff_table(space.dist, [m.indices() for m in members])
    do_validate = (
        validate if validate is not None else len(members) <= CAPS.validate_members
    )
    if do_validate:
        violations = check_metric(table, tol=1e-9)
        if violations:
            raise MetricValidationError(violations)
    table.setflags(write=False)
    labels = tuple(m.render() for m in members)
    view_space = FiniteMetricSpace(table, labels, tol=1e-9)
    return HyperspaceView(space, members, view_space, bool(do_validate))


@dataclass(frozen=True, eq=False)
class CollectionSpec:
    """A collection of subsets plus its point-multiplicity bookkeeping.

    ``multiplicity`` is the largest number of members any single point
    belongs to; ``includes_singletons`` records whether every one-point
    subset of the base space is present.
    """

    members: tuple[SubsetHandle, ...]
    includes_singletons: bool
    multiplicity: int

    @classmethod
    def from_members(cls, members: Sequence[SubsetHandle]) -> "CollectionSpec":
        members = tuple(members)
        if not members:
            raise ValueError("collection must be nonempty")
        space = members[0].space
        seen = set()
        counts = np.zeros(space.n, dtype=np.int64)
        for m in members:
            if m.space is not space:
                raise ValueError("members belong to different spaces")
            if m.bits in seen:
                raise ValueError(f"duplicate member {m.render()}")
            seen.add(m.bits)
            counts[list(m)] += 1
        singles = all((1 << x) in seen for x in range(space.n))
        return cls(members, singles, int(counts.max()))

    @property
    def space(self) -> FiniteMetricSpace:
        return self.members[0].space


def singleton_embed(space: FiniteMetricSpace) -> CollectionSpec:
    """The collection of all singletons; materializes isometrically to X."""
    return CollectionSpec.from_members([space.singleton(i) for i in range(space.n)])


def point_finite_multiplicity(c: CollectionSpec) -> int:
    """Largest membership count of any point; 1 for disjoint families."""
    return c.multiplicity


@dataclass(frozen=True)
class ModulusProfile:
    """Empirical modulus of continuity sampled at realized distances.

    ``samples`` is ascending in t with nondecreasing omega; omega(t) is the
    largest image distance over argument pairs at distance <= t. Between
    samples the profile is the step function through the recorded points.
    """

    samples: tuple[tuple[float, float], ...]

    @classmethod
    def from_pairs(cls, arg_dists, image_dists) -> "ModulusProfile":
        t = np.asarray(arg_dists, dtype=np.float64)
        u = np.asarray(image_dists, dtype=np.float64)
        if t.shape != u.shape:
            raise ValueError("argument/image distance arrays differ in shape")
        if t.size == 0:
            return cls(())
        order = np.argsort(t, kind="stable")
        ts = t[order]
        us = np.maximum.accumulate(u[order])
        keep = np.flatnonzero(np.append(ts[1:] != ts[:-1], True))
        return cls(tuple((float(ts[i]), float(us[i])) for i in keep))

    def realized(self) -> tuple[float, ...]:
        return tuple(t for t, _ in self.samples)

    def omega_at(self, t: float) -> float:
        """Largest image distance over pairs at argument distance <= t."""
        ts = [s[0] for s in self.samples]
        i = bisect.bisect_right(ts, t)
        return self.samples[i - 1][1] if i else 0.0

    def delta_star(self, eps: float) -> float:
        """Largest delta with: argument distance < delta forces image <= eps.

        Equals the smallest realized t whose omega exceeds eps, or inf when
        no pair ever exceeds eps.
        """
        for t, om in self.samples:
            if om > eps:
                return t
        return INFINITY


def modulus_of_map(f: PointMap) -> ModulusProfile:
    """Profile of a point map over all argument pairs."""
    n = f.domain.n
    if n < 2:
        return ModulusProfile(())
    iu = np.triu_indices(n, 1)
    img = np.asarray(f.images)
    t = f.domain.dist[iu]
    u = f.codomain.dist[img[iu[0]], img[iu[1]]]
    return ModulusProfile.from_pairs(t, u)


def modulus_of_induced_map(f: PointMap,
                           members: Optional[Sequence[SubsetHandle]] = None,
                           max_members: Optional[int] = None) -> ModulusProfile:
    """Profile of the induced set map over all member pairs.

    ``members`` defaults to the full hyperspace of the domain. Argument
    distances are Hausdorff distances in the domain, image distances are
    Hausdorff distances between image sets in the codomain.
    """
    if members is None:
        members = enumerate_subsets(f.domain)
    members = tuple(members)
    cap = CAPS.members if max_members is None else max_members
    if len(members) > cap:
        raise TooLargeError(f"member count {len(members)} exceeds cap {cap}")
    if len(members) < 2:
        return ModulusProfile(())
    h_dom = pairwise_hausdorff_table(f.domain.dist, [m.indices() for m in members])
    images = [induced_apply(f, m).indices() for m in members]
    h_img = pairwise_hausdorff_table(f.codomain.dist, images)
    iu = np.triu_indices(len(members), 1)
    return ModulusProfile.from_pairs(h_dom[iu], h_img[iu])


@dataclass(frozen=True)
class ModulusTransferReport:
    """Base-level vs set-level modulus comparison for one point map."""

    base_profile: ModulusProfile
    hyper_profile: ModulusProfile
    max_discrepancy: float
    argmax_t: Optional[float]
    realized_match: bool


def check_modulus_transfer(f: PointMap, tol: float = 1e-9,
                           max_n: Optional[int] = None) -> ModulusTransferReport:
    """Verify the induced map's modulus equals the base map's, pointwise.

    Enumerates every subset pair at both levels, so the domain is capped.
    Equality is expected exactly on finite spaces: the set-level modulus is
    bounded by the base modulus via attained minima, and singleton pairs
    realize the base pairs. A discrepancy beyond ``tol`` raises
    :class:`~hyperlab.errors.ModulusDiscrepancyError` and indicates an
    implementation bug, never valid behavior.
    """
    cap = CAPS.exhaustive_pairs_n if max_n is None else max_n
    if f.domain.n > cap:
        raise TooLargeError(
            f"exhaustive pair scan capped at n <= {cap}, domain has {f.domain.n}"
        )
    base = modulus_of_map(f)
    hyper = modulus_of_induced_map(f)
    realized = sorted(set(base.realized()) | set(hyper.realized()))
    worst = 0.0
    worst_t: Optional[float] = None
    for t in realized:
        gap = abs(base.omega_at(t) - hyper.omega_at(t))
        if gap > worst:
            worst, worst_t = gap, t
    report = ModulusTransferReport(
        base_profile=base,
        hyper_profile=hyper,
        max_discrepancy=worst,
        argmax_t=worst_t,
        realized_match=base.realized() == hyper.realized(),
    )
    if worst > tol:
        raise ModulusDiscrepancyError(worst_t, worst)
    return report


@dataclass(frozen=True)
class UniformEquivalenceReport:
    """Four moduli comparing two metrics on one point set, both levels.

    ``base_forward`` profiles the identity map from the first metric into
    the second; ``hyper_forward`` does the same between the two Hausdorff
    tables over the full hyperspace; the ``*_back`` profiles swap roles.
    """

    base_forward: ModulusProfile
    base_back: ModulusProfile
    hyper_forward: ModulusProfile
    hyper_back: ModulusProfile


def uniform_equivalence_profile(space_a: FiniteMetricSpace,
                                space_b: FiniteMetricSpace,
                                max_n: Optional[int] = None) -> UniformEquivalenceReport:
    """Moduli of the identity between two metrics, at base and set level."""
    if space_a.n != space_b.n:
        raise ValueError("metrics must live on the same index set")
    cap = CAPS.exhaustive_pairs_n if max_n is None else max_n
    if space_a.n > cap:
        raise TooLargeError(
            f"exhaustive pair scan capped at n <= {cap}, got n = {space_a.n}"
        )
    n = space_a.n
    iu = np.triu_indices(n, 1)
    da, db = space_a.dist[iu], space_b.dist[iu]
    subsets = [s.indices() for s in enumerate_subsets(space_a)]
    ha = pairwise_hausdorff_table(space_a.dist, subsets)
    hb = pairwise_hausdorff_table(space_b.dist, subsets)
    hu = np.triu_indices(len(subsets), 1)
    return UniformEquivalenceReport(
        base_forward=ModulusProfile.from_pairs(da, db),
        base_back=ModulusProfile.from_pairs(db, da),
        hyper_forward=ModulusProfile.from_pairs(ha[hu], hb[hu]),
        hyper_back=ModulusProfile.from_pairs(hb[hu], ha[hu]),
    )


@dataclass(frozen=True)
class ClusterCheckReport:
    """Result of the crowded-member isolation check on a collection.

    A member is flagged when strictly more than ``multiplicity`` members sit
    within Hausdorff distance ``delta`` of it (itself included). Every point
    of a flagged member must have isolation <= delta; pairs violating that
    land in ``violators`` and indicate the collection genuinely escapes the
    expected clustering behavior.
    """

    delta: float
    multiplicity: int
    flagged: tuple[int, ...]
    violators: tuple[tuple[int, int], ...]  # (member index, point index)

    @property
    def ok(self) -> bool:
        return not self.violators


def cluster_members_check(c: CollectionSpec, delta: float) -> ClusterCheckReport:
    """Check that crowded members consist of low-isolation points only."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    space = c.space
    h = pairwise_hausdorff_table(space.dist, [m.indices() for m in c.members])
    iso = space.isolation_vector()
    flagged = []
    violators = []
    for p in range(len(c.members)):
        close = int((h[p] <= delta).sum())  # includes p itself
        if close > c.multiplicity:
            flagged.append(p)
            for x in c.members[p]:
                if iso[x] > delta:
                    violators.append((p, int(x)))
    return ClusterCheckReport(delta, c.multiplicity, tuple(flagged), tuple(violators))


def hyper_atsuji_shadow(c: CollectionSpec,
                        delta_grid: Sequence[float]) -> AtsujiProfile:
    """Scale diagnostics of a singleton-containing collection under H.

    Materializes the collection and reuses the base-space profile machinery
    on the resulting table: packing radii of complements of neighborhoods of
    the low-isolation region, per (delta, eps) grid cell.
    """
    if not c.includes_singletons:
        raise MissingSingletonsError(
            "collection must contain every singleton of its base space"
        )
    view = materialize(c.space, c.members)
    return view.space.atsuji_profile(delta_grid)
