"""Named verification suites and structured report emission.

Each suite executes a fixed bundle of checks with config-supplied sizes and
seeds and returns a :class:`SuiteResult`; every check carries its measured
and expected values plus the tolerance it was judged at. Reports serialize
one record per check, as JSON lines or CSV, and a run's process exit code is
0 iff no check failed.

Suite names are stable CLI tokens; see :data:`SUITE_NAMES`.
"""

from __future__ import annotations

import csv
import io as _io
import json
import math
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from . import families as fam
from . import fixedpoint as fp
from .errors import BadConfigError, NotInjectiveError, UnknownSuiteError
from .hausdorff import (
    BACKEND,
    hausdorff_early_break_stats,
    hausdorff_naive,
)
from .hyperspace import (
    CollectionSpec,
    PointMap,
    check_modulus_transfer,
    cluster_members_check,
    hyper_atsuji_shadow,
    induced_apply,
    materialize,
    modulus_of_map,
    singleton_embed,
    uniform_equivalence_profile,
)
from .rng import philox
from .space import INFINITY, cauchy_subsequence_at_scale

CSV_HEADER = ("suite", "check", "status", "measured", "expected", "tolerance", "wall_ns")


@dataclass(frozen=True)
class CheckResult:
    """One verified quantity: measured vs expected at a tolerance.

    ``cmp`` selects the comparison: "abs" (|measured - expected| <= tol,
    elementwise), "le" (measured <= expected + tol) or "ge"
    (measured >= expected - tol).
    """

    name: str
    status: str  # PASS | FAIL | SKIP
    measured: tuple[float, ...]
    expected: tuple[float, ...]
    tolerance: float
    cmp: str = "abs"


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    checks: tuple[CheckResult, ...]
    wall_ns: int
    config: dict[str, str]

    @property
    def failed(self) -> bool:
        return any(c.status == "FAIL" for c in self.checks)


def _check(name, measured, expected, tolerance=0.0, cmp="abs") -> CheckResult:
    measured = tuple(float(v) for v in np.atleast_1d(measured))
    expected = tuple(float(v) for v in np.atleast_1d(expected))
    if len(measured) != len(expected):
        raise ValueError(f"check {name}: measured/expected length mismatch")
    ok = True
    for m, e in zip(measured, expected):
        if cmp == "abs":
            # inf == inf counts as exact agreement
            ok = ok and (m == e or abs(m - e) <= tolerance)
        elif cmp == "le":
            ok = ok and m <= e + tolerance
        elif cmp == "ge":
            ok = ok and m >= e - tolerance
        else:
            raise ValueError(f"unknown comparator {cmp!r}")
    return CheckResult(name, "PASS" if ok else "FAIL", measured, expected,
                       float(tolerance), cmp)


def _cfg_int(config: dict[str, str], key: str, default: int) -> int:
    raw = config.get(key)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise BadConfigError(f"config key {key}={raw!r} is not an integer") from None


def _cfg_float(config: dict[str, str], key: str, default: float) -> float:
    raw = config.get(key)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError:
        raise BadConfigError(f"config key {key}={raw!r} is not a number") from None


def _strictly_decreasing(values) -> float:
    return 1.0 if all(b < a for a, b in zip(values, values[1:])) else 0.0


def _random_subset_bits(rng, n: int) -> int:
    size = int(rng.integers(1, n + 1))
    idx = rng.choice(n, size=size, replace=False)
    bits = 0
    for i in idx:
        bits |= 1 << int(i)
    return bits


# ---------------------------------------------------------------------------
# suite bodies


def _suite_hausdorff_oracle(config):
    trials = _cfg_int(config, "trials", 1000)
    n = _cfg_int(config, "n", 200)
    seeds = _cfg_int(config, "seeds", 20)
    budget = _cfg_float(config, "budget_seconds", 10.0)
    mismatches = 0
    visits_total = 0
    start = time.perf_counter()
    per_seed = max(1, trials // seeds)
    done = 0
    for s in range(seeds):
        space = fam.uniform_random(n, seed=s).space
        rng = philox(10_000 + s)
        for t in range(per_seed):
            if done >= trials:
                break
            a = space.subset_from_bits(_random_subset_bits(rng, n))
            b = space.subset_from_bits(_random_subset_bits(rng, n))
            expect = hausdorff_naive(a, b)
            got, visits = hausdorff_early_break_stats(a, b, order_seed=done)
            visits_total += visits
            if got != expect:
                mismatches += 1
            done += 1
    elapsed = time.perf_counter() - start
    return [
        _check("early-break-bit-exact-mismatches", mismatches, 0),
        _check("pairs-compared", done, trials),
        _check("runtime-seconds", elapsed, budget, cmp="le"),
    ]


def _suite_metric_axioms(config):
    seeds = _cfg_int(config, "seeds", 20)
    n = _cfg_int(config, "n", 6)
    iso_spaces = _cfg_int(config, "isometry_spaces", 50)
    checks = []
    worst_triangle = -math.inf
    symmetry_dev = 0.0
    identity_bad = 0
    for s in range(seeds):
        space = fam.uniform_random(n, seed=100 + s).space
        view = materialize(space, validate=True)
        h = view.space.dist
        m = h.shape[0]
        for k in range(m):
            viol = h - (h[:, k][:, None] + h[k, :][None, :])
            worst_triangle = max(worst_triangle, float(viol.max()))
        symmetry_dev = max(symmetry_dev, float(np.abs(h - h.T).max()))
        if np.diag(h).any():
            identity_bad += 1
        off = h + np.eye(m)
        if (off <= 0).any():
            identity_bad += 1
    checks.append(_check("h-triangle-worst-violation", worst_triangle, 0.0,
                         tolerance=1e-9, cmp="le"))
    checks.append(_check("h-symmetry-deviation", symmetry_dev, 0.0))
    checks.append(_check("h-identity-violations", identity_bad, 0))
    mismatch = 0
    rng = philox(777)
    for i in range(iso_spaces):
        size = 2 + int(rng.integers(0, 11))  # n <= 12
        space = fam.uniform_random(size, seed=500 + i).space
        view = materialize(space, singleton_embed(space).members)
        if not np.array_equal(view.space.dist, space.dist):
            mismatch += 1
    checks.append(_check("singleton-isometry-mismatches", mismatch, 0))
    return checks


def _suite_thm3_1(config):
    maps = _cfg_int(config, "maps", 100)
    max_n = _cfg_int(config, "max_n", 8)
    seed = _cfg_int(config, "seed", 0)
    rng = philox(31_000 + seed)
    worst = 0.0
    realized_mismatches = 0
    for _ in range(maps):
        n1 = 2 + int(rng.integers(0, max_n - 1))
        n2 = 2 + int(rng.integers(0, max_n - 1))
        dom = fam.uniform_random(n1, seed=int(rng.integers(0, 2**31))).space
        cod = fam.uniform_random(n2, seed=int(rng.integers(0, 2**31))).space
        images = tuple(int(v) for v in rng.integers(0, n2, size=n1))
        report = check_modulus_transfer(PointMap(dom, cod, images))
        worst = max(worst, report.max_discrepancy)
        if not report.realized_match:
            realized_mismatches += 1
    return [
        _check("modulus-transfer-worst-discrepancy", worst, 0.0,
               tolerance=1e-9, cmp="le"),
        _check("realized-distance-set-mismatches", realized_mismatches, 0),
    ]


def _suite_ex3_2(config):
    sizes = (4, 8, 16)
    checks = []
    delta_stars = []
    for n in sizes:
        bundle = fam.tangent_grid(n)
        blocks = fam.sequence(bundle, "A_n")
        fmap = bundle.companion_map
        base_err = 0.0
        image_dev = 0.0
        for j in range(n - 1):
            h = hausdorff_naive(blocks[j], blocks[j + 1])
            expected = 1.0 / ((j + 2) * (j + 3))
            base_err = max(base_err, abs(h - expected))
            hp = hausdorff_naive(
                induced_apply(fmap, blocks[j]), induced_apply(fmap, blocks[j + 1])
            )
            image_dev = max(image_dev, abs(hp - 1.0))
        checks.append(_check(f"N{n}-block-gap-error", base_err, 0.0,
                             tolerance=1e-12, cmp="le"))
        checks.append(_check(f"N{n}-image-gap-exactly-one", image_dev, 0.0))
        profile = modulus_of_map(fmap)
        ds = profile.delta_star(0.5)
        delta_stars.append(ds)
        checks.append(_check(f"N{n}-delta-star-at-0.5", ds, 1.0 / (n * (n + 1)),
                             tolerance=1e-12))
    checks.append(_check("delta-star-strictly-decreasing",
                         _strictly_decreasing(delta_stars), 1.0))
    return checks


def _suite_cor3_3(config):
    full_sizes = (5, 10)
    base_only_sizes = (20,)
    checks = []
    base_stars = []
    hyper_stars = []
    for n in full_sizes:
        nat = fam.naturals(n).space
        rec = fam.reciprocals(n).space
        report = uniform_equivalence_profile(nat, rec)
        ds_base = report.base_back.delta_star(0.4)
        ds_hyper = report.hyper_back.delta_star(0.4)
        base_stars.append(ds_base)
        hyper_stars.append(ds_hyper)
        checks.append(_check(f"N{n}-base-delta-star", ds_base,
                             1.0 / (n * (n - 1)), tolerance=1e-12))
        checks.append(_check(f"N{n}-hyper-delta-star-le-base", ds_hyper, ds_base,
                             cmp="le"))
    for n in base_only_sizes:
        # the hyperspace leg is enumerative and capped; past the cap only the
        # base-level modulus trend is computable
        nat = fam.naturals(n).space
        rec = fam.reciprocals(n).space
        ident = PointMap(rec, nat, tuple(range(n)))
        ds = modulus_of_map(ident).delta_star(0.4)
        base_stars.append(ds)
        checks.append(_check(f"N{n}-base-delta-star", ds,
                             1.0 / (n * (n - 1)), tolerance=1e-12))
    checks.append(_check("base-delta-star-strictly-decreasing",
                         _strictly_decreasing(base_stars), 1.0))
    checks.append(_check("hyper-delta-star-strictly-decreasing",
                         _strictly_decreasing(hyper_stars), 1.0))
    return checks


def _suite_ex4_2(config):
    sizes = (10, 20, 40)
    checks = []
    nat_devs = []
    rec_values = []
    rec_err = 0.0
    for n in sizes:
        nat_devs.append(abs(fam.naturals(n).space.packing_radius() - 1.0))
        rec = fam.reciprocals(n).space.packing_radius()
        rec_values.append(rec)
        rec_err = max(rec_err, abs(rec - 1.0 / (n * (n - 1))))
    checks.append(_check("naturals-packing-exactly-one", max(nat_devs), 0.0))
    checks.append(_check("reciprocals-packing-error", rec_err, 0.0,
                         tolerance=1e-12, cmp="le"))
    checks.append(_check("reciprocals-packing-strictly-decreasing",
                         _strictly_decreasing(rec_values), 1.0))
    return checks


def _suite_ex4_4(config):
    m = _cfg_int(config, "m", 50)
    walk_n = _cfg_int(config, "walk_n", 50)
    checks = []
    bundle = fam.ortho_scaled(m, 1)
    pairs = fam.sequence(bundle, "pair_0_en")
    view = materialize(bundle.space, pairs)
    h = view.space.dist
    off = h + np.eye(len(pairs))
    checks.append(_check("pairwise-H-equals-one", float(np.abs(off - 1.0).max()),
                         0.0, tolerance=1e-12, cmp="le"))
    seq = view.space.sequence(range(len(pairs)))
    found = cauchy_subsequence_at_scale(seq, 0.5)
    checks.append(_check("pair-sequence-no-eps-cauchy", 1.0 if found is None else 0.0, 1.0))
    if walk_n < 2:
        raise BadConfigError("ex4-4 needs walk_n >= 2")
    deep = fam.ortho_scaled(5, walk_n)
    walk = fam.sequence(deep, "e1_over_n")
    iso = [deep.space.isolation(i) for i in walk.items]
    # not strictly decreasing: the deepest point's nearest neighbor is its
    # predecessor, so the last two isolations coincide
    nonincreasing = 1.0 if all(b <= a for a, b in zip(iso, iso[1:])) else 0.0
    checks.append(_check("walk-isolation-nonincreasing", nonincreasing, 1.0))
    # the deepest walk point is pinched by its predecessor
    checks.append(_check("walk-final-isolation", iso[-1],
                         1.0 / ((walk_n - 1) * walk_n), tolerance=1e-12))
    sub = cauchy_subsequence_at_scale(walk, 0.1)
    checks.append(_check("walk-eps-cauchy-found", 0.0 if sub is None else len(sub),
                         (len(walk) + 1) // 2, cmp="ge"))
    return checks


def _suite_thm4_5_shadow(config):
    n = _cfg_int(config, "n", 8)
    grid = (0.125, 0.25, 0.5)
    space = fam.naturals(n).space
    profile = hyper_atsuji_shadow(singleton_embed(space), grid)
    dev = float(np.abs(profile.table - 1.0).max())
    return [
        _check("packing-radius-exactly-one", dev, 0.0),
        _check("min-isolation", profile.min_isolation, 1.0),
    ]


def _suite_thm4_6_shadow(config):
    delta = _cfg_float(config, "delta", 0.02)
    seeds = _cfg_int(config, "seeds", 10)
    checks = []
    rec = fam.reciprocals(20).space
    windows = [rec.subset((k, k + 1)) for k in range(19)]
    spec = CollectionSpec.from_members(windows)
    report = cluster_members_check(spec, delta)
    checks.append(_check("windows-multiplicity", spec.multiplicity, 2))
    checks.append(_check("windows-flagged-members", len(report.flagged), 12))
    checks.append(_check("windows-violators", len(report.violators), 0))
    violators = 0
    rng = philox(4600)
    for s in range(seeds):
        size = 2 + int(rng.integers(0, 9))
        space = fam.uniform_random(size, seed=4000 + s).space
        singles = singleton_embed(space)
        for d in (0.5 * space.packing_radius(), space.diameter() / 2, space.diameter()):
            violators += len(cluster_members_check(singles, d).violators)
    checks.append(_check("singleton-collections-violators", violators, 0))
    return checks


def _suite_lemma5_1(config):
    seeds = _cfg_int(config, "seeds", 20)
    n = _cfg_int(config, "n", 6)
    worst = -math.inf
    for s in range(seeds):
        space = fam.uniform_random(n, seed=5600 + s).space
        worst = max(worst, fp.joint_continuity_gap(space))
    return [_check("joint-continuity-worst-gap", worst, 0.0,
                   tolerance=1e-9, cmp="le")]


def _suite_thm5_2(config):
    checks = []
    nat16 = fam.naturals(16).space
    halving = fp.MultiMap.from_indices(
        nat16, [[(k + 1) // 2 - 1] for k in range(1, 17)]
    )
    trace = fp.almost_fixed_point_search(halving)
    checks.append(_check("halving-outcome-point", -1 if trace.outcome is None else trace.outcome, 0))
    checks.append(_check("halving-final-residual",
                         math.nan if trace.final_gap is None else trace.final_gap, 0.0))
    nat8 = fam.naturals(8).space
    shift = fp.MultiMap.from_indices(nat8, [[min(k + 1, 8) - 1] for k in range(1, 9)])
    trace = fp.almost_fixed_point_search(shift)
    checks.append(_check("capped-shift-outcome-point",
                         -1 if trace.outcome is None else trace.outcome, 7))
    wrap = fp.MultiMap.from_indices(nat8, [[k % 8] for k in range(1, 9)])
    trace = fp.almost_fixed_point_search(wrap)
    checks.append(_check("wrap-not-found", 1.0 if trace.outcome is None else 0.0, 1.0))
    checks.append(_check("wrap-failed-stage",
                         -1 if trace.failed_stage is None else trace.failed_stage, 2))
    return checks


def _suite_cor5_3(config):
    checks = []
    nat8 = fam.naturals(8).space
    double_shift = fp.MultiMap.from_indices(
        nat8, [sorted({min(k + 1, 8) - 1, min(k + 2, 8) - 1}) for k in range(1, 9)]
    )
    trace = fp.hyper_fixed_search(double_shift)
    checks.append(_check("double-shift-outcome-point",
                         -1 if trace.outcome is None else trace.outcome, 7))
    ident = fp.MultiMap.from_indices(nat8, [[k] for k in range(8)])
    trace = fp.hyper_fixed_search(ident)
    checks.append(_check("identity-outcome-point",
                         -1 if trace.outcome is None else trace.outcome, 0))
    rec = fam.reciprocals(20).space
    nearest = []
    for x in range(20):
        row = rec.dist[x].copy()
        row[x] = INFINITY
        nearest.append(int(row.argmin()))
    pairy = fp.MultiMap.from_indices(rec, [[x, nearest[x]] for x in range(20)])
    trace = fp.hyper_fixed_search(pairy)
    checks.append(_check("point-with-neighbor-outcome",
                         -1 if trace.outcome is None else trace.outcome, 0))
    checks.append(_check("point-with-neighbor-stage", trace.steps[-1].stage, 1))
    return checks


def _suite_thm5_4(config):
    maps = _cfg_int(config, "maps", 50)
    max_n = _cfg_int(config, "max_n", 10)
    rng = philox(54_000)
    disagreements = 0
    for _ in range(maps):
        n = 2 + int(rng.integers(0, max_n - 1))
        space = fam.uniform_random(n, seed=int(rng.integers(0, 2**31))).space
        all_bits = rng.choice(np.arange(1, 1 << n), size=n, replace=False)
        images = [space.subset_from_bits(int(b)) for b in all_bits]
        f = fp.MultiMap(space, tuple(images))
        direct = fp.hyper_fixed_search(f, use_inverse=False)
        inverse = fp.hyper_fixed_search(f, use_inverse=True)
        if (direct.outcome, direct.failed_stage) != (inverse.outcome, inverse.failed_stage):
            disagreements += 1
    checks = [_check("route-disagreements", disagreements, 0)]
    nat = fam.naturals(3).space
    collide = fp.MultiMap.from_indices(nat, [[0], [0], [0, 1, 2]])
    try:
        fp.hyper_fixed_search(collide, use_inverse=True)
        raised = 0.0
    except NotInjectiveError:
        raised = 1.0
    checks.append(_check("collision-raises-not-injective", raised, 1.0))
    return checks


def _suite_thm5_5_demo(config):
    random_maps = _cfg_int(config, "random_maps", 100)
    grid = _cfg_int(config, "grid", 33)
    checks = []
    report = fp.convex_demo(17, lambda x: x / 2)
    checks.append(_check("halving-fixed-range",
                         (-1, -1) if report.fixed_range is None else report.fixed_range,
                         (0, 0)))
    checks.append(_check("halving-fixed-point",
                         -1 if report.fixed_point is None else report.fixed_point, 0))
    rng = philox(55_000)
    preserved = 0
    for _ in range(random_maps):
        # grid-continuous monotone maps: steps of 0 or 1 never skip a cell,
        # which is the convexity-preservation hypothesis at grid resolution
        start = int(rng.integers(0, grid))
        steps = rng.integers(0, 2, size=grid - 1)
        h = np.minimum(start + np.concatenate([[0], np.cumsum(steps)]), grid - 1)
        rep = fp.convex_demo(grid, [int(v) for v in h])
        preserved += 1 if rep.preserved else 0
    checks.append(_check("random-monotone-maps-preserving", preserved, random_maps))
    return checks


SUITES: dict[str, Callable[[dict], list[CheckResult]]] = {
    "thm3-1": _suite_thm3_1,
    "ex3-2": _suite_ex3_2,
    "cor3-3": _suite_cor3_3,
    "ex4-2": _suite_ex4_2,
    "ex4-4": _suite_ex4_4,
    "thm4-5-shadow": _suite_thm4_5_shadow,
    "thm4-6-shadow": _suite_thm4_6_shadow,
    "lemma5-1": _suite_lemma5_1,
    "thm5-2": _suite_thm5_2,
    "cor5-3": _suite_cor5_3,
    "thm5-4": _suite_thm5_4,
    "thm5-5-demo": _suite_thm5_5_demo,
    "hausdorff-oracle": _suite_hausdorff_oracle,
    "metric-axioms": _suite_metric_axioms,
}

SUITE_NAMES = tuple(SUITES)


def run_suite(name: str, config: Optional[dict[str, str]] = None) -> SuiteResult:
    """Execute one named suite and collect its check results."""
    if name not in SUITES:
        raise UnknownSuiteError(
            f"unknown suite {name!r}; known: {', '.join(SUITE_NAMES)}"
        )
    config = dict(config or {})
    start = time.perf_counter_ns()
    checks = SUITES[name](config)
    wall = time.perf_counter_ns() - start
    config.setdefault("backend", BACKEND)
    return SuiteResult(name, tuple(checks), wall, config)


def _fmt_values(values) -> str:
    return ";".join(repr(v) for v in values)


def render_records(results) -> list[dict]:
    records = []
    for result in results:
        for c in result.checks:
            records.append(
                {
                    "suite": result.suite,
                    "check": c.name,
                    "status": c.status,
                    "measured": list(c.measured),
                    "expected": list(c.expected),
                    "tolerance": c.tolerance,
                    "cmp": c.cmp,
                    "wall_ns": result.wall_ns,
                }
            )
    return records


def emit_report(results, fmt: str = "json", path=None) -> str:
    """Serialize check records as JSON lines or CSV; optionally write a file."""
    if not results:
        raise ValueError("no results to report")
    if fmt == "json":
        lines = [json.dumps(r) for r in render_records(results)]
        text = "\n".join(lines) + "\n"
    elif fmt == "csv":
        buf = _io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(CSV_HEADER)
        for r in render_records(results):
            writer.writerow(
                [
                    r["suite"],
                    r["check"],
                    r["status"],
                    _fmt_values(r["measured"]),
                    _fmt_values(r["expected"]),
                    repr(r["tolerance"]),
                    r["wall_ns"],
                ]
            )
        text = buf.getvalue()
    else:
        raise ValueError(f"unknown format {fmt!r}; use json or csv")
    if path is not None:
        Path(path).write_text(text)
    return text
