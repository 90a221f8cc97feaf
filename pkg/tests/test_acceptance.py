"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines; every check runs at its stated tolerance, nothing is deferred.
"""

from hyperlab import run_suite
from hyperlab.bench import run_bench, summarize


def _run(name, config=None):
    result = run_suite(name, config or {})
    failing = [c for c in result.checks if c.status == "FAIL"]
    detail = "; ".join(
        f"{c.name}: measured={list(c.measured)} expected={list(c.expected)}"
        f" tol={c.tolerance:g} cmp={c.cmp}"
        for c in failing
    )
    return result, failing, detail


def _report(num, label, ok, extra=""):
    status = "PASS" if ok else "FAIL"
    suffix = f" ({extra})" if extra else ""
    print(f"[acceptance] criterion {num:02d} {label}: {status}{suffix}")


def test_criterion_01_hausdorff_oracle_equivalence():
    result, failing, detail = _run(
        "hausdorff-oracle",
        {"trials": "1000", "n": "200", "seeds": "20", "budget_seconds": "10"},
    )
    wall = next(c for c in result.checks if c.name == "runtime-seconds").measured[0]
    _report(1, "hausdorff oracle equivalence (1000 pairs, 20 seeds)",
            not failing, f"runtime {wall:.2f}s")
    assert not failing, detail


def test_criterion_02_hausdorff_metric_axioms():
    result, failing, detail = _run("metric-axioms", {"seeds": "20", "n": "6"})
    _report(2, "H metric axioms, exhaustive subset triples of 6-point spaces",
            not failing)
    assert not failing, detail


def test_criterion_03_singleton_isometry():
    result, failing, detail = _run("metric-axioms", {"isometry_spaces": "50"})
    check = next(c for c in result.checks if c.name == "singleton-isometry-mismatches")
    _report(3, "singleton embedding isometry, 50 random spaces n <= 12",
            check.status == "PASS")
    assert check.status == "PASS", detail


def test_criterion_04_modulus_transfer():
    result, failing, detail = _run("thm3-1", {"maps": "100", "max_n": "8"})
    worst = result.checks[0].measured[0]
    _report(4, "base vs set-level modulus equality on 100 random maps",
            not failing, f"worst discrepancy {worst:.2e}")
    assert not failing, detail


def test_criterion_05_tangent_grid_blowup():
    result, failing, detail = _run("ex3-2")
    _report(5, "tangent-grid block gaps, image gaps, shrinking delta-star",
            not failing)
    assert not failing, detail


def test_criterion_06_packing_radii():
    result, failing, detail = _run("ex4-2")
    _report(6, "integer vs reciprocal packing radii across sizes", not failing)
    assert not failing, detail


def test_criterion_07_orthogonal_family():
    result, failing, detail = _run("ex4-4", {"m": "50", "walk_n": "50"})
    _report(7, "orthogonal family: unit pair distances, Cauchy-scale shadows",
            not failing)
    assert not failing, detail


def test_criterion_08_cluster_members():
    result, failing, detail = _run("thm4-6-shadow", {"delta": "0.02", "seeds": "10"})
    _report(8, "crowded members have low-isolation points (windows + singletons)",
            not failing)
    assert not failing, detail


def test_criterion_09_hyper_scale_diagnostics():
    result, failing, detail = _run("thm4-5-shadow", {"n": "8"})
    _report(9, "singleton hyperspace of the integer space keeps packing radius 1",
            not failing)
    assert not failing, detail


def test_criterion_10_joint_continuity():
    result, failing, detail = _run("lemma5-1", {"seeds": "20", "n": "6"})
    worst = result.checks[0].measured[0]
    _report(10, "joint continuity inequality, exhaustive n=6 over 20 spaces",
            not failing, f"worst gap {worst:.2e}")
    assert not failing, detail


def test_criterion_11_fixed_point_searches():
    all_ok = True
    details = []
    for name in ("thm5-2", "cor5-3", "thm5-4"):
        _, failing, detail = _run(
            name, {"maps": "50", "max_n": "10"} if name == "thm5-4" else None
        )
        if failing:
            all_ok = False
            details.append(f"{name}: {detail}")
    _report(11, "staged searches: worked outcomes and route agreement", all_ok)
    assert all_ok, " | ".join(details)


def test_criterion_12_convexity_demo():
    result, failing, detail = _run(
        "thm5-5-demo", {"random_maps": "100", "grid": "33"}
    )
    _report(12, "range-preserving demo: halving map and 100 random monotone maps",
            not failing)
    assert not failing, detail


def test_criterion_13_performance_report():
    records = run_bench(n=10_000, seeds=(0,))
    stats = summarize(records)
    ratio_ok = stats["visit_ratio"] <= 0.25
    speed_ok = stats["speedup"] > 1.0
    _report(
        13,
        "early-break performance on clustered 1e4-point sets",
        ratio_ok and speed_ok,
        f"visit ratio {stats['visit_ratio']:.4f}, speedup {stats['speedup']:.1f}x,"
        f" kernel {stats['kernel']}",
    )
    naive_wall = sum(r.wall_ns for r in records if r.kernel == "naive")
    fast_wall = sum(r.wall_ns for r in records if r.kernel == stats["kernel"])
    assert ratio_ok, f"visit ratio {stats['visit_ratio']:.4f} above 25%"
    assert speed_ok, f"speedup {stats['speedup']:.2f} (naive {naive_wall}ns, fast {fast_wall}ns)"
    values = {r.seed: r.value for r in records if r.kernel == "naive"}
    for r in records:
        assert r.value == values[r.seed]
