"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line (with timing against its budget); the
lines are printed in the pytest terminal summary, or directly when this
file is run as a script.
"""
import random
import time
from fractions import Fraction

import pytest

from endscope.catalog import catalog_family, paper_example
from endscope.cli import main as cli_main
from endscope.compactness import check_lipschitz, rho, rho_from_sites
from endscope.components import NON_COMPACT, pseudo_components, theorem1_check
from endscope.ends import count_ends
from endscope.isometry import (isometry_group_finite, k_of_f, properness_report, random_subset,
                               symbolic_group)
from endscope.spaces import build_finite_space

from oracles import (admissible_sites, brute_force_isometries, floyd_warshall, literal_classes,
                     random_graph_metric, site_rho, symmetric_metric)

pytestmark = pytest.mark.acceptance

F = Fraction
RESULTS = []


def record(number, ok, detail, elapsed, budget):
    ok = ok and elapsed < budget
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail} ({elapsed:.2f}s / budget {budget}s)"
    RESULTS.append(line)
    return ok


def site_space(rng, d, k):
    sites = admissible_sites(rng, d, k)
    spec = {"kind": "sites", "sites": [{"point": s, "delta": str(v)} for s, v in sites.items()]}
    return build_finite_space(range(len(d)), d, spec), sites


def test_c1_classes_match_literal_definition():
    t0 = time.perf_counter()
    rng = random.Random(101)
    mismatches = 0
    for _ in range(1000):
        n = rng.randint(1, 12)
        d = random_graph_metric(rng, n)
        space, _ = site_space(rng, d, rng.randint(1, max(1, n // 3)))
        r = rho(space)
        part = pseudo_components(space, r)
        mismatches += part.as_sets() != literal_classes(list(range(n)), d, [r[i] for i in range(n)])
    elapsed = time.perf_counter() - t0
    assert record(1, mismatches == 0, f"SCC partition vs literal definition, 1000 spaces, {mismatches} mismatches",
                  elapsed, 60)


def test_c2_rho_is_lipschitz():
    rng = random.Random(202)
    cases = []
    for _ in range(1000):
        n = rng.randint(1, 12)
        d = random_graph_metric(rng, n)
        cases.append((site_space(rng, d, rng.randint(1, max(1, n // 2))), d))
    t0 = time.perf_counter()
    violations = 0
    for (space, sites), d in cases:
        r = rho_from_sites(space)
        violations += check_lipschitz(r, space) is not None
        violations += [r[i] for i in range(len(d))] != site_rho(d, sites)
    elapsed = time.perf_counter() - t0
    assert record(2, violations == 0, f"site rho 1-Lipschitz and matches oracle, 1000 spaces, {violations} violations",
                  elapsed, 10)


def orbit_site_space(rng, n):
    """A symmetric metric with sites placed on a whole isometry orbit, so the group stays nontrivial."""
    d = symmetric_metric(rng, n)
    plain = build_finite_space(range(n), d)
    if rng.random() < 0.25:
        return plain
    group = isometry_group_finite(plain)
    seed = rng.randrange(n)
    orbit = sorted({g(seed) for g in group})
    if n == 1:
        return build_finite_space(range(n), d, {"kind": "sites", "sites": [{"point": 0, "delta": "1"}]})
    gap = 2 * min(d[seed][j] for j in range(n) if j != seed)
    delta = gap * F(rng.randint(1, 4), 4)
    spec = {"kind": "sites", "sites": [{"point": s, "delta": str(delta)} for s in orbit]}
    return build_finite_space(range(n), d, spec)


def test_c3_isometry_invariance():
    t0 = time.perf_counter()
    rng = random.Random(303)
    violations = nontrivial = 0
    for _ in range(220):
        space = orbit_site_space(rng, rng.randint(1, 10))
        group = isometry_group_finite(space)
        nontrivial += len(group) > 1
        r = rho(space)
        part = pseudo_components(space, r)
        for g in group:
            for x in space.points:
                violations += r[g(x)] != r[x]
                violations += frozenset(g(y) for y in part.class_of(x)) != part.class_of(g(x))
    elapsed = time.perf_counter() - t0
    ok = violations == 0 and nontrivial >= 100
    assert record(3, ok, f"rho(gx)=rho(x), gC_x=C_gx on 220 spaces ({nontrivial} nontrivial groups), "
                         f"{violations} violations", elapsed, 120)


ENDS_EXPECTED = [("ray", {}, "finite(1)"), ("line", {}, "finite(2)"), ("ladder", {}, "finite(2)"),
                 ("grid", {}, "finite(1)"), ("tree", {"k": 3}, "unbounded"), ("cycle", {"m": 12}, "compact(0 ends)")]


def test_c4_ends_verdicts():
    t0 = time.perf_counter()
    got = {name: count_ends(name, params, window=4, levels=range(5, 13)).describe()
           for name, params, _ in ENDS_EXPECTED}
    elapsed = time.perf_counter() - t0
    wrong = [f"{n}={got[n]}" for n, _, want in ENDS_EXPECTED if got[n] != want]
    assert record(4, not wrong, "ends verdicts " + ", ".join(f"{n}={v}" for n, v in got.items()), elapsed, 30)


def test_c5_paper_example_reproduction():
    t0 = time.perf_counter()
    space = paper_example(12, 5, F(1, 10))
    ends = count_ends("paper_example", {"m": 12, "w": "1/10"})
    part = pseudo_components(space)
    structure = theorem1_check(space, ends=ends, partition=part)
    group = symbolic_group(space)
    proper = properness_report(group, space, part, ends=ends)
    grid_i, cycle_i = part.class_index((0, (0, 0))), part.class_index((1, 0))
    witness = proper.verdicts[cycle_i]["witness"]
    checks = {
        "ends finite(1)": ends.describe() == "finite(1)",
        "2 classes": len(part) == 2,
        "1 non-compact": structure.non_compact_count == 1 and part.tags[grid_i] == NON_COMPACT,
        "remainder 12": structure.compact_remainder == 12 == len(part.classes[cycle_i]),
        "grid class proper": proper.verdicts[grid_i]["proper"],
        "cycle class non-proper": not proper.verdicts[cycle_i]["proper"],
        "witness fixes a cycle vertex and replays": (witness is not None and witness.point[0] == 1
                                                     and witness.target == witness.point and witness.replay(K=8)),
        "no red flags": structure.status == "pass" and proper.status == "pass",
    }
    code = cli_main(["theorem1", "--catalog", "paper_example", "--params", "m=12", "w=1/10", "--level", "5",
                     "--json", "/dev/null"])
    checks["cli exit 0"] = code == 0
    elapsed = time.perf_counter() - t0
    failed = [k for k, v in checks.items() if not v]
    assert record(5, not failed, "grid-plus-cycle example " + ("all checks hold" if not failed else "failed: " + ", ".join(failed)),
                  elapsed, 30)


def test_c6_theorem1_sweep():
    t0 = time.perf_counter()
    cases = [("grid", {}), ("ray", {})]
    cases += [("paper_example", {"m": m, "w": w}) for m in range(3, 21) for w in ("1/10", "1/3")]
    levels = range(5, 9)
    red, checked = [], 0
    for name, params in cases:
        ends = count_ends(name, params, window=4, levels=levels)
        if not ends.one_ended:
            red.append(f"{name}{params} ends {ends.describe()}")
            continue
        for level in range(1, 9):
            space = catalog_family(name, params, level)
            part = pseudo_components(space)
            structure = theorem1_check(space, ends=ends, partition=part)
            proper = properness_report(symbolic_group(space), space, part, ends=ends)
            checked += 1
            if structure.status != "pass" or proper.status != "pass":
                red.append(f"{name}{params} level {level}: {structure.red_flags + proper.red_flags}")
    elapsed = time.perf_counter() - t0
    assert record(6, not red, f"theorem1 sweep over {checked} spaces, {len(red)} red flags", elapsed, 300), red[:5]


def test_c7_k_of_f_clopen():
    t0 = time.perf_counter()
    space = paper_example(12, 4)
    group = symbolic_group(space)
    part = pseudo_components(space)
    rng = random.Random(707)
    bad = kinds = 0
    seen = set()
    for _ in range(100):
        subset = random_subset(group, rng)
        k = k_of_f(subset, space, part)
        union = frozenset().union(*(part.classes[i] for i in k.classes)) if k.classes else frozenset()
        bad += not (k.certified and union == k.points and all(part.class_of(x) <= k.points for x in k.points))
        seen.add(len(k.points))
    kinds = len(seen)
    elapsed = time.perf_counter() - t0
    assert record(7, bad == 0 and kinds >= 2, f"K(F) union of classes and saturated, 100 subsets "
                                              f"({kinds} distinct sizes), {bad} violations", elapsed, 60)


CAP_FAMILIES = [("ray", {}), ("line", {}), ("ladder", {}), ("grid", {}), ("tree", {"k": 3}), ("cycle", {"m": 12}),
                ("paper_example", {"m": 12, "w": "1/10"}),
                ("disjoint_cap", {"pieces": [{"family": "line"}, {"family": "cycle", "params": {"m": 5}}], "c": 2})]


def test_c8_cap_invariance():
    t0 = time.perf_counter()
    mismatches = []
    for name, params in CAP_FAMILIES:
        base = count_ends(name, params).describe()
        for c in ("1/2", "1", "3"):
            capped = count_ends(name, params, cap=c).describe()
            if capped != base:
                mismatches.append(f"{name} c={c}: {capped} vs {base}")
    elapsed = time.perf_counter() - t0
    assert record(8, not mismatches, f"ends verdicts cap-invariant over {len(CAP_FAMILIES)} families x 3 caps, "
                                     f"{len(mismatches)} mismatches", elapsed, 60), mismatches


def test_c9_enumeration_matches_brute_force():
    t0 = time.perf_counter()
    rng = random.Random(909)
    mismatches = 0
    for i in range(100):
        n = rng.randint(1, 7)
        d = symmetric_metric(rng, n) if i % 2 else random_graph_metric(rng, n)
        if i % 3 == 0:
            space, sites = site_space(rng, d, rng.randint(1, max(1, n // 2)))
            r = rho(space)
            want = brute_force_isometries(list(range(n)), d, [r[x] for x in range(n)],
                                          [sites.get(x) for x in range(n)])
        else:
            space = build_finite_space(range(n), d)
            want = brute_force_isometries(list(range(n)), d)
        got = {tuple(g(x) for x in range(n)) for g in isometry_group_finite(space)}
        mismatches += got != {tuple(p) for p in want}
    for m in range(3, 8):
        d = floyd_warshall(list(range(m)), [(j, (j + 1) % m, 1) for j in range(m)])
        mismatches += len(isometry_group_finite(build_finite_space(range(m), d))) != 2 * m
    elapsed = time.perf_counter() - t0
    assert record(9, mismatches == 0, f"group orders vs brute force on 100 spaces and cycles m=3..7, "
                                      f"{mismatches} mismatches", elapsed, 120)


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q"]))
