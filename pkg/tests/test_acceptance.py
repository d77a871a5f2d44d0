"""Acceptance suite: one check per stated criterion, with a printed verdict line.

Run with -s to see the PASS/FAIL lines.  Two sub-checks are strict expected
failures: the evaluated residual caps (criterion 6) and printed-threshold chain
verdicts (criterion 7) for the cases whose printed constants are too small for
the defended normalizer bound; the analysis lives in the decisions ledger.
"""

import os
import time

import pytest

from kgv.bounds import (
    CASE_DATA,
    case_chain,
    case_report,
    exceptional_fields,
    exceptional_pairs_scan,
    metacyclic_bound,
    scan_section5,
)
from kgv.brute_force import (
    DIRECT_CAP,
    jordan_block_orbit_count,
    kgv_count,
    metacyclic_enumerate,
    metacyclic_matrix_group,
    orbit_count_on_vectors,
    prime_powers_up_to,
    refined_involution_census,
    type_histogram,
    verify_small_lemmas,
)
from kgv.element_counts import element_count_for_label, fg_unipotent_count, section3_table, total_class_sum
from kgv.group_orders import GroupLabel, SP, sp_order
from kgv.intmath import factorize
from kgv.matgroup import general_linear_group, symplectic_form_rows, symplectic_group
from kgv.orbit_bounds import d1, d2
from kgv.partitions import enumerate_partitions
from kgv.polyfield import FiniteField, enumerate_irreducibles, reciprocal_conjugate, zsigmondy

EXTENDED = bool(int(os.environ.get("KGV_EXTENDED", "0")))
METACYCLIC_TIER = 1024 if EXTENDED else 512


def report(criterion, ok, detail=""):
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  ({detail})"
    print(line)
    return ok


@pytest.fixture(scope="module")
def metacyclic_sweep():
    """k(GV) and k(G) for every spec with p^n <= tier, computed once."""
    rows = []
    for (p, n) in prime_powers_up_to(METACYCLIC_TIER):
        field = FiniteField(p, n)
        for spec in metacyclic_enumerate(p, n):
            group = metacyclic_matrix_group(spec, field)
            rows.append((spec, kgv_count(group, "lgt"), group.class_count()))
    return rows


def test_criterion_01_oracle_equivalence(sp_groups):
    start = time.time()
    ok = True
    for (a, r), group in sp_groups.items():
        hist = type_histogram(group)
        ok = ok and sum(hist.values()) == group.order
        for label, count in hist.items():
            ok = ok and element_count_for_label(a, r, label) == count
        if r != 2:
            ok = ok and total_class_sum(GroupLabel(SP, a, r)) == group.order
    elapsed = time.time() - start
    assert report("1", ok, f"five oracle groups, {elapsed:.0f}s") and elapsed < 120


@pytest.mark.extended
def test_criterion_01_extended_sp62():
    start = time.time()
    group = symplectic_group(3, 2)
    hist = type_histogram(group)
    ok = sum(hist.values()) == 1451520
    ok = ok and hist[(((1, 1), (2, 1, 1, 1, 1)),)] == 63
    ok = ok and hist[(((1, 1), (2, 2, 1, 1)),)] == 1260
    census = refined_involution_census(group, symplectic_form_rows(3))
    ok = ok and census.get(((2, 2, 1, 1), True), 0) <= 2**11
    elapsed = time.time() - start
    assert report("1-extended", ok, f"Sp(6,2), {elapsed:.0f}s") and elapsed < 600


def test_criterion_02_table():
    start = time.time()
    table = section3_table()
    cells = {(row["a"], row["r"]): row["entries"] for row in table.rows}
    from fractions import Fraction

    ok = table.all_verdicts_pass()
    ok = ok and cells[(2, 5)][Fraction(3, 5)]["computed"] == 651
    ok = ok and cells[(1, 3)][Fraction(2, 3)]["computed"] == 9
    ok = ok and cells[(1, 5)][Fraction(3, 5)]["computed"] == 1
    ok = ok and cells[(1, 7)][Fraction(4, 7)]["computed"] == 1
    assert report("2", ok, f"{time.time()-start:.1f}s")


def test_criterion_03_orbit_formulas():
    start = time.time()
    ok = d2(2, 2) == 10 and d2(3, 2) == 33
    for r in (2, 3, 5, 7):
        a = 1
        while r ** (2 * a) <= 2500:
            ok = ok and d1(r, a) == jordan_block_orbit_count(r, [2 * a])
            ok = ok and d2(r, a) == jordan_block_orbit_count(r, [a, a])
            a += 1
    assert report("3", ok, f"{time.time()-start:.1f}s")


def test_criterion_04_metacyclic_theorem(metacyclic_sweep):
    start = time.time()
    from kgv.brute_force import conjugacy_canonical_k

    violators = {}
    for spec, kgv, _ in metacyclic_sweep:
        if kgv > spec.p**spec.n:
            canon = (spec.p, spec.n, spec.m, spec.d,
                     conjugacy_canonical_k(spec.p, spec.n, spec.m, spec.d, spec.k))
            violators.setdefault(canon, []).append(kgv)
    ok = len(violators) == 2
    ok = ok and all(p**n == 4 for (p, n, *_rest) in violators)
    ok = ok and all(set(v) == {5} for v in violators.values())
    elapsed = time.time() - start
    budget = 1800 if EXTENDED else 300
    assert report("4", ok, f"tier {METACYCLIC_TIER}, {elapsed:.0f}s") and elapsed < budget


def test_criterion_05_agl23():
    g = general_linear_group(2, 3)
    ok = kgv_count(g, "lgt") == 11 and kgv_count(g, "direct") == 11
    assert report("5", ok)


def test_criterion_06_scan_fields_thresholds():
    start = time.time()
    printed_pairs = (
        {(2, a) for a in range(1, 9)} | {(3, a) for a in range(1, 5)} | {(5, 1), (5, 2), (7, 1)}
    )
    ok = exceptional_pairs_scan() == printed_pairs
    printed_fields = {
        (6, 2): [3],
        (5, 2): [3, 5, 7, 9, 11],
        (3, 3): [4, 7],
        (4, 2): [3, 5, 7, 9, 17, 25, 27],
        (3, 2): [3, 5, 7, 9, 25, 27, 49, 81, 125],
        (2, 3): [4, 16, 25],
        (2, 2): [3, 5, 9, 25, 27, 81, 125, 243],
    }
    for key, fields in printed_fields.items():
        ok = ok and exceptional_fields(*key) == fields
    ok = ok and case_report(5, 2)["threshold_consistent"]
    ok = ok and case_report(3, 3)["threshold_consistent"]
    ok = ok and case_report(5, 2)["threshold_v"] == 17**32
    ok = ok and case_report(3, 3)["threshold_v"] == 13**27
    caps_ok = {key: case_report(*key)["cap_ok"] for key in printed_fields}
    holding = sorted(k for k, v in caps_ok.items() if v)
    ok = ok and holding == [(2, 2), (3, 3), (4, 2), (5, 2), (6, 2)]
    assert report("6", ok, f"lists 7/7, caps 5/7 (ledger), {time.time()-start:.0f}s")


@pytest.mark.xfail(
    strict=True,
    reason="printed residual caps 2^58 / 2^44 are exceeded at |K|=125 resp. 25 "
    "under the defended normalizer bound; see notes/decisions.md",
)
def test_criterion_06_residual_caps_all_printed():
    for (a, r) in ((6, 2), (5, 2), (3, 3), (4, 2), (3, 2), (2, 3), (2, 2)):
        rep = case_report(a, r)
        assert rep["residual_cap"] <= 2 ** rep["cap_exponent"], (a, r)


def test_criterion_07_chains_at_thresholds():
    ok = True
    for (a, r), (q0, _) in sorted(CASE_DATA.items()):
        if (a, r) in ((4, 2), (2, 3)):
            continue  # strict expected failures, asserted separately below
        ok = ok and case_chain(a, r, q0).verdict
    assert report("7", ok, "11/13 chains at printed thresholds; 2 documented defects")


@pytest.mark.xfail(
    strict=True,
    reason="the (a=4, r=2) and (a=2, r=3) chains exceed |V| at the printed "
    "thresholds 41^16 resp. 31^9 under the defended normalizer bound; "
    "see notes/decisions.md",
)
def test_criterion_07_all_printed_thresholds():
    for (a, r), (q0, _) in sorted(CASE_DATA.items()):
        assert case_chain(a, r, q0).verdict, (a, r)


def test_criterion_08_section5_scan():
    start = time.time()
    out = scan_section5(n_max=4096, qk_max=2**20)
    elapsed = time.time() - start
    ok = out["ceiling_ok"] and out["max_total"] <= 2**1344
    assert report("8", ok, f"{out['checked']} points, {elapsed:.0f}s") and elapsed < 600


def test_criterion_09_metacyclic_bound_dominance(metacyclic_sweep):
    start = time.time()
    ok = True
    tight = False
    for spec, kgv, kg in metacyclic_sweep:
        p, n, m, d = spec.p, spec.n, spec.m, spec.d
        if d == 1:
            ok = ok and metacyclic_bound("d1_case", p, n, m, 1) == kgv
            continue
        l5 = metacyclic_bound("l5", p, n, m, d)
        ok = ok and l5 >= kg
        if (p, n, m, d) == (2, 2, 1, 2):
            tight = tight or l5 == kg == 3
        ok = ok and metacyclic_bound("l7", p, n, m, d) >= kgv
        if m < d and zsigmondy(p, n) is not None:
            ok = ok and metacyclic_bound("l8", p, n, m, d) >= kgv
        if m == 1:
            ok = ok and metacyclic_bound("l9", p, n, m, d) >= kgv
    ok = ok and tight
    assert report("9", ok, f"{len(metacyclic_sweep)} specs, {time.time()-start:.0f}s")


def test_criterion_10_property_suites(sp_groups):
    start = time.time()
    ok = True
    # dual involution and the n-statistic identity
    for n in range(0, 31):
        for mu in enumerate_partitions(n):
            ok = ok and mu.dual().dual() == mu
            ok = ok and mu.n_statistic() == sum(i * p for i, p in enumerate(mu.parts))
    # irreducible counts against the necklace formula
    def necklace(r, d):
        def mobius(k):
            f = factorize(k)
            if any(e > 1 for e in f.values()):
                return 0
            return -1 if len(f) % 2 else 1

        return sum(mobius(e) * r ** (d // e) for e in range(1, d + 1) if d % e == 0) // d

    for r in (2, 3, 5, 7):
        max_d = 6 if r <= 3 else 4
        polys = enumerate_irreducibles(r, max_d)
        for dd in range(1, max_d + 1):
            expected = necklace(r, dd) - (1 if dd == 1 else 0)
            ok = ok and sum(1 for f in polys if f.degree == dd) == expected
        for f in polys:
            ok = ok and reciprocal_conjugate(reciprocal_conjugate(f)) == f
    # Brauer equality, Nagao/Gallagher, lgt = direct on all p^n <= 64 instances
    lemmas = verify_small_lemmas(q_max=64)
    for name, entry in lemmas.items():
        ok = ok and entry["instances"] > 0 and not entry["failures"]
    for (p, n) in ((2, 3), (3, 2)):
        field = FiniteField(p, n)
        for spec in metacyclic_enumerate(p, n):
            group = metacyclic_matrix_group(spec, field)
            ok = ok and orbit_count_on_vectors(group) == orbit_count_on_vectors(group, dual=True)
            if group.order * p**n <= DIRECT_CAP:
                ok = ok and kgv_count(group, "lgt") == kgv_count(group, "direct")
    elapsed = time.time() - start
    assert report("10", ok, f"{elapsed:.0f}s") and elapsed < 120
