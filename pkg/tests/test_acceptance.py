"""Acceptance criteria, each run at its stated tolerance.

Every test records a PASS or FAIL line that pytest prints in an
"acceptance criteria" section at the end of the run.
"""

from __future__ import annotations

import time

import numpy as np
import pytest

from nilorbit.centralizer import jordan_operator, pattern_values, prec_ordering, sn_pattern
from nilorbit.elimination import (
    example_mask_13,
    f_u_coefficient,
    f_u_columnwise,
    f_u_determinant,
    f_u_recursive,
    f_u_upper,
    generic_mask_instance,
    monotone_generic_type,
    sigma_reduce,
)
from nilorbit.gfp import FieldMatrix, batch_rank_profiles, jordan_type
from nilorbit.oblak import omega1, q_of, trace
from nilorbit.partitions import Partition, dominated_by, partitions_of
from nilorbit.rbgraph import assign_rows, build_graph, row_labels
from nilorbit.sweep import property_sweep
from nilorbit.verify import (
    exhaustive_ladder,
    exhaustive_types,
    prop_r2_check,
    rank_pattern_equivalence,
    sample_max_type,
)

P_BIG = 65521
WORKED = Partition((15, 13, 5, 4, 3, 3, 2, 1))


def up_to(n_max: int):
    for n in range(1, n_max + 1):
        yield from partitions_of(n)


def test_c01_recursion_worked_example(acceptance):
    start = time.perf_counter()
    Q = q_of(WORKED)
    elapsed = time.perf_counter() - start
    chain = [tuple(level["b_hat"]) for level in trace(WORKED)]
    ok = (
        Q.parts == (16, 13, 11, 5, 1)
        and chain[:3] == [(13, 11, 3, 2, 1), (11, 3, 2, 1), (3, 2, 1)]
        and q_of((3, 2, 1)).parts == (5, 1)
        and elapsed < 1e-3
    )
    assert acceptance("1", ok, f"Q = {Q}, chain {chain[:3]}, {elapsed * 1e3:.3f} ms")


def test_c02_omega1_values(acceptance):
    a = omega1((5, 5, 4, 3, 3, 3, 3, 2, 1))
    b = omega1(WORKED)
    assert acceptance("2", (a, b) == (20, 16), f"omega1 = {a} and {b}")


TABLE_752 = {
    **{(7, 1, l): l - 1 for l in range(1, 8)},
    **{(5, 1, l): l for l in range(1, 6)},
    (2, 1, 1): 2,
    (2, 1, 2): 3,
}
# v_{11}^2 in the printed table is read as v_{11}^1
TABLE_221 = {(2, 2, 1): 0, (2, 1, 1): 1, (1, 1, 1): 2, (2, 2, 2): 3, (2, 1, 2): 4}
EXAMPLE_GRAPHS = [
    (7, 5, 2), (2, 2, 1), (4, 2, 2, 1), (2, 2, 2), (5, 2, 2, 2), (6, 5, 2, 2, 2),
    (3, 3, 2, 1), (8, 8, 6, 6, 6, 6, 3, 3, 2, 1), (4, 3, 3, 2, 1), (5, 4, 3, 3, 2, 1),
    (17, 15, 13, 5, 4, 3, 3, 2, 1),
]


def test_c03_row_tables(acceptance):
    start = time.perf_counter()
    bad = [B for B in EXAMPLE_GRAPHS if assign_rows(build_graph(B)).max_row + 1 != omega1(B)]
    tables = row_labels((7, 5, 2)) == TABLE_752 and row_labels((2, 2, 1)) == TABLE_221
    elapsed = time.perf_counter() - start
    ok = not bad and tables and elapsed < 1.0
    assert acceptance("3", ok, f"{len(EXAMPLE_GRAPHS)} graphs, mismatches {bad}, tables match {tables}, {elapsed:.2f} s")


def test_c04_property_sweep(acceptance):
    start = time.perf_counter()
    result = property_sweep(14)
    elapsed = time.perf_counter() - start
    failed = {k: len(v) for k, v in result.failures.items() if v}
    ok = result.ok and elapsed < 10
    assert acceptance("4", ok, f"{result.checked} partitions, failures {failed or 'none'}, {elapsed:.2f} s")


@pytest.fixture(scope="module")
def sampled_reports():
    start = time.perf_counter()
    sn = {B: sample_max_type(B, P_BIG, 64, seed=n, kind="sn") for n, B in enumerate(up_to(9))}
    sn_time = time.perf_counter() - start
    se = {B: sample_max_type(B, P_BIG, 64, seed=10_000 + n, kind="se") for n, B in enumerate(up_to(9))}
    return sn, se, sn_time


def test_c05_monte_carlo_attainment(acceptance, sampled_reports):
    sn, _, elapsed = sampled_reports
    violations = [B for B, r in sn.items() if any(k == "dominance" for k, _ in r.violations)]
    missed = [B for B, r in sn.items() if not r.attained]
    ok = not violations and not missed and elapsed < 120
    assert acceptance(
        "5", ok, f"{len(sn)} partitions, violations {len(violations)}, unattained {len(missed)}, {elapsed:.1f} s"
    )


def test_c06_untied_pattern_agrees(acceptance, sampled_reports):
    sn, se, _ = sampled_reports
    differ = [B for B in sn if sn[B].max_type != se[B].max_type or not se[B].attained]
    violations = [B for B, r in se.items() if r.violations]
    ok = not differ and not violations
    assert acceptance("6", ok, f"{len(se)} partitions, discrepancies {len(differ)}, violations {len(violations)}")


def test_c07_commutation_and_nilpotency(acceptance):
    rng = np.random.default_rng(7)
    pool = list(up_to(10))
    total = commute_fail = nilp_fail = bound_fail = generic = 0
    for B in (pool[i] for i in rng.integers(0, len(pool), 1000)):
        P = sn_pattern(B)
        X = pattern_values(P, rng.integers(0, P_BIG, P.coordinate_count))
        J = jordan_operator(B, prec_ordering(B), P_BIG).to_array()
        total += 1
        if ((X @ J - J @ X) % P_BIG).any():
            commute_fail += 1
        prof = batch_rank_profiles(X[None], P_BIG)[0]
        if prof[-1] != 0:
            nilp_fail += 1
            continue
        index = int(np.argmax(prof == 0))
        w = omega1(B)
        bound_fail += index > w
        generic += index == w
    share = generic / total
    ok = total == 1000 and not commute_fail and not nilp_fail and not bound_fail and share >= 0.95
    assert acceptance(
        "7", ok,
        f"{total} samples, commute failures {commute_fail}, non-nilpotent {nilp_fail}, "
        f"index above omega1 {bound_fail}, generic index {share:.1%}",
    )


def _random_star(rng, k, p):
    a = np.triu(rng.integers(0, p, (k, k)))
    for i in range(1, k - 1):
        a[i, i] = rng.integers(1, p)
    return FieldMatrix(a, p)


def _multilinear_case(rng, case, p):
    k = int(rng.integers(3, 8))
    l = int(rng.integers(2, k + 1))
    a = np.triu(rng.integers(0, p, (k, k)))
    for i in range(k):
        a[i, i] = rng.integers(1, p)
    b = a.copy()
    b[:l, l - 1] = rng.integers(0, p, l)
    x, y = int(rng.integers(1, p)), int(rng.integers(1, p))
    while (x + y) % p == 0:
        y = int(rng.integers(1, p))
    diag = {"i": (0, 0), "ii": (0, x), "iii": (x, (-x) % p), "iv": (x, y)}[case]
    a[l - 1, l - 1], b[l - 1, l - 1] = diag
    c = a.copy()
    c[:l, l - 1] = (a[:l, l - 1] + b[:l, l - 1]) % p
    fu, fv, fw = (f_u_upper(FieldMatrix(m, p)) for m in (a, b, c))
    ul, vl = diag
    if case == "i":
        expected = fu + fv
    elif case == "ii":
        expected = fu * pow(vl, -1, p) + fv
    elif case == "iii":
        expected = fu * ul + fv * vl
    else:
        s = pow(ul + vl, -1, p)
        expected = (fu * ul + fv * vl) * s
    return fw == expected % p


def test_c08_rational_function_identities(acceptance):
    p = 101
    rng = np.random.default_rng(8)
    mismatches = column_mismatches = 0
    for _ in range(1000):
        U = _random_star(rng, int(rng.integers(2, 9)), p)
        r = f_u_recursive(U)
        mismatches += r != f_u_determinant(U)
        column_mismatches += r != f_u_columnwise(U)
    case_failures = {c: sum(not _multilinear_case(rng, c, p) for _ in range(100)) for c in ("i", "ii", "iii", "iv")}
    diff_failures = 0
    for _ in range(100):
        k = int(rng.integers(2, 9))
        U = _random_star(rng, k, p)
        base = f_u_recursive(U)
        for r_ in range(1, k):
            for s in range(r_ + 1, k + 1):
                a = U.to_array()
                a[r_ - 1, s - 1] += 1
                diff_failures += (f_u_recursive(FieldMatrix(a, p)) - base) % p != f_u_coefficient(U, r_, s)
    ok = not mismatches and not column_mismatches and not any(case_failures.values()) and not diff_failures
    assert acceptance(
        "8", ok,
        f"determinant mismatches {mismatches}, column mismatches {column_mismatches}, "
        f"multilinear failures {case_failures}, coefficient failures {diff_failures}",
    )


def test_c09_reduction_soundness(acceptance):
    seeds = np.random.SeedSequence(9).spawn(200)
    failures = retries = 0
    for child in seeds:
        local = np.random.default_rng(child)
        n = int(local.integers(2, 11))
        mask = np.triu(local.random((n, n)) < local.uniform(0.15, 0.75), 1)
        Y, tries = generic_mask_instance(mask, P_BIG, int(local.integers(0, 2**32)))
        retries += tries
        if monotone_generic_type(sigma_reduce(Y).final_phi) != jordan_type(Y):
            failures += 1
    rate = retries / 200
    ok = failures == 0 and rate < 0.01
    assert acceptance("9", ok, f"200 matrices, failures {failures}, retry rate {rate:.2%}")


@pytest.mark.xfail(
    strict=True,
    reason="the 13x13 example needs five sigma steps under every consistent selection, not three",
)
def test_c09_example_step_count(acceptance):
    counts = set()
    types_ok = True
    for seed in range(20):
        Y, _ = generic_mask_instance(example_mask_13(), P_BIG, seed)
        tr = sigma_reduce(Y)
        counts.add(tr.m)
        types_ok &= monotone_generic_type(tr.final_phi) == jordan_type(Y)
    ok = counts == {3}
    acceptance("9 (13x13 example)", ok, f"step counts {sorted(counts)} (expected 3), final types sound {types_ok}")
    assert ok


def test_c10_exhaustive_oracle(acceptance):
    cases = [(2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2), (2, 2, 1)]
    above = {}
    attained_at = {}
    for B in cases:
        Q = q_of(B)
        above[B] = [t for t in exhaustive_types(B, 3) if not dominated_by(t, Q)]
        attained_at[B] = exhaustive_ladder(B)[0]
    ok = not any(above.values()) and all(attained_at.values())
    assert acceptance("10", ok, f"types above Q {sum(map(len, above.values()))}, first prime attaining Q {attained_at}")


def test_c11_power_rank_inequality(acceptance):
    violations = 0
    count = 0
    for n, B in enumerate(up_to(9)):
        report = prop_r2_check(B, P_BIG, 16, seed=n)
        violations += len(report.violations)
        count += 1
    assert acceptance("11", violations == 0, f"{count} partitions x 16 samples, violations {violations}")


def test_c12_rank_pattern_equivalence(acceptance):
    report = rank_pattern_equivalence((4, 3, 3, 2, 1), P_BIG, 1000, seed=12)
    ok = not report.mismatches and report.full_rank_sn == [11]
    assert acceptance("12", ok, f"1000 submatrix comparisons, mismatches {len(report.mismatches)}")

