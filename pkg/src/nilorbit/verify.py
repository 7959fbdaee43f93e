"""Sampling and enumeration oracles for the maximum commuting orbit.

Every check draws concrete matrices from a symbolic pattern, computes exact
ranks over GF(p) and compares the resulting Jordan types with ``q_of(B)``
in dominance order.  Randomness comes from one integer seed; each sample
gets its own child of ``numpy.random.SeedSequence(seed)`` so results do not
depend on batch sizes.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from .centralizer import PatternMatrix, pattern_values, se_pattern, sn_pattern
from .gfp import (
    FieldMatrix,
    as_modulus,
    batch_rank,
    batch_rank_profiles,
    rank,
)
from .oblak import omega1, q_of
from .partitions import (
    Partition,
    as_partition,
    dominated_by,
    r_index,
    rank_profile_of_partition,
    s_index,
    type_from_rank_profile,
)

EXHAUSTIVE_BITS = 24
LADDER = (3, 5, 7)


@dataclass
class VerificationReport:
    partition: Partition
    prime: int
    samples: int
    seed: int
    q: Partition
    observed_types: Counter = field(default_factory=Counter)
    max_type: Partition | None = None
    maximal: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    zero_draws: int = 0
    nilpotency_indices: list = field(default_factory=list)

    @property
    def attained(self) -> bool:
        return self.observed_types.get(self.q, 0) > 0

    @property
    def ok(self) -> bool:
        return not self.violations and self.attained and self.max_type == self.q

    def to_json(self) -> dict:
        return {
            "partition": list(self.partition.parts),
            "prime": self.prime,
            "samples": self.samples,
            "q": list(self.q.parts),
            "max_observed": list(self.max_type.parts) if self.max_type else None,
            "attained": self.attained,
            "violations": [list(v) for v in self.violations],
            "seed": self.seed,
        }


def maximal_elements(types) -> list[Partition]:
    types = list(set(types))
    return [
        t for t in types if not any(u != t and dominated_by(t, u) for u in types)
    ]


def unique_maximum(types) -> Partition | None:
    top = maximal_elements(types)
    return top[0] if len(top) == 1 else None


def sample_stack(P: PatternMatrix, p: int, k: int, seed: int) -> tuple[np.ndarray, int]:
    """``k`` instantiations of P (shape (k, n, n)) and the number with a zero draw."""
    d = P.coordinate_count
    children = np.random.SeedSequence(seed).spawn(k)
    vals = np.stack(
        [np.random.default_rng(c).integers(0, p, size=d, dtype=np.int64) for c in children]
    ) if d else np.zeros((k, 0), dtype=np.int64)
    zero_draws = int((vals == 0).any(axis=1).sum()) if d else 0
    stack = np.zeros((k, P.n, P.n), dtype=np.int64)
    mask = P.coords >= 0
    stack[:, mask] = vals[:, P.coords[mask]]
    return stack, zero_draws


def _profiles_to_types(table: np.ndarray) -> list[Partition]:
    cache: dict[tuple, Partition] = {}
    out = []
    for row in table:
        key = tuple(int(x) for x in row)
        if key not in cache:
            cache[key] = type_from_rank_profile(key)
        out.append(cache[key])
    return out


def sample_max_type(B, p: int = 65521, k: int = 64, seed: int = 0, kind: str = "sn") -> VerificationReport:
    """Jordan types of ``k`` random points of the sn (or se) pattern of B."""
    B = as_partition(B)
    p = as_modulus(p).p
    if k < 1:
        raise ValueError("need at least one sample")
    P = sn_pattern(B) if kind == "sn" else se_pattern(B)
    Q = q_of(B)
    report = VerificationReport(B, p, k, seed, Q)
    stack, report.zero_draws = sample_stack(P, p, k, seed)
    types = _profiles_to_types(batch_rank_profiles(stack, p))
    report.observed_types = Counter(types)
    report.nilpotency_indices = [t[0] if t else 0 for t in types]
    for t in report.observed_types:
        if not dominated_by(t, Q):
            report.violations.append(("dominance", str(t)))
    w1 = omega1(B)
    for idx in report.nilpotency_indices:
        if idx > w1:
            report.violations.append(("nilpotency-index", str(idx)))
    report.maximal = maximal_elements(report.observed_types)
    report.max_type = unique_maximum(report.observed_types)
    return report


def exhaustive_types(B, p: int, chunk: int = 1 << 16, kind: str = "sn") -> Counter:
    """Census of Jordan types over every coordinate assignment of the pattern."""
    B = as_partition(B)
    P = sn_pattern(B) if kind == "sn" else se_pattern(B)
    d = P.coordinate_count
    if d * math.log2(p) > EXHAUSTIVE_BITS:
        raise ValueError(f"{p}^{d} assignments exceed the 2^{EXHAUSTIVE_BITS} budget")
    total = p**d
    mask = P.coords >= 0
    idx_map = P.coords[mask]
    powers = p ** np.arange(d, dtype=np.int64)
    counts: Counter = Counter()
    for start in range(0, total, chunk):
        ids = np.arange(start, min(start + chunk, total), dtype=np.int64)
        vals = (ids[:, None] // powers[None, :]) % p
        stack = np.zeros((len(ids), P.n, P.n), dtype=np.int64)
        stack[:, mask] = vals[:, idx_map]
        table = batch_rank_profiles(stack, p)
        uniq, cnt = np.unique(table, axis=0, return_counts=True)
        for row, c in zip(uniq, cnt):
            counts[type_from_rank_profile([int(x) for x in row])] += int(c)
    return counts


def exhaustive_max_type(B, p: int) -> Partition:
    """Dominance maximum of all enumerated types; any type above Q(B) is an error."""
    B = as_partition(B)
    counts = exhaustive_types(B, p)
    Q = q_of(B)
    bad = [t for t in counts if not dominated_by(t, Q)]
    if bad:
        raise AssertionError(f"types {bad} are not dominated by Q(B) = {Q}")
    top = unique_maximum(counts)
    if top is None:
        raise AssertionError(f"no unique maximum among {maximal_elements(counts)}")
    return top


def exhaustive_ladder(B, primes=LADDER) -> tuple[int | None, dict[int, Partition]]:
    """Enumerate at increasing primes until Q(B) appears.

    Returns the first prime attaining Q(B) (or None) and the maximum found at
    each prime that fit the budget.
    """
    B = as_partition(B)
    Q = q_of(B)
    found: dict[int, Partition] = {}
    for p in primes:
        P = sn_pattern(B)
        if P.coordinate_count * math.log2(p) > EXHAUSTIVE_BITS:
            continue
        found[p] = exhaustive_max_type(B, p)
        if found[p] == Q:
            return p, found
    return None, found


@dataclass
class EquivalenceReport:
    partition: Partition
    trials: int
    mismatches: list = field(default_factory=list)
    full_rank_sn: list = field(default_factory=list)
    full_rank_se: list = field(default_factory=list)


def rank_pattern_equivalence(B, p: int = 65521, trials: int = 1000, seed: int = 0) -> EquivalenceReport:
    """Compare ranks of matching submatrices of tied and untied instances."""
    B = as_partition(B)
    p = as_modulus(p).p
    sn, se = sn_pattern(B), se_pattern(B)
    n = sn.n
    report = EquivalenceReport(B, trials)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    for t in range(trials):
        X = pattern_values(sn, rng.integers(0, p, size=sn.coordinate_count))
        Y = pattern_values(se, rng.integers(0, p, size=se.coordinate_count))
        if t == 0:
            rows = cols = np.arange(n)
        else:
            a, b = rng.integers(1, n + 1, size=2)
            rows = np.sort(rng.choice(n, size=a, replace=False))
            cols = np.sort(rng.choice(n, size=b, replace=False))
        rx = rank(FieldMatrix(X[np.ix_(rows, cols)], p))
        ry = rank(FieldMatrix(Y[np.ix_(rows, cols)], p))
        if t == 0:
            report.full_rank_sn.append(rx)
            report.full_rank_se.append(ry)
        if rx != ry:
            report.mismatches.append((rows.tolist(), cols.tolist(), rx, ry))
    return report


@dataclass
class PropReport:
    partition: Partition
    samples: int
    violations: list = field(default_factory=list)
    hits: int = 0

    @property
    def fraction(self) -> float:
        return self.hits / self.samples if self.samples else 0.0


def prop_r2_check(B, p: int = 65521, k: int = 16, seed: int = 0) -> PropReport:
    """``rank (A^{s_B})^m <= rank J^m`` for sampled A and every m."""
    B = as_partition(B)
    s = s_index(B)
    prof = rank_profile_of_partition(B)
    stack, _ = sample_stack(sn_pattern(B), p, k, seed)
    report = PropReport(B, k)
    power_s = stack.copy()
    for _ in range(s - 1):
        power_s = np.matmul(power_s, stack) % p
    power = power_s.copy()
    for m in range(1, len(prof)):
        ranks = batch_rank(power, p)
        for idx in np.flatnonzero(ranks > prof[m]):
            report.violations.append((int(idx), m, int(ranks[idx]), prof[m]))
        power = np.matmul(power, power_s) % p
    report.hits = k - len({v[0] for v in report.violations})
    return report


def prop_r1_check(B, p: int = 65521, k: int = 16, seed: int = 0) -> PropReport:
    """Count samples whose number of Jordan blocks equals r_B."""
    B = as_partition(B)
    r = r_index(B)[0]
    stack, _ = sample_stack(sn_pattern(B), p, k, seed)
    ranks = batch_rank(stack, p)
    report = PropReport(B, k)
    report.hits = int((B.n - ranks == r).sum())
    report.violations = [(int(i), int(B.n - ranks[i])) for i in np.flatnonzero(B.n - ranks < r)]
    return report
