"""The Oblak recursion for the maximum commuting nilpotent type Q(B).

For a run encoding ``(mu_{q_1}, q_1), ..., (mu_{q_u}, q_u)`` of B the map

    (i, eps) -> 2 q_{i-1} + mu_{q_i} (q_i - q_{i-1}) + eps mu_{q_{i+1}} (q_{i+1} - q_i)

is maximized over pairs with ``eps = 0`` or with run i+1 one less than run i.
The maximum is ``omega1``, the largest index of nilpotency in the nilpotent
centralizer.  Removing the chosen runs and lowering every earlier part by two
gives ``B_hat``, and ``Q(B) = (omega1, Q(B_hat))``.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass
from functools import lru_cache

from .partitions import Partition, PartitionError, as_partition, runs


@dataclass(frozen=True)
class OblakCandidate:
    i: int
    eps: int
    value: int


@dataclass(frozen=True)
class OblakStep:
    omega1: int
    i_tilde: int
    eps_tilde: int
    b_hat: Partition


class TieBreakPolicy(enum.Enum):
    """How to choose among maximizing candidates."""

    SMALLEST_I_PREFER_EPS1 = "smallest-i-eps1"
    SMALLEST_I_PREFER_EPS0 = "smallest-i-eps0"
    LARGEST_I = "largest-i"


DEFAULT_POLICY = TieBreakPolicy.SMALLEST_I_PREFER_EPS1


def candidates(B) -> list[OblakCandidate]:
    """Every legal ``(i, eps)`` with its value, ordered by (i, eps)."""
    B = as_partition(B)
    if not B:
        raise PartitionError("empty partition")
    enc = runs(B)
    out = []
    for i in range(1, enc.u + 1):
        base = 2 * enc.q(i - 1) + enc.value(i) * enc.multiplicity(i)
        out.append(OblakCandidate(i, 0, base))
        if i < enc.u and enc.value(i) - enc.value(i + 1) == 1:
            out.append(OblakCandidate(i, 1, base + enc.value(i + 1) * enc.multiplicity(i + 1)))
    return out


def omega1(B) -> int:
    """Maximum index of nilpotency of a matrix commuting with J_B."""
    return max(c.value for c in candidates(B))


def maximizers(B) -> list[OblakCandidate]:
    cands = candidates(B)
    best = max(c.value for c in cands)
    return [c for c in cands if c.value == best]


def _choose(tops: list[OblakCandidate], policy: TieBreakPolicy) -> OblakCandidate:
    if policy is TieBreakPolicy.SMALLEST_I_PREFER_EPS1:
        return min(tops, key=lambda c: (c.i, -c.eps))
    if policy is TieBreakPolicy.SMALLEST_I_PREFER_EPS0:
        return min(tops, key=lambda c: (c.i, c.eps))
    return max(tops, key=lambda c: (c.i, c.eps))


def hat_of(B, c: OblakCandidate) -> Partition:
    """Contract B along candidate ``c``.

    Runs ``c.i`` and (when ``c.eps == 1``) ``c.i + 1`` are deleted and every
    part of an earlier run is lowered by 2.
    """
    B = as_partition(B)
    if c not in candidates(B):
        raise PartitionError(f"candidate {c} does not belong to {B}")
    enc = runs(B)
    parts: list[int] = []
    for r in range(1, enc.u + 1):
        if r < c.i:
            parts.extend([enc.value(r) - 2] * enc.multiplicity(r))
        elif r > c.i + c.eps:
            parts.extend([enc.value(r)] * enc.multiplicity(r))
    return Partition.sorted_from(parts)


def select_step(B, policy: TieBreakPolicy = DEFAULT_POLICY) -> OblakStep:
    B = as_partition(B)
    c = _choose(maximizers(B), policy)
    return OblakStep(c.value, c.i, c.eps, hat_of(B, c))


def q_of(B, policy: TieBreakPolicy = DEFAULT_POLICY) -> Partition:
    """Q(B): the maximum nilpotent Jordan type commuting with J_B."""
    B = as_partition(B)
    out = []
    while B:
        step = select_step(B, policy)
        out.append(step.omega1)
        B = step.b_hat
    return Partition(tuple(out))


@lru_cache(maxsize=None)
def _all_choices(parts: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    if not parts:
        return frozenset({()})
    B = Partition(parts)
    results = set()
    for c in maximizers(B):
        for tail in _all_choices(hat_of(B, c).parts):
            results.add((c.value, *tail))
    return frozenset(results)


def q_all_choices(B) -> set[Partition]:
    """Q-results over every maximizing branch at every recursion level."""
    B = as_partition(B)
    return {Partition(t) for t in _all_choices(B.parts)}


def count_branches(B) -> int:
    """Number of distinct root-to-leaf maximizer paths in the branching search."""
    B = as_partition(B)
    if not B:
        return 1
    return sum(count_branches(hat_of(B, c)) for c in maximizers(B))


def trace(B, policy: TieBreakPolicy = DEFAULT_POLICY) -> list[dict]:
    """Per-level record of the recursion, suitable for JSON lines."""
    B = as_partition(B)
    levels = []
    while B:
        step = select_step(B, policy)
        levels.append(
            {
                "partition": list(B.parts),
                "candidates": [asdict(c) for c in candidates(B)],
                "i_tilde": step.i_tilde,
                "eps_tilde": step.eps_tilde,
                "omega1": step.omega1,
                "b_hat": list(step.b_hat.parts),
            }
        )
        B = step.b_hat
    return levels
