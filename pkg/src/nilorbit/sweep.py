"""Property sweep of Q over all partitions up to a given size."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .oblak import omega1, q_all_choices, q_of
from .partitions import Partition, is_almost_rectangular, partitions_of, r_index
from .rbgraph import assign_rows, build_graph, delta_circle


def _gaps(P: Partition) -> list[int]:
    return [a - b for a, b in zip(P.parts, P.parts[1:])]


def _check_sum(B, Q):
    return Q.n == B.n


def _check_gap(B, Q):
    return all(g >= 2 for g in _gaps(Q))


def _check_idempotent(B, Q):
    return q_of(Q) == Q


def _check_fixed_point(B, Q):
    return (Q == B) == all(g > 1 for g in _gaps(B))


def _check_head(B, Q):
    return not B or Q[0] == omega1(B)


def _check_length(B, Q):
    return not B or len(Q) == r_index(B)[0]


def _check_collapse(B, Q):
    return not B or not is_almost_rectangular(B) or Q.parts == (B.n,)


def _check_circle(B, Q):
    return not B or len(delta_circle(B)) == omega1(B)


def _check_unique(B, Q):
    return q_all_choices(B) == {Q}


def _check_rows(B, Q):
    return not B or assign_rows(build_graph(B)).max_row + 1 == omega1(B)


CHECKS: dict[str, Callable[[Partition, Partition], bool]] = {
    "sum": _check_sum,
    "gap": _check_gap,
    "idempotent": _check_idempotent,
    "fixed-point": _check_fixed_point,
    "head": _check_head,
    "length": _check_length,
    "collapse": _check_collapse,
    "circle": _check_circle,
    "unique": _check_unique,
    "rows": _check_rows,
}

DEFAULT_CHECKS = tuple(CHECKS)


@dataclass
class SweepResult:
    n_max: int
    checked: int = 0
    failures: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not any(self.failures.values())


def property_sweep(n_max: int, checks: Iterable[str] = DEFAULT_CHECKS) -> SweepResult:
    checks = list(checks)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise ValueError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    result = SweepResult(n_max, failures={c: [] for c in checks})
    for n in range(1, n_max + 1):
        for B in partitions_of(n):
            Q = q_of(B)
            result.checked += 1
            for c in checks:
                if not CHECKS[c](B, Q):
                    result.failures[c].append(B)
    return result
