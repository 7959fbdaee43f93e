"""Integer partitions as Jordan types.

A :class:`Partition` is a weakly decreasing tuple of positive integers.  This
module covers parsing and rendering, the run encoding used by the Oblak
recursion, dominance order, the almost-rectangular decomposition index
``r_B`` and window index ``s_B``, and conversion between a partition and the
rank sequence ``rank J^m`` of a nilpotent matrix of that type.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from itertools import accumulate, combinations
from typing import Iterable, Iterator, Sequence


class PartitionError(ValueError):
    """Raised for malformed partition text or invalid partition data."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


@dataclass(frozen=True, order=False)
class Partition:
    """Weakly decreasing sequence of positive integers.

    Zero parts are dropped on construction; the empty partition is legal.
    """

    parts: tuple[int, ...] = ()
    n: int = field(init=False, compare=False, repr=False)

    def __post_init__(self) -> None:
        parts = tuple(int(p) for p in self.parts if p != 0)
        for k, p in enumerate(parts):
            if p < 0:
                raise PartitionError(f"negative part {p}", k)
            if k and p > parts[k - 1]:
                raise PartitionError("increasing sequence", k)
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "n", sum(parts))

    @classmethod
    def sorted_from(cls, values: Iterable[int]) -> "Partition":
        """Build a partition from an unordered multiset of nonnegative values."""
        return cls(tuple(sorted((v for v in values if v > 0), reverse=True)))

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, k):
        return self.parts[k]

    def __bool__(self) -> bool:
        return bool(self.parts)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Partition({self.parts})"

    def render(self, exponent: bool = True) -> str:
        """Render as ``"3^2,2,1"`` (exponent form) or ``"3,3,2,1"``."""
        if not exponent:
            return ",".join(str(p) for p in self.parts)
        enc = runs(self)
        out = []
        prev = 0
        for v, q in zip(enc.values, enc.cumulative):
            m = q - prev
            prev = q
            out.append(f"{v}^{m}" if m > 1 else str(v))
        return ",".join(out)


_TOKEN = re.compile(r"\s*(-?\d+)\s*(?:\^\s*(-?\d+)\s*)?")


def parse_partition(text: str) -> Partition:
    """Parse ``part ("," part)*`` where ``part = INT ("^" INT)?``.

    >>> parse_partition("3^2,2,1").parts
    (3, 3, 2, 1)
    """
    if not text.strip():
        return Partition(())
    parts: list[int] = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise PartitionError("syntax error", pos)
        value = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        if value <= 0:
            raise PartitionError(f"non-positive value {value}", m.start(1))
        if mult <= 0:
            raise PartitionError(f"non-positive exponent {mult}", m.start(2))
        if parts and value > parts[-1]:
            raise PartitionError("increasing sequence", m.start(1))
        parts.extend([value] * mult)
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != ",":
            raise PartitionError("syntax error", pos)
        pos += 1
    return Partition(tuple(parts))


def as_partition(B) -> Partition:
    """Coerce a Partition, a sequence of ints or partition text."""
    if isinstance(B, Partition):
        return B
    if isinstance(B, str):
        return parse_partition(B)
    return Partition(tuple(B))


@dataclass(frozen=True)
class RunEncoding:
    """Distinct part values ``values`` with cumulative counts ``cumulative``.

    Run ``i`` (1-based) has value ``values[i-1]`` and multiplicity
    ``cumulative[i-1] - cumulative[i-2]`` (with the 0-th cumulative count 0).
    """

    values: tuple[int, ...]
    cumulative: tuple[int, ...]

    @property
    def u(self) -> int:
        return len(self.values)

    def q(self, i: int) -> int:
        """Cumulative count q_i for 0 <= i <= u (q_0 = 0)."""
        return 0 if i == 0 else self.cumulative[i - 1]

    def value(self, i: int) -> int:
        return self.values[i - 1]

    def multiplicity(self, i: int) -> int:
        return self.q(i) - self.q(i - 1)

    def to_partition(self) -> Partition:
        parts: list[int] = []
        for i in range(1, self.u + 1):
            parts.extend([self.value(i)] * self.multiplicity(i))
        return Partition(tuple(parts))


def runs(B) -> RunEncoding:
    B = as_partition(B)
    values: list[int] = []
    cumulative: list[int] = []
    for k, p in enumerate(B.parts):
        if values and values[-1] == p:
            cumulative[-1] = k + 1
        else:
            values.append(p)
            cumulative.append(k + 1)
    return RunEncoding(tuple(values), tuple(cumulative))


class Dominance(enum.Enum):
    LESS = "less"
    EQUAL = "equal"
    GREATER = "greater"
    INCOMPARABLE = "incomparable"


def prefix_sums(B: Sequence[int], length: int) -> list[int]:
    padded = list(B) + [0] * (length - len(B))
    return list(accumulate(padded))


def dominance_compare(B, C) -> Dominance:
    """Compare two partitions of the same n in dominance order."""
    B, C = as_partition(B), as_partition(C)
    if B.n != C.n:
        raise PartitionError(f"partitions of different sizes {B.n} and {C.n}")
    if B == C:
        return Dominance.EQUAL
    length = max(len(B), len(C))
    le = ge = True
    for b, c in zip(prefix_sums(B, length), prefix_sums(C, length)):
        if b < c:
            ge = False
        elif b > c:
            le = False
    if le:
        return Dominance.LESS
    if ge:
        return Dominance.GREATER
    return Dominance.INCOMPARABLE


def dominated_by(B, C) -> bool:
    """True iff B <= C in dominance order."""
    return dominance_compare(B, C) in (Dominance.LESS, Dominance.EQUAL)


def conjugate(B) -> Partition:
    B = as_partition(B)
    if not B:
        return Partition(())
    return Partition(tuple(sum(1 for p in B if p > k) for k in range(B[0])))


def is_almost_rectangular(B) -> bool:
    B = as_partition(B)
    if not B:
        raise PartitionError("empty partition")
    return B[0] - B[-1] <= 1


@dataclass(frozen=True)
class ArDecomposition:
    """Contiguous segments ``[start, stop)`` of part indices (0-based)."""

    segments: tuple[tuple[int, int], ...]

    def blocks(self, B) -> list[tuple[int, ...]]:
        B = as_partition(B)
        return [B.parts[a:b] for a, b in self.segments]

    def validate(self, B) -> None:
        B = as_partition(B)
        pos = 0
        for a, b in self.segments:
            if a != pos or b <= a:
                raise PartitionError("segments are not contiguous")
            seg = B.parts[a:b]
            if seg[0] - seg[-1] > 1:
                raise PartitionError(f"segment {seg} is not almost rectangular")
            pos = b
        if pos != len(B):
            raise PartitionError("segments do not cover the partition")


def r_index(B) -> tuple[int, ArDecomposition]:
    """Minimum number of contiguous almost-rectangular segments of B.

    The witness extends each segment greedily from the largest part; other
    minimal decompositions usually exist.
    """
    B = as_partition(B)
    if not B:
        raise PartitionError("empty partition")
    segments = []
    start = 0
    for k in range(1, len(B) + 1):
        if k == len(B) or B[start] - B[k] > 1:
            segments.append((start, k))
            start = k
    return len(segments), ArDecomposition(tuple(segments))


def ar_decompositions(B, r: int | None = None) -> Iterator[ArDecomposition]:
    """All decompositions of B into ``r`` (default r_B) almost-rectangular segments."""
    B = as_partition(B)
    t = len(B)
    if r is None:
        r = r_index(B)[0]
    for cuts in combinations(range(1, t), r - 1):
        bounds = (0, *cuts, t)
        segs = tuple(zip(bounds, bounds[1:]))
        if all(B[a] - B[b - 1] <= 1 for a, b in segs):
            yield ArDecomposition(segs)


def s_index(B) -> int:
    """Largest number of parts lying in a window {v, v+1}."""
    B = as_partition(B)
    if not B:
        raise PartitionError("empty partition")
    counts: dict[int, int] = {}
    for p in B:
        counts[p] = counts.get(p, 0) + 1
    return max(counts[v] + counts.get(v + 1, 0) for v in counts)


def tilde_of(B, d: ArDecomposition) -> Partition:
    """Segment sums of ``d``, sorted into a partition."""
    B = as_partition(B)
    d.validate(B)
    return Partition.sorted_from(sum(seg) for seg in d.blocks(B))


def jordan_power_type(n: int, s: int) -> Partition:
    """Jordan type of the s-th power of a single n x n Jordan block."""
    if n < 1 or s < 1:
        raise PartitionError("n and s must be positive")
    q, r = divmod(n, s)
    return Partition.sorted_from([q + 1] * r + [q] * (s - r))


def rank_profile_of_partition(B) -> tuple[int, ...]:
    """``(rank J^0, rank J^1, ..., 0)`` for J nilpotent of type B."""
    B = as_partition(B)
    top = B[0] if B else 0
    return tuple(sum(max(p - m, 0) for p in B) for m in range(top + 1))


def type_from_rank_profile(ranks: Sequence[int]) -> Partition:
    """Inverse of :func:`rank_profile_of_partition`.

    Trailing repeated zeros are accepted.
    """
    ranks = list(ranks)
    if not ranks:
        raise PartitionError("empty rank profile")
    while len(ranks) > 1 and ranks[-1] == 0 and ranks[-2] == 0:
        ranks.pop()
    if ranks[-1] != 0:
        raise PartitionError("rank profile does not reach 0")
    diffs = [a - b for a, b in zip(ranks, ranks[1:])]
    if any(d <= 0 for d in diffs):
        raise PartitionError("rank profile is not strictly decreasing to 0")
    if any(a < b for a, b in zip(diffs, diffs[1:])):
        raise PartitionError("inconsistent rank profile")
    return conjugate(Partition(tuple(diffs)))


def partitions_of(n: int) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""

    def gen(rem: int, cap: int) -> Iterator[tuple[int, ...]]:
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, cap), 0, -1):
            for rest in gen(rem - first, first):
                yield (first, *rest)

    for parts in gen(n, n):
        yield Partition(parts)
