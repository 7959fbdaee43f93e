from __future__ import annotations

from hypothesis import strategies as st

from nilorbit.partitions import Partition


@st.composite
def partitions(draw, max_n: int = 12, min_n: int = 1):
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    parts = []
    remaining = n
    cap = n
    while remaining:
        part = draw(st.integers(min_value=1, max_value=min(remaining, cap)))
        parts.append(part)
        remaining -= part
        cap = part
    return Partition(tuple(parts))
