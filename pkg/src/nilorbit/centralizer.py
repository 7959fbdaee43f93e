"""The labelled basis of a Jordan type and symbolic centralizer patterns.

Basis vectors ``v_{mu,j}^l`` are indexed by triples ``(i, j, l)``: run ``i``,
block ``j`` inside the run (numbered ``q_i - q_{i-1}, ..., 1``) and height
``l`` in ``1..mu``.  The Jordan operator raises the height,
``J v^l = v^{l+1}``, and kills ``v^mu``.

A matrix X commutes with J exactly when each block ``X_{h,k}`` (rows from
part h, columns from part k) is an upper triangular Toeplitz matrix, aligned
to the bottom-left corner.  :func:`centralizer_pattern` encodes this with one
symbolic coordinate per Toeplitz diagonal.  The nilpotent subalgebra used for
sampling forces the leading coefficient matrix of every run to be strictly
lower triangular; under the reordering :func:`prec_ordering` its generic
element is strictly upper triangular.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .gfp import FieldMatrix, as_modulus
from .partitions import Partition, as_partition, runs

DELTA = "delta"
PREC = "prec"


@dataclass(frozen=True, order=True)
class BasisVector:
    i: int
    j: int
    l: int
    mu: int = field(compare=False)

    def label(self) -> str:
        return f"v_{{{self.mu},{self.j}}}^{self.l}"

    def part_index(self, B) -> int:
        """1-based index h of the part carrying this vector."""
        return runs(B).q(self.i) - self.j + 1


def delta_basis(B) -> list[BasisVector]:
    """All basis vectors in the order (i asc, j desc, l desc)."""
    B = as_partition(B)
    enc = runs(B)
    out = []
    for i in range(1, enc.u + 1):
        mu = enc.value(i)
        for j in range(enc.multiplicity(i), 0, -1):
            for l in range(mu, 0, -1):
                out.append(BasisVector(i, j, l, mu))
    return out


@dataclass(frozen=True)
class BasisOrdering:
    kind: str
    vectors: tuple[BasisVector, ...]
    index: dict = field(compare=False, repr=False, hash=False)

    @classmethod
    def from_vectors(cls, kind: str, vectors: Iterable[BasisVector]) -> "BasisOrdering":
        vectors = tuple(vectors)
        return cls(kind, vectors, {(v.i, v.j, v.l): k for k, v in enumerate(vectors)})

    def __len__(self) -> int:
        return len(self.vectors)

    def position(self, v: BasisVector | tuple[int, int, int]) -> int:
        key = (v.i, v.j, v.l) if isinstance(v, BasisVector) else tuple(v)
        return self.index[key]


def delta_ordering(B) -> BasisOrdering:
    return BasisOrdering.from_vectors(DELTA, delta_basis(B))


def prec_ordering(B) -> BasisOrdering:
    """Sort by ``mu - l``, then run index, then block index, all ascending."""
    vecs = sorted(delta_basis(B), key=lambda v: (v.mu - v.l, v.i, v.j))
    return BasisOrdering.from_vectors(PREC, vecs)


def ordering_for(B, kind: str) -> BasisOrdering:
    if kind == DELTA:
        return delta_ordering(B)
    if kind == PREC:
        return prec_ordering(B)
    raise ValueError(f"unknown ordering {kind!r}")


def group_sizes(B) -> tuple[int, ...]:
    """``t_h``, the number of parts exceeding h, for h = 0 .. mu_1 - 1."""
    B = as_partition(B)
    if not B:
        return ()
    return tuple(sum(1 for m in B if m > h) for h in range(B[0]))


def jordan_operator(B, ordering: BasisOrdering | None = None, p=65521) -> FieldMatrix:
    B = as_partition(B)
    ordering = ordering or delta_ordering(B)
    n = len(ordering)
    a = np.zeros((n, n), dtype=np.int64)
    for col, v in enumerate(ordering.vectors):
        if v.l < v.mu:
            a[ordering.position((v.i, v.j, v.l + 1)), col] = 1
    return FieldMatrix(a, p)


@dataclass(frozen=True)
class PatternMatrix:
    """Grid of symbolic entries: ``coords[r, c] = -1`` for Zero, else an id.

    Ids are dense ``0..d-1`` and numbered by first occurrence in row-major
    order.  Positions sharing an id are tied to the same value.
    """

    coords: np.ndarray
    ordering_kind: str
    basis: BasisOrdering | None = None
    kind: str = "custom"

    def __post_init__(self) -> None:
        c = np.array(self.coords, dtype=np.int64)
        if c.ndim != 2 or c.shape[0] != c.shape[1]:
            raise ValueError("pattern must be square")
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def n(self) -> int:
        return self.coords.shape[0]

    @property
    def coordinate_count(self) -> int:
        return int(self.coords.max()) + 1 if self.coords.size and self.coords.max() >= 0 else 0

    def nonzero_mask(self) -> np.ndarray:
        return self.coords >= 0

    def is_strictly_upper(self) -> bool:
        return not np.tril(self.nonzero_mask()).any()

    def to_json(self) -> dict:
        rows, cols = np.nonzero(self.coords >= 0)
        return {
            "n": self.n,
            "ordering": self.ordering_kind,
            "entries": [
                {"row": int(r), "col": int(c), "coord": int(self.coords[r, c])}
                for r, c in zip(rows, cols)
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PatternMatrix":
        n = int(obj["n"])
        coords = np.full((n, n), -1, dtype=np.int64)
        for e in obj["entries"]:
            r, c, k = int(e["row"]), int(e["col"]), int(e["coord"])
            if not (0 <= r < n and 0 <= c < n) or k < 0:
                raise ValueError(f"bad pattern entry {e}")
            coords[r, c] = k
        return cls(canonical_ids(coords), obj.get("ordering", PREC))


def canonical_ids(coords: np.ndarray) -> np.ndarray:
    """Renumber ids densely by first occurrence in row-major order."""
    coords = np.asarray(coords, dtype=np.int64)
    out = np.full(coords.shape, -1, dtype=np.int64)
    seen: dict[int, int] = {}
    for r, c in zip(*np.nonzero(coords >= 0)):
        out[r, c] = seen.setdefault(int(coords[r, c]), len(seen))
    return out


def dump_pattern(P: PatternMatrix, path) -> None:
    with open(path, "w") as fh:
        json.dump(P.to_json(), fh, indent=1)


def load_pattern(path) -> PatternMatrix:
    with open(path) as fh:
        return PatternMatrix.from_json(json.load(fh))


def _toeplitz_key(B: Partition, row: BasisVector, col: BasisVector):
    """Key ``(h, k, d)`` of the Toeplitz diagonal, or None for a forced zero."""
    enc = runs(B)
    h = enc.q(row.i) - row.j + 1
    k = enc.q(col.i) - col.j + 1
    mu_h, mu_k = row.mu, col.mu
    r = mu_h - row.l + 1
    c = mu_k - col.l + 1
    d = c - r - max(0, mu_k - mu_h)
    if d < 0:
        return None
    return (h, k, d)


def _pattern(B, ordering: BasisOrdering, keyfun, kind: str) -> PatternMatrix:
    vecs = ordering.vectors
    n = len(vecs)
    raw = np.empty((n, n), dtype=object)
    for r, v in enumerate(vecs):
        for c, w in enumerate(vecs):
            raw[r, c] = keyfun(v, w, r, c)
    ids = np.full((n, n), -1, dtype=np.int64)
    seen: dict = {}
    for r in range(n):
        for c in range(n):
            key = raw[r, c]
            if key is not None:
                ids[r, c] = seen.setdefault(key, len(seen))
    return PatternMatrix(ids, ordering.kind, ordering, kind)


def centralizer_pattern(B, ordering: str = DELTA) -> PatternMatrix:
    """Generic element of the centralizer of J_B."""
    B = as_partition(B)
    return _pattern(B, ordering_for(B, ordering), lambda v, w, r, c: _toeplitz_key(B, v, w), "centralizer")


def _sn_key(B: Partition, v: BasisVector, w: BasisVector):
    key = _toeplitz_key(B, v, w)
    if key is None:
        return None
    h, k, d = key
    if d == 0 and v.i == w.i and h <= k:
        return None
    return key


def sn_pattern(B, ordering: str = PREC) -> PatternMatrix:
    """Generic element of the nilpotent subalgebra with Toeplitz ties kept."""
    B = as_partition(B)
    return _pattern(B, ordering_for(B, ordering), lambda v, w, r, c: _sn_key(B, v, w), "sn")


def se_pattern(B, ordering: str = PREC) -> PatternMatrix:
    """Same zero set as :func:`sn_pattern`, every position independent."""
    B = as_partition(B)

    def key(v, w, r, c):
        return None if _sn_key(B, v, w) is None else (r, c)

    return _pattern(B, ordering_for(B, ordering), key, "se")


def _seed_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def pattern_values(P: PatternMatrix, values) -> np.ndarray:
    """Substitute ``values[id]`` into the pattern as an integer array."""
    values = np.asarray(values, dtype=np.int64)
    out = np.zeros(P.coords.shape, dtype=np.int64)
    mask = P.coords >= 0
    out[mask] = values[P.coords[mask]]
    return out


def pattern_instantiate(P: PatternMatrix, p, seed=None) -> FieldMatrix:
    """Draw each coordinate uniformly from ``[0, p)`` and fill the grid."""
    mod = as_modulus(p)
    rng = _seed_rng(seed)
    vals = rng.integers(0, mod.p, size=P.coordinate_count, dtype=np.int64)
    return FieldMatrix(pattern_values(P, vals), mod)


def tie_classes(P: PatternMatrix) -> dict[int, list[tuple[int, int]]]:
    """Positions grouped by coordinate id, each class in row-major order."""
    classes: dict[int, list[tuple[int, int]]] = {}
    rows, cols = np.nonzero(P.coords >= 0)
    for r, c in zip(rows, cols):
        classes.setdefault(int(P.coords[r, c]), []).append((int(r), int(c)))
    return classes


def group_bounds(B) -> list[int]:
    """Start offsets of the ``mu - l`` groups in the prec ordering, plus n."""
    t = group_sizes(B)
    bounds = [0]
    for size in t:
        bounds.append(bounds[-1] + size)
    return bounds


def block(P: PatternMatrix, B, h: int, k: int) -> np.ndarray:
    """Sub-grid ``A_{h,k}``: rows of group h, columns of group k (prec ordering)."""
    b = group_bounds(B)
    return P.coords[b[h] : b[h + 1], b[k] : b[k + 1]]


def same_shape(P: np.ndarray, Q: np.ndarray) -> bool:
    """True when two id grids agree up to a renaming of ids."""
    return P.shape == Q.shape and np.array_equal(canonical_ids(P), canonical_ids(Q))
