"""The relation R_B on basis vectors and its longest-path row table.

``v' R_B v`` holds when the generic nilpotent commuting matrix has a
nonzero entry in row v and column v'.  Writing ``v = (i, j, l)`` and
``v' = (i', j', l')`` this happens exactly when one of

* ``i < i'`` and ``mu_i - l <= mu_{i'} - l'``
* ``i = i'``, ``j >= j'`` and ``l > l'``
* ``i = i'``, ``j < j'`` and ``l >= l'``
* ``i > i'`` and ``l >= l'``

holds.  The relation is acyclic; the row of a vertex is the length of the
longest chain ending at it, and the number of rows equals omega1.
"""

from __future__ import annotations

from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter

from .centralizer import BasisVector, delta_basis
from .oblak import OblakStep, select_step
from .partitions import as_partition, runs


def related(w: BasisVector, v: BasisVector) -> bool:
    """True iff ``w R_B v`` (column w feeds row v)."""
    i, j, l, mu = v.i, v.j, v.l, v.mu
    i2, j2, l2, mu2 = w.i, w.j, w.l, w.mu
    if i < i2:
        return mu - l <= mu2 - l2
    if i > i2:
        return l >= l2
    if j >= j2:
        return l > l2
    return l >= l2


@dataclass(frozen=True)
class RbGraph:
    partition: tuple[int, ...]
    vertices: tuple[BasisVector, ...]
    edges: frozenset[tuple[BasisVector, BasisVector]]

    def predecessors(self) -> dict[BasisVector, set[BasisVector]]:
        preds: dict[BasisVector, set[BasisVector]] = {v: set() for v in self.vertices}
        for a, b in self.edges:
            preds[b].add(a)
        return preds


@dataclass(frozen=True)
class RowTable:
    row: dict
    max_row: int


def build_graph(B) -> RbGraph:
    B = as_partition(B)
    verts = tuple(delta_basis(B))
    edges = frozenset((w, v) for v in verts for w in verts if v != w and related(w, v))
    return RbGraph(B.parts, verts, edges)


def assign_rows(G: RbGraph) -> RowTable:
    preds = G.predecessors()
    try:
        order = list(TopologicalSorter(preds).static_order())
    except CycleError as exc:
        raise ValueError("relation has a cycle") from exc
    row: dict[BasisVector, int] = {}
    for v in order:
        row[v] = max((row[w] + 1 for w in preds[v]), default=0)
    return RowTable(row, max(row.values(), default=-1))


def delta_circle(B, step: OblakStep | None = None) -> set[BasisVector]:
    """Basis vectors along a longest generic Jordan string.

    For runs before ``i_tilde`` this takes the bottom and top vector of every
    block; runs ``i_tilde`` and ``i_tilde + eps_tilde`` contribute everything.
    """
    B = as_partition(B)
    step = step or select_step(B)
    last = step.i_tilde + step.eps_tilde
    out = set()
    for v in delta_basis(B):
        if v.i in (step.i_tilde, last):
            out.add(v)
        elif v.i < step.i_tilde and v.l in (1, v.mu):
            out.add(v)
    return out


def render_table(B, table: RowTable | None = None, circle: set | None = None) -> str:
    """Monospace grid with one column per distinct part value, ascending."""
    B = as_partition(B)
    table = table or assign_rows(build_graph(B))
    circle = delta_circle(B) if circle is None else circle
    values = sorted(set(B.parts))
    cells: dict[tuple[int, int], list[str]] = {}
    for v, r in table.row.items():
        mark = "∘" if v in circle else ""
        cells.setdefault((r, v.mu), []).append((v.j, v.l, f"{mark}v{v.mu}{v.j}^{v.l}"))
    grid = [["row"] + [str(x) for x in values]]
    for r in range(table.max_row + 1):
        line = [str(r)]
        for x in values:
            items = sorted(cells.get((r, x), []))
            line.append(" ".join(s for _, _, s in items))
        grid.append(line)
    widths = [max(len(row[c]) for row in grid) for c in range(len(grid[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in grid
    )


def to_dot(G: RbGraph, table: RowTable | None = None) -> str:
    table = table or assign_rows(G)

    def name(v: BasisVector) -> str:
        return f"n{v.i}_{v.j}_{v.l}"

    lines = ["digraph RB {", "  rankdir=TB;"]
    for v in G.vertices:
        lines.append(f'  {name(v)} [label="{v.label()}" row={table.row[v]}];')
    for a, b in sorted(G.edges, key=lambda e: (e[0].i, -e[0].j, e[0].l, e[1].i, -e[1].j, e[1].l)):
        lines.append(f"  {name(a)} -> {name(b)};")
    lines.append("}")
    return "\n".join(lines)


def row_labels(B) -> dict[tuple[int, int, int], int]:
    """Rows keyed by ``(mu, j, l)``, matching labels ``v_{mu,j}^l``."""
    table = assign_rows(build_graph(B))
    return {(v.mu, v.j, v.l): r for v, r in table.row.items()}


def first_last_in_run(B, i: int) -> tuple[BasisVector, BasisVector]:
    """The run's lowest vector of its last block and top vector of block 1."""
    enc = runs(B)
    mu = enc.value(i)
    return BasisVector(i, enc.multiplicity(i), 1, mu), BasisVector(i, 1, mu, mu)
