"""Generators for the half-grid truncation, its K5/K3,3 attachments, and the
pattern graphs built from K5 and K3,3.

Half-grid ids are row-major: vertex ``(col, row)`` has id
``row * (2m + 1) + (col + m)``.  Attachments append their private vertices
after the grid, K5 anchors first (left to right), then K3,3 anchors.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import (
    Graph,
    GraphError,
    Grid,
    K5Private,
    K33Private,
    Plain,
    build_graph,
    complete_bipartite,
    complete_graph,
    disjoint_union,
    one_sum,
    path_graph,
)

K5 = complete_graph(5)
K33 = complete_bipartite(3, 3)


@dataclass(frozen=True)
class TruncationParams:
    """Columns ``-m..m`` and rows ``0..h`` of the half-grid."""

    m: int
    h: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.h < 0:
            raise ValueError(f"need m >= 1 and h >= 0, got m={self.m}, h={self.h}")

    @property
    def width(self) -> int:
        return 2 * self.m + 1

    def grid_id(self, col: int, row: int) -> int:
        if not (-self.m <= col <= self.m and 0 <= row <= self.h):
            raise GraphError(f"({col},{row}) lies outside the truncation")
        return row * self.width + col + self.m


def half_grid(p: TruncationParams) -> Graph:
    cells = [(c, r) for r in range(p.h + 1) for c in range(-p.m, p.m + 1)]
    edges = []
    for c, r in cells:
        if c < p.m:
            edges.append((p.grid_id(c, r), p.grid_id(c + 1, r)))
        if r < p.h:
            edges.append((p.grid_id(c, r), p.grid_id(c, r + 1)))
    return build_graph(len(cells), edges, [Grid(c, r) for c, r in cells])


def _private_tags(g: Graph, v: int, cls, count: int):
    if g.tags is None:
        return None
    anchor = g.tags[v]
    if isinstance(anchor, Grid):
        return g.tags + tuple(cls(anchor.col, i) for i in range(1, count + 1))
    return g.tags + (Plain(),) * count


def attach_k5(g: Graph, v: int) -> Graph:
    """Add four new vertices forming a K5 with ``v``."""
    g.check(v)
    block = [v] + list(range(g.n, g.n + 4))
    edges = g.edges() + [(a, b) for i, a in enumerate(block) for b in block[i + 1 :]]
    return build_graph(g.n + 4, edges, _private_tags(g, v, K5Private, 4))


def attach_k33(g: Graph, v: int) -> Graph:
    """Add five new vertices forming a K3,3 with ``v``.

    ``v`` and privates 1, 2 form the first side; privates 3, 4, 5 the second.
    """
    g.check(v)
    side_a = [v, g.n, g.n + 1]
    side_b = [g.n + 2, g.n + 3, g.n + 4]
    edges = g.edges() + [(a, b) for a in side_a for b in side_b]
    return build_graph(g.n + 5, edges, _private_tags(g, v, K33Private, 5))


def build_G(p: TruncationParams) -> Graph:
    g = half_grid(p)
    for a in range(-p.m, 0):
        g = attach_k5(g, p.grid_id(a, 0))
    for b in range(0, p.m + 1):
        g = attach_k33(g, p.grid_id(b, 0))
    return g


# Pattern vertex roles in build_I(): 0 is the identified vertex, 1..4 the rest
# of the K5, 5 and 6 share the K3,3 side of vertex 0, 7..9 form the other side.
I_CUT = 0
I_K5_PART = (1, 2, 3, 4)
I_K33_PART = (5, 6, 7, 8, 9)


def build_I() -> Graph:
    return one_sum(K5, 0, K33, 0)


def build_H(L: int) -> Graph:
    """``build_I()`` plus a disjoint path with ``L`` edges (ids 10..10+L)."""
    if L < 1:
        raise ValueError("the ray surrogate needs at least one edge")
    return disjoint_union(build_I(), path_graph(L + 1))


def check_tag_discipline(g: Graph) -> list[str]:
    """Violations of the attachment rule: K5 only left of column 0, K3,3 from
    column 0 on, every vertex tagged.  Empty list means the graph complies."""
    if g.tags is None:
        return ["graph is untagged"]
    problems = []
    for v, t in enumerate(g.tags):
        if isinstance(t, K5Private) and t.anchor_col >= 0:
            problems.append(f"vertex {v}: K5 attached at column {t.anchor_col}")
        elif isinstance(t, K33Private) and t.anchor_col < 0:
            problems.append(f"vertex {v}: K3,3 attached at column {t.anchor_col}")
        elif isinstance(t, Plain):
            problems.append(f"vertex {v}: untagged (Plain)")
    return problems


def named_graph(name: str) -> Graph:
    """Built-in graphs: ``K5``, ``K33``, ``I``, ``H:L``, ``PATH:L``
    (a path with L edges) and ``G:m,h``."""
    key, _, arg = name.partition(":")
    if key == "K5" and not arg:
        return K5
    if key == "K33" and not arg:
        return K33
    if key == "I" and not arg:
        return build_I()
    try:
        if key == "H":
            return build_H(int(arg))
        if key == "PATH":
            return path_graph(int(arg) + 1)
        if key == "G":
            m, h = (int(x) for x in arg.split(","))
            return build_G(TruncationParams(m, h))
        if key == "HALFGRID":
            m, h = (int(x) for x in arg.split(","))
            return half_grid(TruncationParams(m, h))
    except ValueError as exc:
        raise ValueError(f"bad argument in graph name {name!r}: {exc}") from None
    raise ValueError(f"unknown graph name {name!r}")


def attach_pattern(g: Graph, v: int, pattern: str) -> Graph:
    if pattern == "K5":
        return attach_k5(g, v)
    if pattern == "K33":
        return attach_k33(g, v)
    raise ValueError(f"unknown attachment pattern {pattern!r}")


__all__ = [
    "K5",
    "K33",
    "TruncationParams",
    "half_grid",
    "attach_k5",
    "attach_k33",
    "attach_pattern",
    "build_G",
    "build_I",
    "build_H",
    "check_tag_discipline",
    "named_graph",
    "complete_graph",
]
