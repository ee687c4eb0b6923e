"""Immutable simple undirected graphs and the elementary operations on them.

Vertices are the dense integers ``0..n-1``.  Every operation returns a new
:class:`Graph`; operations that drop or merge vertices also return the
``old id -> new id`` map so tags and minor models can be carried across.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, Union


@dataclass(frozen=True, order=True)
class Grid:
    col: int
    row: int

    def __post_init__(self) -> None:
        if self.row < 0:
            raise ValueError(f"grid rows are non-negative, got {self.row}")


@dataclass(frozen=True, order=True)
class K5Private:
    anchor_col: int
    index: int

    def __post_init__(self) -> None:
        if not 1 <= self.index <= 4:
            raise ValueError(f"K5 private index must be in 1..4, got {self.index}")


@dataclass(frozen=True, order=True)
class K33Private:
    anchor_col: int
    index: int

    def __post_init__(self) -> None:
        if not 1 <= self.index <= 5:
            raise ValueError(f"K3,3 private index must be in 1..5, got {self.index}")


@dataclass(frozen=True, order=True)
class Plain:
    pass


VertexTag = Union[Grid, K5Private, K33Private, Plain]
Edge = tuple[int, int]
IdMap = dict[int, int]


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex ids."""


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph with optional per-vertex tags.

    Construct through :func:`build_graph`, which validates and deduplicates;
    the constructor itself only checks the invariants.
    """

    n: int
    adj: tuple[frozenset[int], ...]
    tags: Optional[tuple[VertexTag, ...]] = None

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError("adjacency length does not match vertex count")
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise GraphError(f"self-loop at {v}")
            for u in nbrs:
                if not 0 <= u < self.n or v not in self.adj[u]:
                    raise GraphError(f"asymmetric or out-of-range edge {v}-{u}")
        if self.tags is not None and len(self.tags) != self.n:
            raise GraphError("tags must cover every vertex")

    @property
    def vertex_count(self) -> int:
        return self.n

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> list[Edge]:
        """Edges as ``(u, v)`` with ``u < v``, sorted."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> frozenset[int]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adj[u]

    def tag(self, v: int) -> Optional[VertexTag]:
        return None if self.tags is None else self.tags[v]

    def find_tag(self, tag: VertexTag) -> int:
        """Id of the unique vertex carrying ``tag``."""
        if self.tags is None:
            raise GraphError("graph carries no tags")
        try:
            return self.tags.index(tag)
        except ValueError:
            raise GraphError(f"no vertex tagged {tag!r}") from None

    def untagged(self) -> "Graph":
        return Graph(self.n, self.adj, None)

    def check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex id {v} out of range 0..{self.n - 1}")


def build_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    tags: Optional[Union[Sequence[VertexTag], Mapping[int, VertexTag]]] = None,
) -> Graph:
    if n < 0:
        raise GraphError("vertex count must be non-negative")
    adj: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        adj[u].add(v)
        adj[v].add(u)
    tag_tuple: Optional[tuple[VertexTag, ...]] = None
    if tags is not None:
        if isinstance(tags, Mapping):
            if set(tags) != set(range(n)):
                raise GraphError("tags must cover every vertex")
            tag_tuple = tuple(tags[v] for v in range(n))
        else:
            tag_tuple = tuple(tags)
    return Graph(n, tuple(frozenset(a) for a in adj), tag_tuple)


def empty_graph(n: int = 0) -> Graph:
    return build_graph(n, [])


def _merged_tags(g1: Graph, g2: Graph, skip: Optional[int] = None):
    if g1.tags is None and g2.tags is None:
        return None
    t1 = g1.tags if g1.tags is not None else (Plain(),) * g1.n
    t2 = g2.tags if g2.tags is not None else (Plain(),) * g2.n
    return t1 + tuple(t for i, t in enumerate(t2) if i != skip)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """``g1`` followed by ``g2`` with ``g2``'s ids shifted by ``g1.n``.

    If only one side carries tags the other side is tagged :class:`Plain`.
    """
    edges = g1.edges() + [(u + g1.n, v + g1.n) for u, v in g2.edges()]
    return build_graph(g1.n + g2.n, edges, _merged_tags(g1, g2))


def one_sum(g1: Graph, v1: int, g2: Graph, v2: int) -> Graph:
    """Identify ``v1`` of ``g1`` with ``v2`` of ``g2``.

    ``g1`` keeps its ids (the merged vertex is ``v1``); the remaining vertices
    of ``g2`` follow in their original order.
    """
    g1.check(v1)
    g2.check(v2)

    def relabel(x: int) -> int:
        if x == v2:
            return v1
        return g1.n + (x if x < v2 else x - 1)

    edges = g1.edges() + [(relabel(u), relabel(v)) for u, v in g2.edges()]
    return build_graph(g1.n + g2.n - 1, edges, _merged_tags(g1, g2, skip=v2))


def induced_subgraph(g: Graph, s: Iterable[int]) -> tuple[Graph, IdMap]:
    """Subgraph induced on ``s``; new ids follow ascending old ids."""
    keep = sorted(set(s))
    for v in keep:
        g.check(v)
    idmap = {old: new for new, old in enumerate(keep)}
    edges = [(idmap[u], idmap[v]) for u, v in g.edges() if u in idmap and v in idmap]
    tags = None if g.tags is None else [g.tags[v] for v in keep]
    return build_graph(len(keep), edges, tags), idmap


def delete_vertices(g: Graph, s: Iterable[int]) -> tuple[Graph, IdMap]:
    drop = set(s)
    for v in drop:
        g.check(v)
    return induced_subgraph(g, (v for v in range(g.n) if v not in drop))


def contract_edge(g: Graph, e: Sequence[int]) -> tuple[Graph, IdMap]:
    """Merge the endpoints of ``e`` into the smaller id, collapsing parallels.

    The map sends both endpoints to the merged vertex.  Its tag is the tag of
    the smaller endpoint.
    """
    u, v = sorted(e)
    if not g.has_edge(u, v):
        raise GraphError(f"({u}, {v}) is not an edge")
    idmap = {x: (x if x < v else x - 1) for x in range(g.n) if x != v}
    idmap[v] = idmap[u]
    edges = {
        tuple(sorted((idmap[a], idmap[b])))
        for a, b in g.edges()
        if idmap[a] != idmap[b]
    }
    tags = None if g.tags is None else [t for x, t in enumerate(g.tags) if x != v]
    return build_graph(g.n - 1, sorted(edges), tags), idmap


def connected_components(g: Graph, within: Optional[Iterable[int]] = None) -> list[set[int]]:
    """Components ordered by their smallest vertex.

    With ``within`` the search is restricted to the subgraph induced on it.
    """
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    parts = []
    for root in sorted(allowed):
        if root in seen:
            continue
        part = {root}
        seen.add(root)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in allowed and y not in seen:
                    seen.add(y)
                    part.add(y)
                    queue.append(y)
        parts.append(part)
    return parts


def is_connected_set(g: Graph, s: Iterable[int]) -> bool:
    s = set(s)
    return len(s) > 0 and len(connected_components(g, s)) == 1


def validate(g: Graph) -> None:
    """Re-check the structural invariants; raises :class:`GraphError`."""
    Graph(g.n, g.adj, g.tags)


# named small graphs


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    return build_graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return build_graph(10, outer + spokes + inner)
