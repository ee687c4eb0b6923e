"""Vertex-disjoint path packing and minimum vertex cuts (Menger).

Unit vertex capacities are modelled by splitting every vertex ``v`` into
``v_in -> v_out``; augmenting paths are found by BFS over sorted adjacency,
so results are deterministic.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .graph import Graph, GraphError, Grid


class PathError(ValueError):
    """A path family violates the path or disjointness invariants."""


class InseparableError(ValueError):
    """Sources and sinks share a vertex, so no vertex cut can separate them."""


@dataclass(frozen=True)
class PathFamily:
    paths: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.paths)

    def vertices(self) -> frozenset[int]:
        return frozenset(v for p in self.paths for v in p)

    def validate(self, host: Graph) -> None:
        """Raise :class:`PathError` unless every sequence is a host path and
        the paths are pairwise vertex-disjoint.  On grid-tagged hosts the
        column-0 crossing fact is checked as well."""
        seen: set[int] = set()
        for i, p in enumerate(self.paths):
            if not p:
                raise PathError(f"path {i} is empty")
            for v in p:
                if not 0 <= v < host.n:
                    raise PathError(f"path {i} uses vertex {v} outside the host")
            if len(set(p)) != len(p):
                raise PathError(f"path {i} repeats a vertex")
            for a, b in zip(p, p[1:]):
                if not host.has_edge(a, b):
                    raise PathError(f"path {i}: {a}-{b} is not a host edge")
            if seen & set(p):
                raise PathError(f"path {i} shares vertex {min(seen & set(p))} with an earlier path")
            seen |= set(p)
        problems = crossing_violations(host, self)
        if problems:
            raise PathError("; ".join(problems))


@dataclass(frozen=True)
class CutSet:
    vertices: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)

    def separates(self, g: Graph, sources: Iterable[int], sinks: Iterable[int]) -> bool:
        sinks = set(sinks) - self.vertices
        start = [s for s in set(sources) if s not in self.vertices]
        seen = set(start)
        queue = deque(start)
        while queue:
            x = queue.popleft()
            if x in sinks:
                return False
            for y in g.adj[x]:
                if y not in seen and y not in self.vertices:
                    seen.add(y)
                    queue.append(y)
        return True


def _check_ends(g: Graph, sources: Iterable[int], sinks: Iterable[int]) -> tuple[set[int], set[int]]:
    s, t = set(sources), set(sinks)
    if not s or not t:
        raise ValueError("source and sink sets must be nonempty")
    for v in s | t:
        g.check(v)
    return s, t


class _Flow:
    """Max flow on the split graph; nodes are ``2v`` (in) and ``2v+1`` (out),
    plus a super source and a super sink."""

    def __init__(
        self,
        g: Graph,
        sources: set[int],
        sinks: set[int],
        blocked: set[int],
        weight: Optional[dict[int, int]] = None,
    ):
        self.g = g
        self.src = 2 * g.n
        self.dst = 2 * g.n + 1
        self.cap: dict[tuple[int, int], int] = {}
        self.out: list[list[int]] = [[] for _ in range(2 * g.n + 2)]
        # only in->out arcs have bounded capacity, so min cuts consist of vertices
        weight = weight or {}
        self.big = sum(weight.get(v, 1) for v in range(g.n)) + 1
        for v in range(g.n):
            if v in blocked:
                continue
            self._arc(2 * v, 2 * v + 1, weight.get(v, 1))
            for u in sorted(g.adj[v]):
                if u not in blocked:
                    self._arc(2 * v + 1, 2 * u, self.big)
        for s in sorted(sources - blocked):
            self._arc(self.src, 2 * s, self.big)
        for t in sorted(sinks - blocked):
            self._arc(2 * t + 1, self.dst, self.big)
        self.value = 0
        while self._augment():
            self.value += 1

    def _arc(self, a: int, b: int, cap: int) -> None:
        if (a, b) not in self.cap:
            self.out[a].append(b)
            self.out[b].append(a)
            self.cap.setdefault((b, a), 0)
        self.cap[(a, b)] = cap

    def _augment(self) -> bool:
        parent = {self.src: self.src}
        queue = deque([self.src])
        while queue:
            x = queue.popleft()
            for y in self.out[x]:
                if y not in parent and self.cap[(x, y)] > 0:
                    parent[y] = x
                    if y == self.dst:
                        while y != self.src:
                            x = parent[y]
                            self.cap[(x, y)] -= 1
                            self.cap[(y, x)] += 1
                            y = x
                        return True
                    queue.append(y)
        return False

    def reachable(self) -> set[int]:
        seen = {self.src}
        queue = deque([self.src])
        while queue:
            x = queue.popleft()
            for y in self.out[x]:
                if y not in seen and self.cap[(x, y)] > 0:
                    seen.add(y)
                    queue.append(y)
        return seen

    def used(self, a: int, b: int) -> bool:
        return (a, b) in self.cap and self.cap[(b, a)] > 0 and self.cap[(a, b)] < self.big

    def paths(self, sources: set[int], sinks: set[int]) -> list[tuple[int, ...]]:
        # follow flow-carrying arcs from each used source
        found = []
        for s in sorted(sources):
            if not self.used(self.src, 2 * s):
                continue
            path = [s]
            v = s
            while not (v in sinks and self.used(2 * v + 1, self.dst)):
                v = next(u for u in sorted(self.g.adj[v]) if self.used(2 * v + 1, 2 * u))
                path.append(v)
            found.append(_trim(path, sources, sinks))
        return found


def _trim(path: list[int], sources: set[int], sinks: set[int]) -> tuple[int, ...]:
    """Shortest stretch from a source to the first sink after it."""
    end = next(i for i, v in enumerate(path) if v in sinks)
    start = max(i for i in range(end + 1) if path[i] in sources)
    return tuple(path[start : end + 1])


def max_vertex_disjoint_paths(g: Graph, sources: Iterable[int], sinks: Iterable[int]) -> PathFamily:
    """A maximum family of pairwise vertex-disjoint source-to-sink paths.

    A vertex that is both a source and a sink is a trivial one-vertex path.
    """
    s, t = _check_ends(g, sources, sinks)
    shared = s & t
    flow = _Flow(g, s, t, blocked=shared)
    paths = [(v,) for v in sorted(shared)] + flow.paths(s - shared, t - shared)
    family = PathFamily(tuple(sorted(paths)))
    family.validate(g)
    return family


def min_vertex_cut(g: Graph, sources: Iterable[int], sinks: Iterable[int]) -> CutSet:
    """A minimum vertex set separating sources from sinks (it may contain
    sources or sinks).  Its size equals the maximum number of disjoint paths."""
    s, t = _check_ends(g, sources, sinks)
    if s & t:
        raise InseparableError(f"vertex {min(s & t)} is both a source and a sink")
    # weights k for inner vertices and k+1 for terminals: among minimum cuts
    # the one with the fewest terminals wins, as k exceeds any cut size
    k = g.n + 1
    weight = {v: k + 1 if v in s or v in t else k for v in range(g.n)}
    flow = _Flow(g, s, t, blocked=set(), weight=weight)
    seen = flow.reachable()
    cut = frozenset(v for v in range(g.n) if 2 * v in seen and 2 * v + 1 not in seen)
    assert len(cut) == flow.value // k
    return CutSet(cut)


def _lattice_host(g: Graph) -> bool:
    """Grid-tagged vertices joined only by lattice edges, and no bypass
    through untagged-grid vertices (each non-grid component touches at most
    one grid vertex).  The crossing fact holds on such hosts."""
    if g.tags is None or not any(isinstance(t, Grid) for t in g.tags):
        return False
    tags = g.tags
    grid = {v for v, t in enumerate(tags) if isinstance(t, Grid)}
    for u, v in g.edges():
        if u in grid and v in grid:
            a, b = tags[u], tags[v]
            if abs(a.col - b.col) + abs(a.row - b.row) != 1:
                return False
    rest = set(range(g.n)) - grid
    seen: set[int] = set()
    for root in sorted(rest):
        if root in seen:
            continue
        part = {root}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in g.adj[x]:
                if y in rest and y not in part:
                    part.add(y)
                    queue.append(y)
        seen |= part
        if len({y for x in part for y in g.adj[x] if y in grid}) > 1:
            return False
    return True


def crossing_violations(host: Graph, family: PathFamily) -> list[str]:
    """Checks the column-0 crossing fact on grid-tagged hosts.

    Every path joining a grid vertex left of column 0 to a grid vertex at
    column >= 0 must contain a column-0 grid vertex, so a disjoint family has
    at most (rows) such paths.  Hosts where the fact need not hold (no grid
    tags, or a non-lattice grid part) pass trivially.
    """
    if not _lattice_host(host):
        return []
    assert host.tags is not None
    rows = {t.row for t in host.tags if isinstance(t, Grid)}
    problems = []
    crossing = 0
    for i, p in enumerate(family.paths):
        a, b = host.tags[p[0]], host.tags[p[-1]]
        if not (isinstance(a, Grid) and isinstance(b, Grid)):
            continue
        if (a.col < 0) == (b.col < 0):
            continue
        crossing += 1
        if not any(isinstance(host.tags[v], Grid) and host.tags[v].col == 0 for v in p):
            problems.append(f"crossing path {i} avoids column 0")
    if crossing > len(rows):
        problems.append(f"{crossing} disjoint crossing paths but only {len(rows)} rows")
    return problems


_PREDICATE = re.compile(r"^\s*(col|row)\s*(<=|>=|==|<|>)\s*(-?\d+)\s*$")
_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
}


def select_vertices(g: Graph, spec: str) -> list[int]:
    """Vertices picked by ``spec``: an id list such as ``"0,4,7"`` or grid
    predicates joined by ``&``, e.g. ``"row==0&col<0"``."""
    spec = spec.strip()
    if re.fullmatch(r"\d+(\s*,\s*\d+)*", spec):
        ids = sorted({int(x) for x in spec.split(",")})
        for v in ids:
            g.check(v)
        return ids
    tests = []
    for part in spec.split("&"):
        m = _PREDICATE.match(part)
        if m is None:
            raise ValueError(f"cannot parse vertex selector {part.strip()!r}")
        tests.append((m.group(1), _OPS[m.group(2)], int(m.group(3))))
    if g.tags is None:
        raise GraphError("tag predicates need a tagged host")
    out = []
    for v, t in enumerate(g.tags):
        if isinstance(t, Grid) and all(op(getattr(t, field), k) for field, op, k in tests):
            out.append(v)
    return out


def paths_to_json(family: PathFamily) -> list[list[int]]:
    return [list(p) for p in family.paths]


def is_path_family(host: Graph, paths: Sequence[Sequence[int]]) -> bool:
    try:
        PathFamily(tuple(tuple(p) for p in paths)).validate(host)
    except PathError:
        return False
    return True
