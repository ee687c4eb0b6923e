"""Reference minor test by exhaustive edge contraction, for tiny hosts.

``pattern`` is a minor of ``host`` iff some sequence of edge contractions
turns ``host`` into a graph containing ``pattern`` as a subgraph (contract a
spanning tree of every branch set, then delete what is left over).  So the
recursion only contracts; deletions are covered by the subgraph test at each
node.  Contracted graphs are memoized on their edge sets.
"""

from __future__ import annotations

from .graph import Graph

DEFAULT_ORACLE_LIMIT = 10

_Edges = frozenset[tuple[int, int]]


class OracleLimitError(ValueError):
    """Host too large for the exhaustive oracle."""


def has_minor_oracle(pattern: Graph, host: Graph, limit: int = DEFAULT_ORACLE_LIMIT) -> bool:
    if host.n > limit:
        raise OracleLimitError(f"host has {host.n} vertices, oracle limit is {limit}")
    if pattern.n == 0:
        return True
    p_adj = [set(pattern.adj[v]) for v in range(pattern.n)]
    p_order = _match_order(p_adj)
    p_edges = pattern.edge_count
    memo: dict[tuple[int, _Edges], bool] = {}

    def search(n: int, edges: _Edges) -> bool:
        key = (n, edges)
        hit = memo.get(key)
        if hit is not None:
            return hit
        result = False
        if n >= pattern.n and len(edges) >= p_edges:
            adj: list[set[int]] = [set() for _ in range(n)]
            for u, v in edges:
                adj[u].add(v)
                adj[v].add(u)
            result = _has_subgraph(p_adj, p_order, adj)
            if not result and n > pattern.n:
                result = any(search(n - 1, _contract(edges, u, v)) for u, v in sorted(edges))
        memo[key] = result
        return result

    return search(host.n, frozenset(host.edges()))


def _contract(edges: _Edges, keep: int, gone: int) -> _Edges:
    """Merge ``gone`` into ``keep`` and close the id gap above ``gone``."""

    def rename(x: int) -> int:
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    out = set()
    for u, v in edges:
        a, b = rename(u), rename(v)
        if a != b:
            out.add((min(a, b), max(a, b)))
    return frozenset(out)


def _match_order(p_adj: list[set[int]]) -> list[int]:
    # high degree first, then vertices adjacent to already placed ones
    order: list[int] = []
    remaining = set(range(len(p_adj)))
    while remaining:
        v = max(remaining, key=lambda x: (sum(1 for u in p_adj[x] if u in order), len(p_adj[x]), -x))
        order.append(v)
        remaining.discard(v)
    return order


def _has_subgraph(p_adj: list[set[int]], order: list[int], h_adj: list[set[int]]) -> bool:
    """Injective map of pattern vertices to host vertices preserving edges."""
    image: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        p = order[i]
        placed = [image[q] for q in p_adj[p] if q in image]
        for x in range(len(h_adj)):
            if x in used or len(h_adj[x]) < len(p_adj[p]):
                continue
            if all(y in h_adj[x] for y in placed):
                image[p] = x
                used.add(x)
                if extend(i + 1):
                    return True
                used.discard(x)
                del image[p]
        return False

    return extend(0)
