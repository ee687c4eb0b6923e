"""Blocks (maximal 2-connected subgraphs and bridges), cut vertices and the
block-cut tree."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    tree_edges: tuple[tuple[int, int], ...]  # (block index, cut vertex)

    def blocks_of(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]

    def block_edges(self, g: Graph, i: int) -> list[tuple[int, int]]:
        b = self.blocks[i]
        return [(u, v) for u, v in g.edges() if u in b and v in b]


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Hopcroft-Tarjan with an explicit stack.

    Isolated vertices belong to no block.  Blocks are ordered by their sorted
    vertex lists, so the smallest contained vertex decides first.
    """
    disc = [-1] * g.n
    low = [0] * g.n
    found: list[frozenset[int]] = []
    clock = 0
    for root in range(g.n):
        if disc[root] != -1 or not g.adj[root]:
            continue
        disc[root] = low[root] = clock
        clock += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(sorted(g.adj[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(sorted(g.adj[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                block: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    block.update((a, b))
                    if (a, b) == (parent, v):
                        break
                found.append(frozenset(block))
    blocks = tuple(sorted(found, key=sorted))
    count: dict[int, int] = {}
    for b in blocks:
        for v in b:
            count[v] = count.get(v, 0) + 1
    cuts = frozenset(v for v, c in count.items() if c >= 2)
    tree = tuple((i, v) for i, b in enumerate(blocks) for v in sorted(b & cuts))
    return BlockDecomposition(blocks, cuts, tree)


def is_biconnected(g: Graph) -> bool:
    """Connected, no cut vertex, and either a single edge or >= 3 vertices."""
    if g.n < 2:
        return False
    bd = block_decomposition(g)
    return len(bd.blocks) == 1 and len(bd.blocks[0]) == g.n


def check_decomposition(g: Graph, bd: BlockDecomposition) -> list[str]:
    """Violations of the block axioms; empty when all hold."""
    problems = []
    owners: dict[tuple[int, int], int] = {}
    for i, b in enumerate(bd.blocks):
        for e in bd.block_edges(g, i):
            if e in owners:
                problems.append(f"edge {e} lies in blocks {owners[e]} and {i}")
            owners[e] = i
    for e in g.edges():
        if e not in owners:
            problems.append(f"edge {e} lies in no block")
    for i, a in enumerate(bd.blocks):
        for j in range(i + 1, len(bd.blocks)):
            common = a & bd.blocks[j]
            if len(common) > 1:
                problems.append(f"blocks {i} and {j} share {sorted(common)}")
            elif common and not common <= bd.cut_vertices:
                problems.append(f"blocks {i} and {j} share non-cut vertex {min(common)}")
    # block-cut graph: nodes ("b", i) and ("c", v); a forest iff edges = nodes - components
    nodes = [("b", i) for i in range(len(bd.blocks))] + [("c", v) for v in sorted(bd.cut_vertices)]
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, v in bd.tree_edges:
        ra, rb = find(("b", i)), find(("c", v))
        if ra == rb:
            problems.append("block-cut graph contains a cycle")
            break
        parent[ra] = rb
    return problems


def block_cut_dot(g: Graph, bd: BlockDecomposition) -> str:
    lines = ["graph blockcut {"]
    for i, b in enumerate(bd.blocks):
        members = " ".join(map(str, sorted(b)))
        lines.append(f'  b{i} [shape=box, label="B{i}: {members}"];')
    for v in sorted(bd.cut_vertices):
        lines.append(f'  c{v} [shape=circle, label="{v}"];')
    lines += [f"  b{i} -- c{v};" for i, v in bd.tree_edges]
    lines.append("}")
    return "\n".join(lines) + "\n"
