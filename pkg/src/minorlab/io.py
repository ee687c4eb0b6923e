"""graph6, JSON and DOT serialization."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Union

from .graph import Graph, GraphError, Grid, K5Private, K33Private, Plain, VertexTag, build_graph

G6_HEADER = ">>graph6<<"


def _g6_size(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise GraphError("graph too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> str:
    """Encode ``g`` in graph6; tags are dropped."""
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + int("".join(map(str, bits[k : k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return (G6_HEADER if header else "") + _g6_size(g.n) + body


def from_graph6(text: Union[str, bytes]) -> Graph:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    s = text.strip()
    if s.startswith(G6_HEADER):
        s = s[len(G6_HEADER) :]
    data = [ord(c) - 63 for c in s]
    if any(not 0 <= x <= 63 for x in data):
        raise GraphError("graph6 characters must lie in '?'..'~'")
    if not data:
        raise GraphError("empty graph6 string")
    if data[0] == 63:
        if len(data) > 1 and data[1] == 63:
            n, rest = _pack6(data[2:8]), data[8:]
        else:
            n, rest = _pack6(data[1:4]), data[4:]
    else:
        n, rest = data[0], data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(rest) != need:
        raise GraphError(f"graph6 body has {len(rest)} bytes, expected {need}")
    bits = [(x >> s) & 1 for x in rest for s in range(5, -1, -1)]
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return build_graph(n, edges)


def _pack6(chunk: list[int]) -> int:
    value = 0
    for x in chunk:
        value = (value << 6) | x
    return value


def tag_to_json(tag: VertexTag) -> dict[str, Any]:
    if isinstance(tag, Grid):
        return {"kind": "grid", "col": tag.col, "row": tag.row}
    if isinstance(tag, K5Private):
        return {"kind": "k5", "anchor_col": tag.anchor_col, "index": tag.index}
    if isinstance(tag, K33Private):
        return {"kind": "k33", "anchor_col": tag.anchor_col, "index": tag.index}
    return {"kind": "plain"}


def tag_from_json(obj: dict[str, Any]) -> VertexTag:
    kind = obj.get("kind")
    if kind == "grid":
        return Grid(int(obj["col"]), int(obj["row"]))
    if kind == "k5":
        return K5Private(int(obj["anchor_col"]), int(obj["index"]))
    if kind == "k33":
        return K33Private(int(obj["anchor_col"]), int(obj["index"]))
    if kind == "plain":
        return Plain()
    raise GraphError(f"unknown tag kind {kind!r}")


def to_json_obj(g: Graph) -> dict[str, Any]:
    obj: dict[str, Any] = {"n": g.n, "edges": [list(e) for e in g.edges()]}
    if g.tags is not None:
        obj["tags"] = {str(v): tag_to_json(t) for v, t in enumerate(g.tags)}
    return obj


def to_json(g: Graph) -> str:
    return json.dumps(to_json_obj(g), separators=(",", ":"))


def from_json_obj(obj: dict[str, Any]) -> Graph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph document: {exc}") from None
    tags = None
    if obj.get("tags") is not None:
        tags = {int(k): tag_from_json(t) for k, t in obj["tags"].items()}
    return build_graph(n, edges, tags)


def from_json(text: str) -> Graph:
    return from_json_obj(json.loads(text))


def _dot_label(g: Graph, v: int) -> str:
    t = g.tag(v)
    if isinstance(t, Grid):
        return f"({t.col},{t.row})"
    if isinstance(t, K5Private):
        return f"K5[{t.anchor_col}].{t.index}"
    if isinstance(t, K33Private):
        return f"K33[{t.anchor_col}].{t.index}"
    return str(v)


def to_dot(g: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        t = g.tag(v)
        attrs = [f'label="{_dot_label(g, v)}"']
        if isinstance(t, Grid):
            attrs.append(f'pos="{t.col},{t.row}!"')
        lines.append(f"  {v} [{', '.join(attrs)}];")
    lines += [f"  {u} -- {v};" for u, v in g.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_graph(path: Union[str, Path]) -> Graph:
    """Load a graph from ``.json`` or graph6 (any other extension)."""
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        return from_json(text)
    return from_graph6(text)


def write_graph(g: Graph, path: Union[str, Path], fmt: str = "json") -> None:
    path = Path(path)
    if fmt == "json":
        path.write_text(to_json(g) + "\n")
    elif fmt == "g6":
        path.write_text(to_graph6(g) + "\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")
