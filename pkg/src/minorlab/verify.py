"""Executable finite checks on the truncations of G.

Three harnesses:

* ``verify_lemma1``: blocks that are not attached K5s have no K5 minor,
  blocks that are not attached K3,3s have no K3,3 minor, and every minimal
  I-model splits into an attached K5, a grid crossing path and an attached
  K3,3.
* ``verify_proposition_lower``: n disjoint H-models (I-model plus a path of
  L edges standing in for the ray) in build_G(n, 2n-1+L).
* ``verify_saturation``: the exact I-packing number of build_G(m, h) against
  the column-0 cut certificate.

Row h plays the part of the end at infinity: a component counts as the
"infinite" one iff it meets row h.  Budget exhaustion is reported as
inconclusive, never as a pass.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, Union

from .blocks import BlockDecomposition, block_decomposition
from .constructions import (
    I_CUT,
    I_K33_PART,
    I_K5_PART,
    K5,
    K33,
    TruncationParams,
    attach_k5,
    build_G,
    build_H,
    build_I,
)
from .flow import PathError, PathFamily
from .graph import (
    Graph,
    GraphError,
    Grid,
    K5Private,
    K33Private,
    connected_components,
    delete_vertices,
    induced_subgraph,
    path_graph,
)
from .minors import (
    BudgetExhausted,
    MinorModel,
    Outcome,
    SearchBudget,
    find_minor_model,
    iter_minimal_models,
    verify_model,
)
from .packing import (
    Packing,
    PackingExhausted,
    Reached,
    UpperBounded,
    exact_packing,
    grid_sides,
    packing_upper_bound_by_cut,
)


class Status(Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"

    @property
    def exit_code(self) -> int:
        return {Status.PASS: 0, Status.FAIL: 1, Status.INCONCLUSIVE: 3}[self]


def _combine(statuses) -> Status:
    statuses = list(statuses)
    if Status.FAIL in statuses:
        return Status.FAIL
    if Status.INCONCLUSIVE in statuses:
        return Status.INCONCLUSIVE
    return Status.PASS


class UntaggedHostError(GraphError):
    """The check needs construction tags on the host."""


class TraceError(ValueError):
    """A path handed to the component trace is not a usable crossing path."""


def _dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# block classification


def classify_block(host: Graph, block: frozenset[int]) -> tuple[str, Optional[int]]:
    """``("k5", a)`` for a K5 attached at ``(a, 0)`` with ``a < 0``,
    ``("k33", b)`` for a K3,3 attached at ``(b, 0)`` with ``b >= 0``,
    ``("grid", None)`` for blocks of grid vertices, ``("other", None)`` else."""
    if host.tags is None:
        raise UntaggedHostError("block classification needs a tagged host")
    tags = [host.tags[v] for v in sorted(block)]
    grid = [t for t in tags if isinstance(t, Grid)]
    if len(grid) == len(tags):
        return ("grid", None)
    if len(grid) != 1 or grid[0].row != 0:
        return ("other", None)
    a = grid[0].col
    privates = [t for t in tags if not isinstance(t, Grid)]
    if (
        a < 0
        and len(privates) == 4
        and all(isinstance(t, K5Private) and t.anchor_col == a for t in privates)
    ):
        return ("k5", a)
    if (
        a >= 0
        and len(privates) == 5
        and all(isinstance(t, K33Private) and t.anchor_col == a for t in privates)
    ):
        return ("k33", a)
    return ("other", None)


# model decomposition


@dataclass(frozen=True)
class Decomposition:
    k5_anchor: int
    path: tuple[int, ...]
    k33_anchor: int


@dataclass(frozen=True)
class NotDecomposable:
    reason: str


def decompose_I_model(
    model: MinorModel, host: Graph, bd: Optional[BlockDecomposition] = None
) -> Union[Decomposition, NotDecomposable]:
    """Split a minimal I-model into attached K5 block, grid path, attached
    K3,3 block.  The cut-vertex branch set must be exactly the vertex set of
    a grid path from ``(a, 0)``, ``a < 0``, to ``(b, 0)``, ``b >= 0``."""
    if host.tags is None:
        raise UntaggedHostError("decomposition needs a tagged host")
    if not verify_model(model, build_I(), host):
        return NotDecomposable("not a valid I-model")
    bd = bd or block_decomposition(host)
    sides = {}
    for name, part, kind in (("K5", I_K5_PART, "k5"), ("K3,3", I_K33_PART, "k33")):
        union = frozenset().union(*(model.branch_sets[p] for p in part))
        homes = [b for b in bd.blocks if union <= b]
        if not homes:
            return NotDecomposable(f"{name} part is spread over several blocks")
        got, anchor = classify_block(host, homes[0])
        if got != kind:
            return NotDecomposable(f"{name} part lies in a block that is not an attached {name}")
        sides[kind] = anchor
    a, b = sides["k5"], sides["k33"]
    assert a is not None and b is not None
    core = model.branch_sets[I_CUT]
    if not all(isinstance(host.tags[v], Grid) for v in core):
        return NotDecomposable("cut-vertex branch set leaves the grid")
    start, end = host.find_tag(Grid(a, 0)), host.find_tag(Grid(b, 0))
    if start not in core or end not in core:
        return NotDecomposable("cut-vertex branch set misses an attachment vertex")
    path = _as_path(host, core, start, end)
    if path is None:
        return NotDecomposable("cut-vertex branch set is not a path between the anchors")
    return Decomposition(a, path, b)


def _as_path(host: Graph, core: frozenset[int], start: int, end: int) -> Optional[tuple[int, ...]]:
    deg = {v: len(host.adj[v] & core) for v in core}
    if len(core) == 1 or deg[start] != 1 or deg[end] != 1:
        return None
    if any(d != 2 for v, d in deg.items() if v not in (start, end)):
        return None
    path = [start]
    prev = None
    while path[-1] != end:
        nxt = [u for u in host.adj[path[-1]] & core if u != prev]
        prev = path[-1]
        path.append(nxt[0])
    return tuple(path) if len(path) == len(core) else None


# Lemma 1


@dataclass(frozen=True)
class BlockCheck:
    index: int
    kind: str
    anchor: Optional[int]
    vertices: tuple[int, ...]
    k5: str  # "attached", "absent", "found" or "exhausted"
    k33: str

    @property
    def k5_ok(self) -> Optional[bool]:
        return None if self.k5 == "exhausted" else self.k5 != "found"

    @property
    def k33_ok(self) -> Optional[bool]:
        return None if self.k33 == "exhausted" else self.k33 != "found"

    @property
    def label(self) -> str:
        return f"B{self.index}:{self.kind}" + ("" if self.anchor is None else f"@{self.anchor}")


@dataclass(frozen=True)
class DecomposedModel:
    model: MinorModel
    result: Union[Decomposition, NotDecomposable]


@dataclass(frozen=True)
class Lemma1Report:
    params: TruncationParams
    host_label: str
    blocks: tuple[BlockCheck, ...]
    decomposed_models: tuple[DecomposedModel, ...]
    enumeration_complete: bool
    status: Status

    @property
    def k5_confinement(self) -> dict[str, Optional[bool]]:
        return {b.label: b.k5_ok for b in self.blocks}

    @property
    def k33_confinement(self) -> dict[str, Optional[bool]]:
        return {b.label: b.k33_ok for b in self.blocks}

    @property
    def verdict(self) -> bool:
        return self.status is Status.PASS

    def failures(self) -> list[str]:
        out = []
        for b in self.blocks:
            if b.k5 == "found":
                out.append(f"{b.label} has a K5 minor")
            if b.k33 == "found":
                out.append(f"{b.label} has a K3,3 minor")
        for i, d in enumerate(self.decomposed_models):
            if isinstance(d.result, NotDecomposable):
                out.append(f"I-model {i}: {d.result.reason}")
        return out

    def to_json_obj(self) -> dict[str, Any]:
        models = []
        for d in self.decomposed_models:
            entry: dict[str, Any] = {"model": d.model.to_json_obj()}
            if isinstance(d.result, Decomposition):
                entry.update(k5_anchor=d.result.k5_anchor, path=list(d.result.path), k33_anchor=d.result.k33_anchor)
            else:
                entry["not_decomposable"] = d.result.reason
            models.append(entry)
        return {
            "check": "lemma1",
            "host": self.host_label,
            "m": self.params.m,
            "h": self.params.h,
            "status": self.status.value,
            "k5_confinement": self.k5_confinement,
            "k33_confinement": self.k33_confinement,
            "blocks": [
                {"block": b.label, "vertices": list(b.vertices), "k5": b.k5, "k33": b.k33}
                for b in self.blocks
            ],
            "enumeration_complete": self.enumeration_complete,
            "models": models,
            "failures": self.failures(),
        }

    def to_json(self) -> str:
        return _dumps(self.to_json_obj())

    def to_text(self) -> str:
        p = self.params
        lines = [f"lemma1 on {self.host_label} (m={p.m}, h={p.h}): {self.status.value.upper()}"]
        for b in self.blocks:
            lines.append(f"  {b.label:<14} {len(b.vertices):>3} vertices  K5 {b.k5:<9} K3,3 {b.k33}")
        good = sum(isinstance(d.result, Decomposition) for d in self.decomposed_models)
        total = len(self.decomposed_models)
        note = "" if self.enumeration_complete else " (enumeration cut short)"
        lines.append(f"  minimal I-models decomposed: {good}/{total}{note}")
        for d in self.decomposed_models:
            if isinstance(d.result, Decomposition):
                r = d.result
                lines.append(f"    K5@{r.k5_anchor} path {list(r.path)} K3,3@{r.k33_anchor}")
        lines += [f"  FAILED: {f}" for f in self.failures()]
        return "\n".join(lines) + "\n"


def negative_control_host(p: TruncationParams) -> Graph:
    """build_G(p) with an extra K5 attached at (0, 0), against the rule."""
    return attach_k5(build_G(p), p.grid_id(0, 0))


def _block_minor(pattern: Graph, sub: Graph, budget: SearchBudget) -> str:
    r = find_minor_model(pattern, sub, budget)
    return {Outcome.FOUND: "found", Outcome.ABSENT: "absent", Outcome.EXHAUSTED: "exhausted"}[r.outcome]


def verify_lemma1(
    p: TruncationParams,
    budget: Optional[SearchBudget] = None,
    host: Optional[Graph] = None,
    host_label: Optional[str] = None,
    cap: Optional[int] = None,
) -> Lemma1Report:
    """Run the block and decomposition checks on ``host`` (default build_G(p)).

    ``cap`` limits the number of I-models examined; by default all minimal
    I-models are enumerated.
    """
    budget = budget or SearchBudget.default()
    if host is None:
        host = build_G(p)
        host_label = host_label or f"G({p.m},{p.h})"
    if host.tags is None:
        raise UntaggedHostError("lemma1 needs a tagged host")
    bd = block_decomposition(host)
    checks = []
    for i, block in enumerate(bd.blocks):
        kind, anchor = classify_block(host, block)
        sub, _ = induced_subgraph(host, block)
        k5 = "attached" if kind == "k5" else _block_minor(K5, sub, budget)
        k33 = "attached" if kind == "k33" else _block_minor(K33, sub, budget)
        checks.append(BlockCheck(i, kind, anchor, tuple(sorted(block)), k5, k33))

    decomposed = []
    complete = True
    try:
        for model in iter_minimal_models(build_I(), host, budget):
            decomposed.append(DecomposedModel(model, decompose_I_model(model, host, bd)))
            if cap is not None and len(decomposed) >= cap:
                complete = False
                break
    except BudgetExhausted:
        complete = False
        exhausted = True
    else:
        exhausted = False

    statuses = []
    for c in checks:
        for ok in (c.k5_ok, c.k33_ok):
            statuses.append(Status.INCONCLUSIVE if ok is None else (Status.PASS if ok else Status.FAIL))
    for d in decomposed:
        statuses.append(Status.PASS if isinstance(d.result, Decomposition) else Status.FAIL)
    if exhausted:
        statuses.append(Status.INCONCLUSIVE)
    return Lemma1Report(
        p, host_label or "custom host", tuple(checks), tuple(decomposed), complete, _combine(statuses)
    )


# path-deletion trace


@dataclass(frozen=True)
class TraceStep:
    path_index: int
    components_after_deletion: int
    top_row_component_count: int


@dataclass(frozen=True)
class ComponentTrace:
    steps: tuple[TraceStep, ...]
    column0_consumed: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return all(s.top_row_component_count == 1 for s in self.steps) and len(
            set(self.column0_consumed)
        ) == len(self.steps)

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "steps": [
                {
                    "path_index": s.path_index,
                    "components_after_deletion": s.components_after_deletion,
                    "top_row_component_count": s.top_row_component_count,
                }
                for s in self.steps
            ],
            "column0_consumed": list(self.column0_consumed),
        }


def component_trace(p: TruncationParams, family: PathFamily, host: Optional[Graph] = None) -> ComponentTrace:
    """Delete crossing paths one after another and count the components that
    still meet row h (the stand-in for the end), which must stay 1.

    Each path must join ``(a, 0)``, ``a < 0``, to ``(b, 0)``, ``b >= 0``, and
    avoid row h.  Every path also uses its own column-0 vertex.
    """
    host = host or build_G(p)
    if host.tags is None:
        raise UntaggedHostError("component trace needs a tagged host")
    family.validate(host)  # raises PathError on overlap or non-paths
    tags = host.tags
    top = {v for v, t in enumerate(tags) if isinstance(t, Grid) and t.row == p.h}
    consumed = []
    for i, path in enumerate(family.paths):
        ends = [tags[path[0]], tags[path[-1]]]
        if not all(isinstance(t, Grid) and t.row == 0 for t in ends):
            raise TraceError(f"path {i} does not join two attachment vertices")
        if sorted(t.col < 0 for t in ends) != [False, True]:
            raise TraceError(f"path {i} does not cross from column < 0 to column >= 0")
        if top & set(path):
            raise TraceError(f"path {i} touches row {p.h}")
        zero = [v for v in path if isinstance(tags[v], Grid) and tags[v].col == 0]
        consumed.append(zero[0])
    steps = []
    deleted: set[int] = set()
    for i, path in enumerate(family.paths):
        deleted |= set(path)
        rest, idmap = delete_vertices(host, deleted)
        comps = connected_components(rest)
        top_new = {idmap[v] for v in top}
        touching = sum(1 for c in comps if c & top_new)
        steps.append(TraceStep(i, len(comps), touching))
    return ComponentTrace(tuple(steps), tuple(consumed))


# Proposition, lower bound


@dataclass(frozen=True)
class PropositionReport:
    n: int
    L: int
    params: TruncationParams
    status: Status
    lower_packing: Optional[Packing]
    component_trace: Optional[ComponentTrace]
    note: str = ""
    saturation_table: dict[int, Optional[int]] = field(default_factory=dict)

    @property
    def verdict(self) -> bool:
        return self.status is Status.PASS

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "check": "proposition",
            "n": self.n,
            "ray_edges": self.L,
            "m": self.params.m,
            "h": self.params.h,
            "status": self.status.value,
            "note": self.note,
            "lower_packing": None if self.lower_packing is None else self.lower_packing.to_json_obj(),
            "component_trace": None if self.component_trace is None else self.component_trace.to_json_obj(),
            "saturation_table": {str(m): v for m, v in sorted(self.saturation_table.items())},
        }

    def to_json(self) -> str:
        return _dumps(self.to_json_obj())

    def to_text(self) -> str:
        p = self.params
        lines = [
            f"proposition lower bound n={self.n}, ray {self.L} edges, "
            f"host G({p.m},{p.h}): {self.status.value.upper()}"
        ]
        if self.note:
            lines.append(f"  {self.note}")
        if self.lower_packing is not None:
            lines.append(f"  disjoint H-models: {len(self.lower_packing)}")
            for i, m in enumerate(self.lower_packing.models):
                lines.append(f"    model {i}: {len(m.vertices())} host vertices")
        if self.component_trace is not None:
            for s in self.component_trace.steps:
                lines.append(
                    f"  after deleting crossing path {s.path_index}: "
                    f"{s.components_after_deletion} components, "
                    f"{s.top_row_component_count} meeting row {p.h}"
                )
            lines.append(f"  column-0 vertices consumed: {list(self.component_trace.column0_consumed)}")
        return "\n".join(lines) + "\n"


def proposition_params(n: int, L: int) -> TruncationParams:
    """Sizing rule: n crossing paths fit in rows 0..n-1, n rays in rows
    n..2n-1, plus L rows of slack."""
    return TruncationParams(n, 2 * n - 1 + L)


def verify_proposition_lower(n: int, L: int, budget: Optional[SearchBudget] = None) -> PropositionReport:
    """Find n pairwise disjoint H-models in build_G(n, 2n-1+L).

    The I-models are packed exactly inside the band of rows 0..n-1 (with its
    attachments); one L-edge path per model is then found in rows >= n.
    Every H-model is checked against the whole host.
    """
    if n < 1 or L < 1:
        raise ValueError("need n >= 1 and L >= 1")
    budget = budget or SearchBudget.default()
    p = proposition_params(n, L)
    host = build_G(p)
    assert host.tags is not None
    H = build_H(L)

    def report(status: Status, packing=None, trace=None, note="") -> PropositionReport:
        return PropositionReport(n, L, p, status, packing, trace, note)

    band = [v for v, t in enumerate(host.tags) if not (isinstance(t, Grid) and t.row >= n)]
    band_graph, idmap = induced_subgraph(host, band)
    back = {new: old for old, new in idmap.items()}
    result = exact_packing(build_I(), band_graph, n, budget)
    if isinstance(result, PackingExhausted):
        return report(Status.INCONCLUSIVE, note="budget ran out while packing I-models")
    if isinstance(result, UpperBounded):
        return report(Status.FAIL, note=f"only {len(result.best)} disjoint I-models in rows 0..{n - 1}")
    assert isinstance(result, Reached)
    i_models = [m.relabel(back) for m in result.packing.models]

    upper = {v for v, t in enumerate(host.tags) if isinstance(t, Grid) and t.row >= n}
    rays: list[MinorModel] = []
    ray = path_graph(L + 1)
    for k in range(n):
        free = upper - set().union(*(r.vertices() for r in rays))
        region, rmap = induced_subgraph(host, free)
        found = find_minor_model(ray, region, budget)
        if found.outcome is Outcome.EXHAUSTED:
            return report(Status.INCONCLUSIVE, note="budget ran out while placing ray paths")
        if not found.found:
            return report(Status.FAIL, note=f"no room for ray path {k} above row {n - 1}")
        assert found.model is not None
        rays.append(found.model.relabel({new: old for old, new in rmap.items()}))

    models = tuple(MinorModel(im.branch_sets + r.branch_sets) for im, r in zip(i_models, rays))
    packing = Packing(H, models)
    packing.validate(host)

    bd = block_decomposition(host)
    paths = []
    for im in i_models:
        d = decompose_I_model(im, host, bd)
        if isinstance(d, NotDecomposable):
            return report(Status.FAIL, packing, note=f"I-model does not decompose: {d.reason}")
        paths.append(d.path)
    try:
        trace = component_trace(p, PathFamily(tuple(paths)), host)
    except (PathError, TraceError) as exc:
        return report(Status.FAIL, packing, note=str(exc))
    status = Status.PASS if len(packing) >= n and trace.ok else Status.FAIL
    return report(status, packing, trace)


# saturation


@dataclass(frozen=True)
class SaturationCell:
    m: int
    size: Optional[int]  # None when the budget ran out
    cut_bound: int

    def to_json_obj(self) -> dict[str, Any]:
        return {"m": self.m, "packing": self.size, "cut_bound": self.cut_bound}


@dataclass(frozen=True)
class SaturationReport:
    h: int
    cells: tuple[SaturationCell, ...]
    status: Status
    failures: tuple[str, ...]

    @property
    def table(self) -> dict[int, Optional[int]]:
        return {c.m: c.size for c in self.cells}

    @property
    def verdict(self) -> bool:
        return self.status is Status.PASS

    def to_json_obj(self) -> dict[str, Any]:
        return {
            "check": "saturation",
            "h": self.h,
            "status": self.status.value,
            "cells": [c.to_json_obj() for c in self.cells],
            "failures": list(self.failures),
        }

    def to_json(self) -> str:
        return _dumps(self.to_json_obj())

    def to_text(self) -> str:
        lines = [f"saturation h={self.h}: {self.status.value.upper()}", "     m  packing  cut bound"]
        for c in self.cells:
            size = "?" if c.size is None else str(c.size)
            lines.append(f"  {c.m:>4}  {size:>7}  {c.cut_bound:>9}")
        lines += [f"  FAILED: {f}" for f in self.failures]
        return "\n".join(lines) + "\n"


def verify_saturation(h: int, m_range, budget: Optional[SearchBudget] = None) -> SaturationReport:
    """Exact I-packing number of build_G(m, h) for each m, next to the
    column-0 cut certificate.  Entries must not exceed h+1 or the
    certificate, and must agree for all m >= h+1."""
    budget = budget or SearchBudget.default()
    I = build_I()
    cells = []
    failures = []
    statuses = []
    for m in m_range:
        host = build_G(TruncationParams(m, h))
        bound = packing_upper_bound_by_cut(host, *grid_sides(host))
        result = exact_packing(I, host, bound + 1, budget)
        if isinstance(result, PackingExhausted):
            cells.append(SaturationCell(m, None, bound))
            statuses.append(Status.INCONCLUSIVE)
            continue
        if isinstance(result, Reached):
            size = len(result.packing)
            failures.append(f"m={m}: {size} disjoint I-models beat the cut bound {bound}")
        else:
            size = len(result.best)
        cells.append(SaturationCell(m, size, bound))
        if size > h + 1:
            failures.append(f"m={m}: packing {size} exceeds h+1={h + 1}")
        if size > bound:
            failures.append(f"m={m}: packing {size} exceeds the cut bound {bound}")
    settled = {c.size for c in cells if c.m >= h + 1 and c.size is not None}
    if len(settled) > 1:
        failures.append(f"entries for m >= {h + 1} differ: {sorted(settled)}")
    statuses += [Status.FAIL] * len(failures)
    return SaturationReport(h, tuple(cells), _combine(statuses), tuple(failures))
