"""Families of pairwise vertex-disjoint minor models.

Exact packing works over inclusion-minimal models only: shrinking the
models of a disjoint family keeps it disjoint, so nothing is lost.  Models
are enumerated lazily and every new one immediately tries to complete a
packing with the earlier ones, so a reachable target is usually met long
before the enumeration ends.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

from .flow import min_vertex_cut
from .graph import Graph, GraphError, Grid, delete_vertices
from .minors import (
    BudgetExhausted,
    MinorModel,
    SearchBudget,
    find_minor_model,
    iter_minimal_models,
    verify_model,
)


class PackingError(ValueError):
    pass


@dataclass(frozen=True)
class Packing:
    pattern: Graph
    models: tuple[MinorModel, ...]

    def __len__(self) -> int:
        return len(self.models)

    def validate(self, host: Graph) -> None:
        """Raise :class:`PackingError` unless every model is valid and the
        models are pairwise vertex-disjoint."""
        used: set[int] = set()
        for i, m in enumerate(self.models):
            if not verify_model(m, self.pattern, host):
                raise PackingError(f"model {i} is not a valid minor model")
            overlap = used & m.vertices()
            if overlap:
                raise PackingError(f"model {i} reuses host vertex {min(overlap)}")
            used |= m.vertices()

    def to_json_obj(self) -> list[dict[str, list[int]]]:
        return [m.to_json_obj() for m in self.models]


@dataclass(frozen=True)
class Reached:
    packing: Packing


@dataclass(frozen=True)
class UpperBounded:
    """The search space ran out below the target; ``best`` is maximum."""

    best: Packing


@dataclass(frozen=True)
class PackingExhausted:
    best: Packing
    expansions: int


PackingResult = Union[Reached, UpperBounded, PackingExhausted]


def greedy_packing(pattern: Graph, host: Graph, budget: Optional[SearchBudget] = None) -> Packing:
    """Find a model, delete its vertices, repeat.  A lower bound only; a search
    that exhausts its budget simply ends the packing."""
    budget = budget or SearchBudget.default()
    models: list[MinorModel] = []
    used: set[int] = set()
    while True:
        rest, idmap = delete_vertices(host, used)
        back = {new: old for old, new in idmap.items()}
        found = find_minor_model(pattern, rest, budget)
        if not found.found:
            break
        assert found.model is not None
        model = found.model.relabel(back)
        models.append(model)
        used |= model.vertices()
    packing = Packing(pattern, tuple(models))
    packing.validate(host)
    return packing


def exact_packing(
    pattern: Graph, host: Graph, target: int, budget: Optional[SearchBudget] = None
) -> PackingResult:
    """Look for ``target`` disjoint models; if there are none, report a
    largest packing as the exact packing number."""
    if target < 1:
        raise ValueError("target must be at least 1")
    models: list[MinorModel] = []
    vsets: list[frozenset[int]] = []
    best: list[int] = []

    def extend(chosen: list[int], used: frozenset[int], start: int) -> Optional[list[int]]:
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(chosen) == target:
            return chosen
        for j in range(start, -1, -1):
            if vsets[j].isdisjoint(used):
                got = extend(chosen + [j], used | vsets[j], j - 1)
                if got:
                    return got
        return None

    def pack(ids: Iterable[int]) -> Packing:
        return Packing(pattern, tuple(models[j] for j in sorted(ids)))

    try:
        for model in iter_minimal_models(pattern, host, budget):
            models.append(model)
            vsets.append(model.vertices())
            i = len(models) - 1
            # packings whose newest member is model i
            got = extend([i], vsets[i], i - 1)
            if got:
                packing = pack(got)
                packing.validate(host)
                return Reached(packing)
    except BudgetExhausted as exc:
        return PackingExhausted(pack(best), exc.expansions)
    packing = pack(best)
    packing.validate(host)
    return UpperBounded(packing)


def packing_upper_bound_by_cut(host: Graph, left: Iterable[int], right: Iterable[int]) -> int:
    """Size of a minimum vertex cut between ``left`` and ``right``.

    Any packing of a pattern whose every model joins ``left`` to ``right``
    has at most this many models.
    """
    left, right = set(left), set(right)
    if not left or not right:
        raise GraphError("cut sides must be nonempty")
    return len(min_vertex_cut(host, left, right))


def grid_sides(host: Graph) -> tuple[list[int], list[int]]:
    """Grid vertices left of column 0, and those at column >= 0."""
    if host.tags is None:
        raise GraphError("grid sides need a tagged host")
    left = [v for v, t in enumerate(host.tags) if isinstance(t, Grid) and t.col < 0]
    right = [v for v, t in enumerate(host.tags) if isinstance(t, Grid) and t.col >= 0]
    return left, right
