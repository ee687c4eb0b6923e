"""Acceptance criteria 1-7.

Each criterion builds a deterministic text report (timings are kept out of
it) and prints one PASS/FAIL line.  Criterion 6 re-runs criteria 1-5 and
compares the reports byte for byte.

Run with ``pytest -v tests/test_acceptance.py`` or directly as a script.
"""

from __future__ import annotations

import random
import sys
import time
from itertools import combinations
from typing import Callable

import pytest

from minorlab.blocks import block_decomposition, check_decomposition
from minorlab.constructions import K33, TruncationParams, build_G
from minorlab.flow import CutSet, max_vertex_disjoint_paths, min_vertex_cut
from minorlab.graph import build_graph, complete_graph, path_graph
from minorlab.io import from_graph6, from_json, to_graph6, to_json
from minorlab.minors import Outcome, SearchBudget, find_minor_model
from minorlab.oracle import has_minor_oracle
from minorlab.packing import Packing
from minorlab.verify import (
    Decomposition,
    Status,
    negative_control_host,
    verify_lemma1,
    verify_proposition_lower,
    verify_saturation,
)

P = TruncationParams
SEED = SearchBudget.default().determinism_seed


def _random_graph(rng: random.Random, n: int, p: float):
    return build_graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


class Result:
    def __init__(self, ok: bool, report: str, detail: str, seconds: float):
        self.ok, self.report, self.detail, self.seconds = ok, report, detail, seconds


def _timed(fn: Callable[[], tuple[bool, str, str]]) -> Result:
    start = time.perf_counter()
    ok, report, detail = fn()
    return Result(ok, report, detail, time.perf_counter() - start)


# 1. oracle equivalence


def criterion_1() -> tuple[bool, str, str]:
    k33_minus = build_graph(6, [e for e in K33.edges() if e != (0, 3)])
    patterns = {
        "K3": complete_graph(3),
        "P3": path_graph(3),
        "K4": complete_graph(4),
        "K5": complete_graph(5),
        "K33-e": k33_minus,
    }
    rng = random.Random(SEED + 1)
    lines = []
    disagreements = exhausted = 0
    start = time.perf_counter()
    for i in range(200):
        n = rng.randint(1, 8)
        p = 0.3 if i % 2 == 0 else 0.5
        host = _random_graph(rng, n, p)
        verdicts = []
        for name, pattern in patterns.items():
            r = find_minor_model(pattern, host)
            oracle = has_minor_oracle(pattern, host)
            if r.outcome is Outcome.EXHAUSTED:
                exhausted += 1
            elif r.found != oracle:
                disagreements += 1
            verdicts.append(f"{name}={'y' if oracle else 'n'}{'' if r.found == oracle else '!'}")
        lines.append(f"{to_graph6(host)} p={p} " + " ".join(verdicts))
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and exhausted == 0 and elapsed <= 60
    detail = f"200 hosts x 5 patterns, {disagreements} disagreements, {exhausted} exhausted, {elapsed:.1f}s (limit 60s)"
    return ok, "\n".join(lines), detail


# 2. Lemma 1


def criterion_2() -> tuple[bool, str, str]:
    start = time.perf_counter()
    texts = []
    models = decomposed = 0
    all_pass = True
    for m in (1, 2):
        for h in (1, 2):
            r = verify_lemma1(P(m, h))
            texts.append(r.to_text())
            all_pass &= r.status is Status.PASS and r.enumeration_complete
            models += len(r.decomposed_models)
            decomposed += sum(isinstance(d.result, Decomposition) for d in r.decomposed_models)
    control = verify_lemma1(P(1, 1), host=negative_control_host(P(1, 1)), host_label="mutated G(1,1)")
    texts.append(control.to_text())
    elapsed = time.perf_counter() - start
    ok = all_pass and models >= 10 and decomposed == models and control.status is Status.FAIL and elapsed <= 300
    detail = (
        f"4 hosts pass, {decomposed}/{models} minimal I-models decompose, "
        f"negative control {control.status.value}, {elapsed:.1f}s (limit 300s)"
    )
    return ok, "".join(texts), detail


# 3. Proposition lower bound


def criterion_3() -> tuple[bool, str, str]:
    start = time.perf_counter()
    texts = []
    ok = True
    sizes = []
    for n in (1, 2, 3):
        r = verify_proposition_lower(n, 2)
        texts.append(r.to_text())
        texts.append(r.to_json())
        ok &= r.status is Status.PASS
        if r.lower_packing is not None:
            Packing(r.lower_packing.pattern, r.lower_packing.models).validate(build_G(r.params))
            sizes.append(len(r.lower_packing))
            ok &= len(r.lower_packing) >= n
    elapsed = time.perf_counter() - start
    ok &= elapsed <= 600
    detail = f"disjoint H-models found {sizes} for n=1,2,3 (L=2), all validated, {elapsed:.1f}s (limit 600s)"
    return ok, "\n".join(texts), detail


# 4. saturation


EXPECTED_SATURATION = {0: {1: 1, 2: 1, 3: 1, 4: 1}, 1: {1: 1, 2: 2, 3: 2, 4: 2}}


def criterion_4() -> tuple[bool, str, str]:
    start = time.perf_counter()
    texts = []
    ok = True
    tables = {}
    for h, expected in EXPECTED_SATURATION.items():
        r = verify_saturation(h, range(1, 5))
        texts.append(r.to_text())
        tables[h] = r.table
        ok &= r.status is Status.PASS and r.table == expected
        ok &= all(c.size is not None and c.size <= min(h + 1, c.cut_bound) for c in r.cells)
    elapsed = time.perf_counter() - start
    ok &= elapsed <= 600
    shown = "; ".join(f"h={h}: {[t[m] for m in sorted(t)]}" for h, t in tables.items())
    detail = f"{shown}, all within the cut certificate, {elapsed:.1f}s (limit 600s)"
    return ok, "".join(texts), detail


# 5. Menger duality


def _separates_with(g, s, t, size: int) -> bool:
    return any(CutSet(frozenset(c)).separates(g, s, t) for c in combinations(range(g.n), size))


def criterion_5() -> tuple[bool, str, str]:
    rng = random.Random(SEED + 5)
    lines = []
    mismatches = 0
    for _ in range(50):
        n = rng.randint(2, 12)
        g = _random_graph(rng, n, rng.choice([0.2, 0.3, 0.45]))
        vs = list(range(n))
        rng.shuffle(vs)
        k = rng.randint(1, n - 1)
        s = sorted(vs[: rng.randint(1, k)])
        t = sorted(vs[k : k + rng.randint(1, n - k)])
        family = max_vertex_disjoint_paths(g, s, t)
        cut = min_vertex_cut(g, s, t)
        value = len(family)
        exhaustive_ok = _separates_with(g, s, t, value) and not any(
            _separates_with(g, s, t, r) for r in range(value)
        )
        good = value == len(cut) and cut.separates(g, s, t) and exhaustive_ok
        mismatches += not good
        lines.append(f"{to_graph6(g)} S={s} T={t} paths={value} cut={sorted(cut.vertices)}")
    detail = f"50 random graphs, {mismatches} mismatches against exhaustive cut search"
    return mismatches == 0, "\n".join(lines), detail


# 6. determinism and round trips


def criterion_6(first_runs: dict[int, Result]) -> tuple[bool, str, str]:
    differing = []
    for k, fn in CRITERIA_1_TO_5.items():
        first = first_runs.get(k) or _timed(fn)
        second = _timed(fn)
        if first.report != second.report:
            differing.append(k)
    rng = random.Random(SEED + 6)
    bad_trips = 0
    for _ in range(100):
        g = _random_graph(rng, rng.randint(0, 30), rng.random())
        code, doc = to_graph6(g), to_json(g)
        back6, backj = from_graph6(code), from_json(doc)
        if not (back6 == g and backj == g and to_graph6(back6) == code and to_json(backj) == doc):
            bad_trips += 1
    ok = not differing and bad_trips == 0
    detail = f"reports of criteria 1-5 identical on re-run (differing: {differing or 'none'}), {bad_trips}/100 round-trip failures"
    return ok, "", detail


# 7. block axioms


def criterion_7() -> tuple[bool, str, str]:
    rng = random.Random(SEED + 7)
    violations = 0
    for _ in range(100):
        g = _random_graph(rng, rng.randint(1, 15), rng.choice([0.1, 0.2, 0.35]))
        violations += bool(check_decomposition(g, block_decomposition(g)))
    census = {m: len(block_decomposition(build_G(P(m, 1))).blocks) for m in (1, 2, 3)}
    census_ok = all(c == 1 + m + (m + 1) for m, c in census.items())
    detail = f"100 random graphs, {violations} axiom violations; build_G(m,1) blocks {census}"
    return violations == 0 and census_ok, "", detail


CRITERIA_1_TO_5 = {1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5}
_first_runs: dict[int, Result] = {}


def _report(k: int, result: Result, capsys=None) -> None:
    line = f"criterion {k}: {'PASS' if result.ok else 'FAIL'} - {result.detail}"
    if capsys is None:
        print(line, flush=True)
        return
    with capsys.disabled():
        print(f"\n{line}", flush=True)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_criteria_1_to_5(k, capsys):
    result = _timed(CRITERIA_1_TO_5[k])
    _first_runs[k] = result
    _report(k, result, capsys)
    assert result.ok, result.detail


def test_criterion_6_determinism(capsys):
    result = _timed(lambda: criterion_6(_first_runs))
    _report(6, result, capsys)
    assert result.ok, result.detail


def test_criterion_7_block_axioms(capsys):
    result = _timed(criterion_7)
    _report(7, result, capsys)
    assert result.ok, result.detail


if __name__ == "__main__":
    failed = 0
    for k, fn in CRITERIA_1_TO_5.items():
        _first_runs[k] = _timed(fn)
        _report(k, _first_runs[k])
        failed += not _first_runs[k].ok
    for k, fn in ((6, lambda: criterion_6(_first_runs)), (7, criterion_7)):
        r = _timed(fn)
        _report(k, r)
        failed += not r.ok
    sys.exit(1 if failed else 0)
