"""Best-first proof search over the interaction tree.

The frontier is a priority queue ordered by cumulative log probability of
the tactic path. Expanding a node runs every candidate tactic in the
sandbox; error results are dropped, a finished proof returns immediately,
and states already seen anywhere in the search (by formatted text) are not
enqueued again.
"""

from __future__ import annotations

import heapq
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from ..corpus import Corpus
from ..dojo import initialize as dojo_initialize

__all__ = ["SearchResult", "best_first_search", "result_to_record", "evaluate_pass_at_1"]


@dataclass
class SearchResult:
    theorem: str
    proved: bool
    proof: list[str] | None
    reason: str  # proved | exhausted | budget | timeout
    expansions: int
    duplicates: int
    wall_time: float


def best_first_search(
    corpus: Corpus,
    theorem: str,
    generator,
    max_expansions: int = 100,
    wall_seconds: float | None = None,
    step_budget: int | None = None,
    clock: Callable[[], float] = time.monotonic,
) -> SearchResult:
    started = clock()
    session, root = dojo_initialize(corpus, theorem, step_budget=step_budget, clock=clock)

    def done(proved: bool, proof: list[str] | None, reason: str, exp: int, dup: int) -> SearchResult:
        return SearchResult(theorem, proved, proof, reason, exp, dup, clock() - started)

    # Heap entries: (-cumulative log prob, depth, tiebreak counter, state id).
    heap: list[tuple[float, int, int, int]] = [(0.0, 0, 0, root.id)]
    scores = {root.id: 0.0}
    counter = 1
    seen = {root.text}
    expansions = 0
    duplicates = 0
    while heap:
        if expansions >= max_expansions:
            return done(False, None, "budget", expansions, duplicates)
        if wall_seconds is not None and clock() - started > wall_seconds:
            return done(False, None, "timeout", expansions, duplicates)
        _, depth, _, state_id = heapq.heappop(heap)
        state = session.states[state_id]
        expansions += 1
        for candidate in generator.candidates(theorem, state.proof_state):
            child = session.run_tac(state_id, candidate.tactic)
            if child.is_error:
                continue
            if child.proof_finished:
                return done(True, session.path_to(child.id), "proved", expansions, duplicates)
            if child.text in seen:
                duplicates += 1
                continue
            seen.add(child.text)
            scores[child.id] = scores[state_id] + candidate.log_prob
            heapq.heappush(heap, (-scores[child.id], depth + 1, counter, child.id))
            counter += 1
    return done(False, None, "exhausted", expansions, duplicates)


def result_to_record(result: SearchResult) -> dict:
    return {
        "theorem": result.theorem,
        "proved": result.proved,
        "proof": result.proof,
        "reason": result.reason,
        "expansions": result.expansions,
        "duplicates": result.duplicates,
        "wall_time": result.wall_time,
    }


def evaluate_pass_at_1(
    corpus: Corpus,
    theorems: Sequence[str],
    generator_factory: Callable[[], object],
    max_expansions: int = 100,
    wall_seconds: float | None = None,
    step_budget: int | None = None,
    jobs: int = 1,
) -> dict:
    """One search attempt per theorem. ``generator_factory`` is called once
    per worker so generators never have to be thread-safe."""

    local = threading.local()

    def attempt(name: str) -> SearchResult:
        generator = getattr(local, "generator", None)
        if generator is None:
            generator = generator_factory()
            local.generator = generator
        return best_first_search(
            corpus,
            name,
            generator,
            max_expansions=max_expansions,
            wall_seconds=wall_seconds,
            step_budget=step_budget,
        )

    if jobs <= 1:
        results = [attempt(name) for name in theorems]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(attempt, theorems))
    proved = sum(1 for r in results if r.proved)
    return {
        "total": len(results),
        "proved": proved,
        "pass_rate": proved / len(results) if results else 0.0,
        "results": [result_to_record(r) for r in results],
    }
