"""Seeded and exhaustive instance corpora for the claim suites."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterator

from .graph import SimpleGraph
from .rng import SplitMix64
from .sat import Clause, CnfInstance, Literal, all_sign_patterns, pad_variables_to_divisible
from .setcover import SetCoverInstance


def canonical_formulas(max_m: int = 4, max_q: int = 6) -> Iterator[CnfInstance]:
    """Every 3-CNF of 1..max_m distinct-variable clauses over at most max_q
    variables, up to renaming and per-variable sign flips.

    Canonical form: variables are numbered by first appearance and first
    occurrences are positive. Two orderings are pruned without losing any
    formula: the number of fresh variables per clause never increases (picking
    the clause with most fresh variables next always achieves this), and the
    trailing clauses with no fresh variable, whose order does not affect the
    numbering, are sorted.
    """

    def extend(clauses: list[tuple[int, ...]], q: int, last_fresh: int) -> Iterator[CnfInstance]:
        if clauses:
            yield CnfInstance.from_ints(q, clauses)
        if len(clauses) == max_m:
            return
        for fresh in range(min(last_fresh, max_q - q), -1, -1):
            new_vars = tuple(range(q + 1, q + fresh + 1))
            for old in combinations(range(1, q + 1), 3 - fresh):
                for signs in product((1, -1), repeat=len(old)):
                    clause = tuple(v * s for v, s in zip(old, signs)) + new_vars
                    if fresh == 0 and last_fresh == 0 and clause < clauses[-1]:
                        continue
                    yield from extend(clauses + [clause], q + fresh, fresh)

    yield from extend([], 0, 3)


def random_formula(rng: SplitMix64, q: int, m: int, repeat_percent: int = 10) -> CnfInstance:
    """Uniform random 3-CNF; a clause reuses a variable with the given chance
    (always when q < 3)."""
    clauses = []
    for _ in range(m):
        if q == 1:
            vars_ = [1, 1, 1]
        elif q == 2 or rng.below(100) < repeat_percent:
            x = 1 + rng.below(q)
            y = 1 + rng.below(q - 1)
            y += y >= x
            vars_ = [x, x, y]
        else:
            pool = list(range(1, q + 1))
            rng.shuffle(pool)
            vars_ = pool[:3]
        clauses.append(Clause(tuple(Literal(v, bool(rng.below(2))) for v in vars_)))
    return CnfInstance(q, tuple(clauses))


def random_formulas(
    seed: int, count: int, max_m: int = 5, min_q: int = 3, max_q: int = 6
) -> list[CnfInstance]:
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        q = min_q + rng.below(max_q - min_q + 1)
        m = 1 + rng.below(max_m)
        out.append(random_formula(rng, q, m))
    return out


def unsat_formulas() -> list[CnfInstance]:
    """Small unsatisfiable formulas, the first being all 8 sign patterns over 3 variables."""
    base = all_sign_patterns()
    split = [c.to_ints() for c in base.clauses[1:]] + [(1, 2, 4), (1, 2, -4)]
    shifted = [c.to_ints() for c in all_sign_patterns((2, 3, 4)).clauses] + [(1, 2, 3)]
    two_blocks = [c.to_ints() for c in base.clauses] + [
        c.to_ints() for c in all_sign_patterns((2, 3, 4)).clauses
    ]
    return [
        base,
        pad_variables_to_divisible(base, 2),
        CnfInstance.from_ints(4, split),
        CnfInstance.from_ints(4, shifted),
        CnfInstance.from_ints(4, two_blocks),
    ]


def random_graph(rng: SplitMix64, n: int, edge_percent: int) -> SimpleGraph:
    return SimpleGraph.from_edges(
        n, [(u, v) for u, v in combinations(range(n), 2) if rng.below(100) < edge_percent]
    )


def random_graphs(seed: int, count: int, min_n: int, max_n: int) -> list[SimpleGraph]:
    """Random graphs with a density drawn per graph from 10..90 percent."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        n = min_n + rng.below(max_n - min_n + 1)
        out.append(random_graph(rng, n, 10 + rng.below(81)))
    return out


def random_connected_graphs(seed: int, count: int, min_n: int, max_n: int) -> list[SimpleGraph]:
    """Random spanning tree plus random extra edges."""
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        n = min_n + rng.below(max_n - min_n + 1)
        edges = {(rng.below(v), v) for v in range(1, n)}
        density = rng.below(80)
        edges |= {(u, v) for u, v in combinations(range(n), 2) if rng.below(100) < density}
        out.append(SimpleGraph.from_edges(n, edges))
    return out


def random_setcover(rng: SplitMix64, universe: int, family: int, percent: int) -> SetCoverInstance:
    """Random family, repaired to be feasible by placing each uncovered element
    into a random set."""
    sets = [{e for e in range(universe) if rng.below(100) < percent} for _ in range(family)]
    for e in range(universe):
        if not any(e in s for s in sets):
            sets[rng.below(family)].add(e)
    return SetCoverInstance(universe, tuple(frozenset(s) for s in sets))


def random_setcovers(
    seed: int, count: int, max_universe: int = 12, min_family: int = 4, max_family: int = 8
) -> list[SetCoverInstance]:
    rng = SplitMix64(seed)
    out = []
    for _ in range(count):
        n = 1 + rng.below(max_universe)
        f = min_family + rng.below(max_family - min_family + 1)
        out.append(random_setcover(rng, n, f, 10 + rng.below(40)))
    return out
