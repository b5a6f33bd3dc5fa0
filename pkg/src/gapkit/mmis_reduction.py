"""3-SAT to minimum maximal independent set through literal supervertices.

Literals are signed ints (``x`` for u_x, ``-x`` for its negation). Vertex ids:
supervertices first, in the order (variable subset lexicographic, then sign
pattern with positive before negative), followed by the q copies of each
clause, clause by clause.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Iterable, Mapping

from .errors import CapExceeded, InvalidInstance, NotSatisfying
from .graph import SimpleGraph, bits
from .sat import CnfInstance, evaluate

DEFAULT_MMIS_BUILD_CAP = 100_000


@dataclass(frozen=True)
class MmisGraph:
    graph: SimpleGraph
    supervertices: tuple[frozenset[int], ...]
    clause_copies: tuple[tuple[int, ...], ...]
    f: int

    @property
    def block_size(self) -> int:
        return len(self.supervertices[0]) if self.supervertices else 0

    def is_supervertex(self, v: int) -> bool:
        return v < len(self.supervertices)


def supervertex_count(q: int, f: int) -> int:
    s = q // f
    return comb(q, s) * 2**s


def sat_to_mmis(cnf: CnfInstance, f: int, cap: int = DEFAULT_MMIS_BUILD_CAP) -> MmisGraph:
    q = cnf.q
    if f < 1 or q < 1 or q % f:
        raise InvalidInstance(f"f={f} must divide q={q}; pad variables first")
    s = q // f
    count = supervertex_count(q, f)
    if count + q * cnf.m > cap:
        raise CapExceeded("vertices of the MMIS graph", count + q * cnf.m, cap)

    supers = []
    for vars_ in combinations(range(1, q + 1), s):
        for signs in product((1, -1), repeat=s):
            supers.append(frozenset(v * sg for v, sg in zip(vars_, signs)))

    holders = {x: 0 for x in range(1, q + 1)}
    by_literal: dict[int, int] = {}
    for i, lits in enumerate(supers):
        for lit in lits:
            holders[abs(lit)] |= 1 << i
            by_literal[lit] = by_literal.get(lit, 0) | (1 << i)

    n = count + q * cnf.m
    adjacency = [0] * n
    for i, lits in enumerate(supers):
        for lit in lits:
            adjacency[i] |= holders[abs(lit)]
        adjacency[i] &= ~(1 << i)

    copies = []
    for c, clause in enumerate(cnf.clauses):
        ids = tuple(range(count + c * q, count + (c + 1) * q))
        copies.append(ids)
        block = ((1 << q) - 1) << ids[0]
        hit = 0
        for lit in {lit.to_int() for lit in clause.literals}:
            hit |= by_literal.get(lit, 0)
        for i in bits(hit):
            adjacency[i] |= block
        for w in ids:
            adjacency[w] = hit

    graph = SimpleGraph(n, adjacency=adjacency)
    return MmisGraph(graph, tuple(supers), tuple(copies), f)


def assignment_sets(tau: Mapping[int, bool], q: int, f: int) -> list[frozenset[int]]:
    """Variables cut into f contiguous blocks; each block takes its literals from tau."""
    s = q // f
    return [
        frozenset(x if tau[x] else -x for x in range(i * s + 1, (i + 1) * s + 1)) for i in range(f)
    ]


def build_yes_solution(
    cnf: CnfInstance, tau: Mapping[int, bool], f: int, g: MmisGraph
) -> frozenset[int]:
    """The f supervertices of the assignment sets of a satisfying ``tau``."""
    if evaluate(cnf, tau) != cnf.m:
        raise NotSatisfying("tau leaves a clause unsatisfied")
    if cnf.q % f:
        raise InvalidInstance(f"f={f} does not divide q={cnf.q}")
    index = {lits: i for i, lits in enumerate(g.supervertices)}
    out = set()
    for t in assignment_sets(tau, cnf.q, f):
        if t not in index:  # pragma: no cover - every consistent block is enumerated
            raise AssertionError(f"assignment set {sorted(t)} is not a supervertex")
        out.add(index[t])
    return frozenset(out)


def induced_assignment(g: MmisGraph, vertices: Iterable[int]) -> dict[int, bool]:
    """Partial assignment spelled by the supervertices among ``vertices``."""
    out: dict[int, bool] = {}
    for v in vertices:
        if not g.is_supervertex(v):
            continue
        for lit in g.supervertices[v]:
            if out.setdefault(abs(lit), lit > 0) != (lit > 0):
                raise InvalidInstance(f"supervertices disagree on variable {abs(lit)}")
    return out


def mmis_metadata_to_json(g: MmisGraph) -> str:
    return json.dumps(
        {
            "f": g.f,
            "supervertices": [sorted(s, key=abs) for s in g.supervertices],
            "clauseCopies": [[ids[0], ids[-1] + 1] for ids in g.clause_copies],
        }
    )
