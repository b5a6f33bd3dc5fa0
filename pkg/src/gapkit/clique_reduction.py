"""Clause-gadget reduction from 3-SAT to Clique and the supervertex blocking transform."""

from __future__ import annotations

import json
from functools import lru_cache
from typing import Iterable, Mapping, NamedTuple

from .errors import CapExceeded, InvalidInstance
from .graph import SimpleGraph, SupervertexMap, bits
from .sat import Assignment, CnfInstance

DEFAULT_SUPERVERTEX_CAP = 20000


class GadgetVertex(NamedTuple):
    clause: int
    assignment: tuple[tuple[int, bool], ...]

    def as_dict(self) -> dict[int, bool]:
        return dict(self.assignment)


class GadgetGraph(NamedTuple):
    graph: SimpleGraph
    gadgets: tuple[GadgetVertex, ...]


@lru_cache(maxsize=None)
def _satisfying_codes(width: int, lits: tuple[tuple[int, bool], ...]) -> tuple[int, ...]:
    """Codes over ``width`` bits (bit p = value of the variable at position p)
    satisfying some (position, negated) literal."""
    return tuple(
        code for code in range(1 << width) if any((code >> p) & 1 != neg for p, neg in lits)
    )


def sat_to_clique(cnf: CnfInstance) -> GadgetGraph:
    """One vertex per satisfying assignment of each clause's distinct variables.

    Vertices of different clauses are adjacent iff their partial assignments
    agree on every shared variable. Gadget vertices are numbered clause by
    clause, assignments in lexicographic order (False before True).
    """
    gadgets = []
    clause_of: list[int] = []
    holders: dict[tuple[int, bool], int] = {}
    for ci, clause in enumerate(cnf.clauses):
        vars_ = clause.variables
        pos = {x: len(vars_) - 1 - k for k, x in enumerate(vars_)}
        lits = tuple((pos[lit.variable], lit.negated) for lit in clause.literals)
        for code in _satisfying_codes(len(vars_), lits):
            values = tuple((x, bool((code >> pos[x]) & 1)) for x in vars_)
            bit = 1 << len(gadgets)
            for key in values:
                holders[key] = holders.get(key, 0) | bit
            gadgets.append(GadgetVertex(ci, values))
            clause_of.append(ci)
    same = [0] * cnf.m
    for i, ci in enumerate(clause_of):
        same[ci] |= 1 << i
    everyone = (1 << len(gadgets)) - 1
    adjacency = []
    for gv in gadgets:
        clash = same[gv.clause]
        for x, val in gv.assignment:
            clash |= holders.get((x, not val), 0)
        adjacency.append(everyone & ~clash)
    return GadgetGraph(SimpleGraph(len(gadgets), adjacency=adjacency), tuple(gadgets))


def assignment_to_clique(gg: GadgetGraph, tau: Mapping[int, bool]) -> frozenset[int]:
    """Vertices agreeing with ``tau``: one per clause that ``tau`` satisfies."""
    return frozenset(
        i for i, gv in enumerate(gg.gadgets) if all(tau[x] == val for x, val in gv.assignment)
    )


def clique_to_assignment(gg: GadgetGraph, clique: Iterable[int], q: int) -> Assignment:
    """Merge the partial assignments of a clique; unset variables become False."""
    tau = {v: False for v in range(1, q + 1)}
    seen: dict[int, bool] = {}
    for i in clique:
        for x, val in gg.gadgets[i].assignment:
            if seen.setdefault(x, val) != val:
                raise InvalidInstance(f"vertices of the clique disagree on variable {x}")
            tau[x] = val
    return tau


def gadgets_to_json(gadgets: Iterable[GadgetVertex]) -> str:
    return json.dumps(
        [
            {"clause": gv.clause, "assignment": [[x, val] for x, val in gv.assignment]}
            for gv in gadgets
        ]
    )


def _cliques_of_size(g: SimpleGraph, size: int) -> Iterable[int]:
    """All cliques of exactly ``size`` vertices as bitsets, lexicographic order."""
    adj = g.adjacency

    def extend(chosen: int, cand: int, left: int):
        if left == 0:
            yield chosen
            return
        for v in bits(cand):
            if (cand >> v).bit_count() < left:
                return
            yield from extend(chosen | (1 << v), cand & adj[v] & ~((2 << v) - 1), left - 1)

    yield from extend(0, (1 << g.n) - 1, size)


def count_cliques_of_size(g: SimpleGraph, size: int) -> int:
    return sum(1 for _ in _cliques_of_size(g, size))


def supervertex_clique_transform(
    g: SimpleGraph, block: int, cap: int = DEFAULT_SUPERVERTEX_CAP
) -> tuple[SimpleGraph, SupervertexMap]:
    """Blocking transform: supervertices are the ``block``-subsets inducing cliques;
    two are adjacent iff disjoint and their union is a clique.

    The clique number drops from w to floor(w / block).
    """
    if not 1 <= block <= max(g.n, 1):
        raise InvalidInstance(f"block size {block} outside 1..{g.n}")
    masks = []
    for mask in _cliques_of_size(g, block):
        masks.append(mask)
        if len(masks) > cap:
            raise CapExceeded("supervertices", count_cliques_of_size(g, block), cap)
    adj = g.adjacency
    common = []
    for mask in masks:
        c = -1
        for v in bits(mask):
            c &= adj[v]
        common.append(c)
    adjacency = []
    for i, c in enumerate(common):
        row = 0
        for j, m in enumerate(masks):
            if m & c == m:
                row |= 1 << j
        adjacency.append(row)
    smap = tuple(frozenset(bits(m)) for m in masks)
    return SimpleGraph(len(masks), adjacency=adjacency), smap


def expand_supervertices(smap: SupervertexMap, vertices: Iterable[int]) -> frozenset:
    out = set()
    for s in vertices:
        out |= smap[s]
    return frozenset(out)


def supervertex_index(smap: SupervertexMap) -> dict[frozenset, int]:
    return {s: i for i, s in enumerate(smap)}


def block_clique(
    smap: SupervertexMap, clique: Iterable[int], block: int
) -> frozenset[int]:
    """Group a clique of the base graph into disjoint supervertices (leftovers dropped)."""
    index = supervertex_index(smap)
    members = sorted(clique)
    groups = [frozenset(members[i : i + block]) for i in range(0, len(members) - block + 1, block)]
    return frozenset(index[grp] for grp in groups)

