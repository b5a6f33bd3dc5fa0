"""Min-Rep instances, the exact covering oracle, and the random-halves reduction to set cover."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from .errors import CapExceeded, FormatError, InvalidInstance
from .graph import to_mask
from .rng import SplitMix64
from .setcover import SetCoverInstance

DEFAULT_MINREP_CAP = 24

Superedge = tuple[int, int]


@dataclass(frozen=True)
class MinRepInstance:
    """Bipartite graph whose sides are partitioned into groups (supervertices).

    Vertex ids run over ``0..num_vertices-1``; every id belongs to exactly one
    group on exactly one side, and edges are (left vertex, right vertex) pairs.
    """

    left_groups: tuple[tuple[int, ...], ...]
    right_groups: tuple[tuple[int, ...], ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        object.__setattr__(self, "left_groups", tuple(tuple(sorted(g)) for g in self.left_groups))
        object.__setattr__(self, "right_groups", tuple(tuple(sorted(g)) for g in self.right_groups))
        object.__setattr__(self, "edges", frozenset((int(a), int(b)) for a, b in self.edges))
        ids = [v for g in self.left_groups + self.right_groups for v in g]
        if sorted(ids) != list(range(len(ids))):
            raise InvalidInstance("groups must partition the vertex ids 0..N-1")
        if any(not g for g in self.left_groups + self.right_groups):
            raise InvalidInstance("empty group")
        for a, b in self.edges:
            if a not in self.left_group_of or b not in self.right_group_of:
                raise InvalidInstance(f"edge ({a}, {b}) must join a left vertex to a right vertex")

    @property
    def num_vertices(self) -> int:
        return sum(len(g) for g in self.left_groups + self.right_groups)

    @cached_property
    def left_group_of(self) -> dict[int, int]:
        return {v: i for i, g in enumerate(self.left_groups) for v in g}

    @cached_property
    def right_group_of(self) -> dict[int, int]:
        return {v: j for j, g in enumerate(self.right_groups) for v in g}

    @cached_property
    def superedge_edges(self) -> dict[Superedge, tuple[tuple[int, int], ...]]:
        """Superedges in sorted order, each with its sorted underlying edges."""
        out: dict[Superedge, list] = {}
        for a, b in sorted(self.edges):
            out.setdefault((self.left_group_of[a], self.right_group_of[b]), []).append((a, b))
        return {k: tuple(out[k]) for k in sorted(out)}

    @property
    def superedges(self) -> tuple[Superedge, ...]:
        return tuple(self.superedge_edges)


class CoverCheck(NamedTuple):
    ok: bool
    uncovered: Superedge | None = None


def minrep_cover_check(inst: MinRepInstance, s: Iterable[int]) -> CoverCheck:
    """A superedge (i, j) is covered when some edge joins a chosen vertex of
    left group i to a chosen vertex of right group j."""
    chosen = set(s)
    for se, edges in inst.superedge_edges.items():
        if not any(a in chosen and b in chosen for a, b in edges):
            return CoverCheck(False, se)
    return CoverCheck(True)


class _RepSearch:
    def __init__(self, inst: MinRepInstance):
        self.options = [
            [(1 << a) | (1 << b) for a, b in edges] for edges in inst.superedge_edges.values()
        ]
        self.groups = [
            (to_mask(inst.left_groups[i]), to_mask(inst.right_groups[j]))
            for i, j in inst.superedges
        ]

    def minimum_extra(self, chosen: int, allowed: int, limit: int) -> int | None:
        """Fewest vertices from ``allowed`` to add to ``chosen`` so all superedges are covered."""
        best = limit + 1
        options, groups = self.options, self.groups

        def search(chosen: int, allowed: int, added: int) -> None:
            nonlocal best
            open_, needy = [], set()
            for opts, pair in zip(options, groups):
                if any(o & chosen == o for o in opts):
                    continue
                usable = [o for o in opts if o & ~(chosen | allowed) == 0]
                if not usable:
                    return
                open_.append(usable)
                needy.update(g for g in pair if not g & chosen)
            if not open_:
                best = min(best, added)
                return
            # each group of an open superedge without a chosen vertex costs one more
            if added + max(1, len(needy)) >= best:
                return
            usable = min(open_, key=len)
            for o in sorted(usable, key=lambda o: ((o & ~chosen).bit_count(), o)):
                search(chosen | o, allowed & ~o, added + (o & ~chosen).bit_count())
                if added + 1 >= best:
                    return

        search(chosen, allowed, 0)
        return best if best <= limit else None


def minrep_exact(inst: MinRepInstance, cap: int = DEFAULT_MINREP_CAP) -> tuple[int, tuple[int, ...]]:
    """Minimum covering vertex set; the witness is the lexicographically least optimum."""
    n = inst.num_vertices
    if n > cap:
        raise CapExceeded("vertices for exact Min-Rep", n, cap)
    search = _RepSearch(inst)
    everything = (1 << n) - 1
    opt = search.minimum_extra(0, everything, n)
    assert opt is not None, "every superedge has an edge, so the full vertex set covers"
    chosen, start, mask = [], 0, 0
    while not minrep_cover_check(inst, chosen).ok:
        for v in range(start, n):
            later = everything & ~((2 << v) - 1)
            if search.minimum_extra(mask | (1 << v), later, opt - len(chosen) - 1) is not None:
                chosen.append(v)
                mask |= 1 << v
                start = v + 1
                break
        else:  # pragma: no cover
            raise AssertionError("lexicographic witness reconstruction failed")
    return opt, tuple(chosen)


def has_projection_property(inst: MinRepInstance) -> bool:
    """Each superedge's bipartite graph is a union of disjoint stars headed in the
    left group, i.e. no right vertex has two neighbours in the same left group."""
    for edges in inst.superedge_edges.values():
        heads: dict[int, int] = {}
        for a, b in edges:
            if heads.setdefault(b, a) != a:
                return False
    return True


class MinRepReduction(NamedTuple):
    instance: SetCoverInstance
    element_map: dict[Superedge, tuple[int, int]]


def minrep_to_setcover(
    inst: MinRepInstance, elements_per_superedge: int, seed: int, per_vertex: bool = False
) -> MinRepReduction:
    """One set per Min-Rep vertex; superedge (i, j) owns a block M_ij of fresh
    elements, and each edge across it hands a random half of M_ij to its left
    end and the complementary half to its right end.

    Randomness comes from ``SplitMix64(seed)``, consumed superedge by superedge
    (sorted), edge by edge (sorted), one Fisher-Yates shuffle of the block per
    edge; the half is the first ``E // 2`` shuffled elements. With
    ``per_vertex`` one shuffle is drawn per left vertex instead and all of its
    right neighbours receive the complement.
    """
    e = elements_per_superedge
    if e < 2 or e % 2:
        raise InvalidInstance("elements per superedge must be an even number >= 2")
    rng = SplitMix64(seed)
    sets: list[set[int]] = [set() for _ in range(inst.num_vertices)]
    element_map = {}
    for k, (se, edges) in enumerate(inst.superedge_edges.items()):
        block = list(range(k * e, (k + 1) * e))
        element_map[se] = (k * e, (k + 1) * e)
        if per_vertex:
            by_head: dict[int, list[int]] = {}
            for a, b in edges:
                by_head.setdefault(a, []).append(b)
            for a, tails in by_head.items():
                perm = list(block)
                rng.shuffle(perm)
                sets[a].update(perm[: e // 2])
                for b in tails:
                    sets[b].update(perm[e // 2 :])
        else:
            for a, b in edges:
                perm = list(block)
                rng.shuffle(perm)
                sets[a].update(perm[: e // 2])
                sets[b].update(perm[e // 2 :])
    universe = len(element_map) * e
    return MinRepReduction(SetCoverInstance(universe, tuple(frozenset(s) for s in sets)), element_map)


def random_minrep(
    seed: int,
    left_groups: int,
    right_groups: int,
    group_size: int,
    edge_percent: int = 30,
    planted: bool = False,
) -> MinRepInstance:
    """Seeded random instance. With ``planted``, one representative per group is
    chosen and the two representatives of every superedge are joined, so a
    cover with one vertex per touched group exists."""
    rng = SplitMix64(seed)
    nl = left_groups * group_size
    left = [tuple(range(i * group_size, (i + 1) * group_size)) for i in range(left_groups)]
    right = [
        tuple(range(nl + j * group_size, nl + (j + 1) * group_size)) for j in range(right_groups)
    ]
    edges = set()
    for a in range(nl):
        for b in range(nl, nl + right_groups * group_size):
            if rng.below(100) < edge_percent:
                edges.add((a, b))
    if planted:
        reps_l = [g[rng.below(group_size)] for g in left]
        reps_r = [g[rng.below(group_size)] for g in right]
        touched = {(a // group_size, (b - nl) // group_size) for a, b in edges}
        for i, j in sorted(touched):
            edges.add((reps_l[i], reps_r[j]))
    return MinRepInstance(tuple(left), tuple(right), frozenset(edges))


def minrep_to_json(inst: MinRepInstance) -> str:
    return json.dumps(
        {
            "left": [list(g) for g in inst.left_groups],
            "right": [list(g) for g in inst.right_groups],
            "edges": [list(e) for e in sorted(inst.edges)],
        }
    )


def minrep_from_json(text: str) -> MinRepInstance:
    try:
        data = json.loads(text)
        return MinRepInstance(
            tuple(tuple(g) for g in data["left"]),
            tuple(tuple(g) for g in data["right"]),
            frozenset(tuple(e) for e in data["edges"]),
        )
    except (KeyError, TypeError, ValueError, InvalidInstance) as exc:
        raise FormatError(f"bad Min-Rep JSON: {exc}") from None


def element_map_to_json(element_map: dict[Superedge, tuple[int, int]]) -> str:
    return json.dumps(
        [{"superedge": list(se), "elements": list(rng)} for se, rng in element_map.items()]
    )
