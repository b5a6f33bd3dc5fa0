"""Simple graphs, exact clique / MMIS oracles, graph powers and set predicates.

Vertex sets are handled as Python ints used as bitsets (bit ``v`` set means
vertex ``v`` is a member); the public API takes and returns ``frozenset``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Literal as Lit, NamedTuple, Sequence

import numpy as np

from .errors import CapExceeded, FormatError, GapkitError, InvalidInstance

DEFAULT_CLIQUE_CAP = 64
EXHAUSTIVE_CLIQUE_CAP = 20
DEFAULT_MMIS_CAP = 40
DEFAULT_POWER_CAP = 4096
# below this size relabeling costs more than the better colorings save
_RELABEL_FROM = 40

VertexSet = frozenset[int]
SupervertexMap = tuple[frozenset, ...]
Mode = Lit["clique", "independent", "dominating", "maximal-independent"]


def bits(mask: int) -> Iterable[int]:
    """Members of a bitset, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class SimpleGraph:
    """Undirected graph on vertices ``0..n-1`` without loops or parallel edges.

    Built either from an edge iterable or, with ``adjacency=``, from one
    neighbour bitset per vertex; the other representation is derived lazily.
    Equality and hashing go through the adjacency bitsets.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        *,
        adjacency: Sequence[int] | None = None,
    ):
        if n < 0:
            raise InvalidInstance("negative vertex count")
        self.n = n
        if adjacency is None:
            norm = set()
            for u, v in edges:
                if u == v:
                    raise InvalidInstance(f"loop at vertex {u}")
                if not (0 <= u < n and 0 <= v < n):
                    raise InvalidInstance(f"edge ({u}, {v}) out of range for n={n}")
                norm.add((u, v) if u < v else (v, u))
            self.__dict__["edges"] = frozenset(norm)
        else:
            adjacency = tuple(adjacency)
            if len(adjacency) != n:
                raise InvalidInstance("one adjacency bitset per vertex is required")
            for v, a in enumerate(adjacency):
                if a >> v & 1 or a >> n:
                    raise InvalidInstance(f"bad adjacency bitset for vertex {v}")
            self.__dict__["adjacency"] = adjacency

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> SimpleGraph:
        return cls(n, edges)

    @cached_property
    def edges(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (u, v) for u, a in enumerate(self.adjacency) for v in bits(a >> (u + 1) << (u + 1))
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, SimpleGraph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.n, self.adjacency))

    def __repr__(self) -> str:
        return f"SimpleGraph(n={self.n}, edges={len(self.edges)})"

    @classmethod
    def complete(cls, n: int) -> SimpleGraph:
        return cls(n, combinations(range(n), 2))

    @classmethod
    def cycle(cls, n: int) -> SimpleGraph:
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> SimpleGraph:
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def empty(cls, n: int) -> SimpleGraph:
        return cls(n)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def closed(self) -> tuple[int, ...]:
        return tuple(a | (1 << v) for v, a in enumerate(self.adjacency))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self.adjacency[v]))

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def induced_edge_count(self, vertices: Iterable[int]) -> int:
        mask = to_mask(vertices)
        return sum((self.adjacency[v] & mask).bit_count() for v in bits(mask)) // 2

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen, frontier = 1, 1
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= self.adjacency[v]
            frontier = nxt & ~seen
            seen |= frontier
        return seen == (1 << self.n) - 1


def _check_cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise CapExceeded(what, n, cap)


def _color_order(adj: Sequence[int], cand: int) -> tuple[list[int], list[int]]:
    """Greedy sequential coloring of ``cand``; vertices listed by ascending color."""
    order, colors = [], []
    color = 0
    while cand:
        color += 1
        q = cand
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            cand &= ~low
            order.append(v)
            colors.append(color)
    return order, colors


def max_clique_exact(g: SimpleGraph, cap: int = DEFAULT_CLIQUE_CAP) -> tuple[int, VertexSet]:
    """Branch and bound with greedy-coloring bounds over bitsets.

    Graphs above ``_RELABEL_FROM`` vertices are renumbered by descending
    degree (ties by index) before the search; either way the witness is a
    fixed function of the graph.
    """
    _check_cap(g.n, cap, "vertices for exact max clique")
    if g.n == 0:
        return 0, frozenset()
    if g.n <= _RELABEL_FROM:
        order = list(range(g.n))
        adj = g.adjacency
    else:
        order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
        pos = [0] * g.n
        for i, v in enumerate(order):
            pos[v] = i
        adj = [0] * g.n
        for u, v in g.edges:
            adj[pos[u]] |= 1 << pos[v]
            adj[pos[v]] |= 1 << pos[u]
    best: list[int] = []
    stack: list[int] = []

    def expand(cand: int) -> None:
        nonlocal best
        seq, colors = _color_order(adj, cand)
        for i in range(len(seq) - 1, -1, -1):
            if len(stack) + colors[i] <= len(best):
                return
            v = seq[i]
            stack.append(v)
            sub = cand & adj[v]
            if sub:
                expand(sub)
            elif len(stack) > len(best):
                best = list(stack)
            stack.pop()
            cand &= ~(1 << v)

    expand((1 << g.n) - 1)
    return len(best), frozenset(order[i] for i in best)


def max_clique_exhaustive(g: SimpleGraph) -> int:
    """Clique number by checking every vertex subset; tiny graphs only."""
    _check_cap(g.n, EXHAUSTIVE_CLIQUE_CAP, "vertices for exhaustive clique")
    adj = g.closed
    best = 0
    for mask in range(1, 1 << g.n):
        size = mask.bit_count()
        if size <= best:
            continue
        if all(adj[v] & mask == mask for v in bits(mask)):
            best = size
    return best


def graph_power(h: SimpleGraph, k: int, cap: int = DEFAULT_POWER_CAP) -> SimpleGraph:
    """Strong-product power: k-tuples in lexicographic order, joined when every
    coordinate pair is equal or adjacent."""
    if k < 1:
        raise ValueError("power must be >= 1")
    if h.n < 1:
        raise InvalidInstance("graph power needs at least one vertex")
    size = h.n**k
    _check_cap(size, cap, "vertices of graph power")
    closed = np.eye(h.n, dtype=np.uint8)
    for u, v in h.edges:
        closed[u, v] = closed[v, u] = 1
    out = closed
    for _ in range(k - 1):
        out = np.kron(out, closed)
    np.fill_diagonal(out, 0)
    packed = np.packbits(out.astype(bool), axis=1, bitorder="little")
    adjacency = [int.from_bytes(row.tobytes(), "little") for row in packed]
    return SimpleGraph(size, adjacency=adjacency)


def power_tuple(index: int, n: int, k: int) -> tuple[int, ...]:
    """Coordinates of vertex ``index`` of ``graph_power(h, k)`` for ``h`` on n vertices."""
    out = []
    for _ in range(k):
        index, r = divmod(index, n)
        out.append(r)
    return tuple(reversed(out))


class Verdict(NamedTuple):
    ok: bool
    violation: tuple[int, int] | int | None = None


def verify_vertex_set(g: SimpleGraph, s: Iterable[int], mode: Mode) -> Verdict:
    """Exact membership predicate; ``violation`` is the first offending pair or vertex."""
    members = sorted(set(s))
    for v in members:
        if not 0 <= v < g.n:
            raise InvalidInstance(f"vertex {v} out of range for n={g.n}")
    adj = g.adjacency
    mask = to_mask(members)
    if mode == "clique":
        for u, v in combinations(members, 2):
            if not adj[u] >> v & 1:
                return Verdict(False, (u, v))
        return Verdict(True)
    if mode in ("independent", "maximal-independent"):
        for u in members:
            hit = adj[u] & mask
            if hit:
                v = (hit & -hit).bit_length() - 1
                return Verdict(False, (min(u, v), max(u, v)))
        if mode == "independent":
            return Verdict(True)
    elif mode != "dominating":
        raise ValueError(f"unknown mode {mode!r}")
    for v in range(g.n):
        if not g.closed[v] & mask:
            return Verdict(False, v)
    return Verdict(True)


def greedy_maximal_independent_set(g: SimpleGraph, order: Iterable[int] | None = None) -> VertexSet:
    chosen, blocked = [], 0
    for v in range(g.n) if order is None else order:
        if not blocked >> v & 1:
            chosen.append(v)
            blocked |= g.closed[v]
    return frozenset(chosen)


def mmis_exact(g: SimpleGraph, cap: int = DEFAULT_MMIS_CAP) -> tuple[int, VertexSet]:
    """Minimum independent dominating set by branch and bound.

    Branching rule: some vertex of N[v] must join the set, for the undominated
    ``v`` with the fewest such candidates. Earlier siblings are excluded from
    later branches, so each set is reached once.
    """
    _check_cap(g.n, cap, "vertices for exact MMIS")
    if g.n == 0:
        return 0, frozenset()
    closed = g.closed
    best = sorted(greedy_maximal_independent_set(g))
    stack: list[int] = []

    def search(available: int, undominated: int) -> None:
        nonlocal best
        if not undominated:
            if len(stack) < len(best):
                best = list(stack)
            return
        pick, cands = -1, 0
        for v in bits(undominated):
            c = closed[v] & available
            if pick < 0 or c.bit_count() < cands.bit_count():
                pick, cands = v, c
                if c.bit_count() <= 1:
                    break
        if not cands:
            return
        reach = max((closed[u] & undominated).bit_count() for u in bits(available))
        need = -(-undominated.bit_count() // reach)
        if len(stack) + need >= len(best):
            return
        ranked = sorted(bits(cands), key=lambda u: (-(closed[u] & undominated).bit_count(), u))
        for u in ranked:
            stack.append(u)
            search(available & ~closed[u], undominated & ~closed[u])
            stack.pop()
            available &= ~(1 << u)
            if len(stack) + 1 >= len(best):
                return

    search((1 << g.n) - 1, (1 << g.n) - 1)
    return len(best), frozenset(best)


@dataclass(frozen=True)
class DenseSubgraphResult:
    vertices: VertexSet
    tree_edges: tuple[tuple[int, int], ...]
    induced_edges: int

    @property
    def edge_count(self) -> int:
        return len(self.tree_edges)


def dense_q_subgraph_tree(g: SimpleGraph, q: int) -> DenseSubgraphResult:
    """Baseline for Dense-q-subgraph: the first q vertices reached by BFS from
    vertex 0 together with their BFS tree (exactly q - 1 edges)."""
    if not 1 <= q <= g.n:
        raise InvalidInstance(f"q={q} outside 1..{g.n}")
    if not g.is_connected():
        raise InvalidInstance("dense_q_subgraph_tree needs a connected graph")
    seen = {0}
    order, tree = [0], []
    queue = deque([0])
    while queue and len(order) < q:
        u = queue.popleft()
        for v in g.neighbors(u):
            if v not in seen and len(order) < q:
                seen.add(v)
                order.append(v)
                tree.append((u, v))
                queue.append(v)
    return DenseSubgraphResult(frozenset(order), tuple(tree), g.induced_edge_count(order))


def densest_subgraph_bruteforce(g: SimpleGraph, q: int) -> tuple[int, VertexSet]:
    """Maximum number of edges induced by any q vertices (first maximizer in lex order)."""
    best, arg = -1, frozenset()
    for combo in combinations(range(g.n), q):
        e = g.induced_edge_count(combo)
        if e > best:
            best, arg = e, frozenset(combo)
    return best, arg


def to_edgelist(g: SimpleGraph) -> str:
    lines = [f"{g.n} {len(g.edges)}"] + [f"{u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def parse_edgelist(text: str) -> SimpleGraph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or len(rows[0]) != 2:
        raise FormatError("edge list must start with 'n e'")
    try:
        n, e = int(rows[0][0]), int(rows[0][1])
        edges = []
        for lineno, row in enumerate(rows[1:], start=2):
            if len(row) != 2:
                raise FormatError(f"line {lineno}: expected 'u v'")
            edges.append((int(row[0]), int(row[1])))
    except ValueError as exc:
        raise FormatError(f"non-integer token in edge list: {exc}") from None
    if len(edges) != e:
        raise FormatError(f"header declares {e} edges, found {len(edges)}")
    try:
        g = SimpleGraph.from_edges(n, edges)
    except GapkitError as exc:
        raise FormatError(str(exc)) from None
    if len(g.edges) != e:
        raise FormatError("parallel edges in edge list")
    return g


def supervertex_map_to_json(smap: SupervertexMap) -> str:
    return json.dumps([sorted(s) for s in smap])


def supervertex_map_from_json(text: str) -> SupervertexMap:
    data = json.loads(text)
    if not isinstance(data, list) or not all(isinstance(s, list) and s for s in data):
        raise FormatError("supervertex map must be a JSON array of nonempty arrays")
    return tuple(frozenset(s) for s in data)
