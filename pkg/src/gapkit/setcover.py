"""Set cover: instances, exact and greedy solvers, and the union-closure transform."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .errors import CapExceeded, FormatError, InfeasibleInstance, InvalidInstance
from .graph import bits, to_mask

DEFAULT_SETCOVER_CAP = 30
DEFAULT_UNION_CAP = 100_000


@dataclass(frozen=True)
class SetCoverInstance:
    universe_size: int
    family: tuple[frozenset[int], ...]

    def __post_init__(self):
        object.__setattr__(self, "family", tuple(frozenset(s) for s in self.family))
        for i, s in enumerate(self.family):
            for e in s:
                if not 0 <= e < self.universe_size:
                    raise InvalidInstance(f"set {i} holds element {e} outside the universe")

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(to_mask(s) for s in self.family)

    @property
    def full(self) -> int:
        return (1 << self.universe_size) - 1

    def uncovered_element(self, indices: Iterable[int] | None = None) -> int | None:
        """Smallest element missed by the chosen sets (all sets when ``indices`` is None)."""
        covered = 0
        for i in range(len(self.family)) if indices is None else indices:
            covered |= self.masks[i]
        missing = self.full & ~covered
        return None if not missing else (missing & -missing).bit_length() - 1

    def is_cover(self, indices: Iterable[int]) -> bool:
        return self.uncovered_element(indices) is None

    def require_feasible(self) -> None:
        e = self.uncovered_element()
        if e is not None:
            raise InfeasibleInstance(e)


class _CoverSearch:
    """Element-branching search for small covers over bitsets."""

    def __init__(self, masks: Sequence[int], universe_size: int):
        self.masks = masks
        self.containing = [0] * universe_size
        for i, m in enumerate(masks):
            for e in bits(m):
                self.containing[e] |= 1 << i

    def minimum(self, uncovered: int, allowed: int, limit: int) -> int | None:
        """Size of the smallest cover of ``uncovered`` by ``allowed`` sets, if it is <= limit."""
        best = limit + 1
        masks, containing = self.masks, self.containing

        def search(uncovered: int, allowed: int, depth: int) -> None:
            nonlocal best
            if not uncovered:
                best = min(best, depth)
                return
            if depth + 1 >= best:
                return
            pick = None
            for e in bits(uncovered):
                c = containing[e] & allowed
                if pick is None or c.bit_count() < pick.bit_count():
                    pick = c
                    if c.bit_count() <= 1:
                        break
            if not pick:
                return
            reach = max((masks[i] & uncovered).bit_count() for i in bits(allowed))
            if depth - (-uncovered.bit_count() // reach) >= best:
                return
            for i in sorted(bits(pick), key=lambda i: (-(masks[i] & uncovered).bit_count(), i)):
                search(uncovered & ~masks[i], allowed, depth + 1)
                allowed &= ~(1 << i)
                if depth + 1 >= best:
                    return

        search(uncovered, allowed, 0)
        return best if best <= limit else None


def setcover_exact(inst: SetCoverInstance, cap: int = DEFAULT_SETCOVER_CAP) -> tuple[int, tuple[int, ...]]:
    """Minimum cover; the witness is the lexicographically least optimal index tuple."""
    if len(inst.family) > cap:
        raise CapExceeded("sets for exact set cover", len(inst.family), cap)
    inst.require_feasible()
    search = _CoverSearch(inst.masks, inst.universe_size)
    everything = (1 << len(inst.family)) - 1
    opt = search.minimum(inst.full, everything, len(inst.family))
    chosen: list[int] = []
    uncovered, start = inst.full, 0
    while uncovered:
        for i in range(start, len(inst.family)):
            rest = uncovered & ~inst.masks[i]
            later = everything & ~((2 << i) - 1)
            if search.minimum(rest, later, opt - len(chosen) - 1) is not None:
                chosen.append(i)
                uncovered, start = rest, i + 1
                break
        else:  # pragma: no cover - opt is attainable by construction
            raise AssertionError("lexicographic witness reconstruction failed")
    return opt, tuple(chosen)


def setcover_greedy(inst: SetCoverInstance) -> tuple[int, ...]:
    """Pick the set covering most uncovered elements, lowest index on ties."""
    inst.require_feasible()
    uncovered, chosen = inst.full, []
    while uncovered:
        gains = [(m & uncovered).bit_count() for m in inst.masks]
        i = max(range(len(gains)), key=lambda j: (gains[j], -j))
        chosen.append(i)
        uncovered &= ~inst.masks[i]
    return tuple(chosen)


def union_family_size(family_size: int, p: int) -> int:
    return sum(comb(family_size, k) for k in range(1, p + 1))


def union_closure_transform(
    inst: SetCoverInstance, p: int, cap: int = DEFAULT_UNION_CAP, dedup: bool = False
) -> tuple[SetCoverInstance, tuple[tuple[int, ...], ...]]:
    """Replace the family by the unions of all subcollections of 1..p sets.

    New sets are ordered by subcollection size, then lexicographically; the
    provenance tuple lists the old indices behind each new set. With
    ``dedup`` only the first subcollection producing a given union is kept.
    """
    if not 1 <= p <= max(len(inst.family), 1):
        raise InvalidInstance(f"union size {p} outside 1..{len(inst.family)}")
    size = union_family_size(len(inst.family), p)
    if size > cap:
        raise CapExceeded("sets after union closure", size, cap)
    family, provenance, seen = [], [], set()
    for k in range(1, p + 1):
        for combo in combinations(range(len(inst.family)), k):
            union = frozenset().union(*(inst.family[i] for i in combo))
            if dedup:
                if union in seen:
                    continue
                seen.add(union)
            family.append(union)
            provenance.append(combo)
    return SetCoverInstance(inst.universe_size, tuple(family)), tuple(provenance)


def expand_cover(provenance: Sequence[tuple[int, ...]], indices: Iterable[int]) -> tuple[int, ...]:
    """Old-instance indices behind a cover of the transformed instance."""
    return tuple(sorted({old for i in indices for old in provenance[i]}))


def to_setsys(inst: SetCoverInstance) -> str:
    lines = [f"{inst.universe_size} {len(inst.family)}"]
    lines += [" ".join(str(x) for x in [len(s), *sorted(s)]) for s in inst.family]
    return "\n".join(lines) + "\n"


def parse_setsys(text: str) -> SetCoverInstance:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    try:
        if not rows or len(rows[0]) != 2:
            raise FormatError("set system must start with 'universeSize familySize'")
        n, f = int(rows[0][0]), int(rows[0][1])
        family = []
        for lineno, row in enumerate(rows[1:], start=2):
            vals = [int(x) for x in row]
            if vals[0] != len(vals) - 1:
                raise FormatError(f"line {lineno}: count {vals[0]} but {len(vals) - 1} elements")
            family.append(frozenset(vals[1:]))
    except ValueError as exc:
        raise FormatError(f"non-integer token in set system: {exc}") from None
    if len(family) != f:
        raise FormatError(f"header declares {f} sets, found {len(family)}")
    try:
        return SetCoverInstance(n, tuple(family))
    except InvalidInstance as exc:
        raise FormatError(str(exc)) from None
