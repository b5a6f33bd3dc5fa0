"""3-CNF formulas: data model, DIMACS I/O, padding, and the exhaustive MaxSAT oracle."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import (
    ArityError,
    CapExceeded,
    DimacsParseError,
    HeaderError,
    InvalidInstance,
    PartialAssignment,
    TokenError,
    VariableRangeError,
)

DEFAULT_MAXSAT_CAP = 24

Assignment = dict[int, bool]


@dataclass(frozen=True, order=True)
class Literal:
    variable: int
    negated: bool = False

    def __post_init__(self):
        if self.variable < 1:
            raise InvalidInstance(f"literal variable must be >= 1, got {self.variable}")

    @classmethod
    def from_int(cls, lit: int) -> Literal:
        return cls(abs(lit), lit < 0)

    def to_int(self) -> int:
        return -self.variable if self.negated else self.variable

    def holds(self, value: bool) -> bool:
        return value != self.negated

    def __neg__(self) -> Literal:
        return Literal(self.variable, not self.negated)

    def __str__(self) -> str:
        return ("~x" if self.negated else "x") + str(self.variable)


@dataclass(frozen=True)
class Clause:
    literals: tuple[Literal, Literal, Literal]

    def __post_init__(self):
        if len(self.literals) != 3:
            raise InvalidInstance(f"a clause has exactly 3 literals, got {len(self.literals)}")

    @classmethod
    def of(cls, *lits: int) -> Clause:
        return cls(tuple(Literal.from_int(x) for x in lits))

    @property
    def variables(self) -> tuple[int, ...]:
        """Distinct variables, ascending."""
        return tuple(sorted({lit.variable for lit in self.literals}))

    def satisfied_by(self, values: Mapping[int, bool]) -> bool:
        return any(lit.holds(values[lit.variable]) for lit in self.literals)

    def to_ints(self) -> tuple[int, int, int]:
        return tuple(lit.to_int() for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " v ".join(str(lit) for lit in self.literals) + ")"


@dataclass(frozen=True)
class CnfInstance:
    num_variables: int
    clauses: tuple[Clause, ...] = ()

    def __post_init__(self):
        if self.num_variables < 0:
            raise InvalidInstance("negative variable count")
        object.__setattr__(self, "clauses", tuple(self.clauses))
        for c in self.clauses:
            for lit in c.literals:
                if lit.variable > self.num_variables:
                    raise InvalidInstance(
                        f"literal {lit} exceeds variable count {self.num_variables}"
                    )

    @classmethod
    def from_ints(cls, num_variables: int, clauses: Iterable[Iterable[int]]) -> CnfInstance:
        return cls(num_variables, tuple(Clause.of(*c) for c in clauses))

    @property
    def q(self) -> int:
        return self.num_variables

    @property
    def m(self) -> int:
        return len(self.clauses)


def parse_dimacs(text: str) -> CnfInstance:
    """Parse DIMACS CNF where every clause sits on its own ``0``-terminated line."""
    header = None
    clauses: list[Clause] = []
    lineno = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise HeaderError(lineno, "duplicate problem line")
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise HeaderError(lineno, f"expected 'p cnf <vars> <clauses>', got {line!r}")
            try:
                q, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise HeaderError(lineno, f"non-integer counts in {line!r}") from None
            if q < 0 or m < 0:
                raise HeaderError(lineno, "negative counts in problem line")
            header = (q, m)
            continue
        if header is None:
            raise HeaderError(lineno, "clause before 'p cnf' problem line")
        try:
            tokens = [int(tok) for tok in line.split()]
        except ValueError:
            bad = next(t for t in line.split() if not t.lstrip("-").isdigit())
            raise TokenError(lineno, f"non-integer token {bad!r}") from None
        if tokens[-1] != 0 or 0 in tokens[:-1]:
            raise TokenError(lineno, "clause line must hold exactly one terminating 0")
        lits = tokens[:-1]
        if len(lits) != 3:
            raise ArityError(lineno, f"clause has {len(lits)} literals, expected 3")
        for lit in lits:
            if abs(lit) > header[0]:
                raise VariableRangeError(
                    lineno, f"variable {abs(lit)} exceeds declared count {header[0]}"
                )
        clauses.append(Clause.of(*lits))
    if header is None:
        raise HeaderError(max(lineno, 1), "missing 'p cnf' problem line")
    if len(clauses) != header[1]:
        raise DimacsParseError(
            max(lineno, 1), f"header declares {header[1]} clauses, found {len(clauses)}"
        )
    return CnfInstance(header[0], tuple(clauses))


def to_dimacs(cnf: CnfInstance) -> str:
    lines = [f"p cnf {cnf.q} {cnf.m}"]
    lines += [" ".join(str(x) for x in c.to_ints()) + " 0" for c in cnf.clauses]
    return "\n".join(lines) + "\n"


def _with_tautologies(cnf: CnfInstance, count: int) -> CnfInstance:
    if count == 0:
        return cnf
    if cnf.q == 0:
        raise InvalidInstance("padding needs variable 1, but the formula has no variables")
    q = cnf.q
    added = tuple(Clause.of(1, -1, q + i) for i in range(1, count + 1))
    return CnfInstance(q + count, cnf.clauses + added)


def pad_clauses_to_divisible(cnf: CnfInstance, f: int) -> CnfInstance:
    """Append ``(x1 v ~x1 v z)`` clauses, one fresh ``z`` each, until ``f`` divides m."""
    if f < 1:
        raise ValueError("f must be >= 1")
    return _with_tautologies(cnf, -cnf.m % f)


def pad_variables_to_divisible(cnf: CnfInstance, f: int) -> CnfInstance:
    """Introduce fresh variables through tautological clauses until ``f`` divides q."""
    if f < 1:
        raise ValueError("f must be >= 1")
    if cnf.q < 1:
        raise InvalidInstance("variable padding needs q >= 1")
    return _with_tautologies(cnf, -cnf.q % f)


def evaluate(cnf: CnfInstance, a: Mapping[int, bool]) -> int:
    """Number of clauses satisfied by a total assignment."""
    missing = [v for v in range(1, cnf.q + 1) if v not in a]
    if missing:
        raise PartialAssignment(f"assignment misses variables {missing[:5]}")
    return sum(c.satisfied_by(a) for c in cnf.clauses)


def assignment_from_index(index: int, q: int) -> Assignment:
    """Assignment number ``index`` in lexicographic order (x1 most significant, False < True)."""
    return {v: bool((index >> (q - v)) & 1) for v in range(1, q + 1)}


def _truth_table(q: int, var: int) -> int:
    """Bitset over assignment indices 0..2**q-1 of those setting ``var`` True."""
    period = 1 << (q - var + 1)
    half = period >> 1
    x = ((1 << half) - 1) << half
    length = period
    while length < (1 << q):
        x |= x << length
        length <<= 1
    return x


def max_sat_bruteforce(cnf: CnfInstance, cap: int = DEFAULT_MAXSAT_CAP) -> tuple[int, Assignment]:
    """Exhaustive MaxSAT over all 2**q assignments at once.

    Each clause becomes a bitset over assignment indices; a bit-sliced binary
    counter adds them up, and the maximum is read off plane by plane from the
    top. The witness is the lexicographically first optimum.
    """
    q = cnf.q
    if q > cap:
        raise CapExceeded("variables for brute-force MaxSAT", q, cap)
    full = (1 << (1 << q)) - 1
    tables = {v: _truth_table(q, v) for v in range(1, q + 1)}
    planes: list[int] = []
    for clause in cnf.clauses:
        carry = 0
        for lit in clause.literals:
            t = tables[lit.variable]
            carry |= full & ~t if lit.negated else t
        for k, plane in enumerate(planes):
            planes[k], carry = plane ^ carry, plane & carry
        if carry:
            planes.append(carry)
    best, cand = 0, full
    for k in range(len(planes) - 1, -1, -1):
        if cand & planes[k]:
            cand &= planes[k]
            best |= 1 << k
    return best, assignment_from_index((cand & -cand).bit_length() - 1, q)


def is_satisfiable(cnf: CnfInstance, cap: int = DEFAULT_MAXSAT_CAP) -> bool:
    return max_sat_bruteforce(cnf, cap)[0] == cnf.m


def all_sign_patterns(variables: tuple[int, int, int] = (1, 2, 3)) -> CnfInstance:
    """The 8 clauses over three variables with every sign pattern; unsatisfiable, MaxSAT 7."""
    x, y, z = variables
    clauses = [
        (x * sx, y * sy, z * sz) for sx in (1, -1) for sy in (1, -1) for sz in (1, -1)
    ]
    return CnfInstance.from_ints(max(variables), clauses)
