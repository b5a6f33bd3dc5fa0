from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from gapkit.corpus import random_formula
from gapkit.errors import (
    ArityError,
    CapExceeded,
    DimacsParseError,
    HeaderError,
    InvalidInstance,
    PartialAssignment,
    TokenError,
    VariableRangeError,
)
from gapkit.rng import SplitMix64
from gapkit.sat import (
    Clause,
    CnfInstance,
    Literal,
    all_sign_patterns,
    evaluate,
    is_satisfiable,
    max_sat_bruteforce,
    pad_clauses_to_divisible,
    pad_variables_to_divisible,
    parse_dimacs,
    to_dimacs,
)


def brute(cnf):
    """Direct enumeration in lexicographic order, x1 most significant."""
    best, arg = -1, None
    for values in product((False, True), repeat=cnf.q):
        a = dict(enumerate(values, start=1))
        score = evaluate(cnf, a)
        if score > best:
            best, arg = score, a
    return best, arg


@st.composite
def formulas(draw, max_q=6, max_m=6):
    q = draw(st.integers(1, max_q))
    m = draw(st.integers(0, max_m))
    lit = st.integers(1, q).flatmap(lambda v: st.sampled_from([v, -v]))
    return CnfInstance.from_ints(q, [draw(st.tuples(lit, lit, lit)) for _ in range(m)])


def test_parse_single_clause():
    cnf = parse_dimacs("p cnf 3 1\n1 2 3 0")
    assert cnf == CnfInstance(3, (Clause.of(1, 2, 3),))


def test_parse_empty_formula():
    assert parse_dimacs("p cnf 2 0") == CnfInstance(2, ())


def test_parse_comments_and_crlf():
    cnf = parse_dimacs("c hi\r\np cnf 3 2\r\n1 -2 3 0\r\n-1 2 -3 0\r\n")
    assert cnf.m == 2 and cnf.clauses[1].to_ints() == (-1, 2, -3)


@pytest.mark.parametrize(
    "text, error, line",
    [
        ("p cnf 3 1\n1 2 0", ArityError, 2),
        ("p cnf 3 1\n1 2 4 0", VariableRangeError, 2),
        ("p cnf 3 1\n1 x 3 0", TokenError, 2),
        ("p cnf 3 1\n1 2 3", TokenError, 2),
        ("p dnf 3 1\n1 2 3 0", HeaderError, 1),
        ("1 2 3 0", HeaderError, 1),
        ("", HeaderError, 1),
        ("p cnf 3 2\n1 2 3 0", DimacsParseError, 2),
    ],
)
def test_parse_errors(text, error, line):
    with pytest.raises(error) as info:
        parse_dimacs(text)
    assert info.value.line == line
    assert f"line {line}" in str(info.value)


def test_distinct_error_types():
    assert len({ArityError, VariableRangeError, TokenError, HeaderError}) == 4


@given(formulas())
def test_dimacs_roundtrip(cnf):
    assert parse_dimacs(to_dimacs(cnf)) == cnf


def test_clause_needs_three_literals():
    with pytest.raises(InvalidInstance):
        Clause((Literal(1, False),))
    with pytest.raises(InvalidInstance):
        CnfInstance.from_ints(2, [(1, 2, 3)])


def test_pad_clauses_examples():
    five = CnfInstance.from_ints(4, [(1, 2, 3)] * 5)
    padded = pad_clauses_to_divisible(five, 3)
    assert (padded.m, padded.q) == (6, 5)
    assert padded.clauses[-1].to_ints() == (1, -1, 5)
    six = CnfInstance.from_ints(3, [(1, 2, 3)] * 6)
    assert pad_clauses_to_divisible(six, 3) is six
    one = CnfInstance.from_ints(3, [(1, 2, -3)])
    padded = pad_clauses_to_divisible(one, 4)
    assert (padded.m, padded.q) == (4, 6)
    assert max_sat_bruteforce(padded)[0] == max_sat_bruteforce(one)[0] + 3


def test_pad_without_variables():
    # with q = 0 the formula is empty, so clause padding has nothing to add
    assert pad_clauses_to_divisible(CnfInstance(0, ()), 3).m == 0
    with pytest.raises(InvalidInstance):
        pad_variables_to_divisible(CnfInstance(0, ()), 2)


def test_pad_variables_examples():
    q5 = CnfInstance.from_ints(5, [(1, 2, 5)])
    assert pad_variables_to_divisible(q5, 2).q == 6
    q4 = CnfInstance.from_ints(4, [(1, 2, 4)])
    assert pad_variables_to_divisible(q4, 2) is q4
    base = all_sign_patterns()
    padded = pad_variables_to_divisible(base, 2)
    assert padded.q == 4 and is_satisfiable(padded) == is_satisfiable(base) is False


@settings(max_examples=60)
@given(formulas(max_q=5, max_m=5), st.integers(1, 4))
def test_padding_preserves_maxsat_deficit(cnf, f):
    for pad in (pad_clauses_to_divisible, pad_variables_to_divisible):
        out = pad(cnf, f)
        added = out.m - cnf.m
        assert added < f
        assert (out.m if pad is pad_clauses_to_divisible else out.q) % f == 0
        assert max_sat_bruteforce(out)[0] == max_sat_bruteforce(cnf)[0] + added


def test_evaluate_examples():
    c = CnfInstance.from_ints(3, [(1, 2, 3)])
    assert evaluate(c, {1: False, 2: False, 3: False}) == 0
    assert evaluate(c, {1: True, 2: True, 3: True}) == 1
    eight = all_sign_patterns()
    for values in product((False, True), repeat=3):
        assert evaluate(eight, dict(enumerate(values, start=1))) == 7
    with pytest.raises(PartialAssignment):
        evaluate(c, {1: True})


def test_maxsat_examples():
    assert max_sat_bruteforce(CnfInstance.from_ints(3, [(1, 2, 3)])) == (
        1,
        {1: False, 2: False, 3: True},
    )
    assert max_sat_bruteforce(CnfInstance(2, ())) == (0, {1: False, 2: False})
    assert max_sat_bruteforce(all_sign_patterns())[0] == 7


def test_maxsat_cap():
    with pytest.raises(CapExceeded):
        max_sat_bruteforce(CnfInstance(25, ()))
    assert max_sat_bruteforce(CnfInstance(25, ()), cap=25)[0] == 0


@settings(max_examples=150)
@given(formulas())
def test_maxsat_matches_enumeration(cnf):
    assert max_sat_bruteforce(cnf) == brute(cnf)


@settings(max_examples=50)
@given(formulas(max_m=5))
def test_maxsat_monotone_under_deletion(cnf):
    best = max_sat_bruteforce(cnf)[0]
    for i in range(cnf.m):
        smaller = CnfInstance(cnf.q, cnf.clauses[:i] + cnf.clauses[i + 1 :])
        assert best - 1 <= max_sat_bruteforce(smaller)[0] <= best
    assert is_satisfiable(cnf) == (best == cnf.m)


def test_random_formula_small_q():
    rng = SplitMix64(3)
    for q in (1, 2, 3):
        cnf = random_formula(rng, q, 4)
        assert cnf.q == q and cnf.m == 4
