import pytest
from hypothesis import given, settings, strategies as st

from gapkit.errors import CapExceeded, InvalidInstance, NotSatisfying
from gapkit.graph import mmis_exact, verify_vertex_set
from gapkit.mmis_reduction import (
    assignment_sets,
    build_yes_solution,
    induced_assignment,
    mmis_metadata_to_json,
    sat_to_mmis,
    supervertex_count,
)
from gapkit.sat import CnfInstance, all_sign_patterns, max_sat_bruteforce

from .oracles import mmis_size
from .test_sat import formulas

XYZ = CnfInstance.from_ints(3, [(1, 2, 3)])


def test_vertex_count_example():
    g = sat_to_mmis(XYZ, 1)
    assert g.graph.n == 11 == supervertex_count(3, 1) + 3
    assert mmis_exact(g.graph)[0] == 1


def test_unsat_example():
    g = sat_to_mmis(all_sign_patterns(), 1)
    assert mmis_exact(g.graph)[0] >= 4 == mmis_size(g.graph)


def test_requires_divisibility_and_cap():
    with pytest.raises(InvalidInstance):
        sat_to_mmis(XYZ, 2)
    with pytest.raises(CapExceeded):
        sat_to_mmis(XYZ, 1, cap=10)


def test_structure():
    cnf = CnfInstance.from_ints(4, [(1, -2, 3), (-1, 2, 4)])
    for f in (1, 2, 4):
        g = sat_to_mmis(cnf, f)
        s = len(g.supervertices)
        assert g.graph.n == supervertex_count(4, f) + 4 * cnf.m
        for lits in g.supervertices:
            assert len(lits) == 4 // f and len({abs(x) for x in lits}) == len(lits)
        # W blocks are independent, inside and across
        w = range(s, g.graph.n)
        assert not any(g.graph.has_edge(a, b) for a in w for b in w if a < b)
        # supervertices adjacent iff they share a variable
        for a in range(s):
            for b in range(a + 1, s):
                share = {abs(x) for x in g.supervertices[a]} & {abs(x) for x in g.supervertices[b]}
                assert g.graph.has_edge(a, b) == bool(share)
        # a supervertex hits W(C) iff it holds a literal of C
        for c, ids in enumerate(g.clause_copies):
            lits = set(cnf.clauses[c].to_ints())
            for a in range(s):
                assert g.graph.has_edge(a, ids[0]) == bool(g.supervertices[a] & lits)


def test_yes_solution_examples():
    cnf = CnfInstance.from_ints(4, [(1, 2, 3)])
    tau = {v: True for v in range(1, 5)}
    g = sat_to_mmis(cnf, 2)
    sol = build_yes_solution(cnf, tau, 2, g)
    assert {g.supervertices[i] for i in sol} == {frozenset({1, 2}), frozenset({3, 4})}
    assert verify_vertex_set(g.graph, sol, "independent").ok
    assert verify_vertex_set(g.graph, sol, "dominating").ok
    g1 = sat_to_mmis(XYZ, 1)
    assert len(build_yes_solution(XYZ, {1: True, 2: False, 3: False}, 1, g1)) == 1
    g3 = sat_to_mmis(XYZ, 3)
    sol = build_yes_solution(XYZ, {1: False, 2: True, 3: False}, 3, g3)
    assert {g3.supervertices[i] for i in sol} == {frozenset({-1}), frozenset({2}), frozenset({-3})}
    assert verify_vertex_set(g3.graph, sol, "maximal-independent").ok


def test_yes_solution_rejects_non_satisfying():
    with pytest.raises(NotSatisfying):
        build_yes_solution(XYZ, {1: False, 2: False, 3: False}, 1, sat_to_mmis(XYZ, 1))


def test_assignment_sets_contiguous():
    tau = {1: True, 2: False, 3: True, 4: False}
    assert assignment_sets(tau, 4, 2) == [frozenset({1, -2}), frozenset({3, -4})]


@settings(max_examples=60, deadline=None)
@given(formulas(max_q=6, max_m=4), st.sampled_from([1, 2, 3, 6]))
def test_yes_and_no_sides(cnf, f):
    if cnf.q % f:
        return
    g = sat_to_mmis(cnf, f)
    best, tau = max_sat_bruteforce(cnf)
    size, witness = mmis_exact(g.graph, 1000)
    assert verify_vertex_set(g.graph, witness, "maximal-independent").ok
    induced_assignment(g, witness)  # independent supervertices never disagree
    if best == cnf.m:
        sol = build_yes_solution(cnf, tau, f, g)
        assert len(sol) == f and size <= f
        assert verify_vertex_set(g.graph, sol, "maximal-independent").ok
    else:
        assert size > cnf.q


def test_metadata_json():
    g = sat_to_mmis(XYZ, 1)
    text = mmis_metadata_to_json(g)
    assert '"clauseCopies": [[8, 11]]' in text
