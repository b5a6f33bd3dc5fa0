from itertools import product

from gapkit.corpus import (
    canonical_formulas,
    random_connected_graphs,
    random_formulas,
    random_setcovers,
    unsat_formulas,
)
from gapkit.sat import CnfInstance, max_sat_bruteforce


def canonical_key(cnf):
    """Smallest clause list over all variable renamings and sign flips (clause order ignored)."""
    best = None
    from itertools import permutations

    for perm in permutations(range(1, cnf.q + 1)):
        for signs in product((1, -1), repeat=cnf.q):
            mapped = sorted(
                tuple(sorted(signs[abs(x) - 1] * perm[abs(x) - 1] * (1 if x > 0 else -1) for x in c.to_ints()))
                for c in cnf.clauses
            )
            if best is None or mapped < best:
                best = mapped
    return tuple(best)


def test_canonical_corpus_covers_all_small_formulas():
    # every 3-CNF with distinct-variable clauses, m <= 2, q <= 4, appears up to symmetry
    seen = {canonical_key(c) for c in canonical_formulas(max_m=2, max_q=4) if c.q <= 4}
    clauses = [
        tuple(v * s for v, s in zip(vs, ss))
        for vs in [(a, b, c) for a in range(1, 5) for b in range(a + 1, 5) for c in range(b + 1, 5)]
        for ss in product((1, -1), repeat=3)
    ]
    for m in (1, 2):
        for combo in product(clauses, repeat=m):
            used = sorted({abs(x) for c in combo for x in c})
            relabel = {v: i + 1 for i, v in enumerate(used)}
            cnf = CnfInstance.from_ints(
                len(used), [tuple(relabel[abs(x)] * (1 if x > 0 else -1) for x in c) for c in combo]
            )
            assert canonical_key(cnf) in seen


def test_canonical_corpus_size():
    assert sum(1 for _ in canonical_formulas(max_m=2, max_q=6)) == 28


def test_unsat_formulas_are_unsat():
    formulas = unsat_formulas()
    assert len(formulas) >= 4
    for cnf in formulas:
        assert max_sat_bruteforce(cnf)[0] < cnf.m


def test_generators_are_seeded():
    assert random_formulas(1, 5) == random_formulas(1, 5)
    assert random_setcovers(2, 5) == random_setcovers(2, 5)
    graphs = random_connected_graphs(3, 20, 1, 8)
    assert graphs == random_connected_graphs(3, 20, 1, 8)
    assert all(g.is_connected() for g in graphs)
    for inst in random_setcovers(4, 50):
        inst.require_feasible()
