"""Claim suites: each checks one finite statement over a seeded or exhaustive corpus."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .clique_reduction import (
    clique_to_assignment,
    count_cliques_of_size,
    expand_supervertices,
    sat_to_clique,
    supervertex_clique_transform,
)
from .corpus import (
    canonical_formulas,
    random_connected_graphs,
    random_formulas,
    random_graphs,
    random_setcovers,
    unsat_formulas,
)
from .graph import (
    dense_q_subgraph_tree,
    densest_subgraph_bruteforce,
    graph_power,
    max_clique_exact,
    mmis_exact,
    verify_vertex_set,
)
from .harness import PipelineConfig, RtFunction, check_gap_condition, run_pipeline
from .minrep import minrep_cover_check, minrep_exact, minrep_to_setcover, random_minrep
from .mmis_reduction import build_yes_solution, sat_to_mmis
from .sat import CnfInstance, evaluate, max_sat_bruteforce, pad_variables_to_divisible, to_dimacs
from .setcover import (
    expand_cover,
    setcover_exact,
    setcover_greedy,
    union_closure_transform,
)

DEFAULT_SEED = 2024
BIG = 10**6  # cap override for oracles inside the suites


@dataclass
class ClaimResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures

    def fail(self, detail) -> None:
        if len(self.failures) < 20:
            self.failures.append(detail)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {len(self.failures)} failures, {self.seconds:.1f}s"

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checked": self.checked,
            "failures": [str(f) for f in self.failures],
            "seconds": round(self.seconds, 3),
        }


def _timed(name: str):
    def wrap(fn: Callable[..., None]) -> Callable[..., ClaimResult]:
        def run(*args, **kwargs) -> ClaimResult:
            res = ClaimResult(name)
            started = time.perf_counter()
            fn(res, *args, **kwargs)
            res.seconds = time.perf_counter() - started
            return res

        run.__name__ = fn.__name__
        run.__doc__ = fn.__doc__
        return run

    return wrap


def maxsat_corpus(seed: int = DEFAULT_SEED, random_count: int = 500) -> Iterable[CnfInstance]:
    yield from canonical_formulas(max_m=4, max_q=6)
    yield from random_formulas(seed, random_count, max_m=5)


@_timed("maxsat-clique")
def maxsat_clique(res: ClaimResult, formulas: Iterable[CnfInstance] | None = None) -> None:
    """Clique number of the clause-gadget graph equals the MaxSAT value."""
    for cnf in maxsat_corpus() if formulas is None else formulas:
        gg = sat_to_clique(cnf)
        omega, clique = max_clique_exact(gg.graph, BIG)
        best, _ = max_sat_bruteforce(cnf)
        res.checked += 1
        if omega != best:
            res.fail((to_dimacs(cnf), omega, best))
            continue
        tau = clique_to_assignment(gg, clique, cnf.q)
        if evaluate(cnf, tau) < omega:
            res.fail(("witness", to_dimacs(cnf)))


@_timed("supervertex-block")
def supervertex_block(res: ClaimResult, seed: int = DEFAULT_SEED, count: int = 200) -> None:
    """Blocking into B-cliques divides the clique number by B, rounding down."""
    for g in random_graphs(seed, count, 1, 12):
        omega, _ = max_clique_exact(g, BIG)
        for b in (1, 2, 3):
            if count_cliques_of_size(g, b) == 0:
                continue
            h, smap = supervertex_clique_transform(g, b, BIG)
            got, found = max_clique_exact(h, BIG)
            res.checked += 1
            if got != omega // b:
                res.fail((g.n, sorted(g.edges), b, got, omega))
            elif not verify_vertex_set(g, expand_supervertices(smap, found), "clique").ok:
                res.fail(("expanded clique invalid", g.n, b))


def power_cases(seed: int = DEFAULT_SEED, count: int = 300, max_vertices: int = 350):
    for g in random_graphs(seed, count, 1, 7):
        for k in (1, 2, 3):
            if g.n**k <= max_vertices:
                yield g, k


@_timed("power")
def power(res: ClaimResult, cases=None) -> None:
    """Clique number is multiplicative under the strong-product power."""
    for g, k in power_cases() if cases is None else cases:
        omega, _ = max_clique_exact(g, BIG)
        got, _ = max_clique_exact(graph_power(g, k, BIG), BIG)
        res.checked += 1
        if got != omega**k:
            res.fail((g.n, sorted(g.edges), k, got, omega))


@_timed("union-closure")
def union_closure(res: ClaimResult, seed: int = DEFAULT_SEED, count: int = 200) -> None:
    """Closing the family under unions of up to P sets divides OPT by P, rounding up."""
    for inst in random_setcovers(seed, count):
        opt, _ = setcover_exact(inst, BIG)
        for p in range(1, 5):
            if p > len(inst.family):
                continue
            new, prov = union_closure_transform(inst, p, BIG)
            got, witness = setcover_exact(new, BIG)
            res.checked += 1
            if got != -(-opt // p):
                res.fail((inst, p, got, opt))
            elif not inst.is_cover(expand_cover(prov, witness)):
                res.fail(("expanded cover invalid", inst, p))


@_timed("greedy-ratio")
def greedy_ratio(res: ClaimResult, seed: int = DEFAULT_SEED, count: int = 200) -> None:
    """Greedy cover is within ln(n) + 1 of optimal."""
    for inst in random_setcovers(seed, count):
        opt, _ = setcover_exact(inst, BIG)
        greedy = setcover_greedy(inst)
        res.checked += 1
        bound = (math.log(inst.universe_size) + 1) * opt
        if not inst.is_cover(greedy) or len(greedy) > bound:
            res.fail((inst, len(greedy), opt))


@_timed("minrep-soundness")
def minrep_soundness(res: ClaimResult, seed: int = DEFAULT_SEED, count: int = 50) -> None:
    """Min-Rep covers map to set covers, so set-cover OPT never exceeds Min-Rep OPT."""
    for i in range(count):
        inst = random_minrep(
            seed + i, 2 + i % 2, 2, 2 + i % 3, 20 + 5 * (i % 5), planted=i % 2 == 0
        )
        if not inst.superedges:
            continue
        opt, cover = minrep_exact(inst, BIG)
        if not minrep_cover_check(inst, cover).ok:
            res.fail(("minrep witness", i))
        for e in (2, 4, 8):
            red = minrep_to_setcover(inst, e, seed + i)
            again = minrep_to_setcover(inst, e, seed + i)
            res.checked += 1
            if red != again:
                res.fail(("not reproducible", i, e))
            elif not red.instance.is_cover(cover):
                res.fail(("cover does not map", i, e))
            elif setcover_exact(red.instance, BIG)[0] > opt:
                res.fail(("setcover above minrep", i, e))


def mmis_yes_corpus(seed: int = DEFAULT_SEED) -> Iterable[CnfInstance]:
    yield from canonical_formulas(max_m=3, max_q=6)
    yield from random_formulas(seed, 500, max_m=5)


@_timed("mmis-yes")
def mmis_yes(res: ClaimResult, formulas: Iterable[CnfInstance] | None = None) -> None:
    """Satisfiable formulas give a maximal independent set of size f."""
    for cnf in mmis_yes_corpus() if formulas is None else formulas:
        for f in range(1, 7):
            padded = pad_variables_to_divisible(cnf, f)
            if padded.q > 6:
                continue
            best, tau = max_sat_bruteforce(padded)
            if best < padded.m:
                break
            g = sat_to_mmis(padded, f)
            sol = build_yes_solution(padded, tau, f, g)
            k, _ = mmis_exact(g.graph, BIG)
            res.checked += 1
            ok = verify_vertex_set(g.graph, sol, "maximal-independent").ok
            if len(sol) != f or not ok or k > f:
                res.fail((to_dimacs(padded), f, len(sol), ok, k))


@_timed("mmis-no")
def mmis_no(res: ClaimResult, formulas: Iterable[CnfInstance] | None = None) -> None:
    """Unsatisfiable formulas force every maximal independent set above q."""
    for cnf in unsat_formulas() if formulas is None else formulas:
        if max_sat_bruteforce(cnf)[0] == cnf.m:
            res.fail(("satisfiable formula in the UNSAT corpus", to_dimacs(cnf)))
            continue
        for f in range(1, 5):
            padded = pad_variables_to_divisible(cnf, f)
            if padded.q > 6:
                continue
            k, witness = mmis_exact(sat_to_mmis(padded, f).graph, BIG)
            res.checked += 1
            if k <= padded.q:
                res.fail((to_dimacs(padded), f, k))


@_timed("dense-subgraph")
def dense_subgraph(res: ClaimResult, seed: int = DEFAULT_SEED, count: int = 100) -> None:
    """Densest q-subsets have at most (q + 2)(q - 1) edges; the BFS tree has q - 1."""
    for g in random_connected_graphs(seed, count, 1, 8):
        for q in range(1, g.n + 1):
            best, _ = densest_subgraph_bruteforce(g, q)
            tree = dense_q_subgraph_tree(g, q)
            res.checked += 1
            if tree.edge_count != q - 1 or best > (q + 2) * (q - 1):
                res.fail((g.n, sorted(g.edges), q, best, tree.edge_count))


GAP_YES = CnfInstance.from_ints(
    4,
    [(1, 2, 3), (-1, 2, 4), (1, -3, 4), (2, 3, -4), (-1, -2, 3), (1, 2, -4), (1, 3, 4), (-2, -3, -4)],
)
GAP_NO = CnfInstance.from_ints(
    3, [(a * 1, b * 2, c * 3) for a in (1, -1) for b in (1, -1) for c in (1, -1)]
)


def gap_config(**overrides) -> PipelineConfig:
    base = dict(
        chain="sat-clique",
        yes_text=to_dimacs(GAP_YES),
        no_text=to_dimacs(GAP_NO),
        r=RtFunction("constant", (1.0,)),
        t=RtFunction("power", (1.0, 1.0)),
    )
    base.update(overrides)
    return PipelineConfig(**base)


@_timed("gap-pipeline")
def gap_pipeline(res: ClaimResult) -> None:
    """Pipeline optima match the oracles and the report is reproducible."""
    # sat -> clique, B = 1: the yes optimum is m, the no optimum is maxsat
    cfg = gap_config()
    report = run_pipeline(cfg)
    res.checked += 1
    if (report.kappa_t, report.kappa_f) != (GAP_YES.m, max_sat_bruteforce(GAP_NO)[0]):
        res.fail(("clique optima", report.kappa_t, report.kappa_f))
    verdict, terms = check_gap_condition(report, cfg.r, cfg.t, GAP_YES.m)
    res.checked += 1
    if verdict != (report.kappa_f * 1.0 < report.kappa_t):
        res.fail(("gap verdict", terms))
    res.checked += 1
    if run_pipeline(cfg).to_json() != report.to_json():
        res.fail("rerun differs")
    # blocking then powering multiplies: f = m / B, yes optimum f^k
    for b, k in ((2, 1), (2, 2), (4, 2)):
        rep = run_pipeline(gap_config(block_size=b, power=k, caps={"clique": BIG}))
        res.checked += 1
        f_yes = GAP_YES.m // b
        f_no = max_sat_bruteforce(GAP_NO)[0] // b
        if (rep.kappa_t, rep.kappa_f) != (f_yes**k, f_no**k) or not all(
            rep.witness_checks.values()
        ):
            res.fail(("blocked", b, k, rep.kappa_t, rep.kappa_f))
    # sat -> mmis, f = 1
    rep = run_pipeline(gap_config(chain="sat-mmis", caps={"mmis": BIG}))
    res.checked += 1
    if rep.kappa_t != 1 or rep.kappa_f <= GAP_NO.q:
        res.fail(("mmis", rep.kappa_t, rep.kappa_f))


SUITES: dict[str, Callable[[], ClaimResult]] = {
    "maxsat-clique": maxsat_clique,
    "supervertex-block": supervertex_block,
    "power": power,
    "union-closure": union_closure,
    "greedy-ratio": greedy_ratio,
    "minrep-soundness": minrep_soundness,
    "mmis-yes": mmis_yes,
    "mmis-no": mmis_no,
    "dense-subgraph": dense_subgraph,
    "gap-pipeline": gap_pipeline,
}


def run_suites(names: Iterable[str]) -> list[ClaimResult]:
    names = list(names)
    if "all" in names:
        names = list(SUITES)
    return [SUITES[n]() for n in names]
