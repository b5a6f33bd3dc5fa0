"""End-to-end pipelines, gap reports and the finite-scale gap-condition checker."""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, NamedTuple

from .clique_reduction import (
    expand_supervertices,
    gadgets_to_json,
    sat_to_clique,
    supervertex_clique_transform,
)
from .errors import CapExceeded, GapkitError, InvalidInstance
from .graph import (
    DEFAULT_CLIQUE_CAP,
    DEFAULT_MMIS_CAP,
    DEFAULT_POWER_CAP,
    graph_power,
    max_clique_exact,
    mmis_exact,
    power_tuple,
    supervertex_map_to_json,
    to_edgelist,
    verify_vertex_set,
)
from .minrep import (
    MinRepInstance,
    element_map_to_json,
    minrep_from_json,
    minrep_to_setcover,
)
from .mmis_reduction import build_yes_solution, mmis_metadata_to_json, sat_to_mmis
from .sat import (
    DEFAULT_MAXSAT_CAP,
    evaluate,
    max_sat_bruteforce,
    pad_clauses_to_divisible,
    pad_variables_to_divisible,
    parse_dimacs,
)
from .setcover import (
    DEFAULT_SETCOVER_CAP,
    SetCoverInstance,
    expand_cover,
    parse_setsys,
    setcover_exact,
    to_setsys,
    union_closure_transform,
)

CHAINS = ("sat-clique", "sat-mmis", "setcover-union", "minrep-setcover")


class MissingOptimum(GapkitError):
    pass


class NonMonotone(GapkitError):
    pass


@dataclass(frozen=True)
class RtFunction:
    """Ratio / time functions of the optimum, restricted to four families.

    ``constant``  (c,)         -> c
    ``power``     (a, b)       -> a * k**b
    ``polylog``   (a, gamma)   -> a * (log2 k)**gamma
    ``exp-exp``   (gamma,)     -> exp(exp((log2 k)**gamma))
    """

    family: str
    params: tuple[float, ...]

    def __post_init__(self):
        arity = {"constant": 1, "power": 2, "polylog": 2, "exp-exp": 1}
        if self.family not in arity:
            raise InvalidInstance(f"unknown function family {self.family!r}")
        if len(self.params) != arity[self.family]:
            raise InvalidInstance(f"{self.family} takes {arity[self.family]} parameter(s)")

    @classmethod
    def parse(cls, text: str) -> RtFunction:
        """``family:p1,p2`` e.g. ``constant:2`` or ``polylog:1,0.5``."""
        family, _, rest = text.partition(":")
        params = tuple(float(x) for x in rest.split(",")) if rest else ()
        return cls(family, params)

    def __call__(self, k: float) -> float:
        p = self.params
        if self.family == "constant":
            return p[0]
        if self.family == "power":
            return p[0] * k ** p[1]
        lg = math.log2(k) if k > 0 else 0.0
        if self.family == "polylog":
            return p[0] * lg ** p[1]
        try:
            return math.exp(math.exp(lg ** p[0]))
        except OverflowError:
            return math.inf

    def check_monotone(self, grid) -> None:
        values = [self(k) for k in grid]
        for k, a, b in zip(grid[1:], values, values[1:]):
            if b < a:
                raise NonMonotone(f"{self.family}{self.params} decreases at k={k}")

    def as_dict(self) -> dict:
        return {"family": self.family, "params": list(self.params)}


def instance_descriptor(fmt: str, text: str, **sizes: int) -> dict:
    return {"format": fmt, **sizes, "sha256": hashlib.sha256(text.encode()).hexdigest()}


@dataclass
class GapReport:
    """JSON-serializable record of one yes/no pipeline run.

    ``sense`` is ``min`` or ``max``; ``gapRatio`` is kappaF/kappaT for
    minimization and kappaT/kappaF for maximization (None on a zero
    denominator). ``constructionTime`` stays None unless timing was requested,
    which keeps reports byte-identical across reruns.
    """

    chain: str
    sense: str
    source_instance: dict
    reduction_chain: list
    output_size: dict
    kappa_t: int | None
    kappa_f: int | None
    certification: dict = field(default_factory=dict)
    witness_checks: dict = field(default_factory=dict)
    construction_time: float | None = None
    gap_check: dict | None = None

    @property
    def gap_ratio(self) -> float | None:
        if self.kappa_t is None or self.kappa_f is None:
            return None
        num, den = (
            (self.kappa_f, self.kappa_t) if self.sense == "min" else (self.kappa_t, self.kappa_f)
        )
        return None if den == 0 else num / den

    def to_dict(self) -> dict:
        return {
            "chain": self.chain,
            "sense": self.sense,
            "sourceInstance": self.source_instance,
            "reductionChain": self.reduction_chain,
            "outputSize": self.output_size,
            "kappaT": self.kappa_t,
            "kappaF": self.kappa_f,
            "gapRatio": self.gap_ratio,
            "certification": self.certification,
            "witnessChecks": self.witness_checks,
            "constructionTime": self.construction_time,
            "gapCheck": self.gap_check,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> GapReport:
        return cls(
            chain=d["chain"],
            sense=d["sense"],
            source_instance=d["sourceInstance"],
            reduction_chain=d["reductionChain"],
            output_size=d["outputSize"],
            kappa_t=d["kappaT"],
            kappa_f=d["kappaF"],
            certification=d.get("certification", {}),
            witness_checks=d.get("witnessChecks", {}),
            construction_time=d.get("constructionTime"),
            gap_check=d.get("gapCheck"),
        )


class GapCheck(NamedTuple):
    verdict: bool
    terms: dict


def check_gap_condition(report: GapReport, r: RtFunction, t: RtFunction, m: int) -> GapCheck:
    """Evaluate the separation a ratio-r algorithm could not bridge.

    Minimization: ``kappaT * r(kappaT) < kappaF``. Maximization (mirror
    image): ``kappaF * r(kappaT) < kappaT``. ``t(kappaT)`` and the output size
    are returned as raw numbers next to m; no asymptotic verdict is drawn.
    """
    kt, kf = report.kappa_t, report.kappa_f
    if kt is None or kf is None:
        raise MissingOptimum("the gap condition needs both kappaT and kappaF")
    grid = list(range(1, max(kt, kf, 2) + 1))
    r.check_monotone(grid)
    t.check_monotone(grid)
    rk = r(kt)
    if report.sense == "min":
        lhs, rhs = kt * rk, kf
    else:
        lhs, rhs = kf * rk, kt
    terms = {
        "sense": report.sense,
        "kappaT": kt,
        "kappaF": kf,
        "r": r.as_dict(),
        "t": t.as_dict(),
        "rAtKappaT": rk,
        "lhs": lhs,
        "rhs": rhs,
        "tAtKappaT": t(kt),
        "m": m,
        "outputSize": report.output_size,
    }
    return GapCheck(lhs < rhs, terms)


@dataclass
class PipelineConfig:
    chain: str
    yes_text: str
    no_text: str
    block_size: int = 1
    power: int = 1
    f: int = 1
    union: int = 1
    elements_per_superedge: int = 4
    seed: int = 0
    caps: dict = field(default_factory=dict)
    timing: bool = False
    r: RtFunction | None = None
    t: RtFunction | None = None

    @classmethod
    def from_file(cls, path: str | Path) -> PipelineConfig:
        """JSON config; ``yes`` / ``no`` are paths relative to the config file,
        or ``yesText`` / ``noText`` give the instances inline."""
        path = Path(path)
        data = json.loads(path.read_text())
        return cls.from_dict(data, base=path.parent)

    @classmethod
    def from_dict(cls, data: dict, base: Path = Path(".")) -> PipelineConfig:
        def text(side: str) -> str:
            if f"{side}Text" in data:
                return data[f"{side}Text"]
            if side in data:
                return (base / data[side]).read_text()
            raise InvalidInstance(f"pipeline config lacks '{side}' or '{side}Text'")

        return cls(
            chain=data["chain"],
            yes_text=text("yes"),
            no_text=text("no"),
            block_size=data.get("blockSize", 1),
            power=data.get("power", 1),
            f=data.get("f", 1),
            union=data.get("union", 1),
            elements_per_superedge=data.get("elementsPerSuperedge", 4),
            seed=data.get("seed", 0),
            caps=data.get("caps", {}),
            timing=data.get("timing", False),
            r=RtFunction.parse(data["r"]) if "r" in data else None,
            t=RtFunction.parse(data["t"]) if "t" in data else None,
        )


class _Side(NamedTuple):
    descriptor: dict
    size: dict
    kappa: int
    certification: str
    witness_ok: bool
    files: dict


def _cap(cfg: PipelineConfig, name: str, default: int) -> int:
    return int(cfg.caps.get(name, default))


def _staged(stage: str, fn: Callable, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except CapExceeded as exc:
        exc.stage = stage
        exc.args = (f"[{stage}] {exc.what}: {exc.size} exceeds cap {exc.cap}",)
        raise


def _clique_side(cfg: PipelineConfig, text: str, label: str) -> _Side:
    cnf = parse_dimacs(text)
    b, k = cfg.block_size, cfg.power
    padded = pad_clauses_to_divisible(cnf, b)
    gg = sat_to_clique(padded)
    base, smap = gg.graph, None
    if b > 1:
        base, smap = _staged(
            "supervertex",
            supervertex_clique_transform,
            gg.graph,
            b,
            _cap(cfg, "supervertices", 20000),
        )
    clique_cap = _cap(cfg, "clique", DEFAULT_CLIQUE_CAP)
    power_cap = _cap(cfg, "power", DEFAULT_POWER_CAP)
    final = base
    if k > 1 and 0 < base.n**k <= min(clique_cap, power_cap):
        final = _staged("power", graph_power, base, k, power_cap)
    if final is base:
        base_omega, found = _staged("max-clique", max_clique_exact, base, clique_cap)
        omega = base_omega**k
        how = "oracle" if k == 1 or base.n == 0 else "power-theorem"
        base_clique = set(found)
        ok = True
    else:
        omega, found = _staged("max-clique", max_clique_exact, final, clique_cap)
        how = "oracle"
        ok = verify_vertex_set(final, found, "clique").ok
        # every coordinate projection of a power clique is a clique of the base
        base_clique = max(
            ({power_tuple(v, base.n, k)[i] for v in found} for i in range(k)), key=len
        )
    gadget_clique = expand_supervertices(smap, base_clique) if smap else frozenset(base_clique)
    ok = ok and verify_vertex_set(gg.graph, gadget_clique, "clique").ok
    tau = {v: False for v in range(1, padded.q + 1)}
    for i in gadget_clique:
        tau.update(gg.gadgets[i].as_dict())
    ok = ok and evaluate(padded, tau) >= len(gadget_clique)
    size = {
        "q": padded.q,
        "m": padded.m,
        "gadgetVertices": gg.graph.n,
        "gadgetEdges": len(gg.graph.edges),
        "supervertices": base.n if smap else None,
        "vertices": base.n**k,
    }
    files = {f"{label}.gadgets.json": gadgets_to_json(gg.gadgets)}
    files[f"{label}.graph.edgelist"] = to_edgelist(final)
    if smap:
        files[f"{label}.supervertices.json"] = supervertex_map_to_json(smap)
    desc = instance_descriptor("dimacs", text, q=cnf.q, m=cnf.m)
    return _Side(desc, size, omega, how, ok, files)


def _mmis_side(cfg: PipelineConfig, text: str, label: str, yes: bool) -> _Side:
    cnf = parse_dimacs(text)
    padded = pad_variables_to_divisible(cnf, cfg.f)
    g = _staged("sat-mmis", sat_to_mmis, padded, cfg.f, _cap(cfg, "mmisBuild", 100_000))
    cap = _cap(cfg, "mmis", DEFAULT_MMIS_CAP)
    size = {
        "q": padded.q,
        "m": padded.m,
        "supervertices": len(g.supervertices),
        "vertices": g.graph.n,
        "edges": len(g.graph.edges),
    }
    files = {
        f"{label}.graph.edgelist": to_edgelist(g.graph),
        f"{label}.mmis.json": mmis_metadata_to_json(g),
    }
    desc = instance_descriptor("dimacs", text, q=cnf.q, m=cnf.m)
    sat_cap = _cap(cfg, "maxsat", DEFAULT_MAXSAT_CAP)
    best, tau = _staged("maxsat", max_sat_bruteforce, padded, sat_cap)
    satisfiable = best == padded.m
    if g.graph.n <= cap:
        kappa, witness = mmis_exact(g.graph, cap)
        ok = verify_vertex_set(g.graph, witness, "maximal-independent").ok
        if yes and satisfiable:
            sol = build_yes_solution(padded, tau, cfg.f, g)
            ok = ok and verify_vertex_set(g.graph, sol, "maximal-independent").ok
        return _Side(desc, size, kappa, "oracle", ok, files)
    if yes and satisfiable:
        sol = build_yes_solution(padded, tau, cfg.f, g)
        ok = verify_vertex_set(g.graph, sol, "maximal-independent").ok
        return _Side(desc, size, len(sol), "construction-upper-bound", ok, files)
    if not satisfiable:
        return _Side(desc, size, padded.q + 1, "unsat-lower-bound", True, files)
    raise CapExceeded("vertices for exact MMIS", g.graph.n, cap, stage="mmis")


def _cover_side(
    cfg: PipelineConfig, inst: SetCoverInstance, label: str, desc: dict, size: dict, files: dict
) -> _Side:
    new, provenance = inst, tuple((i,) for i in range(len(inst.family)))
    if cfg.union > 1:
        new, provenance = _staged(
            "union", union_closure_transform, inst, cfg.union, _cap(cfg, "union", 100_000)
        )
        files[f"{label}.provenance.json"] = json.dumps([list(p) for p in provenance])
    kappa, witness = _staged(
        "setcover", setcover_exact, new, _cap(cfg, "setcover", DEFAULT_SETCOVER_CAP)
    )
    expanded = expand_cover(provenance, witness)
    ok = inst.is_cover(expanded) and len(expanded) <= cfg.union * kappa
    size = {**size, "elements": new.universe_size, "sets": len(new.family)}
    files[f"{label}.setsys"] = to_setsys(new)
    return _Side(desc, size, kappa, "oracle", ok, files)


def _setcover_side(cfg: PipelineConfig, text: str, label: str) -> _Side:
    inst = parse_setsys(text)
    desc = instance_descriptor("setsys", text, elements=inst.universe_size, sets=len(inst.family))
    return _cover_side(cfg, inst, label, desc, {}, {})


def _minrep_side(cfg: PipelineConfig, text: str, label: str) -> _Side:
    inst: MinRepInstance = minrep_from_json(text)
    desc = instance_descriptor(
        "minrep-json", text, vertices=inst.num_vertices, superedges=len(inst.superedges)
    )
    red = minrep_to_setcover(inst, cfg.elements_per_superedge, cfg.seed)
    files = {f"{label}.elements.json": element_map_to_json(red.element_map)}
    return _cover_side(cfg, red.instance, label, desc, {"minrepVertices": inst.num_vertices}, files)


def _chain_steps(cfg: PipelineConfig) -> list:
    if cfg.chain == "sat-clique":
        steps = [
            {"op": "pad_clauses_to_divisible", "params": {"f": cfg.block_size}},
            {"op": "sat_to_clique", "params": {}},
        ]
        if cfg.block_size > 1:
            steps.append({"op": "supervertex_clique_transform", "params": {"B": cfg.block_size}})
        if cfg.power > 1:
            steps.append({"op": "graph_power", "params": {"k": cfg.power}})
        return steps
    if cfg.chain == "sat-mmis":
        return [
            {"op": "pad_variables_to_divisible", "params": {"f": cfg.f}},
            {"op": "sat_to_mmis", "params": {"f": cfg.f}},
        ]
    steps = []
    if cfg.chain == "minrep-setcover":
        steps.append(
            {
                "op": "minrep_to_setcover",
                "params": {"elementsPerSuperedge": cfg.elements_per_superedge},
                "seed": cfg.seed,
            }
        )
    if cfg.union > 1:
        steps.append({"op": "union_closure_transform", "params": {"P": cfg.union}})
    return steps


def run_pipeline(cfg: PipelineConfig, out: str | Path | None = None) -> GapReport:
    """Reduce both instances, solve with the exact oracles, and report the gap.

    With ``out`` the reduced instances and ``report.json`` are written there.
    """
    if cfg.chain not in CHAINS:
        raise InvalidInstance(f"unknown chain {cfg.chain!r}; expected one of {CHAINS}")
    started = time.perf_counter()
    if cfg.chain == "sat-clique":
        yes, no = _clique_side(cfg, cfg.yes_text, "yes"), _clique_side(cfg, cfg.no_text, "no")
        sense = "max"
    elif cfg.chain == "sat-mmis":
        yes = _mmis_side(cfg, cfg.yes_text, "yes", True)
        no = _mmis_side(cfg, cfg.no_text, "no", False)
        sense = "min"
    elif cfg.chain == "setcover-union":
        yes, no = _setcover_side(cfg, cfg.yes_text, "yes"), _setcover_side(cfg, cfg.no_text, "no")
        sense = "min"
    else:
        yes, no = _minrep_side(cfg, cfg.yes_text, "yes"), _minrep_side(cfg, cfg.no_text, "no")
        sense = "min"
    elapsed = time.perf_counter() - started
    report = GapReport(
        chain=cfg.chain,
        sense=sense,
        source_instance={"yes": yes.descriptor, "no": no.descriptor},
        reduction_chain=_chain_steps(cfg),
        output_size={"yes": yes.size, "no": no.size},
        kappa_t=yes.kappa,
        kappa_f=no.kappa,
        certification={"kappaT": yes.certification, "kappaF": no.certification},
        witness_checks={"yes": yes.witness_ok, "no": no.witness_ok},
        construction_time=round(elapsed, 6) if cfg.timing else None,
    )
    if cfg.r is not None:
        t = cfg.t or RtFunction("constant", (1.0,))
        m = parse_dimacs(cfg.yes_text).m if cfg.chain.startswith("sat") else 0
        report.gap_check = dict(zip(("verdict", "terms"), check_gap_condition(report, cfg.r, t, m)))
    if out is not None:
        out = Path(out)
        out.mkdir(parents=True, exist_ok=True)
        for name, content in {**yes.files, **no.files}.items():
            (out / name).write_text(content)
        (out / "report.json").write_text(report.to_json())
    return report


def size_sweep(chain: str, ms: list[int], seed: int, **params: Any) -> str:
    """CSV of construction sizes against the clause count m for random formulas
    with q = m variables (clique and MMIS chains)."""
    from .corpus import random_formula
    from .rng import SplitMix64

    rng = SplitMix64(seed)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["m", "q", "vertices", "edges", "seconds"])
    for m in ms:
        cnf = random_formula(rng, max(m, 3), m)
        started = time.perf_counter()
        if chain == "sat-clique":
            block = params.get("block_size", 1)
            g = sat_to_clique(pad_clauses_to_divisible(cnf, block)).graph
            if block > 1:
                g, _ = supervertex_clique_transform(g, block, params.get("cap", 20000))
        elif chain == "sat-mmis":
            f = params.get("f", 1)
            g = sat_to_mmis(pad_variables_to_divisible(cnf, f), f).graph
        else:
            raise InvalidInstance(f"sweep supports sat-clique and sat-mmis, not {chain!r}")
        writer.writerow(
            [m, cnf.q, g.n, len(g.edges), f"{time.perf_counter() - started:.6f}"]
        )
    return buf.getvalue()
