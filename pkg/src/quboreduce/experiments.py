"""Sweep harness: encode a problem setting, factor with growing ancilla
budgets, and record qubit/coupling/CNOT/depth metrics per budget and layer
count.  Output is a flat CSV suitable for any plotting tool.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import encoders
from .circuits import QaoaParams, build_circuit, cnot_count, depth
from .factoring import default_z, factoring_trajectory
from .graphs import Graph, permute_vertices, sample_graph, sample_permutation
from .qubo import ParameterError, QuboMatrix, coupling_count

PROBLEMS = (
    "max_clique",
    "hamilton_cycles",
    "graph_coloring",
    "vertex_cover",
    "graph_isomorphism",
)

# (v, e) per problem, three settings each; graph coloring uses K colors.
_SETTINGS_TABLE = {
    "max_clique": [(30, 87), (30, 174), (60, 354)],
    "hamilton_cycles": [(6, 10), (6, 8), (8, 16)],
    "graph_coloring": [(10, 31), (10, 20), (20, 114)],
    "vertex_cover": [(30, 131), (30, 218), (50, 800)],
    "graph_isomorphism": [(6, 10), (6, 8), (8, 16)],
}

_COLORS = 3
DEFAULT_PENALTY = 3
DEFAULT_SEEDS = (0, 1, 2, 3)


@dataclass(frozen=True)
class ProblemSetting:
    problem: str
    v: int
    e: int
    k: int | None = None
    penalty: float = DEFAULT_PENALTY
    seed: int = 0
    setting: int = 0
    # For graph_isomorphism: "permuted" pairs the sampled graph with a seeded
    # vertex relabeling of itself; "independent" samples a second graph.
    pair_mode: str = "permuted"

    def __post_init__(self):
        if self.problem not in PROBLEMS:
            raise ParameterError(f"unknown problem {self.problem!r}")
        if not 0 <= self.e <= self.v * (self.v - 1) // 2:
            raise ParameterError(f"edge count {self.e} out of range for v={self.v}")
        if (self.k is not None) != (self.problem == "graph_coloring"):
            raise ParameterError("color count k is required exactly for graph_coloring")


@dataclass(frozen=True)
class SweepRecord:
    problem: str
    setting: int
    seed: int
    num_ancillas: int
    p: int
    qubits: int
    couplings: int
    cnots: int
    depth: int


@dataclass(frozen=True)
class ParetoPoint:
    ancillas: int
    couplings: int


@dataclass(frozen=True)
class GroupStats:
    count: int
    mean_couplings: float
    std_couplings: float
    mean_depth: float
    std_depth: float


def builtin_settings(
    penalty: float = DEFAULT_PENALTY, seeds: Sequence[int] = DEFAULT_SEEDS
) -> list[ProblemSetting]:
    """All 15 experiment settings, one entry per (setting, seed)."""
    out = []
    for problem in PROBLEMS:
        for idx, (v, e) in enumerate(_SETTINGS_TABLE[problem]):
            k = _COLORS if problem == "graph_coloring" else None
            for seed in seeds:
                out.append(ProblemSetting(problem, v, e, k, penalty, seed, idx))
    return out


def build_problem_qubo(setting: ProblemSetting) -> QuboMatrix:
    g = sample_graph(setting.v, setting.e, setting.seed)
    a = setting.penalty
    if setting.problem == "max_clique":
        return encoders.max_clique_qubo(g, a)
    if setting.problem == "hamilton_cycles":
        return encoders.hamilton_cycle_qubo(g, a)
    if setting.problem == "graph_coloring":
        return encoders.graph_coloring_qubo(g, setting.k, a)
    if setting.problem == "vertex_cover":
        return encoders.vertex_cover_qubo(g, a)
    if setting.problem == "graph_isomorphism":
        if setting.pair_mode == "permuted":
            g2 = permute_vertices(g, sample_permutation(g.v, setting.seed + 1))
        elif setting.pair_mode == "independent":
            g2 = sample_graph(setting.v, setting.e, setting.seed + 1)
        else:
            raise ParameterError(f"unknown pair mode {setting.pair_mode!r}")
        return encoders.graph_isomorphism_qubo(g, g2, a)
    raise ParameterError(f"unknown problem {setting.problem!r}")


def run_sweep(
    setting: ProblemSetting,
    max_ancillas: int,
    p_values: Sequence[int] = (1, 2, 3),
    z_mode: float | str = "proposition",
) -> list[SweepRecord]:
    """One record per (ancilla budget, p).  Budgets beyond the available
    structure repeat the saturated matrix's metrics."""
    if max_ancillas < 0:
        raise ParameterError(f"max_ancillas must be non-negative, got {max_ancillas}")
    q = build_problem_qubo(setting)
    if z_mode == "proposition":
        z = default_z(q)
    else:
        z = z_mode
        if not z > 0:
            raise ParameterError(f"explicit z must be positive, got {z}")
    trajectory, _report = factoring_trajectory(q, max_ancillas, z)

    records = []
    for budget in range(max_ancillas + 1):
        q_mod = trajectory[min(budget, len(trajectory) - 1)]
        couplings = coupling_count(q_mod)
        for p in p_values:
            circuit = build_circuit(q_mod, QaoaParams.constant(p))
            records.append(
                SweepRecord(
                    problem=setting.problem,
                    setting=setting.setting,
                    seed=setting.seed,
                    num_ancillas=budget,
                    p=p,
                    qubits=q_mod.n,
                    couplings=couplings,
                    cnots=cnot_count(circuit),
                    depth=depth(circuit),
                )
            )
    return records


def pareto_front(points: Iterable[ParetoPoint]) -> list[ParetoPoint]:
    """Minimal non-dominated subset (minimize both coordinates), sorted by
    ancilla count ascending."""
    best: dict[int, int] = {}
    for pt in points:
        if pt.ancillas not in best or pt.couplings < best[pt.ancillas]:
            best[pt.ancillas] = pt.couplings
    front = []
    lowest = math.inf
    for anc in sorted(best):
        if best[anc] < lowest:
            front.append(ParetoPoint(anc, best[anc]))
            lowest = best[anc]
    return front


def aggregate(
    records: Iterable[SweepRecord],
    keys: Sequence[str] = ("problem", "setting", "num_ancillas", "p"),
) -> dict[tuple, GroupStats]:
    """Per-group mean and population standard deviation of couplings and
    depth."""
    groups: dict[tuple, list[SweepRecord]] = {}
    for r in records:
        groups.setdefault(tuple(getattr(r, k) for k in keys), []).append(r)

    def _stats(values: list[float]) -> tuple[float, float]:
        mean = sum(values) / len(values)
        var = sum((v - mean) ** 2 for v in values) / len(values)
        return mean, math.sqrt(var)

    out = {}
    for key, rows in sorted(groups.items()):
        mc, sc = _stats([r.couplings for r in rows])
        md, sd = _stats([r.depth for r in rows])
        out[key] = GroupStats(len(rows), mc, sc, md, sd)
    return out


CSV_HEADER = ("problem", "setting", "seed", "num_ancillas", "p", "qubits", "couplings", "cnots", "depth")


def format_records_csv(records: Iterable[SweepRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([getattr(r, f) for f in CSV_HEADER])
    return buf.getvalue()


def parse_records_csv(text: str) -> list[SweepRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != CSV_HEADER:
        raise ParameterError(f"unexpected CSV header {reader.fieldnames}")
    int_fields = set(CSV_HEADER) - {"problem"}
    out = []
    for row in reader:
        kwargs = {k: (int(v) if k in int_fields else v) for k, v in row.items()}
        out.append(SweepRecord(**kwargs))
    return out
