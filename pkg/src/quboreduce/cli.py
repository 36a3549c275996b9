"""Command-line interface.

Subcommands: encode, factor, verify, spectrum, circuit, sweep, pareto.
File formats: edge-list text for graphs, JSON for QUBO matrices and factoring
reports, line-oriented text for gate lists, flat CSV for sweeps.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import encoders
from .circuits import QaoaParams, build_circuit, cnot_count, depth, format_gate_list
from .experiments import (
    ParetoPoint,
    ProblemSetting,
    PROBLEMS,
    builtin_settings,
    format_records_csv,
    pareto_front,
    parse_records_csv,
    run_sweep,
)
from .factoring import FactoringReport, default_z, factor_out, verify_equivalence
from .graphs import parse_edge_list
from .qubo import ParameterError, QuboMatrix, coupling_count, spectrum


def _read_graph(path: str):
    return parse_edge_list(Path(path).read_text())


def _read_qubo(path: str) -> QuboMatrix:
    return QuboMatrix.loads(Path(path).read_text())


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _cmd_encode(args) -> int:
    g = _read_graph(args.graph)
    a = args.penalty
    if args.problem == "max_clique":
        q = encoders.max_clique_qubo(g, a)
    elif args.problem == "hamilton_cycles":
        q = encoders.hamilton_cycle_qubo(g, a)
    elif args.problem == "graph_coloring":
        if args.k is None:
            raise ParameterError("graph_coloring requires --k")
        q = encoders.graph_coloring_qubo(g, args.k, a)
    elif args.problem == "vertex_cover":
        q = encoders.vertex_cover_qubo(g, a)
    else:
        if args.graph2 is None:
            raise ParameterError("graph_isomorphism requires --graph2")
        q = encoders.graph_isomorphism_qubo(g, _read_graph(args.graph2), a)
    _write(args.out, q.dumps() + "\n")
    return 0


def _cmd_factor(args) -> int:
    q = _read_qubo(args.qubo)
    z = default_z(q) if args.z is None else args.z
    q_mod, report = factor_out(q, args.max_ancillas, z)
    _write(args.out, q_mod.dumps() + "\n")
    if args.report is not None:
        _write(args.report, report.dumps() + "\n")
    print(
        f"ancillas={report.num_ancillas} couplings={coupling_count(q)}->{coupling_count(q_mod)}",
        file=sys.stderr,
    )
    return 0


def _cmd_verify(args) -> int:
    q = _read_qubo(args.qubo)
    q_mod = _read_qubo(args.modified)
    report = FactoringReport.loads(Path(args.report).read_text())
    verdict = verify_equivalence(q, q_mod, report)
    print(
        json.dumps(
            {
                "valid_energies_preserved": verdict.valid_energies_preserved,
                "invalid_energies_nondecreasing": verdict.invalid_energies_nondecreasing,
                "minimum_preserved": verdict.minimum_preserved,
            }
        )
    )
    return 0 if verdict.all_ok else 1


def _cmd_spectrum(args) -> int:
    q = _read_qubo(args.qubo)
    lines = []
    for entry in spectrum(q):
        bits = "".join(str(b) for b in entry.bits)
        lines.append(f"{bits} {entry.energy}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def _cmd_circuit(args) -> int:
    q = _read_qubo(args.qubo)
    params = QaoaParams.constant(args.p, args.gamma, args.beta)
    c = build_circuit(q, params, order=args.order)
    _write(args.out, format_gate_list(c))
    print(f"cnots={cnot_count(c)} depth={depth(c)}", file=sys.stderr)
    return 0


def _cmd_sweep(args) -> int:
    if args.problem is None:
        settings = builtin_settings(penalty=args.penalty, seeds=args.seeds)
    else:
        settings = [
            s
            for s in builtin_settings(penalty=args.penalty, seeds=args.seeds)
            if s.problem == args.problem
        ]
    if args.setting_index is not None:
        settings = [s for s in settings if s.setting == args.setting_index]
    if not settings:
        raise ParameterError("no settings selected")
    z_mode = "proposition" if args.z is None else args.z
    records = []
    for setting in settings:
        records.extend(run_sweep(setting, args.max_ancillas, args.p, z_mode))
    records.sort(key=lambda r: (r.problem, r.setting, r.seed, r.num_ancillas, r.p))
    _write(args.out, format_records_csv(records))
    return 0


def _cmd_pareto(args) -> int:
    records = parse_records_csv(Path(args.csv).read_text())
    lines = ["problem,setting,p,ancillas,couplings"]
    groups: dict[tuple, list[ParetoPoint]] = {}
    for r in records:
        groups.setdefault((r.problem, r.setting, r.p), []).append(
            ParetoPoint(r.num_ancillas, r.couplings)
        )
    for (problem, setting, p), points in sorted(groups.items()):
        for pt in pareto_front(points):
            lines.append(f"{problem},{setting},{p},{pt.ancillas},{pt.couplings}")
    _write(args.out, "\n".join(lines) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quboreduce")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="encode a graph problem as a QUBO")
    p.add_argument("--problem", required=True, choices=PROBLEMS)
    p.add_argument("--graph", required=True, help="edge-list file")
    p.add_argument("--graph2", help="second edge-list file (graph_isomorphism)")
    p.add_argument("--k", type=int, help="color count (graph_coloring)")
    p.add_argument("--penalty", type=int, default=3)
    p.add_argument("--out", help="output QUBO JSON (default stdout)")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("factor", help="factor shared structure into ancilla qubits")
    p.add_argument("--qubo", required=True, help="input QUBO JSON")
    p.add_argument("--max-ancillas", type=int, default=29)
    p.add_argument("--z", type=float, help="penalty weight (default: coefficient-sum bound)")
    p.add_argument("--out", help="output QUBO JSON (default stdout)")
    p.add_argument("--report", help="output factoring report JSON")
    p.set_defaults(func=_cmd_factor)

    p = sub.add_parser("verify", help="exhaustively verify energy-landscape preservation")
    p.add_argument("--qubo", required=True)
    p.add_argument("--modified", required=True)
    p.add_argument("--report", required=True)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("spectrum", help="print the full sorted energy spectrum")
    p.add_argument("--qubo", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_spectrum)

    p = sub.add_parser("circuit", help="emit the QAOA gate list for a QUBO")
    p.add_argument("--qubo", required=True)
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--gamma", type=float, default=0.5)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--order", choices=("ascending", "packed"), default="ascending")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_circuit)

    p = sub.add_parser("sweep", help="run coupling/depth sweeps over the builtin settings")
    p.add_argument("--problem", choices=PROBLEMS)
    p.add_argument("--setting-index", type=int)
    p.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3])
    p.add_argument("--max-ancillas", type=int, default=29)
    p.add_argument("--p", type=int, nargs="+", default=[1, 2, 3])
    p.add_argument("--z", type=float, help="explicit penalty weight")
    p.add_argument("--penalty", type=int, default=3)
    p.add_argument("--out", help="output CSV (default stdout)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("pareto", help="non-dominated (ancillas, couplings) points of a sweep CSV")
    p.add_argument("--csv", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_pareto)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
