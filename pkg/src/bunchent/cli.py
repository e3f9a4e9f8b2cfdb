"""Command line interface.

Subcommands: build, reduce, eof, survey, check. Exit codes: 0 success,
2 usage or parameter error, 3 capacity exceeded, 4 invariant violation,
5 file I/O or format problem. Errors print a single `error: ...` line on
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .bunching import BunchPartition, bunch_reduce, enumerate_partitions, reduction_report
from .errors import CapacityError, FileFormatError, InvariantError
from .linalg import diagnose_density
from .measures import (
    EntanglementReport,
    eof_bunches,
    format_float,
    report_json_dict,
    survey_csv,
)
from .states import (
    DensityMatrix,
    StateVector,
    bell_w_state,
    densify,
    embedded_bell,
    entanglement_molecule,
    ghz,
    ket_basis,
    load_state,
    read_state_file,
    state_payload,
)

_TOL_HERMITIAN = 1e-10
_TOL_TRACE = 1e-10
_TOL_PSD = 1e-9


@dataclass(frozen=True)
class CommandConfig:
    """Validated run parameters shared by the subcommands."""

    command: str
    state_path: str | None = None
    output_path: str | None = None
    bunch_a: tuple[int, ...] | None = None
    bunch_b: tuple[int, ...] | None = None
    format: str = "json"
    jobs: int = 1
    full_cover: bool = False
    max_bunch: int | None = None
    tol_hermitian: float = _TOL_HERMITIAN
    tol_trace: float = _TOL_TRACE
    tol_psd: float = _TOL_PSD

    def __post_init__(self) -> None:
        if self.command in ("reduce", "eof"):
            if self.bunch_a is None or self.bunch_b is None:
                raise ValueError(f"{self.command} requires both --a and --b")
        elif self.bunch_a is not None or self.bunch_b is not None:
            raise ValueError(f"{self.command} does not accept a partition")
        if self.jobs < 1:
            raise ValueError(f"--jobs must be at least 1, got {self.jobs}")


def _parse_labels(text: str, flag: str) -> tuple[int, ...]:
    try:
        labels = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ValueError(f"{flag} expects comma-separated integers, got {text!r}") from None
    return labels


def _emit(text: str, output_path: str | None) -> None:
    if output_path is None or output_path == "-":
        sys.stdout.write(text)
    else:
        with open(output_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _load_density(path: str) -> DensityMatrix:
    state = load_state(path)
    if isinstance(state, StateVector):
        return densify(state)
    return state


def _cmd_build(cfg: CommandConfig, args: argparse.Namespace) -> int:
    if args.kind == "ghz":
        state: StateVector | DensityMatrix = ghz(args.n)
    elif args.kind == "bellw":
        state = bell_w_state(args.n, args.w)
    elif args.kind == "embedded":
        state = embedded_bell(args.m, _parse_labels(args.subset, "--subset"), args.w)
    elif args.kind == "basis":
        bits = [int(c) for c in args.bits if c in "01"]
        if len(bits) != len(args.bits):
            raise ValueError(f"--bits expects a 0/1 string, got {args.bits!r}")
        state = ket_basis(len(bits), bits)
    elif args.kind == "molecule":
        if args.uniform:
            subsets = list(combinations(range(1, args.m + 1), args.n))
            weights = {s: 1.0 / len(subsets) for s in subsets}
        else:
            if args.weights is None:
                raise ValueError("molecule needs --uniform or --weights")
            try:
                raw = json.loads(args.weights)
            except json.JSONDecodeError:
                raise ValueError("--weights is not valid JSON") from None
            if not isinstance(raw, dict):
                raise ValueError("--weights must be a JSON object")
            weights = {
                _parse_labels(key.replace("-", ","), "--weights key"): float(val)
                for key, val in raw.items()
            }
        state = entanglement_molecule(args.m, args.n, args.w, weights)
    else:  # pragma: no cover - argparse restricts the choices
        raise ValueError(f"unknown build kind {args.kind!r}")
    _emit(json.dumps(state_payload(state)) + "\n", cfg.output_path)
    return 0


def _cmd_reduce(cfg: CommandConfig) -> int:
    if cfg.format != "json":
        raise ValueError(f"reduce emits json only, got --format {cfg.format}")
    rho = _load_density(cfg.state_path)
    reduction = bunch_reduce(rho, BunchPartition(cfg.bunch_a, cfg.bunch_b))
    _emit(json.dumps(reduction_report(reduction), indent=2) + "\n", cfg.output_path)
    return 0


def _cmd_eof(cfg: CommandConfig) -> int:
    rho = _load_density(cfg.state_path)
    report = eof_bunches(rho, BunchPartition(cfg.bunch_a, cfg.bunch_b))
    sys.stdout.write(f"concurrence {report.concurrence:.12f}\n")
    sys.stdout.write(f"eof {report.eof:.12f}\n")
    if cfg.output_path is not None and cfg.output_path != "-":
        _emit(json.dumps(report_json_dict(report), indent=2) + "\n", cfg.output_path)
    return 0


def _survey_worker(task) -> EntanglementReport:
    n_qubits, entries, bunch_a, bunch_b = task
    rho = DensityMatrix(n_qubits, entries)
    return eof_bunches(rho, BunchPartition(bunch_a, bunch_b))


def _cmd_survey(cfg: CommandConfig) -> int:
    rho = _load_density(cfg.state_path)
    partitions = enumerate_partitions(rho.n_qubits, cfg.max_bunch, cfg.full_cover)
    if cfg.jobs == 1:
        reports = [eof_bunches(rho, p) for p in partitions]
    else:
        tasks = [(rho.n_qubits, rho.entries, p.bunch_a, p.bunch_b) for p in partitions]
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            reports = list(pool.map(_survey_worker, tasks))
    if cfg.format == "csv":
        _emit(survey_csv(reports), cfg.output_path)
    else:
        _emit(json.dumps([report_json_dict(r) for r in reports], indent=2) + "\n", cfg.output_path)
    return 0


def _cmd_check(cfg: CommandConfig) -> int:
    kind, _, array = read_state_file(cfg.state_path)
    if kind == "pure":
        array = np.outer(array, array.conj())
    diag = diagnose_density(array)
    sys.stdout.write(f"hermiticity_defect {format_float(diag.hermiticity_defect)}\n")
    sys.stdout.write(f"trace_defect {format_float(diag.trace_defect)}\n")
    sys.stdout.write(f"min_eigenvalue {format_float(diag.min_eigenvalue)}\n")
    failed = []
    if diag.hermiticity_defect > cfg.tol_hermitian:
        failed.append(f"hermiticity_defect {format_float(diag.hermiticity_defect)}")
    if diag.trace_defect > cfg.tol_trace:
        failed.append(f"trace_defect {format_float(diag.trace_defect)}")
    if diag.min_eigenvalue < -cfg.tol_psd:
        failed.append(f"min_eigenvalue {format_float(diag.min_eigenvalue)}")
    if failed:
        raise InvariantError("; ".join(failed))
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bunchent",
        description="Bunch-to-bunch entanglement of multiqubit states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    build = sub.add_parser("build", help="write a named state to a JSON file")
    kinds = build.add_subparsers(dest="kind", required=True)
    ghz_p = kinds.add_parser("ghz")
    ghz_p.add_argument("--n", type=int, required=True, help="number of qubits")
    bellw_p = kinds.add_parser("bellw")
    bellw_p.add_argument("--n", type=int, required=True)
    bellw_p.add_argument("--w", type=int, required=True, help="leading zeros in the first branch")
    emb_p = kinds.add_parser("embedded")
    emb_p.add_argument("--m", type=int, required=True, help="total qubit count")
    emb_p.add_argument("--subset", required=True, help="ascending labels, e.g. 2,4")
    emb_p.add_argument("--w", type=int, required=True)
    mol_p = kinds.add_parser("molecule")
    mol_p.add_argument("--m", type=int, required=True)
    mol_p.add_argument("--n", type=int, required=True, help="subset size")
    mol_p.add_argument("--w", type=int, required=True)
    mol_p.add_argument("--uniform", action="store_true", help="uniform weights over all subsets")
    mol_p.add_argument("--weights", help='JSON object, e.g. {"1-2-3": 0.5, "2-3-4": 0.5}')
    basis_p = kinds.add_parser("basis")
    basis_p.add_argument("--bits", required=True, help="bit string, qubit 1 first")
    for kp in (ghz_p, bellw_p, emb_p, mol_p, basis_p):
        kp.add_argument("--out", default="-", help="output path, - for stdout")

    reduce_p = sub.add_parser("reduce", help="reduce a state onto a bunch pair")
    eof_p = sub.add_parser("eof", help="concurrence and entanglement of formation of a bunch pair")
    survey_p = sub.add_parser("survey", help="measure every bunch pair of a state")
    check_p = sub.add_parser("check", help="report invariant defects of a state file")
    for sp in (reduce_p, eof_p, survey_p, check_p):
        sp.add_argument("state", help="state file path")
    for sp in (reduce_p, eof_p):
        sp.add_argument("--a", required=True, help="bunch A labels, anchor first, e.g. 1")
        sp.add_argument("--b", required=True, help="bunch B labels, anchor first, e.g. 2,3")
    reduce_p.add_argument("--format", default="json", choices=["json"])
    reduce_p.add_argument("--out", default="-")
    eof_p.add_argument("--out", default=None, help="also write the report JSON here")
    survey_p.add_argument("--full-cover", action="store_true", help="only pairs covering every qubit")
    survey_p.add_argument("--max-bunch", type=int, default=None)
    survey_p.add_argument("--format", default="csv", choices=["csv", "json"])
    survey_p.add_argument("--jobs", type=int, default=1)
    survey_p.add_argument("--out", default="-")
    check_p.add_argument("--tol-hermitian", type=float, default=_TOL_HERMITIAN)
    check_p.add_argument("--tol-trace", type=float, default=_TOL_TRACE)
    check_p.add_argument("--tol-psd", type=float, default=_TOL_PSD)
    return parser


def _config(args: argparse.Namespace) -> CommandConfig:
    common = {"command": args.command}
    if hasattr(args, "state"):
        common["state_path"] = args.state
    if getattr(args, "out", None) is not None:
        common["output_path"] = args.out
    if hasattr(args, "a"):
        common["bunch_a"] = _parse_labels(args.a, "--a")
        common["bunch_b"] = _parse_labels(args.b, "--b")
    if hasattr(args, "format"):
        common["format"] = args.format
    if hasattr(args, "jobs"):
        common["jobs"] = args.jobs
    if hasattr(args, "full_cover"):
        common["full_cover"] = args.full_cover
    if hasattr(args, "max_bunch"):
        common["max_bunch"] = args.max_bunch
    if hasattr(args, "tol_hermitian"):
        common["tol_hermitian"] = args.tol_hermitian
        common["tol_trace"] = args.tol_trace
        common["tol_psd"] = args.tol_psd
    return CommandConfig(**common)


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        cfg = _config(args)
        if cfg.command == "build":
            return _cmd_build(cfg, args)
        if cfg.command == "reduce":
            return _cmd_reduce(cfg)
        if cfg.command == "eof":
            return _cmd_eof(cfg)
        if cfg.command == "survey":
            return _cmd_survey(cfg)
        return _cmd_check(cfg)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except (FileFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
