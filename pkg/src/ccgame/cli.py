"""Command-line entry point.

Exit status: 0 on success, 1 when a verified report fails, 2 on a usage or
input error, 3 when a size guard refuses the request.  Errors are also
written to stderr as one JSON object.
"""

from __future__ import annotations

import argparse
import contextlib
import json
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from . import config
from .config import DEFAULT_POLICY, SolverPolicy
from .constants import NumericConstantsSpec, verify_numeric_constants
from .directsum import direct_sum_power
from .errors import CCGameError, SizeError, UsageError
from .interlace import alternating_game, interlace_power
from .lemmas import LEMMA_IDS, LemmaReport, run_lemma_suite
from .matrix import GameMatrix, phi_dimensions
from .solver import greedy_upper, solve_exact
from .subgame import is_subgame, set_is_subgame

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_SIZE = 3


@dataclass
class RunConfig:
    max_cells: int | None = None
    policy: SolverPolicy = DEFAULT_POLICY
    seed: int = 0
    out: str | None = None
    verbosity: int = 0

    def __post_init__(self):
        if self.max_cells is not None and self.max_cells < 1:
            raise UsageError(f"--max-cells must be >= 1, got {self.max_cells}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from None


def _read_matrix(path: str) -> GameMatrix:
    return GameMatrix.from_dict(_read_json(path))


def _read_matrix_set(path: str) -> list[GameMatrix]:
    data = _read_json(path)
    if isinstance(data, dict):
        return [GameMatrix.from_dict(data)]
    if not isinstance(data, list):
        raise UsageError(f"{path} must hold a matrix or a list of matrices")
    return [GameMatrix.from_dict(d) for d in data]


def _emit(data, cfg: RunConfig, indent: int | None = None) -> None:
    text = json.dumps(data, indent=indent) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


def _log(cfg: RunConfig, message: str) -> None:
    if cfg.verbosity:
        print(message, file=sys.stderr)


def cmd_phi(args, cfg: RunConfig) -> int:
    dims = phi_dimensions(args.B, args.i)
    _log(cfg, f"phi_{args.i} for B={args.B}: {dims.rows} x {dims.cols}")
    _emit(alternating_game(args.B, args.i).to_dict(), cfg)
    return EXIT_OK


def cmd_interlace(args, cfg: RunConfig) -> int:
    _emit(interlace_power(_read_matrix(args.input), args.p).to_dict(), cfg)
    return EXIT_OK


def cmd_dsum(args, cfg: RunConfig) -> int:
    _emit(direct_sum_power(_read_matrix(args.input), args.l).to_dict(), cfg)
    return EXIT_OK


def cmd_solve(args, cfg: RunConfig) -> int:
    M = _read_matrix(args.input)
    if args.greedy:
        if args.budget is not None:
            raise UsageError("--budget applies to --exact only")
        depth, tree = greedy_upper(M)
        _emit({"method": "greedy", "depth": depth, "tree": tree.to_dict()}, cfg)
        return EXIT_OK
    result = solve_exact(M, depth_budget=args.budget, policy=cfg.policy)
    _log(cfg, f"search nodes: {result.stats.get('nodes')}")
    out = {"method": "exact", "depth": result.depth, "tree": result.tree.to_dict() if result.tree else None}
    if args.budget is not None:
        out["budget"] = args.budget
        out["exceeds_budget"] = result.exceeds_budget
    _emit(out, cfg)
    return EXIT_OK


def cmd_subgame(args, cfg: RunConfig) -> int:
    small = _read_json(args.small)
    large = _read_json(args.large)
    if isinstance(small, dict) and isinstance(large, dict):
        P, Q = GameMatrix.from_dict(small), GameMatrix.from_dict(large)
        w = is_subgame(P, Q)
        _emit({"subgame": w is not None, "witness": w.to_dict() if w else None}, cfg)
        return EXIT_OK
    _emit({"subgame": set_is_subgame(_read_matrix_set(args.small), _read_matrix_set(args.large))}, cfg)
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig) -> int:
    grid = args.grid
    if grid.endswith(".json"):
        grid = _read_json(grid)
        if not isinstance(grid, dict):
            raise UsageError("a grid file must hold a JSON object")
    start = time.perf_counter()
    report = run_lemma_suite(args.lemma, grid, cfg.seed)
    _log(cfg, f"{args.lemma}: {report.instances} instances in {time.perf_counter() - start:.2f}s")
    _emit(report.to_dict(), cfg, indent=2)
    return EXIT_OK if report.status == "pass" else EXIT_VIOLATION


def cmd_constants(args, cfg: RunConfig) -> int:
    report = verify_numeric_constants(NumericConstantsSpec(args.k, args.a, args.s, prec=args.prec))
    _emit(report.to_dict(), cfg, indent=2)
    return EXIT_OK if report.status == "pass" else EXIT_VIOLATION


def cmd_report(args, cfg: RunConfig) -> int:
    merged: dict[str, dict] = {}
    for path in args.merge:
        data = _read_json(path)
        try:
            report = LemmaReport.from_dict(data)
        except (KeyError, TypeError):
            raise UsageError(f"{path} is not a lemma report") from None
        if report.lemma in merged:
            raise UsageError(f"lemma {report.lemma!r} appears in more than one report")
        merged[report.lemma] = report.to_dict()
    failed = sorted(k for k, r in merged.items() if r["status"] != "pass")
    _emit({"status": "fail" if failed else "pass", "failed": failed, "reports": merged}, cfg, indent=2)
    return EXIT_VIOLATION if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ccgame", description="Communication games: construction, exact solving and lemma checks.")
    parser.add_argument("--max-cells", type=int, help="cell guard for materialized matrices (overrides CCGAME_MAX_CELLS)")
    parser.add_argument("--max-side", type=int, help="exact solver: largest admitted side")
    parser.add_argument("--max-min-side", type=int, help="exact solver: largest admitted shorter side")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help):
        p = sub.add_parser(name, help=help)
        p.set_defaults(func=func)
        p.add_argument("--out", help="write JSON here instead of stdout")
        return p

    p = command("phi", cmd_phi, "build an alternating game")
    p.add_argument("--B", type=int, required=True)
    p.add_argument("--i", type=int, required=True)

    p = command("interlace", cmd_interlace, "interlaced power of a matrix")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--p", type=int, required=True)

    p = command("dsum", cmd_dsum, "direct-sum power of a matrix")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--l", type=int, required=True)

    p = command("solve", cmd_solve, "communication complexity of a matrix")
    p.add_argument("--in", dest="input", required=True)
    how = p.add_mutually_exclusive_group()
    how.add_argument("--exact", action="store_true", help="optimal protocol (default)")
    how.add_argument("--greedy", action="store_true", help="fast upper bound")
    p.add_argument("--budget", type=int, help="give up above this depth")

    p = command("subgame", cmd_subgame, "subgame test for matrices or matrix sets")
    p.add_argument("--small", required=True)
    p.add_argument("--large", required=True)

    p = command("verify", cmd_verify, "run a lemma checker on a grid")
    p.add_argument("--lemma", required=True, choices=LEMMA_IDS)
    p.add_argument("--grid", default="small", help="preset name or a .json grid file")
    p.add_argument("--seed", type=int, default=0)

    p = command("constants", cmd_constants, "interval checks of the large-parameter constants")
    p.add_argument("--k", type=int, default=10000)
    p.add_argument("--a", type=int, default=10)
    p.add_argument("--s", type=int, default=2)
    p.add_argument("--prec", type=int, default=128, help="interval precision in bits")

    p = command("report", cmd_report, "merge lemma reports")
    p.add_argument("--merge", nargs="+", required=True, metavar="REPORT")
    return parser


def _fail(exc: Exception, code: int) -> int:
    err = {"error": type(exc).__name__, "message": str(exc), "exit": code}
    if isinstance(exc, SizeError):
        err["info"] = {k: (v.to_dict() if hasattr(v, "to_dict") else v) for k, v in exc.info.items()}
    print(json.dumps(err), file=sys.stderr)
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        policy = SolverPolicy(
            args.max_min_side if args.max_min_side is not None else DEFAULT_POLICY.max_min_side,
            args.max_side if args.max_side is not None else DEFAULT_POLICY.max_side,
        )
        cfg = RunConfig(args.max_cells, policy, getattr(args, "seed", 0), args.out, args.verbose)
        with config.cell_guard(cfg.max_cells) if cfg.max_cells else contextlib.nullcontext():
            return args.func(args, cfg)
    except SizeError as exc:
        return _fail(exc, EXIT_SIZE)
    except (CCGameError, ValueError) as exc:
        return _fail(exc, EXIT_USAGE)


if __name__ == "__main__":
    sys.exit(main())
