"""Command-line front end.

Exit codes: 0 holds / pass / found, 1 counterexample / failed / absent,
2 usage or malformed input, 3 timeout.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .bigraph import GraphFormatError, graph_from_json
from .constructions import (
    ConstructionError,
    check_coloring,
    figure1_graph,
    lower_bound_certificate,
    proposition1_sweep,
    theorem4_construction,
)
from .cycles import find_cycle
from .search import RamseyQuery, compute_br, decide

TIMEOUT_ENV = "BRCYCLES_TIMEOUT"
DEFAULT_TIMEOUT = 300.0
DEFAULT_SEARCH_MAX_B = 7

EXIT_OK, EXIT_NEG, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    timeout: float
    workers: int
    deterministic: bool
    out: Optional[str]
    fmt: str
    seed: int

    def __post_init__(self) -> None:
        if self.timeout <= 0:
            raise UsageError("--timeout must be positive")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")


def _default_timeout() -> float:
    raw = os.environ.get(TIMEOUT_ENV)
    if raw is None:
        return DEFAULT_TIMEOUT
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"{TIMEOUT_ENV} must be a number, got {raw!r}") from None


def _emit(payload: dict, cfg: RunConfig, pretty: str) -> None:
    if cfg.fmt == "compact":
        text = json.dumps(payload, separators=(",", ":"))
    else:
        text = json.dumps(payload, indent=2)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text + "\n")
    if cfg.fmt == "pretty":
        print(pretty)
    else:
        print(text)


def _need(value, flag: str, low: int = 2) -> int:
    if value is None:
        raise UsageError(f"{flag} is required")
    if value < low:
        raise UsageError(f"{flag} must be >= {low}")
    return value


def cmd_verify_construction(args, cfg: RunConfig) -> int:
    if args.kind == "figure1":
        report = check_coloring("figure1", figure1_graph(), 4, 4)
    else:
        m, n = _need(args.m, "--m"), _need(args.n, "--n")
        report = check_coloring(f"theorem4(m={m},n={n})", theorem4_construction(m, n), m, n)
    pretty = (
        f"{report.construction_id}: board {report.board}x{report.board}, "
        f"red C_{2 * report.checked_red_k} absent={report.red_cycle_absent}, "
        f"blue C_{2 * report.checked_blue_k} absent={report.blue_cycle_absent}"
    )
    _emit(report.to_json(compact=cfg.fmt == "compact"), cfg, pretty)
    return EXIT_OK if report.passed else EXIT_NEG


def cmd_decide(args, cfg: RunConfig) -> int:
    b = _need(args.b, "--b", 1)
    m, n = _need(args.m, "--m"), _need(args.n, "--n")
    out = decide(
        RamseyQuery(b, m, n),
        budget=cfg.timeout,
        workers=cfg.workers,
        deterministic=cfg.deterministic,
        use_seed=not args.no_seed,
    )
    s = out.stats
    pretty = (
        f"b={b} m={m} n={n}: {out.verdict} "
        f"(nodes={s.nodes}, prunes red/blue/sym={s.prunes_red}/{s.prunes_blue}/{s.prunes_sym}, "
        f"{s.elapsed_ms:.1f} ms)"
    )
    _emit(out.to_json(compact=cfg.fmt == "compact"), cfg, pretty)
    return {"holds": EXIT_OK, "counterexample": EXIT_NEG, "timeout": EXIT_TIMEOUT}[out.verdict]


def claimed_br_c8(n: int) -> int:
    return 8 if n == 4 else n + 3


def cmd_table(args, cfg: RunConfig) -> int:
    max_n = _need(args.max_n, "--max-n")
    rows = []
    for n in range(2, max_n + 1):
        claimed = claimed_br_c8(n)
        try:
            report = lower_bound_certificate(4, n)
            lower = "certified" if report.board == claimed - 1 else f"certified(board {report.board})"
        except ConstructionError:
            lower = "failed"
        if claimed > args.search_max_b:
            upper = "skipped-by-budget"
        else:
            out = decide(RamseyQuery(claimed, 4, n), cfg.timeout, cfg.workers, cfg.deterministic)
            upper = {"holds": "verified", "timeout": "timeout", "counterexample": "refuted"}[out.verdict]
        rows.append({"n": n, "claimed": claimed, "lower_bound": lower, "upper_bound": upper})
    lines = [f"{'n':>3} {'BR(C8,C2n)':>10}  {'lower bound':<12} upper bound"]
    lines += [f"{r['n']:>3} {r['claimed']:>10}  {r['lower_bound']:<12} {r['upper_bound']}" for r in rows]
    _emit({"m": 4, "rows": rows}, cfg, "\n".join(lines))
    bad = any(r["lower_bound"] == "failed" or r["upper_bound"] == "refuted" for r in rows)
    return EXIT_NEG if bad else EXIT_OK


def cmd_check_cycle(args, cfg: RunConfig) -> int:
    k = _need(args.k, "--k")
    try:
        with open(args.graph) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {args.graph}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.graph}: invalid JSON ({exc})") from None
    try:
        g = graph_from_json(data)
    except GraphFormatError as exc:
        raise UsageError(f"{args.graph}: field {exc.field!r}: {exc}") from None
    w = find_cycle(g, k)
    if w is None:
        _emit({"k": k, "witness": None}, cfg, f"no C_{2 * k}")
        return EXIT_NEG
    payload = w.to_json()
    _emit(payload, cfg, f"C_{2 * k}: left {list(w.left_seq)} right {list(w.right_seq)}")
    return EXIT_OK


def conjectured_br(m: int, n: int) -> Optional[int]:
    if m < 3 or n < 3:
        return None
    return m + n if m == n else m + n - 1


def cmd_compute_br(args, cfg: RunConfig) -> int:
    m, n = _need(args.m, "--m"), _need(args.n, "--n")
    max_b = _need(args.max_b, "--max-b", 1)
    res = compute_br(m, n, max_b, cfg.timeout, cfg.workers, use_seed=not args.no_seed)
    payload = {
        "m": m,
        "n": n,
        "value": res.value,
        "conjectured": conjectured_br(m, n),
        "outcomes": [o.to_json(compact=cfg.fmt == "compact") for o in res.outcomes],
    }
    verdicts = ", ".join(f"b={o.query.b}:{o.verdict}" for o in res.outcomes)
    pretty = f"BR(C_{2 * m}, C_{2 * n}) = {res.value}  [{verdicts}]"
    _emit(payload, cfg, pretty)
    if res.value is not None:
        return EXIT_OK
    return EXIT_TIMEOUT if res.outcomes and res.outcomes[-1].verdict == "timeout" else EXIT_NEG


def cmd_prop1_sweep(args, cfg: RunConfig) -> int:
    rep = proposition1_sweep(args.samples, cfg.seed)
    payload = {"seed": rep.seed, "samples": rep.samples, "red": rep.red, "blue": rep.blue, "neither": rep.neither}
    _emit(payload, cfg, f"seed={rep.seed} samples={rep.samples} red={rep.red} blue={rep.blue} neither={rep.neither}")
    return EXIT_OK if rep.neither == 0 else EXIT_NEG


COMMANDS = {
    "verify-construction": cmd_verify_construction,
    "decide": cmd_decide,
    "table": cmd_table,
    "check-cycle": cmd_check_cycle,
    "compute-br": cmd_compute_br,
    "prop1-sweep": cmd_prop1_sweep,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--timeout", type=float, default=None, help=f"seconds (default {DEFAULT_TIMEOUT:g}, env {TIMEOUT_ENV})")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--deterministic", action="store_true")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the JSON result here")
    common.add_argument("--format", dest="fmt", choices=["pretty", "json", "compact"], default="pretty")
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="brcycles", description="Bipartite Ramsey numbers of even cycles.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("verify-construction", parents=[common], help="check a lower-bound coloring")
    s.add_argument("--kind", choices=["figure1", "theorem4"], required=True)
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)

    s = sub.add_parser("decide", parents=[common], help="does K_{b,b} force a red C_2m or blue C_2n")
    s.add_argument("--b", type=int)
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--no-seed", action="store_true", help="search even when a known coloring fits")

    s = sub.add_parser("table", parents=[common], help="status of BR(C_8, C_2n) for n <= max-n")
    s.add_argument("--max-n", type=int)
    s.add_argument("--search-max-b", type=int, default=DEFAULT_SEARCH_MAX_B,
                   help="attempt upper-bound searches only up to this board size")

    s = sub.add_parser("check-cycle", parents=[common], help="look for a C_2k in a graph file")
    s.add_argument("graph")
    s.add_argument("--k", type=int)

    s = sub.add_parser("compute-br", parents=[common], help="scan b for BR(C_2m, C_2n)")
    s.add_argument("--m", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--max-b", type=int)
    s.add_argument("--no-seed", action="store_true")

    s = sub.add_parser("prop1-sweep", parents=[common], help="random K_{3,4} forcing sweep on K_{8,8}")
    s.add_argument("--samples", type=int, default=10_000)
    return p


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
        timeout = args.timeout if args.timeout is not None else _default_timeout()
        cfg = RunConfig(args.command, timeout, args.workers, args.deterministic, args.out, args.fmt, args.seed)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"brcycles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"brcycles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
