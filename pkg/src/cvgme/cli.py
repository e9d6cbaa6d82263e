"""Command-line front end.

Exit status is 0 on success, 1 when a check fails (a reproduction case,
a labeling validation, an infeasible witness) and 2 for bad usage or input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Sequence

import numpy as np

from . import reproduce as repro
from .criteria import CholeskyParams
from .errors import CVGMEError, ConstructionInfeasibleError
from .linalg import CovarianceMatrix, williamson
from .optimize import CRITERIA, DETECTION_TOL, OptimizerConfig, minimize_gap, scan_squeezing, threshold_transmissivity
from .render import FORMATS, render_criterion
from .states import FACTORIES, PUBLISHED_CM_KEYS, db_to_r, ghz_cm, lossy_channel, published_cm, r_to_db
from .trees import (
    LabeledTree,
    PUBLISHED_TREE_KEYS,
    Tree,
    enumerate_trees,
    published_tree,
    reverse_level_order_label,
    validate_labeling,
)
from .witness import WitnessMatrix, detects, published_witness, state_from_witness, witness_from_params

SCAN_HEADER = "# cvgme-scan v1"
LOSS_HEADER = "# cvgme-loss-threshold v1"


class UsageError(Exception):
    pass


# input helpers


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source, encoding="utf-8") as fh:
        return fh.read()


def _write(text: str, out: str | None):
    if out in (None, "-"):
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")


def _load_cm(source: str) -> CovarianceMatrix:
    """A JSON file, '-' for stdin, or the key of a published matrix."""
    if source == "-" or os.path.exists(source):
        return CovarianceMatrix.from_json(_read_text(source))
    return published_cm(source)


def _load_tree(source: str) -> LabeledTree:
    """A catalogue key or a file of 'j i' edge lines in label space."""
    if source in PUBLISHED_TREE_KEYS:
        return published_tree(source)
    if source == "-" or os.path.exists(source):
        return LabeledTree.from_edges(Tree.from_text(_read_text(source)).edges)
    raise UsageError(f"{source!r} is neither a tree key ({', '.join(PUBLISHED_TREE_KEYS)}) nor a file")


def _load_witness(source: str) -> WitnessMatrix:
    if source == "-" or os.path.exists(source):
        return WitnessMatrix.from_json(_read_text(source))
    return published_witness(source)


def _squeezing(args) -> float | None:
    if args.dB is not None:
        return db_to_r(args.dB)
    return args.r


def _config(args) -> OptimizerConfig:
    return OptimizerConfig(
        box=args.box,
        restarts=args.restarts,
        max_iters=args.max_iters,
        candidates=args.candidates,
        rounds=args.rounds,
        seed=args.seed,
        witness=args.witness_output,
        workers=args.workers,
    )


def _make_state(family: str, r: float | None, modes: int | None) -> CovarianceMatrix:
    if family in FACTORIES:
        if r is None:
            raise UsageError(f"state family {family!r} needs --r or --dB")
        if family == "ghz" and modes is not None:
            return ghz_cm(r, modes)
        return FACTORIES[family](r)
    if r is not None:
        raise UsageError("--r/--dB only apply to state families, not published matrices")
    return published_cm(family)


# commands


def cmd_state(args) -> int:
    cm = _make_state(args.family, _squeezing(args), args.modes)
    if args.eta is not None:
        cm = lossy_channel(cm, args.eta)
    _write(cm.to_json(indent=2), args.out)
    return 0


def cmd_detect(args) -> int:
    res = minimize_gap(_load_cm(args.cm), _load_tree(args.tree), args.criterion, _config(args))
    _write(json.dumps(res.to_dict(), indent=2), args.out)
    return 0


def _grid(args) -> list[float]:
    lo, hi, step = args.dB_grid or args.r_grid
    if step == 0 or (hi - lo) * step < 0:
        raise UsageError("grid step must lead from START to STOP")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    values = [lo + k * step for k in range(count)]
    if args.dB_grid:
        values = [db_to_r(v) for v in values]
    return [round(v, 12) for v in values]


def cmd_scan(args) -> int:
    tree = _load_tree(args.tree) if args.tree else None
    rows = scan_squeezing(args.family, args.criterion, _grid(args), _config(args), tree=tree, warm=not args.no_warm)
    buf = _CsvBuffer()
    buf.writer.writerow(["r", "dB", "best_value", "detected"])
    for r, v in rows:
        buf.writer.writerow([repr(r), f"{r_to_db(r):.6f}", repr(v), int(v < -DETECTION_TOL)])
    _write(f"{SCAN_HEADER}\n{buf.text()}", args.out)
    return 0


def cmd_loss_threshold(args) -> int:
    if args.family:
        cm = _make_state(args.family, _squeezing(args), None)
    elif args.cm:
        cm = _load_cm(args.cm)
    else:
        raise UsageError("give --cm or --family")
    res = threshold_transmissivity(cm, _load_tree(args.tree), args.criterion, _config(args), args.eta_tol)
    buf = _CsvBuffer()
    buf.writer.writerow(["kind", "eta", "best_value", "detected"])
    for eta, value, det in res.probes:
        buf.writer.writerow(["probe", repr(eta), repr(value), int(det)])
    buf.writer.writerow(["threshold", repr(res.eta), "", ""])
    monotone = "" if res.monotone() else "# warning: probes contradict monotone detection in eta\n"
    _write(f"{LOSS_HEADER}\n{monotone}{buf.text()}", args.out)
    return 0


def cmd_witness_build(args) -> int:
    params = CholeskyParams.from_json(_read_text(args.params))
    _write(witness_from_params(params).to_json(indent=2), args.out)
    return 0


def cmd_witness_diagonalize(args) -> int:
    w = _load_witness(args.witness)
    _, nu = williamson(w.full)
    out = {"symplectic_eigenvalues": nu.tolist(), "trace": 2.0 * float(nu.sum())}
    try:
        out["cm"] = state_from_witness(w).to_dict()
        status = 0
    except ConstructionInfeasibleError as exc:
        out["cm"] = None
        out["error"] = str(exc)
        status = 1
    _write(json.dumps(out, indent=2), args.out)
    return status


def cmd_witness_detect(args) -> int:
    det = detects(_load_cm(args.cm), _load_witness(args.witness))
    _write(json.dumps({"trace": det.trace, "detected": det.detected}), args.out)
    return 0


def cmd_tree_enumerate(args) -> int:
    trees = enumerate_trees(args.order)
    if args.format == "json":
        _write(json.dumps([[list(e) for e in t.edges] for t in trees]), args.out)
    else:
        blocks = [f"# tree {k + 1} of {len(trees)}\n{t.to_text()}" for k, t in enumerate(trees)]
        _write("\n".join(blocks), args.out)
    return 0


def cmd_tree_label(args) -> int:
    tree = Tree.from_text(_read_text(args.edges))
    lt = reverse_level_order_label(tree, args.root)
    if args.format == "json":
        mapping = {str(v): lt.labeling[v - 1] for v in range(1, tree.order + 1)}
        _write(json.dumps({"labels": mapping, "edges": [list(e) for e in lt.edges]}), args.out)
    else:
        _write(lt.to_text(), args.out)
    return 0


def cmd_tree_validate(args) -> int:
    check = validate_labeling(_load_tree(args.tree))
    if check.ok:
        print("ok")
        return 0
    print(f"invalid: column {check.column} has no single larger neighbour")
    return 1


def cmd_criterion_print(args) -> int:
    _write(render_criterion(_load_tree(args.tree), args.format), args.out)
    return 0


def cmd_reproduce(args) -> int:
    if args.list:
        for cid in repro.case_ids():
            case = repro.MANIFEST[cid]
            print(f"{cid:28s} {case.expected}")
        return 0
    if not args.cases:
        raise UsageError("name at least one case id, a group such as 'table2/', or 'all'")
    results = repro.run_cases(args.cases, parallel=args.parallel, progress=lambda r: print(r.line(), flush=True))
    failed = [r.id for r in results if r.failed]
    total = sum(r.seconds for r in results)
    print(f"{len(results) - len(failed)}/{len(results)} cases without failure in {total:.1f}s")
    if failed:
        print("failed: " + ", ".join(failed))
    return 1 if failed else 0


class _CsvBuffer:
    def __init__(self):
        self._io = io.StringIO()
        self.writer = csv.writer(self._io, lineterminator="\n")

    def text(self) -> str:
        return self._io.getvalue()


# parser


def _add_optimizer_args(p, box=1.0, restarts=64):
    g = p.add_argument_group("optimizer")
    g.add_argument("--box", type=float, default=box, help=f"coefficient bound (default {box})")
    g.add_argument("--restarts", type=int, default=restarts, help=f"random restarts (default {restarts})")
    g.add_argument("--max-iters", type=int, default=2000, help="Nelder-Mead iterations per simplex")
    g.add_argument("--candidates", type=int, default=1024, help="random points screened per restart")
    g.add_argument("--rounds", type=int, default=3, help="simplex re-initializations per restart")
    g.add_argument("--seed", type=int, default=0, help="master seed")
    g.add_argument("--workers", type=int, default=1, help="processes for restarts")
    g.add_argument(
        "--witness-output",
        action="store_true",
        help="keep diagonal coefficients positive so the result converts to a witness",
    )


def _add_squeezing_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--r", type=float, help="squeezing parameter r >= 0")
    g.add_argument("--dB", type=float, help="squeezing in dB, 10 log10(e^{-2r}); -5.65 is r = 0.65")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvgme", description="Genuine multipartite entanglement criteria for Gaussian states."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    families = ", ".join(FACTORIES)
    published = ", ".join(PUBLISHED_CM_KEYS)

    p = sub.add_parser("state", help="emit a covariance matrix as JSON")
    p.add_argument("family", help=f"state family ({families}) or published matrix ({published})")
    _add_squeezing_args(p)
    p.add_argument("--modes", type=int, help="number of modes for ghz (default 3)")
    p.add_argument("--eta", type=float, help="send every mode through a pure-loss channel")
    p.add_argument("-o", "--out", help="output file (default stdout)")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("detect", help="minimize a criterion gap; prints a JSON detection result")
    p.add_argument("--cm", required=True, help="CM JSON file, '-' for stdin, or a published key")
    p.add_argument("--tree", default="3", help="tree key or edge file (default 3)")
    p.add_argument("--criterion", choices=CRITERIA, default="product")
    _add_optimizer_args(p)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser(
        "scan",
        help="minimized gap over a squeezing grid (CSV)",
        description=f"CSV after a '{SCAN_HEADER}' line; columns r, dB, best_value, detected (0/1).",
    )
    p.add_argument("--family", required=True, choices=list(FACTORIES))
    p.add_argument("--criterion", choices=CRITERIA, default="product")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--r-grid", nargs=3, type=float, metavar=("START", "STOP", "STEP"))
    g.add_argument("--dB-grid", nargs=3, type=float, metavar=("START", "STOP", "STEP"))
    p.add_argument("--tree", help="tree key or edge file (default: path labeled 1..N)")
    p.add_argument("--no-warm", action="store_true", help="treat every grid point independently")
    _add_optimizer_args(p, restarts=8)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser(
        "loss-threshold",
        help="smallest transmissivity that keeps the state detected (CSV)",
        description=(
            f"CSV after a '{LOSS_HEADER}' line; columns kind (probe or threshold), eta, "
            "best_value, detected (0/1).  Probes are listed in bisection order."
        ),
    )
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--cm", help="CM JSON file or published key")
    src.add_argument("--family", choices=list(FACTORIES))
    _add_squeezing_args(p)
    p.add_argument("--tree", default="3")
    p.add_argument("--criterion", choices=CRITERIA, default="product")
    p.add_argument("--eta-tol", type=float, default=0.0025)
    _add_optimizer_args(p, restarts=16)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_loss_threshold)

    w = sub.add_parser("witness", help="witness construction and state synthesis").add_subparsers(
        dest="action", required=True
    )
    p = w.add_parser("build", help="CholeskyParams JSON -> witness JSON")
    p.add_argument("--params", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_witness_build)
    p = w.add_parser("diagonalize", help="symplectic eigenvalues and the optimal state of a witness")
    p.add_argument("--witness", required=True, help="witness JSON file or published tree key")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_witness_diagonalize)
    p = w.add_parser("detect", help="trace of a CM against a witness")
    p.add_argument("--cm", required=True)
    p.add_argument("--witness", required=True)
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_witness_detect)

    t = sub.add_parser("tree", help="tree enumeration and labeling").add_subparsers(dest="action", required=True)
    p = t.add_parser("enumerate", help="one tree per isomorphism class")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_tree_enumerate)
    p = t.add_parser("label", help="reverse level order labeling of an edge list")
    p.add_argument("--edges", required=True, help="file of 'u v' lines, '-' for stdin")
    p.add_argument("--root", type=int, help="root vertex (must be in the center)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_tree_label)
    p = t.add_parser("validate", help="check the single-larger-neighbour property")
    p.add_argument("--tree", required=True, help="tree key or labeled edge file")
    p.set_defaults(func=cmd_tree_validate)

    p = sub.add_parser("criterion-print", help="render both criteria for a labeled tree")
    p.add_argument("tree", help="tree key or labeled edge file")
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("-o", "--out")
    p.set_defaults(func=cmd_criterion_print)

    p = sub.add_parser("reproduce", help="run reproduction cases and compare with expected values")
    p.add_argument("cases", nargs="*", help="case ids, groups ending in '/', or 'all'")
    p.add_argument("--list", action="store_true", help="list case ids")
    p.add_argument("--parallel", type=int, default=1, metavar="N", help="run cases in N processes")
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"cvgme: error: {exc}", file=sys.stderr)
        return 2
    except (CVGMEError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"cvgme: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
