"""Seeded multi-start minimization of the criterion gaps.

Both gaps vanish at zero and are homogeneous: d_s(s l) = s^2 d_s(l) and
d_p(s l^x, t l^p) = s^2 t^2 d_p(l).  The minimum over the box is therefore
min(0, minimum over the box surface), and the search runs on that surface.
Nelder-Mead works on a free vector that is scaled onto the surface before
every evaluation (jointly for the sum gap, per quadrature for the product
gap), so the simplex cannot drift toward the trivial zero.

Each restart screens a batch of random surface points from its own seeded
stream, starts Nelder-Mead at the best of them and re-initializes the
simplex a few times around the current point.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize

from .criteria import CholeskyParams, CriterionReport, Evaluator, evaluate
from .errors import PreconditionError
from .linalg import CovarianceMatrix
from .states import FACTORIES, lossy_channel
from .trees import resolve_tree

DETECTION_TOL = 1e-6
DIAG_FLOOR = 1e-8
CRITERIA = ("product", "sum")


@dataclass(frozen=True)
class OptimizerConfig:
    """Search settings.

    box: coefficients are confined to [-box, box].
    restarts: independent random starts; restart k draws from its own stream.
    max_iters: Nelder-Mead iterations per simplex.
    candidates: random surface points screened per restart; the best one
        seeds the first simplex.
    rounds: simplices per restart (the first at the screened start, the
        rest re-initialized around the current best point).
    adaptive: use dimension-dependent Nelder-Mead coefficients, which hold
        up better in the 20+ dimensional searches of larger trees.
    witness: floor the diagonal coefficients at DIAG_FLOOR so the result can
        be turned into a witness.
    """

    box: float = 1.0
    restarts: int = 64
    max_iters: int = 2000
    candidates: int = 1024
    rounds: int = 3
    adaptive: bool = True
    seed: int = 0
    tol: float = 1e-10
    witness: bool = False
    workers: int = 1

    def __post_init__(self):
        if not (self.box > 0 and math.isfinite(self.box)):
            raise ValueError("box must be a positive finite number")
        if min(self.restarts, self.max_iters, self.rounds, self.candidates) < 1:
            raise ValueError("restarts, max_iters, rounds and candidates must be >= 1")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")


@dataclass(frozen=True)
class DetectionResult:
    which: str
    best_value: float
    best_params: CholeskyParams
    report: CriterionReport
    detected: bool
    converged: bool
    best_restart: int  # indices >= cfg.restarts refer to warm starts
    restart_values: tuple = field(repr=False)

    def to_dict(self) -> dict:
        return {
            "criterion": self.which,
            "best_value": self.best_value,
            "detected": self.detected,
            "converged": self.converged,
            "best_restart": self.best_restart,
            "restart_values": list(self.restart_values),
            "best_params": self.best_params.to_dict(),
            "report": self.report.to_dict(),
        }


def _bounds(ev: Evaluator, cfg: OptimizerConfig):
    lo = np.full(ev.dim, -cfg.box)
    hi = np.full(ev.dim, cfg.box)
    if cfg.witness:
        h = ev.n + ev.m
        lo[:ev.n] = DIAG_FLOOR
        lo[h:h + ev.n] = DIAG_FLOOR
    return lo, hi


def _groups(ev: Evaluator, which: str):
    half = ev.n + ev.m
    if which == "product":
        return [slice(0, half), slice(half, None)]
    return [slice(None)]


def _surface(v, groups, box, lo, hi):
    """Scale each group of columns so its largest entry has magnitude `box`."""
    v = np.array(v, dtype=float, ndmin=2)
    for g in groups:
        peak = np.max(np.abs(v[:, g]), axis=1, keepdims=True)
        v[:, g] *= np.divide(box, peak, out=np.ones_like(peak), where=peak > 0)
    return np.clip(v, lo, hi)


def _polish(ev: Evaluator, which: str, cfg: OptimizerConfig, u):
    lo, hi = _bounds(ev, cfg)
    groups = _groups(ev, which)

    def f(v):
        return ev.gap(_surface(v, groups, cfg.box, lo, hi), which)

    u = _surface(u, groups, cfg.box, lo, hi)[0]
    converged = False
    for rnd in range(cfg.rounds):
        step = cfg.box * (0.05 if rnd == 0 else 0.5 / (rnd + 1))
        opts = dict(
            maxiter=cfg.max_iters,
            xatol=cfg.tol,
            fatol=cfg.tol,
            initial_simplex=np.vstack([u, u + step * np.eye(ev.dim)]),
            adaptive=cfg.adaptive,
        )
        res = minimize(f, u, method="Nelder-Mead", options=opts)
        u = _surface(res.x, groups, cfg.box, lo, hi)[0]
        converged = bool(res.success)
    return ev.gap(u, which), u, converged


def _restart(ev: Evaluator, which: str, cfg: OptimizerConfig, k: int):
    lo, hi = _bounds(ev, cfg)
    rng = np.random.default_rng(np.random.SeedSequence(cfg.seed, spawn_key=(k,)))
    cand = _surface(rng.uniform(-cfg.box, cfg.box, (cfg.candidates, ev.dim)), _groups(ev, which), cfg.box, lo, hi)
    u = cand[int(np.argmin(ev.gap_batch(cand, which)))]
    return _polish(ev, which, cfg, u)


def _restart_star(args):
    return _restart(*args)


def _vector(start, ev: Evaluator) -> np.ndarray:
    if isinstance(start, CholeskyParams):
        if start.tree.edges != ev.tree.edges:
            raise ValueError("warm start was built for a different tree")
        return start.to_vector()
    vec = np.asarray(start, dtype=float)
    if vec.shape != (ev.dim,):
        raise ValueError(f"warm start must have {ev.dim} entries")
    return vec


def minimize_gap(
    cm: CovarianceMatrix,
    tree,
    which: str,
    cfg: OptimizerConfig | None = None,
    starts: Sequence = (),
) -> DetectionResult:
    """Minimize d_p (``which="product"``) or d_s (``"sum"``) over the coefficients.

    `starts` are extra warm-start points (vectors or `CholeskyParams`),
    polished after the random restarts; their runs are appended to
    ``restart_values`` in order.
    """
    if which not in CRITERIA:
        raise ValueError(f"criterion must be one of {CRITERIA}, not {which!r}")
    cfg = cfg or OptimizerConfig()
    ev = Evaluator(cm, resolve_tree(tree))
    jobs = [(ev, which, cfg, k) for k in range(cfg.restarts)]
    if cfg.workers > 1 and cfg.restarts > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            runs = list(pool.map(_restart_star, jobs))
    else:
        runs = [_restart(*job) for job in jobs]
    runs += [_polish(ev, which, cfg, _vector(v, ev)) for v in starts]

    values = tuple(float(r[0]) for r in runs)
    best = int(np.argmin(values))  # first index wins ties
    params = CholeskyParams.from_vector(ev.tree, runs[best][1])
    report = evaluate(cm, params)
    value = report.d_p if which == "product" else report.d_s
    return DetectionResult(
        which=which,
        best_value=float(value),
        best_params=params,
        report=report,
        detected=bool(value < -DETECTION_TOL),
        converged=all(r[2] for r in runs),
        best_restart=best,
        restart_values=values,
    )


@dataclass(frozen=True)
class ThresholdResult:
    eta: float
    probes: tuple  # (eta, best_value, detected) in probing order

    def monotone(self) -> bool:
        """False if some probe contradicts monotone detection in eta."""
        det = [e for e, _, d in self.probes if d]
        non = [e for e, _, d in self.probes if not d]
        return not det or not non or min(det) > max(non)


def threshold_transmissivity(
    cm: CovarianceMatrix,
    tree,
    which: str,
    cfg: OptimizerConfig | None = None,
    eta_tol: float = 0.0025,
) -> ThresholdResult:
    """Smallest eta at which loss on all modes still leaves the state detected.

    Bisection assumes detection is monotone in eta; the probe trace is
    returned so violations of that assumption show up.
    """
    cfg = cfg or OptimizerConfig()
    tree = resolve_tree(tree)
    probes = []
    seen = []  # optimizers found so far, reused as warm starts

    def probe(eta):
        res = minimize_gap(lossy_channel(cm, eta), tree, which, cfg, starts=seen[-2:])
        probes.append((float(eta), res.best_value, res.detected))
        seen.append(res.best_params)
        return res.detected

    if not probe(1.0):
        raise PreconditionError("state is not detected without loss")
    lo, hi = 0.0, 1.0
    while hi - lo > eta_tol:
        mid = 0.5 * (lo + hi)
        if probe(mid):
            hi = mid
        else:
            lo = mid
    return ThresholdResult(hi, tuple(probes))


def scan_squeezing(
    factory: str | Callable[[float], CovarianceMatrix],
    which: str,
    r_grid: Sequence[float],
    cfg: OptimizerConfig | None = None,
    tree=None,
    warm: bool = True,
) -> list[tuple[float, float]]:
    """Minimized gap for each squeezing value, as (r, best_value) rows.

    With `warm`, the grid is swept twice (upward, then downward) and each
    point also starts from its neighbours' optimizers; the optimum moves
    smoothly with r, so this tracks it into the regime where random starts
    rarely find it.  The reported value is the better of the two sweeps.
    """
    if isinstance(factory, str) and factory not in FACTORIES:
        raise ValueError(f"unknown state family {factory!r}")
    make = FACTORIES[factory] if isinstance(factory, str) else factory
    grid = [float(r) for r in r_grid]
    if not all(math.isfinite(r) for r in grid):
        raise ValueError("squeezing grid must be finite")
    cfg = cfg or OptimizerConfig()
    results: dict[int, DetectionResult] = {}

    def run(i, starts, c=cfg):
        cm = make(grid[i])
        t = tree if tree is not None else _path(cm.modes)
        res = minimize_gap(cm, t, which, c, starts=starts)
        if i not in results or res.best_value < results[i].best_value:
            results[i] = res

    order = sorted(range(len(grid)), key=lambda i: grid[i])
    prev = None
    for i in order:
        run(i, [prev.best_params] if warm and prev is not None else [])
        prev = results[i]
    if warm:
        for i in reversed(order[:-1]):
            nxt = results[order[order.index(i) + 1]]
            run(i, [nxt.best_params], replace(cfg, restarts=1))
    return [(grid[i], results[i].best_value) for i in range(len(grid))]


def _path(n: int):
    from .trees import standard_linear_label

    return standard_linear_label(n)
