"""Reproduction manifest: one seeded, self-checking case per published claim.

Every case recomputes a number from the library, compares it with the
expected value and reports the measurement.  Run them through
``cvgme reproduce <case id | all>``.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple

import numpy as np

from . import _published
from .criteria import CholeskyParams, evaluate, lhs_U, published_params, script_K_k, script_L_k
from .errors import UnknownFixtureError
from .linalg import (
    CovarianceMatrix,
    apply_symplectic,
    balanced_beam_splitter,
    min_symplectic_eigenvalue,
    partial_transpose,
    reduced_state,
    symplectic_form,
    williamson,
)
from .optimize import DETECTION_TOL, OptimizerConfig, minimize_gap, scan_squeezing, threshold_transmissivity
from .states import (
    fully_inseparable,
    ghz_cm,
    published_cm,
    test_bisep_cm,
    test_bisep_entries,
    test_bisep_rmax,
)
from .trees import bipartitions, enumerate_trees, find_center, published_tree, reverse_level_order_label
from .witness import published_witness, round_and_regularize, state_from_witness


class Outcome(NamedTuple):
    passed: bool | None  # None: not applicable
    measured: str


@dataclass(frozen=True)
class Case:
    id: str
    expected: str
    budget: float  # seconds
    run: Callable[[], Outcome]


@dataclass(frozen=True)
class CaseResult:
    id: str
    status: str  # "pass", "fail", "n/a" or "error"
    expected: str
    measured: str
    seconds: float
    budget: float

    @property
    def failed(self) -> bool:
        return self.status in ("fail", "error")

    def line(self) -> str:
        slow = " (over budget)" if self.seconds > self.budget else ""
        return (
            f"{self.status.upper():5s} {self.id:28s} measured {self.measured}; "
            f"expected {self.expected} [{self.seconds:.1f}s/{self.budget:.0f}s{slow}]"
        )


def agrees_4dp(value: np.ndarray, ref: np.ndarray) -> float:
    """Worst entry error in units of half a fourth-decimal digit, relative to max(1, |ref|).

    Values <= 1 mean agreement to four decimals.
    """
    err = np.abs(np.asarray(value) - np.asarray(ref)) / np.maximum(1.0, np.abs(ref))
    return float(err.max() / 5e-5)


def _within(value: float, ref: float, tol: float) -> Outcome:
    return Outcome(abs(value - ref) <= tol, f"{value:.5g}")


# fixed parameters


def _fixed(cm_key: str, params_key: str, which: str, ref: float, tol: float):
    def run():
        rep = evaluate(published_cm(cm_key), published_params(params_key))
        return _within(rep.d_p if which == "product" else rep.d_s, ref, tol)

    return run


FIXED = [
    ("table5/gamma1-dp", "gamma1", "gamma1_product", "product", -0.245, 0.005),
    ("table6/gamma1-ds", "gamma1", "gamma1_sum", "sum", -0.165, 0.005),
    ("table7/gamma2-ds", "gamma2", "gamma2_sum", "sum", -0.070, 0.005),
    ("table8/gamma3-ds", "gamma3", "gamma3_sum", "sum", -0.15, 0.01),
    ("table9/gamma3full-ds", "gamma3_full", "gamma3_full_sum", "sum", -17.87, 0.05),
    ("table10/gamma4a-ds", "gamma4a", "gamma4a_sum", "sum", -20.31, 0.05),
    ("table11/gamma7-dp", "gamma7", "gamma7_product", "product", -0.111, 0.005),
]


# witnesses


def _witness_case(key: str):
    def run():
        got = state_from_witness(published_witness(key))
        ref = published_cm(_published.WITNESS_STATES[key])
        score = max(agrees_4dp(got.x, ref.x), agrees_4dp(got.p, ref.p))
        return Outcome(score <= 1.0, f"worst entry at {score:.2f} of the 4-decimal tolerance")

    return run


def _rounded_state():
    reg = round_and_regularize(published_cm("gamma3_full"), 2, 0.01)
    ref = published_cm("gamma3")
    same = np.array_equal(reg.cm.x, ref.x) and np.array_equal(reg.cm.p, ref.p)
    return Outcome(same and reg.physical, f"exact match {same}, physical {reg.physical}")


# optimizer cases

TABLE2_CONFIG = OptimizerConfig(box=10.0, restarts=8, max_iters=5000, seed=0)


def _table2(key: str, ref: float | None):
    def run():
        if ref is None:
            return Outcome(None, "no published state")
        cm = published_cm(_published.WITNESS_STATES[key])
        res = minimize_gap(cm, key, "sum", TABLE2_CONFIG)
        bound = ref + 0.05 * abs(ref) + 0.01
        return Outcome(res.best_value <= bound, f"{res.best_value:.4f} (bound {bound:.4f})")

    return run


def _ghz_curve():
    grid = np.round(np.arange(0.0, 2.0 + 1e-9, 0.05), 2)
    rows = scan_squeezing("ghz", "product", grid, OptimizerConfig(restarts=2))
    zero = abs(rows[0][1]) <= 1e-6
    neg = all(v < -DETECTION_TOL for r, v in rows[1:])
    worst = max(v for r, v in rows[1:])
    return Outcome(zero and neg, f"r=0: {rows[0][1]:.1e}; largest value for r>0: {worst:.3e}")


def _split_squeezed_onset():
    grid = np.round(np.arange(0.5, 0.7 + 1e-9, 0.025), 3)
    rows = scan_squeezing("split-squeezed", "product", grid, OptimizerConfig(restarts=8))
    flags = [v < -DETECTION_TOL for _, v in rows]
    if not any(flags) or flags[0]:
        return Outcome(False, "no onset inside the grid")
    first = flags.index(True)
    onset = 0.5 * (rows[first - 1][0] + rows[first][0])
    monotone = all(flags[first:])
    return Outcome(0.55 < onset < 0.65 and monotone, f"onset near r = {onset:.4f}")


def _bisep(which: str):
    def run():
        grid = np.round(np.arange(0.0, 1.2 + 1e-9, 0.05), 2)
        rows = scan_squeezing("test-bisep", which, grid, OptimizerConfig(restarts=3), warm=False)
        low = min(v for _, v in rows)
        return Outcome(low >= -DETECTION_TOL, f"smallest minimum {low:.2e}")

    return run


def _gamma2_product():
    res = minimize_gap(published_cm("gamma2"), "3", "product", OptimizerConfig(restarts=64))
    return Outcome(res.best_value >= -DETECTION_TOL, f"{res.best_value:.3e}")


def _ghz4():
    low = math.inf
    for tree in ("4a", "4b"):
        for which in ("product", "sum"):
            for r in (0.5, 1.0, 1.5, 2.0):
                res = minimize_gap(ghz_cm(r, 4), tree, which, OptimizerConfig(restarts=4))
                low = min(low, res.best_value)
    return Outcome(low >= -DETECTION_TOL, f"smallest minimum {low:.2e}")


def _loss(cm_fn, ref: float, tol: float):
    def run():
        res = threshold_transmissivity(cm_fn(), "3", "product", OptimizerConfig(restarts=8), eta_tol=0.0025)
        return Outcome(abs(res.eta - ref) <= tol and res.monotone(), f"eta_min {res.eta:.4f}")

    return run


# appendix A


def _rmax():
    return _within(test_bisep_rmax(), 1.24, 0.01)


def mu_minus_closed_form(r: float) -> float:
    b, e = test_bisep_entries(r)
    alpha = 2 * b * b + 3 * e * e
    beta = (b * b - 2 * e * e) ** 2 - (b * e) ** 2
    return math.sqrt((alpha - math.sqrt(alpha * alpha - 4 * beta)) / 2)


def mu_minus(r: float) -> float:
    """PPT eigenvalue across 3|12 after the beam splitter on modes 1, 2 decouples mode 2."""
    mixed = apply_symplectic(test_bisep_cm(r), balanced_beam_splitter(3, 1, 2))
    pair = reduced_state(CovarianceMatrix.from_full(mixed), [1, 3])
    return min_symplectic_eigenvalue(partial_transpose(pair, [2]))


def _mu_minus():
    worst = max(abs(mu_minus(r) - mu_minus_closed_form(r)) for r in np.linspace(0.0, 2.0, 50))
    return Outcome(worst <= 1e-9, f"max deviation {worst:.1e}")


def _full_insep():
    verdicts = {r: fully_inseparable(test_bisep_cm(r)) for r in (0.2, 0.6, 1.0, 1.2, 1.3)}
    ok = all(verdicts[r] for r in (0.2, 0.6, 1.0, 1.2)) and not verdicts[1.3]
    return Outcome(ok, ", ".join(f"r={r}: {v}" for r, v in verdicts.items()))


# property suites


def _random_params(rng, tree) -> CholeskyParams:
    return CholeskyParams.from_vector(tree, rng.uniform(-2, 2, CholeskyParams.size(tree)))


def _random_cm(rng, n) -> CovarianceMatrix:
    a = rng.normal(size=(n, n))
    b = rng.normal(size=(n, n))
    return CovarianceMatrix(a @ a.T + 0.5 * np.eye(n), b @ b.T + 0.5 * np.eye(n))


def _trace_identity():
    rng = np.random.default_rng(11)
    keys = list(_published.TREES)
    worst = 0.0
    for _ in range(200):
        tree = published_tree(keys[rng.integers(len(keys))])
        p, cm = _random_params(rng, tree), _random_cm(rng, tree.order)
        for q, g, d, o in (("x", cm.x, p.diag_x, p.off_x), ("p", cm.p, p.diag_p, p.off_p)):
            # explicit two-term variances, one per edge, then the root
            parent = {i: (j, o[k]) for k, (j, i) in enumerate(tree.edges)}
            total = 0.0
            for i in range(1, tree.order + 1):
                li = d[i - 1]
                if i in parent:
                    j, lj = parent[i]
                    total += 0.5 * (li * li * g[i - 1, i - 1] + 2 * li * lj * g[i - 1, j - 1] + lj * lj * g[j - 1, j - 1])
                else:
                    total += 0.5 * li * li * g[i - 1, i - 1]
            u = lhs_U(cm, p)[0 if q == "x" else 1]
            worst = max(worst, abs(u - total) / max(1.0, abs(total)))
    return Outcome(worst <= 1e-10, f"max relative deviation {worst:.1e}")


def _three_mode_identities():
    rng = np.random.default_rng(12)
    tree = published_tree("3")
    a, b, c = bipartitions(3)  # 1|23, 12|3, 13|2
    exact = ordered = True
    for _ in range(200):
        # multiples of 1/8 keep every product and sum exact in binary floating point
        p = CholeskyParams.from_vector(tree, rng.integers(-16, 17, CholeskyParams.size(tree)) / 8.0)
        exact &= script_L_k(p, c) == script_L_k(p, a) + script_L_k(p, b)
        kc = script_K_k(p, c)
        ordered &= script_K_k(p, a) <= kc and script_K_k(p, b) <= kc
    return exact, ordered


def _L_additivity():
    exact, _ = _three_mode_identities()
    return Outcome(exact, f"L(13|2) == L(1|23) + L(12|3) exactly: {exact}")


def _K_ordering():
    _, ordered = _three_mode_identities()
    return Outcome(ordered, f"K(1|23), K(12|3) <= K(13|2): {ordered}")


def _williamson_residuals():
    rng = np.random.default_rng(13)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 7))
        a = rng.normal(size=(2 * n, 2 * n))
        z = a @ a.T + 0.1 * np.eye(2 * n)
        s, nu = williamson(z)
        om = symplectic_form(n)
        worst = max(
            worst,
            np.abs(s @ z @ s.T - np.diag(np.concatenate([nu, nu]))).max() / max(1.0, nu.max()),
            np.abs(s @ om @ s.T - om).max(),
        )
    return Outcome(worst <= 1e-8, f"max residual {worst:.1e}")


def _pruefer_count(n: int) -> int:
    """Isomorphism classes among all labeled trees, via Pruefer sequences."""
    from itertools import product

    from .trees import Tree, canonical_code

    seen = set()
    for seq in product(range(1, n + 1), repeat=n - 2):
        degree = [1] * (n + 1)
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(u for u in range(1, n + 1) if degree[u] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = [x for x in range(1, n + 1) if degree[x] == 1]
        edges.append((u, w))
        seen.add(canonical_code(Tree(n, edges)))
    return len(seen)


def _tree_counts():
    published = {3: 1, 4: 2, 5: 3, 6: 6}
    got = {n: len(enumerate_trees(n)) for n in range(3, 9)}
    oracle = {n: _pruefer_count(n) for n in (7, 8)}
    ok = all(got[n] == v for n, v in published.items()) and all(got[n] == oracle[n] for n in oracle)
    return Outcome(ok, ", ".join(f"{n}: {c}" for n, c in got.items()))


def _labelings():
    count = 0
    for n in range(2, 11):
        for tree in enumerate_trees(n):
            for root in find_center(tree).vertices:
                reverse_level_order_label(tree, root)  # validates, raises on failure
                count += 1
    return Outcome(True, f"{count} labelings validated")


# registry


def _build() -> dict[str, Case]:
    cases = []
    for cid, cm, params, which, ref, tol in FIXED:
        cases.append(Case(cid, f"{ref} ± {tol}", 1.0, _fixed(cm, params, which, ref, tol)))
    for key in _published.WITNESS_STATES:
        cases.append(Case(f"appC/z{key}", "printed CM to 4 decimals", 2.0, _witness_case(key)))
    cases.append(Case("eq47/round", "rounded CM printed exactly, physical", 1.0, _rounded_state))
    for key, ref in _published.TABLE2_DS.items():
        exp = "not applicable" if ref is None else f"<= {ref} + 5% + 0.01"
        cases.append(Case(f"table2/{key}", exp, 20.0, _table2(key, ref)))
    cases += [
        Case("fig4/ghz", "negative for r in 0.05..2.0, |value| <= 1e-6 at r=0", 240.0, _ghz_curve),
        Case("fig4/split-squeezed", "detection onset in (0.55, 0.65)", 150.0, _split_squeezed_onset),
        Case("sec5/test-bisep-product", "minimum >= -1e-6 for r in 0..1.2", 90.0, _bisep("product")),
        Case("sec5/test-bisep-sum", "minimum >= -1e-6 for r in 0..1.2", 90.0, _bisep("sum")),
        Case("appA/rmax", "1.24 ± 0.01", 1.0, _rmax),
        Case("appA/mu-minus", "closed form within 1e-9 on 50 points", 1.0, _mu_minus),
        Case("appA/full-insep", "true at 0.2, 0.6, 1.0, 1.2; false at 1.3", 1.0, _full_insep),
        Case("loss/ghz", "0.96 ± 0.01", 180.0, _loss(lambda: ghz_cm(0.65), 0.96, 0.01)),
        Case("loss/gamma1", "0.92 ± 0.01", 180.0, _loss(lambda: published_cm("gamma1"), 0.92, 0.01)),
        Case("loss/gamma7", "0.90 ± 0.015", 180.0, _loss(lambda: published_cm("gamma7"), 0.90, 0.015)),
        Case("props/trace-variance", "agreement within 1e-10 on 200 cases", 5.0, _trace_identity),
        Case("props/L-additivity", "exact on 200 cases", 5.0, _L_additivity),
        Case("props/K-ordering", "holds on 200 cases", 5.0, _K_ordering),
        Case("props/williamson", "residuals <= 1e-8 on 100 inputs", 5.0, _williamson_residuals),
        Case("props/tree-counts", "3:1 4:2 5:3 6:6, 7 and 8 match Pruefer", 30.0, _tree_counts),
        Case("props/labelings", "every labeling up to order 10 validates", 30.0, _labelings),
        Case("neg/gamma2-product", "minimum >= -1e-6 with 64 restarts", 60.0, _gamma2_product),
        Case("neg/ghz4", "minimum >= -1e-6 on 4a, 4b for r in 0.5..2", 120.0, _ghz4),
    ]
    return {c.id: c for c in cases}


MANIFEST = _build()


def case_ids() -> list[str]:
    return list(MANIFEST)


def select(spec: str | Iterable[str]) -> list[str]:
    """Case ids for "all", an exact id, a group prefix ending in "/", or a list of those."""
    specs = [spec] if isinstance(spec, str) else list(spec)
    out = []
    for s in specs:
        if s == "all":
            ids = case_ids()
        elif s in MANIFEST:
            ids = [s]
        elif s.endswith("/") and any(c.startswith(s) for c in MANIFEST):
            ids = [c for c in MANIFEST if c.startswith(s)]
        else:
            raise UnknownFixtureError(f"unknown case {s!r}")
        out += [i for i in ids if i not in out]
    return out


def run_case(case_id: str) -> CaseResult:
    case = MANIFEST[case_id]
    t0 = time.perf_counter()
    try:
        outcome = case.run()
        status = "n/a" if outcome.passed is None else ("pass" if outcome.passed else "fail")
        measured = outcome.measured
    except Exception as exc:  # a crashing case is a failed case, not a crashed run
        status, measured = "error", f"{type(exc).__name__}: {exc}"
    return CaseResult(case_id, status, case.expected, measured, time.perf_counter() - t0, case.budget)


def run_cases(spec="all", parallel: int = 1, progress: Callable[[CaseResult], None] | None = None) -> list[CaseResult]:
    ids = select(spec)
    if parallel > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            results = list(pool.map(run_case, ids))
        if progress:
            for r in results:
                progress(r)
        return results
    results = []
    for cid in ids:
        results.append(run_case(cid))
        if progress:
            progress(results[-1])
    return results
