import numpy as np
import pytest

from cvgme.criteria import CholeskyParams, evaluate
from cvgme.errors import PreconditionError
from cvgme.linalg import CovarianceMatrix, apply_symplectic, beam_splitter, squeezer
from cvgme.optimize import (
    DETECTION_TOL,
    OptimizerConfig,
    minimize_gap,
    scan_squeezing,
    threshold_transmissivity,
)
from cvgme.states import embed_pair, ghz_cm, published_cm, tmsv_cm
from cvgme.trees import published_tree

FAST = OptimizerConfig(restarts=2, candidates=256, max_iters=600, rounds=2)


def random_biseparable(rng):
    """Random convex mixture of states that are each a product across some split."""
    parts = []
    for _ in range(int(rng.integers(1, 4))):
        i, j = rng.choice([1, 2, 3], size=2, replace=False)
        cm = embed_pair(tmsv_cm(float(rng.uniform(0, 1.2))), 3, int(i), int(j))
        s = np.eye(6)
        for mode in (1, 2, 3):
            s = squeezer(3, mode, float(rng.uniform(-0.4, 0.4))) @ s
        for a, b in ((1, 2), (1, 3)):
            if {a, b} == {int(i), int(j)}:
                s = beam_splitter(3, a, b, float(rng.uniform(0, np.pi))) @ s
        parts.append(CovarianceMatrix.from_full(apply_symplectic(cm, s)))
    w = rng.dirichlet(np.ones(len(parts)))
    noise = float(rng.uniform(0, 0.2))
    x = sum(wk * p.x for wk, p in zip(w, parts)) + noise * np.eye(3)
    p = sum(wk * p.p for wk, p in zip(w, parts)) + noise * np.eye(3)
    return CovarianceMatrix(x, p)


def test_config_validation():
    for bad in ({"box": 0}, {"restarts": 0}, {"candidates": 0}, {"rounds": 0}, {"tol": 0}, {"workers": 0}):
        with pytest.raises(ValueError):
            OptimizerConfig(**bad)
    with pytest.raises(ValueError):
        minimize_gap(ghz_cm(0.5), "3", "difference", FAST)


def test_bitwise_deterministic():
    a = minimize_gap(ghz_cm(0.8), "3", "sum", FAST)
    b = minimize_gap(ghz_cm(0.8), "3", "sum", FAST)
    assert a.restart_values == b.restart_values
    assert a.best_params == b.best_params


def test_restarts_are_independent_streams():
    short = minimize_gap(ghz_cm(0.4), "3", "product", FAST)
    long = minimize_gap(ghz_cm(0.4), "3", "product", OptimizerConfig(**{**FAST.__dict__, "restarts": 4}))
    assert long.restart_values[:2] == short.restart_values
    assert long.best_value <= short.best_value


def test_seed_changes_streams():
    a = minimize_gap(ghz_cm(0.8), "3", "sum", FAST)
    b = minimize_gap(ghz_cm(0.8), "3", "sum", OptimizerConfig(**{**FAST.__dict__, "seed": 1}))
    assert a.restart_values != b.restart_values


@pytest.mark.parametrize("which", ["product", "sum"])
def test_detected_results_are_sound(which):
    cm = ghz_cm(1.0) if which == "product" else published_cm("gamma1")
    res = minimize_gap(cm, "3", which, FAST)
    assert res.detected
    rep = evaluate(cm, res.best_params)
    assert (rep.d_p if which == "product" else rep.d_s) == res.best_value < -DETECTION_TOL
    assert np.abs(res.best_params.to_vector()).max() <= FAST.box + 1e-12
    assert min(res.restart_values) == pytest.approx(res.best_value, abs=1e-12)


def test_result_serializes():
    d = minimize_gap(ghz_cm(1.0), "3", "product", FAST).to_dict()
    assert d["criterion"] == "product" and d["detected"] and len(d["restart_values"]) == 2


def test_symmetric_ghz_escapes_the_sum_form():
    res = minimize_gap(ghz_cm(1.0), "3", "sum", FAST)
    assert not res.detected and abs(res.best_value) < 1e-9


def test_vacuum_minimum_is_zero():
    res = minimize_gap(CovarianceMatrix.vacuum(3), "3", "sum", FAST)
    assert not res.detected
    assert res.best_value >= -1e-12


def test_no_false_positives_on_biseparable_states():
    rng = np.random.default_rng(7)
    cfg = OptimizerConfig(restarts=1, candidates=128, max_iters=400, rounds=1)
    for _ in range(50):
        cm = random_biseparable(rng)
        for which in ("product", "sum"):
            res = minimize_gap(cm, "3", which, cfg)
            assert res.best_value >= -DETECTION_TOL


def test_warm_start_is_appended():
    table = published_tree("4a")
    ref = minimize_gap(published_cm("gamma4a"), table, "sum", OptimizerConfig(box=10, restarts=1, max_iters=300, rounds=1))
    res = minimize_gap(
        published_cm("gamma4a"),
        table,
        "sum",
        OptimizerConfig(box=10, restarts=1, max_iters=300, rounds=1),
        starts=[ref.best_params, ref.best_params.to_vector()],
    )
    assert len(res.restart_values) == 3
    assert res.restart_values[0] == ref.restart_values[0]
    assert res.best_value <= ref.best_value


def test_witness_mode_keeps_diagonal_positive():
    cfg = OptimizerConfig(restarts=8, witness=True)
    res = minimize_gap(published_cm("gamma1"), "3", "sum", cfg)
    assert res.detected
    assert np.all(res.best_params.diag_x > 0) and np.all(res.best_params.diag_p > 0)


def test_parallel_matches_serial():
    cfg = OptimizerConfig(**{**FAST.__dict__, "restarts": 3})
    serial = minimize_gap(ghz_cm(0.9), "3", "sum", cfg)
    parallel = minimize_gap(ghz_cm(0.9), "3", "sum", OptimizerConfig(**{**cfg.__dict__, "workers": 2}))
    assert parallel.restart_values == serial.restart_values


def test_threshold_requires_detection_without_loss():
    with pytest.raises(PreconditionError):
        threshold_transmissivity(CovarianceMatrix.vacuum(3), "3", "sum", FAST)


def test_threshold_brackets_and_probes():
    res = threshold_transmissivity(ghz_cm(1.0), "3", "product", FAST, eta_tol=0.05)
    assert 0 < res.eta <= 1
    assert res.probes[0][0] == 1.0 and res.probes[0][2]
    assert res.monotone()
    below = [e for e, _, d in res.probes if not d]
    assert not below or max(below) >= res.eta - 0.05


def test_scan_validation_and_shape():
    with pytest.raises(ValueError):
        scan_squeezing("unicorn", "sum", [0.5])
    with pytest.raises(ValueError):
        scan_squeezing("ghz", "sum", [float("nan")])
    rows = scan_squeezing("ghz", "product", [1.0, 0.0, 0.5], FAST)
    assert [r for r, _ in rows] == [1.0, 0.0, 0.5]
    assert rows[1][1] == pytest.approx(0.0, abs=1e-9)
    assert rows[0][1] < rows[2][1] < 0


def test_scan_warm_never_worse_than_cold():
    grid = [0.2, 0.3, 0.4]
    cold = scan_squeezing("ghz", "product", grid, FAST, warm=False)
    warm = scan_squeezing("ghz", "product", grid, FAST, warm=True)
    for (_, c), (_, w) in zip(cold, warm):
        assert w <= c + 1e-12


def test_best_params_vector_length():
    res = minimize_gap(ghz_cm(0.5, 4), "4b", "sum", FAST)
    assert res.best_params.to_vector().size == CholeskyParams.size(published_tree("4b"))
