"""Covariance matrices of the benchmark states and the published fixtures."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np

from scipy.optimize import bisect

from . import _published
from .errors import NumericInputError, UnknownFixtureError
from .linalg import CovarianceMatrix, _check_modes, min_symplectic_eigenvalue, partial_transpose
from .trees import bipartitions


def _check_r(r: float) -> float:
    r = float(r)
    if not math.isfinite(r) or r < 0:
        raise NumericInputError(f"squeezing parameter must be finite and >= 0, got {r}")
    return r


def r_to_db(r: float) -> float:
    """Squeezing in decibels, 10 log10(e^{-2r}); r = 0.65 gives about -5.65 dB."""
    return 10.0 * math.log10(math.exp(-2.0 * _check_r(r)))


def db_to_r(db: float) -> float:
    """Inverse of `r_to_db`.  Either sign of `db` is read as the same squeezing."""
    return abs(float(db)) * math.log(10.0) / 20.0


def ghz_cm(r: float, modes: int = 3) -> CovarianceMatrix:
    """Symmetric GHZ-like pure state.

    Diagonal a_pm = (e^{pm 2r} + (N-1) e^{-+2r}) / N and off-diagonal
    c_pm = (e^{pm 2r} - e^{-+2r}) / N, upper sign for x, lower sign for p.
    """
    r = _check_r(r)
    if modes < 2:
        raise NumericInputError("a GHZ-like state needs at least two modes")
    up, down = math.exp(2 * r), math.exp(-2 * r)

    def block(big, small):
        a = (big + (modes - 1) * small) / modes
        c = (big - small) / modes
        return np.full((modes, modes), c) + (a - c) * np.eye(modes)

    return CovarianceMatrix(block(up, down), block(down, up))


def tmsv_cm(r: float) -> CovarianceMatrix:
    """Two-mode squeezed vacuum, a = cosh 2r, c = sinh 2r."""
    r = _check_r(r)
    a, c = math.cosh(2 * r), math.sinh(2 * r)
    return CovarianceMatrix([[a, c], [c, a]], [[a, -c], [-c, a]])


def embed_pair(cm2: CovarianceMatrix, modes: int, i: int, j: int) -> CovarianceMatrix:
    """Place a two-mode CM on modes i, j with vacuum everywhere else."""
    a, b = _check_modes([i], modes)[0], _check_modes([j], modes)[0]
    x, p = np.eye(modes), np.eye(modes)
    for blk, src in ((x, cm2.x), (p, cm2.p)):
        blk[np.ix_([a, b], [a, b])] = src
    return CovarianceMatrix(x, p)


def test_bisep_cm(r: float) -> CovarianceMatrix:
    """Equal mixture of a TMSV on each of the pairs 12, 13, 23 (vacuum on the third mode).

    Biseparable by construction, yet entangled across every split for
    0 < r < r_max with r_max close to 1.24.
    """
    t = tmsv_cm(r)
    parts = [embed_pair(t, 3, 1, 2), embed_pair(t, 3, 1, 3), embed_pair(t, 3, 2, 3)]
    return CovarianceMatrix(
        sum(c.x for c in parts) / 3.0, sum(c.p for c in parts) / 3.0
    )


test_bisep_cm.__test__ = False  # keep pytest from collecting it


def test_bisep_entries(r: float) -> tuple[float, float]:
    """(b, e) of the symmetric form: b = (2 cosh 2r + 1)/3, e = sinh(2r)/3."""
    r = _check_r(r)
    return (2 * math.cosh(2 * r) + 1) / 3.0, math.sinh(2 * r) / 3.0


test_bisep_entries.__test__ = False


def rmax_polynomial(r: float) -> float:
    """Vanishes where the PPT eigenvalue of `test_bisep_cm` returns to one."""
    e = math.exp(2 * r)
    return 3 * e**6 - 34 * e**5 - 35 * e**4 + 132 * e**3 - 35 * e**2 - 34 * e + 3


def test_bisep_rmax(xtol: float = 1e-12) -> float:
    """Largest squeezing for which the test state stays fully inseparable (about 1.24)."""
    return bisect(rmax_polynomial, 0.5, 2.0, xtol=xtol)


test_bisep_rmax.__test__ = False


def ppt_entangled(cm: CovarianceMatrix, side, tol: float = 1e-12) -> bool:
    """PPT test across the split `side` | rest."""
    return min_symplectic_eigenvalue(partial_transpose(cm, side)) < 1.0 - tol


def fully_inseparable(cm: CovarianceMatrix, tol: float = 1e-12) -> bool:
    """True if the PPT test flags entanglement across every bipartition."""
    return all(ppt_entangled(cm, b.side_I, tol) for b in bipartitions(cm.modes))


def split_squeezed_cm(r: float) -> CovarianceMatrix:
    """One squeezed mode distributed over three modes by two balanced beam splitters."""
    r = _check_r(r)

    def block(sign):
        ex = math.exp(sign * 2 * r)
        a = 2 * (1 + ex)
        b = math.sqrt(2) * (1 - ex)
        c = 3 + ex
        d = 1 - ex
        return np.array([[a, b, -b], [b, c, d], [-b, d, c]]) / 4.0

    return CovarianceMatrix(block(+1), block(-1))


def lossy_channel(cm: CovarianceMatrix, eta: float, modes: Iterable[int] | None = None) -> CovarianceMatrix:
    """Pure-loss channel gamma -> eta gamma + (1 - eta) I on the chosen modes (default all)."""
    eta = float(eta)
    if not (0.0 <= eta <= 1.0):
        raise NumericInputError(f"transmissivity must lie in [0, 1], got {eta}")
    n = cm.modes
    idx = list(range(n)) if modes is None else _check_modes(modes, n)
    t = np.ones(n)
    t[idx] = math.sqrt(eta)
    noise = np.diag(1.0 - t * t)
    scale = np.outer(t, t)
    return CovarianceMatrix(cm.x * scale + noise, cm.p * scale + noise)


PUBLISHED_CM_KEYS = tuple(_published.CMS)


def _cm_key(key: str) -> str:
    k = str(key).strip().replace("γ", "gamma").replace("′", "_full").replace("'", "_full")
    if not k.startswith("gamma"):
        k = "gamma" + k
    return k


def published_cm(key: str) -> CovarianceMatrix:
    """Published covariance matrix, e.g. ``published_cm("gamma4a")`` or ``published_cm("γ7")``."""
    k = _cm_key(key)
    if k not in _published.CMS:
        raise UnknownFixtureError(f"unknown covariance matrix {key!r}; known: {', '.join(PUBLISHED_CM_KEYS)}")
    x, p = _published.CMS[k]
    return CovarianceMatrix(np.triu(x) + np.triu(x, 1).T, np.triu(p) + np.triu(p, 1).T)


def published_cm_note(key: str) -> str | None:
    return _published.CM_NOTES.get(_cm_key(key))


FACTORIES = {
    "ghz": ghz_cm,
    "ghz4": lambda r: ghz_cm(r, 4),
    "tmsv": tmsv_cm,
    "test-bisep": test_bisep_cm,
    "split-squeezed": split_squeezed_cm,
}
