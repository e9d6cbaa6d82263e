"""Trace-form witnesses and synthesis of states they detect.

A witness Z = Z^x (+) Z^p is normalized so that Tr[gamma Z] >= 1 for every
biseparable gamma; a value below one certifies genuine multipartite
entanglement.  Given a witness, gamma = S^T S with S its symplectic
diagonalizer attains Tr[gamma Z] = 2 sum(nu), the smallest value over all
physical states.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import NamedTuple

import numpy as np

from . import _published
from .criteria import CholeskyParams, build_L, script_K_k
from .errors import (
    ConstructionInfeasibleError,
    InvalidDimensionError,
    ParameterError,
    UnknownFixtureError,
)
from .linalg import CovarianceMatrix, cholesky, is_physical, symmetrize, williamson
from .trees import bipartitions, published_tree


@dataclass(frozen=True, eq=False)
class WitnessMatrix:
    """Normalized witness; `x` and `p` are already divided by `normalization`."""

    x: np.ndarray
    p: np.ndarray
    normalization: float
    printed_normalization: float | None = None

    def __post_init__(self):
        x = symmetrize(self.x, name="witness x block")
        p = symmetrize(self.p, name="witness p block")
        if x.shape != p.shape:
            raise InvalidDimensionError("witness blocks must have the same size")
        if not self.normalization > 0:
            raise ParameterError("normalization must be positive")
        for name, blk in (("x", x), ("p", p)):
            if np.linalg.eigvalsh(blk)[0] < -1e-12:
                raise ParameterError(f"witness {name} block is not positive semidefinite")
        x.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "normalization", float(self.normalization))

    @property
    def modes(self) -> int:
        return self.x.shape[0]

    @property
    def full(self) -> np.ndarray:
        return CovarianceMatrix(self.x, self.p).full

    def to_dict(self) -> dict:
        out = {
            "modes": self.modes,
            "x": self.x.tolist(),
            "p": self.p.tolist(),
            "normalization": self.normalization,
        }
        if self.printed_normalization is not None:
            out["printed_normalization"] = self.printed_normalization
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessMatrix":
        return cls(data["x"], data["p"], data["normalization"], data.get("printed_normalization"))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "WitnessMatrix":
        return cls.from_dict(json.loads(text))


def min_script_K(params: CholeskyParams) -> float:
    return min(script_K_k(params, b) for b in bipartitions(params.order))


def witness_from_params(params: CholeskyParams) -> WitnessMatrix:
    """Z^alpha = L^alpha L^alpha^T divided by 2 min_k script_K_k."""
    if np.any(params.diag_x <= 0) or np.any(params.diag_p <= 0):
        raise ParameterError("witness construction needs strictly positive diagonal coefficients")
    norm = 2.0 * min_script_K(params)
    Lx, Lp = build_L(params, "x"), build_L(params, "p")
    return WitnessMatrix(Lx @ Lx.T / norm, Lp @ Lp.T / norm, norm)


def params_from_witness_blocks(tree, zx, zp) -> CholeskyParams:
    """Cholesky coefficients of unnormalized witness blocks on a labeled tree."""
    tree = published_tree(tree) if isinstance(tree, str) else tree
    entries = []
    for z in (zx, zp):
        L = cholesky(z)
        ell = {}
        for j, i in zip(*np.nonzero(np.abs(L) > 1e-12)):
            ell[(int(j) + 1, int(i) + 1)] = float(L[j, i])
        entries.append(ell)
    return CholeskyParams.from_entries(tree, entries[0], entries[1])


def published_witness(key: str) -> WitnessMatrix:
    """Published witness for tree `key`, renormalized by 2 min_k script_K_k.

    The printed divisor is kept as `printed_normalization`.
    """
    key = str(key)
    if key not in _published.WITNESSES:
        raise UnknownFixtureError(f"unknown witness {key!r}; known: {', '.join(_published.WITNESSES)}")
    printed, zx, zp = _published.WITNESSES[key]
    zx, zp = np.array(zx, dtype=float), np.array(zp, dtype=float)
    params = params_from_witness_blocks(key, zx, zp)
    norm = 2.0 * min_script_K(params)
    return WitnessMatrix(zx / norm, zp / norm, norm, printed)


class Detection(NamedTuple):
    trace: float
    detected: bool


def detects(cm: CovarianceMatrix, w: WitnessMatrix) -> Detection:
    """Tr[gamma Z] and whether it falls below one."""
    if cm.modes != w.modes:
        raise InvalidDimensionError(f"{cm.modes}-mode state vs {w.modes}-mode witness")
    tr = float(np.sum(cm.x * w.x) + np.sum(cm.p * w.p))
    return Detection(tr, tr < 1.0)


def state_from_witness(w: WitnessMatrix) -> CovarianceMatrix:
    """Pure state gamma = S^T S minimizing Tr[gamma Z]; fails if even that is >= 1."""
    s, nu = williamson(w.full)
    trace = 2.0 * float(np.sum(nu))
    if trace >= 1.0:
        raise ConstructionInfeasibleError(trace)
    gamma = s.T @ s
    return CovarianceMatrix.from_full(gamma, tol=1e-8 * max(1.0, np.abs(gamma).max()))


def _round_half_away(value: float, decimals: int) -> Decimal:
    return Decimal(repr(float(value))).quantize(Decimal(1).scaleb(-decimals), rounding=ROUND_HALF_UP)


class Regularized(NamedTuple):
    cm: CovarianceMatrix
    physical: bool


def round_and_regularize(cm: CovarianceMatrix, decimals: int, noise: float) -> Regularized:
    """Round every entry (half away from zero) and add `noise` on the diagonal.

    The arithmetic is done in decimal so that printed values come out exactly.
    """
    if decimals < 0 or noise < 0:
        raise ParameterError("decimals and noise must be non-negative")
    add = Decimal(repr(float(noise)))
    n = cm.modes

    def fix(block):
        out = np.empty((n, n))
        for i in range(n):
            for j in range(n):
                v = _round_half_away(block[i, j], decimals)
                out[i, j] = float(v + add if i == j else v)
        return out

    result = CovarianceMatrix(fix(cm.x), fix(cm.p))
    return Regularized(result, is_physical(result))
