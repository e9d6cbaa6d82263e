"""Dense symmetric and symplectic matrix kernel.

Phase-space vectors are ordered (x_1, ..., x_N, p_1, ..., p_N).  Covariance
matrices follow the anticommutator convention, so the vacuum is the
identity.  Mode indices are 1-based wherever they cross the public API.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.linalg import schur

from .errors import (
    DecompositionError,
    InvalidDimensionError,
    InvalidSplitError,
    InvalidSymplecticError,
    NumericInputError,
)

SYMMETRY_TOL = 1e-9
SYMPLECTIC_TOL = 1e-6
PHYSICALITY_TOL = 1e-9


def _as_square(a, name="matrix"):
    a = np.array(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InvalidDimensionError(f"{name} must be a non-empty square matrix")
    if not np.all(np.isfinite(a)):
        raise NumericInputError(f"{name} has non-finite entries")
    return a


def symmetrize(a, tol=SYMMETRY_TOL, name="matrix"):
    """Return `a` with its lower triangle copied from the upper one.

    Raises if the two triangles disagree by more than `tol`.
    """
    a = _as_square(a, name)
    asym = np.max(np.abs(a - a.T))
    if asym > tol:
        raise NumericInputError(f"{name} is not symmetric (max asymmetry {asym:.3g})")
    upper = np.triu(a)
    return upper + np.triu(a, 1).T


@dataclass(frozen=True, eq=False)
class CovarianceMatrix:
    """Covariance matrix without x-p correlations, gamma = x_block (+) p_block."""

    x: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        x = symmetrize(self.x, name="x block")
        p = symmetrize(self.p, name="p block")
        if x.shape != p.shape:
            raise InvalidDimensionError("x and p blocks must have the same size")
        x.setflags(write=False)
        p.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "p", p)

    @property
    def modes(self) -> int:
        return self.x.shape[0]

    @property
    def full(self) -> np.ndarray:
        n = self.modes
        out = np.zeros((2 * n, 2 * n))
        out[:n, :n] = self.x
        out[n:, n:] = self.p
        return out

    @classmethod
    def from_full(cls, gamma, tol=SYMMETRY_TOL) -> "CovarianceMatrix":
        """Split a full 2N x 2N matrix; its x-p blocks must vanish within `tol`."""
        gamma = _as_square(gamma, "covariance matrix")
        if gamma.shape[0] % 2:
            raise InvalidDimensionError("covariance matrix must have even size")
        n = gamma.shape[0] // 2
        cross = max(np.max(np.abs(gamma[:n, n:])), np.max(np.abs(gamma[n:, :n])))
        if cross > tol:
            raise NumericInputError(f"x-p correlations of size {cross:.3g} are not supported")
        return cls(gamma[:n, :n], gamma[n:, n:])

    @classmethod
    def vacuum(cls, modes: int) -> "CovarianceMatrix":
        if modes < 1:
            raise InvalidDimensionError("modes must be >= 1")
        return cls(np.eye(modes), np.eye(modes))

    def to_dict(self) -> dict:
        return {"modes": self.modes, "x": self.x.tolist(), "p": self.p.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "CovarianceMatrix":
        cm = cls(data["x"], data["p"])
        if "modes" in data and int(data["modes"]) != cm.modes:
            raise InvalidDimensionError(
                f"'modes' is {data['modes']} but the blocks are {cm.modes}x{cm.modes}"
            )
        return cm

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "CovarianceMatrix":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, CovarianceMatrix):
            return NotImplemented
        return np.array_equal(self.x, other.x) and np.array_equal(self.p, other.p)

    def __repr__(self):
        return f"CovarianceMatrix(modes={self.modes})"


def symplectic_form(modes: int) -> np.ndarray:
    if modes < 1:
        raise InvalidDimensionError("modes must be >= 1")
    eye = np.eye(modes)
    zero = np.zeros((modes, modes))
    return np.block([[zero, eye], [-eye, zero]])


def _full(cm) -> np.ndarray:
    if isinstance(cm, CovarianceMatrix):
        return cm.full
    g = _as_square(cm, "covariance matrix")
    if g.shape[0] % 2:
        raise InvalidDimensionError("phase-space matrices must have even size")
    return g


def symplectic_eigenvalues(cm) -> np.ndarray:
    """Symplectic eigenvalues of a positive-definite matrix, ascending.

    Uses the Hermitian matrix i gamma^{1/2} Omega gamma^{1/2}, which is similar
    to i Omega gamma and whose spectrum comes in exact +-nu pairs.
    """
    g = _full(cm)
    n = g.shape[0] // 2
    w, v = np.linalg.eigh(g)
    if w[0] <= 0:
        raise NumericInputError("matrix is not positive definite")
    root = (v * np.sqrt(w)) @ v.T
    a = root @ symplectic_form(n) @ root
    spec = np.linalg.eigvalsh(1j * a)
    return np.sort(spec[n:])


def min_symplectic_eigenvalue(cm) -> float:
    return float(symplectic_eigenvalues(cm)[0])


def is_physical(cm, tol: float = PHYSICALITY_TOL) -> bool:
    """True iff gamma + i Omega >= 0, i.e. every symplectic eigenvalue >= 1 - tol."""
    g = _full(cm)
    if np.linalg.eigvalsh(g)[0] <= 0:
        return False
    return bool(min_symplectic_eigenvalue(g) >= 1.0 - tol)


def cholesky(z) -> np.ndarray:
    """Lower-triangular L with L L^T = z and strictly positive diagonal."""
    z = symmetrize(z)
    n = z.shape[0]
    L = np.zeros_like(z)
    for i in range(n):
        pivot = z[i, i] - L[i, :i] @ L[i, :i]
        if not pivot > 0:
            raise DecompositionError(i + 1, float(pivot))
        L[i, i] = np.sqrt(pivot)
        L[i + 1:, i] = (z[i + 1:, i] - L[i + 1:, :i] @ L[i, :i]) / L[i, i]
    return L


def williamson(z) -> tuple[np.ndarray, np.ndarray]:
    """Symplectic diagonalization S z S^T = diag(nu, nu).

    Returns ``(S, nu)`` with ``nu`` sorted descending.  S is built from the
    real Schur form of z^{-1/2} Omega z^{-1/2}; within each conjugate pair the
    x-like column is the one whose largest-magnitude entry is positive.
    """
    z = symmetrize(_full(z), name="witness")
    n = z.shape[0] // 2
    w, v = np.linalg.eigh(z)
    if w[0] <= 0:
        raise NumericInputError("williamson() needs a positive-definite matrix")
    inv_root = (v / np.sqrt(w)) @ v.T
    a = inv_root @ symplectic_form(n) @ inv_root
    a = 0.5 * (a - a.T)
    t, o = schur(a, output="real")

    cols_x, cols_p, freqs = [], [], []
    for k in range(n):
        u, q = o[:, 2 * k], o[:, 2 * k + 1]
        f = t[2 * k, 2 * k + 1]
        if f < 0:
            u, q, f = q, u, -f
        # (u, q) -> (-u, -q) keeps the canonical form, so fix the overall sign.
        if u[np.argmax(np.abs(u))] < 0:
            u, q = -u, -q
        cols_x.append(u)
        cols_p.append(q)
        freqs.append(f)

    nu = 1.0 / np.asarray(freqs)
    order = np.argsort(-nu, kind="stable")
    nu = nu[order]
    basis = np.hstack([np.array(cols_x).T[:, order], np.array(cols_p).T[:, order]])
    scale = np.sqrt(np.concatenate([nu, nu]))
    s = (scale[:, None] * basis.T) @ inv_root
    return s, nu


def is_symplectic(s, tol: float = SYMPLECTIC_TOL) -> bool:
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1] or s.shape[0] % 2:
        return False
    om = symplectic_form(s.shape[0] // 2)
    return bool(np.max(np.abs(s @ om @ s.T - om)) <= tol)


def apply_symplectic(cm, s) -> np.ndarray:
    """Return S gamma S^T as a full matrix."""
    g = _full(cm)
    s = np.asarray(s, dtype=float)
    if s.shape != g.shape:
        raise InvalidDimensionError(f"symplectic of shape {s.shape} vs matrix {g.shape}")
    if not is_symplectic(s):
        raise InvalidSymplecticError("matrix violates S Omega S^T = Omega")
    return s @ g @ s.T


def _check_modes(modes, n) -> list[int]:
    idx = sorted(set(int(m) for m in modes))
    if not idx or idx[0] < 1 or idx[-1] > n:
        raise InvalidSplitError(f"mode indices must lie in 1..{n}")
    return [m - 1 for m in idx]


def partial_transpose(cm: CovarianceMatrix, flipped_modes: Iterable[int]) -> CovarianceMatrix:
    """Flip the momentum sign of the given modes (conjugation by I (+) sigma_z pattern)."""
    idx = _check_modes(flipped_modes, cm.modes)
    if len(idx) == cm.modes:
        raise InvalidSplitError("flipped modes must form a proper subset")
    d = np.ones(cm.modes)
    d[idx] = -1.0
    return CovarianceMatrix(cm.x, cm.p * np.outer(d, d))


def balanced_beam_splitter(modes: int, i: int, j: int) -> np.ndarray:
    """(a_i, a_j) -> ((a_i + a_j)/sqrt2, (a_i - a_j)/sqrt2) on both quadratures."""
    return beam_splitter(modes, i, j, np.pi / 4, reflect=True)


def beam_splitter(modes: int, i: int, j: int, theta: float, reflect: bool = False) -> np.ndarray:
    """Passive two-mode mixer acting identically on x and p.

    Without `reflect` it is the rotation (a_i, a_j) -> (c a_i + s a_j, -s a_i + c a_j);
    with `reflect` the second output changes sign, (s a_i - c a_j).
    """
    if i == j:
        raise InvalidDimensionError("beam splitter needs two distinct modes")
    a, b = _check_modes([i], modes)[0], _check_modes([j], modes)[0]
    c, s = np.cos(theta), np.sin(theta)
    block = np.eye(modes)
    sign = -1.0 if reflect else 1.0
    block[a, a], block[a, b] = c, s
    block[b, a], block[b, b] = sign * -s, sign * c
    out = np.zeros((2 * modes, 2 * modes))
    out[:modes, :modes] = block
    out[modes:, modes:] = block
    return out


def squeezer(modes: int, i: int, r: float) -> np.ndarray:
    """Single-mode squeezer: x_i -> e^{-r} x_i, p_i -> e^{r} p_i."""
    a = _check_modes([i], modes)[0]
    d = np.ones(2 * modes)
    d[a] = np.exp(-r)
    d[modes + a] = np.exp(r)
    return np.diag(d)


def reduced_state(cm: CovarianceMatrix, modes: Iterable[int]) -> CovarianceMatrix:
    """Marginal CM of the listed 1-based modes, in the given order."""
    idx = _check_modes(modes, cm.modes)
    return CovarianceMatrix(cm.x[np.ix_(idx, idx)], cm.p[np.ix_(idx, idx)])
