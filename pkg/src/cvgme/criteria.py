"""Product and sum criteria built from tree-sparse Cholesky factors.

For a labeled tree, each quadrature alpha in {x, p} gets a lower-triangular
factor L^alpha whose nonzeros sit on the diagonal and on one entry (j, i),
j > i, per tree edge.  The left-hand sides are

    U^alpha = 1/2 Tr[gamma^alpha L^alpha L^alpha^T],

and biseparable states obey

    U^x U^p >= (script_L + min_k script_L_k) / 4      (product form)
    U^x + U^p >= min_k script_K_k                     (sum form)

with one term per bipartition k.  The gaps d_p and d_s are LHS minus RHS;
a negative gap certifies genuine multipartite entanglement.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import _published
from .errors import InvalidDimensionError, ParameterError, StructuralError
from .linalg import CovarianceMatrix
from .trees import (
    Bipartition,
    LabeledTree,
    bipartitions,
    published_tree,
    resolve_tree,
    split_masks,
    validate_labeling,
)

QUADRATURES = ("x", "p")


def _parse_key(key) -> tuple[int, int]:
    if isinstance(key, str):
        a, b = (int(s) for s in key.split(","))
    else:
        a, b = (int(s) for s in key)
    return max(a, b), min(a, b)


@dataclass(frozen=True, eq=False)
class CholeskyParams:
    """Coefficients of the two tree-sparse Cholesky factors.

    ``diag_x[i-1]`` is l^x_ii and ``off_x[e]`` is l^x_ji for the e-th edge of
    ``tree.edges``; likewise for p.
    """

    tree: LabeledTree
    diag_x: np.ndarray
    off_x: np.ndarray
    diag_p: np.ndarray
    off_p: np.ndarray

    def __post_init__(self):
        n, m = self.tree.order, len(self.tree.edges)
        for name, size in (("diag_x", n), ("off_x", m), ("diag_p", n), ("off_p", m)):
            arr = np.array(getattr(self, name), dtype=float).reshape(-1)
            if arr.shape != (size,):
                raise ParameterError(f"{name} must have {size} entries, got {arr.size}")
            if not np.all(np.isfinite(arr)):
                raise ParameterError(f"{name} has non-finite entries")
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def order(self) -> int:
        return self.tree.order

    @classmethod
    def size(cls, tree: LabeledTree) -> int:
        return 2 * (tree.order + len(tree.edges))

    @classmethod
    def from_vector(cls, tree: LabeledTree, vec) -> "CholeskyParams":
        """Inverse of `to_vector`: [diag_x, off_x, diag_p, off_p]."""
        vec = np.asarray(vec, dtype=float)
        n, m = tree.order, len(tree.edges)
        if vec.shape != (2 * (n + m),):
            raise ParameterError(f"expected a vector of length {2 * (n + m)}")
        return cls(tree, vec[:n], vec[n:n + m], vec[n + m:2 * n + m], vec[2 * n + m:])

    def to_vector(self) -> np.ndarray:
        return np.concatenate([self.diag_x, self.off_x, self.diag_p, self.off_p])

    @classmethod
    def from_entries(cls, tree, ell_x: Mapping, ell_p: Mapping) -> "CholeskyParams":
        """Build from {"j,i": value} maps; missing entries default to zero."""
        tree = resolve_tree(tree)
        index = {(i, i): ("d", i - 1) for i in range(1, tree.order + 1)}
        index.update({e: ("o", k) for k, e in enumerate(tree.edges)})
        arrays = {}
        for q, ell in (("x", ell_x), ("p", ell_p)):
            d = np.zeros(tree.order)
            o = np.zeros(len(tree.edges))
            for key, value in ell.items():
                pos = _parse_key(key)
                if pos not in index:
                    raise ParameterError(
                        f"l^{q}_{pos[0]}{pos[1]} lies outside the support of the tree"
                    )
                kind, k = index[pos]
                (d if kind == "d" else o)[k] = float(value)
            arrays[q] = (d, o)
        return cls(tree, arrays["x"][0], arrays["x"][1], arrays["p"][0], arrays["p"][1])

    def entries(self, quadrature: str) -> dict:
        d, o = self._pair(quadrature)
        out = {(i, i): float(d[i - 1]) for i in range(1, self.order + 1)}
        out.update({e: float(o[k]) for k, e in enumerate(self.tree.edges)})
        return out

    def _pair(self, quadrature):
        if quadrature == "x":
            return self.diag_x, self.off_x
        if quadrature == "p":
            return self.diag_p, self.off_p
        raise ValueError(f"quadrature must be 'x' or 'p', not {quadrature!r}")

    def flip_mode(self, j: int) -> "CholeskyParams":
        """Negate row j of both factors (pairs with `linalg`-level mode flips)."""
        sx = np.ones(self.order)
        sx[j - 1] = -1.0
        rows = np.array([e[0] for e in self.tree.edges], dtype=int)
        so = sx[rows - 1] if rows.size else np.zeros(0)
        return CholeskyParams(
            self.tree, self.diag_x * sx, self.off_x * so, self.diag_p * sx, self.off_p * so
        )

    def to_dict(self) -> dict:
        key = _tree_key(self.tree)
        fmt = lambda pos: f"{pos[0]},{pos[1]}"  # noqa: E731
        return {
            "tree": key if key is not None else [list(e) for e in self.tree.edges],
            "ell_x": {fmt(k): v for k, v in self.entries("x").items()},
            "ell_p": {fmt(k): v for k, v in self.entries("p").items()},
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CholeskyParams":
        return cls.from_entries(data["tree"], data["ell_x"], data["ell_p"])

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "CholeskyParams":
        return cls.from_dict(json.loads(text))

    def __eq__(self, other):
        if not isinstance(other, CholeskyParams):
            return NotImplemented
        return self.tree.edges == other.tree.edges and np.array_equal(
            self.to_vector(), other.to_vector()
        )


def _tree_key(tree: LabeledTree):
    for key in _published.TREES:
        if published_tree(key).edges == tree.edges:
            return key
    return None


def published_params(key: str) -> CholeskyParams:
    """Published coefficient tables, keyed e.g. ``"gamma1_product"``."""
    from .errors import UnknownFixtureError

    if key not in _published.PARAMS:
        raise UnknownFixtureError(f"unknown parameter table {key!r}")
    entry = _published.PARAMS[key]
    return CholeskyParams.from_entries(entry["tree"], entry["ell_x"], entry["ell_p"])


def build_L(params: CholeskyParams, quadrature: str) -> np.ndarray:
    d, o = params._pair(quadrature)
    L = np.diag(d)
    for k, (j, i) in enumerate(params.tree.edges):
        L[j - 1, i - 1] = o[k]
    return L


def _check_dims(cm: CovarianceMatrix, params: CholeskyParams):
    if cm.modes != params.order:
        raise InvalidDimensionError(
            f"covariance matrix has {cm.modes} modes but the tree has {params.order} vertices"
        )


def lhs_U(cm: CovarianceMatrix, params: CholeskyParams) -> tuple[float, float]:
    _check_dims(cm, params)
    Lx, Lp = build_L(params, "x"), build_L(params, "p")
    ux = 0.5 * float(np.sum((cm.x @ Lx) * Lx))
    up = 0.5 * float(np.sum((cm.p @ Lp) * Lp))
    return ux, up


def script_L(params: CholeskyParams) -> float:
    m = build_L(params, "x").T @ build_L(params, "p")
    return float(np.sum(m * m))


def _restricted(params: CholeskyParams, split: Bipartition):
    if split.modes != params.order:
        raise InvalidDimensionError("split and tree have different numbers of modes")
    Lx, Lp = build_L(params, "x"), build_L(params, "p")
    a = Lx.T @ (split.mask()[:, None] * Lp)
    return a, Lx.T @ Lp - a


def script_L_k(params: CholeskyParams, split: Bipartition) -> float:
    a, b = _restricted(params, split)
    x = a * b
    return float(2.0 * np.sum(np.abs(x) - x))


def script_K_k(params: CholeskyParams, split: Bipartition) -> float:
    a, b = _restricted(params, split)
    return float(np.sum(np.abs(np.diag(a))) + np.sum(np.abs(np.diag(b))))


def script_K_edge_cut(params: CholeskyParams, split: Bipartition) -> float:
    """Sum-criterion bound assembled edge by edge.

    An edge (j, i) whose endpoints lie on the same side contributes
    |l^x_ii l^p_ii + l^x_ji l^p_ji|, a cut edge contributes the two
    absolute values separately, and the root adds |l^x_NN l^p_NN|.
    Valid only for labelings passing `validate_labeling`.
    """
    check = validate_labeling(params.tree)
    if not check.ok:
        raise StructuralError(check.column)
    side = set(split.side_I)
    n = params.order
    total = abs(params.diag_x[n - 1] * params.diag_p[n - 1])
    for k, (j, i) in enumerate(params.tree.edges):
        dd = params.diag_x[i - 1] * params.diag_p[i - 1]
        oo = params.off_x[k] * params.off_p[k]
        if (i in side) == (j in side):
            total += abs(dd + oo)
        else:
            total += abs(dd) + abs(oo)
    return float(total)


@dataclass(frozen=True)
class CriterionReport:
    u_x: float
    u_p: float
    script_L: float
    script_L_k: tuple
    script_K_k: tuple
    d_p: float
    d_s: float
    argmin_split_p: Bipartition
    argmin_split_s: Bipartition

    def to_dict(self) -> dict:
        return {
            "u_x": self.u_x,
            "u_p": self.u_p,
            "script_L": self.script_L,
            "script_L_k": list(self.script_L_k),
            "script_K_k": list(self.script_K_k),
            "d_p": self.d_p,
            "d_s": self.d_s,
            "argmin_split_p": str(self.argmin_split_p),
            "argmin_split_s": str(self.argmin_split_s),
        }


class Evaluator:
    """Vectorized criterion evaluation for one (CM, tree) pair.

    Works on flat parameter vectors in the `CholeskyParams.to_vector` layout,
    singly or stacked as rows, so the optimizer can screen many candidates
    in one call.
    """

    def __init__(self, cm: CovarianceMatrix, tree):
        tree = resolve_tree(tree)
        check = validate_labeling(tree)
        if not check.ok:
            raise StructuralError(check.column)
        if cm.modes != tree.order:
            raise InvalidDimensionError(
                f"covariance matrix has {cm.modes} modes but the tree has {tree.order} vertices"
            )
        self.cm = cm
        self.tree = tree
        self.n = n = tree.order
        self.m = m = len(tree.edges)
        self.dim = 2 * (n + m)
        self.splits = bipartitions(n)
        self.masks = split_masks(n)
        self._gx = np.array(cm.x)
        self._gp = np.array(cm.p)
        diag = np.arange(n)
        rows = np.concatenate([diag, [j - 1 for j, _ in tree.edges]]).astype(int)
        cols = np.concatenate([diag, [i - 1 for _, i in tree.edges]]).astype(int)
        self._flat = rows * n + cols

    def factors(self, vecs) -> tuple[np.ndarray, np.ndarray]:
        """Stacked factors of shape (S, N, N) for parameter rows of shape (S, dim)."""
        vecs = np.atleast_2d(vecs)
        s, n, h = vecs.shape[0], self.n, self.n + self.m
        Lx = np.zeros((s, n * n))
        Lp = np.zeros((s, n * n))
        Lx[:, self._flat] = vecs[:, :h]
        Lp[:, self._flat] = vecs[:, h:]
        return Lx.reshape(s, n, n), Lp.reshape(s, n, n)

    def _lhs(self, Lx, Lp):
        ux = 0.5 * np.einsum("sij,sij->s", self._gx @ Lx, Lx)
        up = 0.5 * np.einsum("sij,sij->s", self._gp @ Lp, Lp)
        return ux, up

    def _K(self, Lx, Lp):
        prod = Lx * Lp
        d_in = self.masks @ prod
        d_out = prod.sum(axis=1)[:, None, :] - d_in
        return np.abs(d_in).sum(axis=2) + np.abs(d_out).sum(axis=2)

    def _Lk(self, Lx, Lp):
        s, n = Lx.shape[0], self.n
        # outer[s, r] = row r of L^x (outer) row r of L^p; the restricted
        # products are mask-weighted sums of these rank-one pieces
        outer = (Lx[:, :, :, None] * Lp[:, :, None, :]).reshape(s, n, n * n)
        full = outer.sum(axis=1)
        a = self.masks @ outer
        x = a * (full[:, None, :] - a)
        return 2.0 * (np.abs(x) - x).sum(axis=2), (full * full).sum(axis=1)

    def gap_sum_batch(self, vecs) -> np.ndarray:
        Lx, Lp = self.factors(vecs)
        ux, up = self._lhs(Lx, Lp)
        return ux + up - self._K(Lx, Lp).min(axis=1)

    def gap_product_batch(self, vecs) -> np.ndarray:
        Lx, Lp = self.factors(vecs)
        ux, up = self._lhs(Lx, Lp)
        lk, big_l = self._Lk(Lx, Lp)
        return ux * up - 0.25 * (big_l + lk.min(axis=1))

    def gap_batch(self, vecs, which: str) -> np.ndarray:
        if which == "product":
            return self.gap_product_batch(vecs)
        if which == "sum":
            return self.gap_sum_batch(vecs)
        raise ValueError(f"criterion must be 'product' or 'sum', not {which!r}")

    def gap_sum(self, vec) -> float:
        return float(self.gap_sum_batch(vec)[0])

    def gap_product(self, vec) -> float:
        return float(self.gap_product_batch(vec)[0])

    def gap(self, vec, which: str) -> float:
        return float(self.gap_batch(vec, which)[0])

    def report(self, vec) -> CriterionReport:
        vec = np.asarray(vec, dtype=float)
        Lx, Lp = self.factors(vec)
        ux, up = self._lhs(Lx, Lp)
        lk, big_l = self._Lk(Lx, Lp)
        kk = self._K(Lx, Lp)
        d_p = ux * up - 0.25 * (big_l + lk.min(axis=1))
        d_s = ux + up - kk.min(axis=1)
        lk, kk = lk[0], kk[0]
        return CriterionReport(
            u_x=float(ux[0]),
            u_p=float(up[0]),
            script_L=float(big_l[0]),
            script_L_k=tuple(float(v) for v in lk),
            script_K_k=tuple(float(v) for v in kk),
            d_p=float(d_p[0]),
            d_s=float(d_s[0]),
            argmin_split_p=self.splits[int(np.argmin(lk))],
            argmin_split_s=self.splits[int(np.argmin(kk))],
        )


def evaluate(cm: CovarianceMatrix, params: CholeskyParams) -> CriterionReport:
    return Evaluator(cm, params.tree).report(params.to_vector())
