"""Thin Householder QR with positive-diagonal normalization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, RankDeficientError
from .matrix import MACHINE_EPS, DenseMatrix, _norm2_arr


@dataclass(frozen=True)
class ThinQR:
    """Factorization X = Q R with left-orthogonal Q (l x k) and upper
    triangular R (k x k) whose diagonal is positive.  Entries of R strictly
    below the diagonal are exactly zero."""

    q: DenseMatrix
    r: DenseMatrix


def _apply_reflector(v: np.ndarray, tau: float, slab: np.ndarray) -> None:
    """slab -= tau * v (v^T slab), in place.

    The row reduction uses einsum's fixed single-threaded evaluation; it is
    deterministic for a given build, which is all the factorization needs.
    """
    if slab.shape[1] == 0 or tau == 0.0:
        return
    w = np.einsum("i,ic->c", v, slab)
    slab -= tau * v[:, None] * w[None, :]


def _reflectors(xa: np.ndarray, rank_tol: float):
    """Reduce xa to triangular form, returning (R, reflectors).

    Each reflector is (v, tau) acting on rows j..l-1 at step j, with
    v = x + sign(x_0) ||x|| e_0 and sign(0) = +1.  A pivot column whose
    trailing norm is <= rank_tol raises RankDeficientError.
    """
    l, k = xa.shape
    w = xa.copy()
    reflectors = []
    for j in range(k):
        x = w[j:, j].copy()
        pivot_norm = _norm2_arr(x)
        if pivot_norm <= rank_tol:
            raise RankDeficientError(column=j)
        sign = 1.0 if x[0] >= 0.0 else -1.0
        v = x
        v[0] += sign * pivot_norm
        vtv = _norm2_arr(v)
        tau = 0.0 if vtv == 0.0 else 2.0 / (vtv * vtv)
        reflectors.append((v, tau))
        w[j, j] = -sign * pivot_norm
        w[j + 1 :, j] = 0.0
        _apply_reflector(v, tau, w[j:, j + 1 :])
    r = np.triu(w[:k, :k])
    return r, reflectors


def _accumulate_q(reflectors, l: int, k: int) -> np.ndarray:
    """Form Q explicitly by accumulating reflectors onto identity columns,
    applied in reverse so the active block grows from the bottom right."""
    q = np.zeros((l, k))
    for i in range(k):
        q[i, i] = 1.0
    for j in range(k - 1, -1, -1):
        v, tau = reflectors[j]
        _apply_reflector(v, tau, q[j:, j:])
    return q


def _fix_signs(q: np.ndarray, r: np.ndarray) -> None:
    """Negate row i of R and column i of Q wherever R_ii < 0 (in place)."""
    for i in range(r.shape[0]):
        if r[i, i] < 0.0:
            r[i, :] = -r[i, :]
            q[:, i] = -q[:, i]


def default_rank_tol(x: DenseMatrix) -> float:
    """Scale-invariant rank threshold: eps * sqrt(l) * max column norm.

    The max column norm is a lower bound on the spectral norm, so this is
    deliberately permissive: severely ill-conditioned but numerically
    invertible inputs factor cleanly, while exactly dependent columns
    (pivot collapsing to rounding noise) are still caught.
    """
    xa = x.array
    max_col = max(_norm2_arr(xa[:, j]) for j in range(x.cols))
    return MACHINE_EPS * float(np.sqrt(x.rows)) * max_col


def thin_householder_qr(x: DenseMatrix, *, rank_tol: float | None = None) -> ThinQR:
    """Thin Householder QR of an l x k matrix with l >= k.

    Reflectors are applied left to right; Q is formed explicitly by
    accumulating the reflectors onto the first k columns of the identity.
    A final sign pass makes every diagonal entry of R positive, which pins
    down the unique positive-diagonal thin QR of a full-column-rank input.

    ``rank_tol`` overrides the pivot threshold (see ``default_rank_tol``);
    pass 0.0 to fail only on exactly zero pivots.
    """
    l, k = x.rows, x.cols
    if l < k:
        raise DimensionError(f"thin QR needs rows >= cols, got {l}x{k}")
    if rank_tol is None:
        rank_tol = default_rank_tol(x)
    r, reflectors = _reflectors(x.array, rank_tol)
    q = _accumulate_q(reflectors, l, k)
    _fix_signs(q, r)
    return ThinQR(q=DenseMatrix._wrap(q), r=DenseMatrix._wrap(r))


def q_by_column_application(x: DenseMatrix, *, rank_tol: float | None = None) -> DenseMatrix:
    """Alternate Q construction: apply the reflector chain to each identity
    column independently.  Used to cross-check ``thin_householder_qr``; the
    two paths agree to rounding for full-column-rank input."""
    l, k = x.rows, x.cols
    if l < k:
        raise DimensionError(f"thin QR needs rows >= cols, got {l}x{k}")
    if rank_tol is None:
        rank_tol = default_rank_tol(x)
    r, reflectors = _reflectors(x.array, rank_tol)
    q = np.zeros((l, k))
    for c in range(k):
        y = np.zeros(l)
        y[c] = 1.0
        for j in range(k - 1, -1, -1):
            v, tau = reflectors[j]
            dot = float(np.einsum("i,i->", v, y[j:]))
            y[j:] -= (tau * dot) * v
        q[:, c] = y
    _fix_signs(q, r)
    return DenseMatrix._wrap(q)


def qr_residuals(x: DenseMatrix, f: ThinQR, *, tol: float = 1e-8) -> tuple[float, float]:
    """Orthogonality and decomposition errors of a thin QR, in units of eps.

    Returns (orth, dec) with orth = ||I - Q^T Q|| / eps and
    dec = ||X - Q R|| / (eps ||X||), all norms spectral.
    """
    from .matrix import matmul, transpose
    from .norms import spectral_norm

    q, r = f.q, f.r
    if q.rows != x.rows or q.cols != r.rows or r.cols != x.cols:
        raise DimensionError(
            f"inconsistent factor shapes {q.shape} / {r.shape} for {x.shape}"
        )
    k = q.cols
    defect = DenseMatrix.identity(k) - matmul(transpose(q), q)
    orth = spectral_norm(defect, tol=tol).value / MACHINE_EPS
    resid = x - matmul(q, r)
    nx = spectral_norm(x, tol=tol).value
    dec = spectral_norm(resid, tol=tol).value / (MACHINE_EPS * nx)
    return orth, dec
