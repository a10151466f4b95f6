"""Stability metrics, orthogonality-defect bounds and the backward-error
certificate for QR-based linear solves."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DegenerateSolutionError, DimensionError, HypothesisError
from .matrix import (
    MACHINE_EPS,
    DenseMatrix,
    Vector,
    mat_vec,
    matmul,
    transpose,
    vector_norm,
)
from .norms import DEFAULT_TOL, condition_number, inverse_norm, spectral_norm


@dataclass(frozen=True)
class StabilityReport:
    """The four solve-quality ratios, in units of machine precision, plus
    the estimated condition number of the system matrix.

    orth = ||I - Q^T Q|| / eps
    dec  = ||M - Q R|| / (eps ||M||)
    res  = ||M z - f|| / (eps ||M|| ||z||)
    stab = ||z - z*|| / (eps kappa(M) ||z||)
    """

    kappa: float
    orth: float
    dec: float
    res: float
    stab: float

    def __post_init__(self):
        for name in ("kappa", "orth", "dec", "res", "stab"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v >= 0.0):
                raise ValueError(f"metric {name} must be finite and nonnegative, got {v}")


def metrics(
    m: DenseMatrix,
    q: DenseMatrix,
    r: DenseMatrix,
    f: Vector,
    z_computed: Vector,
    z_star: Vector,
    *,
    kappa: float | None = None,
    norm_m: float | None = None,
    tol: float = DEFAULT_TOL,
) -> StabilityReport:
    """Measure a solve M z = f produced through the factorization (Q, R).

    ``kappa`` and ``norm_m`` may be passed in to reuse estimates when
    several methods are scored against the same matrix.
    """
    l = m.rows
    if m.cols != l or q.shape != (l, l) or r.shape != (l, l):
        raise DimensionError(
            f"metrics needs square M, Q, R of one size, got {m.shape}, {q.shape}, {r.shape}"
        )
    if len(f) != l or len(z_computed) != l or len(z_star) != l:
        raise DimensionError("vector lengths do not match the system size")
    norm_z = vector_norm(z_computed)
    if norm_z == 0.0:
        raise DegenerateSolutionError("degenerate solution for metric normalization")
    if norm_m is None:
        norm_m = spectral_norm(m, tol=tol).value
    if kappa is None:
        kappa = condition_number(m, tol=tol).value

    defect = DenseMatrix.identity(l) - matmul(transpose(q), q)
    orth = spectral_norm(defect, tol=tol).value / MACHINE_EPS
    resid_mat = m - matmul(q, r)
    dec = spectral_norm(resid_mat, tol=tol).value / (MACHINE_EPS * norm_m)
    res = vector_norm(mat_vec(m, z_computed) - f) / (MACHINE_EPS * norm_m * norm_z)
    stab = vector_norm(z_computed - z_star) / (MACHINE_EPS * kappa * norm_z)
    return StabilityReport(kappa=kappa, orth=orth, dec=dec, res=res, stab=stab)


class Lemma1Bounds(NamedTuple):
    beta: float
    norm_q: float
    norm_q_inverse: float
    right_defect: float


def lemma1_bounds(qt: DenseMatrix, tol: float = DEFAULT_TOL) -> Lemma1Bounds:
    """Measured quantities for the near-orthogonality bounds.

    For square Qt with beta = ||I - Qt^T Qt|| < 1 the following hold:
    ||Qt|| <= sqrt(1 + beta), ||Qt^{-1}|| <= 1 / sqrt(1 - beta), and
    ||I - Qt Qt^T|| <= beta.  This returns the measured left defect beta,
    ||Qt||, ||Qt^{-1}|| and the right defect; beta >= 1 raises.
    """
    if qt.rows != qt.cols:
        raise DimensionError(f"lemma1_bounds needs a square matrix, got {qt.shape}")
    n = qt.rows
    eye = DenseMatrix.identity(n)
    beta = spectral_norm(eye - matmul(transpose(qt), qt), tol=tol).value
    if beta >= 1.0:
        raise HypothesisError(f"Lemma 1 hypothesis violated: defect {beta:.3e} >= 1")
    norm_q = spectral_norm(qt, tol=tol).value
    norm_q_inv = inverse_norm(qt, tol=tol).value
    right = spectral_norm(eye - matmul(qt, transpose(qt)), tol=tol).value
    return Lemma1Bounds(beta=beta, norm_q=norm_q, norm_q_inverse=norm_q_inv, right_defect=right)


def theorem1_bound(alpha: float, beta: float, gamma: float, delta: float) -> tuple[float, float]:
    """Perturbation factors (mu, nu) certifying (M + dM) z = f + df.

    mu = alpha + gamma (1 + alpha) sqrt((1 + beta) / (1 - beta))
    nu = beta + delta (1 + beta)

    The f-side factor scales with delta (the Q-application backward factor):
    tracing the perturbation of Q^T f gives ||df|| <= ||I - Q Q^T|| +
    delta ||Q||^2, so the triangular-solve factor gamma plays no role in nu.
    """
    for name, v in (("alpha", alpha), ("beta", beta), ("gamma", gamma), ("delta", delta)):
        if not (math.isfinite(v) and v >= 0.0):
            raise ValueError(f"{name} must be finite and nonnegative, got {v}")
    if beta >= 1.0:
        raise HypothesisError(f"bound requires beta < 1, got {beta}")
    mu = alpha + gamma * (1.0 + alpha) * math.sqrt((1.0 + beta) / (1.0 - beta))
    nu = beta + delta * (1.0 + beta)
    return mu, nu


@dataclass(frozen=True)
class PerturbationBound:
    """Measured certificate inputs and outputs.

    When ``hypotheses_ok`` is false (beta >= 1 or alpha * kappa >= 1) the
    certificate does not apply and mu, nu are +inf.  That outcome is
    reported, not raised: it is the expected result for unstable
    factorizations of ill-conditioned systems.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    mu: float
    nu: float
    kappa: float
    hypotheses_ok: bool


def backward_certificate(
    m: DenseMatrix,
    q: DenseMatrix,
    r: DenseMatrix,
    f: Vector,
    z_computed: Vector,
    *,
    gamma: float | None = None,
    delta: float | None = None,
    tol: float = DEFAULT_TOL,
) -> PerturbationBound:
    """Measure alpha and beta for a factorization and evaluate the
    perturbation bound.

    gamma and delta default to eps * l, the standard backward-error level
    of triangular solves and orthogonal-factor application.
    """
    l = m.rows
    if m.cols != l or q.shape != (l, l) or r.shape != (l, l):
        raise DimensionError(
            f"certificate needs square M, Q, R of one size, got {m.shape}, {q.shape}, {r.shape}"
        )
    if len(f) != l or len(z_computed) != l:
        raise DimensionError("vector lengths do not match the system size")
    if gamma is None:
        gamma = MACHINE_EPS * l
    if delta is None:
        delta = MACHINE_EPS * l
    norm_m = spectral_norm(m, tol=tol).value
    alpha = spectral_norm(m - matmul(q, r), tol=tol).value / norm_m
    beta = spectral_norm(
        DenseMatrix.identity(l) - matmul(transpose(q), q), tol=tol
    ).value
    kappa = condition_number(m, tol=tol).value
    ok = beta < 1.0 and alpha * kappa < 1.0
    if ok:
        mu, nu = theorem1_bound(alpha, beta, gamma, delta)
    else:
        mu = nu = float("inf")
    return PerturbationBound(
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        delta=delta,
        mu=mu,
        nu=nu,
        kappa=kappa,
        hypotheses_ok=ok,
    )
