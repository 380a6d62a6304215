"""Matrix means M_{alpha,beta}(L_H, R_K) X and unitarily invariant norm checks.

With H = U diag(lam) U* and K = V diag(mu) V*, the operator acts as a
Schur multiplier in the eigenbases:

    M(L_H, R_K) X = U [ (M(lam_i, mu_j))_ij o (U* X V) ] V*.

Unitarily invariant norms are compared through the Ky Fan k-norms (sums of
the k largest singular values), which dominate every such norm.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .exponents import ExponentPair, combined_pair_tuples, weak_submajorize
from .gram import sym_eigen
from .scalarfn import eval_mean

NORM_RTOL = 1e-10


class DomainError(ValueError):
    pass


@dataclass
class PosDefMatrix:
    entries: np.ndarray
    eigenvalues: np.ndarray = field(init=False, repr=False)
    eigenvectors: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        H = np.asarray(self.entries)
        if H.ndim != 2 or H.shape[0] != H.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {H.shape}")
        scale = max(np.linalg.norm(H), 1e-300)
        if np.linalg.norm(H - H.conj().T) > 1e-13 * scale:
            raise DomainError("matrix is not Hermitian")
        w, U = sym_eigen(H)
        if w[0] <= 0:
            raise DomainError(f"matrix is not positive definite (min eigenvalue {w[0]:.3e})")
        self.entries = H
        self.eigenvalues = w
        self.eigenvectors = U

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def _as_pd(H) -> PosDefMatrix:
    return H if isinstance(H, PosDefMatrix) else PosDefMatrix(np.asarray(H))


def mean_weights(pair: ExponentPair, lam, mu) -> np.ndarray:
    return eval_mean(pair, np.asarray(lam)[:, None], np.asarray(mu)[None, :])


def mean_apply(pair: ExponentPair, H, K, X) -> np.ndarray:
    H, K = _as_pd(H), _as_pd(K)
    X = np.asarray(X)
    if X.shape != (H.n, K.n):
        raise DomainError(f"X has shape {X.shape}, expected {(H.n, K.n)}")
    U, V = H.eigenvectors, K.eigenvectors
    W = mean_weights(pair, H.eigenvalues, K.eigenvalues)
    return U @ (W * (U.conj().T @ X @ V)) @ V.conj().T


def singular_values(X) -> np.ndarray:
    """Singular values, descending, from the Hermitian dilation [[0, X], [X*, 0]].

    The dilation's eigenvalues are +-sigma_i, with absolute accuracy near
    eps * ||X||, which is better than square roots of eig(X* X) for small sigma.
    """
    X = np.atleast_2d(np.asarray(X))
    m, n = X.shape
    Z = np.zeros((m + n, m + n), dtype=np.result_type(X.dtype, float))
    Z[:m, m:] = X
    Z[m:, :m] = X.conj().T
    w, _ = sym_eigen(Z)
    sigma = np.clip(w[::-1][:min(m, n)], 0.0, None)
    return sigma


def ky_fan_norms(X) -> np.ndarray:
    """Ky Fan k-norms for k = 1..min(shape): [operator norm, ..., trace norm]."""
    return np.cumsum(singular_values(X))


def frobenius_norm(X) -> float:
    return float(np.sqrt(np.sum(singular_values(X) ** 2)))


def norm_profile(X) -> dict:
    sigma = singular_values(X)
    kf = np.cumsum(sigma)
    return {"ky_fan": kf, "operator": float(kf[0]), "trace": float(kf[-1]),
            "frobenius": float(np.sqrt(np.sum(sigma ** 2)))}


def random_pd(rng: np.random.Generator, n: int, complex_: bool = True) -> np.ndarray:
    A = rng.uniform(-1, 1, (n, n))
    if complex_:
        A = A + 1j * rng.uniform(-1, 1, (n, n))
    return A @ A.conj().T + 1e-3 * np.eye(n)


def random_matrix(rng: np.random.Generator, n: int, complex_: bool = True) -> np.ndarray:
    X = rng.uniform(-1, 1, (n, n))
    if complex_:
        X = X + 1j * rng.uniform(-1, 1, (n, n))
    return X


@dataclass
class MeanTrialReport:
    seed: int
    trial: int
    N: int
    lhs_norms: dict
    rhs_norms: dict
    passed: bool
    margin: float

    def to_json(self) -> dict:
        return {"seed": self.seed, "trial": self.trial, "N": self.N,
                "lhs_norms": _jsonable(self.lhs_norms), "rhs_norms": _jsonable(self.rhs_norms),
                "pass": self.passed, "margin": self.margin}


def _jsonable(norms: dict) -> dict:
    return {k: (v.tolist() if isinstance(v, np.ndarray) else float(v)) for k, v in norms.items()}


def _flat(norms: dict) -> np.ndarray:
    return np.concatenate([np.atleast_1d(norms["ky_fan"]), [norms["frobenius"]]])


def compare_norms(lhs: dict, rhs: dict, rtol: float = NORM_RTOL):
    a, b = _flat(lhs), _flat(rhs)
    passed = bool(np.all(a <= b * (1 + rtol)))
    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(b > 0, (b - a) / b, np.where(a > 0, -np.inf, 0.0))
    return passed, float(rel.min())


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    # one independent stream per (seed, trial): schedule-independent
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def run_trial(left: ExponentPair, right: ExponentPair, N: int, seed: int, trial: int,
              complex_: bool = True) -> MeanTrialReport:
    rng = trial_rng(seed, trial)
    H = PosDefMatrix(random_pd(rng, N, complex_))
    K = PosDefMatrix(random_pd(rng, N, complex_))
    X = random_matrix(rng, N, complex_)
    lhs = norm_profile(mean_apply(left, H, K, X))
    rhs = norm_profile(mean_apply(right, H, K, X))
    passed, margin = compare_norms(lhs, rhs)
    return MeanTrialReport(seed, trial, N, lhs, rhs, passed, margin)


@dataclass
class VerificationRun:
    left: ExponentPair
    right: ExponentPair
    N: int
    seed: int
    exploratory: bool
    reports: List[MeanTrialReport]

    @property
    def passes(self) -> int:
        return sum(r.passed for r in self.reports)

    @property
    def failures(self) -> int:
        return len(self.reports) - self.passes

    def summary(self) -> dict:
        return {"lhs": self.left.to_json(), "rhs": self.right.to_json(), "N": self.N,
                "seed": self.seed, "trials": len(self.reports), "passes": self.passes,
                "failures": self.failures, "exploratory": self.exploratory,
                "min_margin": min((r.margin for r in self.reports), default=None)}

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["seed", "trial", "N", "pass", "margin", "lhs_operator", "rhs_operator",
                         "lhs_trace", "rhs_trace", "lhs_frobenius", "rhs_frobenius"])
        for r in self.reports:
            writer.writerow([r.seed, r.trial, r.N, int(r.passed), repr(r.margin),
                             repr(float(r.lhs_norms["operator"])), repr(float(r.rhs_norms["operator"])),
                             repr(float(r.lhs_norms["trace"])), repr(float(r.rhs_norms["trace"])),
                             repr(r.lhs_norms["frobenius"]), repr(r.rhs_norms["frobenius"])])
        return buf.getvalue()


def verify_inequality(left: ExponentPair, right: ExponentPair, N: int = 3, trials: int = 100,
                      seed: int = 42, complex_: bool = True) -> VerificationRun:
    """Random trials of |||M_left(L_H, R_K) X||| <= |||M_right(L_H, R_K) X|||.

    Runs that do not satisfy the weak-submajorization hypothesis are still
    executed but flagged ``exploratory``.
    """
    num, den = combined_pair_tuples(left, right)
    exploratory = not weak_submajorize(num, den)
    reports = [run_trial(left, right, N, seed, k, complex_) for k in range(trials)]
    return VerificationRun(left, right, N, seed, exploratory, reports)
