"""Gram matrices [phi(x_i - x_j)], a cyclic Jacobi eigensolver, and witness search."""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

GRAM_TOL = 1e-8
DEFAULT_SPACINGS = (Fraction(1, 3), Fraction(1, 2), Fraction(1), Fraction(2))
DEFAULT_MAX_SIZE = 16


class NumericalError(ArithmeticError):
    pass


class EvaluationError(ValueError):
    pass


def _round_robin(n: int):
    """Tournament schedule: n - 1 rounds (n even) of disjoint index pairs."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(players[i], players[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        rounds.append((np.array([p for p, _ in pairs], dtype=int),
                       np.array([q for _, q in pairs], dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def sym_eigen(M, tol: float = 1e-14, max_sweeps: int = 60):
    """Eigen-decomposition of a real symmetric or complex Hermitian matrix.

    Cyclic Jacobi in round-robin order: every round applies n/2 rotations
    on disjoint index pairs at once.  A complex pivot a_pq is first made
    real with a diagonal phase.  Returns ``(eigenvalues ascending, V)``
    with ``M V = V diag(eigenvalues)``.
    """
    A = np.array(M, dtype=complex if np.iscomplexobj(M) else float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    n = A.shape[0]
    if n > 64:
        raise ValueError("sym_eigen is meant for n <= 64")
    A = 0.5 * (A + A.conj().T)
    V = np.eye(n, dtype=A.dtype)
    norm = np.linalg.norm(A)
    if n == 1 or norm == 0.0:
        return np.real(np.diag(A)).copy(), V
    target = tol * norm
    rounds = _round_robin(n)
    offmask = ~np.eye(n, dtype=bool)

    def off(A):
        return np.linalg.norm(A[offmask])

    for _ in range(max_sweeps):
        if off(A) <= target:
            break
        for p, q in rounds:
            apq = A[p, q]
            r = np.abs(apq)
            active = r > max(1e-300, 1e-3 * target / n)
            if not active.any():
                continue
            r_safe = np.where(active, r, 1.0)
            phase = np.where(active, apq / r_safe, 1.0)
            app, aqq = A[p, p].real, A[q, q].real
            theta = (aqq - app) / (2.0 * r_safe)
            t = np.sign(theta) / (np.abs(theta) + np.hypot(theta, 1.0))
            t = np.where(theta == 0, 1.0, t)
            t = np.where(active, t, 0.0)
            c = 1.0 / np.hypot(t, 1.0)
            s = t * c
            J = np.eye(n, dtype=A.dtype)
            J[p, p] = c
            J[q, q] = c * np.conj(phase)
            J[p, q] = s
            J[q, p] = -s * np.conj(phase)
            A = J.conj().T @ A @ J
            A[p[active], q[active]] = 0.0
            A[q[active], p[active]] = 0.0
            A[p, p] = app - t * r
            A[q, q] = aqq + t * r
            V = V @ J
    else:
        residual = off(A)
        if residual > target:
            raise NumericalError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {residual:.3e})")
    w = np.real(np.diag(A))
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def gram_matrix(phi: Callable, points: Sequence[float]) -> np.ndarray:
    """[phi(x_i - x_j)], filled from the upper triangle so it is exactly symmetric."""
    x = np.array([float(p) for p in points], dtype=float)
    n = len(x)
    if n < 1:
        raise ValueError("need at least one point")
    iu, ju = np.triu_indices(n)
    lags = x[iu] - x[ju]
    try:
        vals = np.asarray(phi(lags), dtype=float)
    except (TypeError, ValueError):
        vals = None
    if vals is None or vals.shape != iu.shape:
        # phi only takes scalars
        vals = np.array([float(phi(d)) for d in lags])
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("phi returned a non-finite value")
    G = np.empty((n, n))
    G[iu, ju] = vals
    G[ju, iu] = vals
    return G


@dataclass(frozen=True)
class GramReport:
    points: tuple
    matrix: np.ndarray
    eigenvalues: np.ndarray
    min_eigenvalue: float
    determinant: float
    is_psd: bool

    def to_json(self) -> dict:
        return {"points": [float(p) for p in self.points],
                "matrix": self.matrix.tolist(),
                "eigenvalues": self.eigenvalues.tolist(),
                "min_eigenvalue": self.min_eigenvalue,
                "determinant": self.determinant,
                "is_psd": self.is_psd}


@dataclass(frozen=True)
class GramWitness:
    points: tuple
    min_eigenvalue: float
    determinant: float = float("nan")
    spacing: Optional[Fraction] = None

    def to_json(self) -> dict:
        return {"type": "gram",
                "points": [str(p) if isinstance(p, Fraction) else float(p) for p in self.points],
                "min_eigenvalue": self.min_eigenvalue,
                "determinant": self.determinant}


def witness_threshold(G: np.ndarray, tol: float = GRAM_TOL) -> float:
    return -tol * float(np.abs(G).sum(axis=0).max())


def gram_report(phi: Callable, points: Sequence[float], tol: float = GRAM_TOL) -> GramReport:
    G = gram_matrix(phi, points)
    w, _ = sym_eigen(G)
    return GramReport(tuple(points), G, w, float(w[0]), float(np.prod(w)),
                      bool(w[0] >= witness_threshold(G, tol)))


def gram_probe(phi: Callable, grid_spacings: Sequence = DEFAULT_SPACINGS,
               max_size: int = DEFAULT_MAX_SIZE, tol: float = GRAM_TOL,
               deadline: Optional[float] = None) -> Optional[GramWitness]:
    """Search arithmetic grids {0, d, 2d, ...} for a Gram matrix with a negative eigenvalue.

    Spacings ascending, then sizes ascending; the first witness wins.
    ``deadline`` is a ``time.monotonic()`` value after which the search gives up.
    """
    if max_size > 32:
        raise ValueError("max_size must be <= 32")
    for delta in sorted(grid_spacings):
        lags = float(delta) * np.arange(max_size)
        values = np.asarray(phi(lags), dtype=float)
        if not np.all(np.isfinite(values)):
            continue
        idx = np.abs(np.subtract.outer(np.arange(max_size), np.arange(max_size)))
        full = values[idx]
        for size in range(2, max_size + 1):
            if deadline is not None and time.monotonic() > deadline:
                return None
            G = full[:size, :size]
            w, _ = sym_eigen(G)
            if w[0] < witness_threshold(G, tol):
                points = tuple(k * Fraction(delta) for k in range(size))
                return GramWitness(points, float(w[0]), float(np.prod(w)), Fraction(delta))
    return None
