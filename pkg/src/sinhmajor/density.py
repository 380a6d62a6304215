"""Levy-type densities of sinh ratios and quadrature reconstruction of log h.

For a, b > 0,

    log(b sinh(a x) / (a sinh(b x))) = int (cos(x t) - 1) D_{a,b}(t) dt,
    D_{a,b}(t) = sinh((1/a - 1/b) pi t / 2) / (2 t sinh(pi t / 2a) sinh(pi t / 2b)),

the odd part of exp(i x t) - 1 - i x t integrating to zero.  Everything here
works with the regular product t^2 D(t), which is

    t^2 D_{a,b}(t) = (b - a)/pi * sinhc(u) / (sinhc(v) sinhc(w)),
    u = (1/a - 1/b) pi t / 2,  v = pi t / 2a,  w = pi t / 2b,

and therefore smooth at t = 0 with limit (b - a)/pi.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from .expander import SinhProductTerm, rescale_to_integers
from .scalarfn import log_sinhc


class QuadratureError(ArithmeticError):
    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


def t2_density(a, b, t):
    """t^2 D_{a,b}(t), computed in log space; even in t."""
    a, b = float(a), float(b)
    if a <= 0 or b <= 0:
        raise ValueError("density parameters must be positive")
    t = np.abs(np.asarray(t, dtype=float))
    half_pi_t = 0.5 * math.pi * t
    u = (1.0 / a - 1.0 / b) * half_pi_t
    logs = log_sinhc(u) - log_sinhc(half_pi_t / a) - log_sinhc(half_pi_t / b)
    out = (b - a) / math.pi * np.exp(logs)
    return out[()] if out.ndim == 0 else out


def sinh_ratio_density(a, b, t):
    """D_{a,b}(t); behaves like (b - a)/(pi t^2) near 0 (infinite at t = 0 unless a = b)."""
    t = np.asarray(t, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = t2_density(a, b, t) / (t * t)
    if float(a) == float(b):
        out = np.zeros_like(t)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class DensityTerm:
    """sign * D_{a,b}: density of sign * log(b sinh(a x) / (a sinh(b x)))."""

    a: object
    b: object
    sign: int = 1

    def __post_init__(self):
        if not (self.a > 0 and self.b > 0):
            raise ValueError("density terms need positive a, b")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def t2_value(self, t):
        return self.sign * t2_density(self.a, self.b, t)


@dataclass(frozen=True)
class CombinedDensity:
    terms: Tuple[DensityTerm, ...]

    @property
    def regularized(self) -> bool:
        """True when the 1/t^2 parts cancel, so the density itself is finite at 0."""
        total = sum((term.sign * (term.b - term.a) for term in self.terms), 0)
        if all(isinstance(v, Fraction) for term in self.terms for v in (term.a, term.b)):
            return total == 0
        scale = sum(abs(float(term.b - term.a)) for term in self.terms) or 1.0
        return abs(float(total)) <= 1e-12 * scale

    def t2_value(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for term in self.terms:
            out = out + term.t2_value(t)
        return out[()] if out.ndim == 0 else out

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = self.t2_value(t) / (t * t)
        return out[()] if out.ndim == 0 else out

    def decay_rate(self) -> float:
        """Smallest exponential rate among terms: |t^2 D| <~ t e^{-rate |t|}."""
        if not self.terms:
            return math.inf
        return min(math.pi / max(float(term.a), float(term.b)) for term in self.terms
                   if term.a != term.b) if any(term.a != term.b for term in self.terms) else math.inf

    def scale(self) -> float:
        return sum(abs(float(term.b - term.a)) for term in self.terms) / math.pi or 1.0

    def to_json(self) -> dict:
        return {"terms": [{"a": _num(t.a), "b": _num(t.b), "sign": t.sign} for t in self.terms],
                "regularized": self.regularized}


def _num(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def combined_density(pairing: Iterable[Sequence]) -> CombinedDensity:
    """Sum of signed terms; each item is (numerator a, denominator b, sign)."""
    terms = []
    for item in pairing:
        a, b, *rest = item
        sign = int(rest[0]) if rest else 1
        terms.append(DensityTerm(a, b, sign))
    return CombinedDensity(tuple(terms))


def sorted_pairing(alpha: Sequence, beta: Sequence) -> CombinedDensity:
    """Pair the i-th largest numerator with the i-th largest denominator."""
    a = sorted((abs(v) for v in alpha), reverse=True)
    b = sorted((abs(v) for v in beta), reverse=True)
    if len(a) != len(b):
        raise ValueError("pairing needs equal lengths")
    return combined_density((x, y, 1) for x, y in zip(a, b) if x != y)


@dataclass(frozen=True)
class GridCheck:
    nonnegative: bool
    min_value: float
    min_location: float


def check_nonneg_grid(d: CombinedDensity, t_max: float = 200.0, n_points: int = 2000) -> GridCheck:
    """Minimum of t^2 D over a symmetric log-spaced grid in [-t_max, t_max]."""
    if n_points < 16:
        raise ValueError("n_points must be at least 16")
    if not d.terms:
        return GridCheck(True, 0.0, 0.0)
    half = np.geomspace(1e-6, t_max, n_points // 2)
    grid = np.concatenate([-half[::-1], [0.0], half])
    values = d.t2_value(grid)
    k = int(np.argmin(values))
    lowest = float(values[k])
    return GridCheck(lowest >= -1e-12 * d.scale(), lowest, float(grid[k]))


def _cos_kernel(x, t):
    # (cos(x t) - 1) / t^2 without cancellation
    half = 0.5 * x * t
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(t == 0, -0.5 * x * x, -2.0 * np.sin(half) ** 2 / (t * t))
    return out


def _panel_rule(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    return 0.5 * (nodes + 1.0), 0.5 * weights


_RULE_LO = _panel_rule(24)
_RULE_HI = _panel_rule(48)


def _composite(f, lo: float, hi: float, width: float):
    """Composite Gauss-Legendre on [lo, hi]; returns (value, |difference of two orders|)."""
    n = max(1, int(math.ceil((hi - lo) / width)))
    edges = np.linspace(lo, hi, n + 1)
    h = np.diff(edges)[:, None]
    out = []
    for nodes, weights in (_RULE_LO, _RULE_HI):
        t = edges[:-1, None] + h * nodes[None, :]
        out.append(float(np.sum(h * weights[None, :] * f(t))))
    return out[1], abs(out[1] - out[0])


def reconstruct_log_h(d: CombinedDensity, x: float, tol: float = 1e-10) -> float:
    """2 * int_0^inf (cos(x t) - 1)/t^2 * t^2 D(t) dt.

    The integrand is analytic, so composite Gauss-Legendre on panels short
    against both the oscillation period and the nearest complex pole
    (|t| = 2 min(a, b)) converges fast.  The range is extended until the
    added tail is negligible.
    """
    if not d.terms or x == 0:
        return 0.0
    rate = d.decay_rate()
    if not math.isfinite(rate):
        return 0.0
    x = float(x)
    smallest = min(min(float(t.a), float(t.b)) for t in d.terms)
    width = min(1.0, 2.0 / abs(x), smallest)

    def integrand(t):
        return _cos_kernel(x, t) * d.t2_value(t)

    # the tail beyond T is below scale * e^{-rate T} / (rate T)
    T = max(40.0 / rate, 10.0)
    while d.scale() * math.exp(-rate * T) / (rate * T) > 1e-13:
        T *= 1.5
    total, err = _composite(integrand, 0.0, T, width)
    for _ in range(8):
        tail, e = _composite(integrand, T, 2.0 * T, width)
        total += tail
        err += e
        T *= 2.0
        if abs(tail) < 1e-12:
            if 2.0 * err > max(tol, 1e-8):
                raise QuadratureError(f"quadrature error estimate {2 * err:.2e} too large", 2 * total)
            return 2.0 * total
    raise QuadratureError("truncation point did not stabilize", 2.0 * total)


def cosh_numerator_terms(alpha: Sequence, beta: Sequence) -> List[SinhProductTerm]:
    """Numerator g of the combined density over a common sinh denominator.

    With the sorted pairing (a_i, b_i), each term contributes
    sinh(|1/a_i - 1/b_i| pi t / 2) with sign of (b_i - a_i), times every
    denominator frequency pi t / 2c (c in the union of all a_i, b_i) that
    the term itself lacks.  For t > 0 the density is >= 0 exactly when g is.
    Frequencies are in units of pi/2; exponents must be positive rationals.
    """
    pairs = [(Fraction(x), Fraction(y)) for x, y in
             zip(sorted((abs(Fraction(v)) for v in alpha), reverse=True),
                 sorted((abs(Fraction(v)) for v in beta), reverse=True)) if x != y]
    if any(x == 0 or y == 0 for x, y in pairs):
        raise ValueError("zero exponents have no density")
    denominators = sorted({1 / v for pair in pairs for v in pair}, reverse=True)
    terms = []
    for x, y in pairs:
        others = [w for w in denominators if w not in (1 / x, 1 / y)]
        u = 1 / x - 1 / y
        coeff = Fraction(1) if u > 0 else Fraction(-1)
        terms.append(SinhProductTerm(coeff, (abs(u),) + tuple(others)))
    return terms


def density_certificate(alpha: Sequence, beta: Sequence, K=None):
    """Exact nonnegativity certificate for the combined density of h_{alpha,beta}."""
    from .expander import certify_nonnegative, expand

    terms = cosh_numerator_terms(alpha, beta)
    if not terms:
        return None
    scale, scaled = rescale_to_integers(terms)
    expansion = expand(scaled)
    return scale, expansion, certify_nonnegative(expansion, K)
