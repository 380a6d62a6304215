"""Exact cosh/sinh expansions of signed sums of sinh-products.

A product of n hyperbolic sines expands as

    prod_i sinh(w_i s) = 2^-n sum_{eps in {+-1}^n} (prod eps_i) exp((eps . w) s)

and pairing eps with -eps folds the exponentials into cosh (n even) or
sinh (n odd).  All arithmetic is on ``Fraction`` so Taylor coefficients
are exact.  Frequencies are rational multiples of one implicit unit (for
instance pi), since only their ratios matter for sign questions.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np


class UnsupportedInput(ValueError):
    pass


class ParityError(ValueError):
    pass


def _exact(v) -> Fraction:
    if isinstance(v, bool) or not isinstance(v, (Rational, str)):
        raise UnsupportedInput(f"frequency {v!r} is not an exact rational")
    return Fraction(v)


@dataclass(frozen=True)
class SinhProductTerm:
    """coefficient * prod_i sinh(frequencies[i] * s)."""

    coefficient: Fraction
    frequencies: Tuple[Fraction, ...]

    def __post_init__(self):
        freqs = tuple(_exact(f) for f in self.frequencies)
        if not freqs:
            raise ValueError("a sinh-product needs at least one factor")
        if any(f <= 0 for f in freqs):
            raise ValueError(f"frequencies must be positive, got {freqs}")
        object.__setattr__(self, "coefficient", _exact(self.coefficient))
        object.__setattr__(self, "frequencies", freqs)

    def evaluate(self, s: float) -> float:
        return float(self.coefficient) * math.prod(math.sinh(float(f) * s) for f in self.frequencies)


@dataclass(frozen=True)
class CoshExpansion:
    """sum_j c_j cosh(w_j s) (even) or sum_j c_j sinh(w_j s) (odd)."""

    parity: str
    terms: Dict[Fraction, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.parity not in ("even", "odd"):
            raise ValueError(f"parity must be 'even' or 'odd', got {self.parity!r}")
        clean = {Fraction(w): Fraction(c) for w, c in self.terms.items() if c != 0}
        if any(w < 0 for w in clean):
            raise ValueError("frequencies must be nonnegative")
        object.__setattr__(self, "terms", clean)

    def items(self) -> List[Tuple[Fraction, Fraction]]:
        """Terms sorted by descending frequency."""
        return sorted(self.terms.items(), key=lambda kv: kv[0], reverse=True)

    @property
    def leading(self) -> Optional[Tuple[Fraction, Fraction]]:
        return self.items()[0] if self.terms else None

    def evaluate(self, s, scaled: bool = False):
        """Numeric value at s; ``scaled`` multiplies by exp(-w_max |s|) to avoid overflow."""
        s = np.asarray(s, dtype=float)
        if not self.terms:
            return np.zeros_like(s)[()]
        wmax = float(self.items()[0][0]) if scaled else 0.0
        sign = 1.0 if self.parity == "even" else -1.0
        r = np.abs(s)
        out = np.zeros_like(s)
        for w, c in self.terms.items():
            w = float(w)
            out = out + float(c) * 0.5 * (np.exp((w - wmax) * r) + sign * np.exp((-w - wmax) * r))
        if self.parity == "odd":
            out = np.sign(s) * out
        return out[()]

    def scale(self) -> float:
        return float(sum(abs(c) for c in self.terms.values())) or 1.0

    def to_json(self) -> dict:
        return {"parity": self.parity,
                "terms": [{"frequency": fraction_str(w), "coefficient": fraction_str(c)}
                          for w, c in self.items()]}


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PositivityCertificate:
    checked_upto: int
    coefficients: Tuple[Fraction, ...]
    tail_bound: Fraction
    verdict: str  # certified | refuted | inconclusive
    refutation_index: Optional[int] = None

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_json(self) -> dict:
        return {"checked_upto": self.checked_upto,
                "coefficients": [fraction_str(c) for c in self.coefficients],
                "tail_bound": fraction_str(self.tail_bound),
                "tail_bound_approx": float(self.tail_bound),
                "verdict": self.verdict,
                "refutation_index": self.refutation_index}


def rescale_to_integers(terms: Sequence[SinhProductTerm]):
    """Substitute s -> scale * s so every frequency becomes a coprime integer set.

    Returns ``(scale, rescaled_terms)``.
    """
    freqs = [f for term in terms for f in term.frequencies]
    if not freqs:
        return Fraction(1), list(terms)
    lcm = math.lcm(*(f.denominator for f in freqs))
    gcd = math.gcd(*(int(f * lcm) for f in freqs))
    scale = Fraction(lcm, gcd)
    return scale, [SinhProductTerm(t.coefficient, tuple(f * scale for f in t.frequencies))
                   for t in terms]


def _exp_expansion(term: SinhProductTerm) -> Dict[Fraction, Fraction]:
    # exponential coefficients of one product, built factor by factor
    coeffs = {Fraction(0): term.coefficient}
    for w in term.frequencies:
        nxt: Dict[Fraction, Fraction] = defaultdict(Fraction)
        for omega, c in coeffs.items():
            nxt[omega + w] += c / 2
            nxt[omega - w] -= c / 2
        coeffs = nxt
    return coeffs


def expand(terms: Sequence[SinhProductTerm]) -> CoshExpansion:
    """Exact expansion of sum_k coefficient_k * prod sinh(w_{k,i} s)."""
    parities = {len(t.frequencies) % 2 for t in terms}
    if len(parities) > 1:
        raise ParityError("all terms must have the same parity of factor count")
    parity = "odd" if parities == {1} else "even"
    total: Dict[Fraction, Fraction] = defaultdict(Fraction)
    for term in terms:
        for omega, c in _exp_expansion(term).items():
            total[omega] += c
    folded = {}
    for omega, c in total.items():
        if omega > 0:
            folded[omega] = 2 * c
        elif omega == 0 and parity == "even":
            folded[omega] = c
    return CoshExpansion(parity, folded)


def taylor_coefficient(e: CoshExpansion, k: int) -> Fraction:
    """sum_j c_j w_j^(2k) (even) or sum_j c_j w_j^(2k+1) (odd); factorials omitted."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    power = 2 * k if e.parity == "even" else 2 * k + 1
    return sum((c * w ** power for w, c in e.terms.items()), Fraction(0))


def dominance_margin(e: CoshExpansion, K: int) -> Fraction:
    """1 - sum over negative lower terms of |c_j|/c_max * (w_j/w_max)^power(K).

    Positive margin with c_max > 0 forces every coefficient from index K on
    to be strictly positive, since each ratio only shrinks as k grows.
    """
    if not e.terms:
        return Fraction(1)
    (wmax, cmax), rest = e.items()[0], e.items()[1:]
    if cmax <= 0:
        return Fraction(-1)
    power = 2 * K if e.parity == "even" else 2 * K + 1
    drag = sum((-c / cmax * (w / wmax) ** power for w, c in rest if c < 0), Fraction(0))
    return 1 - drag


def smallest_dominant_index(e: CoshExpansion, limit: int = 1 << 16) -> Optional[int]:
    """Smallest K with a positive dominance margin (margin is monotone in K)."""
    if dominance_margin(e, 0) > 0:
        return 0
    if not e.terms or e.items()[0][1] <= 0:
        return None
    hi = 1
    while dominance_margin(e, hi) <= 0:
        hi *= 2
        if hi > limit:
            return None
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if dominance_margin(e, mid) > 0:
            hi = mid
        else:
            lo = mid
    return hi


def default_order(e: CoshExpansion) -> int:
    k0 = smallest_dominant_index(e)
    return 16 if k0 is None else max(16, k0 + 2)


def certify_nonnegative(e: CoshExpansion, K: Optional[int] = None,
                        search_limit: int = 10_000) -> PositivityCertificate:
    """Exact certificate that the expansion is >= 0 (for s >= 0 when odd).

    ``certified``: c_0..c_K >= 0 and the dominance margin at K is positive.
    ``refuted``: the function provably goes negative; either the first
    nonzero coefficient is negative (negative near 0) or the top-frequency
    coefficient is negative (negative at infinity).  The reported index is
    a k with c_k < 0.
    ``inconclusive``: anything else, including a negative c_k that is
    neither first nor eventually dominant.
    """
    if K is None:
        K = default_order(e)
    if K < 1:
        raise ValueError("K must be at least 1")
    coeffs = tuple(taylor_coefficient(e, k) for k in range(K + 1))
    margin = dominance_margin(e, K)

    first_nonzero = next((k for k, c in enumerate(coeffs) if c != 0), None)
    if first_nonzero is not None and coeffs[first_nonzero] < 0:
        return PositivityCertificate(K, coeffs, margin, "refuted", first_nonzero)
    if e.terms and e.items()[0][1] < 0:
        k = next((k for k, c in enumerate(coeffs) if c < 0), None)
        probe = K + 1
        while k is None and probe <= search_limit:
            if taylor_coefficient(e, probe) < 0:
                k = probe
            probe += 1
        if k is not None:
            return PositivityCertificate(K, coeffs, margin, "refuted", k)
    if all(c >= 0 for c in coeffs) and margin > 0:
        return PositivityCertificate(K, coeffs, margin, "certified")
    return PositivityCertificate(K, coeffs, margin, "inconclusive")
