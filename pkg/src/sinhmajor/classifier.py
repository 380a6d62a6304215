"""Verdicts for h(x) = prod sinh(a_i x) / sinh(b_i x) (normalized to h(0) = 1).

Rules are tried in order:

1. weak submajorization            -> infinitely divisible, with a factorization
2. sum of a_i exceeds sum of b_i   -> not positive definite (h grows without bound)
3. largest a_i exceeds every b_j   -> not positive definite
4. bounded probes: a Gram-matrix witness search, then (rational input)
   an exact positivity certificate for the combined Levy density
5. otherwise                       -> unknown

``Unknown`` is a genuine outcome: there are pairs outside every rule.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .density import density_certificate
from .exponents import ExponentPair, abs_normalize, is_exact, weak_submajorize
from .expander import PositivityCertificate
from .factorizer import Factorization, factorize
from .gram import DEFAULT_MAX_SIZE, DEFAULT_SPACINGS, GramWitness, gram_probe
from .scalarfn import eval_h

INFINITELY_DIVISIBLE = "InfinitelyDivisible"
NOT_POSITIVE_DEFINITE = "NotPositiveDefinite"
UNKNOWN = "Unknown"

DEFAULT_BUDGET_MS = 2000


@dataclass(frozen=True)
class SumExcessWitness:
    sum_numerator: object
    sum_denominator: object

    def to_json(self):
        return {"type": "sum-excess", "sum_numerator": _num(self.sum_numerator),
                "sum_denominator": _num(self.sum_denominator)}


@dataclass(frozen=True)
class MaxExcessWitness:
    max_numerator: object
    max_denominator: object

    def to_json(self):
        return {"type": "max-excess", "max_numerator": _num(self.max_numerator),
                "max_denominator": _num(self.max_denominator)}


@dataclass(frozen=True)
class DensityCertificate:
    scale: Fraction
    certificate: PositivityCertificate

    def to_json(self):
        out = {"type": "density-positivity", "scale": str(self.scale)}
        out.update(self.certificate.to_json())
        return out


Certificate = Union[Factorization, DensityCertificate, SumExcessWitness, MaxExcessWitness,
                    GramWitness, None]


@dataclass(frozen=True)
class Classification:
    verdict: str
    certificate: Certificate
    rule: str
    pair: ExponentPair

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "rule": self.rule, "pair": self.pair.to_json(),
                "certificate": None if self.certificate is None else self.certificate.to_json()}


def _num(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def pad_pair(alpha: Sequence, beta: Sequence) -> ExponentPair:
    """Abs-normalize and pad the shorter tuple with zeros.

    A zero exponent contributes sinhc(0) = 1, so padding never changes h.
    Slots with a zero on both sides are dropped (unless nothing else is left).
    """
    a, b = list(abs_normalize(alpha)), list(abs_normalize(beta))
    n = max(len(a), len(b))
    a += [Fraction(0)] * (n - len(a))
    b += [Fraction(0)] * (n - len(b))
    while len(a) > 1 and a[-1] == 0 and b[-1] == 0:
        a.pop()
        b.pop()
    return ExponentPair(tuple(a), tuple(b))


def h_function(pair: ExponentPair):
    return lambda x: eval_h(pair, x)


def classify(alpha: Sequence, beta: Sequence, probe: bool = True,
             budget_ms: float = DEFAULT_BUDGET_MS,
             grid_spacings=DEFAULT_SPACINGS, max_size: int = DEFAULT_MAX_SIZE) -> Classification:
    pair = pad_pair(alpha, beta)
    a, b = pair.alpha, pair.beta

    if weak_submajorize(a, b):
        return Classification(INFINITELY_DIVISIBLE, factorize(a, b), "weak-submajorization", pair)
    if sum(a) > sum(b):
        return Classification(NOT_POSITIVE_DEFINITE, SumExcessWitness(sum(a), sum(b)),
                              "sum-excess", pair)
    if min(a + b) > 0 and a[0] > b[0]:
        return Classification(NOT_POSITIVE_DEFINITE, MaxExcessWitness(a[0], b[0]),
                              "max-excess", pair)
    if probe:
        deadline = time.monotonic() + budget_ms / 1000.0
        witness = gram_probe(h_function(pair), grid_spacings, max_size, deadline=deadline)
        if witness is not None:
            return Classification(NOT_POSITIVE_DEFINITE, witness, "gram-witness", pair)
        if is_exact(a) and is_exact(b) and min(a + b) > 0 and time.monotonic() < deadline:
            found = density_certificate(a, b)
            if found is not None:
                scale, _, cert = found
                if cert.certified:
                    return Classification(INFINITELY_DIVISIBLE, DensityCertificate(scale, cert),
                                          "cosh-certificate", pair)
    return Classification(UNKNOWN, None, "undecided", pair)


def two_factor_criterion(a1, a2, b1, b2) -> bool:
    """sinh(a1 x) sinh(a2 x) / (sinh(b1 x) sinh(b2 x)) positive definite, for a1 >= a2, b1 >= b2."""
    if a1 < a2 or b1 < b2:
        raise ValueError("two_factor_criterion expects each pair sorted descending")
    if min(a1, a2, b1, b2) < 0:
        raise ValueError("frequencies must be nonnegative")
    return a1 <= b1 and a1 + a2 <= b1 + b2


def classify_single(a, b, c, d) -> bool:
    """Exact test of f_{a,b} <= f_{c,d} for a, b, c, d >= 0.

    The ratio reduces to sinh(a x) sinh(d x) / (sinh(b x) sinh(c x)).  For
    a > b the admissible (c, d) are {c >= a, 0 <= d <= c - a + b}; for
    a <= b they are {d <= c} together with {c <= d <= c - a + b, d <= b}.
    The tie a = b belongs with the second family: then the ratio is
    sinh(d x)/sinh(c x), positive definite exactly when d <= c.
    """
    if min(a, b, c, d) < 0:
        raise ValueError("classify_single expects nonnegative arguments")
    if a > b:
        return c >= a and d <= c - a + b
    return d <= c or (c <= d <= c - a + b and d <= b)


def single_reduction(a, b, c, d) -> bool:
    """The same question answered through two_factor_criterion."""
    num = sorted((a, d), reverse=True)
    den = sorted((b, c), reverse=True)
    return two_factor_criterion(num[0], num[1], den[0], den[1])
