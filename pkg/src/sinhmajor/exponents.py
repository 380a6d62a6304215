"""Exponent tuples, the gamma offset and the weak-submajorization test.

Exponents are kept as ``fractions.Fraction`` whenever they arrive as
integers or ``"p/q"`` strings, so prefix-sum comparisons are exact.  Floats
are allowed and compared with plain ``<=`` (ties pass).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate
from numbers import Rational, Real
from typing import Sequence, Tuple

Number = Real  # Fraction or float
ExponentTuple = Tuple[Number, ...]


class StructuralError(ValueError):
    """Malformed exponent data (length mismatch, empty or non-finite tuples)."""


def as_exponent(value) -> Number:
    """Coerce one exponent: ints and ``"p/q"`` strings become Fractions."""
    if isinstance(value, bool):
        raise StructuralError(f"boolean is not an exponent: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise StructuralError(f"cannot parse exponent {value!r}") from exc
    if isinstance(value, Real):
        value = float(value)
        if not math.isfinite(value):
            raise StructuralError(f"non-finite exponent {value!r}")
        return value
    raise StructuralError(f"unsupported exponent type {type(value).__name__}")


def as_tuple(values: Sequence) -> ExponentTuple:
    out = tuple(as_exponent(v) for v in values)
    if not out:
        raise StructuralError("exponent tuple must have at least one entry")
    return out


def is_exact(values: Sequence) -> bool:
    return all(isinstance(v, Fraction) for v in values)


@dataclass(frozen=True)
class ExponentPair:
    """The pair (alpha, beta) defining f_{alpha,beta} and its sinh-ratio h."""

    alpha: ExponentTuple
    beta: ExponentTuple

    def __post_init__(self):
        alpha, beta = as_tuple(self.alpha), as_tuple(self.beta)
        if len(alpha) != len(beta):
            raise StructuralError(
                f"alpha has {len(alpha)} entries but beta has {len(beta)}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)

    def __len__(self):
        return len(self.alpha)

    @property
    def gamma(self) -> Number:
        return gamma(self)

    @property
    def exact(self) -> bool:
        return is_exact(self.alpha) and is_exact(self.beta)

    def normalized(self) -> "ExponentPair":
        return ExponentPair(abs_normalize(self.alpha), abs_normalize(self.beta))

    def to_json(self) -> dict:
        return {"alpha": [format_exponent(a) for a in self.alpha],
                "beta": [format_exponent(b) for b in self.beta]}


def format_exponent(v: Number):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def gamma(pair: ExponentPair) -> Number:
    """(1 - sum(a_i - b_i)) / 2."""
    if len(pair.alpha) != len(pair.beta):
        raise StructuralError("alpha and beta lengths differ")
    excess = sum((a - b for a, b in zip(pair.alpha, pair.beta)), Fraction(0))
    return (1 - excess) / 2


def abs_normalize(values: Sequence) -> ExponentTuple:
    """Absolute values sorted in non-increasing order."""
    return tuple(sorted((abs(v) for v in as_tuple(values)), reverse=True))


def prefix_sums(values: Sequence) -> list:
    return list(accumulate(abs_normalize(values)))


def first_violation(u: Sequence, v: Sequence):
    """Smallest k (1-based) whose k-prefix sum of sorted |u| exceeds that of |v|."""
    if len(u) != len(v):
        raise StructuralError(f"length mismatch: {len(u)} vs {len(v)}")
    for k, (su, sv) in enumerate(zip(prefix_sums(u), prefix_sums(v)), start=1):
        if su > sv:
            return k
    return None


def weak_submajorize(u: Sequence, v: Sequence) -> bool:
    """True iff |u| is weakly submajorized by |v|."""
    return first_violation(u, v) is None


def combined_pair_tuples(left: ExponentPair, right: ExponentPair):
    """Tuples compared when testing f_left <= f_right.

    The ratio f_left / f_right reduces to a sinh-ratio whose numerator
    frequencies are (a_1..a_n, d_1..d_m) and denominator frequencies are
    (b_1..b_n, c_1..c_m), where left = (a, b) and right = (c, d).
    """
    return left.alpha + right.beta, left.beta + right.alpha
