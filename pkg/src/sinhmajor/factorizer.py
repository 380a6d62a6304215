"""Split a weakly-submajorized sinh-ratio product into infinitely divisible pieces.

The pieces are

* ``SimpleRatio(a, b)`` = b sinh(a x) / (a sinh(b x)) with a <= b, and
* ``Quad(a, c, b, d)`` = bd sinh(a x) sinh(c x) / (ac sinh(b x) sinh(d x))
  with d > max(a, b, c) and a + c = b + d,

both normalized to 1 at x = 0.  The split is the constructive induction:
sort both tuples descending; while some a_j > b_j (first such j, so
a_k <= b_k before it), peel off the four-sinh factor

    sinh(a_j x) sinh(b' x) / (sinh(b_{j-1} x) sinh(b_j x)),  b' = b_{j-1} + b_j - a_j,

replace b_{j-1} by b', drop a_j and b_j, and continue on the shorter tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import numpy as np

from .exponents import ExponentPair, abs_normalize, first_violation
from .scalarfn import sinhc

_REL = 1e-12


class NotSubmajorized(ValueError):
    def __init__(self, index: int, message: str = ""):
        self.index = index
        super().__init__(message or f"prefix sum {index} of the numerator exceeds the denominator's")


def _sums_equal(x, y) -> bool:
    if all(isinstance(v, Fraction) for v in (x, y)):
        return x == y
    return abs(float(x) - float(y)) <= _REL * max(abs(float(x)), abs(float(y)), 1.0)


def quad_factor_check(a, c, b, d) -> bool:
    """Numerators (a, c), denominators (b, d): is the four-sinh ratio a certified factor?

    The larger denominator must strictly exceed the other three frequencies
    and a + c must equal b + d.  The smaller denominator may be 0 (the
    x / sinh limit of the positive case).
    """
    if min(a, b, c, d) < 0 or min(a, c) <= 0:
        return False
    big, small = (d, b) if d >= b else (b, d)
    return big > max(a, c, small) and _sums_equal(a + c, small + big)


@dataclass(frozen=True)
class SimpleRatio:
    a: object
    b: object

    def __post_init__(self):
        if not (0 <= self.a <= self.b and self.b > 0):
            raise ValueError(f"SimpleRatio needs 0 <= a <= b, b > 0; got a={self.a}, b={self.b}")

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return sinhc(float(self.a) * x) / sinhc(float(self.b) * x)

    @property
    def is_unit(self) -> bool:
        return self.a == self.b

    def to_json(self) -> dict:
        return {"kind": "simple", "numerator": [_num(self.a)], "denominator": [_num(self.b)]}


@dataclass(frozen=True)
class Quad:
    """sinh(a x) sinh(c x) / (sinh(b x) sinh(d x)), stored with d the dominant denominator."""

    a: object
    c: object
    b: object
    d: object

    def __post_init__(self):
        if self.b > self.d:
            b, d = self.b, self.d
            object.__setattr__(self, "b", d)
            object.__setattr__(self, "d", b)
        if not quad_factor_check(self.a, self.c, self.b, self.d):
            raise ValueError(f"not a valid four-sinh factor: {self}")

    def value(self, x):
        x = np.asarray(x, dtype=float)
        return (sinhc(float(self.a) * x) * sinhc(float(self.c) * x)
                / (sinhc(float(self.b) * x) * sinhc(float(self.d) * x)))

    is_unit = False

    def to_json(self) -> dict:
        return {"kind": "quad", "numerator": [_num(self.a), _num(self.c)],
                "denominator": [_num(self.d), _num(self.b)]}


ElementaryFactor = Union[SimpleRatio, Quad]


def _num(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return float(v)


def factor_value(f: ElementaryFactor, x):
    return f.value(x)


@dataclass(frozen=True)
class Factorization:
    factors: Tuple[ElementaryFactor, ...]
    source: ExponentPair

    def value(self, x):
        x = np.asarray(x, dtype=float)
        out = np.ones_like(x)
        for f in self.factors:
            out = out * f.value(x)
        return out[()] if out.ndim == 0 else out

    def to_json(self) -> dict:
        return {"type": "factorization", "source": self.source.to_json(),
                "factors": [f.to_json() for f in self.factors]}


def _drop_matched_zeros(a: list, b: list):
    while a and b and a[-1] == 0 and b[-1] == 0:
        a.pop()
        b.pop()


def _quad_or_cancel(a, c, b, d) -> List[ElementaryFactor]:
    # d is the dominant denominator; equality d == a makes the factor c/b
    if d == a:
        return [SimpleRatio(c, b)]
    if d == c:
        return [SimpleRatio(a, b)]
    return [Quad(a, c, b, d)]


def factorize(alpha: Sequence, beta: Sequence) -> Factorization:
    """Elementary factors whose product is h = prod sinhc(a_i x) / sinhc(b_i x)."""
    a = list(abs_normalize(alpha))
    b = list(abs_normalize(beta))
    bad = first_violation(a, b)
    if bad is not None:
        raise NotSubmajorized(bad)
    source = ExponentPair(tuple(a), tuple(b))
    _drop_matched_zeros(a, b)

    factors: List[ElementaryFactor] = []
    while a:
        j = next((i for i in range(len(a)) if a[i] > b[i]), None)
        if j is None:
            factors.extend(SimpleRatio(x, y) for x, y in zip(a, b) if not (x == 0 and y == 0))
            break
        # j >= 1 because a_1 <= b_1 holds for a submajorized pair
        b_new = b[j - 1] + b[j] - a[j]
        factors.extend(_quad_or_cancel(a[j], b_new, b[j], b[j - 1]))
        del a[j]
        b[j - 1] = b_new
        del b[j]
        b.sort(reverse=True)
        _drop_matched_zeros(a, b)

    factors = [f for f in factors if not f.is_unit]
    return Factorization(tuple(factors), source)
