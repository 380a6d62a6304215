import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sinhmajor.classifier import (DensityCertificate, MaxExcessWitness, SumExcessWitness,
                                  classify, classify_single, pad_pair, single_reduction,
                                  two_factor_criterion)
from sinhmajor.factorizer import Factorization
from sinhmajor.gram import GramWitness, gram_matrix, gram_probe, sym_eigen
from sinhmajor.scalarfn import eval_h
from strategies import pairs, positive_quarters, submajorized_pairs


def _h(pair):
    return lambda x: eval_h(pair, x)


def test_documented_verdicts():
    c = classify((8, 6, 3), (9, 4, 4))
    assert c.verdict == "NotPositiveDefinite" and isinstance(c.certificate, GramWitness)
    assert c.certificate.points == tuple(Fraction(k, 3) for k in range(4))
    c = classify((8, 6, 1), (9, 4, 4))
    assert c.verdict == "InfinitelyDivisible" and isinstance(c.certificate, DensityCertificate)
    c = classify((3, 1), (2, 2))
    assert c.rule == "max-excess" and c.certificate == MaxExcessWitness(3, 2)
    c = classify((3,), (1,))
    assert c.rule == "sum-excess" and c.certificate == SumExcessWitness(3, 1)
    c = classify((6, 5, 3), (9, 4, 1))
    assert c.rule == "weak-submajorization" and isinstance(c.certificate, Factorization)


def test_probe_off_gives_unknown():
    c = classify((8, 6, 3), (9, 4, 4), probe=False)
    assert c.verdict == "Unknown" and c.certificate is None


def test_zero_budget_gives_unknown():
    assert classify((8, 6, 3), (9, 4, 4), budget_ms=0).verdict == "Unknown"


def test_padding_and_zero_slots():
    p = pad_pair((1, 1), (2,))
    assert p.alpha == (1, 1) and p.beta == (2, 0)
    assert pad_pair((1, 0), (2, 0)).alpha == (1,)
    assert classify((1, 1), (2,)).verdict == "InfinitelyDivisible"
    # max test needs positive entries: sinh(3x) x / (sinh 2x sinh 2x) is not caught by it
    assert classify((3, 0), (2, 2), probe=False).rule != "max-excess"


def test_single_examples():
    assert classify_single(1, 1, 2, 1)
    assert not classify_single(2, 1, 3, 3)
    for a, b in ((1, 2), (3, 1), (Fraction(1, 2), Fraction(1, 2))):
        assert classify_single(a, b, a, b)
    # equal exponents: sinh(d x)/sinh(c x) is positive definite exactly when d <= c
    assert classify_single(1, 1, Fraction(1, 2), 0)
    assert not classify_single(1, 1, Fraction(1, 2), 1)


def test_two_factor_examples():
    assert two_factor_criterion(1, 1, 2, 1)
    assert not two_factor_criterion(8, 6, 9, 4)
    assert two_factor_criterion(3, 3, 3, 3)
    with pytest.raises(ValueError):
        two_factor_criterion(1, 2, 3, 1)


def test_single_agrees_with_reduction_on_grid():
    grid = [Fraction(k, 2) for k in range(9)]
    for a, b, c, d in itertools.product(grid, repeat=4):
        assert classify_single(a, b, c, d) == single_reduction(a, b, c, d), (a, b, c, d)


def test_single_against_numeric_witness():
    # (2,1,3,3): sinh(2x) sinh(3x)/(sinh x sinh 3x) = 2 cosh x grows, not positive definite
    assert gram_probe(_h(pad_pair((2, 3), (1, 3)))) is not None


@given(submajorized_pairs(max_len=4), st.integers(0, 2**32 - 1))
def test_soundness_of_infinitely_divisible(p, seed):
    c = classify(*p, probe=False)
    assert c.verdict == "InfinitelyDivisible"
    rng = np.random.default_rng(seed)
    for _ in range(5):
        n = int(rng.integers(2, 9))
        G = gram_matrix(_h(c.pair), rng.uniform(-4, 4, n))
        assert sym_eigen(G)[0][0] >= -1e-9 * n


@given(pairs(max_len=3, elements=positive_quarters))
def test_sum_excess_has_gram_witness(p):
    alpha, beta = p
    sa, sb = sum(alpha), sum(beta)
    c = classify(alpha, beta, probe=False)
    if c.rule == "sum-excess" and sa >= Fraction(11, 10) * sb:
        assert gram_probe(_h(c.pair)) is not None


@given(submajorized_pairs(max_len=3), st.data())
def test_monotone_transfer(p, data):
    alpha, beta = p
    if min(alpha) == 0:
        return
    shrink = data.draw(st.lists(st.integers(0, 3), min_size=len(alpha), max_size=len(alpha)))
    grow = data.draw(st.lists(st.integers(0, 3), min_size=len(beta), max_size=len(beta)))
    a2 = tuple(max(a - Fraction(k, 4), Fraction(1, 4)) if a > Fraction(1, 4) else a
               for a, k in zip(alpha, shrink))
    b2 = tuple(b + Fraction(k, 4) for b, k in zip(beta, grow))
    assert classify(a2, b2, budget_ms=200).verdict != "NotPositiveDefinite"


def test_json_round_trip_fields():
    j = classify((6, 5, 3), (9, 4, 1)).to_json()
    assert j["verdict"] == "InfinitelyDivisible" and j["certificate"]["type"] == "factorization"
