"""Acceptance criteria, each at its stated tolerance and runtime budget.

Runtimes are measured after one warm-up call (imports and first-use caches
excluded) and reported in the assertion message.
"""
import itertools
import math
import time
from fractions import Fraction

import numpy as np
import pytest

from oracles import h_mp
from sinhmajor import (ExponentPair, Quad, certify_nonnegative, classify, classify_single,
                       combined_density, eval_h, expand, factorize, gram_probe, gram_report,
                       mean_apply, reconstruct_log_h, two_factor_criterion, verify_inequality)
from sinhmajor.classifier import MaxExcessWitness, SumExcessWitness
from sinhmajor.expander import SinhProductTerm, dominance_margin, taylor_coefficient
from sinhmajor.gram import gram_matrix, sym_eigen
from sinhmajor.matmeans import PosDefMatrix, random_matrix, random_pd

THREE_SINH_NPD = ExponentPair((8, 6, 3), (9, 4, 4))
THREE_SINH_ID = ExponentPair((8, 6, 1), (9, 4, 4))


def timed(fn, warm=True):
    if warm:
        fn()
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


@pytest.mark.acceptance(1, "h values for (8,6,3)/(9,4,4) within 1e-9, < 1 ms")
def test_h_values():
    xs = np.array([1 / 3, 2 / 3, 1.0])
    ref = np.array([0.9780192940, 0.9908829679, 0.9981846167])
    vals, secs = timed(lambda: eval_h(THREE_SINH_NPD, xs))
    assert np.all(np.abs(vals - ref) <= 1e-9), vals
    # the reference decimals agree with a 50-digit evaluation
    for x, r in zip((Fraction(1, 3), Fraction(2, 3), Fraction(1)), ref):
        assert abs(float(h_mp(THREE_SINH_NPD.alpha, THREE_SINH_NPD.beta, x)) - r) <= 1e-9
    assert secs < 1e-3, f"{secs * 1e3:.3f} ms"


@pytest.mark.acceptance(2, "4x4 Gram determinant -0.0000095 +- 1e-7, negative eigenvalue, < 10 ms")
def test_gram_determinant():
    pts = [Fraction(k, 3) for k in range(4)]
    rep, secs = timed(lambda: gram_report(lambda x: eval_h(THREE_SINH_NPD, x), pts))
    assert abs(rep.determinant - (-0.0000095)) <= 1e-7, rep.determinant
    assert rep.min_eigenvalue < 0
    assert secs < 10e-3, f"{secs * 1e3:.3f} ms"


G_TERMS = [SinhProductTerm(1, (1, 12, 18, 72)), SinhProductTerm(-1, (6, 9, 8, 72)),
           SinhProductTerm(1, (54, 9, 8, 12))]


@pytest.mark.acceptance(3, "exact 12-term cosh list, c_0..c_8 >= 0, c_9/103^18 >= 0.06, certified at K=9, < 1 s")
def test_cosh_certificate():
    def run():
        e = expand(G_TERMS)
        return e, certify_nonnegative(e, 9)

    (e, cert), secs = timed(run, warm=False)
    freqs = (103, 83, 77, 49, 43, 101, 95, 67, 65, 61, 59, 25)
    coeffs = (1, 2, 2, 2, 2, -1, -1, -3, -1, -1, -1, -1)
    assert e.parity == "even"
    assert e.terms == {Fraction(w): Fraction(c, 8) for w, c in zip(freqs, coeffs)}
    assert all(taylor_coefficient(e, k) >= 0 for k in range(9))
    # c_k counted with the integer coefficients above (the common 1/8 removed)
    ratio = taylor_coefficient(e, 9) * 8 / Fraction(103) ** 18
    assert ratio >= Fraction(6, 100), float(ratio)
    # the margin left after dropping the positive lower terms is about 0.062
    assert abs(float(dominance_margin(e, 9)) - 0.062) < 1e-3
    assert cert.verdict == "certified" and cert.checked_upto == 9
    assert secs < 1.0, f"{secs:.3f} s"


@pytest.mark.acceptance(4, "factorizations reconstruct h within 1e-11 on 101 points, reference lists too, < 10 ms")
def test_factorizations():
    xs = np.linspace(-5, 5, 101)
    reference = {
        ((6, 5, 3), (9, 4, 1)): (Quad(6, 3, 8, 1), Quad(5, 8, 9, 4)),
        ((7, 5, 4), (9, 6, 1)): (Quad(7, 5, 9, 3), Quad(4, 3, 6, 1)),
    }
    for (alpha, beta), golden in reference.items():
        h = eval_h(ExponentPair(alpha, beta), xs)
        fac, secs = timed(lambda: factorize(alpha, beta))
        assert np.max(np.abs(fac.value(xs) / h - 1)) <= 1e-11
        prod = np.prod([f.value(xs) for f in golden], axis=0)
        assert np.max(np.abs(prod / h - 1)) <= 1e-11
        assert secs < 10e-3, f"{secs * 1e3:.3f} ms"


@pytest.mark.acceptance(5, "geometric-arithmetic mean inequality 100/100 trials, identities to 1e-12, < 1 s")
def test_mcintosh():
    L, R = ExponentPair((1,), (1,)), ExponentPair((2,), (1,))
    start = time.perf_counter()
    run = verify_inequality(L, R, N=3, trials=100, seed=42)
    rng = np.random.default_rng(42)
    H, K, X = random_pd(rng, 3), random_pd(rng, 3), random_matrix(rng, 3)
    Hp, Kp = PosDefMatrix(H), PosDefMatrix(K)
    geo = mean_apply(L, Hp, Kp, X)
    ari = mean_apply(R, Hp, Kp, X)
    secs = time.perf_counter() - start
    assert run.passes == 100
    w, U = np.linalg.eigh(H)
    v, V = np.linalg.eigh(K)
    sqrt_h = U @ np.diag(np.sqrt(w)) @ U.conj().T
    sqrt_k = V @ np.diag(np.sqrt(v)) @ V.conj().T
    assert np.max(np.abs(geo - sqrt_h @ X @ sqrt_k)) <= 1e-12
    assert np.max(np.abs(ari - (H @ X + X @ K) / 2)) <= 1e-12
    assert secs < 1.0, f"{secs:.3f} s"


@pytest.mark.acceptance(6, "(8,7,3)/(10,6,4) below (9,2)/(8,5): 100/100 trials at N=4, < 2 s")
def test_mean_inequality():
    start = time.perf_counter()
    run = verify_inequality(ExponentPair((8, 7, 3), (10, 6, 4)), ExponentPair((9, 2), (8, 5)),
                            N=4, trials=100, seed=42)
    secs = time.perf_counter() - start
    assert not run.exploratory
    assert run.passes == 100
    assert secs < 2.0, f"{secs:.3f} s"


def _ratio(a, b, c, d):
    pair = ExponentPair((a, d), (b, c))
    return lambda x: eval_h(pair, x)


@pytest.mark.acceptance(7, "single-pair regions: grid agreement, no witness inside, rules or witness outside, < 60 s")
def test_single_pair_regions():
    start = time.perf_counter()
    grid = [Fraction(k, 2) for k in range(9)]
    for a, b, c, d in itertools.product(grid, repeat=4):
        num, den = sorted((a, d), reverse=True), sorted((b, c), reverse=True)
        assert classify_single(a, b, c, d) == two_factor_criterion(*num, *den), (a, b, c, d)

    rng = np.random.default_rng(2024)
    inside, outside = [], []
    while len(inside) < 50 or len(outside) < 50:
        a, b, c, d = (Fraction(int(k), 4) for k in rng.integers(1, 17, 4))
        num, den = sorted((a, d), reverse=True), sorted((b, c), reverse=True)
        slack = min(den[0] - num[0], sum(den) - sum(num))
        if slack > 0 and len(inside) < 50:
            inside.append((a, b, c, d))
        elif slack <= -Fraction(1, 4) and len(outside) < 50:
            outside.append((a, b, c, d))

    for p in inside:
        assert classify_single(*p)
        assert gram_probe(_ratio(*p)) is None, p
    for a, b, c, d in outside:
        assert not classify_single(a, b, c, d)
        cl = classify((a, d), (b, c), probe=False)
        assert isinstance(cl.certificate, (SumExcessWitness, MaxExcessWitness)), (a, b, c, d)
        if a + d > b + c:
            assert gram_probe(_ratio(a, b, c, d)) is not None, (a, b, c, d)
    secs = time.perf_counter() - start
    assert secs < 60, f"{secs:.1f} s"


def _random_submajorized(rng, n):
    beta = sorted((Fraction(int(v), 4) for v in rng.integers(1, 33, n)), reverse=True)
    alpha, used, cap, prefix = [], Fraction(0), beta[0], Fraction(0)
    for k in range(n):
        prefix += beta[k]
        hi = min(cap, prefix - used)
        v = Fraction(int(rng.integers(0, int(hi * 4) + 1)), 4)
        alpha.append(v)
        used, cap = used + v, v
    return tuple(alpha), tuple(beta)


@pytest.mark.acceptance(8, "powers h^r of 30 submajorized pairs give PSD Gram matrices, < 30 s")
def test_infinite_divisibility_sampling():
    start = time.perf_counter()
    rng = np.random.default_rng(8)
    for _ in range(30):
        alpha, beta = _random_submajorized(rng, int(rng.integers(1, 5)))
        c = classify(alpha, beta, probe=False)
        assert c.verdict == "InfinitelyDivisible"
        for r in (0.5, 1.0, 2.0):
            for _ in range(10):
                n = int(rng.integers(2, 7))
                G = gram_matrix(lambda x: eval_h(c.pair, x) ** r, rng.uniform(-4, 4, n))
                assert sym_eigen(G)[0][0] >= -1e-9 * n, (alpha, beta, r)
    secs = time.perf_counter() - start
    assert secs < 30, f"{secs:.1f} s"


@pytest.mark.acceptance(9, "density reconstruction of log h within 1e-6 at four points, < 5 s")
def test_density_reconstruction():
    cases = [
        (combined_density([(8, 9, 1), (4, 6, -1), (1, 4, 1)]), THREE_SINH_ID),
        (combined_density([(5, 9, 1), (8, 4, 1)]), ExponentPair((5, 8), (9, 4))),
    ]
    start = time.perf_counter()
    for d, pair in cases:
        for x in (0.25, 0.5, 1.0, 2.0):
            ref = math.log(float(h_mp(pair.alpha, pair.beta, x)))
            assert abs(reconstruct_log_h(d, x) - ref) <= 1e-6
    secs = time.perf_counter() - start
    assert secs < 5, f"{secs:.2f} s"


@pytest.mark.acceptance(10, "negative controls: sum and max rules fire, exploratory run finds a violation, < 5 s")
def test_negative_controls():
    start = time.perf_counter()
    c = classify((3,), (1,))
    assert c.verdict == "NotPositiveDefinite" and c.rule == "sum-excess"
    c = classify((3, 1), (2, 2))
    assert c.verdict == "NotPositiveDefinite" and c.rule == "max-excess"
    run = verify_inequality(ExponentPair((3,), (1,)), ExponentPair((1,), (1,)), N=2,
                            trials=200, seed=42)
    assert run.exploratory and run.failures >= 1
    secs = time.perf_counter() - start
    assert secs < 5, f"{secs:.2f} s"
