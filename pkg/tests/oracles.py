"""Independent reference implementations used only by the tests."""
from fractions import Fraction

import mpmath as mp

mp.mp.dps = 50


def _mpf(v):
    if isinstance(v, (int, Fraction)):
        v = Fraction(v)
        return mp.mpf(v.numerator) / v.denominator
    return mp.mpf(v)


def h_mp(alpha, beta, x):
    """prod (b sinh(a x)) / (a sinh(b x)) in high precision, straight from sinh."""
    x = _mpf(x)
    if x == 0:
        return mp.mpf(1)
    out = mp.mpf(1)
    for a in map(_mpf, alpha):
        if a != 0:
            out *= mp.sinh(a * x) / (a * x)
    for b in map(_mpf, beta):
        if b != 0:
            out /= mp.sinh(b * x) / (b * x)
    return out


def f_mp(alpha, beta, t):
    """t^gamma prod b_i (t^{a_i} - 1) / (a_i (t^{b_i} - 1)) directly."""
    t = _mpf(t)
    alpha, beta = list(map(_mpf, alpha)), list(map(_mpf, beta))
    out = t ** ((1 - sum(alpha) + sum(beta)) / 2)
    for a, b in zip(alpha, beta):
        num = (t ** a - 1) / a if a != 0 else mp.log(t)
        den = (t ** b - 1) / b if b != 0 else mp.log(t)
        out *= num / den
    return out


def submajorized_by_hinge(u, v):
    """u weakly submajorized by v via sum (u_i - s)^+ <= sum (v_i - s)^+ for all s.

    For nonnegative tuples the hinge sums are piecewise linear in s with
    breakpoints at the entries, so checking s in entries plus 0 suffices.
    """
    u = [abs(Fraction(x)) for x in u]
    v = [abs(Fraction(x)) for x in v]
    for s in set(u) | set(v) | {Fraction(0)}:
        if sum(max(x - s, 0) for x in u) > sum(max(y - s, 0) for y in v):
            return False
    return True


def sinh_product_mp(coefficient, freqs, s):
    out = _mpf(coefficient)
    for f in freqs:
        out *= mp.sinh(_mpf(f) * s)
    return out


def density_mp(a, b, t):
    """D_{a,b}(t) from the hyperbolic closed form."""
    a, b, t = mp.mpf(a), mp.mpf(b), mp.mpf(t)
    return mp.sinh((1 / a - 1 / b) * mp.pi * t / 2) / (2 * t * mp.sinh(mp.pi * t / (2 * a))
                                                        * mp.sinh(mp.pi * t / (2 * b)))


def log_ratio_by_quadrature(a, b, x):
    """int_{-inf}^{inf} (cos(x t) - 1) D_{a,b}(t) dt with mpmath."""
    mp.mp.dps = 30
    try:
        f = lambda t: (mp.cos(x * t) - 1) * density_mp(a, b, t)
        return 2 * mp.quad(f, mp.linspace(0, 200, 41) + [mp.inf])
    finally:
        mp.mp.dps = 50
