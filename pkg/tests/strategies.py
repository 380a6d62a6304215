from fractions import Fraction

from hypothesis import strategies as st

quarters = st.integers(min_value=0, max_value=40).map(lambda k: Fraction(k, 4))
positive_quarters = st.integers(min_value=1, max_value=40).map(lambda k: Fraction(k, 4))
signed_quarters = st.integers(min_value=-40, max_value=40).map(lambda k: Fraction(k, 4))


@st.composite
def pairs(draw, max_len=4, elements=quarters):
    n = draw(st.integers(1, max_len))
    alpha = tuple(draw(st.lists(elements, min_size=n, max_size=n)))
    beta = tuple(draw(st.lists(elements, min_size=n, max_size=n)))
    return alpha, beta


@st.composite
def submajorized_pairs(draw, max_len=4):
    """Random (alpha, beta) with |alpha| weakly submajorized by |beta|, built directly."""
    n = draw(st.integers(1, max_len))
    beta = sorted(draw(st.lists(positive_quarters, min_size=n, max_size=n)), reverse=True)
    alpha, used, cap = [], Fraction(0), beta[0]
    prefix = Fraction(0)
    for k in range(n):
        prefix += beta[k]
        hi = min(cap, prefix - used)
        v = Fraction(draw(st.integers(0, int(hi * 4))), 4)
        alpha.append(v)
        used += v
        cap = v
    perm = draw(st.permutations(alpha))
    return tuple(perm), tuple(beta)
