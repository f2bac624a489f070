import random

from hypothesis import given
from hypothesis import strategies as st

from combword.oracle import (
    AbelianOracle,
    FreeOracle,
    ProductOracle,
    abelian_eval,
    free_reduce,
    geodesic_length,
    oracle_from_description,
    product_eval,
)

a, A, b, B = range(4)
# F2 x F2 letters
a1, A1, b1, B1, a2, A2, b2, B2 = range(8)

words4 = st.lists(st.integers(0, 3), max_size=10).map(tuple)
words8 = st.lists(st.integers(0, 7), max_size=8).map(tuple)


def test_free_reduce_examples():
    assert free_reduce((a, A)) == ()
    assert free_reduce((a, b, B, a)) == (a, a)
    assert free_reduce((a, b, A)) == (a, b, A)


def reduce_randomly(w, rng):
    w = list(w)
    while True:
        spots = [i for i in range(len(w) - 1) if w[i] == w[i + 1] ^ 1]
        if not spots:
            return tuple(w)
        i = rng.choice(spots)
        del w[i:i + 2]


@given(words4, st.integers(0, 2**32))
def test_free_reduce_is_confluent(w, seed):
    assert reduce_randomly(w, random.Random(seed)) == free_reduce(w)
    assert free_reduce(free_reduce(w)) == free_reduce(w)


def test_abelian_eval_examples():
    assert abelian_eval((), 2) == (0, 0)
    assert abelian_eval((a, b, a), 2) == (2, 1)
    assert abelian_eval((a, A, B), 2) == (0, -1)


def test_product_eval_examples():
    f = [FreeOracle(2), FreeOracle(2)]
    assert product_eval((a1, a2, A1, A2), f) == ((), ())
    assert product_eval((a1, b1), f) == ((a, b), ())
    assert product_eval((a2, a1, a2), f) == ((a,), (a, a))


def test_geodesic_length_examples():
    assert geodesic_length(FreeOracle(2), (a, A)) == 0
    assert geodesic_length(AbelianOracle(2), (a, B, B)) == 3
    assert geodesic_length(ProductOracle([FreeOracle(2)] * 2), (a1, a2)) == 2


ORACLES = [
    (FreeOracle(2), 4),
    (AbelianOracle(2), 4),
    (ProductOracle([FreeOracle(2), FreeOracle(2)]), 8),
    (ProductOracle([FreeOracle(1), AbelianOracle(1)]), 4),
]


@given(words8, words8)
def test_homomorphism_and_metric(u, v):
    for o, n in ORACLES:
        u_ = tuple(x % n for x in u)
        v_ = tuple(x % n for x in v)
        gu, gv = o.evaluate(u_), o.evaluate(v_)
        assert o.evaluate(u_ + v_) == o.multiply(gu, gv)
        inv = tuple(x ^ 1 for x in reversed(u_))
        assert o.evaluate(inv) == o.inverse(gu)
        assert (geodesic_length(o, u_) == 0) == o.is_identity(gu)
        assert geodesic_length(o, u_ + v_) <= geodesic_length(o, u_) + geodesic_length(o, v_)


def test_describe_round_trips():
    for o, _ in ORACLES:
        assert oracle_from_description(o.describe()).describe() == o.describe()
