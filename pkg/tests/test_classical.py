import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_force_conditional, brute_force_guesswork
from quantum_guesswork.classical import (
    conditional_guesswork,
    expected_rank,
    guessing_order,
    guesswork,
    invert,
    majorizes,
    pushforward,
    reverse,
    rioul_bound,
    shannon_entropy,
)
from quantum_guesswork.errors import ValidationError


@st.composite
def distributions(draw, min_size=1, max_size=6):
    n = draw(st.integers(min_size, max_size))
    w = draw(st.lists(st.floats(0, 1, allow_subnormal=False), min_size=n, max_size=n))
    w = np.asarray(w)
    if w.sum() <= 1e-6:
        w = np.ones(n)
    return w / w.sum()


def test_guesswork_examples():
    assert guesswork([1, 0, 0]) == 1
    for n in range(1, 7):
        assert guesswork(np.full(n, 1 / n)) == pytest.approx((n + 1) / 2)
    assert guesswork([0.5, 0.3, 0.2]) == pytest.approx(1.7)
    with pytest.raises(ValidationError):
        guesswork([])


@settings(max_examples=80, deadline=None)
@given(p=distributions())
def test_guesswork_matches_brute_force_and_range(p):
    g = guesswork(p)
    assert g == pytest.approx(brute_force_guesswork(p), abs=1e-12)
    assert 1 - 1e-12 <= g <= (len(p) + 1) / 2 + 1e-12
    assert expected_rank(p, guessing_order(p)) == pytest.approx(g, abs=1e-12)


def test_guessing_order_examples():
    assert guessing_order([0.2, 0.5, 0.3]) == (3, 1, 2)
    assert guessing_order([0.25] * 4) == (1, 2, 3, 4)
    assert guessing_order([0.6, 0.3, 0.1]) == (1, 2, 3)


@settings(max_examples=50, deadline=None)
@given(p=distributions(min_size=2))
def test_guessing_order_property(p):
    tau = guessing_order(p)
    for i in range(len(p)):
        for j in range(len(p)):
            if p[i] > p[j]:
                assert tau[i] < tau[j]


def test_permutation_helpers():
    assert invert((3, 1, 2)) == (2, 3, 1)
    assert invert(invert((4, 2, 1, 3))) == (4, 2, 1, 3)
    assert reverse((1, 2, 3)) == (3, 2, 1)


def test_conditional_guesswork_examples():
    p = np.array([0.5, 0.3, 0.2])
    independent = np.tile([0.1, 0.6, 0.3], (3, 1))
    assert conditional_guesswork(p, independent) == pytest.approx(guesswork(p))
    assert conditional_guesswork(p, np.eye(3)) == pytest.approx(1)
    bsc = np.array([[0.9, 0.1], [0.1, 0.9]])
    assert conditional_guesswork([0.5, 0.5], bsc) == pytest.approx(1.1)
    with pytest.raises(ValidationError):
        conditional_guesswork(p, np.eye(2))


def test_conditional_guesswork_zero_probability_outcome():
    w = np.array([[1.0, 0.0], [1.0, 0.0]])
    assert conditional_guesswork([0.3, 0.7], w) == pytest.approx(1.3)


@settings(max_examples=60, deadline=None)
@given(p=distributions(min_size=2, max_size=5), m=st.integers(1, 4), seed=st.integers(0, 2**32 - 1))
def test_conditioning_cannot_hurt(p, m, seed):
    w = np.random.default_rng(seed).dirichlet(np.ones(m), size=len(p))
    g = conditional_guesswork(p, w)
    assert g == pytest.approx(brute_force_conditional(p, w), abs=1e-12)
    assert g <= guesswork(p) + 1e-12


def test_majorizes_examples():
    assert majorizes([1, 0], [0.5, 0.5])
    p = [0.2, 0.5, 0.3]
    assert majorizes(p, p)
    assert majorizes([0.6, 0.4], [0.5, 0.5])
    assert not majorizes([0.5, 0.5], [0.6, 0.4])
    assert majorizes([1.0], [0.5, 0.5])


def test_shannon_entropy_examples():
    assert shannon_entropy([1, 0, 0]) == 0
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1)
    # frozen from a 40-digit mpmath evaluation
    assert shannon_entropy([0.85355, 0.14645]) == pytest.approx(0.6008846592666688, abs=1e-12)


def test_pushforward_examples():
    p = np.array([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_allclose(pushforward(p, lambda x: x), p)
    np.testing.assert_allclose(pushforward(p, lambda x: 1), [1.0])
    np.testing.assert_allclose(pushforward(np.full(4, 0.25), lambda x: 1 + x % 2), [0.5, 0.5])
    np.testing.assert_allclose(pushforward(p, [2, 2, 1, 1]), [0.7, 0.3])


@st.composite
def majorizing_pairs(draw):
    p = draw(distributions(min_size=2, max_size=6))
    q = p.copy()
    for _ in range(draw(st.integers(1, 5))):
        i = draw(st.integers(0, len(q) - 1))
        j = draw(st.integers(0, len(q) - 1))
        if q[i] < q[j]:
            i, j = j, i
        share = draw(st.floats(0, 1))
        amount = share * q[j]
        q[i] += amount
        q[j] -= amount
    return p, q


@settings(max_examples=80, deadline=None)
@given(pair=majorizing_pairs())
def test_schur_concavity(pair):
    p, q = pair
    assert majorizes(q, p)
    assert guesswork(q) <= guesswork(p) + 1e-12


@settings(max_examples=60, deadline=None)
@given(p=distributions(min_size=1, max_size=6), data=st.data())
def test_function_of_label_is_easier(p, data):
    f = data.draw(st.lists(st.integers(1, len(p)), min_size=len(p), max_size=len(p)))
    assert guesswork(pushforward(p, f)) <= guesswork(p) + 1e-12


@settings(max_examples=80, deadline=None)
@given(p=distributions())
def test_rioul_bound(p):
    assert rioul_bound(shannon_entropy(p)) <= guesswork(p) + 1e-12
