from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import assume, given, settings, strategies as st

from hilbeq import DimensionMismatch
from hilbeq.exterior import ExteriorElement, meet, meet_extensors, sign_of_concat, wedge, wedge_vectors
from hilbeq.linalg import rank

from oracles import dense_wedge, intersection_basis


def e(idx, N, c=1):
    return ExteriorElement.basis_element(idx, N, c)


@pytest.mark.parametrize("K, H, s", [((1, 5), (2,), -1), ((1, 2), (3, 4), 1), ((2,), (2,), 0)])
def test_sign_of_concat(K, H, s):
    assert sign_of_concat(K, H) == s


def test_wedge_basis_vectors():
    assert wedge(e([1], 4), e([2], 4)) == e([1, 2], 4)
    assert wedge(e([2], 4), e([1], 4)) == e([1, 2], 4, -1)


def test_dimension_checked():
    with pytest.raises(DimensionMismatch):
        wedge(e([1], 3), e([1], 4))


# random sparse elements

def elements(N, step, max_terms=6):
    keys = list(combinations(range(1, N + 1), step))
    return st.dictionaries(st.sampled_from(keys), st.integers(-4, 4), max_size=max_terms).map(
        lambda d: ExteriorElement(step, N, d))


@st.composite
def element_triple(draw):
    N = draw(st.integers(2, 6))
    s1 = draw(st.integers(0, N))
    s2 = draw(st.integers(0, N - s1))
    return draw(elements(N, s1)), draw(elements(N, s1)), draw(elements(N, s2))


@settings(max_examples=80, deadline=None)
@given(st.data())
def test_graded_antisymmetry(data):
    N = data.draw(st.integers(1, 8))
    idx = data.draw(st.permutations(range(1, N + 1)))
    k = data.draw(st.integers(0, N))
    K, H = tuple(sorted(idx[:k])), tuple(sorted(idx[k:]))
    assert sign_of_concat(K, H) == (-1) ** (len(K) * len(H)) * sign_of_concat(H, K)


@settings(max_examples=80, deadline=None)
@given(element_triple())
def test_bilinear(triple):
    a, b, c = triple
    assert wedge(a + b, c) == wedge(a, c) + wedge(b, c)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(lambda N: st.tuples(
    st.sampled_from([s for s in range(1, N + 1) if s % 2]).flatmap(lambda s: elements(N, s)))))
def test_odd_square_vanishes(t):
    a, = t
    assert not wedge(a, a)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 6).flatmap(lambda N: st.integers(1, N).flatmap(
    lambda k: st.lists(st.lists(st.integers(-3, 3), min_size=N, max_size=N), min_size=k, max_size=k))))
def test_decomposable_square_vanishes(vectors):
    a = wedge_vectors(vectors)
    assert not wedge(a, a) or a.step == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 6).flatmap(lambda N: st.integers(1, N).flatmap(
    lambda k: st.lists(st.lists(st.integers(-3, 3), min_size=N, max_size=N), min_size=k, max_size=k))))
def test_wedge_vectors_are_minors(vectors):
    assert wedge_vectors(vectors).terms == {K: c for K, c in dense_wedge(vectors).items()}


def test_meet_coordinate_subspaces():
    N = 6
    T = e([1, 2, 3], N)
    U = e([3, 4, 5, 6], N)
    out = meet(T, U)
    assert set(out.terms) == {(3,)}


def test_meet_top_extensors():
    N = 4
    T = e([1, 2, 3, 4], N, 3)
    for k in (1, 2):
        assert meet(T, T, expansion=k) == T.scale(3)


def test_meet_requires_spanning_steps():
    with pytest.raises(DimensionMismatch):
        meet(e([1], 4), e([2, 3], 4))


@st.composite
def meet_pair(draw):
    N = draw(st.integers(2, 6))
    p = draw(st.integers(1, N))
    q = draw(st.integers(N - p, N))
    return draw(elements(N, p, 8)), draw(elements(N, q, 8))


@settings(max_examples=100, deadline=None)
@given(meet_pair())
def test_meet_expansions_agree(pair):
    T, U = pair
    assert meet(T, U, expansion=1) == meet(T, U, expansion=2)


def _rows(draw, k, N):
    return draw(st.lists(st.lists(st.integers(-3, 3), min_size=N, max_size=N), min_size=k, max_size=k))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_meet_extensors_matches_meet(data):
    N = data.draw(st.integers(2, 5))
    p = data.draw(st.integers(1, N))
    q = data.draw(st.integers(N - p, N))
    A, B = _rows(data.draw, p, N), _rows(data.draw, q, N)
    for k in (1, 2):
        assert meet_extensors(A, B, expansion=k) == meet(wedge_vectors(A, N), wedge_vectors(B, N))


def _proportional(a: dict, b: dict) -> bool:
    keys = set(a) | set(b)
    k0 = next(iter(sorted(keys)))
    x, y = Fraction(a.get(k0, 0)), Fraction(b.get(k0, 0))
    return bool(x) and bool(y) and all(Fraction(a.get(k, 0)) * y == Fraction(b.get(k, 0)) * x for k in keys)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_meet_is_intersection(data):
    N = data.draw(st.integers(3, 6))
    p = data.draw(st.integers(2, N - 1))
    q = data.draw(st.integers(N - p + 1, N - 1))
    F, G = _rows(data.draw, p, N), _rows(data.draw, q, N)
    assume(rank(F) == p and rank(G) == q and rank(F + G) == N)
    inter = intersection_basis(F, G)
    assert len(inter) == p + q - N
    expected = dense_wedge(inter)
    got = meet(wedge_vectors(F), wedge_vectors(G)).terms
    assert _proportional(got, expected)


def test_meet_with_custom_bracket():
    basis = [[1, 1, 0], [0, 1, 0], [0, 0, 2]]
    T, U = e([1, 2], 3), e([2, 3], 3)
    assert meet(T, U, basis=basis) == meet(T, U).scale(Fraction(1, 2))
