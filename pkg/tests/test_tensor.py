from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from gitstab.errors import InputError, ZeroTensorError
from gitstab.lattice import WeightedFlag, ops_from_flag
from gitstab.oracles import laurent_orbit
from gitstab.tensor import (
    DecType,
    SparseTensor,
    act,
    gamma_cocharacter,
    gamma_vector,
    mu,
    mu_filtration_components,
    mu_filtration_tensor,
    state_set,
    weight_of_term,
)

from gen import cocharacters, flags, tensors

T200 = DecType.single(2, 2)
T212 = DecType.single(2, 2, 1, 2)
HYP = SparseTensor.basis(T212, (1, 2), (2, 1))


@pytest.mark.parametrize(
    "r, comp, mi, expected",
    [(2, (2, 1, 0), (1, 1), (2, 0)), (2, (2, 1, 2), (1, 2), (-1, -1)), (3, (1, 1, 0), (2,), (0, 1, 0))],
)
def test_weight_of_term(r, comp, mi, expected):
    t = DecType(r, (comp,))
    assert weight_of_term((0, 0, mi), t).coords == expected


def test_state_sets():
    assert {c.coords for c in state_set(SparseTensor.basis(T200, (1, 1)))} == {(2, 0)}
    assert {c.coords for c in state_set(SparseTensor.basis(T200, (1, 2), (2, 1)))} == {(1, 1)}
    assert {c.coords for c in state_set(SparseTensor.basis(T212, (1, 1), (2, 2)))} == {(0, -2), (-2, 0)}


def test_zero_tensor_raises():
    zero = SparseTensor.from_terms(T200, [((0, 0, (1, 1)), 1), ((0, 0, (1, 1)), -1)])
    assert zero.is_zero()
    with pytest.raises(ZeroTensorError):
        state_set(zero)
    with pytest.raises(InputError):
        mu((1, -1), zero)


def test_bad_keys_rejected():
    with pytest.raises(InputError):
        SparseTensor.basis(T200, (1,))
    with pytest.raises(InputError):
        SparseTensor.basis(T200, (1, 3))
    with pytest.raises(InputError):
        SparseTensor.from_terms(T200, [((0, 1, (1, 1)), 1)])


def test_float_coefficients_rejected():
    with pytest.raises(InputError):
        SparseTensor.from_terms(T200, [((0, 0, (1, 1)), 0.5)])


def test_duplicate_keys_merge():
    w = SparseTensor.from_terms(T200, [((0, 0, (1, 2)), 1), ((0, 0, (1, 2)), "1/2")])
    assert w.as_dict() == {(0, 0, (1, 2)): F(3, 2)}


@pytest.mark.parametrize(
    "lam, w, expected",
    [
        ((1, -1), SparseTensor.basis(T200, (1, 1)), 2),
        ((5, -5), HYP, 0),
        ((0, 0), SparseTensor.basis(T200, (2, 2)), 0),
    ],
)
def test_mu_examples(lam, w, expected):
    assert mu(lam, w) == expected


def test_act_examples():
    w = SparseTensor.basis(T200, (1, 1))
    assert act([[1, 0], [0, 1]], w) == w
    assert act([[2, 0], [0, 1]], w).as_dict() == {(0, 0, (1, 1)): F(4)}
    assert act([[0, 1], [1, 0]], w) == SparseTensor.basis(T200, (2, 2))


def test_act_det_twist():
    w = SparseTensor.basis(DecType.single(2, 2, 1, 1), (1, 2))
    assert act([[2, 0], [0, 3]], w).as_dict() == {(0, 0, (1, 2)): F(1)}


def test_act_rejects_singular():
    with pytest.raises(InputError):
        act([[1, 1], [1, 1]], SparseTensor.basis(T200, (1, 1)))


@pytest.mark.parametrize(
    "ranks, alphas, r, expected",
    [([1], [1], 3, (F(-2), F(1))), ([1, 3], [F(1, 2), F(1, 4)], 4, (F(-7, 4), F(1, 4), F(5, 4)))],
)
def test_gamma_vector_examples(ranks, alphas, r, expected):
    assert gamma_vector(ranks, alphas, r) == expected


def test_gamma_vector_rejects_zero_alpha():
    with pytest.raises(InputError):
        gamma_vector([1], [0], 3)


def test_mu_filtration_examples():
    flag = WeightedFlag((1,), (1,), 2)
    assert mu_filtration_tensor(flag, SparseTensor.basis(T200, (1, 1))) == -2
    assert mu_filtration_tensor(flag, HYP) == 0
    empty = WeightedFlag((), (), 2)
    assert mu_filtration_tensor(empty, SparseTensor.basis(T200, (1, 2))) == 0


def test_mu_filtration_per_component():
    t = DecType(2, ((1, 1, 0), (2, 1, 0)))
    w = SparseTensor.from_terms(t, [((0, 0, (1,)), 1), ((1, 0, (2, 2)), 1)])
    assert mu_filtration_components(WeightedFlag((1,), (1,), 2), w) == {0: -1, 1: 2}


@given(tensors(max_terms=6).flatmap(lambda w: st.tuples(st.just(w), cocharacters(w.dec_type.r))))
def test_mu_matches_laurent_top(data):
    w, lam = data
    lt = laurent_orbit(lam, w)
    assert mu(lam, w) == lt.top
    assert lt.limit_exists == (mu(lam, w) <= 0)


@given(tensors(max_terms=6).flatmap(lambda w: st.tuples(st.just(w), cocharacters(w.dec_type.r), st.permutations(range(w.dec_type.r)))))
def test_permutation_equivariance(data):
    w, lam, sigma = data
    r = w.dec_type.r
    # column action: b_k -> b_{sigma[k]}
    p = [[1 if i == sigma[k] else 0 for k in range(r)] for i in range(r)]
    moved = act(p, w)
    expected = set()
    for chi in state_set(w):
        new = [0] * r
        for k in range(r):
            new[sigma[k]] = chi.coords[k]
        expected.add(tuple(new))
    assert {c.coords for c in state_set(moved)} == expected
    assert mu(lam, moved) == mu([lam[sigma[k]] for k in range(r)], w)


@given(tensors(max_terms=6).flatmap(lambda w: st.tuples(st.just(w), cocharacters(w.dec_type.r, sum_zero=True), st.integers(0, 3))))
def test_uniform_det_shift_invisible_to_sum_zero(data):
    w, lam, shift = data
    t = w.dec_type
    shifted = DecType(t.r, tuple((a, b, c + shift) for a, b, c in t.components))
    w2 = SparseTensor(shifted, w.terms)
    assert mu(lam, w2) == mu(lam, w)


@given(tensors(max_terms=8).flatmap(lambda w: st.tuples(st.just(w), flags(w.dec_type.r))))
def test_filtration_weight_equals_gamma_pairing(data):
    w, f = data
    gam = gamma_cocharacter(f)
    t = w.dec_type
    best = None
    for (comp, _, mi), _ in w.terms:
        weight = [-t.components[comp][2]] * t.r
        for k in mi:
            weight[k - 1] += 1
        val = sum(g * x for g, x in zip(gam, weight))
        best = val if best is None else max(best, val)
    assert mu_filtration_tensor(f, w) == best


@given(tensors(max_terms=6).flatmap(lambda w: st.tuples(st.just(w), flags(w.dec_type.r))))
def test_filtration_weight_scales_with_primitive_cocharacter(data):
    w, f = data
    if not f.length:
        return
    lam = ops_from_flag(f).weights
    gam = gamma_cocharacter(f)
    ratio = next(g / x for g, x in zip(gam, lam) if x)
    assert mu_filtration_tensor(f, w) == ratio * mu(lam, w)
