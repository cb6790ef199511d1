from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from gitstab.errors import InputError
from gitstab.homogenize import (
    choose_omega,
    explicit_size,
    homogenized_tensor,
    nu_closed_form,
    nu_filtration,
    saturation_bound_check,
    sign_equiv_check,
)
from gitstab.lattice import WeightedFlag
from gitstab.tensor import DecType, SparseTensor, mu_filtration_components, mu_filtration_tensor

from gen import dec_types, flags, tensors

MIXED = DecType(2, ((1, 1, 0), (2, 1, 0)))  # v = (1, 2)
STEP = WeightedFlag((1,), (1,), 2)


def mixed(first, second):
    return SparseTensor.from_terms(MIXED, [((0, 0, first), 1), ((1, 0, second), 1)])


@pytest.mark.parametrize(
    "t, omega, tuples",
    [
        (DecType.single(3, 3), 3, ((1,),)),
        (MIXED, 2, ((2, 0), (0, 1))),
        (DecType(3, ((2, 1, 0), (3, 1, 0))), 6, ((3, 0), (0, 2))),
    ],
)
def test_choose_omega_examples(t, omega, tuples):
    plan = choose_omega(t)
    assert plan.omega == omega and plan.tuples == tuples and plan.k == 1


def test_choose_omega_rejects_nonpositive_v():
    with pytest.raises(InputError):
        choose_omega(DecType.single(2, 2, 1, 1))
    with pytest.raises(InputError):
        choose_omega(MIXED, k=0)


def test_target_type_balances_omega():
    plan = choose_omega(MIXED)
    a, b, c = plan.target_type
    assert (a, b, c) == (2, 2, 0) and a - 2 * c == plan.omega


def test_nu_examples():
    plan = choose_omega(MIXED)
    w = mixed((1,), (2, 2))
    assert mu_filtration_components(STEP, w) == {0: -1, 1: 2}
    assert nu_filtration(STEP, w, plan) == 1
    assert nu_filtration(WeightedFlag((), (), 2), w, plan) == 0
    t = DecType.single(3, 3)
    w = SparseTensor.basis(t, (1, 1, 1))
    assert nu_filtration(WeightedFlag((1,), (1,), 3), w, choose_omega(t)) == F(-2)
    w = SparseTensor.basis(DecType.single(3, 3), (2, 3, 3))
    f = WeightedFlag((1,), (1,), 3)
    assert mu_filtration_tensor(f, w) == 3 and nu_filtration(f, w, choose_omega(t)) == 1


def test_nu_single_component_minus_three():
    t = DecType.single(3, 3)
    f = WeightedFlag((2,), (1,), 3)
    w = SparseTensor.basis(t, (1, 1, 1))
    assert mu_filtration_tensor(f, w) == -3
    assert nu_filtration(f, w, choose_omega(t)) == -1


@pytest.mark.parametrize(
    "first, second, expected",
    [((1,), (2, 2), (1, 1, True)), ((1,), (1, 2), (0, 0, True)), ((1,), (1, 1), (-1, -1, True))],
)
def test_sign_examples(first, second, expected):
    assert sign_equiv_check(STEP, mixed(first, second), choose_omega(MIXED)) == expected


def test_explicit_phi_hat_shape():
    plan = choose_omega(MIXED)
    w = mixed((1,), (2, 2))
    hat = homogenized_tensor(w, plan)
    assert hat.dec_type == DecType.single(2, 2, 2, 0)
    assert hat.as_dict() == {(0, 0, (1, 1)): 1, (0, 1, (2, 2)): 1}
    assert explicit_size(w, plan) == 2
    assert homogenized_tensor(w, plan, cap=1) is None


def test_explicit_phi_hat_det_padding():
    t = DecType(2, ((1, 1, 0), (3, 1, 1)))  # v = (1, 1)
    plan = choose_omega(t)
    assert plan.target_type == (3, 2, 1)
    hat = homogenized_tensor(SparseTensor.from_terms(t, [((0, 0, (1,)), 1), ((1, 0, (1, 1, 2)), 1)]), plan)
    # b1 padded with b1^b2 = b1 b2 - b2 b1
    assert hat.as_dict()[(0, 0, (1, 1, 2))] == 1 and hat.as_dict()[(0, 0, (1, 2, 1))] == -1


def test_saturation_examples():
    plan = choose_omega(MIXED)
    max_mu, bound, ok = saturation_bound_check(mixed((1,), (2, 2)), plan)
    assert bound == plan.target_type[0] == 2 and ok and max_mu == 2


def test_plan_type_mismatch():
    with pytest.raises(InputError):
        nu_filtration(STEP, SparseTensor.basis(DecType.single(2, 2), (1, 1)), choose_omega(MIXED))


positive = dec_types(max_a=4, max_comps=3, positive=True).filter(lambda t: t.r >= 2)


@given(positive.flatmap(lambda t: st.tuples(tensors(dec_type=t, max_terms=5), flags(t.r))))
def test_sign_equivalence_and_omega_invariance(data):
    w, f = data
    plan = choose_omega(w.dec_type)
    s_mu, s_nu, agree = sign_equiv_check(f, w, plan, cap=4000)
    assert agree
    nu = nu_filtration(f, w, plan, cap=4000)
    for k in (2, 3):
        assert nu_closed_form(f, w, choose_omega(w.dec_type, k)) == nu


@given(positive.flatmap(lambda t: st.tuples(tensors(dec_type=t, max_terms=3), flags(t.r))))
def test_closed_form_matches_explicit(data):
    w, f = data
    plan = choose_omega(w.dec_type)
    assume(explicit_size(w, plan) <= 3000)
    hat = homogenized_tensor(w, plan, cap=3000)
    a, _, c = hat.dec_type.components[0]
    assert a - w.dec_type.r * c == plan.omega
    assert mu_filtration_tensor(f, hat) / plan.omega == nu_closed_form(f, w, plan)


@given(positive.flatmap(lambda t: tensors(dec_type=t, max_terms=5)))
def test_saturation_bound(w):
    assert saturation_bound_check(w, choose_omega(w.dec_type))[2]


@given(st.integers(2, 4), st.integers(1, 3), st.data())
def test_homogeneous_case_is_rescaled_mu(r, a_extra, data):
    t = DecType(r, ((r + a_extra, 1, 1), (r + a_extra, 2, 1)))
    w = data.draw(tensors(dec_type=t, max_terms=4))
    f = data.draw(flags(r))
    plan = choose_omega(t)
    assert plan.tuples == ((1, 0),) or len(plan.v_values) == 1
    assert nu_filtration(f, w, plan) == mu_filtration_tensor(f, w) / a_extra
