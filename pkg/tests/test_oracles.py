import random

import pytest
from hypothesis import given, strategies as st

from gitstab.errors import InputError, ZeroTensorError
from gitstab.kempf import kempf_search, random_unimodular, torus_instability, torus_polystable
from gitstab.lattice import weighted_flag_of
from gitstab.oracles import (
    COROOT,
    SL2_BRACKET,
    Dual,
    adjoint_example,
    brute_force_instability,
    dual_embed,
    laurent_orbit,
    orthogonal_example,
)
from gitstab.tensor import DecType, SparseTensor, act, mu, state_set, weight_of_term

from gen import cocharacters

T200 = DecType.single(2, 2)
T212 = DecType.single(2, 2, 1, 2)
B1B1 = SparseTensor.basis(T200, (1, 1))
HYP = SparseTensor.basis(T212, (1, 2), (2, 1))


def coordinate_flag(lam):
    """The flag of coordinate subspaces of ``lam`` with weights normalised to the first step."""
    f = weighted_flag_of(lam)
    blocks = tuple(frozenset(i for i, x in enumerate(lam) if x == g) for g in f.gammas)
    return blocks, tuple(a / f.alphas[0] for a in f.alphas)


def test_laurent_examples():
    lt = laurent_orbit((1, -1), B1B1)
    assert set(lt.pieces) == {2} and lt.pieces[2] == B1B1
    assert lt.top == 2 and not lt.limit_exists and lt.limit() is None
    lt = laurent_orbit((3, -3), HYP)
    assert set(lt.pieces) == {0} and lt.limit() == HYP
    assert set(laurent_orbit((0, 0), B1B1).pieces) == {0}


def test_laurent_limit_drops_negative_pieces():
    w = SparseTensor.basis(T200, (1, 2), (2, 2))
    lt = laurent_orbit((1, -1), w)
    assert lt.top == 0 and lt.limit() == SparseTensor.basis(T200, (1, 2))


def test_laurent_zero_tensor():
    with pytest.raises(ZeroTensorError):
        laurent_orbit((1, -1), SparseTensor(T200, ()))


def test_brute_force_examples():
    res = brute_force_instability(B1B1, 3)
    assert all(x == y * res.lam[1] for x, y in zip(res.lam, (-1, 1)))
    assert res.q == mu(res.lam, B1B1) and res.q < 0
    assert (-1, 1) in res.optima
    assert brute_force_instability(HYP, 3) is None
    assert set(brute_force_instability(B1B1, 1).optima) == {(-1, 1)}


def test_dual_embed_r2():
    w = dual_embed([((Dual(1),), 1)], 2)
    assert w.dec_type == DecType.single(2, 1, 1, 1)
    assert w.as_dict() == {(0, 0, (2,)): 1}
    w = dual_embed([((Dual(2),), 1)], 2)
    assert w.as_dict() == {(0, 0, (1,)): -1}
    assert weight_of_term((0, 0, (2,)), DecType.single(2, 1, 1, 1)).coords == (-1, 0)


def test_dual_embed_quadric_r2():
    w = dual_embed([((Dual(1), Dual(1)), 1), ((Dual(2), Dual(2)), 1)], 2)
    assert w == SparseTensor.basis(T212, (2, 2), (1, 1))


def test_dual_embed_r3():
    w = dual_embed([((Dual(1),), 1)], 3)
    assert w.dec_type == DecType.single(3, 2, 1, 1)
    assert w.as_dict() == {(0, 0, (2, 3)): 1, (0, 0, (3, 2)): -1}


def test_dual_embed_rejects_bad_slots():
    with pytest.raises(InputError):
        dual_embed([((Dual(3),), 1)], 2)
    with pytest.raises(InputError):
        dual_embed([((Dual(1),), 1), ((1,), 1)], 2)


@given(st.integers(2, 4).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r))))
def test_dual_slot_weight_audit(data):
    r, i = data
    w = dual_embed([((Dual(i),), 1)], r)
    expected = tuple(-1 if k == i else 0 for k in range(1, r + 1))
    assert {c.coords for c in state_set(w)} == {expected}


def test_orthogonal_type_and_states():
    t, w = orthogonal_example(2, "standard")
    assert t == DecType.single(2, 2, 1, 2)
    assert {c.coords for c in state_set(w)} == {(0, -2), (-2, 0)}
    assert mu((1, -1), w) == 2
    t, _ = orthogonal_example(4, "hyperbolic")
    assert t == DecType.single(4, 6, 1, 2)
    with pytest.raises(InputError):
        orthogonal_example(1)
    with pytest.raises(InputError):
        orthogonal_example(2, "polar")


@pytest.mark.parametrize("r", [2, 3])
def test_orthogonal_hyperbolic_polystable(r):
    _, w = orthogonal_example(r, "hyperbolic")
    assert not torus_instability(w).unstable
    assert torus_polystable(w)


@given(st.integers(2, 4).flatmap(lambda r: cocharacters(r, box=4, sum_zero=True)))
def test_standard_form_positive_on_diagonal(lam):
    _, w = orthogonal_example(len(lam), "standard")
    if any(lam):
        assert mu(lam, w) > 0


@given(st.integers(2, 4).flatmap(lambda r: cocharacters((r + 1) // 2, box=4)).flatmap(lambda h: st.tuples(st.just(h), st.booleans())))
def test_hyperbolic_fixed_by_stabilising_torus(data):
    half, odd = data
    lam = half + ((0,) if odd else ()) + tuple(-x for x in reversed(half))
    if len(lam) < 2:
        return
    _, w = orthogonal_example(len(lam), "hyperbolic")
    assert set(laurent_orbit(lam, w).pieces) == {0}


def test_adjoint_example():
    t, w = adjoint_example()
    assert t == DecType.single(3, 5, 1, 2)
    assert len(w.terms) == 24
    assert len(SL2_BRACKET) == 6
    assert not torus_instability(w).unstable
    assert torus_polystable(w)
    assert mu(COROOT, w) == 0


def test_adjoint_orbit_spot_check():
    _, w = adjoint_example()
    g = random_unimodular(3, random.Random(7))
    moved = act(g, w)
    assert not kempf_search(moved, 3, seed=1).unstable


@given(st.integers(2, 3).flatmap(lambda r: st.lists(st.tuples(st.integers(1, r), st.integers(1, r)), min_size=1, max_size=4).map(lambda x: (r, x))))
def test_brute_optima_share_a_flag(data):
    r, pairs = data
    w = SparseTensor.basis(DecType.single(r, 2), *pairs)
    res = brute_force_instability(w, 4)
    if res is None:
        return
    assert len({coordinate_flag(lam) for lam in res.optima}) == 1
