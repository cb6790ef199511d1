"""Weighted-projective homogenisation of inhomogeneous decorations.

Components with ``v_i = a_i - r c_i`` are grouped by value ``v_1 < ... < v_m``;
``phi_hat`` collects all degree-``omega`` products, one for each tuple
``d`` with ``sum_j v_j d_j = omega`` and each multiset of ``d_j`` slots
from group ``j``.  Products are padded with copies of the determinant
tensor up to the common length ``A``.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from ._exact import lcm
from .errors import CertificateError, InputError
from .lattice import WeightedFlag
from .tensor import DecType, SparseTensor, mu_filtration_components, mu_filtration_tensor

DEFAULT_CAP = 20000


@dataclass(frozen=True)
class HomogenizationPlan:
    r: int
    v_values: tuple[int, ...]
    omega: int
    tuples: tuple[tuple[int, ...], ...]
    target_type: tuple[int, int, int]
    source: DecType

    @property
    def k(self) -> int:
        base = 1
        for v in self.v_values:
            base = lcm(base, v)
        return self.omega // base

    def group_of(self, comp: int) -> int:
        return self.v_values.index(self.source.v(comp))


def _tuples(v_values, omega):
    out = []
    for d in itertools.product(*(range(omega // v + 1) for v in v_values)):
        if sum(a * b for a, b in zip(v_values, d)) == omega:
            out.append(d)
    return tuple(sorted(out, reverse=True))


def _slots(t: DecType, v_values):
    """Per group: list of ``(component, copy)`` slots."""
    groups = [[] for _ in v_values]
    for i, (a, b, c) in enumerate(t.components):
        j = v_values.index(t.v(i))
        groups[j].extend((i, copy) for copy in range(b))
    return groups


def choose_omega(t: DecType, k: int = 1) -> HomogenizationPlan:
    t.require_positive()
    if k < 1:
        raise InputError("k must be a positive integer")
    v_values = tuple(sorted(set(t.v_values)))
    omega = 1
    for v in v_values:
        omega = lcm(omega, v)
    omega *= k
    tuples = _tuples(v_values, omega)
    slots = _slots(t, v_values)
    max_a = [max((t.components[i][0] for i, _ in g), default=0) for g in slots]
    big_a = max(sum(d * a for d, a in zip(tup, max_a)) for tup in tuples)
    big_c = (big_a - omega) // t.r
    big_b = sum(_prod(comb(len(g) + d - 1, d) for g, d in zip(slots, tup)) for tup in tuples)
    return HomogenizationPlan(t.r, v_values, omega, tuples, (big_a, big_b, big_c), t)


def _prod(xs):
    out = 1
    for x in xs:
        out *= x
    return out


def _check_plan(w: SparseTensor, plan: HomogenizationPlan):
    if w.dec_type != plan.source:
        raise InputError("tensor type does not match the homogenisation plan")


def group_weights(flag: WeightedFlag, w: SparseTensor, plan: HomogenizationPlan) -> dict[int, Fraction]:
    """Largest component filtration weight per v-group, for groups with a nonzero component."""
    _check_plan(w, plan)
    out: dict[int, Fraction] = {}
    for comp, val in mu_filtration_components(flag, w).items():
        j = plan.group_of(comp)
        if j not in out or val > out[j]:
            out[j] = val
    return out


def nu_closed_form(flag: WeightedFlag, w: SparseTensor, plan: HomogenizationPlan) -> Fraction:
    gw = group_weights(flag, w, plan)
    best = None
    for tup in plan.tuples:
        if any(d and j not in gw for j, d in enumerate(tup)):
            continue  # product vanishes
        val = sum((d * gw[j] for j, d in enumerate(tup) if d), Fraction(0))
        if best is None or val > best:
            best = val
    return best / plan.omega


def _det_terms(r: int):
    """Terms of ``b_1 ^ ... ^ b_r`` expanded; each pairs to zero with a sum-zero gamma."""
    for perm in itertools.permutations(range(1, r + 1)):
        inv = sum(1 for i in range(r) for j in range(i + 1, r) if perm[i] > perm[j])
        yield perm, (-1) ** inv


def explicit_size(w: SparseTensor, plan: HomogenizationPlan) -> int:
    """Term count of the explicit ``phi_hat`` (before any cancellation)."""
    _check_plan(w, plan)
    slots = _slots(plan.source, plan.v_values)
    counts = [[len(w.component_terms(i, c)) for i, c in g] for g in slots]
    big_a = plan.target_type[0]
    total = 0
    for tup in plan.tuples:
        for choice in _choices(slots, tup):
            size = 1
            length = 0
            for j, picks in enumerate(choice):
                for p in picks:
                    size *= counts[j][slots[j].index(p)]
                    length += plan.source.components[p[0]][0]
            total += size * factorial(plan.r) ** ((big_a - length) // plan.r)
    return total


def _choices(slots, tup):
    per_group = [list(itertools.combinations_with_replacement(g, d)) for g, d in zip(slots, tup)]
    return itertools.product(*per_group)


def homogenized_tensor(w: SparseTensor, plan: HomogenizationPlan, cap: int = DEFAULT_CAP) -> SparseTensor | None:
    """Explicit ``phi_hat`` as a single-component tensor, or None above ``cap`` terms.

    The representation-side type has ``A - r C = omega``.
    """
    if explicit_size(w, plan) > cap:
        return None
    return _build(w, plan)


@lru_cache(maxsize=64)
def _build(w: SparseTensor, plan: HomogenizationPlan) -> SparseTensor:
    r = plan.r
    big_a, big_b, big_c = plan.target_type
    slots = _slots(plan.source, plan.v_values)
    det_terms = list(_det_terms(r))
    out = []
    copy = 0
    for tup in plan.tuples:
        for choice in _choices(slots, tup):
            partial = [((), Fraction(1))]
            length = 0
            for picks in choice:
                for comp, cp in picks:
                    sub = [(k[2], c) for k, c in w.component_terms(comp, cp)]
                    partial = [(mi + m2, c * c2) for mi, c in partial for m2, c2 in sub]
                    length += plan.source.components[comp][0]
            for _ in range((big_a - length) // r):
                partial = [(mi + m2, c * s) for mi, c in partial for m2, s in det_terms]
            out.extend(((0, copy, mi), c) for mi, c in partial)
            copy += 1
    t = DecType.single(r, big_a, big_b, big_c)
    return SparseTensor.from_terms(t, out)


def nu_filtration(flag: WeightedFlag, w: SparseTensor, plan: HomogenizationPlan, cap: int = DEFAULT_CAP) -> Fraction:
    """``(1/omega) * mu(flag; phi_hat)``.

    Closed form always; cross-checked against the explicit ``phi_hat``
    whenever it has at most ``cap`` terms.
    """
    closed = nu_closed_form(flag, w, plan)
    hat = homogenized_tensor(w, plan, cap)
    if hat is not None:
        explicit = mu_filtration_tensor(flag, hat) / plan.omega
        if explicit != closed:
            raise CertificateError(f"nu mismatch: closed form {closed}, explicit {explicit}")
    return closed


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_equiv_check(flag: WeightedFlag, w: SparseTensor, plan: HomogenizationPlan, cap: int = DEFAULT_CAP):
    """Signs of ``mu(flag; phi)`` and ``nu(flag; phi)``, and whether they agree."""
    m = mu_filtration_tensor(flag, w)
    n = nu_filtration(flag, w, plan, cap)
    return _sign(m), _sign(n), _sign(m) == _sign(n)


def saturation_bound_check(w: SparseTensor, plan: HomogenizationPlan):
    """Largest ``mu`` of ``phi_hat`` over one-step flags against ``A (r - 1)``."""
    r = plan.r
    bound = Fraction(plan.target_type[0] * (r - 1))
    values = [
        nu_closed_form(WeightedFlag((k,), (1,), r), w, plan) * plan.omega for k in range(1, r)
    ]
    max_mu = max(values) if values else Fraction(0)
    return max_mu, bound, max_mu <= bound
