"""Points of ``V_{a,b,c} = (+)_i (V^{(x) a_i})^{(+) b_i} (x) (Lambda^r V)^{(x) -c_i}`` as sparse tensors.

A term is keyed by ``(component, copy, multiindex)``: ``component`` and
``copy`` are 0-based, multiindex entries are basis labels ``1..r``.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from ._exact import det, frac
from .errors import CertificateError, InputError, ZeroTensorError
from .lattice import (
    Character,
    OnePS,
    WeightedFlag,
    block_of,
    dual_weighted_flag,
    expand_blocks,
    gamma_vector,
    pairing,
)

__all__ = [
    "DecType",
    "SparseTensor",
    "weight_of_term",
    "state_set",
    "mu",
    "act",
    "gamma_vector",
    "gamma_cocharacter",
    "mu_filtration_tensor",
    "mu_filtration_components",
]

Key = tuple[int, int, tuple[int, ...]]


@dataclass(frozen=True)
class DecType:
    r: int
    components: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        comps = tuple(tuple(int(x) for x in c) for c in self.components)
        object.__setattr__(self, "components", comps)
        if self.r < 1:
            raise InputError("r must be positive")
        for c in comps:
            if len(c) != 3 or min(c) < 0:
                raise InputError(f"component must be a triple of non-negative integers: {c}")

    @classmethod
    def single(cls, r: int, a: int, b: int = 1, c: int = 0) -> "DecType":
        return cls(r, ((a, b, c),))

    def v(self, i: int) -> int:
        a, _, c = self.components[i]
        return a - self.r * c

    @property
    def v_values(self) -> tuple[int, ...]:
        return tuple(self.v(i) for i in range(len(self.components)))

    @property
    def homogeneous(self) -> bool:
        return len(set(self.v_values)) <= 1

    def require_positive(self):
        bad = [i for i, v in enumerate(self.v_values) if v <= 0]
        if bad:
            raise InputError(f"components {bad} violate a_i - r*c_i > 0")


@dataclass(frozen=True)
class SparseTensor:
    dec_type: DecType
    terms: tuple[tuple[Key, Fraction], ...]

    @classmethod
    def from_terms(cls, dec_type: DecType, terms: Iterable[tuple[Key, object]] | Mapping) -> "SparseTensor":
        """Build a tensor, merging repeated keys and dropping zero coefficients."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, Fraction] = defaultdict(Fraction)
        for (comp, copy, mi), coeff in items:
            key = (int(comp), int(copy), tuple(int(k) for k in mi))
            _check_key(key, dec_type)
            acc[key] += frac(coeff)
        return cls(dec_type, tuple(sorted((k, c) for k, c in acc.items() if c != 0)))

    @classmethod
    def basis(cls, dec_type: DecType, *multiindices, component: int = 0) -> "SparseTensor":
        """Sum of basis tensors ``b_{i1} (x) ... (x) b_{ia}`` with coefficient 1."""
        return cls.from_terms(dec_type, [((component, 0, mi), 1) for mi in multiindices])

    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self.terms)

    def __add__(self, other: "SparseTensor") -> "SparseTensor":
        if other.dec_type != self.dec_type:
            raise InputError("cannot add tensors of different types")
        return SparseTensor.from_terms(self.dec_type, list(self.terms) + list(other.terms))

    def scale(self, x) -> "SparseTensor":
        return SparseTensor.from_terms(self.dec_type, [(k, c * frac(x)) for k, c in self.terms])

    def component_terms(self, comp: int, copy: int | None = None):
        return [(k, c) for k, c in self.terms if k[0] == comp and (copy is None or k[1] == copy)]


def _check_key(key: Key, t: DecType):
    comp, copy, mi = key
    if not 0 <= comp < len(t.components):
        raise InputError(f"component index {comp} out of range")
    a, b, _ = t.components[comp]
    if not 0 <= copy < b:
        raise InputError(f"copy index {copy} out of range for b={b}")
    if len(mi) != a:
        raise InputError(f"multiindex {mi} must have length a={a}")
    if any(not 1 <= k <= t.r for k in mi):
        raise InputError(f"multiindex {mi} has entries outside 1..{t.r}")


def _nonzero(w: SparseTensor):
    if w.is_zero():
        raise ZeroTensorError("the zero tensor has no weights")


def weight_of_term(key: Key, dec_type: DecType) -> Character:
    comp, _, mi = key
    c = dec_type.components[comp][2]
    coords = [-c] * dec_type.r
    for k in mi:
        coords[k - 1] += 1
    return Character(coords)


def state_set(w: SparseTensor) -> frozenset[Character]:
    _nonzero(w)
    return frozenset(weight_of_term(k, w.dec_type) for k, _ in w.terms)


def mu(lam: OnePS | Sequence[int], w: SparseTensor) -> int:
    """Hilbert-Mumford weight: the largest pairing of ``lam`` with a weight of ``w``.

    ``w`` is unstable for the torus iff some ``lam`` has ``mu < 0``.
    """
    return max(pairing(lam, chi) for chi in state_set(w))


def act(g: Sequence[Sequence], w: SparseTensor) -> SparseTensor:
    """Apply ``g`` as ``g^{(x) a_i} * det(g)^{-c_i}`` on each component.

    ``g`` acts on basis vectors by columns: ``g b_k = sum_i g[i][k] b_i``.
    """
    r = w.dec_type.r
    g = [[frac(x) for x in row] for row in g]
    if len(g) != r or any(len(row) != r for row in g):
        raise InputError(f"group element must be {r}x{r}")
    d = det(g)
    if d == 0:
        raise InputError("group element is singular")
    columns = [[(i + 1, g[i][k]) for i in range(r) if g[i][k] != 0] for k in range(r)]
    out: dict[Key, Fraction] = defaultdict(Fraction)
    for (comp, copy, mi), coeff in w.terms:
        c = w.dec_type.components[comp][2]
        partial: dict[tuple[int, ...], Fraction] = {(): coeff / d**c}
        for k in mi:
            nxt: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
            for prefix, val in partial.items():
                for i, gik in columns[k - 1]:
                    nxt[prefix + (i,)] += val * gik
            partial = nxt
        for mi2, val in partial.items():
            out[(comp, copy, mi2)] += val
    return SparseTensor.from_terms(w.dec_type, out)


def gamma_cocharacter(flag: WeightedFlag) -> tuple[Fraction, ...]:
    """Rational cocharacter with block weights ``gamma`` in the adapted frame."""
    if flag.length == 0:
        return (Fraction(0),) * flag.n
    return expand_blocks(gamma_vector(flag.dims, flag.alphas, flag.n), flag.dims, flag.n)


@lru_cache(maxsize=256)
def _index_counts(w: SparseTensor) -> dict[int, frozenset[tuple[int, ...]]]:
    """Per component, the distinct vectors counting how often each basis label occurs in a term."""
    r = w.dec_type.r
    out: dict[int, set] = defaultdict(set)
    for (comp, _, mi), _ in w.terms:
        counts = [0] * r
        for k in mi:
            counts[k - 1] += 1
        out[comp].add(tuple(counts))
    return {comp: frozenset(v) for comp, v in out.items()}


def _filtration_side_components(flag: WeightedFlag, w: SparseTensor) -> dict[int, Fraction]:
    """``-min`` over nonzero terms of summed gamma weights, on the dual flag.

    ``w`` lives on the dual of the filtered object, so basis label ``k``
    sits at position ``r + 1 - k`` of the dual adapted frame.
    """
    r = w.dec_type.r
    dual = dual_weighted_flag(flag)
    gam = gamma_vector(dual.dims, dual.alphas, r) if dual.length else (Fraction(0),)
    slot = [gam[block_of(r + 1 - k, dual.dims)] for k in range(1, r + 1)]
    out = {}
    for comp, states in _index_counts(w).items():
        out[comp] = -min(sum((n * g for n, g in zip(counts, slot) if n), Fraction(0)) for counts in states)
    return out


def _pairing_side_components(flag: WeightedFlag, w: SparseTensor) -> dict[int, Fraction]:
    lam = gamma_cocharacter(flag)
    weights: dict[int, set[Character]] = defaultdict(set)
    for key, _ in w.terms:
        weights[key[0]].add(weight_of_term(key, w.dec_type))
    return {comp: max(Fraction(pairing(lam, chi)) for chi in chis) for comp, chis in weights.items()}


def mu_filtration_components(flag: WeightedFlag, w: SparseTensor) -> dict[int, Fraction]:
    """Per-component filtration weights for every nonzero component of ``w``.

    The flag must be adapted to ``w``'s basis.  Two independent routes
    are computed and compared; a mismatch raises ``CertificateError``.
    """
    _nonzero(w)
    if flag.n != w.dec_type.r:
        raise InputError(f"flag on K^{flag.n} does not match r={w.dec_type.r}")
    a = _filtration_side_components(flag, w)
    b = _pairing_side_components(flag, w)
    if a != b:
        raise CertificateError(f"filtration weight mismatch: {a} vs {b}")
    return a


def mu_filtration_tensor(flag: WeightedFlag, w: SparseTensor) -> Fraction:
    return max(mu_filtration_components(flag, w).values())
