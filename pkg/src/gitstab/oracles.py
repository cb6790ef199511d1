"""Brute-force cross-checks and the two motivating example embeddings.

Nothing here calls the fast paths it is meant to check: the Laurent orbit
scales slot by slot instead of pairing against weights, and the brute-force
search enumerates cocharacters instead of solving a nearest-point problem.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .errors import InputError, ZeroTensorError
from .lattice import OnePS, SL
from .tensor import DecType, SparseTensor


@dataclass(frozen=True)
class LaurentTensor:
    """z-graded pieces of ``lam(z) . w``, keyed by exponent."""

    pieces: dict[int, SparseTensor]

    @property
    def top(self) -> int:
        return max(self.pieces)

    @property
    def limit_exists(self) -> bool:
        """Whether ``lim_{z -> oo} lam(z) . w`` exists."""
        return self.top <= 0

    def limit(self) -> SparseTensor | None:
        if not self.limit_exists:
            return None
        return self.pieces.get(0, SparseTensor(next(iter(self.pieces.values())).dec_type, ()))


def laurent_orbit(lam: OnePS | Sequence[int], w: SparseTensor) -> LaurentTensor:
    weights = lam.weights if isinstance(lam, OnePS) else tuple(int(x) for x in lam)
    t = w.dec_type
    if len(weights) != t.r:
        raise InputError("cocharacter length does not match r")
    if w.is_zero():
        raise ZeroTensorError("laurent_orbit of the zero tensor")
    det_exp = sum(weights)
    grouped: dict[int, list] = defaultdict(list)
    for key, coeff in w.terms:
        comp, _, mi = key
        exponent = 0
        for k in mi:  # lam(z) b_k = z^{lam_k} b_k
            exponent += weights[k - 1]
        exponent -= t.components[comp][2] * det_exp  # det(lam(z))^{-c}
        grouped[exponent].append((key, coeff))
    return LaurentTensor({e: SparseTensor.from_terms(t, terms) for e, terms in sorted(grouped.items())})


class BruteForceResult(NamedTuple):
    lam: tuple[int, ...]
    q: int
    norm_sq: int
    optima: tuple[tuple[int, ...], ...]


def _weights(w: SparseTensor) -> list[list[int]]:
    t = w.dec_type
    out = set()
    for (comp, _, mi), _ in w.terms:
        v = [-t.components[comp][2]] * t.r
        for k in mi:
            v[k - 1] += 1
        out.add(tuple(v))
    return [list(v) for v in out]


def _nu_cmp(q1: int, n1: int, q2: int, n2: int) -> int:
    """Compare negative ``q1/sqrt(n1)`` with ``q2/sqrt(n2)`` without radicals."""
    a, b = q1 * q1 * n2, q2 * q2 * n1
    return (a < b) - (a > b)


def brute_force_instability(w: SparseTensor, box: int) -> BruteForceResult | None:
    """Most destabilising nonzero sum-zero cocharacter with entries in ``[-box, box]``."""
    if w.is_zero():
        raise ZeroTensorError("brute force on the zero tensor")
    r = w.dec_type.r
    weights = _weights(w)
    best = None
    optima: list[tuple[int, ...]] = []
    for head in itertools.product(range(-box, box + 1), repeat=r - 1):
        last = -sum(head)
        if abs(last) > box:
            continue
        lam = head + (last,)
        n = sum(x * x for x in lam)
        if n == 0:
            continue
        q = max(sum(a * b for a, b in zip(lam, chi)) for chi in weights)
        if q >= 0:
            continue
        if best is None:
            best, optima = (lam, q, n), [lam]
            continue
        c = _nu_cmp(q, n, best[1], best[2])
        if c < 0:
            best, optima = (lam, q, n), [lam]
        elif c == 0:
            optima.append(lam)
    if best is None:
        return None
    return BruteForceResult(best[0], best[1], best[2], tuple(optima))


class Dual(NamedTuple):
    """A dual basis vector ``b_k^dual`` in a slot."""

    index: int


def _dual_expansion(k: int, r: int) -> list[tuple[tuple[int, ...], int]]:
    """``b_k^dual -> (-1)^{k-1} b_1 ^ .. ^ b_k-hat ^ .. ^ b_r``, wedge fully expanded (times det^-1)."""
    rest = [i for i in range(1, r + 1) if i != k]
    sign0 = -1 if (k - 1) % 2 else 1
    out = []
    for perm in itertools.permutations(range(len(rest))):
        inversions = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
        out.append((tuple(rest[p] for p in perm), sign0 * (-1) ** inversions))
    return out


def dual_embed(terms: Iterable[tuple[Sequence, object]], r: int) -> SparseTensor:
    """Rewrite tensors with dual slots inside ``V^{(x) a} (x) det^{-c}``.

    Each term is ``(slots, coeff)`` with slots either ints (vectors) or
    ``Dual(k)``.  Every term must have the same numbers of vector and dual
    slots; the result has type ``(vectors + (r-1)*duals, 1, duals)``.
    """
    terms = list(terms)
    if not terms:
        raise InputError("dual_embed needs at least one term")
    shape = None
    acc: dict[tuple[int, ...], Fraction] = defaultdict(Fraction)
    for slots, coeff in terms:
        n_dual = sum(isinstance(s, Dual) for s in slots)
        n_vec = len(slots) - n_dual
        if shape is None:
            shape = (n_vec, n_dual)
        elif shape != (n_vec, n_dual):
            raise InputError("all terms need the same slot pattern counts")
        partial = {(): Fraction(coeff)}
        for s in slots:
            k = s.index if isinstance(s, Dual) else int(s)
            if not 1 <= k <= r:
                raise InputError(f"slot index {k} outside 1..{r}")
            options = _dual_expansion(k, r) if isinstance(s, Dual) else [((k,), 1)]
            partial = {pre + mi: val * sign for pre, val in partial.items() for mi, sign in options}
        for mi, val in partial.items():
            acc[mi] += val
    n_vec, n_dual = shape
    t = DecType.single(r, n_vec + (r - 1) * n_dual, 1, n_dual)
    return SparseTensor.from_terms(t, [((0, 0, mi), c) for mi, c in acc.items()])


def orthogonal_example(r: int, basis: str = "standard"):
    """The invariant symmetric form of SO(r) as a point of ``V_{2(r-1), 1, 2}``."""
    if r < 2:
        raise InputError("orthogonal example needs r >= 2")
    if basis == "standard":
        terms = [((Dual(i), Dual(i)), 1) for i in range(1, r + 1)]
    elif basis == "hyperbolic":
        terms = [((Dual(i), Dual(r + 1 - i)), 1) for i in range(1, r + 1)]
    else:
        raise InputError(f"unknown basis {basis!r}")
    w = dual_embed(terms, r)
    return w.dec_type, w


# sl_2 in the basis (e, h, f) = (1, 2, 3)
SL2_BRACKET = {
    (2, 1): {1: 2},
    (1, 2): {1: -2},
    (2, 3): {3: -2},
    (3, 2): {3: 2},
    (1, 3): {2: 1},
    (3, 1): {2: -1},
}


def adjoint_example():
    """Lie bracket of sl_2 in ``Hom(g (x) g, g) = g^dual (x) g^dual (x) g``, dual slots expanded."""
    terms = [
        ((Dual(i), Dual(j), k), c)
        for (i, j), out in sorted(SL2_BRACKET.items())
        for k, c in sorted(out.items())
    ]
    w = dual_embed(terms, 3)
    return w.dec_type, w


COROOT = OnePS((1, 0, -1), SL)
