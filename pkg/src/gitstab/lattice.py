"""Characters and one-parameter subgroups of the diagonal torus of GL_n.

Cocharacters are integer weight vectors ``lam`` with ``lam(z) = diag(z**lam_1, ..., z**lam_n)``;
characters are integer vectors in the basis ``e_1, ..., e_n``.  Flags are
carried as dimension vectors; subspaces are never materialised.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from ._exact import frac, primitive
from .errors import InputError

GL = "GL"
SL = "SL"


@dataclass(frozen=True)
class Character:
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(int(c) for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class OnePS:
    weights: tuple[int, ...]
    group_mode: str = GL

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if self.group_mode not in (GL, SL):
            raise InputError(f"unknown group mode {self.group_mode!r}")
        if self.group_mode == SL and sum(self.weights) != 0:
            raise InputError(f"SL cocharacter must have weight sum 0, got {self.weights}")

    @property
    def n(self) -> int:
        return len(self.weights)

    def is_trivial(self) -> bool:
        return len(set(self.weights)) <= 1


@dataclass(frozen=True)
class WeightedFlag:
    """Flag ``0 < V_1 < ... < V_s < K^n`` by dimensions, with weights ``alphas``.

    ``gammas`` optionally caches ascending block weights; when present,
    consecutive gaps equal ``alpha_i * n``.
    """

    dims: tuple[int, ...]
    alphas: tuple[Fraction, ...]
    n: int
    gammas: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        alphas = tuple(frac(a) for a in self.alphas)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "alphas", alphas)
        if len(dims) != len(alphas):
            raise InputError("flag needs one alpha per step")
        if any(not 0 < d < self.n for d in dims) or any(a >= b for a, b in zip(dims, dims[1:])):
            raise InputError(f"flag dims must satisfy 0 < d_1 < ... < d_s < {self.n}: {dims}")
        if any(a <= 0 for a in alphas):
            raise InputError("flag weights must be positive")
        if self.gammas is not None:
            g = tuple(frac(x) for x in self.gammas)
            object.__setattr__(self, "gammas", g)
            if len(g) != len(dims) + 1 or any(g[i + 1] - g[i] != alphas[i] * self.n for i in range(len(dims))):
                raise InputError("cached gammas inconsistent with alphas")

    @property
    def length(self) -> int:
        return len(self.dims)

    def block_sizes(self) -> tuple[int, ...]:
        edges = (0,) + self.dims + (self.n,)
        return tuple(b - a for a, b in zip(edges, edges[1:]))

    def scaled(self, factor) -> "WeightedFlag":
        factor = frac(factor)
        return WeightedFlag(self.dims, tuple(a * factor for a in self.alphas), self.n)

    def same_flag(self, other: "WeightedFlag") -> bool:
        return (self.n, self.dims, self.alphas) == (other.n, other.dims, other.alphas)


VectorLike = Union[OnePS, Character, Sequence[int]]


def _vec(x: VectorLike) -> tuple:
    if isinstance(x, OnePS):
        return x.weights
    if isinstance(x, Character):
        return x.coords
    return tuple(x)


def pairing(lam: VectorLike, chi: VectorLike):
    """Canonical pairing of a cocharacter with a character."""
    a, b = _vec(lam), _vec(chi)
    if len(a) != len(b):
        raise InputError(f"pairing of vectors of lengths {len(a)} and {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def norm_sq(lam: VectorLike):
    return sum(x * x for x in _vec(lam))


def adapting_permutation(lam: VectorLike) -> tuple[int, ...]:
    """0-based indices sorted by ascending weight (stable).

    Position ``i`` of the adapted basis holds original basis vector
    ``perm[i]``, so ``V_j`` is spanned by the first ``d_j`` adapted vectors.
    """
    w = _vec(lam)
    return tuple(sorted(range(len(w)), key=lambda i: (w[i], i)))


def permutation_matrix(perm: Sequence[int]) -> list[list[int]]:
    """Matrix ``P`` with ``P b_{perm[i]} = b_i`` (moves into the adapted frame)."""
    n = len(perm)
    m = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        m[i][p] = 1
    return m


def weighted_flag_of(lam: VectorLike) -> WeightedFlag:
    w = _vec(lam)
    n = len(w)
    distinct = sorted(set(w))
    dims = []
    count = 0
    for g in distinct[:-1]:
        count += sum(1 for x in w if x == g)
        dims.append(count)
    alphas = tuple(Fraction(b - a, n) for a, b in zip(distinct, distinct[1:]))
    return WeightedFlag(tuple(dims), alphas, n, tuple(Fraction(g) for g in distinct))


def gamma_vector(ranks: Sequence[int], alphas: Sequence, r: int) -> tuple[Fraction, ...]:
    """Block weights ``(gamma_1, ..., gamma_{s+1})`` of a weighted filtration.

    Block ``j`` collects positions ``rk_{j-1} < k <= rk_j``; the full
    length-``r`` expansion sums to zero.
    """
    ranks = [int(x) for x in ranks]
    alphas = [frac(a) for a in alphas]
    if len(ranks) != len(alphas):
        raise InputError("one alpha per filtration step required")
    if any(not 0 < k < r for k in ranks) or any(a >= b for a, b in zip(ranks, ranks[1:])):
        raise InputError(f"ranks must satisfy 0 < rk_1 < ... < rk_s < {r}: {ranks}")
    if any(a <= 0 for a in alphas):
        raise InputError("alphas must be positive")
    out = []
    for j in range(len(ranks) + 1):
        # a representative position inside block j (1-based)
        pos = ranks[j - 1] + 1 if j else 1
        out.append(sum((a * (rk - r) if pos <= rk else a * rk for rk, a in zip(ranks, alphas)), Fraction(0)))
    return tuple(out)


def expand_blocks(values: Sequence, dims: Sequence[int], n: int) -> tuple:
    sizes = [b - a for a, b in zip((0,) + tuple(dims), tuple(dims) + (n,))]
    return tuple(v for v, size in zip(values, sizes) for _ in range(size))


def block_of(index: int, dims: Sequence[int]) -> int:
    """0-based block of the 1-based basis index ``index``."""
    return bisect_left(dims, index)


def ops_from_flag(flag: WeightedFlag) -> OnePS:
    """Primitive integral sum-zero cocharacter whose weighted flag is ``flag`` up to scaling."""
    if flag.length == 0:
        return OnePS((0,) * flag.n, SL)
    gam = gamma_vector(flag.dims, flag.alphas, flag.n)
    return OnePS(primitive(expand_blocks(gam, flag.dims, flag.n)), SL)


def dual_flag(flag_dims: Sequence[int], degrees: Sequence, n: int):
    """Dimensions and degrees of the dual filtration ``A''_i = ker(A -> A'_{s+1-i}^dual)``.

    Degrees are carried over under a trivial determinant.
    """
    dims = [int(d) for d in flag_dims]
    degs = [frac(d) for d in degrees]
    if len(dims) != len(degs):
        raise InputError("one degree per flag step required")
    s = len(dims)
    return tuple(n - dims[s - 1 - i] for i in range(s)), tuple(degs[s - 1 - i] for i in range(s))


def dual_weighted_flag(flag: WeightedFlag) -> WeightedFlag:
    """The weighted flag on the dual space: complementary dims, reversed weights."""
    dims, _ = dual_flag(flag.dims, [0] * flag.length, flag.n)
    return WeightedFlag(dims, tuple(reversed(flag.alphas)), flag.n)
