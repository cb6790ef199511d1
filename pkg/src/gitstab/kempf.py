"""Optimal destabilising cocharacters inside the diagonal torus.

Minimising ``mu(lam, w) / |lam|`` over sum-zero ``lam`` is dual to finding
the point ``p`` of the convex hull of the projected weights closest to the
origin; the optimum is the ray of ``-p``.  The nearest point is found with
Wolfe's active-set algorithm over the rationals, so it is exact and
terminates.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from ._exact import dot, feasible_nonneg, frac, identity, matmul, primitive, solve
from .errors import CertificateError, InputError
from .lattice import OnePS, SL, WeightedFlag, adapting_permutation, norm_sq, weighted_flag_of
from .tensor import SparseTensor, act, mu, state_set

SEMISTABLE = "torus_semistable"
UNSTABLE = "unstable"

Point = tuple[Fraction, ...]


@dataclass(frozen=True)
class StateCloud:
    points: tuple[Point, ...]

    @classmethod
    def project(cls, vectors) -> "StateCloud":
        """Orthogonal projection onto the sum-zero hyperplane, deduplicated and sorted."""
        out = set()
        for v in vectors:
            v = [Fraction(x) for x in v]
            mean = sum(v, Fraction(0)) / len(v)
            out.add(tuple(x - mean for x in v))
        return cls(tuple(sorted(out)))

    @classmethod
    def of(cls, w: SparseTensor) -> "StateCloud":
        return cls.project(chi.coords for chi in state_set(w))


@dataclass(frozen=True)
class InstabilityResult:
    verdict: str
    lambda_star: OnePS | None = None
    q: int | None = None
    m0_sq: Fraction | None = None
    m0_sign: int = 0
    flag: WeightedFlag | None = None
    char_exponents: tuple[tuple[int, int], ...] = ()
    nearest_point: Point = ()
    frame: tuple[tuple[Fraction, ...], ...] | None = None
    restart: int = 0
    heuristic: bool = False

    @property
    def unstable(self) -> bool:
        return self.verdict == UNSTABLE


def check_certificate(p: Sequence, points: Sequence[Sequence]) -> bool:
    """First-order optimality: ``<p, x - p> >= 0`` for every input point."""
    pp = dot(p, p)
    return all(dot(p, x) - pp >= 0 for x in points)


def _affine_minimizer(pts: list[Point]) -> list[Fraction]:
    """Barycentric weights of the min-norm point of the affine hull of ``pts``."""
    k = len(pts)
    a = [[dot(pts[i], pts[j]) for j in range(k)] + [Fraction(1)] for i in range(k)]
    a.append([Fraction(1)] * k + [Fraction(0)])
    sol = solve(a, [Fraction(0)] * k + [Fraction(1)])
    if sol is None:
        raise CertificateError("corral lost affine independence")
    return sol[:k]


def _combine(weights, pts) -> Point:
    n = len(pts[0])
    return tuple(sum((w * p[i] for w, p in zip(weights, pts)), Fraction(0)) for i in range(n))


def min_norm_point(points: StateCloud | Sequence[Sequence]) -> Point:
    """Exact nearest point to the origin of the convex hull of ``points``.

    Ties in pivoting go to the lowest point index.  The optimality
    certificate is checked before returning.
    """
    pts = list(points.points if isinstance(points, StateCloud) else points)
    if not pts:
        raise InputError("min_norm_point of an empty point set")
    pts = [tuple(Fraction(x) for x in p) for p in pts]
    norms = [dot(p, p) for p in pts]
    start = min(range(len(pts)), key=lambda i: (norms[i], i))
    corral = [start]
    lam = [Fraction(1)]
    x = pts[start]
    while True:
        xx = dot(x, x)
        scores = [dot(x, p) for p in pts]
        j = min(range(len(pts)), key=lambda i: (scores[i], i))
        if scores[j] >= xx:
            break
        if j in corral:
            raise CertificateError("Wolfe step re-entered a corral point")
        corral.append(j)
        lam.append(Fraction(0))
        while True:
            sub = [pts[i] for i in corral]
            mu_ = _affine_minimizer(sub)
            if all(m > 0 for m in mu_):
                lam = mu_
                x = _combine(lam, sub)
                break
            theta = min(l / (l - m) for l, m in zip(lam, mu_) if m <= 0)
            lam = [theta * m + (1 - theta) * l for l, m in zip(lam, mu_)]
            keep = [i for i, l in enumerate(lam) if l > 0]
            corral = [corral[i] for i in keep]
            lam = [lam[i] for i in keep]
            x = _combine(lam, [pts[i] for i in corral])
    if not check_certificate(x, pts):
        raise CertificateError(f"min_norm_point certificate failed at {x}")
    return x


def _result_from_ray(w: SparseTensor, p: Point, **extra) -> InstabilityResult:
    if all(c == 0 for c in p):
        return InstabilityResult(SEMISTABLE, nearest_point=p, **extra)
    lam = OnePS(primitive(-c for c in p), SL)
    q = mu(lam, w)
    if q >= 0:
        raise CertificateError(f"nearest point {p} gives non-negative weight {q}")
    return InstabilityResult(
        UNSTABLE,
        lambda_star=lam,
        q=q,
        m0_sq=Fraction(q * q, norm_sq(lam)),
        m0_sign=-1,
        flag=weighted_flag_of(lam),
        char_exponents=instability_character(lam).blocks,
        nearest_point=p,
        **extra,
    )


def torus_instability(w: SparseTensor) -> InstabilityResult:
    """Exact optimum of ``mu(lam, w)/|lam|`` over sum-zero cocharacters of the diagonal torus."""
    cloud = StateCloud.of(w)
    return _result_from_ray(w, min_norm_point(cloud))


def torus_polystable(w: SparseTensor) -> bool:
    """Whether 0 lies in the relative interior of the projected weight hull."""
    pts = StateCloud.of(w).points
    cols = [list(col) for col in zip(*pts)]  # n rows, one column per point
    for p in pts:
        if all(c == 0 for c in p):
            continue
        # -p in cone(points) <=> some convex combination hitting 0 weights p positively
        if feasible_nonneg(cols, [-c for c in p]) is None:
            return False
    return True


def compare_nu(a: InstabilityResult, b: InstabilityResult) -> int:
    """-1 if ``a`` destabilises strictly more than ``b``, 0 if equal, 1 otherwise."""
    if not a.unstable or not b.unstable:
        return (not a.unstable) - (not b.unstable)
    lhs = a.q * a.q * norm_sq(b.lambda_star)
    rhs = b.q * b.q * norm_sq(a.lambda_star)
    return (lhs < rhs) - (lhs > rhs)


def random_unimodular(r: int, rng: random.Random) -> list[list[Fraction]]:
    """Product of rational transvections, so the determinant is exactly 1."""
    g = identity(r)
    if r < 2:
        return g
    for _ in range(2 * r):
        i, j = rng.sample(range(r), 2)
        t = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2, 3]))
        e = identity(r)
        e[i][j] = t
        g = matmul(e, g)
    return g


def kempf_search(w: SparseTensor, restarts: int = 0, seed: int = 0) -> InstabilityResult:
    """Best torus optimum over ``w`` and ``restarts`` seeded random frames.

    Heuristic: the global optimum over all maximal tori is not certified.
    Ties go to the lowest restart index; the flag is reported in the moved
    frame together with the frame matrix.
    """
    best = torus_instability(w)
    if restarts <= 0:
        return best
    rng = random.Random(seed)
    r = w.dec_type.r
    best = replace(best, frame=tuple(map(tuple, identity(r))), heuristic=True)
    for k in range(1, restarts + 1):
        g = random_unimodular(r, rng)
        moved = act(g, w)
        cand = _result_from_ray(
            moved, min_norm_point(StateCloud.of(moved)), frame=tuple(map(tuple, g)), restart=k, heuristic=True
        )
        if compare_nu(cand, best) < 0:
            best = cand
    return best


@dataclass(frozen=True)
class CharacterBlocks:
    """Exponents of ``l_T(lam) = prod det(m_j)^{gamma_j}`` over the Levi blocks, in flag order."""

    blocks: tuple[tuple[int, int], ...]
    perm: tuple[int, ...] = field(default=())

    def as_character(self) -> tuple[int, ...]:
        """Expand to a character in the original (unpermuted) coordinates."""
        flat = [e for size, e in self.blocks for _ in range(size)]
        out = [0] * len(flat)
        for pos, orig in enumerate(self.perm):
            out[orig] = flat[pos]
        return tuple(out)


def instability_character(lam: OnePS | Sequence[int]) -> CharacterBlocks:
    weights = lam.weights if isinstance(lam, OnePS) else tuple(lam)
    if sum(weights) != 0:
        raise InputError("instability character needs a sum-zero cocharacter")
    perm = adapting_permutation(weights)
    blocks: list[list[int]] = []
    for i in perm:
        if blocks and blocks[-1][1] == weights[i]:
            blocks[-1][0] += 1
        else:
            blocks.append([1, weights[i]])
    return CharacterBlocks(tuple((s, e) for s, e in blocks), perm)


def chi_star(lam: OnePS | Sequence[int], w: SparseTensor) -> tuple[int, tuple[int, ...]]:
    """``q = mu(lam, w)`` and the block exponents of ``q * l_T(lam)``."""
    q = mu(lam, w)
    if q >= 0:
        raise InputError(f"chi_* needs an unstable point (mu = {q} >= 0)")
    return q, tuple(q * e for _, e in instability_character(lam).blocks)


def deg_of_character_line(alphas: Sequence, degrees: Sequence, r: int) -> Fraction:
    """Degree of the line bundle of ``l_T(lam)`` for a filtration of a degree-0 sheaf."""
    if len(alphas) != len(degrees):
        raise InputError("one degree per alpha required")
    return -sum((frac(a) * r * frac(d) for a, d in zip(alphas, degrees)), Fraction(0))
