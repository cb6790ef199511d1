"""Numerical model of torsion-free sheaves and the semistability functionals.

A sheaf is (rank, degree, Hilbert polynomial).  Polynomials are tuples of
Fractions, constant term first.  The degree is read off the coefficient of
``x^{d-1}`` relative to the structure sheaf:

    (d-1)! * (P_{d-1} - rank * P_O_{d-1}) == degree

and the leading coefficient is ``rank * lead(P_O)``.  Under these rules
``(d-1)! * coeff_{d-1}(M) == L`` for every weighted filtration.

Verdicts are relative to the finite candidate filtrations supplied by the
caller; no claim is made about filtrations outside that set.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from ._exact import frac
from .errors import CertificateError, InputError
from .homogenize import choose_omega, nu_filtration
from .lattice import WeightedFlag, dual_flag
from .tensor import SparseTensor, mu_filtration_tensor

STABLE = "stable"
SEMISTABLE_ONLY = "semistable_only"
UNSTABLE = "unstable"

Poly = tuple[Fraction, ...]


def poly(coeffs: Sequence) -> Poly:
    out = [frac(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(p: Sequence, q: Sequence) -> Poly:
    n = max(len(p), len(q))
    return poly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def poly_scale(p: Sequence, x) -> Poly:
    x = frac(x)
    return poly([c * x for c in p])


def poly_sub(p, q) -> Poly:
    return poly_add(p, poly_scale(q, -1))


def coeff(p: Sequence, k: int) -> Fraction:
    return Fraction(p[k]) if 0 <= k < len(p) else Fraction(0)


def degree_of(p: Sequence) -> int:
    return len(poly(p)) - 1


def poly_positive(p: Sequence, strict: bool = False) -> bool:
    """Eventual sign order: ``P >= 0`` (or ``> 0``) for all large arguments."""
    p = poly(p)
    if not p:
        return not strict
    return p[-1] > 0


@dataclass(frozen=True)
class AmbientSpace:
    dim_x: int
    hilbert_of_structure_sheaf: Poly

    def __post_init__(self):
        p = poly(self.hilbert_of_structure_sheaf)
        object.__setattr__(self, "hilbert_of_structure_sheaf", p)
        if self.dim_x < 1:
            raise InputError("dim X must be positive")
        if degree_of(p) != self.dim_x or p[-1] <= 0:
            raise InputError("structure sheaf Hilbert polynomial must have degree dim X and positive lead")


@dataclass(frozen=True)
class SheafData:
    rank: int
    degree: Fraction
    hilbert: Poly
    ambient: AmbientSpace = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "degree", frac(self.degree))
        object.__setattr__(self, "hilbert", poly(self.hilbert))
        d = self.ambient.dim_x
        po = self.ambient.hilbert_of_structure_sheaf
        p = self.hilbert
        if self.rank < 1:
            raise InputError("rank must be positive")
        if degree_of(p) != d or p[-1] <= 0:
            raise InputError("Hilbert polynomial must have degree dim X and positive lead")
        if p[-1] != self.rank * po[-1]:
            raise InputError("leading Hilbert coefficient must be rank * lead(P_O)")
        if factorial(d - 1) * (coeff(p, d - 1) - self.rank * coeff(po, d - 1)) != self.degree:
            raise InputError("degree inconsistent with the x^(d-1) Hilbert coefficient")

    @classmethod
    def from_invariants(cls, ambient: AmbientSpace, rank: int, degree, lower: Sequence = ()) -> "SheafData":
        """Consistent data with free coefficients ``lower`` for ``x^0 .. x^{d-2}``."""
        d = ambient.dim_x
        p = list(poly_scale(ambient.hilbert_of_structure_sheaf, rank)) + [Fraction(0)] * (d + 1)
        p = p[: d + 1]
        p[d - 1] += frac(degree) / factorial(d - 1)
        lower = [frac(x) for x in lower]
        if len(lower) > max(d - 1, 0):
            raise InputError(f"at most {d - 1} free lower coefficients")
        for i, x in enumerate(lower):
            p[i] = x
        return cls(rank, frac(degree), tuple(p), ambient)


@dataclass(frozen=True)
class WeightedFiltration:
    steps: tuple[SheafData, ...]
    alphas: tuple[Fraction, ...]
    total: SheafData

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "alphas", tuple(frac(a) for a in self.alphas))
        ranks = [s.rank for s in self.steps]
        if len(ranks) != len(self.alphas):
            raise InputError("one alpha per step required")
        if any(not 0 < k < self.total.rank for k in ranks) or any(a >= b for a, b in zip(ranks, ranks[1:])):
            raise InputError(f"step ranks must increase strictly inside (0, {self.total.rank}): {ranks}")
        if any(a <= 0 for a in self.alphas):
            raise InputError("alphas must be positive")

    @property
    def ranks(self) -> tuple[int, ...]:
        return tuple(s.rank for s in self.steps)

    def scaled(self, x) -> "WeightedFiltration":
        return WeightedFiltration(self.steps, tuple(a * frac(x) for a in self.alphas), self.total)


def M_poly(f: WeightedFiltration) -> Poly:
    total = f.total
    out: Poly = ()
    for a, step in zip(f.alphas, f.steps):
        term = poly_sub(poly_scale(total.hilbert, step.rank), poly_scale(step.hilbert, total.rank))
        out = poly_add(out, poly_scale(term, a))
    return out


def L_slope(f: WeightedFiltration) -> Fraction:
    t = f.total
    return sum((a * (s.rank * t.degree - t.rank * s.degree) for a, s in zip(f.alphas, f.steps)), Fraction(0))


def ramanathan_slope(f: WeightedFiltration) -> Fraction:
    """Ramanathan's form ``sum alpha_i (deg(A) rk A_i - deg(A_i) rk A)``, written out separately."""
    out = Fraction(0)
    for a, s in zip(f.alphas, f.steps):
        out += a * (f.total.degree * s.rank - s.degree * f.total.rank)
    return out


def flag_for(f: WeightedFiltration) -> WeightedFlag:
    """The weighted flag on the dual space matching a filtration (dims via ``dual_flag``, alphas reversed)."""
    dims, _ = dual_flag(f.ranks, [s.degree for s in f.steps], f.total.rank)
    return WeightedFlag(dims, tuple(reversed(f.alphas)), f.total.rank)


@dataclass(frozen=True)
class Candidate:
    filtration: WeightedFiltration
    flag: WeightedFlag

    def __post_init__(self):
        expected = flag_for(self.filtration)
        if not expected.same_flag(self.flag):
            raise InputError(
                f"flag {self.flag.dims}/{self.flag.alphas} does not match the filtration "
                f"(expected {expected.dims}/{expected.alphas})"
            )


@dataclass(frozen=True)
class DecoratedObject:
    total: SheafData
    tensor: SparseTensor
    candidates: tuple[Candidate, ...]

    def __post_init__(self):
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if self.total.degree != 0:
            raise InputError("decorated object needs a trivial-determinant (degree 0) sheaf")
        if self.tensor.dec_type.r != self.total.rank:
            raise InputError("tensor dimension must equal the sheaf rank")
        for c in self.candidates:
            if c.filtration.total != self.total:
                raise InputError("candidate filtration of a different sheaf")

    @classmethod
    def build(cls, total: SheafData, tensor: SparseTensor, filtrations: Sequence[WeightedFiltration]):
        return cls(total, tensor, tuple(Candidate(f, flag_for(f)) for f in filtrations))


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: int | None = None
    considered: tuple[int, ...] = ()
    values: tuple = ()
    notes: tuple[str, ...] = ()

    @property
    def semistable(self) -> bool:
        return self.status != UNSTABLE

    @property
    def stable(self) -> bool:
        return self.status == STABLE


def _verdict(indices, values, strict_ok, weak_ok, notes=()) -> Verdict:
    """First violator wins; otherwise the first non-strict index is the witness."""
    for i, v in zip(indices, values):
        if not weak_ok(v):
            return Verdict(UNSTABLE, i, tuple(indices), tuple(values), tuple(notes))
    for i, v in zip(indices, values):
        if not strict_ok(v):
            return Verdict(SEMISTABLE_ONLY, i, tuple(indices), tuple(values), tuple(notes))
    return Verdict(STABLE, None, tuple(indices), tuple(values), tuple(notes))


def check_decorated(obj: DecoratedObject, epsilon: Sequence, plan=None) -> Verdict:
    """``M + epsilon * nu >= 0`` (``> 0`` for stability) over all candidates."""
    eps = poly(epsilon)
    d = obj.total.ambient.dim_x
    if not eps or eps[-1] <= 0 or degree_of(eps) > d - 1:
        raise InputError("epsilon must be a positive polynomial of degree at most dim X - 1")
    notes = () if degree_of(eps) == d - 1 else ("epsilon degree below dim X - 1",)
    if plan is None:
        plan = choose_omega(obj.tensor.dec_type)
    values = []
    for c in obj.candidates:
        nu = nu_filtration(c.flag, obj.tensor, plan)
        values.append(poly_add(M_poly(c.filtration), poly_scale(eps, nu)))
    return _verdict(
        range(len(values)), values, lambda p: poly_positive(p, True), lambda p: poly_positive(p), notes
    )


def reductions(obj: DecoratedObject) -> list[int]:
    """Candidates with vanishing filtration weight: the ones that model reductions."""
    return [i for i, c in enumerate(obj.candidates) if mu_filtration_tensor(c.flag, obj.tensor) == 0]


def check_honest(obj: DecoratedObject) -> Verdict:
    idx = reductions(obj)
    values = [M_poly(obj.candidates[i].filtration) for i in idx]
    return _verdict(idx, values, lambda p: poly_positive(p, True), lambda p: poly_positive(p))


def check_slope(obj: DecoratedObject) -> Verdict:
    idx = reductions(obj)
    values = [L_slope(obj.candidates[i].filtration) for i in idx]
    return _verdict(idx, values, lambda x: x > 0, lambda x: x >= 0)


@dataclass(frozen=True)
class ChainReport:
    slope_stable: bool
    stable: bool
    semistable: bool
    slope_semistable: bool
    honest: Verdict
    slope: Verdict
    coefficient_checks: tuple[tuple[int, Fraction, Fraction, bool], ...]

    def as_list(self) -> list[tuple[str, bool]]:
        return [
            ("slope_stable", self.slope_stable),
            ("stable", self.stable),
            ("semistable", self.semistable),
            ("slope_semistable", self.slope_semistable),
        ]


def implication_report(obj: DecoratedObject) -> ChainReport:
    """slope-stable => stable => semistable => slope-semistable, checked on the shared candidates."""
    honest = check_honest(obj)
    slope = check_slope(obj)
    d = obj.total.ambient.dim_x
    checks = []
    for i, c in enumerate(obj.candidates):
        lead = factorial(d - 1) * coeff(M_poly(c.filtration), d - 1)
        L = L_slope(c.filtration)
        checks.append((i, lead, L, lead == L))
    report = ChainReport(slope.stable, honest.stable, honest.semistable, slope.semistable, honest, slope, tuple(checks))
    chain = [v for _, v in report.as_list()]
    if any(a and not b for a, b in zip(chain, chain[1:])):
        raise CertificateError(f"implication chain violated: {report.as_list()}")
    if not all(ok for *_, ok in checks):
        raise CertificateError("leading-coefficient identity failed")
    return report
