"""The ``gitstab/1`` JSON problem format.

Rationals are JSON integers or strings ``"p/q"``; floats are rejected.
Every section is optional, but a command fails with an input error when a
section it needs is missing.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Any

from ._exact import fmt, frac
from .errors import InputError
from .lattice import OnePS, WeightedFlag
from .sheafcalc import AmbientSpace, Candidate, DecoratedObject, SheafData, WeightedFiltration, coeff, flag_for
from .tensor import DecType, SparseTensor

VERSION = "gitstab/1"


@dataclass
class ProblemFile:
    version: str = VERSION
    ambient: AmbientSpace | None = None
    dec_type: DecType | None = None
    tensor: SparseTensor | None = None
    lambdas: list[OnePS] = field(default_factory=list)
    flags: list[WeightedFlag] = field(default_factory=list)
    total: SheafData | None = None
    filtrations: list[Candidate] = field(default_factory=list)
    epsilon: tuple[Fraction, ...] | None = None
    options: dict[str, Any] = field(default_factory=dict)

    def need(self, *names: str):
        for name in names:
            val = getattr(self, name)
            if val is None or (isinstance(val, list) and not val):
                raise InputError(f"problem file has no {name!r} section")

    def decorated(self) -> DecoratedObject:
        self.need("total", "tensor")
        return DecoratedObject(self.total, self.tensor, tuple(self.filtrations))


def _int(x, what="integer") -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"expected an {what}, got {x!r}")
    return x


def _list(x, what) -> list:
    if not isinstance(x, list):
        raise InputError(f"{what} must be a list")
    return x


def _obj(x, what) -> dict:
    if not isinstance(x, dict):
        raise InputError(f"{what} must be an object")
    return x


def _sheaf(d: dict, ambient: AmbientSpace | None) -> SheafData:
    if ambient is None:
        raise InputError("sheaf data needs an 'ambient' section")
    _obj(d, "sheaf entry")
    rank = _int(d.get("rank"), "integer rank")
    if "hilbert" in d:
        p = tuple(frac(c) for c in _list(d["hilbert"], "hilbert"))
        if "degree" in d:
            degree = frac(d["degree"])
        else:
            dim = ambient.dim_x
            degree = factorial(dim - 1) * (coeff(p, dim - 1) - rank * coeff(ambient.hilbert_of_structure_sheaf, dim - 1))
        return SheafData(rank, degree, p, ambient)
    return SheafData.from_invariants(ambient, rank, frac(d.get("degree", 0)), d.get("lower", ()))


def _flag(d: dict, n: int) -> WeightedFlag:
    _obj(d, "flag entry")
    return WeightedFlag(
        tuple(_int(x) for x in _list(d.get("dims", []), "dims")),
        tuple(frac(a) for a in _list(d.get("alphas", []), "alphas")),
        n,
    )


def parse(doc: dict) -> ProblemFile:
    _obj(doc, "problem file")
    version = doc.get("version")
    if version != VERSION:
        raise InputError(f"unsupported version {version!r}; expected {VERSION!r}")
    pf = ProblemFile()
    if "ambient" in doc:
        a = _obj(doc["ambient"], "ambient")
        pf.ambient = AmbientSpace(_int(a.get("dim")), tuple(frac(c) for c in _list(a.get("hilbert_O"), "hilbert_O")))
    if "dec_type" in doc:
        t = _obj(doc["dec_type"], "dec_type")
        comps = [tuple(_int(x) for x in _list(c, "component")) for c in _list(t.get("components"), "components")]
        pf.dec_type = DecType(_int(t.get("r")), tuple(comps))
    if "tensor" in doc:
        if pf.dec_type is None:
            raise InputError("'tensor' needs a 'dec_type' section")
        terms = []
        for e in _list(doc["tensor"], "tensor"):
            _obj(e, "tensor term")
            key = (_int(e.get("component", 0)), _int(e.get("copy", 0)), tuple(_int(k) for k in _list(e.get("index"), "index")))
            terms.append((key, frac(e.get("coeff", 1))))
        pf.tensor = SparseTensor.from_terms(pf.dec_type, terms)
        if pf.tensor.is_zero():
            raise InputError("tensor is zero")
    pf.lambdas = [OnePS(tuple(_int(x) for x in _list(l, "lambda"))) for l in _list(doc.get("lambdas", []), "lambdas")]
    r = pf.dec_type.r if pf.dec_type else None
    for f in _list(doc.get("flags", []), "flags"):
        if r is None:
            raise InputError("'flags' need a 'dec_type' section")
        pf.flags.append(_flag(f, r))
    if "total" in doc:
        pf.total = _sheaf(doc["total"], pf.ambient)
    for f in _list(doc.get("filtrations", []), "filtrations"):
        _obj(f, "filtration")
        if pf.total is None:
            raise InputError("'filtrations' need a 'total' section")
        steps = tuple(_sheaf(s, pf.ambient) for s in _list(f.get("steps"), "steps"))
        filt = WeightedFiltration(steps, tuple(frac(a) for a in _list(f.get("alphas"), "alphas")), pf.total)
        flag = _flag(f["flag"], pf.total.rank) if "flag" in f else flag_for(filt)
        pf.filtrations.append(Candidate(filt, flag))
    if "epsilon" in doc:
        pf.epsilon = tuple(frac(c) for c in _list(doc["epsilon"], "epsilon"))
    pf.options = dict(_obj(doc.get("options", {}), "options"))
    return pf


def load(path: str | Path) -> ProblemFile:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    return parse(doc)


# -- serialisation ---------------------------------------------------------


def q(x) -> str:
    return fmt(x)


def tensor_doc(w: SparseTensor) -> list[dict]:
    return [
        {"component": comp, "copy": copy, "index": list(mi), "coeff": q(c)}
        for (comp, copy, mi), c in w.terms
    ]


def flag_doc(f: WeightedFlag | None):
    if f is None:
        return None
    return {"dims": list(f.dims), "alphas": [q(a) for a in f.alphas]}


def sheaf_doc(s: SheafData) -> dict:
    return {"rank": s.rank, "degree": q(s.degree), "hilbert": [q(c) for c in s.hilbert]}


def problem_doc(pf: ProblemFile) -> dict:
    """Inverse of ``parse`` (up to canonical ordering)."""
    doc: dict[str, Any] = {"version": pf.version}
    if pf.ambient:
        doc["ambient"] = {"dim": pf.ambient.dim_x, "hilbert_O": [q(c) for c in pf.ambient.hilbert_of_structure_sheaf]}
    if pf.dec_type:
        doc["dec_type"] = {"r": pf.dec_type.r, "components": [list(c) for c in pf.dec_type.components]}
    if pf.tensor:
        doc["tensor"] = tensor_doc(pf.tensor)
    if pf.lambdas:
        doc["lambdas"] = [list(l.weights) for l in pf.lambdas]
    if pf.flags:
        doc["flags"] = [flag_doc(f) for f in pf.flags]
    if pf.total:
        doc["total"] = sheaf_doc(pf.total)
    if pf.filtrations:
        doc["filtrations"] = [
            {
                "steps": [sheaf_doc(s) for s in c.filtration.steps],
                "alphas": [q(a) for a in c.filtration.alphas],
                "flag": flag_doc(c.flag),
            }
            for c in pf.filtrations
        ]
    if pf.epsilon is not None:
        doc["epsilon"] = [q(c) for c in pf.epsilon]
    if pf.options:
        doc["options"] = pf.options
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=True) + "\n"
