"""``gitstab`` command line.

Every command reads one ``gitstab/1`` problem file and writes a JSON
document to stdout (or ``--out``).  Exit codes: 0 on success whatever the
verdict, 2 on malformed input, 3 when an internal certificate or
cross-check fails.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import CertificateError, InputError
from .homogenize import DEFAULT_CAP, choose_omega, explicit_size, nu_filtration, saturation_bound_check, sign_equiv_check
from .kempf import InstabilityResult, chi_star, instability_character, kempf_search, torus_instability, torus_polystable
from .lattice import OnePS, SL, WeightedFlag, ops_from_flag, weighted_flag_of
from .oracles import adjoint_example, brute_force_instability, laurent_orbit, orthogonal_example
from .problem import VERSION, ProblemFile, dumps, flag_doc, load, problem_doc, q, tensor_doc
from .sheafcalc import (
    AmbientSpace,
    DecoratedObject,
    SheafData,
    Verdict,
    WeightedFiltration,
    check_decorated,
    check_honest,
    check_slope,
    implication_report,
    reductions,
)
from .tensor import DecType, SparseTensor, mu, mu_filtration_tensor

EXIT_OK, EXIT_INPUT, EXIT_CERT = 0, 2, 3


def _value(x):
    if isinstance(x, Fraction):
        return q(x)
    if isinstance(x, tuple):
        return [_value(c) for c in x]
    return x


def result_doc(res: InstabilityResult) -> dict:
    doc = {
        "verdict": res.verdict,
        "nearest_point": [q(c) for c in res.nearest_point],
        "heuristic": res.heuristic,
        "restart": res.restart,
    }
    if res.unstable:
        doc.update(
            lambda_star=list(res.lambda_star.weights),
            q=res.q,
            m0_sq=q(res.m0_sq),
            m0_sign=res.m0_sign,
            flag=flag_doc(res.flag),
            char_exponents=[list(b) for b in res.char_exponents],
        )
    if res.frame is not None:
        doc["frame"] = [[q(c) for c in row] for row in res.frame]
    return doc


def verdict_doc(v: Verdict) -> dict:
    return {
        "status": v.status,
        "witness": v.witness,
        "considered": list(v.considered),
        "values": [_value(x) for x in v.values],
        "notes": list(v.notes),
    }


# -- commands ----------------------------------------------------------------


def cmd_mu(pf: ProblemFile, args) -> dict:
    pf.need("tensor")
    rows = [{"lambda": list(lam.weights), "mu": mu(lam, pf.tensor)} for lam in pf.lambdas]
    flags = [{"flag": flag_doc(f), "mu": q(mu_filtration_tensor(f, pf.tensor))} for f in pf.flags]
    if not rows and not flags:
        raise InputError("mu needs 'lambdas' or 'flags'")
    return {"lambdas": rows, "flags": flags}


def cmd_flag(pf: ProblemFile, args) -> dict:
    pf.need("lambdas")
    out = []
    for lam in pf.lambdas:
        f = weighted_flag_of(lam)
        row = {"lambda": list(lam.weights), "flag": flag_doc(f), "weights": [q(g) for g in f.gammas]}
        if sum(lam.weights) == 0:
            row["primitive_from_flag"] = list(ops_from_flag(f).weights)
        out.append(row)
    return {"flags": out}


def _brute_check(w: SparseTensor, res: InstabilityResult, box: int) -> dict:
    brute = brute_force_instability(w, box)
    doc = {"box": box, "found": brute is not None}
    if brute is None:
        if res.unstable and max(abs(x) for x in res.lambda_star.weights) <= box:
            raise CertificateError("brute force found nothing but the optimum fits in the box")
        return doc
    doc.update({"lambda": list(brute.lam), "q": brute.q, "norm_sq": brute.norm_sq, "optima": [list(o) for o in brute.optima]})
    if not res.unstable:
        raise CertificateError(f"brute force destabilises with {brute.lam} but the torus optimum is semistable")
    lhs = brute.q * brute.q * sum(x * x for x in res.lambda_star.weights)
    rhs = res.q * res.q * brute.norm_sq
    if lhs > rhs:
        raise CertificateError(f"brute force beats the torus optimum: {brute.lam}")
    if max(abs(x) for x in res.lambda_star.weights) <= box:
        if lhs != rhs or res.lambda_star.weights not in brute.optima:
            raise CertificateError(f"brute-force optimum {brute.lam} disagrees with {res.lambda_star.weights}")
    doc["agrees"] = True
    return doc


def cmd_kempf(pf: ProblemFile, args) -> dict:
    pf.need("tensor")
    w = pf.tensor
    if args.restarts:
        res = kempf_search(w, args.restarts, args.seed)
    else:
        res = torus_instability(w)
    doc = {"result": result_doc(res), "torus_polystable": torus_polystable(w)}
    if args.brute_box is not None:
        base = torus_instability(w) if args.restarts else res
        doc["brute_force"] = _brute_check(w, base, args.brute_box)
    return doc


def cmd_char(pf: ProblemFile, args) -> dict:
    pf.need("lambdas")
    out = []
    for lam in pf.lambdas:
        cb = instability_character(lam)
        row = {
            "lambda": list(lam.weights),
            "blocks": [list(b) for b in cb.blocks],
            "character": list(cb.as_character()),
        }
        if pf.tensor is not None:
            m = mu(lam, pf.tensor)
            row["mu"] = m
            if m < 0:
                qq, exps = chi_star(lam, pf.tensor)
                row["chi_star"] = {"q": qq, "block_exponents": list(exps)}
        out.append(row)
    return {"characters": out}


def _plan(pf: ProblemFile, args):
    return choose_omega(pf.tensor.dec_type, args.k)


def cmd_check(pf: ProblemFile, args) -> dict:
    obj = pf.decorated()
    doc = {"mode": args.mode, "candidates": len(obj.candidates), "reductions": reductions(obj)}
    if args.mode == "decorated":
        if pf.epsilon is None:
            raise InputError("decorated mode needs an 'epsilon' section")
        doc["verdict"] = verdict_doc(check_decorated(obj, pf.epsilon, _plan(pf, args)))
    elif args.mode == "honest":
        doc["verdict"] = verdict_doc(check_honest(obj))
    elif args.mode == "slope":
        doc["verdict"] = verdict_doc(check_slope(obj))
    else:
        rep = implication_report(obj)
        doc["chain"] = [{"name": n, "holds": v} for n, v in rep.as_list()]
        doc["coefficient_checks"] = [
            {"candidate": i, "lead_coefficient": q(lead), "L": q(L), "equal": ok} for i, lead, L, ok in rep.coefficient_checks
        ]
        doc["honest"] = verdict_doc(rep.honest)
        doc["slope"] = verdict_doc(rep.slope)
    return doc


def cmd_homogenize(pf: ProblemFile, args) -> dict:
    pf.need("tensor")
    w = pf.tensor
    plan = _plan(pf, args)
    doc = {
        "plan": {
            "v_values": list(plan.v_values),
            "omega": plan.omega,
            "k": plan.k,
            "tuples": [list(t) for t in plan.tuples],
            "target_type": list(plan.target_type),
            "explicit_terms": explicit_size(w, plan),
            "explicit_built": explicit_size(w, plan) <= args.cap,
        }
    }
    rows = []
    for f in pf.flags:
        s_mu, s_nu, agree = sign_equiv_check(f, w, plan, args.cap)
        rows.append(
            {
                "flag": flag_doc(f),
                "mu": q(mu_filtration_tensor(f, w)),
                "nu": q(nu_filtration(f, w, plan, args.cap)),
                "sign_mu": s_mu,
                "sign_nu": s_nu,
                "agree": agree,
            }
        )
    if not all(r["agree"] for r in rows):
        raise CertificateError("sign(nu) != sign(mu)")
    doc["flags"] = rows
    max_mu, bound, ok = saturation_bound_check(w, plan)
    if not ok:
        raise CertificateError(f"saturation bound violated: {max_mu} > {bound}")
    doc["saturation"] = {"max_mu": q(max_mu), "bound": q(bound), "ok": ok}
    return doc


def cmd_oracle(pf: ProblemFile, args) -> dict:
    pf.need("tensor")
    w = pf.tensor
    if args.kind == "laurent":
        pf.need("lambdas")
        out = []
        for lam in pf.lambdas:
            lt = laurent_orbit(lam, w)
            out.append(
                {
                    "lambda": list(lam.weights),
                    "top": lt.top,
                    "limit_exists": lt.limit_exists,
                    "pieces": [{"exponent": e, "terms": tensor_doc(t)} for e, t in sorted(lt.pieces.items())],
                }
            )
        return {"laurent": out}
    brute = brute_force_instability(w, args.box)
    if brute is None:
        return {"brute_force": {"box": args.box, "found": False}}
    return {
        "brute_force": {
            "box": args.box,
            "found": True,
            "lambda": list(brute.lam),
            "q": brute.q,
            "norm_sq": brute.norm_sq,
            "optima": [list(o) for o in brute.optima],
        }
    }


# -- bundled examples ---------------------------------------------------------


def example_problems() -> dict[str, ProblemFile]:
    """Problem files for the motivating examples, keyed by file stem."""
    curve = AmbientSpace(1, (1, 1))
    out = {}
    for r, basis in ((2, "hyperbolic"), (3, "hyperbolic"), (2, "standard")):
        t, w = orthogonal_example(r, basis)
        pf = ProblemFile(dec_type=t, tensor=w)
        if basis == "standard":
            pf.lambdas = [OnePS((1, -1), SL)]
        else:
            pf.lambdas = [OnePS((1, -1) if r == 2 else (1, 0, -1), SL)]
        if (r, basis) == (2, "hyperbolic"):
            total = SheafData.from_invariants(curve, 2, 0)
            step = SheafData.from_invariants(curve, 1, 0)
            pf.ambient = curve
            pf.total = total
            pf.filtrations = list(DecoratedObject.build(total, w, [WeightedFiltration((step,), (1,), total)]).candidates)
        out[f"so{r}_{basis}"] = pf
    t, w = adjoint_example()
    out["adjoint_sl2"] = ProblemFile(dec_type=t, tensor=w, lambdas=[OnePS((1, 0, -1), SL)])
    t = DecType.single(2, 2)
    out["b1b1"] = ProblemFile(dec_type=t, tensor=SparseTensor.basis(t, (1, 1)), lambdas=[OnePS((-1, 1), SL)])
    return out


def cmd_examples(args) -> dict:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, pf in example_problems().items():
        path = out_dir / f"{name}.json"
        path.write_text(dumps(problem_doc(pf)))
        written.append(path.name)
    return {"written": written}


# -- entry point --------------------------------------------------------------

COMMANDS = {
    "mu": cmd_mu,
    "flag": cmd_flag,
    "kempf": cmd_kempf,
    "char": cmd_char,
    "check": cmd_check,
    "homogenize": cmd_homogenize,
    "oracle": cmd_oracle,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gitstab", description="Exact GIT stability computations on gitstab/1 problem files.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({VERSION})")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("input", help="problem file")
        sp.add_argument("--out", help="write the result here instead of stdout")
        return sp

    with_input("mu", "Hilbert-Mumford weights for every lambda and flag")
    with_input("flag", "weighted flags of the lambdas")
    sp = with_input("kempf", "optimal destabilising cocharacter in the diagonal torus")
    sp.add_argument("--restarts", type=int, default=0, help="random frames to try (heuristic search)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--brute-box", type=int, default=None, help="cross-check against brute force in this box")
    with_input("char", "instability characters and chi_*")
    sp = with_input("check", "semistability verdicts relative to the candidate filtrations")
    sp.add_argument("--mode", choices=["decorated", "honest", "slope", "chain"], default="chain")
    sp.add_argument("--k", type=int, default=1, help="omega = k * lcm(v)")
    sp = with_input("homogenize", "homogenisation plan, nu and sign audit")
    sp.add_argument("--k", type=int, default=1, help="omega = k * lcm(v)")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="term cap for the explicit homogenised tensor")
    sp = with_input("oracle", "Laurent orbit or brute-force dumps")
    sp.add_argument("--kind", choices=["laurent", "brute"], default="laurent")
    sp.add_argument("--box", type=int, default=3)
    sp = sub.add_parser("examples", help="write the bundled example problem files")
    sp.add_argument("--out", required=True, help="target directory")
    return p


def run(argv=None) -> tuple[int, str]:
    """Run one command; returns the exit code and the text written."""
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "examples":
            body = cmd_examples(args)
        else:
            pf = load(args.input)
            body = COMMANDS[args.command](pf, args)
        doc = {"version": VERSION, "command": args.command, **body}
        code = EXIT_OK
    except InputError as exc:
        doc = {"version": VERSION, "command": args.command, "error": "input", "message": str(exc)}
        code = EXIT_INPUT
    except CertificateError as exc:
        doc = {"version": VERSION, "command": args.command, "error": "certificate", "message": str(exc)}
        code = EXIT_CERT
    text = dumps(doc)
    if code == EXIT_OK and getattr(args, "out", None) and args.command != "examples":
        Path(args.out).write_text(text)
    return code, text


def main(argv=None) -> int:
    code, text = run(argv)
    (sys.stdout if code == EXIT_OK else sys.stderr).write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
