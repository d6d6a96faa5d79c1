"""Command-line front end: ``girard-couples {check,construct,spectrum,eval,list}``."""

from __future__ import annotations

import argparse
import shlex
import sys
from pathlib import Path

import numpy as np

from . import corpus
from .checks import Check
from .construction import GirardQuantale, build_G, check_G_of_S, rosenthal, verify_G
from .couple import CoupleError, check_cs_theorem, cs_couple, identity_couple, sub_ideal_couple, validate_couple
from .endo import build_endo_quantale, check_decomposition
from .lattice import DEFAULT_MAP_BUDGET, BudgetExceeded, LatticeError, is_completely_distributive, op_dual
from .logic import FormulaSyntaxError, GirardModel, atoms, parse, parse_assignment, to_text
from .quantale import Quantale, QuantaleError, frame_quantale, quantale_law_checks, sub_ring_quantale
from .report import EXIT_BUDGET, EXIT_INPUT_ERROR, Report
from .spectrum import DEFAULT_N_CAP, DEFAULT_TOL, check_girard_sampled, product_algebra_spectrum
from .suites import SUITES, Subject, lattice_checks, run_suites
from .tensor import DEFAULT_TENSOR_BUDGET, tensor_lattice
from .textio import FormatError, format_couple, format_lattice, format_quantale, load

BUILTIN = "builtin:"


class InputError(Exception):
    pass


# --- loading --------------------------------------------------------------------


def resolve_subject(ref: str, report: Report, args) -> Subject:
    """``builtin:NAME``, a bare builtin name, or a path to a definition file."""
    map_budget = args.budget or DEFAULT_MAP_BUDGET
    tensor_budget = args.budget or DEFAULT_TENSOR_BUDGET
    name = ref[len(BUILTIN):] if ref.startswith(BUILTIN) else ref
    if ref.startswith(BUILTIN) or not Path(ref).exists():
        try:
            kind, obj = corpus.resolve(name)
        except corpus.UnknownBuiltin as exc:
            if not ref.startswith(BUILTIN):
                raise InputError(f"no such file or builtin: {ref}") from None
            raise InputError(str(exc)) from None
        report.add_input(BUILTIN + name, name)
        return Subject(kind, obj, name, map_budget=map_budget, tensor_budget=tensor_budget)
    path = Path(ref)
    report.add_input(str(path), path.read_bytes())
    loaded = load(path)
    return Subject(loaded.kind, loaded.obj, loaded.name or path.stem, dualizer=loaded.dualizer, neg=loaded.neg,
                   map_budget=map_budget, tensor_budget=tensor_budget)


def _require(subj: Subject, *kinds: str, flag: str) -> object:
    if subj.kind not in kinds:
        raise InputError(f"{flag} expects a {' or '.join(kinds)}, got a {subj.kind} ({subj.name})")
    return subj.obj


def _as_quantale(subj: Subject, flag: str = "--quantale") -> Quantale:
    if subj.kind == "model":
        return subj.obj.quantale
    if subj.kind == "lattice":
        # a distributive lattice stands for its frame quantale
        if not is_completely_distributive(subj.obj):
            raise InputError(f"{flag} expects a quantale; {subj.name} is a non-distributive lattice")
        return frame_quantale(subj.obj, name=subj.name)
    Q = _require(subj, "quantale", flag=flag)
    for c in quantale_law_checks(Q.lattice, Q.mul, Q.unit):
        if c.failed:
            raise InputError(f"{subj.name} is not a quantale: {c.name} fails at {c.witness}")
    return Q


# --- commands -------------------------------------------------------------------


def cmd_check(args, report: Report) -> str | None:
    subj = resolve_subject(args.target, report, args)
    suites = SUITES if args.suite == "all" else (args.suite,)
    r = run_suites(subj, suites)
    report.add(*r.checks)
    report.info.update(r.info)
    report.info["target"] = f"{subj.kind} {subj.name}"
    return None


def _model_text(G: GirardQuantale) -> str:
    neg = G.quantale.right_residuals[:, G.dualizer]
    return format_quantale(G.quantale, dualizer=G.dualizer, neg=neg)


def cmd_construct(args, report: Report) -> str:
    kind = args.kind
    budget = args.budget

    def lattice_arg():
        if not args.lattice:
            raise InputError(f"construct {kind} needs --lattice")
        return _require(resolve_subject(args.lattice, report, args), "lattice", flag="--lattice")

    if kind == "endo":
        S = lattice_arg()
        E = build_endo_quantale(S, budget=budget or DEFAULT_MAP_BUDGET)
        Q = E.quantale
        report.add(*quantale_law_checks(Q.lattice, Q.mul, Q.unit), check_decomposition(E))
        report.info.update({"size": Q.n, "unit": Q.labels[Q.unit]})
        return format_quantale(Q, name=f"Q({args.lattice})")
    if kind == "tensor":
        S = lattice_arg()
        T = op_dual(S)
        if args.other:
            T = _require(resolve_subject(args.other, report, args), "lattice", flag="--with")
        TP = tensor_lattice(S, T, budget or DEFAULT_TENSOR_BUDGET)
        report.add(*lattice_checks(TP.lattice))
        report.info["size"] = len(TP)
        return format_lattice(TP.lattice, name=f"{args.lattice} (x) {args.other or args.lattice + '^op'}")
    if kind == "cs-couple":
        S = lattice_arg()
        K = cs_couple(S, map_budget=budget or DEFAULT_MAP_BUDGET, tensor_budget=budget or DEFAULT_TENSOR_BUDGET)
        report.add(*validate_couple(K), *check_cs_theorem(K))
        report.info.update({"|C(S)|": K.C.n, "|Q(S)|": K.Q.n, "dualizer": K.C.labels[K.d]})
        return format_couple(K, name=f"C({args.lattice}) -> Q({args.lattice})")
    if kind == "G":
        if args.couple:
            K = _require(resolve_subject(args.couple, report, args), "couple", flag="--couple")
        elif args.quantale:
            K = identity_couple(_as_quantale(resolve_subject(args.quantale, report, args)))
        else:
            raise InputError("construct G needs --couple or --quantale")
        bad = [c for c in validate_couple(K) if c.failed]
        if bad:
            report.add(*bad)
            return None
        G = build_G(K)
        report.add(*verify_G(G))
        report.info.update({"size": G.n, "unit": G.quantale.labels[G.unit],
                            "dualizer": G.quantale.labels[G.dualizer]})
        return _model_text(G)
    if kind == "rosenthal":
        if not args.quantale:
            raise InputError("construct rosenthal needs --quantale")
        Q = _as_quantale(resolve_subject(args.quantale, report, args))
        G = rosenthal(Q)
        formula = np.array([G.perp(g) for g in range(G.n)])
        report.add(Check("carrier is Q x Q^op", len(G.pairs) == Q.n * Q.n, anchor="Rosenthal's construction",
                         witness=f"{len(G.pairs)} pairs for |Q| = {Q.n}", suite="girard"))
        report.add(*verify_G(G))
        report.info.update({"size": G.n, "unit": G.quantale.labels[G.unit],
                            "dualizer": G.quantale.labels[G.dualizer],
                            "negation": {G.quantale.labels[g]: G.quantale.labels[formula[g]] for g in range(G.n)}})
        return _model_text(G)
    if kind == "GofS":
        S = lattice_arg()
        K = cs_couple(S, map_budget=budget or DEFAULT_MAP_BUDGET, tensor_budget=budget or DEFAULT_TENSOR_BUDGET)
        G = build_G(K)
        iso = check_G_of_S(G)
        report.add(*verify_G(G), *iso)
        T = K.tensor
        right = {S.labels[x]: G.quantale.labels[G.gamma[int(T.gen[x, S.bottom])]] for x in range(S.n)}
        left = {S.labels[y] + "'": G.quantale.labels[G.gamma[int(T.gen[S.top, y])]] for y in range(S.n)}
        report.info.update({"size": G.n, "R(G) ~ S": right, "L(G) ~ S^op": left})
        head = [f"# R(G) ~ {args.lattice.removeprefix(BUILTIN)} via x -> gamma(x@0'):"]
        head += [f"#   {x} -> {g}" for x, g in right.items()]
        head += [f"# L(G) ~ {args.lattice.removeprefix(BUILTIN)}^op via y' -> gamma(1@y'):"]
        head += [f"#   {y} -> {g}" for y, g in left.items()]
        return "\n".join(head) + "\n" + _model_text(G)
    if kind == "subring":
        if args.n is None:
            raise InputError("construct subring needs --n")
        if args.k is not None:
            K = sub_ideal_couple(args.n, args.k)
            report.add(*validate_couple(K))
            return format_couple(K)
        Q = sub_ring_quantale(args.n)
        report.add(*quantale_law_checks(Q.lattice, Q.mul, Q.unit))
        report.info.update({"size": Q.n, "unit": Q.labels[Q.unit]})
        return format_quantale(Q)
    raise InputError(f"unknown construction {kind!r}")


def cmd_spectrum(args, report: Report) -> None:
    tol = args.tol
    seed = args.seed if args.seed is not None else 0
    report.seed = seed
    anchor = "the spectrum of a matrix algebra is a Girard quantale"
    if args.dims:
        try:
            dims = [int(x) for x in args.dims.split(",") if x.strip()]
        except ValueError:
            raise InputError(f"--dims expects comma-separated integers, got {args.dims!r}") from None
        res = product_algebra_spectrum(dims, args.samples, seed, tol)
        report.info["algebra"] = " (+) ".join(f"M_{m}" for m in dims)
    else:
        cap = args.budget or DEFAULT_N_CAP
        if args.n > cap:
            raise BudgetExceeded("matrix size n", args.n, cap)
        res = check_girard_sampled(args.n, args.samples, seed, tol, n_cap=cap)
        report.info["algebra"] = f"M_{args.n}"
        if args.n == 1:
            report.info["note"] = "M_1 = C: the spectrum is the 2-chain {0, C} with d = {0}"
    for name, r in res.results.items():
        report.add(Check(name, r["passed"], anchor=anchor, witness=r["witness"], error=r["max_error"],
                         suite="spectrum", info={"samples": r["count"]}))
    report.info.update({"samples": args.samples, "tolerance": tol, "max error": res.max_error})


def _load_model(ref: str, report: Report, args) -> GirardModel:
    subj = resolve_subject(ref, report, args)
    if subj.kind == "model":
        G = subj.obj
        return GirardModel(G.quantale, G.dualizer, name=subj.name)
    if subj.kind == "couple":
        K = subj.obj
        if K.d is None:
            raise InputError(f"{subj.name} has no designated dualizer")
        G = build_G(K)
        return GirardModel(G.quantale, G.dualizer, name=f"G({subj.name})")
    Q = _as_quantale(subj, flag="--model")
    try:
        return GirardModel(Q, subj.dualizer, name=subj.name)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_eval(args, report: Report) -> None:
    try:
        f = parse(args.formula)
    except FormulaSyntaxError as exc:
        raise InputError(f"syntax error at column {exc.column}: {exc.message}") from None
    M = _load_model(args.model, report, args)
    lab = M.quantale.labels
    report.info.update({"model": M.name, "size": M.n, "formula": to_text(f), "unit": lab[M.unit],
                        "dualizer": lab[M.d]})
    budget = args.budget or 10**6
    if args.tautology:
        bad = M.counterexample(f, budget)
        report.add(Check(f"{to_text(f)} is a tautology", bad is None, anchor="validity means e <= value",
                         witness=bad, suite="eval"))
        return
    try:
        assignment = parse_assignment(args.assign or "")
    except ValueError as exc:
        raise InputError(str(exc)) from None
    missing = [a for a in atoms(f) if a not in assignment]
    if missing:
        raise InputError(f"no value for {', '.join(missing)}; use --assign or --tautology")
    try:
        val = {a: M.element(v) for a, v in assignment.items()}
    except (KeyError, ValueError, LatticeError):
        raise InputError(f"unknown element in --assign {args.assign!r}") from None
    value = M.evaluate(f, val)
    report.info["value"] = lab[value]
    report.add(Check(f"{to_text(f)} is valid", M.is_valid(f, val), anchor="validity means e <= value",
                     witness={"value": lab[value], "unit": lab[M.unit]}, suite="eval"))


def cmd_list(args, report: Report) -> None:
    report.info["builtins"] = corpus.builtin_names()


# --- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    common.add_argument("--seed", type=int, help="random seed (recorded in the report)")
    common.add_argument("--budget", type=int,
                        help="size limit: sup-map candidates, tensor pairs, valuations, or max n for spectrum")

    p = argparse.ArgumentParser(prog="girard-couples", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run verification suites on a file or builtin")
    c.add_argument("target", help="definition file, or builtin:NAME")
    c.add_argument("--suite", choices=SUITES + ("all",), default="all")

    k = sub.add_parser("construct", parents=[common], help="build an object and print it in the text format")
    k.add_argument("kind", choices=["endo", "tensor", "cs-couple", "G", "rosenthal", "GofS", "subring"])
    k.add_argument("--lattice")
    k.add_argument("--with", dest="other", help="second tensor factor (default: the order dual)")
    k.add_argument("--quantale")
    k.add_argument("--couple")
    k.add_argument("--n", type=int, help="subring: Z_n")
    k.add_argument("--k", type=int, help="subring: couple Sub(kZ_n) -> Sub(Z_n)")
    k.add_argument("--out", help="write the object here instead of stdout")

    s = sub.add_parser("spectrum", parents=[common], help="sampled Girard checks on matrix spectra")
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--samples", type=int, default=200)
    s.add_argument("--tol", type=float, default=DEFAULT_TOL)
    s.add_argument("--dims", help="block sizes a,b,c for a direct sum of matrix algebras")

    e = sub.add_parser("eval", parents=[common], help="evaluate a formula in a Girard quantale")
    e.add_argument("--model", default="builtin:rosenthal-chain2")
    e.add_argument("--formula", required=True)
    e.add_argument("--assign", help="a=elem,b=elem")
    e.add_argument("--tautology", action="store_true")

    sub.add_parser("list", parents=[common], help="list builtin names")
    return p


COMMANDS = {"check": cmd_check, "construct": cmd_construct, "spectrum": cmd_spectrum, "eval": cmd_eval,
            "list": cmd_list}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    report = Report(shlex.join(["girard-couples", *argv]), seed=args.seed)
    obj_text = None
    try:
        obj_text = COMMANDS[args.command](args, report)
    except BudgetExceeded as exc:
        report.fail_with(str(exc), EXIT_BUDGET)
    except (InputError, FormatError, LatticeError, QuantaleError, CoupleError, OSError) as exc:
        report.fail_with(str(exc), EXIT_INPUT_ERROR)
    except ValueError as exc:
        report.fail_with(str(exc), EXIT_INPUT_ERROR)

    if obj_text is not None:
        if getattr(args, "out", None):
            Path(args.out).write_text(obj_text, encoding="utf-8")
            report.info["written to"] = args.out
        elif args.json != "-":
            sys.stdout.write(obj_text + "\n")
    if args.json == "-":
        sys.stdout.write(report.to_json() + "\n")
    else:
        if args.command == "list":
            sys.stdout.write("\n".join(report.info["builtins"]) + "\n")
        else:
            sys.stdout.write(report.to_text())
        if args.json:
            Path(args.json).write_text(report.to_json() + "\n", encoding="utf-8")
    if report.error:
        print(f"girard-couples: {report.error}", file=sys.stderr)
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
