"""``brim``: command-line access to colengths, multiplicities and identity checks.

Reports go to stdout, diagnostics to stderr.  Exit status: 0 when every
non-experimental check passes, 1 on a failed identity, 2 on bad input,
3 when a fit does not stabilize, 4 on a failed precondition.
"""
from __future__ import annotations

import argparse
import sys

from . import engine, lab
from .formats import ParseError, dumps, grid_rows, ideal_to_json, load_module, module_to_json, parse_ideal_string
from .ideals import ModuleSpec, NotPrimaryError, colength, random_module
from .lab import FitConfig, IntegralityError
from .polyfit import FitError

EXIT_FAIL, EXIT_INPUT, EXIT_FIT, EXIT_PRECONDITION = 1, 2, 3, 4


def _ideal_args(p: argparse.ArgumentParser):
    p.add_argument("--dim", type=int, help="number of variables")
    p.add_argument("--ideal", help='one ideal, e.g. "x^2, x*y, y^3"')


def _module_args(p: argparse.ArgumentParser):
    p.add_argument("--dim", type=int, help="number of variables")
    p.add_argument("--ideals", nargs="+", metavar="IDEAL", help="one string per summand R/I")
    p.add_argument("--file", help='JSON file {"dim": d, "ideals": [[exponent vectors], ...]}')


def _fit_args(p: argparse.ArgumentParser):
    p.add_argument("--start-p", type=int, default=1, help="first sample point of every fit")
    p.add_argument("--max-p", type=int, default=None, help="largest sample point a fit may use")
    p.add_argument("--max-advance", type=int, default=6, help="window doublings before giving up")


def _output_args(p: argparse.ArgumentParser):
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="brim", description="Buchsbaum-Rim multiplicities of sums of R/I for monomial ideals I")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("colength", help="length of R/I")
    _ideal_args(p)
    _output_args(p)

    p = sub.add_parser("hs", help="Hilbert-Samuel multiplicity e(I)")
    _ideal_args(p)
    _fit_args(p)
    _output_args(p)

    for name, text in [("mixed", "mixed multiplicities of I_1, ..., I_r"),
                       ("br", "Buchsbaum-Rim multiplicity e(C)"),
                       ("assoc", "associated multiplicities e^0(C), ..., e^{d+r-1}(C)")]:
        p = sub.add_parser(name, help=text)
        _module_args(p)
        _fit_args(p)
        _output_args(p)

    p = sub.add_parser("lambda", help="table of lambda(p)")
    _module_args(p)
    p.add_argument("--max-p", type=int, default=8)
    _output_args(p)

    p = sub.add_parser("Lambda", help="grid of Lambda(p, q)")
    _module_args(p)
    p.add_argument("--max-p", type=int, default=4)
    p.add_argument("--q-min", type=int, default=0)
    p.add_argument("--q-max", type=int, default=None, help="default (max_p + 1) r + 8")
    p.add_argument("--admissible", action="store_true", help="only q >= (p+1) r")
    _output_args(p)

    p = sub.add_parser("verify", help="check an identity")
    vsub = p.add_subparsers(dest="identity", required=True)
    for name in ("main", "last", "kirby-sum", "nested", "corollary", "regions", "props"):
        v = vsub.add_parser(name)
        _module_args(v)
        _fit_args(v)
        _output_args(v)
        if name == "nested":
            v.add_argument("--j", type=int, default=None, help="default: every j in 0..r-1")
        if name in ("regions", "props"):
            v.add_argument("--grid-p", type=int, default=5, help="check every p up to this")
            v.add_argument("--q-span", type=int, default=8, help="q from (p+1)r to (p+1)r + span")

    p = sub.add_parser("conjecture", help="probe an open question (experimental)")
    csub = p.add_subparsers(dest="question", required=True)
    v = csub.add_parser("q43", help="is deg_q of the residual F_k at most r-k-1?")
    _module_args(v)
    _fit_args(v)
    _output_args(v)
    v.add_argument("--k", type=int, required=True)
    v = csub.add_parser("q44", help="does e^{r-j} follow the alternating L-module formula?")
    _module_args(v)
    _fit_args(v)
    _output_args(v)
    v.add_argument("--j", type=int, required=True)

    p = sub.add_parser("random", help="seeded random module")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-pure-power", type=int, default=3)
    p.add_argument("--extra-gens", type=int, default=1)
    _output_args(p)
    return parser


def _need_dim(args) -> int:
    if args.dim is None:
        raise ParseError("--dim is required")
    return args.dim


def _module(args) -> ModuleSpec:
    if args.file:
        return load_module(args.file)
    if not args.ideals:
        raise ParseError("give --ideals or --file")
    dim = _need_dim(args)
    return ModuleSpec(dim, tuple(parse_ideal_string(s, dim) for s in args.ideals))


def _config(args) -> FitConfig:
    return FitConfig(start=args.start_p, max_advance=args.max_advance, limit=args.max_p)


def _emit(args, payload: dict, lines: list[str]):
    if args.json:
        sys.stdout.write(dumps(payload))
    else:
        sys.stdout.write("\n".join(lines) + "\n")


def _emit_reports(args, reports: list[lab.VerificationReport]) -> int:
    lines = []
    for rep in reports:
        tag = "PASS" if rep.passed else ("FAIL" if not rep.experimental else "NO")
        if rep.experimental:
            tag += " (experimental)"
        line = f"{rep.identity}: {tag}  lhs={rep.lhs} rhs={rep.rhs}"
        if rep.note:
            line += f"  [{rep.note}]"
        lines.append(line)
    _emit(args, {"reports": [rep.to_json() for rep in reports]}, lines)
    if any(rep.note.startswith("precondition failed") for rep in reports):
        return EXIT_PRECONDITION
    return EXIT_FAIL if any(rep.hard_failure for rep in reports) else 0


def _run(args) -> int:
    cmd = args.command
    if cmd == "colength":
        I = parse_ideal_string(args.ideal or "", _need_dim(args))
        n = colength(I)
        _emit(args, {"ideal": ideal_to_json(I), "colength": str(n)}, [str(n)])
        return 0
    if cmd == "hs":
        I = parse_ideal_string(args.ideal or "", _need_dim(args))
        e = lab.hs_multiplicity(I, _config(args))
        _emit(args, {"ideal": ideal_to_json(I), "multiplicity": str(e)}, [str(e)])
        return 0
    if cmd == "random":
        C = random_module(args.dim, args.r, args.max_pure_power, args.extra_gens, args.seed)
        _emit(args, module_to_json(C), [str(I) for I in C.ideals])
        return 0

    C = _module(args)
    if cmd == "mixed":
        table = lab.mixed_multiplicities(C.ideals, _config(args))
        _emit(args, {"module": module_to_json(C), "mixed": table.to_json()},
              [f"{k}: {v}" for k, v in sorted(table.table.items())])
        return 0
    if cmd == "br":
        e = lab.br_multiplicity(C, _config(args))
        _emit(args, {"module": module_to_json(C), "multiplicity": str(e)}, [str(e)])
        return 0
    if cmd == "assoc":
        vec = lab.associated_multiplicities(C, _config(args))
        _emit(args, {"module": module_to_json(C), "associated": vec.to_json()},
              [f"e^{j} = {v}" for j, v in enumerate(vec.values)])
        return 0
    if cmd == "lambda":
        rows = [(p, engine.br_function(C, p)) for p in range(args.max_p + 1)]
        _emit(args, {"module": module_to_json(C), "rows": [{"p": p, "lambda": str(v)} for p, v in rows]},
              [f"{p}\t{v}" for p, v in rows])
        return 0
    if cmd == "Lambda":
        q_max = args.q_max if args.q_max is not None else (args.max_p + 1) * C.r + 8
        vals = []
        for p in range(args.max_p + 1):
            lo = max(args.q_min, (p + 1) * C.r) if args.admissible else args.q_min
            vals.extend((p, q, engine.br_function2(C, p, q)) for q in range(lo, q_max + 1))
        _emit(args, {"module": module_to_json(C), "rows": grid_rows(vals)},
              [f"{p}\t{q}\t{v}" for p, q, v in vals])
        return 0
    if cmd == "verify":
        cfg = _config(args)
        ident = args.identity
        if ident == "main":
            reports = [lab.verify_main_theorem(C, cfg)]
        elif ident == "last":
            reports = [lab.verify_last_multiplicity(C, cfg)]
        elif ident == "kirby-sum":
            reports = [lab.verify_kirby_rees_sum(C, cfg)]
        elif ident == "nested":
            js = [args.j] if args.j is not None else range(C.r)
            reports = [lab.verify_nested_chain(C, j, cfg) for j in js]
        elif ident == "corollary":
            reports = [lab.verify_corollary_largest(C, cfg)]
        elif ident == "regions":
            reports = lab.region_identity_reports(C, args.grid_p, args.q_span)
        else:
            reports = lab.closed_form_reports(C, args.grid_p, args.q_span)
        return _emit_reports(args, reports)
    if cmd == "conjecture":
        cfg = _config(args)
        if args.question == "q43":
            return _emit_reports(args, [lab.probe_residual_degree(C, args.k, cfg)])
        return _emit_reports(args, [lab.probe_conjectural_formula(C, args.j, cfg)])
    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (ParseError, NotPrimaryError, ValueError) as exc:
        if isinstance(exc, engine.PreconditionError):
            print(f"brim: precondition failed: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        print(f"brim: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (FitError, IntegralityError) as exc:
        print(f"brim: {exc}", file=sys.stderr)
        return EXIT_FIT


if __name__ == "__main__":
    sys.exit(main())
