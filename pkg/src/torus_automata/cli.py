"""Command-line front end: ``torus-automata <verb> ...`` or ``python3 -m torus_automata``."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from . import automata as fa
from .core_ring import ReprParams, reduce
from .errors import (
    CarryBoundError, CarryCycleError, InvalidParams, NotRecognizable, ReductionBudgetExceeded,
    StateBudgetExceeded,
)
from .words import format_digits, parse_digits

EXIT_INVALID = 1
EXIT_BUDGET = 2
EXIT_INVARIANT = 3


def _ints(text: str) -> tuple:
    text = text.strip().strip("[]()")
    return tuple(int(x) for x in text.split(",") if x.strip()) if text else ()


def _matrix(text: str) -> tuple:
    """``a,b;c,d`` -> ((a, b), (c, d))."""
    rows = [_ints(r) for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise argparse.ArgumentTypeError(f"matrix must look like 'a,b;c,d', got {text!r}")
    return tuple(rows)


def _params(args) -> ReprParams:
    return ReprParams(_ints(args.p), args.q)


def _presentation(args):
    from .presentation import Presentation

    return Presentation(_params(args), budget=args.budget)


def _emit(obj) -> None:
    print(obj if isinstance(obj, str) else json.dumps(obj))


# -- verbs ---------------------------------------------------------------------------------

def cmd_reduce(args) -> None:
    _emit(format_digits(reduce(_ints(args.poly), _params(args))))


def cmd_encode(args) -> None:
    _emit(format_digits(_presentation(args).encode(_ints(args.v))))


def cmd_decode(args) -> None:
    _emit(list(_presentation(args).decode(parse_digits(args.w))))


def cmd_add(args) -> None:
    pres = _presentation(args)
    _emit(format_digits(pres.add(parse_digits(args.x), parse_digits(args.y))))


def _build_target(args):
    pres = _presentation(args)
    if args.what == "equiv":
        return pres.equiv
    if args.what == "add":
        return pres.add_rel
    if args.what == "dom":
        return pres.dom
    if args.what == "phi-g":
        from .linmaps import build_phi_g_relation, on_dom

        return on_dom(build_phi_g_relation(_ints(args.g), pres), pres)
    from .semidirect import build_representation

    rep = build_representation(_matrix(args.matrix), pres)
    return rep.multiplier(args.generator)


def cmd_build(args) -> None:
    aut = _build_target(args)
    d = fa.minimize(aut, args.budget)
    text = fa.to_json(d, presentation=_params(args).header(), what=args.what)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    _emit({"what": args.what, "states": d.num_states, "transitions": d.num_transitions,
           "out": args.out})


def cmd_pell(args) -> None:
    from .pell_classify import fundamental_solution, generate_solutions

    fund = fundamental_solution(args.n, args.rhs)
    if fund is None:
        _emit({"n": args.n, "rhs": args.rhs, "fundamental": None, "solutions": []})
        return
    sols = generate_solutions(fund, args.count)
    _emit({"n": args.n, "rhs": args.rhs, "fundamental": list(fund.pair),
           "solutions": [list(s.pair) for s in sols]})


def cmd_classify(args) -> None:
    from .pell_classify import SearchBounds, enumerate_theorem3

    for fam in enumerate_theorem3(args.n, SearchBounds(args.bound, args.c_bound)):
        for rec in fam.records():
            _emit(rec)


def _spot_check_chunk(job) -> list:
    """Worker: multiplier acceptance for a list of elements; returns failures."""
    matrix, p, q, budget, elems = job
    from .presentation import Presentation
    from .semidirect import SemiElement, build_representation, generators, multiply

    rep = build_representation(matrix, Presentation(ReprParams(p, q), budget=budget))
    bad = []
    for b, h in elems:
        g = SemiElement(b, h)
        for i, gi in enumerate(generators(rep.n)):
            if not fa.accepts(rep.multiplier(i), rep.encode(g), rep.encode(multiply(g, gi, rep.A))):
                bad.append({"element": [b, list(h)], "generator": i})
    return bad


def cmd_semidirect(args) -> None:
    from .semidirect import build_representation, verify_property_a

    A = _matrix(args.matrix)
    pres = _presentation(args)
    rep = build_representation(A, pres)
    report = verify_property_a(rep)
    rng = random.Random(args.seed)
    elems = [(rng.randint(-5, 5), (rng.randint(-50, 50), rng.randint(-50, 50)))
             for _ in range(args.samples)]
    p, q = _params(args).p, _params(args).q
    chunks = [elems[i::args.workers] for i in range(args.workers)]
    jobs = [(A, p, q, args.budget, c) for c in chunks if c]
    if args.workers > 1:
        with ProcessPoolExecutor(args.workers) as ex:
            failures = [f for part in ex.map(_spot_check_chunk, jobs) for f in part]
    else:
        failures = [f for job in jobs for f in _spot_check_chunk(job)]
    report["multiplier_checks"] = {"samples": len(elems), "seed": args.seed, "failures": failures}
    report["ok"] = report["ok"] and not failures
    _emit(report)


# residue vectors (r0, r1): xi is the class of 1, eta the class of x
_SUBGROUPS = {"xi": (1, 0), "eta": (0, 1), "2xi": (2, 0), "2eta": (0, 2)}


def cmd_evidence(args) -> None:
    from .evidence import dom_sample, nerode_report, subgroup_language_sample

    pres = _presentation(args)
    if args.subgroup == "dom":
        sample = dom_sample(pres, args.maxlen)
    else:
        vec = _SUBGROUPS.get(args.subgroup) or _ints(args.subgroup)
        sample = subgroup_language_sample(pres, vec, args.maxlen, args.subgroup)
    _emit(nerode_report(sample, args.suffix_len))


def cmd_export_dot(args) -> None:
    with open(args.file) as fh:
        d = fa.from_json(fh.read())
    _emit(fa.to_dot(d))


# -- parser --------------------------------------------------------------------------------

def _add_params(sp, p: Optional[str] = None, q: Optional[int] = None) -> None:
    sp.add_argument("--p", default=p, required=p is None,
                    help="coefficients p1,...,p_{n-1} (comma separated)")
    sp.add_argument("--q", type=int, default=q, required=q is None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="torus-automata",
                                 description="Automatic presentations of Z^n and Z^n x| Z.")
    ap.add_argument("--budget", type=int, default=None,
                    help="state cap for subset constructions (env TORUS_AUTOMATA_STATE_BUDGET)")
    sub = ap.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("reduce", help="reduced polynomial equivalent to --poly")
    _add_params(sp)
    sp.add_argument("--poly", required=True, help="coefficients, lowest degree first")
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("encode", help="canonical string of an integer vector")
    _add_params(sp)
    sp.add_argument("--v", required=True, help="vector r0,r1,...")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("decode", help="integer vector of a digit string")
    _add_params(sp)
    sp.add_argument("--w", required=True, help="digit string [d0,d1,...]")
    sp.set_defaults(func=cmd_decode)

    sp = sub.add_parser("add", help="canonical string of the sum")
    _add_params(sp)
    sp.add_argument("--x", required=True)
    sp.add_argument("--y", required=True)
    sp.set_defaults(func=cmd_add)

    sp = sub.add_parser("build", help="compile, minimize and export an automaton")
    _add_params(sp)
    sp.add_argument("--what", required=True,
                    choices=["equiv", "add", "dom", "phi-g", "multiplier"])
    sp.add_argument("--g", default="0,1", help="polynomial for phi-g, lowest degree first")
    sp.add_argument("--matrix", default="1,0;0,1", help="matrix for multiplier, 'a,b;c,d'")
    sp.add_argument("--generator", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("pell", help="fundamental and further solutions")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--rhs", type=int, required=True, choices=[1, -1, 4, -4])
    sp.add_argument("--count", type=int, default=5)
    sp.set_defaults(func=cmd_pell)

    sp = sub.add_parser("classify", help="recognizable matrix families for n = p^2 + 4q")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--bound", type=int, default=12, help="bound on the family parameter (|r| or |p|)")
    sp.add_argument("--c-bound", type=int, default=50, help="bound on |c|")
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("semidirect", help="representation of Z^2 x|_A Z")
    _add_params(sp)
    sp.add_argument("--matrix", required=True, help="'a,b;c,d' (write --matrix=-3,1;-11,4 when it starts with a minus)")
    sp.add_argument("action", choices=["verify"])
    sp.add_argument("--samples", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_semidirect)

    sp = sub.add_parser("evidence", help="Nerode lower bound for a subgroup language")
    _add_params(sp, "1", 3)
    sp.add_argument("--subgroup", default="xi",
                    help="xi, eta, 2xi, 2eta, dom, or a residue vector r0,r1")
    sp.add_argument("--maxlen", type=int, default=8)
    sp.add_argument("--suffix-len", type=int, default=6)
    sp.set_defaults(func=cmd_evidence)

    sp = sub.add_parser("export-dot", help="DOT text of an exported automaton")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_export_dot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    saved = os.environ.get("TORUS_AUTOMATA_STATE_BUDGET")
    if args.budget is not None:
        os.environ["TORUS_AUTOMATA_STATE_BUDGET"] = str(args.budget)
    try:
        args.func(args)
    except (InvalidParams, ReductionBudgetExceeded, NotRecognizable, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except StateBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (CarryBoundError, CarryCycleError) as exc:
        print(f"internal invariant breach: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    finally:
        if saved is None:
            os.environ.pop("TORUS_AUTOMATA_STATE_BUDGET", None)
        else:
            os.environ["TORUS_AUTOMATA_STATE_BUDGET"] = saved
    return 0


if __name__ == "__main__":
    sys.exit(main())
