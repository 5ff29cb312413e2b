"""Command line entry point: ``freelab <subcommand> [flags]``.

Exit codes: 0 when a verdict or table was produced, 2 on input errors and 3
when a resource cap was hit.
"""

from __future__ import annotations

import argparse
import sys

from .experiments import DEMOS, FORMATS, ExperimentConfig, dims_table, mlm_batch_report, run_demo
from .field import FieldError
from .freeness import (
    SCOPES,
    GeneratorFrame,
    ResourceLimitError,
    freeness_test,
    minors,
    mlm_check,
    parametric_matrix,
    specialization_search,
)
from .parsing import format_element, format_monomial, format_term_word, parse_element, parse_elements
from .report import emit_report
from .schreier import Move, apply_script
from .varieties import MAGMA_VARIETIES, variety_basis

EXIT_OK, EXIT_INPUT, EXIT_RESOURCE = 0, 2, 3


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default="Q(t)", help="Q, GF(p), Q(t1,...), GF(p)(t...)")
    p.add_argument("--variety", default="lie", help="variety tag")
    p.add_argument("--n", type=int, default=2, help="number of host generators")
    p.add_argument("--degree", type=int, default=4, help="degree bound")
    p.add_argument("--scope", default="full-field", choices=SCOPES)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--budget", type=int, default=100, help="search trials or batch size")
    p.add_argument("--format", default="text", choices=FORMATS)
    p.add_argument("--output", help="write the report here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="freelab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("basis", parents=[common], help="list basis monomials of one degree")
    p = sub.add_parser("dims", parents=[common], help="basis dimension table")
    p.add_argument("--all-varieties", action="store_true", help="tabulate every variety")

    p = sub.add_parser("freeness", parents=[common], help="freeness test up to --degree")
    _element_inputs(p)
    p = sub.add_parser("mlm-check", parents=[common], help="base-free implies full-free check")
    _element_inputs(p)
    p.add_argument("--random", type=int, metavar="COUNT", help="run COUNT seeded random instances")

    for name, text in (("minors", "minors of the parametric matrix"), ("specialize", "search a free rational point")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("frame", help="frame file: one line per y_i, entries a_ij separated by ';'")
        if name == "minors":
            p.add_argument("--size", type=int, help="minor size (default: row count)")
            p.add_argument("--mode", default="full", choices=("full", "search"))

    p = sub.add_parser("transform", parents=[common], help="apply elementary moves to a tuple")
    p.add_argument("tuple", help="tuple file, one element per line")
    p.add_argument("script", help="move script: 'linear a,b;c,d' or 'subst <expr>' per line")

    p = sub.add_parser("demo", parents=[common], help="run a named demonstration")
    p.add_argument("name", choices=DEMOS)
    return parser


def _element_inputs(p):
    p.add_argument("elements", nargs="?", help="file with one element per line ('-' for stdin)")
    p.add_argument("-e", "--element", action="append", default=[], help="inline element text")
    p.add_argument("--unital", action="store_true", help="adjoin the unit (special Jordan only)")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _elements(args, cfg: ExperimentConfig, fld):
    elems = []
    if args.elements:
        elems.extend(parse_elements(_read(args.elements), cfg.variety, cfg.n, fld))
    elems.extend(parse_element(t, cfg.variety, cfg.n, fld) for t in args.element)
    if not elems:
        raise ValueError("no elements given (file argument or --element)")
    return elems


def _frame(args, cfg: ExperimentConfig) -> GeneratorFrame:
    K = cfg.make_field().base_field
    vectors = []
    for line in _read(args.frame).splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            vectors.append([parse_element(x, cfg.variety, cfg.n, K) for x in line.split(";")])
    return GeneratorFrame(vectors)


def cmd_basis(args, cfg):
    basis = variety_basis(cfg.variety, cfg.n, cfg.degree)
    rows = [{"index": i, "monomial": format_monomial(bm)} for i, bm in enumerate(basis, 1)]
    return {"kind": "basis", "variety": cfg.variety, "n": cfg.n, "degree": cfg.degree,
            "dim": len(basis), "basis": rows}


def cmd_dims(args, cfg):
    varieties = None if args.all_varieties else [cfg.variety]
    return {"kind": "dims", "n": cfg.n, "rows": dims_table(cfg.n, cfg.degree, varieties)}


def cmd_freeness(args, cfg):
    fld = cfg.make_field()
    elems = _elements(args, cfg, fld)
    rep = freeness_test(elems, cfg.variety, cfg.degree, cfg.scope, unital=args.unital)
    rep.seed = cfg.seed
    coeff = fld if cfg.scope == "full-field" else fld.base_field
    return rep.to_dict(coeff)


def cmd_mlm_check(args, cfg):
    fld = cfg.make_field()
    if args.random:
        return mlm_batch_report(cfg.variety, fld, args.random, cfg.seed)
    elems = _elements(args, cfg, fld)
    return mlm_check(cfg.variety, elems, cfg.degree, unital=args.unital).to_dict(fld)


def cmd_minors(args, cfg):
    frame = _frame(args, cfg)
    if frame.variety not in MAGMA_VARIETIES:
        raise ValueError("minors needs a variety whose monomials are magma words")
    monos = [
        bm.preimage for e in range(1, cfg.degree + 1) for bm in variety_basis(frame.variety, frame.n, e)
    ]
    P = parametric_matrix(frame, monos, cfg.degree)
    polys = [] if P.whole_space_dependent else minors(P, args.size, args.mode)
    rows, cols = P.shape
    return {
        "kind": "minors",
        "variety": str(frame.variety),
        "degree": cfg.degree,
        "rows": rows,
        "cols": cols,
        "whole_space_dependent": P.whole_space_dependent,
        "monomials": [format_term_word(frame.variety, w) for w in monos],
        "minors": [P.field.to_str(m) for m in polys],
        "verdict": "locus-is-everything" if P.whole_space_dependent or not any(polys) else "proper-locus",
    }


def cmd_specialize(args, cfg):
    frame = _frame(args, cfg)
    res = specialization_search(frame, None, cfg.degree, cfg.budget, cfg.seed)
    out = {"kind": "specialize", "variety": str(frame.variety), "degree": cfg.degree,
           "seed": cfg.seed, "trials": res.trials, "point": res.point}
    if res.exhausted:
        out["verdict"] = "exhausted"
    else:
        out["verdict"] = "free-point-found"
        out["elements"] = [format_element(e) for e in frame.specialize(res.point)]
        out["report"] = res.report.to_dict(frame.field)
    return out


def parse_script(text: str, tuple_len: int, variety, fld) -> list[Move]:
    moves = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        op, _, rest = line.partition(" ")
        if op == "linear":
            m = [[fld(x.strip()) for x in row.split(",")] for row in rest.split(";")]
            moves.append(Move("linear", m))
        elif op == "subst":
            moves.append(Move("subst", parse_element(rest, variety, tuple_len, fld)))
        else:
            raise ValueError(f"script line {lineno}: unknown move {op!r}")
    return moves


def cmd_transform(args, cfg):
    fld = cfg.make_field()
    before = parse_elements(_read(args.tuple), cfg.variety, cfg.n, fld)
    moves = parse_script(_read(args.script), len(before), cfg.variety, fld)
    after = apply_script(before, moves)
    out = {"kind": "transform", "variety": cfg.variety, "moves": len(moves),
           "before": [format_element(e) for e in before],
           "after": [format_element(e) for e in after]}
    if len(before) >= 2:
        rb = freeness_test(before, cfg.variety, cfg.degree, cfg.scope)
        ra = freeness_test(after, cfg.variety, cfg.degree, cfg.scope)
        out["before_verdict"] = rb.verdict
        out["after_verdict"] = ra.verdict
        out["verdict"] = "preserved" if rb.verdict == ra.verdict else "changed"
    return out


def cmd_demo(args, cfg):
    return run_demo(args.name, cfg)


COMMANDS = {
    "basis": cmd_basis,
    "dims": cmd_dims,
    "freeness": cmd_freeness,
    "mlm-check": cmd_mlm_check,
    "minors": cmd_minors,
    "specialize": cmd_specialize,
    "transform": cmd_transform,
    "demo": cmd_demo,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = ExperimentConfig(
            field=args.field,
            variety=args.variety,
            n=args.n,
            degree=args.degree,
            scope=args.scope,
            seed=args.seed,
            budget=args.budget,
            demo=getattr(args, "name", None),
            format=args.format,
        )
        report = COMMANDS[args.command](args, cfg)
    except ResourceLimitError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FieldError, ValueError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = emit_report(report, cfg.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
