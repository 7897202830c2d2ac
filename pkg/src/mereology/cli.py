"""Command-line interface: ``mereology <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
import time

from .cells import dump_disjunction
from .formula import FormulaError, TheoryMode, parse, render
from .models import DescriptorError, MalformedSplit, PresentationMismatch, get_model
from .models.presentations import format_size
from .qe import ResourceLimitError, decide, equivalent, qe_normal_form
from .sizesets import INF

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR, EXIT_RESOURCE = 0, 1, 2, 3


class CliError(Exception):
    pass


def _mode(text: str) -> TheoryMode:
    try:
        return TheoryMode.parse(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"mode must be 'set' or 'class', not {text!r}") from None


def _int_list(text: str) -> list:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated naturals, got {text!r}") from None


def _rungs(text: str) -> list:
    out = []
    for part in text.split(";"):
        values = _int_list(part)
        if len(values) != 3:
            raise argparse.ArgumentTypeError(f"a rung is C,P,T; got {part!r}")
        out.append(tuple(values))
    return out


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def _load_elems(model, path: str) -> tuple:
    """Element list from a file: a list of descriptors or a name -> descriptor object."""
    data = _load_json(path)
    if isinstance(data, dict) and "presentation" not in data:
        names = list(data)
        descriptors = [data[n] for n in names]
    elif isinstance(data, list):
        descriptors = data
        names = [f"p{i}" for i in range(len(data))]
    else:
        descriptors, names = [data], ["p0"]
    return names, [model.from_json(d) for d in descriptors]


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _print_bool(value: bool) -> int:
    print("true" if value else "false")
    return EXIT_TRUE if value else EXIT_FALSE


# --------------------------------------------------------------------------
# commands


def cmd_decide(args) -> int:
    return _print_bool(decide(parse(args.formula, args.mode), args.mode))


def cmd_qe(args) -> int:
    f = parse(args.formula, args.mode)
    print(dump_disjunction(qe_normal_form(f, args.mode)))
    return EXIT_TRUE


def cmd_equiv(args) -> int:
    return _print_bool(equivalent(parse(args.left, args.mode), parse(args.right, args.mode), args.mode))


def cmd_type(args) -> int:
    model = get_model(args.model)
    names, elems = _load_elems(model, args.elems)
    print(model.cell_sizes(elems, names).dump())
    return EXIT_TRUE


def _read_split(path: str) -> dict:
    data = _load_json(path)
    if not isinstance(data, dict):
        raise MalformedSplit("a split file holds an object")
    split = {}
    for mask, demand in data.get("cells", {}).items():
        split[int(mask)] = demand
    if "exterior" in data:
        ext = data["exterior"]
        split[0] = ext if isinstance(ext, list) else [ext]
    return split


def cmd_realize(args) -> int:
    from .models import Unrealizable

    model = get_model(args.model)
    _, params = _load_elems(model, args.params)
    result = model.realize_type(params, _read_split(args.split))
    if isinstance(result, Unrealizable):
        demand = " ".join(format_size(v) if v is not None else "-" for v in result.demand)
        print(f"UNREALIZABLE {result.cell} demand {demand}: {result.reason}")
        return EXIT_FALSE
    print(_dumps(model.to_json(result)))
    return EXIT_TRUE


def cmd_check_sat(args) -> int:
    from .saturation import check_criterion

    report = check_criterion(get_model(args.model), args.trials, args.seed)
    print(report.dump())
    return EXIT_TRUE if report.saturated else EXIT_FALSE


def cmd_iso(args) -> int:
    from .saturation import Obstruction, back_and_forth, format_pair_table, verify_partial_iso

    left, right = get_model(args.left), get_model(args.right)
    result = back_and_forth(left, right, args.steps)
    if isinstance(result, Obstruction):
        if len(result.partial):
            print(format_pair_table(left, right, result.partial))
        print(result.describe())
        return EXIT_FALSE
    print(format_pair_table(left, right, result))
    if args.verify:
        problems = verify_partial_iso(left, right, result)
        for p in problems:
            print(f"VERIFY FAIL {p}")
        print(f"verified {len(result)} pairs: {'ok' if not problems else 'FAILED'}")
        if problems:
            return EXIT_FALSE
    return EXIT_TRUE


def cmd_characteristic(args) -> int:
    from .saturation import characteristic

    value = characteristic(get_model(args.model))
    print("inf" if value is INF else value)
    return EXIT_TRUE


def cmd_oracle_compare(args) -> int:
    from .corpus import generate_corpus
    from .oracle import Unstable, bounded_eval_set, stabilized_decide_class

    corpus = generate_corpus(args.mode, args.corpus_size, args.seed)
    agree = disagree = unstable = 0
    for i, f in enumerate(corpus):
        if args.mode is TheoryMode.CLASS:
            oracle = stabilized_decide_class(f, args.window)
        else:
            oracle = bounded_eval_set(f, None, args.rungs)
        verdict = decide(f, args.mode)
        if isinstance(oracle, Unstable):
            unstable += 1
            status, shown = "UNSTABLE", str(oracle)
        elif oracle == verdict:
            agree += 1
            status, shown = "agree", "true" if oracle else "false"
        else:
            disagree += 1
            status, shown = "DISAGREE", "true" if oracle else "false"
        print(f"{i}\t{status}\tdecide={'true' if verdict else 'false'}\toracle={shown}\t{render(f)}")
    print(f"agree={agree} disagree={disagree} unstable={unstable}")
    return EXIT_TRUE if disagree == 0 else EXIT_FALSE


def cmd_demo(args) -> int:
    from .demos import DEMOS

    return DEMOS[args.name]()


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .demos import DEMOS
    from .oracle import DEFAULT_RUNGS, DEFAULT_WINDOW

    p = argparse.ArgumentParser(prog="mereology", description="Decide and explore set and class mereology.")
    sub = p.add_subparsers(dest="command", required=True)

    def mode_arg(sp):
        sp.add_argument("--mode", type=_mode, default=TheoryMode.SET, help="set (default) or class")

    sp = sub.add_parser("decide", help="truth of a sentence in the complete theory")
    mode_arg(sp)
    sp.add_argument("formula")
    sp.set_defaults(func=cmd_decide)

    sp = sub.add_parser("qe", help="quantifier-free cell normal form")
    mode_arg(sp)
    sp.add_argument("formula")
    sp.set_defaults(func=cmd_qe)

    sp = sub.add_parser("equiv", help="whether two formulas are equivalent over the theory")
    mode_arg(sp)
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_equiv)

    sp = sub.add_parser("type", help="cell sizes of a tuple of elements")
    sp.add_argument("--model", required=True)
    sp.add_argument("--elems", required=True, help="JSON file with element descriptors")
    sp.set_defaults(func=cmd_type)

    sp = sub.add_parser("realize", help="build an element with prescribed cell splits")
    sp.add_argument("--model", required=True)
    sp.add_argument("--params", required=True)
    sp.add_argument("--split", required=True)
    sp.set_defaults(func=cmd_realize)

    sp = sub.add_parser("check-sat", help="saturation criterion report")
    sp.add_argument("--model", required=True)
    sp.add_argument("--trials", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_check_sat)

    sp = sub.add_parser("iso", help="back-and-forth partial isomorphism")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--steps", type=int, default=20)
    sp.add_argument("--verify", action="store_true", help="run the independent verifier")
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("characteristic", help="largest family of disjoint infinite elements")
    sp.add_argument("--model", required=True)
    sp.set_defaults(func=cmd_characteristic)

    sp = sub.add_parser("oracle-compare", help="compare decide with the brute-force oracle")
    mode_arg(sp)
    sp.add_argument("--corpus-size", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--window", type=_int_list, default=list(DEFAULT_WINDOW))
    sp.add_argument("--rungs", type=_rungs, default=list(DEFAULT_RUNGS), help="e.g. '1,1,5;2,1,6;3,2,7'")
    sp.set_defaults(func=cmd_oracle_compare)

    sp = sub.add_parser("demo", help="replay a named result")
    sp.add_argument("name", choices=sorted(DEMOS))
    sp.set_defaults(func=cmd_demo)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_TRUE
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FormulaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (CliError, DescriptorError, MalformedSplit, PresentationMismatch, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
