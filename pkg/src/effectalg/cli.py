"""Command-line front end.

Exit codes: 0 on a successful computation, 1 when ``--expect-clean`` was
given and the result is not clean, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import model
from .instances import E0Instance, boolean_instance, interval_instance
from .kernel import AlgebraInstance, ConfigurationError, verify
from .model import Fragment
from .mutations import FIXTURES, RULE_IDS, parse_mutation
from .notation import ParseError, parse_chain, parse_element
from .order import (
    chain_meet_analysis,
    check_sharp_closure,
    join_in_fragment,
    lower_bounds,
    meet_in_fragment,
    refute_least_sharp_dominator,
    upper_bounds,
)

VERBS = ("elements", "op", "verify", "order", "dominate", "chain-meet", "sharp-closure")


class UsageError(Exception):
    pass


def _emit(out, fmt: str, payload: dict, text: str) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def _fragment(args) -> Fragment:
    if args.n_max < 1 or args.k_max < 1:
        raise UsageError("--n-max and --k-max must be positive")
    return Fragment(args.n_max, args.k_max)


def _instance(args) -> AlgebraInstance:
    mutation = parse_mutation(args.mutate) if getattr(args, "mutate", None) else None
    if args.instance == "e0":
        return E0Instance(_fragment(args), mutation)
    if mutation is not None:
        raise UsageError("--mutate only applies to --instance e0")
    if args.instance == "boolean":
        return boolean_instance(args.k_max)
    return interval_instance(args.denominator)


def _element(inst: AlgebraInstance, text: str):
    if isinstance(inst, E0Instance):
        return parse_element(text)
    try:
        return inst.lookup(text)
    except KeyError:
        raise UsageError(f"{text!r} is not an element of {inst.label}") from None


def _cmd_elements(args, out) -> int:
    inst = _instance(args)
    items = [inst.render(x) for x in inst.carrier]
    _emit(out, args.format, {"instance": inst.label, "carrier_size": len(items), "elements": items},
          "\n".join(items) + f"\n{len(items)} elements")
    return 0


def _cmd_op(args, out) -> int:
    name = args.operation
    unary = name == "ortho"
    if unary and len(args.args) != 1 or not unary and len(args.args) != 2:
        raise UsageError(f"op {name} takes {1 if unary else 2} element(s)")
    xs = [parse_element(t) for t in args.args]
    payload = {"op": name, "args": [x.render() for x in xs]}
    if name == "oplus":
        res = model.oplus(*xs)
        text = "undefined" if res is None else res.render()
        payload["result"] = text
    elif name == "circ":
        text = model.circ(*xs).render()
        payload["result"] = text
    elif name == "ortho":
        text = model.orthosupplement(xs[0]).render()
        payload["result"] = text
    elif name == "leq":
        w = model.witness(*xs)
        payload["result"] = w is not None
        payload["witness"] = None if w is None else w.render()
        text = "false" if w is None else f"true (witness {w.render()})"
    elif name == "orthogonal":
        payload["result"] = model.orthogonal(*xs)
        text = str(payload["result"]).lower()
    else:
        payload["result"] = model.commutes(*xs)
        text = str(payload["result"]).lower()
    _emit(out, args.format, payload, text)
    return 0


def _cmd_verify(args, out) -> int:
    inst = _instance(args)
    report = verify(inst, args.families, workers=args.workers, stop_after=args.stop_after)
    _emit(out, args.format, report.to_json(), report.to_text())
    return 1 if args.expect_clean and not report.clean else 0


def _cmd_order(args, out) -> int:
    inst = _instance(args)
    xs = [_element(inst, t) for t in args.args]
    rel = args.relation
    r = inst.render
    if rel == "leq":
        if len(xs) != 2:
            raise UsageError("order leq takes two elements")
        w = inst.witness(*xs)
        payload = {"relation": "leq", "args": [r(x) for x in xs], "result": w is not None,
                   "witness": None if w is None else r(w)}
        text = "false" if w is None else f"true (witness {r(w)})"
    elif rel in ("upper", "lower"):
        if len(xs) != 1:
            raise UsageError(f"order {rel} takes one element")
        fn = upper_bounds if rel == "upper" else lower_bounds
        found = [r(y) for y in fn(xs[0], inst, sharp_only=args.sharp_only)]
        payload = {"relation": rel, "args": [r(xs[0])], "sharp_only": args.sharp_only,
                   "bounds": found, "scope": "in-fragment"}
        text = "\n".join(found) + f"\n{len(found)} {rel} bounds (in-fragment)"
    else:
        if not xs:
            raise UsageError(f"order {rel} needs at least one element")
        rep = (meet_in_fragment if rel == "meet" else join_in_fragment)(xs, inst)
        payload, text = rep.to_json(), rep.to_text()
    _emit(out, args.format, payload, text)
    return 0


def _cmd_dominate(args, out) -> int:
    cert = refute_least_sharp_dominator(parse_element(args.target), _fragment(args))
    _emit(out, args.format, cert.to_json(), cert.to_text())
    return 1 if args.expect_clean and cert.refuted else 0


def _cmd_chain(args, out) -> int:
    report = chain_meet_analysis(parse_chain(args.chain), _fragment(args))
    _emit(out, args.format, report.to_json(), report.to_text())
    return 0


def _cmd_sharp_closure(args, out) -> int:
    report = check_sharp_closure(_instance(args), args.max_subset_size)
    _emit(out, args.format, report.to_json(), report.to_text())
    return 1 if args.expect_clean and report.counterexamples else 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-max", type=int, default=4, help="largest index in the fragment (default 4)")
    common.add_argument("--k-max", type=int, default=3,
                        help="fragment ground set {1..K}; also the boolean instance size (default 3)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    inst = argparse.ArgumentParser(add_help=False)
    inst.add_argument("--instance", choices=("e0", "boolean", "interval"), default="e0")
    inst.add_argument("--denominator", type=int, default=6, help="grid denominator for the interval instance")
    inst.add_argument("--mutate", metavar="RULE",
                      help="fixture name or <rule-id>[:<override>]; see 'verify --list-mutations'")

    parser = argparse.ArgumentParser(prog="effectalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("elements", parents=[common, inst], help="list the carrier")
    p.set_defaults(run=_cmd_elements)

    p = sub.add_parser("op", parents=[common], help="evaluate an operation on E0 elements")
    p.add_argument("operation", choices=("oplus", "circ", "ortho", "leq", "orthogonal", "commutes"))
    p.add_argument("args", nargs="+", metavar="ELEMENT")
    p.set_defaults(run=_cmd_op)

    p = sub.add_parser("verify", parents=[common, inst], help="check EA/SEA axioms")
    p.add_argument("families", choices=("ea", "sea", "all"), nargs="?", default="all")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--stop-after", type=int, default=None, help="stop after this many violations")
    p.add_argument("--expect-clean", action="store_true", help="exit 1 if any violation is found")
    p.add_argument("--list-mutations", action="store_true", help="print rule ids and fixtures, then exit")
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("order", parents=[common, inst], help="order relation, bounds, meets, joins")
    p.add_argument("relation", choices=("leq", "upper", "lower", "meet", "join"))
    p.add_argument("args", nargs="*", metavar="ELEMENT")
    p.add_argument("--sharp-only", action="store_true")
    p.set_defaults(run=_cmd_order)

    p = sub.add_parser("dominate", parents=[common], help="refute a least sharp dominator in E0")
    p.add_argument("target")
    p.add_argument("--expect-clean", action="store_true", help="exit 1 if the target has no least sharp dominator")
    p.set_defaults(run=_cmd_dominate)

    p = sub.add_parser("chain-meet", parents=[common], help="prefix meets of a chain of d_{L,1}")
    p.add_argument("--chain", required=True, help='e.g. "{1};{1,2};{1,2,3}"')
    p.set_defaults(run=_cmd_chain)

    p = sub.add_parser("sharp-closure", parents=[common, inst], help="meets/joins of sharp elements are sharp")
    p.add_argument("--max-subset-size", type=int, default=3)
    p.add_argument("--expect-clean", action="store_true")
    p.set_defaults(run=_cmd_sharp_closure)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if argv[:1] == ["verify"] and "--list-mutations" in argv:
        out.write("rules: " + ", ".join(RULE_IDS) + "\n")
        out.write("overrides: identity, index+1, undefined, left, const:<element>\n")
        for name, spec in FIXTURES.items():
            out.write(f"fixture {name} = {spec.render()}\n")
        return 0
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args, out)
    except (UsageError, ParseError, ConfigurationError, ValueError) as exc:
        err.write(f"effectalg {args.verb}: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
