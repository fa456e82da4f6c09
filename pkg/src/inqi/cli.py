"""Command-line interface.

Exit codes: 0 when the verdict holds (supported, valid, accepted, no
failures), 1 when it does not (a witness is printed), 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .decide import DEFAULT_SEARCH_WORLDS, Sequent, countermodel_search, entails, valid
from .errors import InqError
from .harness import get_suite, run_suite, suite_names
from .models import Kind, KripkeModel, Team, load_model
from .normalform import (
    RESOLUTION_CAP,
    box_translation,
    negative_translation,
    normal_form,
    resolutions,
    standard_variant,
)
from .proofs import ProofError, ProofSystem, check_proof, load_proof
from .semantics import Evaluator, TruthValue, supports, supports_mt0, truth_value
from .syntax import Dialect, Formula, has_modality, is_standard, parse_formula, render_formula, to_tree

OK, NO, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Out:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, data: dict, text: str) -> None:
        if self.as_json:
            print(json.dumps(data, indent=2, sort_keys=True))
        else:
            print(text)


def _formula(text: str) -> Formula:
    # the widest dialect; commands that cannot take modalities reject them later
    return parse_formula(text, Dialect.MT0)


def _team(m: KripkeModel, spec: str) -> Team:
    names = [s.strip() for s in spec.split(",") if s.strip()]
    return m.team(names)


def describe_model(m: KripkeModel, team: Team | None = None) -> str:
    lines = [f"  kind: {m.kind.value}", f"  worlds: {', '.join(m.worlds)}"]
    order = [f"{a} <= {b}" for a, b in m.pairs() if a != b]
    lines.append(f"  order: {', '.join(order) if order else '(identity)'}")
    val = [f"{w}: {{{', '.join(sorted(v))}}}" for w, v in zip(m.worlds, m.valuation)]
    lines.append(f"  valuation: {'; '.join(val)}")
    if team is not None:
        lines.append(f"  team: {{{', '.join(m.team_names(team))}}}")
    return "\n".join(lines)


def _witness(cm) -> dict | None:
    if cm is None:
        return None
    m, t = cm
    return {"model": m.to_dict(), "team": m.team_names(t)}


# --------------------------------------------------------------------------
# commands


def _eval_model(m: KripkeModel, system: str | None) -> tuple[KripkeModel, str]:
    system = system or ("mt0" if m.kind is Kind.S4 else "inqi")
    if system == "inqb" and m.kind is not Kind.CLASSICAL:
        raise UsageError(f"system inqb needs a classical model, got {m.kind.value}")
    if system == "inqi" and m.kind is Kind.S4:
        raise UsageError("s4 models are evaluated with --system mt0")
    if system == "mt0" and m.kind is not Kind.S4:
        m = m.as_kind(Kind.S4)
    return m, system


def cmd_eval(args, out: _Out) -> int:
    m, system = _eval_model(load_model(args.model), args.system)
    f = _formula(args.formula)
    t = _team(m, args.team)
    ok = supports_mt0(m, t, f) if system == "mt0" else supports(m, t, f)
    team = "{" + ", ".join(m.team_names(t)) + "}"
    word = "supports" if ok else "does not support"
    out.emit(
        {"supported": ok, "system": system, "team": m.team_names(t), "formula": render_formula(f)},
        f"{team} {word} {render_formula(f)}",
    )
    return OK if ok else NO


def cmd_truth(args, out: _Out) -> int:
    m, system = _eval_model(load_model(args.model), args.system)
    f = _formula(args.formula)
    w = m.index(args.world)
    if system == "mt0":
        ok = Evaluator(m, "mt0").supports(1 << w, f)
        value = TruthValue.TRUE if ok else TruthValue.FALSE
    else:
        value = truth_value(m, w, f)
        ok = value is TruthValue.TRUE
    out.emit(
        {"true": ok, "value": value.value, "world": m.worlds[w], "formula": render_formula(f)},
        f"{render_formula(f)} at {m.worlds[w]}: {'true' if ok else 'not true'} (truth value {value.value})",
    )
    return OK if ok else NO


def cmd_resolutions(args, out: _Out) -> int:
    f = _formula(args.formula)
    res = resolutions(f, args.cap)
    out.emit(
        {"formula": render_formula(f), "resolutions": [render_formula(a) for a in res]},
        "\n".join(render_formula(a) for a in res),
    )
    return OK


def cmd_nf(args, out: _Out) -> int:
    f = _formula(args.formula)
    nf = normal_form(f, args.cap)
    out.emit({"formula": render_formula(f), "normal_form": render_formula(nf)}, render_formula(nf))
    return OK


def cmd_translate(args, out: _Out) -> int:
    f = _formula(args.formula)
    if args.negative:
        g, name = negative_translation(f, args.cap), "negative"
    elif args.box:
        g, name = box_translation(f), "box"
    else:
        g, name = standard_variant(f), "standard-variant"
    out.emit({"formula": render_formula(f), "translation": name, "result": render_formula(g)}, render_formula(g))
    return OK


def _verdict_text(label: str, v, cm_bound: int) -> str:
    if v.valid:
        text = f"{label}: valid ({v.system.value})"
        if v.resolution is not None:
            text += f"\n  witness resolution: {render_formula(v.resolution)}"
        return text
    text = f"{label}: invalid ({v.system.value})"
    if v.countermodel is not None:
        m, t = v.countermodel
        text += "\n  countermodel:\n" + describe_model(m, t)
    elif cm_bound:
        text += f"\n  no countermodel within {cm_bound} worlds"
    return text


def cmd_valid(args, out: _Out) -> int:
    f = _formula(args.formula)
    bound = args.countermodel
    v = valid(f, args.system, max_worlds=bound or None, cap=args.cap)
    out.emit({"formula": render_formula(f), **v.to_dict()}, _verdict_text(render_formula(f), v, bound))
    return OK if v.valid else NO


def cmd_entails(args, out: _Out) -> int:
    premises = [_formula(p) for p in args.premises.split(";") if p.strip()]
    s = Sequent(premises, _formula(args.conclusion))
    bound = args.countermodel
    v = entails(s, args.system, max_worlds=bound or None, cap=args.cap, method=args.method)
    out.emit({"sequent": str(s), **v.to_dict()}, _verdict_text(str(s), v, bound))
    return OK if v.valid else NO


def cmd_countermodel(args, out: _Out) -> int:
    f = _formula(args.formula)
    premises = [_formula(p) for p in (args.premises or "").split(";") if p.strip()]
    cm = countermodel_search(f, args.system, args.max_worlds, premises)
    if cm is None:
        text = f"no countermodel within {args.max_worlds} worlds"
    else:
        text = "countermodel:\n" + describe_model(*cm)
    out.emit({"formula": render_formula(f), "system": args.system, "countermodel": _witness(cm)}, text)
    return OK if cm is None else NO


def cmd_check_proof(args, out: _Out) -> int:
    p = load_proof(args.proof)
    try:
        seq = check_proof(p, args.system)
    except ProofError as exc:
        data = {"accepted": False, "system": args.system, "error": type(exc).__name__,
                "path": list(exc.path), "message": str(exc)}
        if hasattr(exc, "rule"):
            data["rule"] = exc.rule
        if hasattr(exc, "condition"):
            data["condition"] = exc.condition
        detail = f"({exc.rule})" if hasattr(exc, "rule") else ""
        out.emit(data, f"rejected: {type(exc).__name__}{detail}: {exc}")
        return NO
    out.emit(
        {"accepted": True, "system": args.system, "sequent": str(seq),
         "premises": [render_formula(a) for a in seq.premises],
         "conclusion": render_formula(seq.conclusion)},
        f"accepted: {seq}",
    )
    return OK


def cmd_properties(args, out: _Out) -> int:
    if args.list:
        rows = [(n, get_suite(n)) for n in suite_names()]
        out.emit(
            {"suites": [{"name": n, "claim": s.claim, "cases": s.cases} for n, s in rows]},
            "\n".join(f"{n:32s} {s.cases:5d}  {s.claim}" for n, s in rows),
        )
        return OK
    if not args.suite:
        raise UsageError("properties needs --suite NAME (or --list)")
    names = suite_names() if args.suite == ["all"] else args.suite
    reports = []
    for name in names:
        suite = get_suite(name)
        overrides = {"seed": args.seed}
        if args.max_worlds is not None:
            overrides["max_worlds"] = args.max_worlds
        if args.max_depth is not None:
            overrides["max_depth"] = args.max_depth
        reports.append(run_suite(name, suite.config(**overrides), args.cases))
    out.emit(
        {"reports": [r.to_dict() for r in reports], "ok": all(r.ok for r in reports)},
        "\n".join(r.to_text() for r in reports),
    )
    return OK if all(r.ok for r in reports) else NO


def cmd_parse(args, out: _Out) -> int:
    dialect = Dialect(args.dialect)
    f = parse_formula(args.formula, dialect)
    text = render_formula(f)
    std = is_standard(f, dialect)
    out.emit(
        {"formula": text, "tree": to_tree(f), "standard": std, "modal": has_modality(f)},
        f"{text}\n  standard: {'yes' if std else 'no'}",
    )
    return OK


# --------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    capped = argparse.ArgumentParser(add_help=False)
    capped.add_argument("--cap", type=int, default=RESOLUTION_CAP, help="resolution cap")

    ap = argparse.ArgumentParser(prog="inqi", description="Intuitionistic inquisitive logic toolkit.")
    ap.add_argument("--version", action="version", version=f"inqi {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help, parents=()):
        p = sub.add_parser(name, help=help, parents=[common, *parents])
        p.set_defaults(fn=fn)
        return p

    p = add("eval", cmd_eval, "decide whether a team supports a formula")
    p.add_argument("-m", "--model", required=True, help="model JSON file or fixture name")
    p.add_argument("-t", "--team", required=True, help='comma-separated worlds; "" is the empty team')
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--system", choices=["inqi", "inqb", "mt0"])

    p = add("truth", cmd_truth, "truth of a formula at a world")
    p.add_argument("-m", "--model", required=True)
    p.add_argument("-w", "--world", required=True)
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--system", choices=["inqi", "inqb", "mt0"])

    p = add("resolutions", cmd_resolutions, "list the resolutions of a formula", [capped])
    p.add_argument("-f", "--formula", required=True)

    p = add("nf", cmd_nf, "inquisitive normal form", [capped])
    p.add_argument("-f", "--formula", required=True)

    p = add("translate", cmd_translate, "negative, box or standard-variant translation", [capped])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--negative", action="store_true")
    g.add_argument("--box", action="store_true")
    g.add_argument("--standard-variant", action="store_true")
    p.add_argument("-f", "--formula", required=True)

    p = add("valid", cmd_valid, "decide validity", [capped])
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--system", choices=["inqi", "inqb", "ipl", "cpl"], default="inqi")
    p.add_argument("--countermodel", type=int, default=DEFAULT_SEARCH_WORLDS, metavar="N",
                   help="search countermodels up to N worlds when invalid (0 disables)")

    p = add("entails", cmd_entails, "decide finite-premise entailment", [capped])
    p.add_argument("-p", "--premises", required=True, help='premises separated by ";"')
    p.add_argument("-c", "--conclusion", required=True)
    p.add_argument("--system", choices=["inqi", "inqb", "ipl", "cpl"], default="inqi")
    p.add_argument("--countermodel", type=int, default=DEFAULT_SEARCH_WORLDS, metavar="N")
    p.add_argument("--method", choices=["curried", "cases"], default="curried")

    p = add("countermodel", cmd_countermodel, "search for a countermodel by enumeration")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("-p", "--premises", help='premises the team must support, separated by ";"')
    p.add_argument("--system", choices=["inqi", "inqb", "mt0"], default="inqi")
    p.add_argument("--max-worlds", type=int, default=DEFAULT_SEARCH_WORLDS)

    p = add("check-proof", cmd_check_proof, "check a natural-deduction proof")
    p.add_argument("-p", "--proof", required=True, help="proof JSON file or corpus name")
    p.add_argument("--system", choices=[s.value for s in ProofSystem], default="inqi")

    p = add("properties", cmd_properties, "run property suites")
    p.add_argument("--suite", action="append", help='suite name (repeatable; "all" runs every suite)')
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cases", type=int)
    p.add_argument("--max-worlds", type=int)
    p.add_argument("--max-depth", type=int)
    p.add_argument("--list", action="store_true", help="list the suite catalog")

    p = add("parse", cmd_parse, "parse and pretty-print a formula")
    p.add_argument("-f", "--formula", required=True)
    p.add_argument("--dialect", choices=[d.value for d in Dialect], default="inqi")
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    out = _Out(args.json)
    try:
        return args.fn(args, out)
    except (InqError, UsageError, OSError, ValueError) as exc:
        msg = f"{type(exc).__name__}: {exc}"
        if args.json:
            print(json.dumps({"error": type(exc).__name__, "message": str(exc)}))
        print(f"inqi {args.command}: {msg}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())
