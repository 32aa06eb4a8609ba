"""Command-line front end.

Exit codes: 0 for an affirmative answer, 1 for a negative one, 2 for errors
and inconclusive searches.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import corpus
from .bisim import BisimConfig, bounded_bisim
from .checker import PointedState, check, check_at
from .enumerate import EnumSpec, decide_upto
from .fol import (TranslationContext, eval_fol, export_tptp, sequence_vars, simplify,
                  to_sexpr, translate)
from .game import Game, certificate, schedule_forces_win, solve
from .model import ModelError, ModelFile, parse_model, render_model
from .syntax import ParseError, parse_formula, render_formula

OK, NEGATIVE, ERROR = 0, 1, 2


class CliError(Exception):
    pass


def load_model_file(path: str) -> ModelFile:
    """Read a model file; names of bundled models (``fig1``, ``fig2.slg``) work too."""
    if os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return parse_model(fh.read())
    stem = os.path.basename(path)
    stem = stem[:-4] if stem.endswith(".slg") else stem
    if stem in corpus.MODEL_FILES:
        return corpus.load_model(stem)
    raise CliError(f"no such model file: {path}")


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [t for t in text.replace(",", " ").split() if t]


def _state(mf: ModelFile, at: str | None, seq: str | None) -> PointedState:
    if at and seq:
        raise CliError("give either --at or --seq, not both")
    nodes = _split(seq) if seq else [at or mf.start or mf.model.nodes[0]]
    try:
        return PointedState(mf.model, tuple(nodes))
    except ModelError as exc:
        raise CliError(str(exc)) from exc


class Output:
    def __init__(self, as_json: bool):
        self.as_json = as_json

    def emit(self, text: str, **record):
        if self.as_json:
            print(json.dumps(record, sort_keys=True))
        else:
            print(text)


def _seq_text(seq) -> str:
    return "<" + ",".join(seq) + ">"


# -- commands ---------------------------------------------------------------------

def cmd_check(args, out: Output) -> int:
    mf = load_model_file(args.model)
    f = parse_formula(args.formula)
    st = _state(mf, args.at, args.seq)
    value = check(st, f, cache=args.cache)
    out.emit(f"{'true' if value else 'false'} at {_seq_text(st.seq)}",
             command="check", formula=render_formula(f), seq=list(st.seq), value=value)
    return OK if value else NEGATIVE


def _enum_spec(args) -> EnumSpec:
    return EnumSpec(max_nodes=args.max_nodes,
                    atoms=tuple(_split(args.atoms)) if args.atoms is not None else None,
                    prune_isomorphic=not args.no_prune,
                    time_budget=args.time_budget,
                    max_candidates=args.max_candidates,
                    seq_len=args.seq_len)


def _decide(mode: str, args, out: Output) -> int:
    f = parse_formula(args.formula)
    v = decide_upto(mode, f, _enum_spec(args))
    lines = [v.summary, f"examined {v.examined} pointed models"
             + (f" (stopped by {v.stopped_by})" if v.stopped_by else "")]
    record = dict(command=mode, formula=v.formula, status=v.status, max_nodes=v.max_nodes,
                  atoms=list(v.atoms), examined=v.examined, complete=v.complete,
                  seq_len=args.seq_len, pruned=not args.no_prune)
    if v.witness is not None:
        m, seq = v.witness
        label = "witness" if mode == "sat" else "countermodel"
        lines += [f"{label} at {_seq_text(seq)}:", render_model(m).rstrip()]
        record[label] = {"model": render_model(m), "seq": list(seq)}
    out.emit("\n".join(lines), **record)
    if v.status == "inconclusive":
        return ERROR
    return OK if v.status == "affirmative" else NEGATIVE


def cmd_validity(args, out: Output) -> int:
    return _decide("valid", args, out)


def cmd_sat(args, out: Output) -> int:
    return _decide("sat", args, out)


def cmd_translate(args, out: Output) -> int:
    f = parse_formula(args.formula)
    fol = translate(f, TranslationContext(sequence_vars(args.seq_len)))
    if not args.raw:
        fol = simplify(fol)
    text = export_tptp(fol, role=args.role) if args.format == "tptp" else to_sexpr(fol)
    out.emit(text, command="translate", format=args.format, formula=render_formula(f), output=text)
    return OK


def cmd_crosscheck(args, out: Output) -> int:
    mf = load_model_file(args.model)
    f = parse_formula(args.formula)
    st = _state(mf, args.at, args.seq)
    direct = check(st, f)
    xs = sequence_vars(len(st.seq))
    fol = translate(f, TranslationContext(xs))
    via_fol = eval_fol(mf.model, fol, dict(zip(xs, st.seq)))
    agree = direct == via_fol
    out.emit(f"check: {str(direct).lower()}\nfirst-order: {str(via_fol).lower()}\n"
             + ("agree" if agree else "DISAGREE"),
             command="crosscheck", formula=render_formula(f), seq=list(st.seq),
             check=direct, fol=via_fol, agree=agree)
    return OK if agree else NEGATIVE


def cmd_bisim(args, out: Output) -> int:
    mf1, mf2 = load_model_file(args.model1), load_model_file(args.model2)
    st1 = _state(mf1, args.at1, args.seq1)
    st2 = _state(mf2, args.at2, args.seq2)
    if args.atoms is None:
        vocab = set(mf1.model.valuation) | set(mf2.model.valuation)
    else:
        vocab = set(_split(args.atoms))
    res = bounded_bisim(st1, st2, BisimConfig(args.depth, vocab))
    text = f"{res.winner} wins at depth {args.depth}"
    if res.trace:
        text += "\n" + "\n".join("  " + t for t in res.trace)
    out.emit(text, command="bisim", depth=args.depth, vocabulary=sorted(vocab),
             winner=res.winner, trace=list(res.trace))
    return OK if res.duplicator_wins else NEGATIVE


def cmd_solve(args, out: Output) -> int:
    mf = load_model_file(args.model)
    start = args.start or mf.start
    goal = args.goal or mf.goal
    if start is None or goal is None:
        raise CliError("start and goal are needed (from the model file or --start/--goal)")
    game = Game(mf.model, start, goal)
    res = solve(game, args.max_rounds)
    if not res.found:
        out.emit(f"no winning play within {res.max_rounds} rounds",
                 command="solve", found=False, max_rounds=res.max_rounds, explored=res.explored)
        return NEGATIVE
    rounds = [str(r) for r in res.play.rounds]
    schedule = res.play.schedule()
    cert = certificate(schedule, args.goal_atom)
    holds = check_at(mf.model, cert, start)
    forced = schedule_forces_win(game, schedule)
    text = "\n".join(rounds + [f"status: {res.play.status}",
                               f"certificate: {render_formula(cert)}",
                               f"certificate holds at {start}: {str(holds).lower()}",
                               f"schedule wins against every learner: {str(forced).lower()}"])
    out.emit(text, command="solve", found=True, max_rounds=res.max_rounds,
             explored=res.explored, rounds=rounds, schedule=schedule,
             certificate=render_formula(cert), certificate_holds=holds,
             schedule_forces_win=forced, status=res.play.status)
    return OK


def cmd_corpus(args, out: Output) -> int:
    names = list(corpus.CORPUS) if args.name == "all" else [args.name]
    if any(n not in corpus.CORPUS for n in names):
        raise CliError(f"unknown corpus entry {args.name!r}; choose from all, "
                       + ", ".join(corpus.CORPUS))
    code = OK
    for name in names:
        rep = corpus.run_corpus(name)
        lines = [f"{name}: {'ok' if rep.ok else 'FAILED'}"]
        for c in rep.checks:
            mark = "ok" if c.ok else "MISMATCH"
            lines.append(f"  {c.label}: {_show(c.actual)} [{mark}]")
        if name == "example1-play" and rep.ok:
            lines.append("won")
        out.emit("\n".join(lines), command="corpus", name=name, ok=rep.ok,
                 checks=[{"label": c.label, "expected": _jsonable(c.expected),
                          "actual": _jsonable(c.actual), "ok": c.ok} for c in rep.checks])
        if not rep.ok:
            code = NEGATIVE
    return code


def _show(v) -> str:
    if isinstance(v, tuple):
        return _seq_text(v)
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def _jsonable(v):
    return list(v) if isinstance(v, tuple) else v


# -- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sll", description="Model checking, search and "
                                "games for the modal logic of supervised learning.")
    p.add_argument("--json", action="store_true", help="one JSON object per result line")
    sub = p.add_subparsers(dest="command", required=True)

    def pointed(sp, suffix=""):
        sp.add_argument(f"--at{suffix}", help="singleton evaluation sequence at this node")
        sp.add_argument(f"--seq{suffix}", help="evaluation sequence, e.g. a,b,c")

    c = sub.add_parser("check", help="evaluate a formula at a pointed model")
    c.add_argument("model")
    c.add_argument("formula")
    pointed(c)
    c.add_argument("--cache", action="store_true", help="memoize subformula results")
    c.set_defaults(func=cmd_check)

    for name, func, what in (("validity", cmd_validity, "search for a countermodel"),
                             ("sat", cmd_sat, "search for a witness")):
        e = sub.add_parser(name, help=f"{what} among small models")
        e.add_argument("formula")
        e.add_argument("--max-nodes", type=int, default=2)
        e.add_argument("--atoms", help="valuation atoms (default: those in the formula)")
        e.add_argument("--no-prune", action="store_true", help="keep isomorphic copies")
        e.add_argument("--time-budget", type=float, help="seconds")
        e.add_argument("--max-candidates", type=int, help="stop after this many pointed models")
        e.add_argument("--seq-len", type=int, default=1,
                       help="length of the evaluation sequences (default 1)")
        e.set_defaults(func=func)

    t = sub.add_parser("translate", help="first-order translation")
    t.add_argument("formula")
    t.add_argument("--seq-len", type=int, default=1)
    t.add_argument("--format", choices=("sexpr", "tptp"), default="sexpr")
    t.add_argument("--role", default="axiom", help="TPTP formula role")
    t.add_argument("--raw", action="store_true", help="skip simplification")
    t.set_defaults(func=cmd_translate)

    x = sub.add_parser("crosscheck", help="compare the checker with the first-order route")
    x.add_argument("model")
    x.add_argument("formula")
    pointed(x)
    x.set_defaults(func=cmd_crosscheck)

    b = sub.add_parser("bisim", help="bounded bisimulation game")
    b.add_argument("model1")
    b.add_argument("model2")
    pointed(b, "1")
    pointed(b, "2")
    b.add_argument("--depth", type=int, required=True)
    b.add_argument("--atoms", help="vocabulary (default: atoms of both models)")
    b.set_defaults(func=cmd_bisim)

    s = sub.add_parser("solve", help="search for a winning play")
    s.add_argument("model")
    s.add_argument("--start")
    s.add_argument("--goal")
    s.add_argument("--max-rounds", type=int)
    s.add_argument("--goal-atom", default="p", help="atom used in the certificate")
    s.set_defaults(func=cmd_solve)

    k = sub.add_parser("corpus", help="replay a bundled example")
    k.add_argument("name", help="all, " + ", ".join(corpus.CORPUS))
    k.set_defaults(func=cmd_corpus)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        return args.func(args, out)
    except (CliError, ParseError, ModelError, ValueError, OSError) as exc:
        if args.json:
            print(json.dumps({"command": args.command, "error": str(exc)}, sort_keys=True))
        else:
            print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except KeyboardInterrupt:
        print("interrupted", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
