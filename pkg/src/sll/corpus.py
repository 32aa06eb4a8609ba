"""Bundled models, formulas and self-verifying example runs."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from . import syntax as s
from .checker import check_at
from .enumerate import EnumSpec, decide_upto, find_all
from .game import (AddEdge, CutOff, CutPath, Game, Nothing, Round, certificate,
                   replay, schedule_forces_win, solve)
from .model import ModelFile, parse_model, seq_set
from .syntax import parse_formula

MODEL_FILES = {"fig1": "fig1.slg", "fig2": "fig2.slg", "fig3": "fig3.slg"}


def load_model(name: str) -> ModelFile:
    fname = MODEL_FILES.get(name, name)
    text = resources.files("sll").joinpath("data", fname).read_text()
    return parse_model(text)


FIG1_SCHEDULE = ("add", "add", "cut1", "cut2", "blank", "blank")
FIG1_CERTIFICATE = "[]<+>[]<+>[]<-1>[]<-2>[][](p & [-1]false)"

SUBST_PREMISE = "<>p & <>[]q"
SUBST_CONCLUSION = "<>[-1]<>p"
SUBST_INSTANCE = f"{SUBST_PREMISE} -> {SUBST_CONCLUSION}"

PHI_T_PARTS = {
    "T1": "p & <>p & <>~p",
    "T2": "[](p -> <>p & <>~p)",
    "T3": "[](~p -> <-1>([]p & [][]p))",
}

PHI_INF_PARTS = {
    "F1": "p & q & <>p & <>~p & []~q",
    "F2": "[](p -> <>q & <>~q & []p)",
    "F3": "[](p -> [](q -> []~q & <>~p))",
    "F4": "<>(~p & <-1>[](p & [](q -> []p)))",
    "F5": "[](p -> [](~q -> <>q & <>~q & []p))",
    "F6": "[](p -> [](~q -> [](q -> []~q & <>~p)))",
    "F7": "<>(~p & <-1>[][](~q -> [](q -> []p)))",
    "Spy": "[](p -> [](~q -> [](q -> <-1>(~q & []~q & <-1>(q & <>(p & []~q))))))",
    "Irr": "[](p -> [](q -> <-1>(~q & []~q & []<>q)))",
    "No-3cyc": "~<>(p & [](q -> <-1>(~q & [](~q & <><>(p & []~q)))))",
    "Trans": "[](p -> [](q -> <-1>(~q & []~q & [][](~q -> [](q -> "
             "<-1>(~q & []~q & <-1>(p & ~<>q & <>[]q)))))))",
}


def _conjunction(parts: dict[str, str]) -> s.Formula:
    return s.conj(*(parse_formula(t) for t in parts.values()))


def phi_t() -> s.Formula:
    return _conjunction(PHI_T_PARTS)


def phi_infinity() -> s.Formula:
    return _conjunction(PHI_INF_PARTS)


# -- validity templates ------------------------------------------------------

_BOXES = {"[-2]": s.BoxCut2, "[+]": s.BoxAdd}

VALIDITIES = (
    "cut1-box-vacuous",      # [-1]phi
    "atom-survives-return",  # p -> [][-1]p
    "step-then-return",      # p & <>true -> <>[-1]p
    "atom-persistence",      # p -> op p
    "distribution",          # op(phi -> psi) -> (op phi -> op psi)
    "distribution-on-path",  # []^n [-1](phi -> psi) -> ([]^n [-1]phi -> []^n [-1]psi)
    "cut1-persists",         # []^n <-1>phi -> []^(n+m) <-1>phi
    "cut1-as-cut2",          # <>^n <-1>phi -> big-or over k < n of <>^k <-2>phi
)


def validity(name: str, phi: s.Formula | None = None, psi: s.Formula | None = None,
             n: int = 0, m: int = 0, op: str = "[-2]") -> s.Formula:
    """Instances of the validity templates listed in `VALIDITIES`.

    The atom-level templates are fixed formulas over ``p``; the others take
    the metavariables `phi`, `psi`, the exponents `n`, `m`, and for
    persistence and distribution the box `op` (``"[-2]"`` or ``"[+]"``).
    """
    p = s.Atom("p")
    phi = p if phi is None else phi
    psi = s.Atom("q") if psi is None else psi
    box = _BOXES[op]
    if name == "cut1-box-vacuous":
        return s.BoxCut1(phi)
    if name == "atom-survives-return":
        return s.Implies(p, s.Box(s.BoxCut1(p)))
    if name == "step-then-return":
        return s.Implies(s.And(p, s.Dia(s.Top())), s.Dia(s.BoxCut1(p)))
    if name == "atom-persistence":
        return s.Implies(p, box(p))
    if name == "distribution":
        return s.Implies(box(s.Implies(phi, psi)), s.Implies(box(phi), box(psi)))
    if name == "distribution-on-path":
        def pre(f):
            return s.iterate(s.Box, n, s.BoxCut1(f))
        return s.Implies(pre(s.Implies(phi, psi)), s.Implies(pre(phi), pre(psi)))
    if name == "cut1-persists":
        return s.Implies(s.iterate(s.Box, n, s.Cut1(phi)), s.iterate(s.Box, n + m, s.Cut1(phi)))
    if name == "cut1-as-cut2":
        if n < 1:
            raise ValueError("cut1-as-cut2 needs n >= 1")
        options = [s.iterate(s.Dia, k, s.Cut2(phi)) for k in range(n)]
        return s.Implies(s.iterate(s.Dia, n, s.Cut1(phi)), s.disj(*options))
    raise ValueError(f"no validity template named {name!r}")


# -- the example play ------------------------------------------------------------

SAMPLE_PLAY = (
    Round("b", AddEdge(("e", "f"))),
    Round("c", AddEdge(("b", "e"))),
    Round("G", CutPath(("b", "c"))),
    Round("e", CutOff(("c", "G"))),
    Round("f", Nothing()),
    Round("G", Nothing()),
)


@dataclass(frozen=True)
class Check:
    label: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class CorpusReport:
    name: str
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def _fig1() -> list[Check]:
    mf = load_model("fig1")
    game = Game(mf.model, mf.start, mf.goal)
    cert = certificate(FIG1_SCHEDULE, "p")
    result = solve(game, 8)
    final = _final_seq(game, result.play.rounds) if result.found else None
    return [
        Check("certificate text", FIG1_CERTIFICATE, s.render_formula(cert)),
        Check("certificate holds at a", True, check_at(mf.model, cert, "a")),
        Check("schedule forces a win in the game", True, schedule_forces_win(game, FIG1_SCHEDULE)),
        Check("solve finds a play within 8 rounds", True, result.found),
        Check("rounds in the play", 6, len(result.play.rounds) if result.found else None),
        Check("final sequence", ("a", "b", "e", "f", "G"), final),
        Check("final path inside r2", True, final is not None and seq_set(final) <= mf.model.r2),
    ]


def _final_seq(game: Game, rounds) -> tuple[str, ...]:
    pos, _ = replay(game, rounds)
    return pos.seq


def _fig2() -> list[Check]:
    m = load_model("fig2").model
    return [
        Check(SUBST_PREMISE, True, check_at(m, parse_formula(SUBST_PREMISE), "w")),
        Check(SUBST_CONCLUSION, False, check_at(m, parse_formula(SUBST_CONCLUSION), "w")),
        Check("<><-1><>p", False, check_at(m, parse_formula("<><-1><>p"), "w")),
        Check(SUBST_INSTANCE, False, check_at(m, parse_formula(SUBST_INSTANCE), "w")),
    ]


def _fig3() -> list[Check]:
    m = load_model("fig3").model
    checks = [Check(f"{k} at w", True, check_at(m, parse_formula(t), "w"))
              for k, t in PHI_T_PARTS.items()]
    checks.append(Check("phi_T at w", True, check_at(m, phi_t(), "w")))
    loopless = [(mm, seq) for mm, seq in find_all(phi_t(), EnumSpec(max_nodes=2))
                if (seq[0], seq[0]) not in mm.r1]
    checks.append(Check("phi_T points without an r1 loop, up to 2 nodes", 0, len(loopless)))
    return checks


def _phi_infty() -> list[Check]:
    verdict = decide_upto("sat", phi_infinity(), EnumSpec(max_nodes=2))
    return [Check("phi_infinity, up to 2 nodes", "negative", verdict.status),
            Check("pointed models examined", 4112, verdict.examined)]


def _example1_play() -> list[Check]:
    mf = load_model("fig1")
    game = Game(mf.model, mf.start, mf.goal)
    pos, st = replay(game, SAMPLE_PLAY)
    return [Check("status", "won", st), Check("final sequence", ("a", "b", "e", "f", "G"), pos.seq)]


CORPUS = {
    "fig1": _fig1,
    "fig2": _fig2,
    "fig3-phiT": _fig3,
    "phi-infty": _phi_infty,
    "example1-play": _example1_play,
}


def run_corpus(name: str) -> CorpusReport:
    if name not in CORPUS:
        raise KeyError(f"unknown corpus entry {name!r}; choose from {', '.join(CORPUS)}")
    return CorpusReport(name, tuple(CORPUS[name]()))
