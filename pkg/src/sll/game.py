"""The supervised learning game: positions, moves, rounds and search.

A round is a Learner step along the current conjectured relation followed by
one Teacher action.  Learner and Teacher cooperate: they win once the
sequence ends at the goal and every edge on it is correct.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

from . import syntax as s
from .model import Edge, Model, ModelError, seq_set, truncate_sequence


class IllegalMove(ValueError):
    pass


@dataclass(frozen=True)
class Nothing:
    def __str__(self):
        return "nothing"


@dataclass(frozen=True)
class AddEdge:
    edge: Edge

    def __str__(self):
        return f"add {self.edge[0]}->{self.edge[1]}"


@dataclass(frozen=True)
class CutPath:
    edge: Edge

    def __str__(self):
        return f"cut-path {self.edge[0]}->{self.edge[1]}"


@dataclass(frozen=True)
class CutOff:
    edge: Edge

    def __str__(self):
        return f"cut-off {self.edge[0]}->{self.edge[1]}"


TeacherAction = Union[Nothing, AddEdge, CutPath, CutOff]

# schedule kinds, as used by certificate()
KIND_OF = {Nothing: "blank", AddEdge: "add", CutPath: "cut1", CutOff: "cut2"}
_KIND_OP = {"add": s.Add, "cut1": s.Cut1, "cut2": s.Cut2}


@dataclass(frozen=True)
class Game:
    model: Model
    start: str
    goal: str

    def __post_init__(self):
        for node in (self.start, self.goal):
            if node not in self.model.index:
                raise ModelError(f"unknown node {node!r}")

    def initial(self) -> GamePosition:
        return GamePosition(self, self.model.r1, (self.start,))


@dataclass(frozen=True)
class GamePosition:
    game: Game = field(repr=False)
    r1: frozenset[Edge]
    seq: tuple[str, ...]

    @property
    def start(self) -> str:
        return self.game.start

    @property
    def goal(self) -> str:
        return self.game.goal

    @property
    def r2(self) -> frozenset[Edge]:
        return self.game.model.r2

    def key(self) -> tuple:
        return self.r1, self.seq


def learner_moves(p: GamePosition) -> list[str]:
    """Current r1-successors of the last node, in canonical order."""
    last = p.seq[-1]
    return [v for v in p.game.model.nodes if (last, v) in p.r1]


def learner_step(p: GamePosition, target: str) -> GamePosition:
    if target not in learner_moves(p):
        raise IllegalMove(f"learner cannot move from {p.seq[-1]} to {target}")
    return GamePosition(p.game, p.r1, p.seq + (target,))


def teacher_moves(p: GamePosition) -> list[TeacherAction]:
    """Teacher's options once Learner's step is on the sequence.

    Order: nothing, then additions, path cuts and off-path cuts, each with
    edges in canonical order.
    """
    m = p.game.model
    on_path = seq_set(p.seq)
    adds = m.sorted_edges(p.r2 - p.r1)
    path_cuts = m.sorted_edges(on_path - p.r2)
    off_cuts = m.sorted_edges((p.r1 - p.r2) - on_path)
    return ([Nothing()] + [AddEdge(e) for e in adds] + [CutPath(e) for e in path_cuts]
            + [CutOff(e) for e in off_cuts])


def apply_teacher(p: GamePosition, action: TeacherAction) -> GamePosition:
    if action not in teacher_moves(p):
        raise IllegalMove(f"teacher cannot {action}")
    if isinstance(action, Nothing):
        return p
    if isinstance(action, AddEdge):
        return GamePosition(p.game, p.r1 | {action.edge}, p.seq)
    if isinstance(action, CutPath):
        return GamePosition(p.game, p.r1 - {action.edge}, truncate_sequence(p.seq, action.edge))
    return GamePosition(p.game, p.r1 - {action.edge}, p.seq)


def step_round(p: GamePosition, learner_target: str, t: TeacherAction) -> GamePosition:
    return apply_teacher(learner_step(p, learner_target), t)


def is_won(p: GamePosition) -> bool:
    return p.seq[-1] == p.goal and seq_set(p.seq) <= p.r2


def status(p: GamePosition) -> str:
    if is_won(p):
        return "won"
    if not learner_moves(p):
        return "lost"
    return "ongoing"


# -- plays ------------------------------------------------------------------

@dataclass(frozen=True)
class Round:
    learner: str
    teacher: TeacherAction

    def __str__(self):
        return f"learner {self.learner} | teacher {self.teacher}"


@dataclass(frozen=True)
class Play:
    rounds: tuple[Round, ...]
    status: str

    def schedule(self) -> list[str]:
        return [KIND_OF[type(r.teacher)] for r in self.rounds]


def replay(game: Game, rounds: Iterable[Round]) -> tuple[GamePosition, str]:
    """Play `rounds` from the initial position; the game stops at a win.

    A round whose Learner step already wins must carry ``Nothing`` and must
    be the last one.
    """
    pos = game.initial()
    rounds = list(rounds)
    for i, r in enumerate(rounds):
        st = status(pos)
        if st != "ongoing":
            raise IllegalMove(f"round {i + 1} played after the game ended ({st})")
        pos = learner_step(pos, r.learner)
        if is_won(pos):
            if not isinstance(r.teacher, Nothing) or i != len(rounds) - 1:
                raise IllegalMove(f"the game was already won after Learner's move in round {i + 1}")
            return pos, "won"
        pos = apply_teacher(pos, r.teacher)
    return pos, status(pos)


def default_max_rounds(m: Model) -> int:
    return len(m.nodes) * (len(m.r1 | m.r2) + 1)


@dataclass(frozen=True)
class SolveResult:
    found: bool
    play: Play | None
    max_rounds: int
    explored: int


def solve(game: Game, max_rounds: int | None = None) -> SolveResult:
    """Cooperative search for a winning play of at most `max_rounds` rounds.

    Depth-first over joint moves in canonical order (Learner targets by node
    order, Teacher actions as listed by `teacher_moves`).  A position is
    pruned when it was already expanded with at least as many rounds left.
    """
    if max_rounds is None:
        max_rounds = default_max_rounds(game.model)
    best_left: dict[tuple, int] = {}
    explored = 0

    def dfs(pos: GamePosition, left: int) -> list[Round] | None:
        nonlocal explored
        if left == 0:
            return None
        key = pos.key()
        if best_left.get(key, -1) >= left:
            return None
        best_left[key] = left
        explored += 1
        for target in learner_moves(pos):
            mid = learner_step(pos, target)
            if is_won(mid):
                return [Round(target, Nothing())]
            for action in teacher_moves(mid):
                nxt = apply_teacher(mid, action)
                if is_won(nxt):
                    return [Round(target, action)]
                rest = dfs(nxt, left - 1)
                if rest is not None:
                    return [Round(target, action)] + rest
        return None

    start = game.initial()
    if is_won(start):
        return SolveResult(True, Play((), "won"), max_rounds, 0)
    rounds = dfs(start, max_rounds)
    if rounds is None:
        return SolveResult(False, None, max_rounds, explored)
    return SolveResult(True, Play(tuple(rounds), "won"), max_rounds, explored)


def _actions_of_kind(p: GamePosition, kind: str) -> list[TeacherAction]:
    return [a for a in teacher_moves(p) if KIND_OF[type(a)] == kind]


def schedule_forces_win(game: Game, schedule: Iterable[str]) -> bool:
    """Game-level reading of a schedule: whatever Learner does, Teacher can
    answer each round with an action of the scheduled kind so that the game
    is won within the schedule.  A stuck Learner loses; so does Teacher when
    no action of the scheduled kind exists."""
    schedule = tuple(schedule)

    def wins(pos: GamePosition, i: int) -> bool:
        if is_won(pos):
            return True
        if i == len(schedule):
            return False
        targets = learner_moves(pos)
        if not targets:
            return False
        for target in targets:
            mid = learner_step(pos, target)
            if is_won(mid):
                continue
            if not any(wins(apply_teacher(mid, a), i + 1)
                       for a in _actions_of_kind(mid, schedule[i])):
                return False
        return True

    return wins(game.initial(), 0)


def certificate(schedule: Iterable[str], goal_atom: str) -> s.Formula:
    """Strategy formula: one box per round followed by the round's Teacher
    modality (none for ``blank``), ending in ``goal & [-1]false``."""
    f: s.Formula = s.And(s.Atom(goal_atom), s.BoxCut1(s.Bot()))
    for kind in reversed(list(schedule)):
        if kind != "blank":
            f = _KIND_OP[kind](f)
        f = s.Box(f)
    return f
