"""Depth-bounded learning bisimulation, played as a Spoiler/Duplicator game.

At depth 0 Duplicator wins iff both states agree on every vocabulary atom at
the last node.  At depth k > 0 Spoiler picks a side and a move of one of the
four kinds (step, path cut, off-path cut, addition); Duplicator must answer
with a move of the same kind on the other side and win at depth k - 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .checker import Frame, PointedState, bits, encode, seq_mask, truncate_ints

KINDS = ("<>", "<-1>", "<-2>", "<+>")


@dataclass(frozen=True)
class BisimConfig:
    depth: int
    vocabulary: frozenset[str]

    def __init__(self, depth: int, vocabulary: Iterable[str]):
        if depth < 0:
            raise ValueError("depth must be non-negative")
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "vocabulary", frozenset(vocabulary))


@dataclass(frozen=True)
class BisimResult:
    winner: str                    # "duplicator" or "spoiler"
    trace: tuple[str, ...] = ()    # Spoiler's challenges, one line per round

    @property
    def duplicator_wins(self) -> bool:
        return self.winner == "duplicator"


class _Side:
    def __init__(self, st: PointedState):
        self.frame, r1 = encode(st.model)
        self.names = st.model.nodes
        idx = st.model.index
        seq = tuple(idx[x] for x in st.seq)
        self.start = (r1, seq, seq_mask(seq, self.frame.n))

    def label(self, node: int) -> str:
        return self.names[node]

    def moves(self, kind: str, state):
        fr: Frame = self.frame
        n = fr.n
        r1, seq, sm = state
        if kind == "<>":
            u = seq[-1]
            for v in bits((r1 >> (u * n)) & ((1 << n) - 1)):
                yield self.label(v), (r1, seq + (v,), sm | (1 << (u * n + v)))
        elif kind == "<-1>":
            for e in bits(sm & ~fr.r2):
                u, v = divmod(e, n)
                cut = truncate_ints(seq, u, v)
                yield self._edge(e), (r1 & ~(1 << e), cut, seq_mask(cut, n))
        elif kind == "<-2>":
            for e in bits(r1 & ~fr.r2 & ~sm):
                yield self._edge(e), (r1 & ~(1 << e), seq, sm)
        else:
            for e in bits(fr.r2 & ~r1):
                yield self._edge(e), (r1 | (1 << e), seq, sm)

    def _edge(self, e: int) -> str:
        u, v = divmod(e, self.frame.n)
        return f"{self.names[u]}->{self.names[v]}"

    def atom(self, name: str, state) -> bool:
        return bool((self.frame.val.get(name, 0) >> state[1][-1]) & 1)


def bounded_bisim(st1: PointedState, st2: PointedState, cfg: BisimConfig) -> BisimResult:
    """Solve the k-round game; on a Spoiler win, return one winning line of play."""
    sides = (_Side(st1), _Side(st2))
    vocab = sorted(cfg.vocabulary)
    memo: dict[tuple, tuple[str, ...] | None] = {}

    def spoiler_line(a, b, k: int) -> tuple[str, ...] | None:
        key = (a, b, k)
        if key in memo:
            return memo[key]
        line = _play(a, b, k)
        memo[key] = line
        return line

    def _play(a, b, k: int) -> tuple[str, ...] | None:
        for p in vocab:
            if sides[0].atom(p, a) != sides[1].atom(p, b):
                return (f"atom {p} differs",)
        if k == 0:
            return None
        states = (a, b)
        for kind in KINDS:
            for who in (0, 1):
                other = 1 - who
                for label, nxt in sides[who].moves(kind, states[who]):
                    answers = list(sides[other].moves(kind, states[other]))
                    best = None
                    for _, reply in answers:
                        pair = (nxt, reply) if who == 0 else (reply, nxt)
                        sub = spoiler_line(*pair, k - 1)
                        if sub is None:
                            break
                        best = best or sub
                    else:
                        zig = "zig" if who == 0 else "zag"
                        head = f"{zig} {kind} {label}"
                        if not answers:
                            return (head, "no answer")
                        return (head,) + best
        return None

    line = spoiler_line(sides[0].start, sides[1].start, cfg.depth)
    if line is None:
        return BisimResult("duplicator")
    return BisimResult("spoiler", line)
