"""Two-relation graphs, evaluation sequences and edge surgery."""

from __future__ import annotations

import re
from functools import cached_property
from dataclasses import dataclass, field, replace
from typing import Iterable, Mapping, Sequence, Union

Edge = tuple[str, str]


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class Model:
    """A finite model with conjectured relation `r1` and correct relation `r2`.

    Node order in `nodes` is the canonical order used for every iteration.
    Derived models (after edge surgery) share everything but `r1`.
    """
    nodes: tuple[str, ...]
    r1: frozenset[Edge]
    r2: frozenset[Edge]
    valuation: Mapping[str, frozenset[str]] = field(default_factory=dict, hash=False)

    def __post_init__(self):
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise ModelError("duplicate node")
        if not self.nodes:
            raise ModelError("a model needs at least one node")
        for rel, name in ((self.r1, "r1"), (self.r2, "r2")):
            for u, v in rel:
                if u not in known or v not in known:
                    raise ModelError(f"{name} edge {u}->{v} uses an undeclared node")
        for atom, ext in self.valuation.items():
            if not set(ext) <= known:
                raise ModelError(f"valuation of {atom} uses an undeclared node")

    @classmethod
    def build(cls, nodes: Iterable[str], r1: Iterable[Edge] = (), r2: Iterable[Edge] = (),
              valuation: Mapping[str, Iterable[str]] | None = None) -> Model:
        val = {a: frozenset(ext) for a, ext in (valuation or {}).items()}
        return cls(tuple(nodes), frozenset(map(tuple, r1)), frozenset(map(tuple, r2)), val)

    @cached_property
    def index(self) -> dict[str, int]:
        return {n: i for i, n in enumerate(self.nodes)}

    def true_at(self, atom: str) -> frozenset[str]:
        return self.valuation.get(atom, frozenset())

    def edge_key(self, edge: Edge) -> tuple[int, int]:
        idx = self.index
        return idx[edge[0]], idx[edge[1]]

    def sorted_edges(self, edges: Iterable[Edge]) -> list[Edge]:
        idx = self.index
        return sorted(edges, key=lambda e: (idx[e[0]], idx[e[1]]))

    def successors(self, node: str, rel: str = "r1") -> list[str]:
        edges = self.r1 if rel == "r1" else self.r2
        return [v for v in self.nodes if (node, v) in edges]

    def with_r1(self, r1: Iterable[Edge]) -> Model:
        return replace(self, r1=frozenset(r1))


# -- evaluation sequences ---------------------------------------------------

def seq_edges(seq: Sequence[str]) -> list[Edge]:
    return list(zip(seq, seq[1:]))


def seq_set(seq: Sequence[str]) -> frozenset[Edge]:
    """The edge set of a sequence; empty for a singleton."""
    return frozenset(zip(seq, seq[1:]))


def is_r1_sequence(m: Model, seq: Sequence[str]) -> bool:
    return len(seq) > 0 and all(n in m.index for n in seq) and seq_set(seq) <= m.r1


def truncate_sequence(seq: Sequence[str], edge: Edge) -> tuple[str, ...]:
    """Cut `seq` back to the source of the first occurrence of `edge`."""
    for i, pair in enumerate(zip(seq, seq[1:])):
        if pair == tuple(edge):
            return tuple(seq[:i + 1])
    raise ModelError(f"edge {edge[0]}->{edge[1]} does not occur in the sequence")


# -- edge surgery -----------------------------------------------------------

@dataclass(frozen=True)
class Remove:
    edge: Edge


@dataclass(frozen=True)
class Insert:
    edge: Edge


EdgeDelta = Union[Remove, Insert]


def apply_delta(m: Model, d: EdgeDelta) -> Model:
    edge = tuple(d.edge)
    if isinstance(d, Remove):
        if edge not in m.r1:
            raise ModelError(f"cannot remove {edge[0]}->{edge[1]}: not in r1")
        return m.with_r1(m.r1 - {edge})
    if edge in m.r1:
        raise ModelError(f"cannot insert {edge[0]}->{edge[1]}: already in r1")
    if edge[0] not in m.index or edge[1] not in m.index:
        raise ModelError(f"cannot insert {edge[0]}->{edge[1]}: undeclared node")
    return m.with_r1(m.r1 | {edge})


# -- model files ------------------------------------------------------------

@dataclass(frozen=True)
class ModelFile:
    model: Model
    start: str | None = None
    goal: str | None = None


_EDGE = re.compile(r"^([^\s>-]+)->([^\s>-]+)$")


def _parse_edges(words: list[str], lineno: int) -> list[Edge]:
    edges = []
    for w in words:
        m = _EDGE.match(w)
        if not m:
            raise ModelError(f"line {lineno}: malformed edge {w!r}")
        edges.append((m.group(1), m.group(2)))
    return edges


def parse_model(text: str) -> ModelFile:
    """Parse the line-oriented model format::

        nodes: a b c e f G
        r1: a->b b->c c->G f->G
        r2: a->b a->c b->e e->f f->G
        val p: G
        start: a
        goal: G
    """
    nodes: list[str] = []
    r1: list[Edge] = []
    r2: list[Edge] = []
    val: dict[str, list[str]] = {}
    start = goal = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ModelError(f"line {lineno}: expected 'key: values'")
        key, _, rest = line.partition(":")
        key = key.strip()
        words = rest.split()
        if key == "nodes":
            for n in words:
                if n in nodes:
                    raise ModelError(f"line {lineno}: duplicate node {n!r}")
                nodes.append(n)
        elif key == "r1":
            r1.extend(_parse_edges(words, lineno))
        elif key == "r2":
            r2.extend(_parse_edges(words, lineno))
        elif key.startswith("val "):
            atom = key[4:].strip()
            if not re.fullmatch(r"[a-z][a-z0-9_]*", atom):
                raise ModelError(f"line {lineno}: bad atom name {atom!r}")
            val.setdefault(atom, []).extend(words)
        elif key in ("start", "goal"):
            if len(words) != 1:
                raise ModelError(f"line {lineno}: {key} takes exactly one node")
            if key == "start":
                start = words[0]
            else:
                goal = words[0]
        else:
            raise ModelError(f"line {lineno}: unknown key {key!r}")
    declared = set(nodes)
    for u, v in r1 + r2:
        for n in (u, v):
            if n not in declared:
                raise ModelError(f"edge {u}->{v} references undeclared node {n!r}")
    for atom, ext in val.items():
        for n in ext:
            if n not in declared:
                raise ModelError(f"val {atom} references undeclared node {n!r}")
    for n in (start, goal):
        if n is not None and n not in declared:
            raise ModelError(f"start/goal references undeclared node {n!r}")
    return ModelFile(Model.build(nodes, r1, r2, val), start, goal)


def render_model(m: Model, start: str | None = None, goal: str | None = None) -> str:
    lines = ["nodes: " + " ".join(m.nodes)]
    for name, rel in (("r1", m.r1), ("r2", m.r2)):
        lines.append(f"{name}: " + " ".join(f"{u}->{v}" for u, v in m.sorted_edges(rel)))
    idx = m.index
    for atom in sorted(m.valuation):
        ext = sorted(m.valuation[atom], key=idx.__getitem__)
        lines.append(f"val {atom}: " + " ".join(ext))
    if start is not None:
        lines.append(f"start: {start}")
    if goal is not None:
        lines.append(f"goal: {goal}")
    return "\n".join(lines) + "\n"
