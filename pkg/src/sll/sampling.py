"""Seeded random models, sequences and formulas for property checks."""

from __future__ import annotations

import random
from typing import Sequence

from . import syntax as s
from .model import Model

ALL_MODAL = (s.Dia, s.Box, s.Cut1, s.BoxCut1, s.Cut2, s.BoxCut2, s.Add, s.BoxAdd)
FRAGMENT_MODAL = {
    "full": ALL_MODAL,
    "standard": (s.Dia, s.Box),
    "sabotage": (s.Cut2, s.BoxCut2),
    "bridge": (s.Dia, s.Box, s.Add, s.BoxAdd),
}


def random_model(rng: random.Random, max_nodes: int = 4, atoms: Sequence[str] = ("p", "q"),
                 density: float | None = None, min_nodes: int = 1,
                 full_r2: bool = False) -> Model:
    n = rng.randint(min_nodes, max_nodes)
    nodes = [f"w{i}" for i in range(n)]
    d1 = rng.uniform(0.15, 0.6) if density is None else density
    d2 = rng.uniform(0.15, 0.6) if density is None else density
    pairs = [(u, v) for u in nodes for v in nodes]
    r1 = [e for e in pairs if rng.random() < d1]
    r2 = pairs if full_r2 else [e for e in pairs if rng.random() < d2]
    val = {a: [w for w in nodes if rng.random() < 0.5] for a in atoms}
    return Model.build(nodes, r1, r2, val)


def random_sequence(rng: random.Random, m: Model, max_len: int = 3) -> tuple[str, ...]:
    """A random r1-walk of length at most `max_len` (stops early at sinks)."""
    target = rng.randint(1, max_len)
    starts = [w for w in m.nodes if m.successors(w)] if target > 1 else []
    seq = [rng.choice(starts or m.nodes)]
    while len(seq) < target:
        succ = m.successors(seq[-1])
        if not succ:
            break
        seq.append(rng.choice(succ))
    return tuple(seq)


def random_formula(rng: random.Random, depth: int, atoms: Sequence[str] = ("p", "q"),
                   fragment: str = "full", size: int = 5) -> s.Formula:
    """A random formula of modal depth at most `depth`.

    `size` bounds the number of boolean branchings so formulas stay small.
    """
    modal = FRAGMENT_MODAL[fragment]

    def leaf() -> s.Formula:
        r = rng.random()
        if r < 0.08:
            return s.Top()
        if r < 0.14:
            return s.Bot()
        return s.Atom(rng.choice(list(atoms)))

    def gen(d: int, budget: int) -> s.Formula:
        if budget <= 0:
            return leaf()
        r = rng.random()
        if r < 0.12:
            return leaf()
        if d > 0 and r < 0.65:
            return rng.choice(modal)(gen(d - 1, budget - 1))
        if r < 0.8:
            op = rng.choice((s.And, s.Or, s.Implies))
            return op(gen(d, budget // 2), gen(d, budget // 2))
        return s.Not(gen(d, budget - 1))

    return gen(depth, size)


def _relabel(m: Model, seq: tuple[str, ...], rng: random.Random, prefix: str):
    order = list(m.nodes)
    rng.shuffle(order)
    name = {old: f"{prefix}{i}" for i, old in enumerate(order)}
    nodes = sorted(name.values(), key=lambda x: int(x[len(prefix):]))
    m2 = Model.build(nodes, [(name[u], name[v]) for u, v in m.r1],
                     [(name[u], name[v]) for u, v in m.r2],
                     {a: [name[x] for x in ext] for a, ext in m.valuation.items()})
    return m2, tuple(name[x] for x in seq)


def _perturb(m: Model, rng: random.Random) -> Model:
    kind = rng.choice(("r1", "r2", "val"))
    u, v = rng.choice(m.nodes), rng.choice(m.nodes)
    if kind == "val":
        atom = rng.choice(sorted(m.valuation)) if m.valuation else "p"
        ext = set(m.true_at(atom)) ^ {u}
        return Model.build(m.nodes, m.r1, m.r2, {**m.valuation, atom: ext})
    rel = set(getattr(m, kind)) ^ {(u, v)}
    r1, r2 = (rel, m.r2) if kind == "r1" else (m.r1, rel)
    return Model.build(m.nodes, r1, r2, m.valuation)


def _with_isolated(m: Model, rng: random.Random, atoms: Sequence[str]) -> Model:
    extra = f"z{len(m.nodes)}"
    val = {a: set(m.true_at(a)) | ({extra} if rng.random() < 0.5 else set()) for a in atoms}
    return Model.build(m.nodes + (extra,), m.r1, m.r2, val)


PAIR_KINDS = ("independent", "relabelled", "isolated", "perturbed")


def random_pair(rng: random.Random, atoms: Sequence[str] = ("p", "q"), max_nodes: int = 3):
    """Two (model, sequence) points, drawn to make Duplicator wins reasonably common.

    Returns ``(kind, (m1, seq1), (m2, seq2))``.
    """
    kind = rng.choice(PAIR_KINDS)
    m1 = random_model(rng, max_nodes, atoms)
    seq1 = random_sequence(rng, m1, max_len=2)
    if kind == "independent":
        m2 = random_model(rng, max_nodes, atoms)
        return kind, (m1, seq1), (m2, random_sequence(rng, m2, max_len=2))
    if kind == "relabelled":
        return kind, (m1, seq1), _relabel(m1, seq1, rng, "u")
    if kind == "isolated":
        return kind, (m1, seq1), _relabel(_with_isolated(m1, rng, atoms), seq1, rng, "u")
    m2 = _perturb(m1, rng)
    if not set(zip(seq1, seq1[1:])) <= m2.r1:
        seq1 = seq1[:1]
    return kind, (m1, seq1), _relabel(m2, seq1, rng, "u")
