"""Exact model checking on pointed models.

The evaluator works on an integer encoding: node ``i`` of an ``n``-node model
is bit ``i`` of a node mask, and edge ``(u, v)`` is bit ``u * n + v`` of an
edge mask.  Iterating set bits from low to high therefore visits nodes in
canonical order and edges lexicographically.  Formulas are compiled once into
closures ``fn(frame, r1, seq, seq_mask) -> bool``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .model import Model, ModelError, is_r1_sequence
from .syntax import (
    Add, And, Atom, Bot, Box, BoxAdd, BoxCut1, BoxCut2, Cut1, Cut2, Dia,
    Formula, Implies, Not, Or, Top, operators,
)


@dataclass(frozen=True)
class PointedState:
    """A model (whose r1 is the current conjectured relation) and a sequence."""
    model: Model
    seq: tuple[str, ...]

    def __post_init__(self):
        if not is_r1_sequence(self.model, self.seq):
            raise ModelError(f"{'-'.join(self.seq) or '<empty>'} is not an r1-sequence")

    @property
    def base(self) -> Model:
        return self.model

    @property
    def current_r1(self):
        return self.model.r1

    @property
    def last(self) -> str:
        return self.seq[-1]


def pointed(model: Model, *seq: str) -> PointedState:
    return PointedState(model, tuple(seq) if seq else (model.nodes[0],))


# -- integer encoding -------------------------------------------------------

class Frame:
    """Per-model constants for the compiled evaluator."""
    __slots__ = ("n", "r2", "val", "memo")

    def __init__(self, n: int, r2: int, val: dict[str, int], memo: dict | None = None):
        self.n = n
        self.r2 = r2
        self.val = val
        self.memo = memo


def edge_mask(model: Model, edges) -> int:
    idx, n = model.index, len(model.nodes)
    mask = 0
    for u, v in edges:
        mask |= 1 << (idx[u] * n + idx[v])
    return mask


def encode(model: Model) -> tuple[Frame, int]:
    """Frame and r1 mask for `model`."""
    idx = model.index
    val = {}
    for atom, ext in model.valuation.items():
        m = 0
        for node in ext:
            m |= 1 << idx[node]
        val[atom] = m
    return Frame(len(model.nodes), edge_mask(model, model.r2), val), edge_mask(model, model.r1)


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def seq_mask(seq: Sequence[int], n: int) -> int:
    mask = 0
    for u, v in zip(seq, seq[1:]):
        mask |= 1 << (u * n + v)
    return mask


def truncate_ints(seq: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
    for i in range(len(seq) - 1):
        if seq[i] == u and seq[i + 1] == v:
            return seq[:i + 1]
    raise ModelError("edge not in sequence")


# -- compilation ------------------------------------------------------------

Compiled = Callable[[Frame, int, tuple, int], bool]


def _successors(fr: Frame, r1: int, u: int) -> int:
    n = fr.n
    return (r1 >> (u * n)) & ((1 << n) - 1)


def _compile(f: Formula, cache: bool) -> Compiled:
    if isinstance(f, Atom):
        name = f.name
        return lambda fr, r1, seq, sm: bool((fr.val.get(name, 0) >> seq[-1]) & 1)
    if isinstance(f, Top):
        return lambda fr, r1, seq, sm: True
    if isinstance(f, Bot):
        return lambda fr, r1, seq, sm: False
    if isinstance(f, Not):
        g = _compile(f.sub, cache)
        return lambda fr, r1, seq, sm: not g(fr, r1, seq, sm)
    if isinstance(f, (And, Or, Implies)):
        a, b = _compile(f.left, cache), _compile(f.right, cache)
        if isinstance(f, And):
            return lambda fr, r1, seq, sm: a(fr, r1, seq, sm) and b(fr, r1, seq, sm)
        if isinstance(f, Or):
            return lambda fr, r1, seq, sm: a(fr, r1, seq, sm) or b(fr, r1, seq, sm)
        return lambda fr, r1, seq, sm: (not a(fr, r1, seq, sm)) or b(fr, r1, seq, sm)

    g = _compile(f.sub, cache)
    want = not isinstance(f, (Box, BoxCut1, BoxCut2, BoxAdd))

    if isinstance(f, (Dia, Box)):
        def fn(fr, r1, seq, sm):
            n = fr.n
            u = seq[-1]
            for v in bits(_successors(fr, r1, u)):
                if g(fr, r1, seq + (v,), sm | (1 << (u * n + v))) == want:
                    return want
            return not want
    elif isinstance(f, (Cut1, BoxCut1)):
        def fn(fr, r1, seq, sm):
            n = fr.n
            for e in bits(sm & ~fr.r2):
                u, v = divmod(e, n)
                cut = truncate_ints(seq, u, v)
                if g(fr, r1 & ~(1 << e), cut, seq_mask(cut, n)) == want:
                    return want
            return not want
    elif isinstance(f, (Cut2, BoxCut2)):
        def fn(fr, r1, seq, sm):
            for e in bits(r1 & ~fr.r2 & ~sm):
                if g(fr, r1 & ~(1 << e), seq, sm) == want:
                    return want
            return not want
    elif isinstance(f, (Add, BoxAdd)):
        def fn(fr, r1, seq, sm):
            for e in bits(fr.r2 & ~r1):
                if g(fr, r1 | (1 << e), seq, sm) == want:
                    return want
            return not want
    else:
        raise TypeError(f"not a formula: {f!r}")

    if not cache:
        return fn
    key = object()

    def memoized(fr, r1, seq, sm):
        if fr.memo is None:
            return fn(fr, r1, seq, sm)
        k = (key, r1, seq)
        hit = fr.memo.get(k)
        if hit is None:
            hit = fr.memo[k] = fn(fr, r1, seq, sm)
        return hit
    return memoized


@lru_cache(maxsize=256)
def compile_formula(f: Formula, cache: bool = False) -> Compiled:
    return _compile(f, cache)


def check(st: PointedState, f: Formula, cache: bool = False) -> bool:
    """Truth of `f` at the pointed state.

    With ``cache=True`` subformula results are memoized on
    ``(subformula, current r1, sequence)`` for the duration of the call.
    """
    fr, r1 = encode(st.model)
    if cache:
        fr.memo = {}
    idx = st.model.index
    seq = tuple(idx[s] for s in st.seq)
    return compile_formula(f, cache)(fr, r1, seq, seq_mask(seq, fr.n))


def check_at(model: Model, f: Formula, *seq: str) -> bool:
    return check(pointed(model, *seq), f)


# -- fragment oracles -------------------------------------------------------
# Independent evaluators for the three fragments that coincide with known
# logics.  They work on plain sets of node pairs, not on the bit encoding.

class FragmentError(ValueError):
    pass


_BOOL = {Atom, Top, Bot, Not, And, Or, Implies}
FRAGMENTS = {
    "standard": _BOOL | {Dia, Box},
    # sabotage modal logic keeps its own diamond, read over the sabotaged relation
    "sabotage": _BOOL | {Cut2, BoxCut2, Dia, Box},
    "bridge": _BOOL | {Dia, Box, Add, BoxAdd},
}


def _boolean(f, ev):
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, Not):
        return not ev(f.sub)
    if isinstance(f, And):
        return ev(f.left) and ev(f.right)
    if isinstance(f, Or):
        return ev(f.left) or ev(f.right)
    if isinstance(f, Implies):
        return (not ev(f.left)) or ev(f.right)
    raise TypeError(f)


def _kripke(nodes, rel, val, w, f) -> bool:
    """Basic modal logic over one relation."""
    if isinstance(f, Atom):
        return w in val.get(f.name, ())
    if isinstance(f, Dia):
        return any(_kripke(nodes, rel, val, v, f.sub) for v in nodes if (w, v) in rel)
    if isinstance(f, Box):
        return all(_kripke(nodes, rel, val, v, f.sub) for v in nodes if (w, v) in rel)
    return _boolean(f, lambda g: _kripke(nodes, rel, val, w, g))


def _sabotage(rel, val, w, f) -> bool:
    """Sabotage logic: the diamond deletes one edge of `rel`."""
    if isinstance(f, Atom):
        return w in val.get(f.name, ())
    if isinstance(f, Dia):
        return any(_sabotage(rel, val, v, f.sub) for (u, v) in rel if u == w)
    if isinstance(f, Box):
        return all(_sabotage(rel, val, v, f.sub) for (u, v) in rel if u == w)
    if isinstance(f, Cut2):
        return any(_sabotage(rel - {e}, val, w, f.sub) for e in rel)
    if isinstance(f, BoxCut2):
        return all(_sabotage(rel - {e}, val, w, f.sub) for e in rel)
    return _boolean(f, lambda g: _sabotage(rel, val, w, g))


def _bridge(nodes, rel, val, w, f) -> bool:
    """Bridge logic: basic modal logic plus insertion of an absent edge."""
    if isinstance(f, Atom):
        return w in val.get(f.name, ())
    if isinstance(f, Dia):
        return any(_bridge(nodes, rel, val, v, f.sub) for v in nodes if (w, v) in rel)
    if isinstance(f, Box):
        return all(_bridge(nodes, rel, val, v, f.sub) for v in nodes if (w, v) in rel)
    if isinstance(f, (Add, BoxAdd)):
        absent = [(u, v) for u in nodes for v in nodes if (u, v) not in rel]
        quant = any if isinstance(f, Add) else all
        return quant(_bridge(nodes, rel | {e}, val, w, f.sub) for e in absent)
    return _boolean(f, lambda g: _bridge(nodes, rel, val, w, g))


def check_fragment(kind: str, m: Model, w: str, f: Formula) -> bool:
    """Evaluate `f` under the semantics of the corresponding known logic.

    ``standard``: Kripke semantics over (W, r1).  ``sabotage``: edge deletion
    over (W, r1 - r2).  ``bridge``: edge insertion over (W, r1); the model's
    r2 must be all of W x W.
    """
    if kind not in FRAGMENTS:
        raise FragmentError(f"unknown fragment {kind!r}")
    extra = operators(f) - FRAGMENTS[kind]
    if extra:
        names = ", ".join(sorted(c.__name__ for c in extra))
        raise FragmentError(f"formula uses {names}, outside the {kind} fragment")
    val = {a: set(ext) for a, ext in m.valuation.items()}
    if kind == "standard":
        return _kripke(m.nodes, m.r1, val, w, f)
    if kind == "sabotage":
        return _sabotage(frozenset(m.r1 - m.r2), val, w, f)
    if m.r2 != {(u, v) for u in m.nodes for v in m.nodes}:
        raise FragmentError("the bridge reading needs r2 to be every pair of nodes")
    return _bridge(m.nodes, frozenset(m.r1), val, w, f)
