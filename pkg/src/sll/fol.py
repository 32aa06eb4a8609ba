"""First-order translation, a finite-structure evaluator and exporters.

The translation mirrors the model-changing modalities syntactically: the
sequence of variables ``E`` stands for the evaluation sequence, and the pair
sets ``E+`` / ``E-`` record edges inserted into / removed from r1.  The
evaluator reads r1 and r2 exactly as declared in the model.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Union

from . import syntax as s
from .model import Model

Var = str
Pair = tuple[Var, Var]


@dataclass(frozen=True)
class Pred:
    name: str
    var: Var


@dataclass(frozen=True)
class Rel1:
    left: Var
    right: Var


@dataclass(frozen=True)
class Rel2:
    left: Var
    right: Var


@dataclass(frozen=True)
class Eq:
    left: Var
    right: Var


@dataclass(frozen=True)
class Verum:
    pass


@dataclass(frozen=True)
class Falsum:
    pass


@dataclass(frozen=True)
class Neg:
    sub: FolFormula


@dataclass(frozen=True)
class Conj:
    parts: tuple[FolFormula, ...]


@dataclass(frozen=True)
class Disj:
    parts: tuple[FolFormula, ...]


@dataclass(frozen=True)
class Exists:
    var: Var
    body: FolFormula


FolFormula = Union[Pred, Rel1, Rel2, Eq, Verum, Falsum, Neg, Conj, Disj, Exists]


class FolError(ValueError):
    pass


def big_or(items: list[FolFormula]) -> FolFormula:
    """Disjunction over a possibly empty index set (empty gives Falsum)."""
    if not items:
        return Falsum()
    if len(items) == 1:
        return items[0]
    return Disj(tuple(items))


def _pair_is(y: Var, y2: Var, pair: Pair) -> FolFormula:
    return Conj((Eq(y, pair[0]), Eq(y2, pair[1])))


@dataclass(frozen=True)
class TranslationContext:
    e_seq: tuple[Var, ...]
    added: tuple[Pair, ...] = ()
    removed: tuple[Pair, ...] = ()

    def __post_init__(self):
        if not self.e_seq:
            raise FolError("the variable sequence must be non-empty")
        if set(self.added) & set(self.removed):
            raise FolError("added and removed pairs must be disjoint")

    def variables(self) -> set[Var]:
        out = set(self.e_seq)
        for pair in self.added + self.removed:
            out.update(pair)
        return out


def sequence_vars(length: int) -> tuple[Var, ...]:
    return tuple(f"x{i}" for i in range(length))


@dataclass
class _Fresh:
    taken: set[Var]
    counter: itertools.count = field(default_factory=itertools.count)

    def __call__(self) -> Var:
        while True:
            name = f"y{next(self.counter)}"
            if name not in self.taken:
                return name


def translate(f: s.Formula, ctx: TranslationContext) -> FolFormula:
    """Translate `f` at context `ctx`; the result is not simplified.

    Box forms are expanded to negated diamonds first.  In the path-cut
    clause each candidate position ``i`` of ``E`` gets its own disjunct that
    binds the cut pair to ``(E[i], E[i+1])``, requires no earlier position to
    denote the same pair, and continues with ``E`` truncated after ``E[i]``.
    """
    fresh = _Fresh(ctx.variables())
    return _tr(s.expand_duals(f), list(ctx.e_seq), list(ctx.added), list(ctx.removed), fresh)


def _tr(f, E: list[Var], plus: list[Pair], minus: list[Pair], fresh: _Fresh) -> FolFormula:
    if isinstance(f, s.Atom):
        return Pred(f.name, E[-1])
    if isinstance(f, s.Top):
        return Verum()
    if isinstance(f, s.Bot):
        return Falsum()
    if isinstance(f, s.Not):
        return Neg(_tr(f.sub, E, plus, minus, fresh))
    if isinstance(f, s.And):
        return Conj((_tr(f.left, E, plus, minus, fresh), _tr(f.right, E, plus, minus, fresh)))
    if isinstance(f, s.Or):
        return Disj((_tr(f.left, E, plus, minus, fresh), _tr(f.right, E, plus, minus, fresh)))
    if isinstance(f, s.Implies):
        return Disj((Neg(_tr(f.left, E, plus, minus, fresh)), _tr(f.right, E, plus, minus, fresh)))

    if isinstance(f, s.Dia):
        last = E[-1]
        y = fresh()
        via_added = big_or([_pair_is(last, y, p) for p in plus])
        not_removed = Neg(big_or([_pair_is(last, y, p) for p in minus]))
        step = Disj((via_added, Conj((Rel1(last, y), not_removed))))
        return Exists(y, Conj((step, _tr(f.sub, E + [y], plus, minus, fresh))))

    y, y2 = fresh(), fresh()
    pair = (y, y2)
    if isinstance(f, s.Cut1):
        path = list(zip(E, E[1:]))
        options = []
        for i, (a, b) in enumerate(path):
            if (a, b) in plus or (a, b) in minus:
                continue
            parts = [Eq(y, a), Eq(y2, b)]
            if i:
                parts.append(Neg(big_or([_pair_is(y, y2, q) for q in path[:i]])))
            parts.append(_tr(f.sub, E[:i + 1], plus, minus + [pair], fresh))
            options.append(Conj(tuple(parts)))
        guard = Conj((big_or(options), Rel1(y, y2), Neg(Rel2(y, y2)),
                      Neg(big_or([_pair_is(y, y2, q) for q in minus]))))
        return Exists(y, Exists(y2, guard))
    if isinstance(f, s.Cut2):
        excluded = list(zip(E, E[1:])) + minus + plus
        body = Conj((Rel1(y, y2), Neg(big_or([_pair_is(y, y2, q) for q in excluded])),
                     Neg(Rel2(y, y2)), _tr(f.sub, E, plus, minus + [pair], fresh)))
        return Exists(y, Exists(y2, body))
    if isinstance(f, s.Add):
        body = Conj((Neg(big_or([_pair_is(y, y2, q) for q in minus + plus])),
                     Neg(Rel1(y, y2)), Rel2(y, y2), _tr(f.sub, E, plus + [pair], minus, fresh)))
        return Exists(y, Exists(y2, body))
    raise TypeError(f"not a formula: {f!r}")


def simplify(f: FolFormula) -> FolFormula:
    """Remove Verum/Falsum constants and flatten nested Conj/Disj."""
    if isinstance(f, Neg):
        sub = simplify(f.sub)
        if isinstance(sub, Verum):
            return Falsum()
        if isinstance(sub, Falsum):
            return Verum()
        if isinstance(sub, Neg):
            return sub.sub
        return Neg(sub)
    if isinstance(f, (Conj, Disj)):
        unit, zero = (Verum, Falsum) if isinstance(f, Conj) else (Falsum, Verum)
        parts: list[FolFormula] = []
        for p in map(simplify, f.parts):
            if isinstance(p, zero):
                return zero()
            if isinstance(p, unit):
                continue
            parts.extend(p.parts if isinstance(p, type(f)) else [p])
        if not parts:
            return unit()
        return parts[0] if len(parts) == 1 else type(f)(tuple(parts))
    if isinstance(f, Exists):
        body = simplify(f.body)
        if isinstance(body, (Verum, Falsum)):
            return body
        return Exists(f.var, body)
    return f


def free_vars(f: FolFormula) -> set[Var]:
    if isinstance(f, Pred):
        return {f.var}
    if isinstance(f, (Rel1, Rel2, Eq)):
        return {f.left, f.right}
    if isinstance(f, Neg):
        return free_vars(f.sub)
    if isinstance(f, (Conj, Disj)):
        return set().union(*map(free_vars, f.parts))
    if isinstance(f, Exists):
        return free_vars(f.body) - {f.var}
    return set()


def eval_fol(m: Model, f: FolFormula, assignment: Mapping[Var, str]) -> bool:
    """Tarskian truth of `f` in `m` (r1, r2 as declared) under `assignment`."""
    missing = free_vars(f) - set(assignment)
    if missing:
        raise FolError(f"unassigned free variable(s): {', '.join(sorted(missing))}")
    for var, node in assignment.items():
        if node not in m.index:
            raise FolError(f"{var} is assigned to unknown node {node!r}")
    return _eval(f, m, dict(assignment))


def _eval(f: FolFormula, m: Model, env: dict[Var, str]) -> bool:
    if isinstance(f, Pred):
        return env[f.var] in m.true_at(f.name)
    if isinstance(f, Rel1):
        return (env[f.left], env[f.right]) in m.r1
    if isinstance(f, Rel2):
        return (env[f.left], env[f.right]) in m.r2
    if isinstance(f, Eq):
        return env[f.left] == env[f.right]
    if isinstance(f, Verum):
        return True
    if isinstance(f, Falsum):
        return False
    if isinstance(f, Neg):
        return not _eval(f.sub, m, env)
    if isinstance(f, Conj):
        return all(_eval(p, m, env) for p in f.parts)
    if isinstance(f, Disj):
        return any(_eval(p, m, env) for p in f.parts)
    if isinstance(f, Exists):
        saved = env.get(f.var)
        try:
            for node in m.nodes:
                env[f.var] = node
                if _eval(f.body, m, env):
                    return True
            return False
        finally:
            if saved is None:
                env.pop(f.var, None)
            else:
                env[f.var] = saved
    raise TypeError(f"not a first-order formula: {f!r}")


# -- export -----------------------------------------------------------------

def to_sexpr(f: FolFormula) -> str:
    """Parenthesized prefix notation, e.g. ``(exists y0 (and (r1 x0 y0) (p y0)))``."""
    if isinstance(f, Pred):
        return f"({f.name} {f.var})"
    if isinstance(f, Rel1):
        return f"(r1 {f.left} {f.right})"
    if isinstance(f, Rel2):
        return f"(r2 {f.left} {f.right})"
    if isinstance(f, Eq):
        return f"(= {f.left} {f.right})"
    if isinstance(f, Verum):
        return "true"
    if isinstance(f, Falsum):
        return "false"
    if isinstance(f, Neg):
        return f"(not {to_sexpr(f.sub)})"
    if isinstance(f, Conj):
        return "(and " + " ".join(map(to_sexpr, f.parts)) + ")"
    if isinstance(f, Disj):
        return "(or " + " ".join(map(to_sexpr, f.parts)) + ")"
    if isinstance(f, Exists):
        return f"(exists {f.var} {to_sexpr(f.body)})"
    raise TypeError(f)


def _tptp_var(v: Var) -> str:
    return v[0].upper() + v[1:]


def _tptp(f: FolFormula) -> str:
    if isinstance(f, Pred):
        return f"{f.name}({_tptp_var(f.var)})"
    if isinstance(f, Rel1):
        return f"r1({_tptp_var(f.left)},{_tptp_var(f.right)})"
    if isinstance(f, Rel2):
        return f"r2({_tptp_var(f.left)},{_tptp_var(f.right)})"
    if isinstance(f, Eq):
        return f"{_tptp_var(f.left)} = {_tptp_var(f.right)}"
    if isinstance(f, Verum):
        return "$true"
    if isinstance(f, Falsum):
        return "$false"
    if isinstance(f, Neg):
        return f"~ {_tptp_atomic(f.sub)}"
    if isinstance(f, Conj):
        return " & ".join(map(_tptp_atomic, f.parts))
    if isinstance(f, Disj):
        return " | ".join(map(_tptp_atomic, f.parts))
    if isinstance(f, Exists):
        return f"? [{_tptp_var(f.var)}] : {_tptp_atomic(f.body)}"
    raise TypeError(f)


def _tptp_atomic(f: FolFormula) -> str:
    text = _tptp(f)
    return f"({text})" if isinstance(f, (Conj, Disj, Eq)) else text


def export_tptp(f: FolFormula, role: str = "axiom", name: str = "q") -> str:
    """One TPTP ``fof`` line; free variables are universally closed."""
    body = _tptp(f)
    free = sorted(free_vars(f))
    if free:
        body = f"! [{','.join(map(_tptp_var, free))}] : ({body})"
    return f"fof({name}, {role}, {body})."
