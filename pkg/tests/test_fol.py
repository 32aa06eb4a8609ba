import random

import pytest

from sll import syntax as s
from sll.checker import PointedState, check
from sll.fol import (Conj, Disj, Eq, Exists, Falsum, FolError, Neg, Pred, Rel1, Rel2,
                     TranslationContext, Verum, eval_fol, export_tptp, free_vars,
                     sequence_vars, simplify, to_sexpr, translate)
from sll.model import Insert, Model, Remove, apply_delta
from sll.sampling import random_formula, random_model, random_sequence
from sll.syntax import parse_formula

X0 = TranslationContext(("x0",))


def fol_check(m, seq, f, simplified=False):
    xs = sequence_vars(len(seq))
    g = translate(f, TranslationContext(xs))
    if simplified:
        g = simplify(g)
    return eval_fol(m, g, dict(zip(xs, seq)))


def test_translate_atom():
    assert translate(s.Atom("p"), X0) == Pred("p", "x0")


def test_translate_diamond_raw_and_simplified():
    raw = translate(parse_formula("<>p"), X0)
    assert raw == Exists("y0", Conj((
        Disj((Falsum(), Conj((Rel1("x0", "y0"), Neg(Falsum()))))),
        Pred("p", "y0"))))
    assert simplify(raw) == Exists("y0", Conj((Rel1("x0", "y0"), Pred("p", "y0"))))


def test_translate_cut1_on_singleton_is_false():
    assert simplify(translate(parse_formula("<-1>p"), X0)) == Falsum()
    assert simplify(translate(parse_formula("[-1]p"), X0)) == Verum()


def test_context_invariants():
    with pytest.raises(FolError):
        TranslationContext(())
    with pytest.raises(FolError):
        TranslationContext(("x0",), added=(("a", "b"),), removed=(("a", "b"),))


def test_fresh_variables_avoid_context_names():
    ctx = TranslationContext(("x0",), removed=(("y0", "y1"),))
    g = translate(parse_formula("<>p"), ctx)
    assert isinstance(g, Exists) and g.var == "y2"


def test_free_variables_stay_in_the_sequence():
    rng = random.Random(2)
    for _ in range(300):
        f = random_formula(rng, 3)
        fv = free_vars(translate(f, X0))
        assert fv <= {"x0"}
        assert free_vars(translate(s.And(s.Atom("p"), f), X0)) == {"x0"}


def test_eval_fol_examples(fig2):
    assert eval_fol(fig2, Exists("y", Rel1("x", "y")), {"x": "w"})
    assert eval_fol(fig2, Eq("x", "x"), {"x": "w2"})
    assert eval_fol(fig2, Pred("p", "x"), {"x": "w1"})
    assert not eval_fol(fig2, Rel2("x", "x"), {"x": "w1"})
    with pytest.raises(FolError):
        eval_fol(fig2, Pred("p", "x"), {})
    with pytest.raises(FolError):
        eval_fol(fig2, Pred("p", "x"), {"x": "nowhere"})


def test_eval_restores_shadowed_variables(fig2):
    f = Conj((Exists("x", Pred("q", "x")), Pred("p", "x")))
    assert eval_fol(fig2, f, {"x": "w1"})


def test_translation_agrees_with_checker_sample():
    rng = random.Random(17)
    for _ in range(300):
        m = random_model(rng, max_nodes=4)
        seq = random_sequence(rng, m, max_len=3)
        f = random_formula(rng, 3)
        expected = check(PointedState(m, seq), f)
        assert fol_check(m, seq, f) == expected
        assert fol_check(m, seq, f, simplified=True) == expected


def test_first_occurrence_regression():
    # cutting (a,b) must truncate to <a>, not to the later <a,b,a>
    m = Model.build(["a", "b"], [("a", "b"), ("b", "a")], [], {"p": ["a"]})
    seq = ("a", "b", "a")
    f = parse_formula("<><-1>(p & [-2]false)")
    assert check(PointedState(m, seq), f) is False
    assert fol_check(m, seq, f) is False


def delta_instance(rng, mode):
    """(left, right) truth values of the delta property on one random instance."""
    while True:
        m = random_model(rng, max_nodes=4)
        pool = (m.r1 - m.r2) if mode == "remove" else (m.r2 - m.r1)
        if pool:
            break
    edge = rng.choice(m.sorted_edges(pool))
    changed = apply_delta(m, Remove(edge) if mode == "remove" else Insert(edge))
    seq = random_sequence(rng, changed, max_len=3)
    f = random_formula(rng, 3)
    xs = sequence_vars(len(seq))
    env = dict(zip(xs, seq))
    left = eval_fol(changed, translate(f, TranslationContext(xs)), env)
    pair = (("z0", "z1"),)
    ctx = (TranslationContext(xs, removed=pair) if mode == "remove"
           else TranslationContext(xs, added=pair))
    right = eval_fol(m, translate(f, ctx), {**env, "z0": edge[0], "z1": edge[1]})
    return left, right, check(PointedState(changed, seq), f)


@pytest.mark.parametrize("mode", ["remove", "insert"])
def test_delta_property_sample(mode):
    rng = random.Random(23 if mode == "remove" else 29)
    for _ in range(200):
        left, right, direct = delta_instance(rng, mode)
        assert left == right == direct


def test_sexpr_export():
    g = simplify(translate(parse_formula("<>p"), X0))
    assert to_sexpr(g) == "(exists y0 (and (r1 x0 y0) (p y0)))"
    assert to_sexpr(Neg(Eq("x0", "y0"))) == "(not (= x0 y0))"
    assert to_sexpr(Falsum()) == "false"


def test_tptp_export():
    assert export_tptp(Pred("p", "x0")) == "fof(q, axiom, ! [X0] : (p(X0)))."
    g = simplify(translate(parse_formula("<>p"), X0))
    assert export_tptp(g, role="conjecture", name="dia") == \
        "fof(dia, conjecture, ! [X0] : (? [Y0] : (r1(X0,Y0) & p(Y0))))."
    assert export_tptp(Falsum()) == "fof(q, axiom, $false)."
    assert export_tptp(Disj((Eq("x0", "x0"), Neg(Rel2("x0", "x0"))))) == \
        "fof(q, axiom, ! [X0] : ((X0 = X0) | ~ r2(X0,X0)))."
