import random

import pytest

from sll.model import (Insert, Model, ModelError, Remove, apply_delta, is_r1_sequence,
                       parse_model, render_model, seq_set, truncate_sequence)
from sll.sampling import random_model, random_sequence


def test_parse_fig1(fig1):
    m = fig1.model
    assert m.nodes == ("a", "b", "c", "e", "f", "G")
    assert len(m.r1) == 4 and len(m.r2) == 5
    assert m.true_at("p") == {"G"}
    assert (fig1.start, fig1.goal) == ("a", "G")


def test_parse_fig2(fig2):
    assert fig2.r1 == {("w", "w1")} and fig2.r2 == {("w1", "w2")}
    assert fig2.true_at("q") == {"w2"}


@pytest.mark.parametrize("text", [
    "nodes: a b\nr1: a->zz\n",
    "nodes: a a\n",
    "nodes: a\nr1: a-a\n",
    "nodes: a\nwhat: a\n",
    "nodes: a\nval p: b\n",
    "r1: a->a\n",
])
def test_parse_errors(text):
    with pytest.raises(ModelError):
        parse_model(text)


def test_render_round_trip(fig1):
    text = render_model(fig1.model, fig1.start, fig1.goal)
    again = parse_model(text)
    assert again == fig1
    assert again.model.valuation == fig1.model.valuation


def test_truncate_examples():
    s = ("a", "b", "c", "a", "b")
    assert truncate_sequence(s, ("a", "b")) == ("a",)
    assert truncate_sequence(("a", "b", "c"), ("b", "c")) == ("a", "b")
    assert truncate_sequence(s, ("c", "a")) == ("a", "b", "c")
    with pytest.raises(ModelError):
        truncate_sequence(s, ("b", "a"))


def test_apply_delta_examples(fig1):
    m = fig1.model
    added = apply_delta(m, Insert(("e", "f")))
    assert added.r1 == m.r1 | {("e", "f")}
    assert added.r2 == m.r2 and added.valuation == m.valuation
    removed = apply_delta(m, Remove(("b", "c")))
    assert removed.r1 == {("a", "b"), ("c", "G"), ("f", "G")}
    assert apply_delta(removed, Insert(("b", "c"))) == m
    with pytest.raises(ModelError):
        apply_delta(m, Remove(("a", "c")))
    with pytest.raises(ModelError):
        apply_delta(m, Insert(("a", "b")))


def test_truncation_restores_pointed_condition():
    rng = random.Random(7)
    checked = 0
    for _ in range(400):
        m = random_model(rng, max_nodes=4)
        seq = random_sequence(rng, m, max_len=5)
        for edge in seq_set(seq):
            cut = truncate_sequence(seq, edge)
            assert len(cut) < len(seq) and seq[:len(cut)] == cut
            assert edge not in seq_set(cut)
            assert is_r1_sequence(m.with_r1(m.r1 - {edge}), cut)
            checked += 1
        for edge in m.r1:
            assert apply_delta(apply_delta(m, Remove(edge)), Insert(edge)) == m
    assert checked > 100


def test_model_validation():
    with pytest.raises(ModelError):
        Model.build(["a"], [("a", "b")])
    with pytest.raises(ModelError):
        Model.build([], [])
