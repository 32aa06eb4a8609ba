import itertools

import pytest

from sll.checker import PointedState, check
from sll.corpus import phi_t
from sll.enumerate import (BudgetExhausted, EnumSpec, ModelStream, count_labelled,
                           decide_upto, enumerate_models, find_all)
from sll.syntax import parse_formula


def count(**kw):
    return sum(1 for _ in enumerate_models(EnumSpec(**kw)))


def test_counts_without_pruning():
    assert count(max_nodes=1, atoms=("p",), prune_isomorphic=False) == 8
    assert count(max_nodes=2, atoms=("p", "q"), prune_isomorphic=False) == \
        count_labelled(2, 2) == 2 * 2 * 4 + 16 * 16 * 16 * 2


def test_counts_with_pruning():
    assert count(max_nodes=1, atoms=()) == 4


def _brute_force_classes(n, k):
    """Isomorphism classes of pointed labelled models, by direct relabelling."""
    nodes = range(n)
    pairs = [(u, v) for u in nodes for v in nodes]
    seen = set()
    for bits in range(1 << (2 * n * n + k * n)):
        r1 = {pairs[i] for i in range(n * n) if bits >> i & 1}
        r2 = {pairs[i] for i in range(n * n) if bits >> (n * n + i) & 1}
        val = [{u for u in nodes if bits >> (2 * n * n + j * n + u) & 1} for j in range(k)]
        for w in nodes:
            forms = []
            for perm in itertools.permutations(nodes):
                forms.append((tuple(sorted((perm[u], perm[v]) for u, v in r1)),
                              tuple(sorted((perm[u], perm[v]) for u, v in r2)),
                              tuple(tuple(sorted(perm[u] for u in ext)) for ext in val),
                              perm[w]))
            seen.add(min(forms))
    return len(seen)


@pytest.mark.parametrize("n,k", [(1, 1), (2, 0), (2, 1)])
def test_pruned_counts_match_brute_force(n, k):
    got = count(max_nodes=n, min_nodes=n, atoms=tuple("pq"[:k]))
    assert got == _brute_force_classes(n, k)


def test_pruning_never_changes_verdicts():
    for text in ["p -> <>p", "<>~[-1]p", "[]<-2>p", "<+>[]q -> <>q", "p & <>true -> <>[-1]p",
                 "<><-1><>p"]:
        f = parse_formula(text)
        for mode in ("valid", "sat"):
            a = decide_upto(mode, f, EnumSpec(max_nodes=2, prune_isomorphic=True))
            b = decide_upto(mode, f, EnumSpec(max_nodes=2, prune_isomorphic=False))
            assert a.status == b.status


def test_decide_examples():
    v = decide_upto("valid", parse_formula("p -> p"), EnumSpec(max_nodes=2))
    assert v.status == "affirmative" and v.witness is None and v.complete
    v = decide_upto("sat", parse_formula("<>~[-1]p"), EnumSpec(max_nodes=2))
    assert v.status == "affirmative"
    m, seq = v.witness
    assert check(PointedState(m, seq), parse_formula("<>~[-1]p"))


def test_countermodels_reverify():
    f = parse_formula("<>p -> []p")
    v = decide_upto("valid", f, EnumSpec(max_nodes=2))
    assert v.status == "negative"
    m, seq = v.witness
    assert not check(PointedState(m, seq), f)


def test_atoms_default_to_the_formula():
    v = decide_upto("sat", parse_formula("<>q"), EnumSpec(max_nodes=1))
    assert v.atoms == ("q",)
    v = decide_upto("sat", parse_formula("<>q"), EnumSpec(max_nodes=1, atoms=("p", "q")))
    assert v.atoms == ("p", "q")


def test_budget_gives_inconclusive():
    v = decide_upto("sat", parse_formula("p & ~p"), EnumSpec(max_nodes=3, max_candidates=100))
    assert v.status == "inconclusive" and v.examined == 100 and not v.complete
    v = decide_upto("sat", parse_formula("p & ~p"), EnumSpec(max_nodes=3, time_budget=0.0))
    assert v.status == "inconclusive"
    with pytest.raises(BudgetExhausted):
        list(enumerate_models(EnumSpec(max_nodes=2, max_candidates=5)))


def test_longer_sequences():
    spec = EnumSpec(max_nodes=2, atoms=(), seq_len=2, prune_isomorphic=False)
    stream = ModelStream(spec, ())
    cands = list(stream)
    assert all(len(c.seq) == 2 for c in cands) and stream.complete
    assert decide_upto("sat", parse_formula("<-1>true"), spec).status == "affirmative"
    assert decide_upto("sat", parse_formula("<-1>true"), EnumSpec(max_nodes=2)).status == "negative"


def test_phi_t_forces_a_loop_up_to_two_nodes():
    witnesses = list(find_all(phi_t(), EnumSpec(max_nodes=2)))
    assert witnesses
    assert all((seq[0], seq[0]) in m.r1 for m, seq in witnesses)


def test_invalid_spec():
    with pytest.raises(ValueError):
        EnumSpec(max_nodes=0)
    with pytest.raises(ValueError):
        decide_upto("prove", parse_formula("p"), EnumSpec(max_nodes=1))
