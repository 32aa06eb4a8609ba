import random

import pytest

from sll import syntax as s
from sll.checker import check_at
from sll.corpus import CORPUS, PHI_INF_PARTS, phi_infinity, run_corpus, validity
from sll.sampling import random_formula, random_model
from sll.syntax import parse_formula


@pytest.mark.parametrize("name", sorted(CORPUS))
def test_corpus_entries_self_verify(name):
    report = run_corpus(name)
    assert report.ok, [c for c in report.checks if not c.ok]


def test_unknown_entry():
    with pytest.raises(KeyError):
        run_corpus("fig9")


def test_phi_infinity_parses_balanced():
    for text in PHI_INF_PARTS.values():
        assert text.count("(") == text.count(")")
        parse_formula(text)
    assert s.atoms(phi_infinity()) == ["p", "q"]


def test_validity_templates_render():
    p, q = s.Atom("p"), s.Atom("q")
    assert s.render_formula(validity("atom-survives-return")) == "p -> [][-1]p"
    assert s.render_formula(validity("step-then-return")) == "p & <>true -> <>[-1]p"
    assert s.render_formula(validity("atom-persistence", op="[+]")) == "p -> [+]p"
    assert s.render_formula(validity("cut1-persists", p, n=1, m=1)) == "[]<-1>p -> [][]<-1>p"
    assert s.render_formula(validity("cut1-as-cut2", p, n=2)) == "<><><-1>p -> <-2>p | <><-2>p"
    assert s.render_formula(validity("distribution-on-path", p, q, n=1)) == \
        "[][-1](p -> q) -> [][-1]p -> [][-1]q"
    with pytest.raises(ValueError):
        validity("cut1-as-cut2", n=0)
    with pytest.raises(ValueError):
        validity("no-such-template")


def test_validities_sample():
    rng = random.Random(6)
    for _ in range(100):
        m = random_model(rng, max_nodes=3)
        w = rng.choice(m.nodes)
        phi, psi = random_formula(rng, 2), random_formula(rng, 2)
        n, k = rng.randint(0, 3), rng.randint(0, 3)
        for f in (validity("cut1-box-vacuous", phi), validity("atom-survives-return"), validity("step-then-return"), validity("atom-persistence"), validity("atom-persistence", op="[+]"),
                  validity("distribution", phi, psi), validity("distribution", phi, psi, op="[+]"),
                  validity("distribution-on-path", phi, psi, n=n), validity("cut1-persists", phi, n=n, m=k),
                  validity("cut1-as-cut2", phi, n=max(n, 1))):
            assert check_at(m, f, w), s.render_formula(f)


def test_schema_four_is_not_closed_under_substitution(fig2):
    bad = s.Implies(s.And(parse_formula("<>p"), parse_formula("<>[]q")),
                    parse_formula("<>[-1]<>p"))
    assert not check_at(fig2, bad, "w")
