import random

import pytest

from sll import syntax as s
from sll.checker import check_at
from sll.corpus import SAMPLE_PLAY, FIG1_CERTIFICATE, FIG1_SCHEDULE
from sll.game import (AddEdge, CutOff, CutPath, Game, GamePosition, IllegalMove, Nothing, Round,
                      apply_teacher, certificate, default_max_rounds, is_won, learner_moves,
                      learner_step, replay, schedule_forces_win, solve, status, step_round,
                      teacher_moves)
from sll.model import Model, seq_set
from sll.sampling import random_model


@pytest.fixture
def game(fig1):
    return Game(fig1.model, fig1.start, fig1.goal)


def test_learner_moves(game):
    pos = game.initial()
    assert learner_moves(pos) == ["b"]
    pos = step_round(pos, "b", AddEdge(("e", "f")))
    pos = step_round(pos, "c", AddEdge(("b", "e")))
    pos = step_round(pos, "G", CutPath(("b", "c")))
    assert pos.seq == ("a", "b")
    assert learner_moves(pos) == ["e"]
    sink = GamePosition(game, game.model.r1, ("a", "b", "c", "G"))
    assert learner_moves(sink) == [] and status(sink) == "lost"


def test_teacher_moves_after_first_step(game):
    mid = learner_step(game.initial(), "b")
    moves = teacher_moves(mid)
    assert moves == [Nothing(), AddEdge(("a", "c")), AddEdge(("b", "e")), AddEdge(("e", "f")),
                     CutOff(("b", "c")), CutOff(("c", "G"))]


def test_teacher_can_cut_the_path(game):
    pos = step_round(game.initial(), "b", AddEdge(("e", "f")))
    pos = step_round(pos, "c", AddEdge(("b", "e")))
    mid = learner_step(pos, "G")
    assert mid.seq == ("a", "b", "c", "G")
    assert not is_won(mid)
    assert CutPath(("b", "c")) in teacher_moves(mid)
    after = apply_teacher(mid, CutPath(("b", "c")))
    assert after.seq == ("a", "b") and ("b", "c") not in after.r1


def test_only_nothing_when_pools_empty():
    m = Model.build(["a", "b"], [("a", "b")], [("a", "b")])
    g = Game(m, "a", "b")
    assert teacher_moves(learner_step(g.initial(), "b")) == [Nothing()]


def test_illegal_moves(game):
    with pytest.raises(IllegalMove):
        learner_step(game.initial(), "c")
    mid = learner_step(game.initial(), "b")
    with pytest.raises(IllegalMove):
        apply_teacher(mid, CutPath(("a", "b")))
    with pytest.raises(IllegalMove):
        apply_teacher(mid, AddEdge(("a", "b")))


def test_status():
    m = Model.build(["g"])
    assert status(Game(m, "g", "g").initial()) == "won"


def test_example_play_replays(game):
    pos, st = replay(game, SAMPLE_PLAY)
    assert st == "won" and pos.seq == ("a", "b", "e", "f", "G")
    assert seq_set(pos.seq) <= game.model.r2


def test_replay_rejects_rounds_after_a_win(game):
    rounds = list(SAMPLE_PLAY) + [Round("G", Nothing())]
    with pytest.raises(IllegalMove):
        replay(game, rounds)


def test_solve_fig1(game):
    res = solve(game, 8)
    assert res.found and len(res.play.rounds) == 6
    pos, st = replay(game, res.play.rounds)
    assert st == "won" and pos.seq == ("a", "b", "e", "f", "G")
    assert [str(r) for r in res.play.rounds][:3] == [
        "learner b | teacher nothing", "learner c | teacher add b->e",
        "learner G | teacher cut-path b->c"]


def test_solve_bounds(game):
    assert solve(game, 3).found is False
    assert len(solve(game, 4).play.rounds) == 4
    assert default_max_rounds(game.model) == 6 * (7 + 1)


def test_solve_without_r2_path():
    m = Model.build(["s", "g"], [("s", "g"), ("g", "s")], [])
    for bound in (1, 5, 20):
        assert not solve(Game(m, "s", "g"), bound).found


def test_solve_start_is_goal(game):
    res = solve(Game(game.model, "a", "a"))
    assert res.found and res.play.rounds == ()


def test_certificate_text():
    assert s.render_formula(certificate(FIG1_SCHEDULE, "p")) == FIG1_CERTIFICATE
    assert s.render_formula(certificate([], "p")) == "p & [-1]false"
    assert s.render_formula(certificate(["blank"], "p")) == "[](p & [-1]false)"


def test_certificate_and_game_agree_on_fig1(game):
    assert check_at(game.model, certificate(FIG1_SCHEDULE, "p"), "a")
    assert schedule_forces_win(game, FIG1_SCHEDULE)


def test_vacuous_box_at_stuck_positions(game):
    # four rounds: the formula holds, yet Learner can get stuck in the game
    sched = solve(game, 4).play.schedule()
    assert check_at(game.model, certificate(sched, "p"), "a")
    assert not schedule_forces_win(game, sched)


def test_solved_plays_replay_to_won():
    rng = random.Random(12)
    solved = 0
    for _ in range(80):
        m = random_model(rng, max_nodes=3)
        g = Game(m, m.nodes[0], m.nodes[-1])
        res = solve(g, 4)
        if res.found:
            solved += 1
            assert replay(g, res.play.rounds)[1] == "won"
            assert solve(g, 4) == res
    assert solved > 10


def test_pool_invariants():
    rng = random.Random(9)
    for _ in range(200):
        m = random_model(rng, max_nodes=4)
        g = Game(m, m.nodes[0], m.nodes[-1])
        pos = g.initial()
        adds = 0
        for _ in range(8):
            if status(pos) != "ongoing":
                break
            mid = learner_step(pos, rng.choice(learner_moves(pos)))
            if is_won(mid):
                break
            moves = teacher_moves(mid)
            path = {a.edge for a in moves if isinstance(a, CutPath)}
            off = {a.edge for a in moves if isinstance(a, CutOff)}
            assert not path & off and not (path | off) & m.r2
            action = rng.choice(moves)
            adds += isinstance(action, AddEdge)
            pos = apply_teacher(mid, action)
            assert seq_set(pos.seq) <= pos.r1 and pos.seq[0] == g.start
        assert adds <= len(m.r2 - m.r1)
