import pytest
from hypothesis import given, settings, strategies as st

from foplus.automata import CapExceeded
from foplus.intgame import (
    MIRRORED,
    STANDARD,
    IntegerArena,
    StrategyError,
    format_arena,
    iter_arenas,
    parse_arena,
    referee_check,
    solve_int_game,
    spoiler_move,
    strategy_trace,
    sweep,
    validate_arena,
    verify_spoiler_strategy,
)


def test_arena_validation_examples():
    assert validate_arena(parse_arena(1, "1 0", "1/0 1/0"))
    assert not validate_arena(parse_arena(1, "0 1", "1/0 1/0"))
    assert validate_arena(parse_arena(2, "2 1 0", "2/1 1/0"))
    assert not validate_arena(IntegerArena(1, (1, 0), (1, 1), "sideways"))


def test_parse_and_format():
    a = parse_arena(2, "2 1 0", "<2/1> <1/0>")
    assert a.v == (2, 1)
    assert format_arena(a) == "u = 2 1 0\nv = <2/1> <1/0>"
    with pytest.raises(ValueError):
        parse_arena(2, "2 0", "2/0")


def test_referee_examples():
    a = IntegerArena(3, (3, 2, 1), (3, 2, 1), STANDARD)
    assert referee_check(a, [(0, 0), (1, 1)])
    b = IntegerArena(3, (3, 1), (3, 2), STANDARD)
    assert not referee_check(b, [(0, 0), (1, 1)])
    assert referee_check(IntegerArena(2, (2,), (2,)), [(0, 0)])


def test_referee_neighbours():
    a = IntegerArena(1, (1, 0, 1, 0), (1, 1), STANDARD)
    # adjacent u cells facing non-adjacent v cells
    assert not referee_check(a, [(0, 0), (1, 0)])
    assert not referee_check(a, [(0, 0), (2, 1)])


def test_strategy_first_moves():
    a = parse_arena(1, "1 0", "1/0 1/0")
    assert spoiler_move(a) == ("u", 0)
    assert spoiler_move(a, [("u", 0, 0)]) == ("u", 1)
    assert spoiler_move(a, [("u", 0, 0), ("u", 1, 1)]) is None
    b = parse_arena(2, "2 1 2 1 0", "2/1 1/0 2/1 1/0")
    assert validate_arena(b)
    assert spoiler_move(b) == ("u", 2)


def test_strategy_rejects_foreign_history():
    a = parse_arena(1, "1 0", "1/0 1/0")
    with pytest.raises(StrategyError):
        spoiler_move(a, [("v", 1, 0)])


def test_single_cell_game():
    assert solve_int_game(parse_arena(1, "1 0", "1/0")) == ("spoiler", 2)


def test_solver_cap():
    a = parse_arena(1, "1 0 " * 5, "1/0 " * 5)
    with pytest.raises(CapExceeded):
        solve_int_game(a, cap=8)


@pytest.mark.parametrize("orientation", [STANDARD, MIRRORED])
def test_sweep_n1(orientation):
    r = sweep(1, 4, orientation)
    assert r.arenas > 0 and not r.failures
    assert r.max_strategy_rounds <= 2 and r.max_solver_rounds <= 2


def test_mirrors_take_the_same_rounds():
    for a in iter_arenas(2, 4, 4, STANDARD):
        m = a.mirror()
        assert validate_arena(m)
        assert verify_spoiler_strategy(a) == verify_spoiler_strategy(m)
        assert solve_int_game(a) == solve_int_game(m)


def test_trace_is_legal_until_stuck():
    a = parse_arena(2, "2 1 0", "2/1 1/0")
    rounds = strategy_trace(a)
    assert len(rounds) <= 4
    pairs = []
    for side, pos, answer in rounds:
        if answer < 0:
            break
        pairs.append((pos, answer) if side == "u" else (answer, pos))
        assert referee_check(a, pairs)


arena_words = st.integers(1, 2).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(0, n), min_size=1, max_size=6),
        st.lists(st.integers(1, n), min_size=1, max_size=6),
        st.sampled_from([STANDARD, MIRRORED]),
    )
)


@settings(max_examples=150, deadline=None)
@given(arena_words)
def test_strategy_wins_within_2n(data):
    n, u, v, orientation = data
    a = IntegerArena(n, tuple(u), tuple(v), orientation)
    if not validate_arena(a):
        return
    rounds = verify_spoiler_strategy(a)
    assert rounds is not None and rounds <= 2 * n
