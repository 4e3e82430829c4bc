
import pytest
from hypothesis import given, settings, strategies as st

from foplus.alphabet import build_alphabet, format_word
from foplus.automata import CapExceeded, concat, empty_nfa, letters_nfa, universal_nfa
from foplus.counterexample import build_ce_pair, k_context, k_dfa
from foplus.efgame import (
    GamePosition,
    best_move,
    doubling_duplicator_move,
    duplicator_wins,
    minimax_strategy,
    play_trace,
    position_valid,
    verify_strategy,
    witness_search,
)
from foplus.logic import evaluate, sample_formula

from helpers import ab

ABC = build_alphabet(["a", "b", "c"], [("a", "b"), ("a", "c")])


def naive_wins(A, u, v, n, alpha=(), beta=()):
    """Plain game tree: every Spoiler move (replays included), every reply."""
    if n == 0:
        return True
    for side, p in [("u", i) for i in range(len(u))] + [("v", j) for j in range(len(v))]:
        survived = False
        for q in range(len(v) if side == "u" else len(u)):
            i, j = (p, q) if side == "u" else (q, p)
            pos = GamePosition(u, v, alpha + (i,), beta + (j,))
            if position_valid(A, pos) and naive_wins(A, u, v, n - 1, pos.alpha, pos.beta):
                survived = True
                break
        if not survived:
            return False
    return True


def w(A, text):
    return A.parse_word(text)


# -- validity ---------------------------------------------------------------------

def test_position_validity_examples():
    A = ab()
    assert position_valid(A, GamePosition(w(A, "ab"), w(A, "b")))
    assert position_valid(A, GamePosition(w(A, "a"), w(A, "b"), (0,), (0,)))
    assert not position_valid(A, GamePosition(w(A, "b"), w(A, "a"), (0,), (0,)))


def test_coincident_tokens_follow_the_order_condition():
    A = ab()
    u, v = w(A, "aa"), w(A, "bb")
    assert position_valid(A, GamePosition(u, v, (0, 0), (1, 1)))
    assert not position_valid(A, GamePosition(u, v, (0, 0), (0, 1)))


# -- solver ---------------------------------------------------------------------------

def test_solver_examples():
    A = ab()
    assert duplicator_wins(A, w(A, "a"), w(A, "b"), 1)
    assert not duplicator_wins(A, w(A, "b"), w(A, "a"), 1)
    ctx = k_context()
    u, v = build_ce_pair(1)
    assert duplicator_wins(ctx.alphabet, u, v, 1)


def test_caps():
    A = ab()
    with pytest.raises(CapExceeded) as err:
        duplicator_wins(A, w(A, "a"), w(A, "b"), 5)
    assert "rounds" in str(err.value)
    with pytest.raises(CapExceeded) as err:
        duplicator_wins(A, w(A, "a" * 40), w(A, "b" * 40), 1)
    assert "total_length" in str(err.value)


words3 = st.lists(st.sampled_from(["a", "b", "c"]), max_size=4).map("".join)


@settings(max_examples=80, deadline=None)
@given(words3, words3, st.integers(0, 2))
def test_solver_matches_plain_game_tree(u, v, n):
    U, V = w(ABC, u), w(ABC, v)
    assert duplicator_wins(ABC, U, V, n) == naive_wins(ABC, U, V, n)


@settings(max_examples=60, deadline=None)
@given(words3, words3, st.integers(0, 2))
def test_more_rounds_only_help_spoiler(u, v, n):
    U, V = w(ABC, u), w(ABC, v)
    if duplicator_wins(ABC, U, V, n + 1):
        assert duplicator_wins(ABC, U, V, n)


@settings(max_examples=40, deadline=None)
@given(words3, st.integers(0, 3))
def test_reflexive(u, n):
    assert duplicator_wins(ABC, w(ABC, u), w(ABC, u), n)


@settings(max_examples=40, deadline=None)
@given(words3, st.data(), st.integers(0, 3))
def test_word_order_implies_game(u, data, n):
    U = w(ABC, u)
    V = tuple(data.draw(st.sampled_from(sorted(ABC.up(x), key=lambda l: l.name))) for x in U)
    assert duplicator_wins(ABC, U, V, n)


@settings(max_examples=40, deadline=None)
@given(words3, words3, st.integers(0, 2))
def test_extracted_strategy_agrees_with_solver(u, v, n):
    U, V = w(ABC, u), w(ABC, v)
    assert verify_strategy(ABC, U, V, n, minimax_strategy(ABC, U, V)) == duplicator_wins(ABC, U, V, n)


@settings(max_examples=40, deadline=None)
@given(words3, words3, st.integers(0, 2), st.integers(0, 10**6))
def test_game_transfers_sentences(u, v, n, seed):
    U, V = w(ABC, u), w(ABC, v)
    f = sample_formula(n, ABC, seed)
    if duplicator_wins(ABC, U, V, n) and evaluate(f, ABC, U):
        assert evaluate(f, ABC, V)


# -- moves and traces -----------------------------------------------------------------

def test_best_move_examples():
    A = ab()
    pos = GamePosition(w(A, "b"), w(A, "a"), budget=1)
    assert best_move(A, pos) == ("u", 0)
    assert best_move(A, GamePosition(w(A, "b"), w(A, "a"))) is None
    pos = GamePosition(w(A, "a"), w(A, "b"), budget=1)
    assert best_move(A, pos, ("u", 0)) == ("v", 0)


def test_trace_alternates():
    A = ab()
    trace = play_trace(A, w(A, "ab"), w(A, "bb"), 2)
    players = [m[0] for m in trace.moves]
    assert players == ["S", "D"] * (len(players) // 2)
    for s, d in zip(trace.moves[::2], trace.moves[1::2]):
        assert s[1] != d[1]
    assert trace.lines()[0].startswith("S ")


# -- the doubling strategy ------------------------------------------------------------

def test_doubling_replies_on_the_large_instance():
    u, v = build_ce_pair(3)
    pos = GamePosition(u, v, budget=3)
    assert doubling_duplicator_move(pos, ("u", 9)) == 9
    assert doubling_duplicator_move(pos, ("v", 17)) == 18


def test_doubling_replays_an_existing_token():
    u, v = build_ce_pair(2)
    pos = GamePosition(u, v, (5,), (4,), budget=1)
    assert doubling_duplicator_move(pos, ("u", 5)) == 4
    assert doubling_duplicator_move(pos, ("v", 4)) == 5


@pytest.mark.parametrize("n", [1, 2])
def test_doubling_survives(n):
    u, v = build_ce_pair(n)
    assert verify_strategy(k_context().alphabet, u, v, n, doubling_duplicator_move)


def test_doubling_fails_without_a_valid_reply():
    A = ab()
    assert not verify_strategy(A, w(A, "b"), w(A, "a"), 1, doubling_duplicator_move)


# -- witness search -------------------------------------------------------------------

def test_witness_for_k():
    ctx = k_context()
    pair = witness_search(k_dfa().to_nfa(), 1, 6)
    assert pair is not None
    u, v = pair
    assert ctx.dfa.accepts(u) and not ctx.dfa.accepts(v)
    assert duplicator_wins(ctx.alphabet, u, v, 1)


def test_no_witness_for_contains_b():
    A = ab()
    n = concat(universal_nfa(A), letters_nfa(A, ["b"]), universal_nfa(A))
    assert witness_search(n, 1, 5) is None
    assert witness_search(empty_nfa(A), 1, 3) is None


def test_witness_is_first_in_scan_order():
    A = ab()
    astar = concat(universal_nfa(A, [A["a"]]))
    u, v = witness_search(astar, 1, 3)
    assert (format_word(u), format_word(v)) == ("a", "b")
