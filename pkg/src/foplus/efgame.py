"""Ordered Ehrenfeucht-Fraisse games (EF+) on pairs of words.

Spoiler places a token on ``u`` or ``v``; Duplicator must answer on the other
word.  After every round the placement must stay *valid*: each token on ``u``
carries a letter below its partner on ``v``, and the two placements are
ordered the same way.  ``duplicator_wins(u, v, n)`` is the relation written
u ≼ₙ v: Duplicator survives ``n`` rounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .alphabet import Letter, OrderedAlphabet, Word, format_word
from .automata import CapExceeded, Nfa

DEFAULT_MAX_ROUNDS = 4
DEFAULT_MAX_TOTAL_LENGTH = 64

SPOILER = "S"
DUPLICATOR = "D"
U_SIDE = "u"
V_SIDE = "v"

Pair = tuple[int, int]
Move = tuple[str, int]


@dataclass(frozen=True)
class GamePosition:
    """Tokens ``alpha[i]`` on ``u`` paired with ``beta[i]`` on ``v``."""

    u: Word
    v: Word
    alpha: tuple[int, ...] = ()
    beta: tuple[int, ...] = ()
    budget: int = 0

    def __post_init__(self):
        if len(self.alpha) != len(self.beta):
            raise ValueError("alpha and beta must have the same length")
        if any(not 0 <= i < len(self.u) for i in self.alpha):
            raise ValueError("a token lies outside u")
        if any(not 0 <= j < len(self.v) for j in self.beta):
            raise ValueError("a token lies outside v")
        if self.budget < 0:
            raise ValueError("negative budget")

    @property
    def pairs(self) -> frozenset[Pair]:
        return frozenset(zip(self.alpha, self.beta))

    def extended(self, i: int, j: int) -> GamePosition:
        return GamePosition(self.u, self.v, self.alpha + (i,), self.beta + (j,), self.budget - 1)


@dataclass
class MoveTrace:
    moves: list[tuple[str, str, int]] = field(default_factory=list)

    def lines(self) -> list[str]:
        return [f"{player} {side} {pos}" for player, side, pos in self.moves]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def _pair_ok(leq: Sequence[Sequence[bool]], pairs: frozenset[Pair] | Sequence[Pair], i: int, j: int) -> bool:
    if not leq[i][j]:
        return False
    for a, b in pairs:
        if (a <= i) != (b <= j) or (i <= a) != (j <= b):
            return False
    return True


def position_valid(alphabet: OrderedAlphabet, position: GamePosition) -> bool:
    u, v = position.u, position.v
    for i, j in zip(position.alpha, position.beta):
        if not alphabet.leq(u[i], v[j]):
            return False
    for a, b in zip(position.alpha, position.beta):
        for c, d in zip(position.alpha, position.beta):
            if (a <= c) != (b <= d):
                return False
    return True


def _check_caps(u: Word, v: Word, n: int, max_rounds: int, max_total_length: int) -> None:
    if n > max_rounds:
        raise CapExceeded("rounds", n, max_rounds)
    if len(u) + len(v) > max_total_length:
        raise CapExceeded("total_length", len(u) + len(v), max_total_length)


class _Solver:
    """Memoized minimax on sets of token pairs.

    Spoiler replaying a position that already carries a token is skipped:
    Duplicator may answer with the existing partner, which leaves the same
    pairs and one round fewer, so such a move never helps Spoiler.
    """

    def __init__(self, alphabet: OrderedAlphabet, u: Word, v: Word):
        self.u, self.v = u, v
        self.leq = [[alphabet.leq(a, b) for b in v] for a in u]
        self.memo: dict[tuple[frozenset[Pair], int], bool] = {}

    def replies(self, pairs: frozenset[Pair], side: str, p: int) -> Iterator[Pair]:
        if side == U_SIDE:
            for j in range(len(self.v)):
                if _pair_ok(self.leq, pairs, p, j):
                    yield p, j
        else:
            for i in range(len(self.u)):
                if _pair_ok(self.leq, pairs, i, p):
                    yield i, p

    def spoiler_moves(self) -> Iterator[Move]:
        for i in range(len(self.u)):
            yield U_SIDE, i
        for j in range(len(self.v)):
            yield V_SIDE, j

    def wins(self, pairs: frozenset[Pair], budget: int) -> bool:
        """Does Duplicator survive ``budget`` more rounds from ``pairs``?"""
        if budget == 0:
            return True
        key = (pairs, budget)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        used_u = {a for a, _ in pairs}
        used_v = {b for _, b in pairs}
        result = True
        for side, p in self.spoiler_moves():
            if p in (used_u if side == U_SIDE else used_v):
                continue
            if not self.answerable(pairs, side, p, budget):
                result = False
                break
        self.memo[key] = result
        return result

    def answerable(self, pairs: frozenset[Pair], side: str, p: int, budget: int) -> bool:
        return any(self.wins(pairs | {pair}, budget - 1) for pair in self.replies(pairs, side, p))


@lru_cache(maxsize=64)
def _solver(alphabet: OrderedAlphabet, u: Word, v: Word) -> _Solver:
    return _Solver(alphabet, u, v)


def duplicator_wins(
    alphabet: OrderedAlphabet,
    u: Sequence[Letter],
    v: Sequence[Letter],
    n: int,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    max_total_length: int = DEFAULT_MAX_TOTAL_LENGTH,
) -> bool:
    u, v = alphabet.check_word(u), alphabet.check_word(v)
    _check_caps(u, v, n, max_rounds, max_total_length)
    return _solver(alphabet, u, v).wins(frozenset(), n)


def best_move(
    alphabet: OrderedAlphabet,
    position: GamePosition,
    spoiler_move: Move | None = None,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    max_total_length: int = DEFAULT_MAX_TOTAL_LENGTH,
) -> Move | None:
    """Optimal move for whoever is to play.

    Without ``spoiler_move`` it is Spoiler's turn; the result is ``None`` when
    the budget is spent.  With ``spoiler_move`` the result is Duplicator's
    answer, or ``None`` if no valid answer exists.  Among equally good moves
    the smallest ``(side, position)`` is chosen, side ``u`` first.
    """
    u, v = position.u, position.v
    _check_caps(u, v, position.budget, max_rounds, max_total_length)
    solver = _solver(alphabet, u, v)
    pairs = position.pairs
    if spoiler_move is None:
        if position.budget == 0:
            return None
        moves = list(solver.spoiler_moves())
        for side, p in moves:
            if not solver.answerable(pairs, side, p, position.budget):
                return side, p
        return moves[0] if moves else None
    side, p = spoiler_move
    if position.budget == 0:
        raise ValueError("no rounds left to play")
    replies = list(solver.replies(pairs, side, p))
    if not replies:
        return None
    other = V_SIDE if side == U_SIDE else U_SIDE
    for i, j in replies:
        if solver.wins(pairs | {(i, j)}, position.budget - 1):
            return other, (j if side == U_SIDE else i)
    i, j = replies[0]
    return other, (j if side == U_SIDE else i)


def play_trace(alphabet: OrderedAlphabet, u: Sequence[Letter], v: Sequence[Letter], n: int) -> MoveTrace:
    """Both players follow ``best_move`` for ``n`` rounds or until Duplicator is stuck."""
    u, v = alphabet.check_word(u), alphabet.check_word(v)
    position = GamePosition(u, v, budget=n)
    trace = MoveTrace()
    while position.budget > 0:
        s = best_move(alphabet, position)
        if s is None:
            break
        trace.moves.append((SPOILER, *s))
        d = best_move(alphabet, position, s)
        if d is None:
            break
        trace.moves.append((DUPLICATOR, *d))
        i, j = (s[1], d[1]) if s[0] == U_SIDE else (d[1], s[1])
        position = position.extended(i, j)
    return trace


# -- fixed Duplicator strategies -------------------------------------------------

Strategy = Callable[[GamePosition, Move], int]


def doubling_duplicator_move(position: GamePosition, spoiler_move: Move) -> int:
    """Copy the offset from the nearest token.

    Sentinel tokens pair the first and the last positions of both words.  The
    answer keeps the distance and direction from the token nearest to
    Spoiler's move (the left one on ties), clamped to the other word.
    """
    side, p = spoiler_move
    u_len, v_len = len(position.u), len(position.v)
    pairs = list(zip(position.alpha, position.beta))
    if u_len and v_len:
        pairs += [(0, 0), (u_len - 1, v_len - 1)]
    if not pairs:
        return 0
    if side == U_SIDE:
        mine, theirs, limit = [a for a, _ in pairs], [b for _, b in pairs], v_len
    else:
        mine, theirs, limit = [b for _, b in pairs], [a for a, _ in pairs], u_len
    k = min(range(len(pairs)), key=lambda t: (abs(p - mine[t]), mine[t]))
    reply = theirs[k] + (p - mine[k])
    return max(0, min(limit - 1, reply))


def verify_strategy(
    alphabet: OrderedAlphabet,
    u: Sequence[Letter],
    v: Sequence[Letter],
    n: int,
    strategy: Strategy,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    max_total_length: int = DEFAULT_MAX_TOTAL_LENGTH,
) -> bool:
    """Does ``strategy`` keep the position valid against every Spoiler play?"""
    u, v = alphabet.check_word(u), alphabet.check_word(v)
    _check_caps(u, v, n, max_rounds, max_total_length)
    leq = [[alphabet.leq(a, b) for b in v] for a in u]
    moves = [(U_SIDE, i) for i in range(len(u))] + [(V_SIDE, j) for j in range(len(v))]

    def survive(position: GamePosition) -> bool:
        if position.budget == 0:
            return True
        pairs = list(zip(position.alpha, position.beta))
        for side, p in moves:
            reply = strategy(position, (side, p))
            i, j = (p, reply) if side == U_SIDE else (reply, p)
            if not (0 <= i < len(u) and 0 <= j < len(v)):
                return False
            if not _pair_ok(leq, pairs, i, j):
                return False
            if not survive(position.extended(i, j)):
                return False
        return True

    return survive(GamePosition(u, v, budget=n))


def minimax_strategy(alphabet: OrderedAlphabet, u: Sequence[Letter], v: Sequence[Letter]) -> Strategy:
    """Duplicator strategy read off the solver (an invalid reply when stuck)."""
    u, v = alphabet.check_word(u), alphabet.check_word(v)

    def strategy(position: GamePosition, spoiler_move: Move) -> int:
        reply = best_move(alphabet, position, spoiler_move)
        if reply is None:
            return -1
        return reply[1]

    return strategy


# -- searching for non-definability witnesses ------------------------------------

def _letter_filter(alphabet: OrderedAlphabet, u: Word, v: Word) -> bool:
    """Necessary for Duplicator to survive one round."""
    su, sv = set(u), set(v)
    return all(any(alphabet.leq(a, b) for b in sv) for a in su) and all(
        any(alphabet.leq(a, b) for a in su) for b in sv
    )


def witness_search(
    nfa: Nfa,
    n: int,
    maxlen: int,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
    max_total_length: int = DEFAULT_MAX_TOTAL_LENGTH,
) -> tuple[Word, Word] | None:
    """First pair ``u ∈ L``, ``v ∉ L`` with ``u ≼ₙ v``.

    Pairs are scanned by total length, then ``u`` and ``v`` in shortlex
    order, each word of length at most ``maxlen``.  ``None`` only means that
    nothing was found within the bound.
    """
    if n > max_rounds:
        raise CapExceeded("rounds", n, max_rounds)
    if 2 * maxlen > max_total_length:
        raise CapExceeded("total_length", 2 * maxlen, max_total_length)
    alphabet = nfa.alphabet
    inside: list[list[Word]] = []
    outside: list[list[Word]] = []
    for k in range(maxlen + 1):
        words = list(alphabet.words(k))
        inside.append([w for w in words if nfa.accepts(w)])
        outside.append([w for w in words if not nfa.accepts(w)])
    for total in range(2 * maxlen + 1):
        for lu in range(max(0, total - maxlen), min(total, maxlen) + 1):
            lv = total - lu
            for u in inside[lu]:
                for v in outside[lv]:
                    if n >= 1 and not _letter_filter(alphabet, u, v):
                        continue
                    if duplicator_wins(alphabet, u, v, n, max_rounds, max_total_length):
                        return u, v
    return None


def describe_pair(pair: tuple[Word, Word] | None) -> str:
    if pair is None:
        return "none found"
    return f"u = {format_word(pair[0])}\nv = {format_word(pair[1])}"
