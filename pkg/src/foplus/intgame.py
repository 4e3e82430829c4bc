"""The n-integer game.

Cells of ``u`` hold heights in ``[0, n]``; cells of ``v`` hold pairs
``<i/i-1>`` (stored as the top value ``i``).  Duplicator answers as in an
EF+ game with ``i <= <i/i-1>`` and ``i-1 <= <i/i-1>``, and must also keep
neighbours: tokens on adjacent cells face tokens on adjacent cells, and two
adjacent pairs ``<i/i-1><j/j-1>`` face ``i, j`` or ``i-1, j-1``.
Spoiler wins within ``2n`` rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Generator, Iterator, Sequence

from .automata import CapExceeded

STANDARD = "standard"
MIRRORED = "mirrored"
U_SIDE, V_SIDE = "u", "v"
DEFAULT_TOTAL_CAP = 16

Move = tuple[str, int]
Round = tuple[str, int, int]  # Spoiler side, Spoiler position, Duplicator answer


class StrategyError(ValueError):
    """The history left the states the strategy can reach."""


@dataclass(frozen=True)
class IntegerArena:
    n: int
    u: tuple[int, ...]
    v: tuple[int, ...]  # top values
    orientation: str = STANDARD

    def mirror(self) -> IntegerArena:
        flipped = MIRRORED if self.orientation == STANDARD else STANDARD
        return IntegerArena(self.n, self.u[::-1], self.v[::-1], flipped)


def parse_arena(n: int, u_text: str, v_text: str, orientation: str = STANDARD) -> IntegerArena:
    """``u`` as integers, ``v`` as ``i/i-1`` pairs (or bare tops)."""
    u = tuple(int(x) for x in u_text.split())
    tops = []
    for item in v_text.replace("<", " ").replace(">", " ").split():
        top, _, low = item.partition("/")
        if low and int(low) != int(top) - 1:
            raise ValueError(f"bad pair {item!r}")
        tops.append(int(top))
    return IntegerArena(n, u, tuple(tops), orientation)


def format_arena(arena: IntegerArena) -> str:
    return "u = " + " ".join(map(str, arena.u)) + "\nv = " + " ".join(f"<{t}/{t - 1}>" for t in arena.v)


def validate_arena(arena: IntegerArena) -> bool:
    n, u, v = arena.n, arena.u, arena.v
    if n < 1 or not u or not v:
        return False
    if any(not 0 <= x <= n for x in u) or any(not 1 <= t <= n for t in v):
        return False
    if arena.orientation == STANDARD:
        return v[0] == u[0] and v[-1] == u[-1] + 1
    if arena.orientation == MIRRORED:
        return v[0] == u[0] + 1 and v[-1] == u[-1]
    return False


def referee_check(arena: IntegerArena, pairs: Sequence[tuple[int, int]]) -> bool:
    """Labels, order and the neighbouring constraint for tokens ``(x in u, y in v)``."""
    u, v = arena.u, arena.v
    for x, y in pairs:
        if not (0 <= x < len(u) and 0 <= y < len(v)) or u[x] not in (v[y], v[y] - 1):
            return False
    for x, y in pairs:
        for x2, y2 in pairs:
            if (x <= x2) != (y <= y2):
                return False
            if (x2 == x + 1) != (y2 == y + 1):
                return False
            if x2 == x + 1 and v[y] - u[x] != v[y2] - u[x2]:
                return False
    return True


# -- Spoiler's inductive strategy --------------------------------------------------------

Plan = Generator[Move, int, None]


def _plan(u: Sequence[int], v: Sequence[int], k: int, ul: int, ur: int, vl: int, vr: int) -> Plan:
    """Spoiler's moves on the standard sub-arena ``u[ul..ur]``, ``v[vl..vr]``, bound ``k``.

    Each ``yield`` is a Spoiler move; the value sent back is Duplicator's
    answer (a position in the other word).
    """
    while k > 1 and k not in u[ul:ur + 1] and k not in v[vl:vr + 1]:
        k -= 1
    if k == 1:
        x = max(i for i in range(ul, ur + 1) if u[i] == 1)
        yield U_SIDE, x
        yield U_SIDE, x + 1
        return
    if k in u[ul:ur + 1]:
        x = max(i for i in range(ul, ur + 1) if u[i] == k)
        y = yield U_SIDE, x
        if y == vr or v[y + 1] != u[x + 1]:
            yield U_SIDE, x + 1
            return
        yield from _plan(u, v, k, x + 1, ur, y + 1, vr)
        return
    y = min(j for j in range(vl, vr + 1) if v[j] == k)
    x = yield V_SIDE, y
    if x == ul:
        yield V_SIDE, y - 1
        return
    if v[y - 1] != u[x - 1] + 1:
        yield U_SIDE, x - 1
        return
    yield from _plan(u, v, k - 1, ul, x - 1, vl, y - 1)


def _standard(arena: IntegerArena) -> tuple[IntegerArena, bool]:
    if arena.orientation == MIRRORED:
        return arena.mirror(), True
    return arena, False


def spoiler_move(arena: IntegerArena, history: Sequence[Round] = ()) -> Move | None:
    """Next Spoiler move after ``history``; None once the strategy is exhausted."""
    if not validate_arena(arena):
        raise ValueError("invalid arena")
    std, flipped = _standard(arena)
    lu, lv = len(arena.u), len(arena.v)

    def flip(side: str, p: int) -> int:
        return (lu if side == U_SIDE else lv) - 1 - p if flipped else p

    plan = _plan(std.u, std.v, std.n, 0, lu - 1, 0, lv - 1)
    move = next(plan)
    for side, pos, answer in history:
        if (move[0], flip(move[0], move[1])) != (side, pos):
            raise StrategyError("history does not follow the strategy")
        other = V_SIDE if side == U_SIDE else U_SIDE
        try:
            move = plan.send(flip(other, answer))
        except StopIteration:
            return None
    return move[0], flip(move[0], move[1])


def _pair(side: str, pos: int, answer: int) -> tuple[int, int]:
    return (pos, answer) if side == U_SIDE else (answer, pos)


def verify_spoiler_strategy(arena: IntegerArena, max_rounds: int | None = None) -> int | None:
    """Rounds the strategy needs against the worst Duplicator; None if it can fail.

    Every Duplicator answer is tried; an answer breaking the rules ends the
    round in Spoiler's favour.
    """
    limit = 2 * arena.n if max_rounds is None else max_rounds
    lu, lv = len(arena.u), len(arena.v)

    def worst(history: list[Round], pairs: list[tuple[int, int]]) -> int | None:
        if len(history) >= limit:
            return None
        move = spoiler_move(arena, history)
        if move is None:
            return None
        side, pos = move
        replies = range(lv) if side == U_SIDE else range(lu)
        rounds = len(history) + 1
        for answer in replies:
            new = pairs + [_pair(side, pos, answer)]
            if not referee_check(arena, new):
                continue
            sub = worst(history + [(side, pos, answer)], new)
            if sub is None:
                return None
            rounds = max(rounds, sub)
        return rounds

    return worst([], [])


# -- exact solver -----------------------------------------------------------------------------

class _IntSolver:
    def __init__(self, arena: IntegerArena):
        self.arena = arena
        self.memo: dict[tuple[frozenset, int], bool] = {}

    def spoiler_wins(self, pairs: frozenset, budget: int) -> bool:
        if budget == 0:
            return False
        key = (pairs, budget)
        if key in self.memo:
            return self.memo[key]
        a = self.arena
        used_u = {x for x, _ in pairs}
        used_v = {y for _, y in pairs}
        result = False
        for side, pos in [(U_SIDE, x) for x in range(len(a.u))] + [(V_SIDE, y) for y in range(len(a.v))]:
            if pos in (used_u if side == U_SIDE else used_v):
                continue
            replies = range(len(a.v)) if side == U_SIDE else range(len(a.u))
            if all(
                not referee_check(a, list(pairs) + [_pair(side, pos, r)])
                or self.spoiler_wins(pairs | {_pair(side, pos, r)}, budget - 1)
                for r in replies
            ):
                result = True
                break
        self.memo[key] = result
        return result


def solve_int_game(
    arena: IntegerArena, max_rounds: int | None = None, cap: int = DEFAULT_TOTAL_CAP
) -> tuple[str, int | None]:
    """``("spoiler", k)`` with the least winning ``k``, or ``("duplicator", None)``."""
    if len(arena.u) + len(arena.v) > cap:
        raise CapExceeded("total_length", len(arena.u) + len(arena.v), cap)
    limit = 2 * arena.n + 2 if max_rounds is None else max_rounds
    solver = _IntSolver(arena)
    for k in range(1, limit + 1):
        if solver.spoiler_wins(frozenset(), k):
            return "spoiler", k
    return "duplicator", None


def strategy_trace(arena: IntegerArena) -> list[Round]:
    """Play the strategy against the first legal Duplicator answer (-1: none exists)."""
    history: list[Round] = []
    pairs: list[tuple[int, int]] = []
    lu, lv = len(arena.u), len(arena.v)
    while True:
        move = spoiler_move(arena, history)
        if move is None:
            return history
        side, pos = move
        best = None
        for answer in range(lv if side == U_SIDE else lu):
            new = pairs + [_pair(side, pos, answer)]
            if referee_check(arena, new):
                best = answer
                break
        if best is None:
            history.append((side, pos, -1))
            return history
        history.append((side, pos, best))
        pairs.append(_pair(side, pos, best))


# -- sweeps ---------------------------------------------------------------------------------

def iter_arenas(n: int, max_u: int, max_v: int, orientation: str = STANDARD) -> Iterator[IntegerArena]:
    for lu in range(1, max_u + 1):
        for u in product(range(n + 1), repeat=lu):
            for lv in range(1, max_v + 1):
                for v in product(range(1, n + 1), repeat=lv):
                    arena = IntegerArena(n, u, v, orientation)
                    if validate_arena(arena):
                        yield arena


@dataclass
class SweepResult:
    arenas: int
    max_strategy_rounds: int
    max_solver_rounds: int
    failures: list[IntegerArena]


def sweep(n: int, maxlen: int, orientation: str = STANDARD, solver: bool = True) -> SweepResult:
    """Check the strategy (and the solver) on every valid arena up to ``maxlen`` cells per word."""
    result = SweepResult(0, 0, 0, [])
    for arena in iter_arenas(n, maxlen, maxlen, orientation):
        result.arenas += 1
        rounds = verify_spoiler_strategy(arena)
        if rounds is None:
            result.failures.append(arena)
            continue
        result.max_strategy_rounds = max(result.max_strategy_rounds, rounds)
        if solver:
            winner, k = solve_int_game(arena, max_rounds=2 * n)
            if winner != "spoiler" or k > rounds:
                result.failures.append(arena)
                continue
            result.max_solver_rounds = max(result.max_solver_rounds, k)
    return result
