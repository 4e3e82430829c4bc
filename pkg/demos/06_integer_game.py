"""
The integer game
================

Blocks become heights; merged blocks become pairs <i/i-1>.  Spoiler's
recursive strategy wins within 2n rounds on every arena.
"""

from foplus.intgame import MIRRORED, STANDARD, format_arena, parse_arena, strategy_trace, sweep

arena = parse_arena(2, "2 1 2 1 0", "2/1 1/0 2/1 1/0")
print(format_arena(arena))
for side, pos, answer in strategy_trace(arena):
    print(f"  Spoiler {side} {pos} -> Duplicator {answer if answer >= 0 else 'stuck'}")

for n in (1, 2):
    for orientation in (STANDARD, MIRRORED):
        r = sweep(n, 5, orientation)
        print(f"n={n} {orientation:<9} arenas={r.arenas:5d} strategy<= {r.max_strategy_rounds} solver<= {r.max_solver_rounds} failures={len(r.failures)}")
