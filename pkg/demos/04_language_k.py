"""
A monotone, first-order language with no positive definition
============================================================

K = (cl a cl b cl c)* + A*TA* over the subsets of {a, b, c}.
"""

from foplus.alphabet import format_word
from foplus.automata import is_counter_free, is_monotone, syntactic_monoid
from foplus.counterexample import build_ce_pair, k_context, k_dfa, k_member
from foplus.efgame import GamePosition, doubling_duplicator_move, duplicator_wins, verify_strategy

d = k_dfa()
m = syntactic_monoid(d)
print("states:", len(d.states), " monoid:", len(m), "elements, aperiodic:", m.is_aperiodic())
print("monotone:", is_monotone(d.to_nfa()), " counter-free:", is_counter_free(d))

A = k_context().alphabet
for n in range(4):
    u, v = build_ce_pair(n)
    solver = duplicator_wins(A, u, v, n) if n < 3 else "-"
    strategy = verify_strategy(A, u, v, n, doubling_duplicator_move)
    print(f"n={n}: |u|={len(u)} in K={k_member(u)}, |v|={len(v)} in K={k_member(v)}, solver={solver}, doubling={strategy}")

# the doubling reply copies the offset from the nearest token
u, v = build_ce_pair(3)
pos = GamePosition(u, v, budget=3)
print("Spoiler u 9 -> Duplicator v", doubling_duplicator_move(pos, ("u", 9)))
print("Spoiler v 17 -> Duplicator u", doubling_duplicator_move(pos, ("v", 17)))
print(format_word(v[:6]), "...")
