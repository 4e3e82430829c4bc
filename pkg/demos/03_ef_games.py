"""
Ordered Ehrenfeucht-Fraisse games
=================================

Duplicator must answer each token with a position carrying a larger
label, in the same relative order.  Winning n rounds means every positive
sentence of rank n true on u is also true on v.
"""

from foplus.alphabet import build_alphabet
from foplus.efgame import duplicator_wins, play_trace

A = build_alphabet(["a", "b"], [("a", "b")])
for u, v in [("a", "b"), ("b", "a"), ("ab", "bab"), ("aba", "ba")]:
    U, V = A.parse_word(u), A.parse_word(v)
    wins = [n for n in range(4) if duplicator_wins(A, U, V, n)]
    print(f"{u:>4} vs {v:<4} Duplicator survives rounds {wins}")

U, V = A.parse_word("aba"), A.parse_word("ba")
print("optimal play on aba vs ba, 2 rounds:")
trace = play_trace(A, U, V, 2)
print(trace)
if len(trace.moves) % 2:
    print("Duplicator has no answer")
