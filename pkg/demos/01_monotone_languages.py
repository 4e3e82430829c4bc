"""
Monotone languages and their closure
====================================

Over the alphabet {a, b} with a <= b, a language is monotone when swapping
any letter for a larger one keeps a word inside it.
"""

from foplus.alphabet import build_alphabet, format_word
from foplus.automata import (
    concat,
    enumerate_language,
    is_monotone,
    letters_nfa,
    monotonicity_counterexample,
    nfa_closure,
    star,
    universal_nfa,
)

A = build_alphabet(["a", "b"], [("a", "b")])

# words containing a b: monotone
contains_b = concat(universal_nfa(A), letters_nfa(A, ["b"]), universal_nfa(A))
print("A*bA* monotone:", is_monotone(contains_b))

# a*: not monotone, and the decision procedure names a witness
a_star = star(letters_nfa(A, ["a"]))
u, v = monotonicity_counterexample(a_star)
print("a* monotone:", is_monotone(a_star), " witness:", format_word(u), "<=", format_word(v))

# its closure is everything
print("closure of a* up to length 2:", [format_word(w) for w in enumerate_language(nfa_closure(a_star), 2)])
