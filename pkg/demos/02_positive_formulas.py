"""
Positive first-order sentences
==============================

Atoms a(x) read "the letter at x is at least a".  Without negation every
sentence defines a monotone language.
"""

from foplus.alphabet import build_alphabet, format_word, powerset_alphabet
from foplus.logic import FO, defined_language, fo_to_foplus_trivial_order, format_formula, parse_formula, quantifier_rank

A = build_alphabet(["a", "b", "c"], [("a", "b")])
f = parse_formula("A x. a(x)", A)
print(format_formula(f), "on ab:", [format_word(w) for w in defined_language(f, A, 2)])

# predicates of a powerset alphabet
P = powerset_alphabet(["a", "b"])
g = parse_formula("E x,y. x<=y & a(x) & b(y)", P)
print(format_formula(g), "qr =", quantifier_rank(g))
print("  length <= 2:", [format_word(w) for w in defined_language(g, P, 2)])

# with no order between letters, negation can be eliminated
flat = build_alphabet(["a", "b", "c"])
h = parse_formula("A x. !(a(x) & E y. x < y)", flat, FO)
print(format_formula(h), "->", format_formula(fo_to_foplus_trivial_order(h, flat)))
