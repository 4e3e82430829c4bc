"""Brute-force oracles and random generators shared by the test modules."""

from __future__ import annotations

import random
from itertools import product

from foplus.alphabet import OrderedAlphabet, build_alphabet
from foplus.automata import Nfa


def ab() -> OrderedAlphabet:
    return build_alphabet(["a", "b"], [("a", "b")])


def random_alphabet(rng: random.Random, size: int) -> OrderedAlphabet:
    """A random partial order: only pairs pointing forward in a fixed list."""
    names = "abcd"[:size]
    pairs = [(names[i], names[j]) for i in range(size) for j in range(i + 1, size) if rng.random() < 0.4]
    return build_alphabet(list(names), pairs)


def random_nfa(rng: random.Random, alphabet: OrderedAlphabet, states: int = 3, density: float = 0.35) -> Nfa:
    qs = list(range(states))
    trans = [(p, a, q) for p in qs for a in alphabet for q in qs if rng.random() < density]
    initial = [q for q in qs if rng.random() < 0.5] or [0]
    final = [q for q in qs if rng.random() < 0.5]
    return Nfa(alphabet, qs, initial, final, trans)


def words_upto(alphabet: OrderedAlphabet, maxlen: int):
    for n in range(maxlen + 1):
        yield from product(alphabet.letters, repeat=n)


def leq_oracle(alphabet: OrderedAlphabet, u, v) -> bool:
    return len(u) == len(v) and all(alphabet.leq(a, b) for a, b in zip(u, v))


def brute_monotone(nfa: Nfa, maxlen: int) -> bool:
    """No accepted u with a rejected componentwise-larger v, up to ``maxlen``."""
    A = nfa.alphabet
    for n in range(maxlen + 1):
        accepted = {w for w in product(A.letters, repeat=n) if nfa.accepts(w)}
        for u in accepted:
            for v in product(*[sorted(A.up(a), key=lambda l: l.name) for a in u]):
                if v not in accepted:
                    return False
    return True


def brute_closure_member(nfa: Nfa, v) -> bool:
    """Is some word below ``v`` accepted?"""
    A = nfa.alphabet
    return any(nfa.accepts(u) for u in product(*[sorted(A.down(b), key=lambda l: l.name) for b in v]))
