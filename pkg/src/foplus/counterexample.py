"""The language K = (cl a cl b cl c)* + A*⊤A* over the powerset of {a, b, c}.

K is monotone and its minimal automaton is counter-free, yet short EF+
games cannot separate ``(abc)^N`` (in K) from ``(x̄ȳz̄)^(N-1) x̄ȳ`` (not in K).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .alphabet import Letter, OrderedAlphabet, Word, powerset_alphabet
from .automata import Dfa, Nfa, concat, letters_nfa, star, union, universal_nfa

Q_A, Q_B, Q_C, Q_TOP, Q_BOT = "q_a", "q_b", "q_c", "q_top", "bot"


@dataclass(frozen=True)
class KContext:
    alphabet: OrderedAlphabet
    a: Letter
    b: Letter
    c: Letter
    x: Letter  # {a,b}
    y: Letter  # {b,c}
    z: Letter  # {a,c}
    top: Letter
    dfa: Dfa

    def primed(self, p: str) -> frozenset[Letter]:
        """cl p without ⊤."""
        return frozenset(l for l in self.alphabet if p in l.predicates and l != self.top)

    def without(self, p: str) -> frozenset[Letter]:
        return frozenset(l for l in self.alphabet if p not in l.predicates)


@lru_cache(maxsize=1)
def k_context() -> KContext:
    alphabet = powerset_alphabet(["a", "b", "c"])
    name = {
        "a": "{a}", "b": "{b}", "c": "{c}",
        "x": "{a,b}", "y": "{b,c}", "z": "{a,c}", "top": "{a,b,c}",
    }
    letters = {k: alphabet[v] for k, v in name.items()}
    top = letters["top"]
    delta: dict[tuple[str, Letter], str] = {}
    cycle = [(Q_A, "a", Q_B), (Q_B, "b", Q_C), (Q_C, "c", Q_A)]
    for src, p, dst in cycle:
        for l in alphabet:
            if l == top:
                delta[src, l] = Q_TOP
            elif p in l.predicates:
                delta[src, l] = dst
            else:
                delta[src, l] = Q_BOT
    for l in alphabet:
        delta[Q_TOP, l] = Q_TOP
        delta[Q_BOT, l] = Q_TOP if l == top else Q_BOT
    dfa = Dfa(alphabet, [Q_A, Q_B, Q_C, Q_TOP, Q_BOT], Q_A, [Q_A, Q_TOP], delta)
    return KContext(alphabet, dfa=dfa, **letters)


def k_alphabet() -> OrderedAlphabet:
    return k_context().alphabet


def k_dfa() -> Dfa:
    return k_context().dfa


def k_regex_nfa() -> Nfa:
    """K assembled from automaton combinators, independent of the hand-made DFA."""
    ctx = k_context()
    A = ctx.alphabet
    cl = [letters_nfa(A, A.up(l)) for l in (ctx.a, ctx.b, ctx.c)]
    return union(
        star(concat(*cl)),
        concat(universal_nfa(A), letters_nfa(A, [ctx.top]), universal_nfa(A)),
    )


def k_member(word) -> bool:
    ctx = k_context()
    return ctx.dfa.accepts(ctx.alphabet.check_word(word))


def build_ce_pair(n: int) -> tuple[Word, Word]:
    """``u = (abc)^N`` and ``v = (x̄ȳz̄)^(N-1) x̄ȳ`` with ``N = 2^n``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    ctx = k_context()
    big = 2 ** n
    u = (ctx.a, ctx.b, ctx.c) * big
    v = (ctx.x, ctx.y, ctx.z) * (big - 1) + (ctx.x, ctx.y)
    return u, v
