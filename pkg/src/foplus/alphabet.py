"""Finite partially ordered alphabets and words over them.

Words are plain tuples of :class:`Letter`.  An :class:`OrderedAlphabet`
knows which letters belong to it and how they compare; all word-level
operations go through the alphabet so that foreign letters are caught.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence


class AlphabetError(ValueError):
    """Raised for malformed alphabets, words or alphabet files."""


@dataclass(frozen=True, order=True)
class Letter:
    """A letter, identified by its name.

    Powerset letters additionally carry their predicate set; equality and
    hashing only look at the name, whose rendering is canonical.
    """

    name: str
    predicates: frozenset[str] | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"Letter({self.name!r})"

    def __hash__(self) -> int:
        return hash(self.name)


Word = tuple[Letter, ...]


def powerset_name(predicates: Iterable[str]) -> str:
    return "{" + ",".join(sorted(predicates)) + "}"


class OrderedAlphabet:
    """A finite letter set with a partial order.

    The order is given as arbitrary pairs ``(a, b)`` meaning ``a <= b``; the
    stored relation is their reflexive-transitive closure.  Construction fails
    if the closure identifies two distinct letters.
    """

    def __init__(self, letters: Sequence[Letter], order_pairs: Iterable[tuple[Letter, Letter]] = ()):
        if not letters:
            raise AlphabetError("an alphabet needs at least one letter")
        by_name: dict[str, Letter] = {}
        for letter in letters:
            if letter.name in by_name:
                raise AlphabetError(f"duplicate letter {letter.name!r}")
            if not letter.name or any(c.isspace() for c in letter.name):
                raise AlphabetError(f"bad letter name {letter.name!r}")
            by_name[letter.name] = letter
        self._by_name = by_name
        self.letters: tuple[Letter, ...] = tuple(sorted(letters))

        up: dict[Letter, set[Letter]] = {a: {a} for a in self.letters}
        for a, b in order_pairs:
            a, b = self._own(a), self._own(b)
            up[a].add(b)
        # Warshall-style closure; alphabets are small.
        for k in self.letters:
            for a in self.letters:
                if k in up[a]:
                    up[a] |= up[k]
        for a in self.letters:
            for b in up[a]:
                if a != b and a in up[b]:
                    raise AlphabetError(f"order is not antisymmetric: {a} <= {b} <= {a}")
        self._up = {a: frozenset(s) for a, s in up.items()}
        self._down = {
            b: frozenset(a for a in self.letters if b in self._up[a]) for b in self.letters
        }
        self.predicates: tuple[str, ...] | None = None

    # -- letters -----------------------------------------------------------

    def _own(self, letter: Letter | str) -> Letter:
        name = letter if isinstance(letter, str) else letter.name
        try:
            return self._by_name[name]
        except KeyError:
            raise AlphabetError(f"letter {name!r} is not in the alphabet") from None

    def __getitem__(self, name: str) -> Letter:
        return self._own(name)

    def __contains__(self, letter: object) -> bool:
        if isinstance(letter, Letter):
            return letter.name in self._by_name
        return isinstance(letter, str) and letter in self._by_name

    def __iter__(self):
        return iter(self.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __repr__(self) -> str:
        return f"OrderedAlphabet({[a.name for a in self.letters]})"

    @property
    def is_powerset(self) -> bool:
        return self.predicates is not None

    def leq(self, a: Letter, b: Letter) -> bool:
        return self._own(b) in self._up[self._own(a)]

    def up(self, a: Letter) -> frozenset[Letter]:
        """``{b | a <= b}``."""
        return self._up[self._own(a)]

    def down(self, b: Letter) -> frozenset[Letter]:
        return self._down[self._own(b)]

    def order_pairs(self) -> list[tuple[Letter, Letter]]:
        """All strict pairs ``a < b``, sorted."""
        return sorted((a, b) for a in self.letters for b in self._up[a] if a != b)

    def covering_pairs(self) -> list[tuple[Letter, Letter]]:
        strict = self.order_pairs()
        return [
            (a, b)
            for a, b in strict
            if not any(a != c != b and c in self._up[a] and b in self._up[c] for c in self.letters)
        ]

    def is_trivial_order(self) -> bool:
        return all(len(s) == 1 for s in self._up.values())

    # -- words ---------------------------------------------------------------

    def word(self, names: Iterable[str | Letter]) -> Word:
        return tuple(self._own(n) for n in names)

    def check_word(self, word: Sequence[Letter]) -> Word:
        for letter in word:
            if letter.name not in self._by_name:
                raise AlphabetError(f"letter {letter.name!r} is not in the alphabet")
        return tuple(word)

    def parse_word(self, text: str) -> Word:
        """Parse whitespace-separated letter names.

        A token that is not a letter name but splits into single-character
        letter names is read character by character, so ``"ab"`` works over
        ``{a, b}``.  ``ε`` denotes the empty word.
        """
        out: list[Letter] = []
        for token in text.split():
            if token == "ε":
                continue
            if token in self._by_name:
                out.append(self._by_name[token])
            elif all(c in self._by_name for c in token):
                out.extend(self._by_name[c] for c in token)
            else:
                raise AlphabetError(f"unknown letter {token!r}")
        return tuple(out)

    def words(self, length: int) -> Iterable[Word]:
        """All words of the given length in lexicographic order."""
        return itertools.product(self.letters, repeat=length)

    def leq_word(self, u: Sequence[Letter], v: Sequence[Letter]) -> bool:
        u, v = self.check_word(u), self.check_word(v)
        return len(u) == len(v) and all(b in self._up[a] for a, b in zip(u, v))

    def up_word(self, u: Sequence[Letter]) -> Iterable[Word]:
        """All words ``v`` with ``u <= v``."""
        return itertools.product(*(sorted(self._up[a]) for a in self.check_word(u)))


def format_word(word: Sequence[Letter]) -> str:
    return " ".join(a.name for a in word) if word else "ε"


def build_alphabet(letters: Sequence[str], order_pairs: Iterable[tuple[str, str]] = ()) -> OrderedAlphabet:
    """Alphabet on the named letters, ordered by the closure of ``order_pairs``."""
    names = list(letters)
    if len(set(names)) != len(names):
        dup = next(n for n in names if names.count(n) > 1)
        raise AlphabetError(f"duplicate letter {dup!r}")
    alphabet = OrderedAlphabet([Letter(n) for n in names])
    return OrderedAlphabet(alphabet.letters, [(alphabet[a], alphabet[b]) for a, b in order_pairs])


def powerset_alphabet(predicates: Sequence[str]) -> OrderedAlphabet:
    """The powerset of ``predicates`` ordered by inclusion."""
    preds = list(predicates)
    if len(set(preds)) != len(preds):
        raise AlphabetError("duplicate predicate name")
    subsets = [
        frozenset(c) for r in range(len(preds) + 1) for c in itertools.combinations(sorted(preds), r)
    ]
    letters = [Letter(powerset_name(s), s) for s in subsets]
    by_set = {l.predicates: l for l in letters}
    pairs = [
        (by_set[s], by_set[s | {p}]) for s in subsets for p in preds if p not in s
    ]
    alphabet = OrderedAlphabet(letters, pairs)
    alphabet.predicates = tuple(sorted(preds))
    return alphabet


def up_closure_letter(alphabet: OrderedAlphabet, a: Letter) -> frozenset[Letter]:
    return alphabet.up(a)


def leq_word(alphabet: OrderedAlphabet, u: Sequence[Letter], v: Sequence[Letter]) -> bool:
    return alphabet.leq_word(u, v)


# -- text format -------------------------------------------------------------

def parse_alphabet(text: str) -> OrderedAlphabet:
    """Read the line-based alphabet format (``letters:``/``order:`` or ``predicates:``)."""
    letters: list[str] | None = None
    predicates: list[str] | None = None
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith(";"):
            continue
        key, _, rest = line.partition(":")
        key = key.strip()
        if key == "letters":
            letters = rest.split()
        elif key == "predicates":
            predicates = rest.split()
        elif key == "order" and " < " in rest:
            chain = rest.split(" < ")
            chain = [c.strip() for c in chain]
            if not all(chain):
                raise AlphabetError(f"line {lineno}: bad order line")
            pairs.extend(zip(chain, chain[1:]))
        elif key == "order":
            for item in rest.split():
                chain = item.split("<")
                if len(chain) < 2 or not all(chain):
                    raise AlphabetError(f"line {lineno}: bad order item {item!r}")
                pairs.extend(zip(chain, chain[1:]))
        else:
            raise AlphabetError(f"line {lineno}: unknown key {key!r}")
    if predicates is not None:
        if letters is not None or pairs:
            raise AlphabetError("'predicates:' cannot be combined with 'letters:'/'order:'")
        return powerset_alphabet(predicates)
    if letters is None:
        raise AlphabetError("missing 'letters:' line")
    return build_alphabet(letters, pairs)


def format_alphabet(alphabet: OrderedAlphabet) -> str:
    if alphabet.is_powerset:
        return "predicates: " + " ".join(alphabet.predicates) + "\n"
    lines = ["letters: " + " ".join(a.name for a in alphabet.letters)]
    for a, b in alphabet.covering_pairs():
        sep = " < " if "<" in a.name + b.name else "<"
        lines.append(f"order: {a.name}{sep}{b.name}")
    return "\n".join(lines) + "\n"
