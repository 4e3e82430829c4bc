"""First-order formulas on words: AST, parser, printer and evaluator.

A letter atom ``a(x)`` holds when ``a <= u[x]`` in the alphabet order (the
upward-closed reading).  Over a powerset alphabet an atom may also name a
single predicate ``p(x)``, true when the label contains ``p``.  The FO+
fragment is the negation-free one.

Grammar (``!`` binds tighter than ``&``, which binds tighter than ``|``;
a quantifier body extends as far right as possible)::

    formula := ('E' | 'A') var (',' var)* '.' formula
             | disj
    disj    := conj ('|' conj)*
    conj    := unary ('&' unary)*
    unary   := '!' unary | '(' formula ')' | 'true' | 'false'
             | quantified formula | NAME '(' var ')' | var ('<=' | '<') var
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence

from .alphabet import Letter, OrderedAlphabet, Word
from .automata import CapExceeded, DEFAULT_ENUMERATION_CAP

FO = "FO"
FO_PLUS = "FO+"
DEFAULT_SAMPLE_RANK_CAP = 3


class FormulaError(ValueError):
    """Syntax errors, unknown letters, negation in FO+, bad valuations."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.position = position


class Formula:
    """Base class of formula nodes.  Nodes are immutable and hashable."""

    __slots__ = ()

    def __and__(self, other: Formula) -> Formula:
        return And(self, other)

    def __or__(self, other: Formula) -> Formula:
        return Or(self, other)

    def __str__(self) -> str:
        return format_formula(self)


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bottom(Formula):
    pass


TRUE = Top()
FALSE = Bottom()


@dataclass(frozen=True)
class AtomCl(Formula):
    """``symbol(var)``: a letter name (upward closure) or a powerset predicate."""

    symbol: str
    var: str


@dataclass(frozen=True)
class Le(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class Lt(Formula):
    left: str
    right: str


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Not(Formula):
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    body: Formula


# -- structural functions ------------------------------------------------------

def quantifier_rank(f: Formula) -> int:
    if isinstance(f, (Exists, Forall)):
        return 1 + quantifier_rank(f.body)
    if isinstance(f, (And, Or)):
        return max(quantifier_rank(f.left), quantifier_rank(f.right))
    if isinstance(f, Not):
        return quantifier_rank(f.body)
    return 0


def free_variables(f: Formula) -> frozenset[str]:
    if isinstance(f, AtomCl):
        return frozenset([f.var])
    if isinstance(f, (Le, Lt)):
        return frozenset([f.left, f.right])
    if isinstance(f, (And, Or)):
        return free_variables(f.left) | free_variables(f.right)
    if isinstance(f, Not):
        return free_variables(f.body)
    if isinstance(f, (Exists, Forall)):
        return free_variables(f.body) - {f.var}
    return frozenset()


def is_positive(f: Formula) -> bool:
    if isinstance(f, Not):
        return False
    if isinstance(f, (And, Or)):
        return is_positive(f.left) and is_positive(f.right)
    if isinstance(f, (Exists, Forall)):
        return is_positive(f.body)
    return True


def conjunction(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disjunction(parts: Sequence[Formula]) -> Formula:
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<le><=)|(?P<op>[()&|!<.,])|(?P<set>\{[^{}]*\})|(?P<name>[^\s()&|!<.,{}]+))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FormulaError(f"unexpected character {text[pos:].lstrip()[:1]!r}", pos)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        tokens.append(("op" if kind == "le" else kind, value, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, alphabet: OrderedAlphabet, dialect: str):
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet
        self.dialect = dialect

    def peek(self, offset: int = 0):
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def take(self, value: str | None = None, kind: str | None = None):
        tok = self.peek()
        if (value is not None and tok[1] != value) or (kind is not None and tok[0] != kind):
            want = value or kind
            got = tok[1] or "end of input"
            raise FormulaError(f"expected {want!r}, found {got!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.formula()
        tok = self.peek()
        if tok[0] != "end":
            raise FormulaError(f"unexpected {tok[1]!r}", tok[2])
        return f

    def _at_quantifier(self) -> bool:
        tok, nxt = self.peek(), self.peek(1)
        return tok[0] == "name" and tok[1] in ("E", "A") and nxt[0] == "name"

    def formula(self) -> Formula:
        if self._at_quantifier():
            return self.quantified()
        return self.disj()

    def quantified(self) -> Formula:
        kind = self.take(kind="name")[1]
        names = [self.variable()]
        while self.peek()[1] == ",":
            self.take(",")
            names.append(self.variable())
        self.take(".")
        body = self.formula()
        node = Exists if kind == "E" else Forall
        for name in reversed(names):
            body = node(name, body)
        return body

    def variable(self) -> str:
        tok = self.take(kind="name")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", tok[1]):
            raise FormulaError(f"bad variable name {tok[1]!r}", tok[2])
        return tok[1]

    def disj(self) -> Formula:
        f = self.conj()
        while self.peek()[1] == "|":
            self.take("|")
            f = Or(f, self.conj())
        return f

    def conj(self) -> Formula:
        f = self.unary()
        while self.peek()[1] == "&":
            self.take("&")
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        tok = self.peek()
        if tok[1] == "!":
            if self.dialect == FO_PLUS:
                raise FormulaError("negation is not allowed in FO+", tok[2])
            self.take("!")
            return Not(self.unary())
        if tok[1] == "(":
            self.take("(")
            f = self.formula()
            self.take(")")
            return f
        if self._at_quantifier():
            return self.quantified()
        if tok[0] == "name" and tok[1] in ("true", "false") and self.peek(1)[1] != "(":
            self.take()
            return TRUE if tok[1] == "true" else FALSE
        if tok[0] in ("name", "set") and self.peek(1)[1] == "(":
            self.take()
            symbol = tok[1]
            self._check_symbol(symbol, tok[2])
            self.take("(")
            var = self.variable()
            self.take(")")
            return AtomCl(symbol, var)
        if tok[0] == "name":
            left = self.variable()
            op = self.peek()
            if op[1] == "<=":
                self.take()
                return Le(left, self.variable())
            if op[1] == "<":
                self.take()
                return Lt(left, self.variable())
            raise FormulaError(f"expected '<=' or '<' after {left!r}", op[2])
        raise FormulaError(f"unexpected {tok[1] or 'end of input'!r}", tok[2])

    def _check_symbol(self, symbol: str, pos: int) -> None:
        if symbol in self.alphabet:
            return
        if self.alphabet.is_powerset and symbol in self.alphabet.predicates:
            return
        raise FormulaError(f"unknown letter {symbol!r}", pos)


def parse_formula(text: str, alphabet: OrderedAlphabet, dialect: str = FO_PLUS) -> Formula:
    if dialect not in (FO, FO_PLUS):
        raise ValueError(f"unknown dialect {dialect!r}")
    return _Parser(text, alphabet, dialect).parse()


def format_formula(f: Formula) -> str:
    """Print with explicit parentheses so that parsing gives back the same tree."""
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, AtomCl):
        return f"{f.symbol}({f.var})"
    if isinstance(f, Le):
        return f"{f.left} <= {f.right}"
    if isinstance(f, Lt):
        return f"{f.left} < {f.right}"
    if isinstance(f, And):
        return f"({format_formula(f.left)} & {format_formula(f.right)})"
    if isinstance(f, Or):
        return f"({format_formula(f.left)} | {format_formula(f.right)})"
    if isinstance(f, Not):
        return f"!{format_formula(f.body)}"
    if isinstance(f, Exists):
        return f"(E {f.var}. {format_formula(f.body)})"
    if isinstance(f, Forall):
        return f"(A {f.var}. {format_formula(f.body)})"
    raise TypeError(f"not a formula: {f!r}")


# -- semantics -----------------------------------------------------------------

def _atom_holds(alphabet: OrderedAlphabet, symbol: str, label: Letter) -> bool:
    if symbol in alphabet:
        return label in alphabet.up(alphabet[symbol])
    if alphabet.is_powerset and symbol in alphabet.predicates:
        return symbol in label.predicates
    raise FormulaError(f"unknown letter {symbol!r}")


def evaluate(
    f: Formula,
    alphabet: OrderedAlphabet,
    word: Sequence[Letter],
    valuation: Mapping[str, int] | None = None,
) -> bool:
    """Truth of ``f`` on ``word`` under ``valuation`` (variable -> position)."""
    word = alphabet.check_word(word)
    val = dict(valuation or {})
    for var, pos in val.items():
        if not 0 <= pos < len(word):
            raise FormulaError(f"position {pos} of {var!r} is outside the word")
    missing = free_variables(f) - val.keys()
    if missing:
        raise FormulaError(f"unbound free variable(s) {sorted(missing)}")
    return _Evaluator(alphabet, word).eval(f, val)


class _Evaluator:
    def __init__(self, alphabet: OrderedAlphabet, word: Word):
        self.alphabet = alphabet
        self.word = word
        self.positions = range(len(word))
        self.atom_cache: dict[tuple[str, int], bool] = {}

    def atom(self, symbol: str, pos: int) -> bool:
        key = (symbol, pos)
        hit = self.atom_cache.get(key)
        if hit is None:
            hit = self.atom_cache[key] = _atom_holds(self.alphabet, symbol, self.word[pos])
        return hit

    def eval(self, f: Formula, val: dict[str, int]) -> bool:
        t = type(f)
        if t is AtomCl:
            return self.atom(f.symbol, val[f.var])
        if t is Le:
            return val[f.left] <= val[f.right]
        if t is Lt:
            return val[f.left] < val[f.right]
        if t is And:
            return self.eval(f.left, val) and self.eval(f.right, val)
        if t is Or:
            return self.eval(f.left, val) or self.eval(f.right, val)
        if t is Not:
            return not self.eval(f.body, val)
        if t is Exists or t is Forall:
            saved = val.get(f.var)
            want = t is Exists
            result = not want
            for i in self.positions:
                val[f.var] = i
                if self.eval(f.body, val) == want:
                    result = want
                    break
            if saved is None:
                val.pop(f.var, None)
            else:
                val[f.var] = saved
            return result
        if t is Top:
            return True
        if t is Bottom:
            return False
        raise TypeError(f"not a formula: {f!r}")


def defined_language(
    f: Formula, alphabet: OrderedAlphabet, maxlen: int, cap: int = DEFAULT_ENUMERATION_CAP
) -> list[Word]:
    """All words of length <= maxlen satisfying the sentence ``f`` (shortlex)."""
    if free_variables(f):
        raise FormulaError(f"formula has free variables {sorted(free_variables(f))}")
    if maxlen > cap:
        raise CapExceeded("maxlen", maxlen, cap)
    return [
        w
        for n in range(maxlen + 1)
        for w in alphabet.words(n)
        if _Evaluator(alphabet, w).eval(f, {})
    ]


# -- FO -> FO+ on unordered alphabets ----------------------------------------------

def fo_to_foplus_trivial_order(f: Formula, alphabet: OrderedAlphabet) -> Formula:
    """Push negations to the leaves and remove them.

    Only sound when no two distinct letters are comparable: then ``!a(x)`` is
    the disjunction of the other letters and the order atoms swap.
    """
    if not alphabet.is_trivial_order():
        raise FormulaError("the alphabet order is not trivial")
    return _nnf(f, alphabet, negate=False)


def _nnf(f: Formula, alphabet: OrderedAlphabet, negate: bool) -> Formula:
    if isinstance(f, Not):
        return _nnf(f.body, alphabet, not negate)
    if isinstance(f, (And, Or)):
        left, right = _nnf(f.left, alphabet, negate), _nnf(f.right, alphabet, negate)
        node = type(f) if not negate else (Or if isinstance(f, And) else And)
        return node(left, right)
    if isinstance(f, (Exists, Forall)):
        body = _nnf(f.body, alphabet, negate)
        node = type(f) if not negate else (Forall if isinstance(f, Exists) else Exists)
        return node(f.var, body)
    if not negate:
        return f
    if isinstance(f, Top):
        return FALSE
    if isinstance(f, Bottom):
        return TRUE
    if isinstance(f, Le):
        return Lt(f.right, f.left)
    if isinstance(f, Lt):
        return Le(f.right, f.left)
    if isinstance(f, AtomCl):
        others = [AtomCl(b.name, f.var) for b in alphabet.letters if b.name != f.symbol]
        return disjunction(others)
    raise TypeError(f"not a formula: {f!r}")


# -- random sentences ------------------------------------------------------------

def sample_formula(
    rank: int,
    alphabet: OrderedAlphabet,
    seed: int,
    cap: int = DEFAULT_SAMPLE_RANK_CAP,
) -> Formula:
    """A pseudo-random FO+ sentence of quantifier rank at most ``rank``.

    Rank 0 yields ``true`` or ``false``; for rank >= 1 the outermost node is
    a quantifier.  The result depends only on ``(rank, alphabet, seed)``.
    """
    if rank > cap:
        raise CapExceeded("rank", rank, cap)
    rng = random.Random(f"{seed}:{rank}")
    if rank == 0:
        return rng.choice([TRUE, FALSE])
    symbols = list(alphabet.predicates) if alphabet.is_powerset else []
    symbols += [a.name for a in alphabet.letters]
    return _sample_quantifier(rng, rank, [], symbols)


def _sample_quantifier(rng: random.Random, depth: int, scope: list[str], symbols: list[str]) -> Formula:
    var = f"x{len(scope)}"
    node = rng.choice([Exists, Forall])
    return node(var, _sample(rng, depth - 1, scope + [var], symbols, size=3))


def _sample(rng: random.Random, depth: int, scope: list[str], symbols: list[str], size: int) -> Formula:
    roll = rng.random()
    if depth > 0 and roll < 0.45:
        return _sample_quantifier(rng, depth, scope, symbols)
    if size > 0 and roll < 0.75:
        node = rng.choice([And, Or])
        return node(
            _sample(rng, depth, scope, symbols, size - 1),
            _sample(rng, depth, scope, symbols, size - 1),
        )
    return _sample_atom(rng, scope, symbols)


def _sample_atom(rng: random.Random, scope: list[str], symbols: list[str]) -> Formula:
    kind = rng.random()
    if kind < 0.6 or len(scope) < 2 and kind < 0.9:
        return AtomCl(rng.choice(symbols), rng.choice(scope))
    if kind < 0.95:
        x, y = rng.choice(scope), rng.choice(scope)
        return rng.choice([Le, Lt])(x, y)
    return rng.choice([TRUE, FALSE])


def iter_samples(rank: int, alphabet: OrderedAlphabet, seeds: range) -> Iterator[Formula]:
    for seed in seeds:
        yield sample_formula(rank, alphabet, seed)
