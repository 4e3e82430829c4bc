"""Encoding Turing machine runs as words over an ordered alphabet.

A configuration of a deterministic machine is written letter by letter on
its tape.  The head cell carries ``[q.a]``; the cell the head just left
carries the transition that wrote it (``a_d3``), the cell it is about to
enter carries the transition about to fire (``a^d5``), and a cell that is
both carries ``a_d3^d5``.  Ambiguous letters ``<x/y>`` sit above two base
letters that can occupy the same cell in consecutive configurations, so
that two configurations have a common upper bound exactly when one is the
successor of the other.

States are typed 1, 2, 3 and every transition moves to the next type; the
language ``L`` asks for configuration blocks whose types cycle 1-2-3.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, NamedTuple, Sequence

from .alphabet import AlphabetError, Letter, OrderedAlphabet, Word
from .automata import (
    Nfa,
    concat,
    epsilon_nfa,
    factor_nfa,
    letters_nfa,
    nfa_closure,
    star,
    union,
)

LEFT, RIGHT = "L", "R"
SEP = "#"
DEFAULT_HEIGHT_CAP = 1000

_SYMBOL = re.compile(r"[A-Za-z0-9]+")
_STATE = re.compile(r"[A-Za-z0-9_']+")


class MachineError(ValueError):
    """Malformed or nondeterministic machines, bad machine files."""


class ReductionError(ValueError):
    """Preconditions of the encoding operations are violated."""


def lam(direction: str) -> int:
    return 1 if direction == RIGHT else -1


def opposite(direction: str) -> str:
    return LEFT if direction == RIGHT else RIGHT


def next_type(t: int) -> int:
    return t % 3 + 1


class Transition(NamedTuple):
    ident: str
    src: str
    read: str
    dst: str
    write: str
    move: str


@dataclass(frozen=True)
class TuringMachine:
    """Deterministic machine; ``types`` maps each state to 1, 2 or 3 (or None)."""

    gamma: tuple[str, ...]
    states: tuple[str, ...]
    types: dict[str, int | None] = field(hash=False, compare=True)
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        if not self.gamma:
            raise MachineError("the tape alphabet is empty")
        for a in self.gamma:
            if not _SYMBOL.fullmatch(a):
                raise MachineError(f"tape symbol {a!r} must be alphanumeric")
        for q in self.states:
            if not _STATE.fullmatch(q):
                raise MachineError(f"bad state name {q!r}")
        if len(set(self.gamma)) != len(self.gamma) or len(set(self.states)) != len(self.states):
            raise MachineError("duplicate tape symbol or state")
        seen = set()
        for t in self.transitions:
            if t.src not in self.states or t.dst not in self.states:
                raise MachineError(f"transition {t.ident} uses an unknown state")
            if t.read not in self.gamma or t.write not in self.gamma:
                raise MachineError(f"transition {t.ident} uses an unknown symbol")
            if t.move not in (LEFT, RIGHT):
                raise MachineError(f"transition {t.ident} has bad direction {t.move!r}")
            if (t.src, t.read) in seen:
                raise MachineError(f"two transitions from state {t.src} reading {t.read}")
            seen.add((t.src, t.read))

    @cached_property
    def delta(self) -> dict[tuple[str, str], Transition]:
        return {(t.src, t.read): t for t in self.transitions}

    @cached_property
    def by_id(self) -> dict[str, Transition]:
        return {t.ident: t for t in self.transitions}

    @cached_property
    def incoming(self) -> dict[str, list[Transition]]:
        out: dict[str, list[Transition]] = {q: [] for q in self.states}
        for t in self.transitions:
            out[t.dst].append(t)
        return out

    def type_of(self, q: str) -> int:
        t = self.types.get(q)
        if t is None:
            raise MachineError(f"state {q} has no type")
        return t

    def is_typed(self) -> bool:
        if any(self.types.get(q) not in (1, 2, 3) for q in self.states):
            return False
        return all(self.types[t.dst] == next_type(self.types[t.src]) for t in self.transitions)


def make_machine(
    gamma: Sequence[str],
    states: Sequence[str] | dict[str, int | None],
    rules: Iterable[tuple[str, str, str, str, str]],
) -> TuringMachine:
    """Build a machine; transition ids ``d1, d2, ...`` follow (state, symbol) order."""
    if isinstance(states, dict):
        names, types = list(states), dict(states)
    else:
        names, types = list(states), {q: None for q in states}
    rules = list(rules)
    q_index = {q: k for k, q in enumerate(names)}
    g_index = {a: k for k, a in enumerate(gamma)}
    try:
        rules.sort(key=lambda r: (q_index[r[0]], g_index[r[1]]))
    except KeyError as exc:
        raise MachineError(f"unknown state or symbol {exc.args[0]!r}") from None
    transitions = tuple(Transition(f"d{k}", *r) for k, r in enumerate(rules, 1))
    return TuringMachine(tuple(gamma), tuple(names), types, transitions)


def normalize_types(machine: TuringMachine) -> TuringMachine:
    """Three copies of the state space so that transitions cycle 1 -> 2 -> 3 -> 1."""
    if machine.is_typed():
        return machine
    states = {f"{q}_{i}": i for q in machine.states for i in (1, 2, 3)}
    rules = [
        (f"{t.src}_{i}", t.read, f"{t.dst}_{next_type(i)}", t.write, t.move)
        for t in machine.transitions
        for i in (1, 2, 3)
    ]
    return make_machine(machine.gamma, states, rules)


def parse_machine(text: str) -> TuringMachine:
    """Read ``gamma: 0 1``, ``states: p/1 q/2``, and ``p 0 -> q 1 R`` lines."""
    gamma: list[str] | None = None
    states: dict[str, int | None] = {}
    rules = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split(";", 1)[0].strip()
        if not line:
            continue
        if line.startswith("gamma:"):
            gamma = line[len("gamma:"):].split()
        elif line.startswith("states:"):
            for item in line[len("states:"):].split():
                name, _, typ = item.partition("/")
                if typ and typ not in ("1", "2", "3"):
                    raise MachineError(f"line {lineno}: bad type in {item!r}")
                states[name] = int(typ) if typ else None
        else:
            m = re.fullmatch(r"(\S+)\s+(\S+)\s*->\s*(\S+)\s+(\S+)\s+([LR])", line)
            if not m:
                raise MachineError(f"line {lineno}: cannot parse {line!r}")
            rules.append(m.groups())
    if gamma is None:
        raise MachineError("missing 'gamma:' line")
    if not states:
        raise MachineError("missing 'states:' line")
    return make_machine(gamma, states, rules)


def format_machine(machine: TuringMachine) -> str:
    def state(q):
        t = machine.types.get(q)
        return q if t is None else f"{q}/{t}"

    lines = ["gamma: " + " ".join(machine.gamma), "states: " + " ".join(state(q) for q in machine.states)]
    lines += [f"{t.src} {t.read} -> {t.dst} {t.write} {t.move}" for t in machine.transitions]
    return "\n".join(lines) + "\n"


def load_fixture(name: str) -> TuringMachine:
    """Bundled machines: ``mortal`` and ``sweeper``."""
    from importlib.resources import files

    return parse_machine(files("foplus.data").joinpath(f"{name}.tm").read_text(encoding="utf-8"))


# -- letters ---------------------------------------------------------------------

class BaseLetter(NamedTuple):
    kind: str  # plain, sub, sup, subsup, head, sep
    symbol: str = ""
    sub: str = ""
    sup: str = ""
    state: str = ""

    @property
    def name(self) -> str:
        if self.kind == "sep":
            return SEP
        if self.kind == "head":
            return f"[{self.state}.{self.symbol}]"
        out = self.symbol
        if self.sub:
            out += "_" + self.sub
        if self.sup:
            out += "^" + self.sup
        return out

    @property
    def enriched(self) -> bool:
        return self.kind in ("sub", "sup", "subsup")


class AmbLetter(NamedTuple):
    pred: BaseLetter
    succ: BaseLetter

    @property
    def name(self) -> str:
        return f"<{self.pred.name}/{self.succ.name}>"


def plain(a: str) -> BaseLetter:
    return BaseLetter("plain", a)


def head(q: str, a: str) -> BaseLetter:
    return BaseLetter("head", a, state=q)


def annotated(a: str, sub: Transition | None, sup: Transition | None) -> BaseLetter:
    if sub and sup:
        return BaseLetter("subsup", a, sub.ident, sup.ident)
    if sub:
        return BaseLetter("sub", a, sub=sub.ident)
    if sup:
        return BaseLetter("sup", a, sup=sup.ident)
    return plain(a)


SEP_LETTER = BaseLetter("sep")


def base_letters(machine: TuringMachine) -> list[BaseLetter]:
    out = [plain(a) for a in machine.gamma]
    ts = machine.transitions
    out += [annotated(a, d, None) for d in ts for a in machine.gamma]
    out += [annotated(a, None, d) for d in ts for a in machine.gamma]
    out += [annotated(a, d, e) for d in ts for a in machine.gamma for e in ts]
    out += [head(q, a) for q in machine.states for a in machine.gamma]
    out.append(SEP_LETTER)
    return out


def ambiguous_letters(machine: TuringMachine) -> list[AmbLetter]:
    """The six families of pairs that can share a cell in consecutive configurations."""
    ts = machine.transitions
    out: list[AmbLetter] = []
    for d in ts:
        for a in machine.gamma:
            out.append(AmbLetter(annotated(a, d, None), plain(a)))
            out.append(AmbLetter(plain(a), annotated(a, None, d)))
            out.append(AmbLetter(annotated(a, None, d), head(d.dst, a)))
    for d in ts:
        for e in ts:
            if e.src == d.dst and e.move == opposite(d.move):
                out.append(AmbLetter(annotated(d.write, d, e), head(e.dst, d.write)))
    for d in ts:
        out.append(AmbLetter(head(d.src, d.read), annotated(d.write, d, None)))
        for e in ts:
            if e.src == d.dst and e.move == opposite(d.move):
                out.append(AmbLetter(head(d.src, d.read), annotated(d.write, d, e)))
    seen: dict[frozenset, AmbLetter] = {}
    for x in out:
        key = frozenset((x.pred, x.succ))
        if key in seen and seen[key] != x:
            raise ReductionError(f"pair {x.name} occurs with both orientations")
        seen[key] = x
    return list(dict.fromkeys(out))


# -- configurations ----------------------------------------------------------------

@dataclass(frozen=True)
class ConfigWord:
    """A configuration with its two transition annotations."""

    tape: tuple[str, ...]
    head_pos: int
    state: str
    incoming: Transition
    outgoing: Transition
    cfg_type: int

    @property
    def sub_pos(self) -> int:
        return self.head_pos - lam(self.incoming.move)

    @property
    def sup_pos(self) -> int:
        return self.head_pos + lam(self.outgoing.move)

    def base_word(self) -> tuple[BaseLetter, ...]:
        letters = [plain(a) for a in self.tape]
        h, b, s = self.head_pos, self.sub_pos, self.sup_pos
        letters[h] = head(self.state, self.tape[h])
        if b == s:
            letters[b] = annotated(self.tape[b], self.incoming, self.outgoing)
        else:
            letters[b] = annotated(self.tape[b], self.incoming, None)
            letters[s] = annotated(self.tape[s], None, self.outgoing)
        return tuple(letters)

    def __len__(self) -> int:
        return len(self.tape)


def _make_config(machine: TuringMachine, tape, h: int, q: str, incoming: Transition) -> ConfigWord | None:
    """The configuration if all annotations fit on the tape, else None."""
    n = len(tape)
    if not 0 <= h < n or incoming.dst != q:
        return None
    b = h - lam(incoming.move)
    if not 0 <= b < n or tape[b] != incoming.write:
        return None
    out = machine.delta.get((q, tape[h]))
    if out is None or not 0 <= h + lam(out.move) < n:
        return None
    return ConfigWord(tuple(tape), h, q, incoming, out, machine.type_of(q))


def tm_step_config(machine: TuringMachine, c: ConfigWord) -> ConfigWord | None:
    t = c.outgoing
    tape = list(c.tape)
    tape[c.head_pos] = t.write
    return _make_config(machine, tape, c.head_pos + lam(t.move), t.dst, t)


def raw_run_length(machine: TuringMachine, tape: Sequence[str], h: int, q: str, cap: int) -> int | None:
    """Steps the machine makes without leaving the tape; None beyond ``cap``."""
    tape = list(tape)
    steps = 0
    while True:
        t = machine.delta.get((q, tape[h]))
        if t is None or not 0 <= h + lam(t.move) < len(tape):
            return steps
        if steps == cap:
            return None
        tape[h] = t.write
        h += lam(t.move)
        q = t.dst
        steps += 1


def max_run_length(machine: TuringMachine, radius: int) -> int | None:
    """Longest run from any configuration on an unbounded tape, if below ``radius``.

    A run of k steps only reads cells within distance k of the start, so
    enumerating every tape window of that radius is exhaustive.
    """
    width = 2 * radius + 1
    best = 0
    for q in machine.states:
        for tape in product(machine.gamma, repeat=width):
            steps = raw_run_length(machine, tape, radius, q, radius - 1)
            if steps is None:
                return None
            best = max(best, steps)
    return best


# -- context ---------------------------------------------------------------------------

class ReductionContext:
    """A typed machine with its ordered alphabet and the derived automata."""

    def __init__(self, machine: TuringMachine):
        if not machine.is_typed():
            raise ReductionError("the machine is not type-normalized; call normalize_types first")
        self.machine = machine
        self.base = base_letters(machine)
        self.amb = ambiguous_letters(machine)
        names = [b.name for b in self.base] + [x.name for x in self.amb]
        if len(set(names)) != len(names):
            raise ReductionError("letter names collide; rename states or symbols")
        self.info: dict[str, BaseLetter | AmbLetter] = {x.name: x for x in self.base + self.amb}
        letters = [Letter(n) for n in names]
        by_name = {l.name: l for l in letters}
        pairs = [(by_name[x.pred.name], by_name[x.name]) for x in self.amb]
        pairs += [(by_name[x.succ.name], by_name[x.name]) for x in self.amb]
        self.alphabet = OrderedAlphabet(letters, pairs)
        self._amb_by_pair = {(x.pred, x.succ): x for x in self.amb}

    def letter(self, x: BaseLetter | AmbLetter) -> Letter:
        return self.alphabet[x.name]

    def decode_letter(self, letter: Letter) -> BaseLetter | AmbLetter:
        try:
            return self.info[letter.name]
        except KeyError:
            raise AlphabetError(f"letter {letter.name!r} is not in the alphabet") from None

    def word(self, letters: Iterable[BaseLetter | AmbLetter]) -> Word:
        return tuple(self.letter(x) for x in letters)

    def config_word(self, c: ConfigWord) -> Word:
        return self.word(c.base_word())

    def parse(self, text: str) -> Word:
        return self.alphabet.parse_word(text)

    def amb_for(self, pred: BaseLetter, succ: BaseLetter) -> AmbLetter | None:
        return self._amb_by_pair.get((pred, succ))

    # automata, built lazily

    def head_windows(self, t: int) -> list[tuple[BaseLetter, ...]]:
        """Admissible letters around a type-``t`` head, as contiguous windows."""
        m = self.machine
        out = []
        for q in m.states:
            if m.type_of(q) != t:
                continue
            for inc in m.incoming[q]:
                for a in m.gamma:
                    for x in m.gamma:
                        tape = [x, a, x]
                        b = 1 - lam(inc.move)
                        tape[b] = inc.write
                        c = _make_config(m, tape, 1, q, inc)
                        if c is None:
                            continue
                        word = c.base_word()
                        lo = min(c.sub_pos, c.sup_pos, 1)
                        hi = max(c.sub_pos, c.sup_pos, 1)
                        out.append(word[lo:hi + 1])
        return sorted(set(out))

    @cached_property
    def c_nfas(self) -> dict[int, Nfa]:
        gamma = [self.letter(plain(a)) for a in self.machine.gamma]
        out = {}
        for t in (1, 2, 3):
            states: set = {"pre", "post"}
            trans = [("pre", g, "pre") for g in gamma] + [("post", g, "post") for g in gamma]
            for k, window in enumerate(self.head_windows(t)):
                prev = "pre"
                for j, x in enumerate(window):
                    nxt = "post" if j == len(window) - 1 else (k, j)
                    states.add(nxt)
                    trans.append((prev, self.letter(x), nxt))
                    prev = nxt
            out[t] = Nfa(self.alphabet, states, ["pre"], ["post"], trans)
        return out

    @cached_property
    def c_closures(self) -> dict[int, Nfa]:
        return {t: nfa_closure(a) for t, a in self.c_nfas.items()}

    @cached_property
    def l_base(self) -> Nfa:
        c1, c2, c3 = (self.c_nfas[t] for t in (1, 2, 3))
        s = letters_nfa(self.alphabet, [self.letter(SEP_LETTER)])
        prefix = union(epsilon_nfa(self.alphabet), concat(c3, s), concat(c2, s, c3, s))
        middle = star(concat(c1, s, c2, s, c3, s))
        suffix = union(c1, concat(c1, s, c2), concat(c1, s, c2, s, c3))
        return concat(prefix, middle, suffix)

    @cached_property
    def l_nfa(self) -> Nfa:
        return nfa_closure(self.l_base)

    @cached_property
    def l_factors(self) -> Nfa:
        return factor_nfa(self.l_nfa)


def reduction_alphabet(machine: TuringMachine) -> OrderedAlphabet:
    return ReductionContext(machine).alphabet


def build_L(ctx: ReductionContext) -> tuple[Nfa, Nfa]:
    """Automata for L_base and for its monotone closure L."""
    return ctx.l_base, ctx.l_nfa


# -- configuration words ----------------------------------------------------------------

def is_configuration(ctx: ReductionContext, word: Sequence[Letter]) -> ConfigWord | None:
    """Decode a base-letter word as a configuration, or None if it is not one."""
    letters = [ctx.decode_letter(l) for l in ctx.alphabet.check_word(word)]
    if any(isinstance(x, AmbLetter) for x in letters):
        raise AlphabetError("configuration words use base letters only")
    if any(x.kind == "sep" for x in letters):
        return None
    heads = [i for i, x in enumerate(letters) if x.kind == "head"]
    if len(heads) != 1:
        return None
    h = heads[0]
    q = letters[h].state
    subs = [i for i, x in enumerate(letters) if x.kind in ("sub", "subsup")]
    if len(subs) != 1:
        return None
    m = ctx.machine
    incoming = m.by_id[letters[subs[0]].sub]
    tape = tuple(x.symbol for x in letters)
    c = _make_config(m, tape, h, q, incoming)
    if c is None or c.sub_pos != subs[0]:
        return None
    return c if c.base_word() == tuple(letters) else None


def tm_step(ctx: ReductionContext, c: ConfigWord) -> ConfigWord | None:
    return tm_step_config(ctx.machine, c)


def height(ctx: ReductionContext, c: ConfigWord, cap: int = DEFAULT_HEIGHT_CAP) -> int | None:
    """Length of the run from ``c`` inside its tape; None if longer than ``cap``."""
    return raw_run_length(ctx.machine, c.tape, c.head_pos, c.state, cap)


def alpha_approx(ctx: ReductionContext, c: ConfigWord, n: int) -> ConfigWord | Word:
    """Cells within distance ``n`` of the head.

    The window is returned as a configuration when it still is one (always
    for ``n >= 1``), otherwise as the bare word.
    """
    lo, hi = max(0, c.head_pos - n), min(len(c), c.head_pos + n + 1)
    window = c.base_word()[lo:hi]
    decoded = is_configuration(ctx, ctx.word(window))
    return decoded if decoded is not None else ctx.word(window)


def enumerate_configs(ctx: ReductionContext, length: int) -> Iterator[ConfigWord]:
    m = ctx.machine
    for tape in product(m.gamma, repeat=length):
        for h in range(length):
            for q in m.states:
                for inc in m.incoming[q]:
                    c = _make_config(m, tape, h, q, inc)
                    if c is not None:
                        yield c


def merge_configs(ctx: ReductionContext, c1: ConfigWord, c2: ConfigWord) -> Word:
    """Common upper bound of two consecutive configurations of equal length."""
    if len(c1) != len(c2):
        raise ReductionError("configurations of different lengths")
    if tm_step(ctx, c1) != c2:
        raise ReductionError("the second configuration is not the successor of the first")
    out = []
    for x, y in zip(c1.base_word(), c2.base_word()):
        if x == y:
            out.append(x)
            continue
        amb = ctx.amb_for(x, y)
        if amb is None:
            raise ReductionError(f"no ambiguous letter for {x.name}/{y.name}")
        out.append(amb)
    return ctx.word(out)


def decode_under(ctx: ReductionContext, v: Sequence[Letter]) -> frozenset[ConfigWord]:
    """All configurations below ``v``.

    Enrichment and head letters must sit within three consecutive cells,
    which keeps the search over the (at most two) choices per cell small.
    """
    options = []
    for l in ctx.alphabet.check_word(v):
        x = ctx.decode_letter(l)
        options.append((x.pred, x.succ) if isinstance(x, AmbLetter) else (x,))
    found: set[ConfigWord] = set()
    chosen: list[BaseLetter] = []

    def extend(i: int, marks: list[int], heads: int) -> None:
        if i == len(options):
            if heads == 1:
                c = is_configuration(ctx, ctx.word(chosen))
                if c is not None:
                    found.add(c)
            return
        for x in options[i]:
            if x.kind == "sep":
                continue
            h = heads + (x.kind == "head")
            m = marks + [i] if x.kind != "plain" else marks
            if h > 1 or len(m) > 3 or (m and m[-1] - m[0] > 2):
                continue
            chosen.append(x)
            extend(i + 1, m, h)
            chosen.pop()

    extend(0, [], 0)
    return frozenset(found)


def dominated_by_common(ctx: ReductionContext, c1: ConfigWord, c2: ConfigWord) -> bool:
    """Is there a word above both configurations?"""
    if len(c1) != len(c2):
        return False
    for x, y in zip(c1.base_word(), c2.base_word()):
        if x != y and ctx.amb_for(x, y) is None and ctx.amb_for(y, x) is None:
            return False
    return True


# -- words of L and their factors --------------------------------------------------------

def join_blocks(ctx: ReductionContext, blocks: Sequence[Word]) -> Word:
    sep = (ctx.letter(SEP_LETTER),)
    out: tuple[Letter, ...] = ()
    for k, b in enumerate(blocks):
        out += (sep if k else ()) + tuple(b)
    return out


def split_blocks(ctx: ReductionContext, v: Sequence[Letter]) -> list[tuple[int, int]]:
    """Spans ``[start, end)`` of the separator-free blocks."""
    sep = ctx.letter(SEP_LETTER)
    spans, start = [], 0
    for i, l in enumerate(v):
        if l == sep:
            spans.append((start, i))
            start = i + 1
    spans.append((start, len(v)))
    return spans


def forbidden_local_factor(ctx: ReductionContext, w: Sequence[Letter]) -> bool:
    """True iff ``w`` (at most two separators) is a factor of no word of L."""
    w = ctx.alphabet.check_word(w)
    if sum(1 for l in w if l == ctx.letter(SEP_LETTER)) > 2:
        raise ReductionError("a local factor has at most two separators")
    return not ctx.l_factors.accepts(w)


def set_type(ctx: ReductionContext, block: Sequence[Letter]) -> frozenset[int]:
    return frozenset(t for t in (1, 2, 3) if ctx.c_closures[t].accepts(tuple(block)))


@dataclass(frozen=True)
class AmbiguousFactor:
    first: int  # block indices, inclusive
    last: int
    coherent: bool


@dataclass
class FactorReport:
    blocks: list[tuple[int, int]]
    set_types: list[frozenset[int]]
    anchors: list[bool]
    anchor_types: list[frozenset[int]]
    factors: list[AmbiguousFactor]
    forbidden: tuple[int, int] | None = None

    @property
    def first_noncoherent(self) -> AmbiguousFactor | None:
        return next((f for f in self.factors if not f.coherent), None)


def _chain(a: frozenset[int], b: frozenset[int]) -> bool:
    return len(a) == 2 and b == frozenset(next_type(t) for t in a)


def analyze_factors(
    ctx: ReductionContext,
    v: Sequence[Letter],
    first_type: int | None = None,
    last_type: int | None = None,
) -> FactorReport:
    """Set-types, anchors and maximal ambiguous factors of ``v``.

    ``first_type``/``last_type`` pin the end blocks to the types of the
    word they are played against.  Ambiguous factors are maximal runs of
    inner two-type blocks whose set-types follow {1,2} -> {2,3} -> {3,1};
    a factor is coherent when one uniform reading (all first types or all
    second types) fits the anchor types of both neighbouring blocks.
    """
    v = ctx.alphabet.check_word(v)
    blocks = split_blocks(ctx, v)
    count = len(blocks)
    report = FactorReport(blocks, [], [], [], [])
    windows = [(0, count - 1)] if count <= 3 else [(k, k + 2) for k in range(count - 2)]
    for lo, hi in windows:
        span = (blocks[lo][0], blocks[hi][1])
        if forbidden_local_factor(ctx, v[span[0]:span[1]]):
            report.forbidden = span
            return report

    types = [set_type(ctx, v[s:e]) for s, e in blocks]
    if first_type is not None:
        types[0] &= {first_type}
    if last_type is not None:
        types[-1] &= {last_type}
    report.set_types = types

    inner_two = [0 < k < count - 1 and len(types[k]) == 2 for k in range(count)]
    in_chain = [False] * count
    for k in range(1, count - 1):
        if inner_two[k]:
            left = inner_two[k - 1] and _chain(types[k - 1], types[k])
            right = inner_two[k + 1] and _chain(types[k], types[k + 1])
            in_chain[k] = left and right
    report.anchors = [not in_chain[k] for k in range(count)]

    for k in range(count):
        ok = set()
        for t in types[k]:
            if k > 0 and not any(next_type(s) == t for s in types[k - 1]):
                continue
            if k < count - 1 and next_type(t) not in types[k + 1]:
                continue
            ok.add(t)
        report.anchor_types.append(frozenset(ok) if report.anchors[k] else frozenset())

    k = 1
    while k < count - 1:
        if not inner_two[k]:
            k += 1
            continue
        start = k
        while inner_two[k + 1] and _chain(types[k], types[k + 1]):
            k += 1
        report.factors.append(AmbiguousFactor(start, k, _coherent(report, types, start, k)))
        k += 1
    return report


def _coherent(report: FactorReport, types: list[frozenset[int]], start: int, end: int) -> bool:
    left = report.anchor_types[start - 1]
    right = report.anchor_types[end + 1]
    for pick in (0, 1):
        first = _reading(types[start], pick)
        last = _reading(types[end], pick)
        if any(next_type(a) == first for a in left) and next_type(last) in right:
            return True
    return False


def _reading(pair: frozenset[int], pick: int) -> int:
    """The first (pick=0) or second (pick=1) type of a two-type set."""
    a, b = sorted(pair)
    first = a if next_type(a) == b else b
    return first if pick == 0 else next_type(first)


def in_language(ctx: ReductionContext, v: Sequence[Letter]) -> bool:
    return ctx.l_nfa.accepts(ctx.alphabet.check_word(v))


# -- the non-mortal direction ------------------------------------------------------------

def run_configs(ctx: ReductionContext, start: ConfigWord, count: int) -> list[ConfigWord]:
    run = [start]
    while len(run) < count:
        nxt = tm_step(ctx, run[-1])
        if nxt is None:
            raise ReductionError(
                f"run too short: {len(run)} configurations from the start, {count} needed"
            )
        run.append(nxt)
    return run


def build_duplicator_instance(ctx: ReductionContext, start: ConfigWord, big_n: int) -> tuple[Word, Word]:
    """``u = u0#u1#...#uN`` along the run and ``v = u0#v1#...#v(N-2)#uN``.

    Each inner block of ``v`` merges two consecutive configurations, so
    ``v`` has one block fewer than ``u``.
    """
    if big_n < 2:
        raise ReductionError("N must be at least 2")
    run = run_configs(ctx, start, big_n + 1)
    u_blocks = [ctx.config_word(c) for c in run]
    merged = [merge_configs(ctx, run[i], run[i + 1]) for i in range(1, big_n - 1)]
    v_blocks = [u_blocks[0]] + merged + [u_blocks[-1]]
    return join_blocks(ctx, u_blocks), join_blocks(ctx, v_blocks)


def shifted_word(ctx: ReductionContext, run: Sequence[ConfigWord], i: int, j: int) -> Word:
    """Replace blocks ``i..j`` of the run by the ``j - i`` merges between them."""
    blocks = [ctx.config_word(c) for c in run]
    merged = [merge_configs(ctx, run[k], run[k + 1]) for k in range(i, j)]
    return join_blocks(ctx, blocks[:i] + merged + blocks[j + 1:])


# -- misc -------------------------------------------------------------------------------

def powerset_embedding(ctx: ReductionContext) -> dict[Letter, frozenset[str]]:
    """Each base letter as a singleton, each ambiguous letter as its two-element set."""
    out = {}
    for l in ctx.alphabet:
        x = ctx.decode_letter(l)
        out[l] = frozenset({x.pred.name, x.succ.name}) if isinstance(x, AmbLetter) else frozenset({x.name})
    return out


def spoiler_round_bound(n: int) -> float:
    """Rounds Spoiler needs against a mortal machine with run bound ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return 2 + 2 * n + math.log2(n) + 5
