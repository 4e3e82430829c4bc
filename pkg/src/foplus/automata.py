"""NFA/DFA engine over ordered alphabets.

Automata are immutable.  States may be any hashable values; the text format
and the graph export rename them when their string form is not a plain token.

The decision procedures here (inclusion, monotonicity, aperiodicity) are the
ones the rest of the package builds on, so counterexamples are always
shortlex-minimal: shortest first, ties broken by letter name.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Mapping, Sequence

from .alphabet import AlphabetError, Letter, OrderedAlphabet, Word

State = Hashable
SINK = "__sink__"
DEFAULT_ENUMERATION_CAP = 12


class AutomatonError(ValueError):
    pass


class CapExceeded(ValueError):
    """A configured size cap was exceeded; the message names the cap."""

    def __init__(self, cap_name: str, value: int, cap: int):
        super().__init__(f"{cap_name}={value} exceeds the cap {cap}")
        self.cap_name = cap_name


class Nfa:
    """Nondeterministic automaton without ε-transitions."""

    def __init__(
        self,
        alphabet: OrderedAlphabet,
        states: Iterable[State],
        initial: Iterable[State],
        final: Iterable[State],
        transitions: Iterable[tuple[State, Letter, State]],
    ):
        self.alphabet = alphabet
        self.states = frozenset(states)
        self.initial = frozenset(initial)
        self.final = frozenset(final)
        self.transitions = frozenset((p, alphabet[a if isinstance(a, str) else a.name], q) for p, a, q in transitions)
        if not self.initial <= self.states or not self.final <= self.states:
            raise AutomatonError("initial/final states must be states")
        succ: dict[tuple[State, Letter], set[State]] = {}
        for p, a, q in self.transitions:
            if p not in self.states or q not in self.states:
                raise AutomatonError(f"transition {p} -{a}-> {q} uses an unknown state")
            succ.setdefault((p, a), set()).add(q)
        self._succ = {k: frozenset(v) for k, v in succ.items()}

    def __repr__(self) -> str:
        return f"Nfa({len(self.states)} states, {len(self.transitions)} transitions)"

    def successors(self, p: State, a: Letter) -> frozenset[State]:
        return self._succ.get((p, a), frozenset())

    def step(self, states: Iterable[State], a: Letter) -> frozenset[State]:
        out: set[State] = set()
        for p in states:
            out |= self._succ.get((p, a), frozenset())
        return frozenset(out)

    def run(self, word: Sequence[Letter]) -> frozenset[State]:
        current = self.initial
        for a in word:
            current = self.step(current, a)
            if not current:
                break
        return current

    def accepts(self, word: Sequence[Letter]) -> bool:
        return bool(self.run(word) & self.final)

    def letters_from(self, p: State) -> list[Letter]:
        return sorted({a for (q, a) in self._succ if q == p})


class Dfa:
    """Complete deterministic automaton.

    Missing transitions are completed towards the reserved state ``SINK``,
    added only if needed.
    """

    def __init__(
        self,
        alphabet: OrderedAlphabet,
        states: Iterable[State],
        initial: State,
        final: Iterable[State],
        delta: Mapping[tuple[State, Letter], State],
    ):
        self.alphabet = alphabet
        states = list(dict.fromkeys(states))
        self.initial = initial
        self.final = frozenset(final)
        table = {(p, alphabet[a if isinstance(a, str) else a.name]): q for (p, a), q in delta.items()}
        needs_sink = any((p, a) not in table for p in states for a in alphabet)
        if needs_sink and SINK not in states:
            states.append(SINK)
        if needs_sink:
            for p in states:
                for a in alphabet:
                    table.setdefault((p, a), SINK)
        known = set(states)
        if initial not in known or not self.final <= known:
            raise AutomatonError("initial/final states must be states")
        for (p, a), q in table.items():
            if p not in known or q not in known:
                raise AutomatonError(f"transition {p} -{a}-> {q} uses an unknown state")
        self.states = tuple(states)
        self.delta = table

    def __repr__(self) -> str:
        return f"Dfa({len(self.states)} states)"

    def run(self, word: Sequence[Letter], start: State | None = None) -> State:
        q = self.initial if start is None else start
        for a in word:
            q = self.delta[q, a]
        return q

    def accepts(self, word: Sequence[Letter]) -> bool:
        return self.run(word) in self.final

    def to_nfa(self) -> Nfa:
        return Nfa(
            self.alphabet,
            self.states,
            [self.initial],
            self.final,
            [(p, a, q) for (p, a), q in self.delta.items()],
        )


def _same_alphabet(a: Nfa | Dfa, b: Nfa | Dfa) -> None:
    if a.alphabet is not b.alphabet and (
        a.alphabet.letters != b.alphabet.letters
        or a.alphabet.order_pairs() != b.alphabet.order_pairs()
    ):
        raise AlphabetError("automata are over different alphabets")


# -- basic constructions -------------------------------------------------------

def empty_nfa(alphabet: OrderedAlphabet) -> Nfa:
    return Nfa(alphabet, [0], [0], [], [])


def epsilon_nfa(alphabet: OrderedAlphabet) -> Nfa:
    return Nfa(alphabet, [0], [0], [0], [])


def letters_nfa(alphabet: OrderedAlphabet, letters: Iterable[Letter]) -> Nfa:
    """One-letter words from ``letters``."""
    return Nfa(alphabet, [0, 1], [0], [1], [(0, a, 1) for a in letters])


def universal_nfa(alphabet: OrderedAlphabet, letters: Iterable[Letter] | None = None) -> Nfa:
    letters = alphabet.letters if letters is None else letters
    return Nfa(alphabet, [0], [0], [0], [(0, a, 0) for a in letters])


def word_nfa(alphabet: OrderedAlphabet, word: Sequence[Letter]) -> Nfa:
    n = len(word)
    return Nfa(alphabet, range(n + 1), [0], [n], [(i, a, i + 1) for i, a in enumerate(word)])


def _tagged(nfa: Nfa, tag: int):
    return (
        {(tag, p) for p in nfa.states},
        {(tag, p) for p in nfa.initial},
        {(tag, p) for p in nfa.final},
        {((tag, p), a, (tag, q)) for p, a, q in nfa.transitions},
    )


def union(*nfas: Nfa) -> Nfa:
    states, initial, final, trans = set(), set(), set(), set()
    for i, nfa in enumerate(nfas):
        _same_alphabet(nfas[0], nfa)
        s, i0, f, t = _tagged(nfa, i)
        states |= s
        initial |= i0
        final |= f
        trans |= t
    return _compact(Nfa(nfas[0].alphabet, states, initial, final, trans))


def _compact(nfa: Nfa) -> Nfa:
    """Rename states to consecutive integers (keeps nested constructions flat)."""
    names = {p: k for k, p in enumerate(sorted(nfa.states, key=repr))}
    return Nfa(
        nfa.alphabet,
        names.values(),
        [names[p] for p in nfa.initial],
        [names[p] for p in nfa.final],
        [(names[p], a, names[q]) for p, a, q in nfa.transitions],
    )


def concat(*nfas: Nfa) -> Nfa:
    """Concatenation, built without ε-transitions."""
    result = nfas[0]
    for other in nfas[1:]:
        _same_alphabet(result, other)
        s1, i1, f1, t1 = _tagged(result, 0)
        s2, i2, f2, t2 = _tagged(other, 1)
        trans = t1 | t2
        trans |= {(p, a, q2) for (p, a, q) in t1 if q in f1 for q2 in i2}
        initial = set(i1)
        if i1 & f1:
            initial |= i2
        final = set(f2)
        if i2 & f2:
            final |= f1
        result = _compact(Nfa(result.alphabet, s1 | s2, initial, final, trans))
    return result


def star(nfa: Nfa) -> Nfa:
    s, i0, f, t = _tagged(nfa, 0)
    trans = set(t)
    trans |= {(p, a, q2) for (p, a, q) in t if q in f for q2 in i0}
    start = ("star",)
    trans |= {(start, a, q) for (p, a, q) in list(trans) if p in i0}
    return _compact(Nfa(nfa.alphabet, s | {start}, [start], f | {start}, trans))


def trim(nfa: Nfa) -> Nfa:
    """Restrict to states that are both reachable and co-reachable."""
    forward = _reach(nfa.initial, {(p, q) for p, _, q in nfa.transitions})
    backward = _reach(nfa.final, {(q, p) for p, _, q in nfa.transitions})
    useful = forward & backward
    if not useful:
        return empty_nfa(nfa.alphabet)
    return Nfa(
        nfa.alphabet,
        useful,
        nfa.initial & useful,
        nfa.final & useful,
        [(p, a, q) for p, a, q in nfa.transitions if p in useful and q in useful],
    )


def _reach(start: Iterable[State], edges: set[tuple[State, State]]) -> set[State]:
    adj: dict[State, list[State]] = {}
    for p, q in edges:
        adj.setdefault(p, []).append(q)
    seen = set(start)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for q in adj.get(p, ()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return seen


def factor_nfa(nfa: Nfa) -> Nfa:
    """NFA for the set of factors of words of ``L(nfa)``."""
    t = trim(nfa)
    if not t.final:
        return t
    return Nfa(t.alphabet, t.states, t.states, t.states, t.transitions)


def relabel(nfa: Nfa, prefix: str = "q") -> Nfa:
    """Rename states to ``q0, q1, ...`` in a deterministic BFS order."""
    order: dict[State, str] = {}
    queue = deque(sorted(nfa.initial, key=repr))
    for p in queue:
        order.setdefault(p, f"{prefix}{len(order)}")
    by_source: dict[State, list[tuple[Letter, State]]] = {}
    for p, a, q in nfa.transitions:
        by_source.setdefault(p, []).append((a, q))
    while queue:
        p = queue.popleft()
        for a, q in sorted(by_source.get(p, ()), key=lambda e: (e[0], repr(e[1]))):
            if q not in order:
                order[q] = f"{prefix}{len(order)}"
                queue.append(q)
    for p in sorted(nfa.states - order.keys(), key=repr):
        order[p] = f"{prefix}{len(order)}"
    return Nfa(
        nfa.alphabet,
        order.values(),
        [order[p] for p in nfa.initial],
        [order[p] for p in nfa.final],
        [(order[p], a, order[q]) for p, a, q in nfa.transitions],
    )


# -- determinization and minimization -----------------------------------------

def determinize(nfa: Nfa) -> Dfa:
    """Subset construction; states are frozensets (the empty set is the sink)."""
    start = nfa.initial
    states = [start]
    seen = {start}
    delta = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for a in nfa.alphabet:
            t = nfa.step(s, a)
            delta[s, a] = t
            if t not in seen:
                seen.add(t)
                states.append(t)
                queue.append(t)
    return Dfa(nfa.alphabet, states, start, [s for s in states if s & nfa.final], delta)


def minimize(dfa: Dfa) -> Dfa:
    """Moore partition refinement on the reachable part.

    Each class is named after its first member in BFS order from the initial
    state, so an already-minimal DFA keeps its state names.
    """
    letters = dfa.alphabet.letters
    reachable = [dfa.initial]
    seen = {dfa.initial}
    for p in reachable:
        for a in letters:
            q = dfa.delta[p, a]
            if q not in seen:
                seen.add(q)
                reachable.append(q)
    block = {p: int(p in dfa.final) for p in reachable}
    while True:
        signature = {p: (block[p],) + tuple(block[dfa.delta[p, a]] for a in letters) for p in reachable}
        ids: dict[tuple, int] = {}
        new_block = {p: ids.setdefault(signature[p], len(ids)) for p in reachable}
        if len(ids) == len(set(block.values())):
            break
        block = new_block
    block = new_block
    name: dict[int, State] = {}
    for p in reachable:
        name.setdefault(block[p], p)
    states = [name[b] for b in sorted(name, key=lambda b: reachable.index(name[b]))]
    delta = {(name[block[p]], a): name[block[dfa.delta[p, a]]] for p in reachable for a in letters}
    final = {name[block[p]] for p in reachable if p in dfa.final}
    return Dfa(dfa.alphabet, states, name[block[dfa.initial]], final, delta)


def complement(dfa: Dfa) -> Dfa:
    return Dfa(dfa.alphabet, dfa.states, dfa.initial, set(dfa.states) - dfa.final, dfa.delta)


def intersection(a: Nfa, b: Nfa) -> Nfa:
    _same_alphabet(a, b)
    start = [(p, q) for p in a.initial for q in b.initial]
    seen = set(start)
    queue = deque(start)
    trans = []
    while queue:
        p, q = queue.popleft()
        for x in a.alphabet:
            for p2 in a.successors(p, x):
                for q2 in b.successors(q, x):
                    trans.append(((p, q), x, (p2, q2)))
                    if (p2, q2) not in seen:
                        seen.add((p2, q2))
                        queue.append((p2, q2))
    final = [s for s in seen if s[0] in a.final and s[1] in b.final]
    return Nfa(a.alphabet, seen or {(None, None)}, start, final, trans)


# -- decisions -------------------------------------------------------------------

def nfa_closure(nfa: Nfa) -> Nfa:
    """NFA for the monotone closure: every ``p -a-> q`` becomes ``p -b-> q`` for ``b >= a``."""
    up = nfa.alphabet.up
    trans = {(p, b, q) for p, a, q in nfa.transitions for b in up(a)}
    return Nfa(nfa.alphabet, nfa.states, nfa.initial, nfa.final, trans)


def inclusion_counterexample(a: Nfa, b: Nfa) -> Word | None:
    """Shortlex-least word of ``L(a) \\ L(b)``, or ``None`` if ``L(a) ⊆ L(b)``.

    Breadth-first search over pairs of subsets, one per automaton. Each word
    reaches exactly one pair, so first discovery in letter order is shortlex.
    """
    _same_alphabet(a, b)
    letters = a.alphabet.letters
    start = (a.initial, b.initial)
    parent: dict[tuple, tuple | None] = {start: None}
    queue: deque = deque([start])
    while queue:
        node = queue.popleft()
        s, t = node
        if s & a.final and not (t & b.final):
            return _trace_back(parent, node)
        for x in letters:
            s2 = a.step(s, x)
            if not s2:
                continue
            child = (s2, b.step(t, x))
            if child not in parent:
                parent[child] = (node, x)
                queue.append(child)
    return None


def _trace_back(parent: dict, node) -> Word:
    out = []
    while parent[node] is not None:
        node, x = parent[node]
        out.append(x)
    return tuple(reversed(out))


def language_included(a: Nfa, b: Nfa) -> bool:
    return inclusion_counterexample(a, b) is None


def is_universal(nfa: Nfa) -> bool:
    return language_included(universal_nfa(nfa.alphabet), nfa)


def languages_equal(a: Nfa, b: Nfa) -> bool:
    return language_included(a, b) and language_included(b, a)


def monotonicity_counterexample(nfa: Nfa) -> tuple[Word, Word] | None:
    """A pair ``(u, v)`` with ``u`` accepted, ``u <= v`` and ``v`` rejected.

    ``v`` is the shortlex-least word of ``L(cl A) \\ L(A)`` and ``u`` the
    lexicographically least word below ``v`` accepted by ``A``.
    """
    v = inclusion_counterexample(nfa_closure(nfa), nfa)
    if v is None:
        return None
    return _least_below(nfa, v), v


def _least_below(nfa: Nfa, v: Word) -> Word:
    down = nfa.alphabet.down
    # alive[i]: states from which some w <= v[i:] is accepted
    alive = [frozenset()] * (len(v) + 1)
    alive[len(v)] = nfa.final
    for i in range(len(v) - 1, -1, -1):
        alive[i] = frozenset(
            p for p in nfa.states if any(nfa.successors(p, b) & alive[i + 1] for b in down(v[i]))
        )
    current = nfa.initial & alive[0]
    u = []
    for i, target in enumerate(v):
        for b in sorted(down(target)):
            nxt = nfa.step(current, b) & alive[i + 1]
            if nxt:
                u.append(b)
                current = nxt
                break
        else:  # pragma: no cover - alive sets guarantee a choice
            raise AssertionError("no accepted word below the counterexample")
    return tuple(u)


def is_monotone(nfa: Nfa) -> bool:
    """Whether ``L(nfa)`` is upward closed, decided as ``L(cl A) ⊆ L(A)``."""
    return monotonicity_counterexample(nfa) is None


def hardness_instance(nfa: Nfa, low: str = "a", high: str = "b") -> Nfa:
    """NFA for ``low·Σ* + high·L(nfa)`` over ``Σ ∪ {low, high}``.

    ``low < high`` is the only strict inequality of the new alphabet, so the
    result is monotone exactly when ``nfa`` is universal.
    """
    from .alphabet import build_alphabet

    sigma = nfa.alphabet
    if low in sigma or high in sigma:
        raise AlphabetError(f"fresh letters {low!r}/{high!r} collide with the alphabet")
    if not sigma.is_trivial_order():
        raise AlphabetError("the source alphabet must be unordered")
    alphabet = build_alphabet([a.name for a in sigma.letters] + [low, high], [(low, high)])
    start, loop = ("start",), ("any",)
    trans = [(start, alphabet[low], loop)]
    trans += [(loop, alphabet[a.name], loop) for a in sigma.letters]
    trans += [(start, alphabet[high], ("A", q)) for q in nfa.initial]
    trans += [(("A", p), alphabet[a.name], ("A", q)) for p, a, q in nfa.transitions]
    states = [start, loop] + [("A", q) for q in nfa.states]
    final = [loop] + [("A", q) for q in nfa.final]
    return Nfa(alphabet, states, [start], final, trans)


# -- monoids -------------------------------------------------------------------

@dataclass
class TransitionMonoid:
    """Transition monoid of a complete DFA.

    ``elements[i]`` is a state map (tuple indexed like ``states``), ``words[i]``
    its shortlex-least representative and ``table[i][j]`` the index of the
    product "first ``i`` then ``j``".  Element 0 is the identity.
    """

    states: tuple
    elements: list[tuple[int, ...]]
    words: list[Word]
    generators: dict[Letter, int]
    table: list[list[int]] = field(repr=False)

    def __len__(self) -> int:
        return len(self.elements)

    def multiply(self, i: int, j: int) -> int:
        return self.table[i][j]

    def power_sequence(self, i: int) -> list[int]:
        """``m, m², m³, ...`` up to the first repetition."""
        seq = [i]
        while True:
            nxt = self.table[seq[-1]][i]
            if nxt in seq:
                return seq + [nxt]
            seq.append(nxt)

    def is_aperiodic(self) -> bool:
        # the first repeated power must be a fixed point m^k = m^{k+1}
        for i in range(len(self)):
            seq = self.power_sequence(i)
            if seq[-1] != seq[-2]:
                return False
        return True


def transition_monoid(dfa: Dfa) -> TransitionMonoid:
    states = dfa.states
    index = {p: k for k, p in enumerate(states)}
    gens = {a: tuple(index[dfa.delta[p, a]] for p in states) for a in dfa.alphabet.letters}
    identity = tuple(range(len(states)))
    elements = [identity]
    words: list[Word] = [()]
    position = {identity: 0}
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for a in dfa.alphabet.letters:
            g = gens[a]
            t = tuple(g[x] for x in elements[i])
            if t not in position:
                position[t] = len(elements)
                elements.append(t)
                words.append(words[i] + (a,))
                queue.append(position[t])
    table = [[position[tuple(f[x] for x in e)] for f in elements] for e in elements]
    return TransitionMonoid(
        states, elements, words, {a: position[g] for a, g in gens.items()}, table
    )


def syntactic_monoid(dfa: Dfa) -> TransitionMonoid:
    """Transition monoid of the minimal DFA."""
    return transition_monoid(minimize(dfa))


def is_counter_free(dfa: Dfa) -> bool:
    return transition_monoid(dfa).is_aperiodic()


# -- enumeration ---------------------------------------------------------------

def iter_language(nfa: Nfa, maxlen: int) -> Iterator[Word]:
    """Accepted words of length <= maxlen in shortlex order."""
    letters = nfa.alphabet.letters
    # dist[p]: length of the shortest accepted continuation from p
    dist = {p: 0 for p in nfa.final}
    frontier = set(nfa.final)
    rev: dict[State, set[State]] = {}
    for p, _, q in nfa.transitions:
        rev.setdefault(q, set()).add(p)
    d = 0
    while frontier:
        d += 1
        frontier = {p for q in frontier for p in rev.get(q, ()) if p not in dist}
        for p in frontier:
            dist[p] = d

    inf = float("inf")

    def extend(states: frozenset, prefix: list, remaining: int):
        if remaining == 0:
            if states & nfa.final:
                yield tuple(prefix)
            return
        for a in letters:
            nxt = nfa.step(states, a)
            if nxt and min(dist.get(p, inf) for p in nxt) <= remaining - 1:
                prefix.append(a)
                yield from extend(nxt, prefix, remaining - 1)
                prefix.pop()

    for length in range(maxlen + 1):
        yield from extend(nfa.initial, [], length)


def enumerate_language(nfa: Nfa, maxlen: int, cap: int = DEFAULT_ENUMERATION_CAP) -> list[Word]:
    if maxlen > cap:
        raise CapExceeded("maxlen", maxlen, cap)
    return list(iter_language(nfa, maxlen))


# -- text format -------------------------------------------------------------------

def parse_automaton(text: str, alphabet: OrderedAlphabet) -> Nfa | Dfa:
    """Read the ``nfa``/``dfa`` text format."""
    lines = [l.strip() for l in text.splitlines()]
    lines = [l for l in lines if l and not l.startswith(";")]
    if not lines or lines[0] not in ("nfa", "dfa"):
        raise AutomatonError("automaton text must start with 'nfa' or 'dfa'")
    kind = lines[0]
    fields: dict[str, list[str]] = {}
    trans: list[tuple[str, Letter, str]] = []
    for lineno, line in enumerate(lines[1:], 2):
        if " -" in line and "-> " in line:
            p, _, rest = line.partition(" -")
            label, _, q = rest.rpartition("-> ")
            try:
                trans.append((p.strip(), alphabet[label.strip()], q.strip()))
            except AlphabetError as exc:
                raise AutomatonError(f"line {lineno}: {exc}") from None
            continue
        key, sep, rest = line.partition(":")
        if not sep or key.strip() not in ("states", "initial", "final"):
            raise AutomatonError(f"line {lineno}: cannot parse {line!r}")
        fields[key.strip()] = rest.split()
    if "states" not in fields or "initial" not in fields:
        raise AutomatonError("missing 'states:' or 'initial:' line")
    final = fields.get("final", [])
    if kind == "nfa":
        return Nfa(alphabet, fields["states"], fields["initial"], final, trans)
    if len(fields["initial"]) != 1:
        raise AutomatonError("a dfa has exactly one initial state")
    delta = {}
    for p, a, q in trans:
        if (p, a) in delta and delta[p, a] != q:
            raise AutomatonError(f"dfa is not deterministic at {p} -{a}->")
        delta[p, a] = q
    return Dfa(alphabet, fields["states"], fields["initial"][0], final, delta)


def _plain_names(states: Iterable[State]) -> bool:
    return all(isinstance(p, str) and p and not any(c.isspace() for c in p) and "->" not in p for p in states)


def format_automaton(automaton: Nfa | Dfa) -> str:
    nfa = automaton.to_nfa() if isinstance(automaton, Dfa) else automaton
    if not _plain_names(nfa.states):
        nfa = relabel(nfa)
    order = {p: k for k, p in enumerate(sorted(nfa.states, key=_natural_key))}
    names = sorted(nfa.states, key=order.get)
    lines = ["dfa" if isinstance(automaton, Dfa) else "nfa"]
    lines.append("states: " + " ".join(names))
    lines.append("initial: " + " ".join(sorted(nfa.initial, key=order.get)))
    lines.append("final: " + " ".join(sorted(nfa.final, key=order.get)))
    for p, a, q in sorted(nfa.transitions, key=lambda t: (order[t[0]], t[1], order[t[2]])):
        lines.append(f"{p} -{a.name}-> {q}")
    return "\n".join(lines) + "\n"


def _natural_key(name: str):
    digits = "".join(c for c in name if c.isdigit())
    return (name.rstrip("0123456789"), int(digits) if digits and name[-1].isdigit() else -1, name)


def to_dot(automaton: Nfa | Dfa, name: str = "automaton") -> str:
    """Graphviz description; parallel edges are merged into one label."""
    nfa = automaton.to_nfa() if isinstance(automaton, Dfa) else automaton
    if not _plain_names(nfa.states):
        nfa = relabel(nfa)
    labels: dict[tuple[str, str], list[str]] = {}
    for p, a, q in nfa.transitions:
        labels.setdefault((p, q), []).append(a.name)
    out = [f"digraph {name} {{", "  rankdir=LR;"]
    for p in sorted(nfa.states, key=_natural_key):
        shape = "doublecircle" if p in nfa.final else "circle"
        out.append(f'  "{p}" [shape={shape}];')
    for k, p in enumerate(sorted(nfa.initial, key=_natural_key)):
        out.append(f'  "__init{k}" [shape=point]; "__init{k}" -> "{p}";')
    for (p, q), names in sorted(labels.items()):
        out.append(f'  "{p}" -> "{q}" [label="{",".join(sorted(names))}"];')
    out.append("}")
    return "\n".join(out) + "\n"
