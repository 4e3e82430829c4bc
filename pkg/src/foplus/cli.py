"""Command-line front end.

Exit status: 0 on success, 1 on a negative answer (not monotone, formula
false, Spoiler wins, ...), 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence

from . import automata, counterexample, efgame, intgame, logic, reduction
from .alphabet import (
    AlphabetError,
    OrderedAlphabet,
    build_alphabet,
    format_alphabet,
    format_word,
    leq_word,
    parse_alphabet,
    powerset_alphabet,
    up_closure_letter,
)

OK, NEGATIVE, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _alphabet(args) -> OrderedAlphabet:
    if getattr(args, "predicates", None):
        return powerset_alphabet(args.predicates.split(","))
    if getattr(args, "letters", None):
        pairs = [tuple(p.split("<")) for p in (args.order or "").split()]
        return build_alphabet(args.letters.split(","), pairs)
    if not getattr(args, "alphabet", None):
        raise UsageError("give --alphabet FILE, --letters a,b or --predicates a,b")
    return parse_alphabet(_read(args.alphabet))


def _nfa(args, alphabet: OrderedAlphabet) -> automata.Nfa:
    a = automata.parse_automaton(_read(args.nfa), alphabet)
    return a.to_nfa() if isinstance(a, automata.Dfa) else a


def _words(words) -> str:
    return "\n".join(format_word(w) for w in words)


# -- subcommands -------------------------------------------------------------------

def cmd_closure(args, out) -> int:
    alphabet = _alphabet(args)
    if args.letter:
        up = up_closure_letter(alphabet, alphabet[args.letter])
        print("cl " + args.letter + " = " + " ".join(sorted(l.name for l in up)), file=out)
        return OK
    if args.leq:
        u, v = (alphabet.parse_word(w) for w in args.leq)
        holds = leq_word(alphabet, u, v)
        print("u <= v" if holds else "u is not <= v", file=out)
        return OK if holds else NEGATIVE
    closed = automata.nfa_closure(_nfa(args, alphabet))
    if args.enumerate is not None:
        print(_words(automata.enumerate_language(closed, args.enumerate, args.cap)), file=out)
    elif args.dot:
        print(automata.to_dot(closed, "closure"), end="", file=out)
    else:
        print(automata.format_automaton(closed), end="", file=out)
    return OK


def cmd_monotone(args, out) -> int:
    alphabet = _alphabet(args)
    nfa = _nfa(args, alphabet)
    if args.hardness:
        inst = automata.hardness_instance(nfa)
        print(format_alphabet(inst.alphabet), end="", file=out)
        print(automata.format_automaton(inst), end="", file=out)
        return OK
    if args.include:
        other = automata.parse_automaton(_read(args.include), alphabet)
        other = other.to_nfa() if isinstance(other, automata.Dfa) else other
        if automata.language_included(nfa, other):
            print("included", file=out)
            return OK
        w = automata.inclusion_counterexample(nfa, other)
        print("not included; shortest word: " + format_word(w), file=out)
        return NEGATIVE
    if automata.is_monotone(nfa):
        print("monotone", file=out)
        return OK
    u, v = automata.monotonicity_counterexample(nfa)
    print("not monotone", file=out)
    print("u = " + format_word(u) + "   (accepted)", file=out)
    print("v = " + format_word(v) + "   (rejected, u <= v)", file=out)
    return NEGATIVE


def _assignment(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items or ():
        var, sep, pos = item.partition("=")
        if not sep or not pos.isdigit():
            raise UsageError(f"bad assignment {item!r}; use x=3")
        out[var] = int(pos)
    return out


def cmd_eval(args, out) -> int:
    alphabet = _alphabet(args)
    dialect = logic.FO if args.fo or args.translate else logic.FO_PLUS
    f = logic.parse_formula(args.formula, alphabet, dialect)
    if args.translate:
        g = logic.fo_to_foplus_trivial_order(f, alphabet)
        print(logic.format_formula(g), file=out)
        return OK
    word = alphabet.parse_word(args.word or "")
    value = logic.evaluate(f, alphabet, word, _assignment(args.assign))
    print(f"qr = {logic.quantifier_rank(f)}", file=out)
    print("true" if value else "false", file=out)
    return OK if value else NEGATIVE


def cmd_lang(args, out) -> int:
    alphabet = _alphabet(args)
    if args.sample is not None:
        if args.seed is None:
            raise UsageError("--sample needs an explicit --seed")
        f = logic.sample_formula(args.sample, alphabet, args.seed)
    elif args.formula:
        f = logic.parse_formula(args.formula, alphabet, logic.FO if args.fo else logic.FO_PLUS)
    else:
        raise UsageError("give --formula or --sample RANK --seed S")
    print(f"formula: {logic.format_formula(f)}", file=out)
    print(f"qr = {logic.quantifier_rank(f)}", file=out)
    print(_words(logic.defined_language(f, alphabet, args.maxlen, args.cap)), file=out)
    return OK


def _game_caps(args) -> dict:
    return {"max_rounds": args.max_rounds, "max_total_length": args.max_length}


def _print_trace(alphabet, u, v, trace: efgame.MoveTrace, out) -> None:
    alpha, beta = [], []
    moves = trace.moves
    for k in range(0, len(moves), 2):
        s = moves[k]
        print(f"{s[0]} {s[1]} {s[2]}", file=out)
        if k + 1 == len(moves):
            print("D stuck", file=out)
            break
        d = moves[k + 1]
        i, j = (s[2], d[2]) if s[1] == "u" else (d[2], s[2])
        alpha.append(i)
        beta.append(j)
        pos = efgame.GamePosition(u, v, tuple(alpha), tuple(beta))
        tag = "" if efgame.position_valid(alphabet, pos) else "   (invalid)"
        print(f"{d[0]} {d[1]} {d[2]}{tag}", file=out)


def _doubling_trace(alphabet, u, v, n) -> efgame.MoveTrace:
    """Spoiler plays optimally, Duplicator copies offsets from the nearest token."""
    pos = efgame.GamePosition(u, v, budget=n)
    trace = efgame.MoveTrace()
    while pos.budget:
        s = efgame.best_move(alphabet, pos, max_total_length=len(u) + len(v))
        trace.moves.append(("S", *s))
        reply = efgame.doubling_duplicator_move(pos, s)
        other = "v" if s[0] == "u" else "u"
        trace.moves.append(("D", other, reply))
        i, j = (s[1], reply) if s[0] == "u" else (reply, s[1])
        pos = pos.extended(i, j)
    return trace


def cmd_ef(args, out) -> int:
    alphabet = _alphabet(args)
    u, v = alphabet.parse_word(args.u), alphabet.parse_word(args.v)
    if args.strategy == "doubling":
        ok = efgame.verify_strategy(alphabet, u, v, args.n, efgame.doubling_duplicator_move, **_game_caps(args))
        print(f"doubling strategy {'survives' if ok else 'fails'} {args.n} rounds", file=out)
        return OK if ok else NEGATIVE
    wins = efgame.duplicator_wins(alphabet, u, v, args.n, **_game_caps(args))
    print(f"{'Duplicator' if wins else 'Spoiler'} wins EF+_{args.n}", file=out)
    if args.strategy == "minimax":
        strat = efgame.minimax_strategy(alphabet, u, v)
        ok = efgame.verify_strategy(alphabet, u, v, args.n, strat, **_game_caps(args))
        print(f"extracted strategy {'survives' if ok else 'fails'}", file=out)
    if args.trace:
        _print_trace(alphabet, u, v, efgame.play_trace(alphabet, u, v, args.n), out)
    return OK if wins else NEGATIVE


def cmd_witness(args, out) -> int:
    alphabet = _alphabet(args)
    pair = efgame.witness_search(_nfa(args, alphabet), args.n, args.maxlen, **_game_caps(args))
    print(efgame.describe_pair(pair), file=out)
    return OK if pair else NEGATIVE


def cmd_kdemo(args, out) -> int:
    ctx = counterexample.k_context()
    alphabet = ctx.alphabet
    dfa = counterexample.k_dfa()
    mon = automata.syntactic_monoid(dfa)
    print(f"minimal DFA states: {len(automata.minimize(dfa).states)}", file=out)
    print(f"syntactic monoid: {len(mon.elements)} elements, aperiodic: {mon.is_aperiodic()}", file=out)
    print(f"counter-free: {automata.is_counter_free(dfa)}", file=out)
    print(f"monotone: {automata.is_monotone(dfa.to_nfa())}", file=out)
    u, v = counterexample.build_ce_pair(args.n)
    print(f"u = {format_word(u)}   in K: {counterexample.k_member(u)}", file=out)
    print(f"v = {format_word(v)}   in K: {counterexample.k_member(v)}", file=out)
    status = OK
    if not args.no_solver:
        caps = _game_caps(args)
        wins = efgame.duplicator_wins(alphabet, u, v, args.n, **caps)
        print(f"{'Duplicator' if wins else 'Spoiler'} wins EF+_{args.n}", file=out)
        status = OK if wins else NEGATIVE
    total = len(u) + len(v)
    ok = efgame.verify_strategy(
        alphabet, u, v, args.n, efgame.doubling_duplicator_move,
        max_rounds=max(args.n, args.max_rounds), max_total_length=total,
    )
    print(f"doubling strategy survives {args.n} rounds: {ok}", file=out)
    if args.trace and args.n:
        _print_trace(alphabet, u, v, _doubling_trace(alphabet, u, v, args.n), out)
    return status if ok else NEGATIVE


def _machine(args) -> reduction.TuringMachine:
    return reduction.normalize_types(reduction.parse_machine(_read(args.tm)))


def _config(ctx, text: str) -> reduction.ConfigWord:
    c = reduction.is_configuration(ctx, ctx.parse(text))
    if c is None:
        raise UsageError(f"not a configuration word: {text}")
    return c


def cmd_reduce(args, out) -> int:
    raw = reduction.parse_machine(_read(args.tm))
    machine = reduction.normalize_types(raw)
    if args.normalize:
        print(reduction.format_machine(machine), end="", file=out)
        return OK
    ctx = reduction.ReductionContext(machine)
    if args.word:
        c = reduction.is_configuration(ctx, ctx.parse(args.word))
        if c is None:
            print("not a configuration", file=out)
            return NEGATIVE
        nxt = reduction.tm_step(ctx, c)
        print(f"configuration of type {c.cfg_type}, state {c.state}, head at {c.head_pos}", file=out)
        print("successor: " + (format_word(ctx.config_word(nxt)) if nxt else "none"), file=out)
        return OK
    if args.merge:
        c = _config(ctx, args.merge)
        nxt = reduction.tm_step(ctx, c)
        if nxt is None:
            print("no successor configuration", file=out)
            return NEGATIVE
        print(format_word(reduction.merge_configs(ctx, c, nxt)), file=out)
        return OK
    if args.decode:
        found = reduction.decode_under(ctx, ctx.parse(args.decode))
        for c in sorted(found, key=lambda c: c.head_pos):
            print(format_word(ctx.config_word(c)), file=out)
        print(f"{len(found)} configuration(s) below", file=out)
        return OK
    if args.duplicator_instance is not None:
        if not args.start:
            raise UsageError("--duplicator-instance needs --start WORD")
        u, v = reduction.build_duplicator_instance(ctx, _config(ctx, args.start), args.duplicator_instance)
        print("u = " + format_word(u), file=out)
        print("v = " + format_word(v), file=out)
        print(f"u in L: {reduction.in_language(ctx, u)}", file=out)
        print(f"v in L: {reduction.in_language(ctx, v)}", file=out)
        if args.n is not None:
            wins = efgame.duplicator_wins(ctx.alphabet, u, v, args.n, max_total_length=len(u) + len(v))
            print(f"{'Duplicator' if wins else 'Spoiler'} wins EF+_{args.n}", file=out)
        return OK
    if args.analyze:
        v = ctx.parse(args.analyze)
        report = reduction.analyze_factors(ctx, v, args.first_type, args.last_type)
        print(f"in L: {reduction.in_language(ctx, v)}", file=out)
        if report.forbidden:
            s, e = report.forbidden
            print(f"forbidden local factor at [{s}, {e})", file=out)
            return NEGATIVE
        for k, st in enumerate(report.set_types):
            tag = "anchor " + "".join(map(str, sorted(report.anchor_types[k]))) if report.anchors[k] else ""
            print(f"block {k}: set-type {{{','.join(map(str, sorted(st)))}}} {tag}".rstrip(), file=out)
        for f in report.factors:
            print(f"ambiguous factor blocks {f.first}..{f.last}: {'coherent' if f.coherent else 'not coherent'}", file=out)
        return OK
    alphabet = reduction.reduction_alphabet(machine)
    l_base, l_nfa = reduction.build_L(ctx)
    print(f"states: {len(machine.states)}, transitions: {len(machine.transitions)}", file=out)
    print(f"letters: {len(ctx.base)} base, {len(ctx.amb)} ambiguous, {len(alphabet)} total", file=out)
    print(f"L_base NFA: {len(l_base.states)} states, {len(l_base.transitions)} transitions", file=out)
    print(f"L NFA: {len(l_nfa.states)} states, {len(l_nfa.transitions)} transitions", file=out)
    if args.out_dir:
        d = Path(args.out_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "reduction.alpha").write_text(format_alphabet(alphabet), encoding="utf-8")
        (d / "l_base.nfa").write_text(automata.format_automaton(l_base), encoding="utf-8")
        (d / "l.nfa").write_text(automata.format_automaton(l_nfa), encoding="utf-8")
        print(f"wrote reduction.alpha, l_base.nfa, l.nfa to {d}", file=out)
    return OK


def cmd_height(args, out) -> int:
    machine = _machine(args)
    if args.bound is not None:
        b = reduction.max_run_length(machine, args.bound)
        print(f"longest run: {b}" if b is not None else f"some run reaches {args.bound} steps", file=out)
        return OK if b is not None else NEGATIVE
    if not args.word:
        raise UsageError("give --word or --bound")
    ctx = reduction.ReductionContext(machine)
    c = _config(ctx, args.word)
    if args.approx is not None:
        w = reduction.alpha_approx(ctx, c, args.approx)
        if isinstance(w, reduction.ConfigWord):
            print("window: " + format_word(ctx.config_word(w)), file=out)
            c = w
        else:
            print("window: " + format_word(w) + "   (not a configuration)", file=out)
            return OK
    h = reduction.height(ctx, c, args.cap)
    if h is None:
        print(f"height exceeds cap {args.cap}", file=out)
        return NEGATIVE
    print(f"height: {h}", file=out)
    return OK


def cmd_intgame(args, out) -> int:
    if args.mode == "verify":
        if args.n is None:
            raise UsageError("verify needs -n")
        worst = 0
        count = 0
        for orientation in (intgame.STANDARD, intgame.MIRRORED):
            r = intgame.sweep(args.n, args.maxlen, orientation, solver=not args.no_solver)
            if r.failures:
                print(f"strategy fails on {len(r.failures)} arena(s), e.g.", file=out)
                print(intgame.format_arena(r.failures[0]), file=out)
                return NEGATIVE
            worst = max(worst, r.max_strategy_rounds)
            count += r.arenas
        print(f"checked {count} arenas", file=out)
        print(f"Spoiler wins all arenas in ≤ {2 * args.n} rounds (worst case {worst})", file=out)
        return OK
    if args.u is None or args.v is None or args.n is None:
        raise UsageError("play needs -n, --u and --v")
    orientation = intgame.MIRRORED if args.mirrored else intgame.STANDARD
    arena = intgame.parse_arena(args.n, args.u, args.v, orientation)
    if not intgame.validate_arena(arena):
        print("invalid arena", file=out)
        return USAGE
    winner, rounds = intgame.solve_int_game(arena, cap=args.cap)
    print(f"{winner.capitalize()} wins" + (f" in {rounds} rounds" if rounds else ""), file=out)
    worst = intgame.verify_spoiler_strategy(arena)
    print(f"strategy worst case: {worst} rounds" if worst else "strategy fails", file=out)
    pairs = []
    for side, pos, answer in intgame.strategy_trace(arena):
        print(f"S {side} {pos}", file=out)
        other = "v" if side == "u" else "u"
        if answer < 0:
            print("D stuck", file=out)
            break
        pairs.append((pos, answer) if side == "u" else (answer, pos))
        legal = intgame.referee_check(arena, pairs)
        print(f"D {other} {answer}" + ("" if legal else "   (breaks a rule)"), file=out)
        if not legal:
            break
    return OK if winner == "spoiler" else NEGATIVE


# -- parser -------------------------------------------------------------------------

def _add_alphabet(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("alphabet")
    g.add_argument("--alphabet", help="alphabet file")
    g.add_argument("--letters", help="comma-separated letters, e.g. a,b")
    g.add_argument("--order", help="space-separated pairs, e.g. 'a<b'")
    g.add_argument("--predicates", help="comma-separated predicates of a powerset alphabet")


def _add_caps(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-rounds", type=int, default=efgame.DEFAULT_MAX_ROUNDS)
    p.add_argument("--max-length", type=int, default=efgame.DEFAULT_MAX_TOTAL_LENGTH,
                   help="cap on |u|+|v|")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="foplus", description="Positive first-order logic on words.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", help="monotone closure of an automaton")
    _add_alphabet(p)
    p.add_argument("--nfa")
    p.add_argument("--enumerate", type=int, metavar="MAXLEN")
    p.add_argument("--cap", type=int, default=automata.DEFAULT_ENUMERATION_CAP)
    p.add_argument("--dot", action="store_true")
    p.add_argument("--letter", help="print the up-closure of one letter")
    p.add_argument("--leq", nargs=2, metavar=("U", "V"), help="compare two words")
    p.set_defaults(func=cmd_closure)

    p = sub.add_parser("monotone", help="decide monotonicity")
    _add_alphabet(p)
    p.add_argument("--nfa", required=True)
    p.add_argument("--hardness", action="store_true", help="print the universality instance")
    p.add_argument("--include", metavar="NFA", help="decide inclusion in another automaton")
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("eval", help="evaluate a formula on a word")
    _add_alphabet(p)
    p.add_argument("--formula", required=True)
    p.add_argument("--word")
    p.add_argument("--assign", nargs="*", metavar="x=POS")
    p.add_argument("--fo", action="store_true", help="allow negation")
    p.add_argument("--translate", action="store_true", help="rewrite FO into FO+ (unordered alphabets)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("lang", help="words up to a length satisfying a sentence")
    _add_alphabet(p)
    p.add_argument("--formula")
    p.add_argument("--fo", action="store_true")
    p.add_argument("--sample", type=int, metavar="RANK")
    p.add_argument("--seed", type=int)
    p.add_argument("--maxlen", type=int, default=3)
    p.add_argument("--cap", type=int, default=automata.DEFAULT_ENUMERATION_CAP)
    p.set_defaults(func=cmd_lang)

    p = sub.add_parser("ef", help="solve an EF+ game")
    _add_alphabet(p)
    p.add_argument("--u", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p.add_argument("--strategy", choices=["minimax", "doubling"])
    _add_caps(p)
    p.set_defaults(func=cmd_ef)

    p = sub.add_parser("witness", help="search u in L, v not in L with u ≼n v")
    _add_alphabet(p)
    p.add_argument("--nfa", required=True)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--maxlen", type=int, default=4)
    _add_caps(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("kdemo", help="the counterexample language K")
    p.add_argument("-n", type=int, default=1)
    p.add_argument("--no-solver", action="store_true")
    p.add_argument("--trace", action="store_true")
    _add_caps(p)
    p.set_defaults(func=cmd_kdemo)

    p = sub.add_parser("reduce", help="encode a Turing machine")
    p.add_argument("--tm", required=True)
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--out-dir")
    p.add_argument("--word", help="check a configuration word")
    p.add_argument("--merge", metavar="WORD", help="merge a configuration with its successor")
    p.add_argument("--decode", metavar="WORD", help="configurations below a word")
    p.add_argument("--duplicator-instance", type=int, metavar="N")
    p.add_argument("--start", metavar="WORD")
    p.add_argument("-n", type=int, help="also solve EF+_n on the instance")
    p.add_argument("--analyze", metavar="WORD")
    p.add_argument("--first-type", type=int, choices=[1, 2, 3])
    p.add_argument("--last-type", type=int, choices=[1, 2, 3])
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("height", help="run length of a configuration")
    p.add_argument("--tm", required=True)
    p.add_argument("--word")
    p.add_argument("--cap", type=int, default=reduction.DEFAULT_HEIGHT_CAP)
    p.add_argument("--approx", type=int, metavar="N")
    p.add_argument("--bound", type=int, metavar="RADIUS", help="longest run on any tape")
    p.set_defaults(func=cmd_height)

    p = sub.add_parser("intgame", help="the integer game")
    p.add_argument("mode", nargs="?", choices=["play", "verify"], default="play")
    p.add_argument("-n", type=int)
    p.add_argument("--u")
    p.add_argument("--v")
    p.add_argument("--mirrored", action="store_true")
    p.add_argument("--maxlen", type=int, default=4)
    p.add_argument("--cap", type=int, default=intgame.DEFAULT_TOTAL_CAP)
    p.add_argument("--no-solver", action="store_true")
    p.set_defaults(func=cmd_intgame)
    return parser


ERRORS = (
    UsageError,
    AlphabetError,
    automata.AutomatonError,
    automata.CapExceeded,
    logic.FormulaError,
    reduction.MachineError,
    reduction.ReductionError,
    intgame.StrategyError,
    ValueError,
)


def run(argv: Sequence[str], out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return USAGE if exc.code else OK
    try:
        return args.func(args, out)
    except automata.CapExceeded as exc:
        print(f"error: cap exceeded: {exc}", file=sys.stderr)
        return USAGE
    except ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main(argv: Sequence[str] | None = None) -> int:
    if os.name != "nt" and hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(encoding="utf-8")
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
