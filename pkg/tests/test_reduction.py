import random

import pytest
from hypothesis import given, settings, strategies as st

from foplus import reduction as R
from foplus.alphabet import format_word
from foplus.automata import languages_equal

import lemmas


@pytest.fixture(scope="module")
def mortal():
    return R.ReductionContext(R.normalize_types(R.load_fixture("mortal")))


@pytest.fixture(scope="module")
def sweeper():
    return R.ReductionContext(R.normalize_types(R.load_fixture("sweeper")))


def cfg(ctx, text):
    c = R.is_configuration(ctx, ctx.parse(text))
    assert c is not None, text
    return c


# -- machines ------------------------------------------------------------------------

def test_typed_machine_is_unchanged(mortal):
    m = R.load_fixture("mortal")
    assert R.normalize_types(m) == m


def test_self_loop_machine_gets_three_copies():
    m = R.parse_machine("gamma: 0\nstates: s/1\ns 0 -> s 0 R\n")
    assert not m.is_typed()
    t = R.normalize_types(m)
    assert len(t.states) == 3 and len(t.transitions) == 3
    assert t.is_typed()
    assert sorted(t.types.values()) == [1, 2, 3]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_normalization_always_cycles_types(seed):
    rng = random.Random(seed)
    states = ["s", "t", "u"][: rng.randint(1, 3)]
    lines = ["gamma: 0 1", "states: " + " ".join(f"{q}/1" for q in states)]
    for q in states:
        for a in "01":
            if rng.random() < 0.7:
                lines.append(f"{q} {a} -> {rng.choice(states)} {rng.choice('01')} {rng.choice('LR')}")
    raw = R.parse_machine("\n".join(lines) + "\n")
    t = R.normalize_types(raw)
    assert t.is_typed()
    assert len(t.transitions) == 3 * len(raw.transitions)


def test_nondeterministic_machine_rejected():
    with pytest.raises(R.MachineError):
        R.parse_machine("gamma: 0\nstates: s/1 t/2\ns 0 -> t 0 R\ns 0 -> t 0 L\n")


def test_machine_text_round_trip():
    m = R.load_fixture("sweeper")
    assert R.parse_machine(R.format_machine(m)) == m


def test_mortality_bound():
    m = R.load_fixture("mortal")
    assert R.max_run_length(m, 5) == 4
    assert R.max_run_length(R.load_fixture("sweeper"), 6) is None


# -- alphabet ------------------------------------------------------------------------

def test_empty_transition_table():
    m = R.parse_machine("gamma: 0 1\nstates: s/1\n")
    A = R.reduction_alphabet(m)
    assert A.is_trivial_order()
    assert R.ambiguous_letters(m) == []


def test_head_write_pairs_are_ambiguous(mortal):
    # the head cell before a step faces the written cell after it
    for d in mortal.machine.transitions:
        assert any(
            x.pred == R.head(d.src, d.read) and x.succ.symbol == d.write and x.succ.sub == d.ident
            for x in mortal.amb
        )


def test_no_pair_of_two_heads(mortal, sweeper):
    for ctx in (mortal, sweeper):
        for x in ctx.amb:
            assert not (x.pred.kind == "head" and x.succ.kind == "head")


def test_order_is_base_below_ambiguous(mortal):
    A = mortal.alphabet
    for a, b in A.order_pairs():
        x, y = mortal.decode_letter(a), mortal.decode_letter(b)
        assert isinstance(x, R.BaseLetter) and isinstance(y, R.AmbLetter)
        assert x in (y.pred, y.succ)


# -- configurations -------------------------------------------------------------------

def test_configuration_examples(mortal):
    c = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    assert c.cfg_type == 2 and c.head_pos == 3
    assert R.is_configuration(mortal, mortal.parse("0 # 0")) is None
    assert R.is_configuration(mortal, mortal.parse("0_d2 [b.0] [b.0] 1^d3")) is None
    assert R.is_configuration(mortal, mortal.parse("0 0 1^d5 [b.0] 0_d2 0")) is None


def test_step_examples(mortal):
    c = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    nxt = R.tm_step(mortal, c)
    assert format_word(mortal.config_word(nxt)) == "0 0^d6 [c.1] 0_d3 0 0"
    assert nxt.cfg_type == 3
    # the successor leaves the tape: no configuration follows
    edge = cfg(mortal, "0^d6 [c.1] 0_d3")
    assert R.tm_step(mortal, edge) is None
    # state e has no moves, so a d-configuration is last
    d = cfg(mortal, "0^d7 [d.0] 0_d6")
    assert R.tm_step(mortal, d) is None and R.height(mortal, d) == 1


def test_step_advances_the_type(mortal):
    for c in lemmas.configs_upto(mortal, 4):
        nxt = R.tm_step(mortal, c)
        if nxt is not None:
            assert nxt.cfg_type == R.next_type(c.cfg_type)


def test_height_and_cap(sweeper, mortal):
    c = R.enumerate_configs(sweeper, 8).__next__()
    assert R.height(sweeper, c, cap=2) is None
    assert R.height(mortal, cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")) == 3


def test_window_examples(mortal):
    c = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    assert R.alpha_approx(mortal, c, 10) == c
    w = R.alpha_approx(mortal, c, 0)
    assert format_word(w) == "[b.0]"
    w = R.alpha_approx(mortal, c, 1)
    assert format_word(mortal.config_word(w)) == "1^d3 [b.0] 0_d2"


def test_merge_worked_example(mortal):
    c1 = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    c2 = R.tm_step(mortal, c1)
    v = R.merge_configs(mortal, c1, c2)
    assert format_word(v) == "0 <0/0^d6> <1^d3/[c.1]> <[b.0]/0_d3> <0_d2/0> 0"
    assert mortal.alphabet.leq_word(mortal.config_word(c1), v)
    assert R.decode_under(mortal, v) == {c1, c2}


def test_merge_requires_successors(mortal):
    c = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    with pytest.raises(R.ReductionError):
        R.merge_configs(mortal, c, c)


def test_decode_examples(mortal):
    c = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    assert R.decode_under(mortal, mortal.config_word(c)) == {c}
    bad = mortal.parse("0 <0/0^d6> <1^d3/[c.1]> 0 <0_d2/0> 0")
    assert R.decode_under(mortal, bad) == frozenset()


def test_lemmas_on_short_tapes(mortal):
    configs = lemmas.configs_upto(mortal, 3)
    assert not lemmas.merge_violations(mortal, configs)
    assert not lemmas.domination_violations(mortal, configs)
    assert not lemmas.height_violations(mortal, configs, 4, pad=1)
    rng = random.Random(1)
    words = [w for c in configs for w in lemmas.words_above(mortal, c, rng, 5)]
    assert not lemmas.decode_violations(mortal, words)


def test_dominated_pairs_are_exactly_steps(mortal):
    configs = lemmas.configs_upto(mortal, 4)
    pairs = 0
    for c in configs:
        nxt = R.tm_step(mortal, c)
        if nxt is not None:
            assert lemmas.common_upper_bound(mortal, c, nxt)
            assert R.dominated_by_common(mortal, c, nxt)
            pairs += 1
    assert pairs > 20


# -- the languages -------------------------------------------------------------------

def test_runs_are_in_L_base(sweeper):
    l_base, l_nfa = R.build_L(sweeper)
    for c in R.enumerate_configs(sweeper, 6):
        if c.head_pos != 1 or c.cfg_type != 1:
            continue
        run = R.run_configs(sweeper, c, 3)
        w = R.join_blocks(sweeper, [sweeper.config_word(x) for x in run])
        assert l_base.accepts(w) and l_nfa.accepts(w)


def test_epsilon_not_in_L(mortal):
    l_base, l_nfa = R.build_L(mortal)
    assert not l_base.accepts(()) and not l_nfa.accepts(())


def test_L_is_the_closure(mortal):
    l_base, l_nfa = R.build_L(mortal)
    from foplus.automata import nfa_closure

    assert languages_equal(l_nfa, nfa_closure(l_base))


def test_forbidden_factor_examples(mortal):
    assert not R.forbidden_local_factor(mortal, ())
    assert R.forbidden_local_factor(mortal, mortal.parse("# #"))
    c = cfg(mortal, "0^d7 [d.0] 0_d6")
    assert c.cfg_type == 1
    assert not R.forbidden_local_factor(mortal, mortal.config_word(c))
    with pytest.raises(R.ReductionError):
        R.forbidden_local_factor(mortal, mortal.parse("0 # 0 # 0 # 0"))


def test_set_types_of_merges(mortal):
    c = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    nxt = R.tm_step(mortal, c)
    assert R.set_type(mortal, mortal.config_word(c)) == {2}
    assert R.set_type(mortal, R.merge_configs(mortal, c, nxt)) == {2, 3}


def test_anchor_between_mismatched_pairs(mortal):
    b = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    c = cfg(mortal, "0 0 1^d6 [c.1] 0_d3 0")
    m23 = R.merge_configs(mortal, b, R.tm_step(mortal, b))
    m31 = R.merge_configs(mortal, c, R.tm_step(mortal, c))
    v = R.join_blocks(mortal, [m23, m31, m23])
    report = R.analyze_factors(mortal, v)
    assert report.forbidden is None
    assert report.set_types == [{2, 3}, {3, 1}, {2, 3}]
    assert report.anchors[1] and report.anchor_types[1] == {1}


def test_word_of_anchors_has_no_factors(sweeper):
    c = next(c for c in R.enumerate_configs(sweeper, 7) if c.head_pos == 1 and c.cfg_type == 1)
    run = R.run_configs(sweeper, c, 5)
    u = R.join_blocks(sweeper, [sweeper.config_word(x) for x in run])
    report = R.analyze_factors(sweeper, u)
    assert report.forbidden is None and report.factors == []
    assert all(report.anchors)


def test_duplicator_instance(sweeper):
    c = next(c for c in R.enumerate_configs(sweeper, 8) if c.head_pos == 1 and c.cfg_type == 1)
    u, v = R.build_duplicator_instance(sweeper, c, 4)
    assert R.in_language(sweeper, u) and not R.in_language(sweeper, v)
    assert len(R.split_blocks(sweeper, u)) == 5 and len(R.split_blocks(sweeper, v)) == 4
    report = R.analyze_factors(sweeper, v)
    assert report.forbidden is None and report.first_noncoherent is not None


def test_duplicator_instance_needs_a_long_run(mortal, sweeper):
    c = cfg(mortal, "0 0 1^d3 [b.0] 0_d2 0")
    with pytest.raises(R.ReductionError, match="run too short"):
        R.build_duplicator_instance(mortal, c, 4)
    with pytest.raises(R.ReductionError):
        R.build_duplicator_instance(sweeper, next(R.enumerate_configs(sweeper, 8)), 1)


def test_harness_words_are_non_coherent(sweeper):
    words = lemmas.harness_words(sweeper, (7,))
    checked = 0
    for v in words:
        if R.in_language(sweeper, v):
            continue
        report = R.analyze_factors(sweeper, v)
        if report.forbidden is None:
            assert report.first_noncoherent is not None
            checked += 1
    assert checked > 0


# -- misc -----------------------------------------------------------------------------

def test_powerset_embedding_preserves_order(mortal):
    emb = R.powerset_embedding(mortal)
    A = mortal.alphabet
    for a in A:
        for b in A:
            assert A.leq(a, b) == (emb[a] <= emb[b])


def test_round_bound():
    assert R.spoiler_round_bound(1) == 9
    assert R.spoiler_round_bound(4) == 2 + 8 + 2 + 5
    with pytest.raises(ValueError):
        R.spoiler_round_bound(0)


def test_three_step_instance_survives_one_round(sweeper):
    from foplus.efgame import duplicator_wins

    for c in R.enumerate_configs(sweeper, 6):
        if c.head_pos != 1 or c.cfg_type != 1:
            continue
        u, v = R.build_duplicator_instance(sweeper, c, 3)
        assert R.in_language(sweeper, u) and not R.in_language(sweeper, v)
        assert duplicator_wins(sweeper.alphabet, u, v, 1)


def test_two_step_instance_has_a_forbidden_factor(sweeper):
    c = next(c for c in R.enumerate_configs(sweeper, 6) if c.head_pos == 1 and c.cfg_type == 1)
    u, v = R.build_duplicator_instance(sweeper, c, 2)
    assert R.analyze_factors(sweeper, v).forbidden is not None
