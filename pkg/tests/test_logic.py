from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from foplus.alphabet import build_alphabet, format_word, powerset_alphabet
from foplus.logic import (
    FALSE,
    FO,
    TRUE,
    And,
    AtomCl,
    Exists,
    Forall,
    FormulaError,
    Le,
    Lt,
    Not,
    Or,
    defined_language,
    evaluate,
    fo_to_foplus_trivial_order,
    format_formula,
    free_variables,
    is_positive,
    parse_formula,
    quantifier_rank,
    sample_formula,
)

from helpers import ab

ABC = build_alphabet(["a", "b", "c"], [("a", "b")])
FLAT = build_alphabet(["a", "b", "c"])


def test_parse_universal_atom():
    assert parse_formula("A x. a(x)", ABC) == Forall("x", AtomCl("a", "x"))


def test_negation_rejected_in_positive_dialect():
    with pytest.raises(FormulaError):
        parse_formula("E x. !a(x)", ABC)
    assert isinstance(parse_formula("E x. !a(x)", ABC, FO).body, Not)


def test_parse_nested_exists():
    f = parse_formula("E x. E y. x<=y & a(x) & b(y)", ABC)
    assert isinstance(f, Exists) and isinstance(f.body, Exists)
    assert f == parse_formula("E x,y. x<=y & a(x) & b(y)", ABC)
    assert quantifier_rank(f) == 2


def test_parse_errors_carry_a_position():
    with pytest.raises(FormulaError) as err:
        parse_formula("E x. a(x) &", ABC)
    assert err.value.position is not None
    with pytest.raises(FormulaError):
        parse_formula("E x. z(x)", ABC)


def test_precedence():
    f = parse_formula("E x. a(x) | b(x) & c(x)", ABC)
    assert f.body == Or(AtomCl("a", "x"), And(AtomCl("b", "x"), AtomCl("c", "x")))


def test_quantifier_rank():
    assert quantifier_rank(AtomCl("a", "x")) == 0
    assert quantifier_rank(parse_formula("E x. A y. x<=y", ABC)) == 2
    assert quantifier_rank(parse_formula("(E x. a(x)) | (E x. E y. x<y)", ABC)) == 2


def test_evaluate_examples():
    assert evaluate(parse_formula("A x. a(x)", ABC), ABC, ABC.parse_word("ab"))
    assert not evaluate(parse_formula("E x. b(x)", ABC), ABC, ABC.parse_word("aca"))
    assert evaluate(parse_formula("A x. b(x)", ABC), ABC, ())
    assert not evaluate(parse_formula("E x. b(x)", ABC), ABC, ())


def test_evaluate_with_valuation_and_errors():
    f = parse_formula("a(x) & x < y", ABC)
    w = ABC.parse_word("abc")
    assert evaluate(f, ABC, w, {"x": 0, "y": 2})
    assert not evaluate(f, ABC, w, {"x": 2, "y": 0})
    with pytest.raises(FormulaError):
        evaluate(f, ABC, w, {"x": 0})
    with pytest.raises(FormulaError):
        evaluate(f, ABC, w, {"x": 0, "y": 7})


def test_shadowing_inner_binding_wins():
    f = parse_formula("(E x. c(x)) & a(x)", ABC)
    assert evaluate(f, ABC, ABC.parse_word("ac"), {"x": 0})
    assert not evaluate(f, ABC, ABC.parse_word("ca"), {"x": 0})


def test_defined_language_examples():
    A = ab()
    assert [format_word(w) for w in defined_language(parse_formula("E x. b(x)", A), A, 1)] == ["b"]
    P = powerset_alphabet(["a", "b"])
    f = parse_formula("E x,y. x<=y & a(x) & b(y)", P)
    assert [format_word(w) for w in defined_language(f, P, 1)] == ["{a,b}"]
    assert defined_language(parse_formula("A x. x<x", A), A, 2) == [()]
    with pytest.raises(FormulaError):
        defined_language(parse_formula("a(x)", A), A, 2)


def test_translation_examples():
    assert fo_to_foplus_trivial_order(Not(AtomCl("a", "x")), FLAT) == Or(AtomCl("b", "x"), AtomCl("c", "x"))
    assert fo_to_foplus_trivial_order(Not(Le("x", "y")), FLAT) == Lt("y", "x")
    assert fo_to_foplus_trivial_order(Not(Not(AtomCl("a", "x"))), FLAT) == AtomCl("a", "x")
    with pytest.raises(FormulaError):
        fo_to_foplus_trivial_order(Not(AtomCl("a", "x")), ABC)


def test_sampler():
    assert sample_formula(0, ABC, 1) in (TRUE, FALSE)
    f = sample_formula(1, ABC, 7)
    assert isinstance(f, (Exists, Forall)) and quantifier_rank(f) == 1
    assert f == sample_formula(1, ABC, 7)
    distinct = {format_formula(sample_formula(2, ABC, s)) for s in range(20)}
    assert len(distinct) > 10


# -- properties ------------------------------------------------------------------

VARS = ["x", "y"]


def fo_formulas(alphabet, positive):
    atoms = st.one_of(
        st.builds(AtomCl, st.sampled_from([a.name for a in alphabet]), st.sampled_from(VARS)),
        st.builds(Le, st.sampled_from(VARS), st.sampled_from(VARS)),
        st.builds(Lt, st.sampled_from(VARS), st.sampled_from(VARS)),
    )

    def grow(inner):
        options = [
            st.builds(And, inner, inner),
            st.builds(Or, inner, inner),
            st.builds(Exists, st.sampled_from(VARS), inner),
            st.builds(Forall, st.sampled_from(VARS), inner),
        ]
        if not positive:
            options.append(st.builds(Not, inner))
        return st.one_of(options)

    body = st.recursive(atoms, grow, max_leaves=6)
    return st.builds(lambda f: Forall("x", Exists("y", f)) if free_variables(f) else f, body)


@settings(max_examples=80, deadline=None)
@given(fo_formulas(FLAT, positive=False))
def test_translation_preserves_language_and_rank(f):
    g = fo_to_foplus_trivial_order(f, FLAT)
    assert is_positive(g)
    assert quantifier_rank(g) == quantifier_rank(f)
    assert defined_language(g, FLAT, 3) == defined_language(f, FLAT, 3)


@settings(max_examples=80, deadline=None)
@given(fo_formulas(ABC, positive=True))
def test_round_trip(f):
    assert parse_formula(format_formula(f), ABC) == f


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 3))
def test_sampled_round_trip(seed, rank):
    f = sample_formula(rank, ABC, seed)
    assert quantifier_rank(f) <= rank and not free_variables(f)
    assert parse_formula(format_formula(f), ABC) == f


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 3))
def test_positive_sentences_are_monotone(seed, rank):
    f = sample_formula(rank, ABC, seed)
    for n in range(4):
        for u in product(ABC.letters, repeat=n):
            if not evaluate(f, ABC, u):
                continue
            for v in product(*[sorted(ABC.up(x), key=lambda l: l.name) for x in u]):
                assert evaluate(f, ABC, v)
