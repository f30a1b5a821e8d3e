# -*- coding: utf-8 -*-
import itertools
import random

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from algebra.formula_parser import (
    AND,
    NOT,
    OR,
    XOR,
    FormulaAst,
    FormulaSyntaxError,
    UnknownVariableError,
    ast_to_poly,
    const,
    equivalence,
    evaluate_ast,
    nary,
    neg,
    parse,
    render,
    var,
    variables,
)
from algebra.poly_core import constant, evaluate, parse_poly, render as render_poly, zero
from core import settings

NAMES = ["a", "b", "c", "d", "e"]

# Semilla fija: el lote de 10.000 fórmulas es siempre el mismo
SOUNDNESS_SEED = 1729


def random_formula(rng: random.Random, depth: int) -> FormulaAst:
    """Fórmula aleatoria sobre NAMES; la profundidad acota el tamaño."""
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.1:
            return const(rng.randint(0, 1))
        return var(rng.choice(NAMES))
    if rng.random() < 0.2:
        return neg(random_formula(rng, depth - 1))
    kind = rng.choice((AND, OR, XOR))
    return nary(kind, *(random_formula(rng, depth - 1) for _ in range(rng.randint(2, 3))))


def assert_sound(ast: FormulaAst):
    """El polinomio y la semántica clásica coinciden en todas las asignaciones."""
    order = variables(ast)
    poly = ast_to_poly(ast)
    for bits in itertools.product((0, 1), repeat=len(order)):
        assert evaluate(poly, bits) == evaluate_ast(ast, dict(zip(order, bits)))


# --- Análisis sintáctico ---

def test_parse_builds_expected_tree():
    """Prueba 1: la precedencia ! > & > ^ > | determina la forma del árbol."""
    ast = parse("!a & b ^ c | d")
    expected = nary(OR, nary(XOR, nary(AND, neg(var("a")), var("b")), var("c")), var("d"))
    assert ast == expected


def test_parse_flattens_chains_of_the_same_operator():
    """Prueba 2: a ^ b ^ c es un único nodo XOR de tres hijos."""
    ast = parse("a ^ b ^ c")
    assert ast.kind == XOR
    assert ast.children == (var("a"), var("b"), var("c"))


def test_parse_respects_parentheses():
    ast = parse("a ^ (b ^ c)")
    assert ast == nary(XOR, var("a"), nary(XOR, var("b"), var("c")))
    assert render(ast) == "a ^ (b ^ c)"


def test_parse_accepts_unicode_aliases_and_constants():
    assert parse("¬a ∧ (b ∨ 0) ⊕ 1") == parse("!a & (b | 0) ^ 1")


def test_parse_double_negation():
    assert parse("!!a") == neg(neg(var("a")))
    assert render(parse("!(a & b)")) == "!(a & b)"


@pytest.mark.parametrize("text, line, column", [
    ("a &", 1, 4),
    ("a b", 1, 3),
    ("(a | b", 1, 7),
    ("a $ b", 1, 3),
    ("a &\n(b", 2, 3),
    (")", 1, 1),
])
def test_syntax_errors_report_position(text, line, column):
    """Prueba 3: los errores indican línea, columna y qué se esperaba."""
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)
    assert info.value.expected


def test_empty_input_is_a_syntax_error():
    with pytest.raises(FormulaSyntaxError):
        parse("   ")


@pytest.mark.parametrize("text", ["!" * 5000 + "a", "(" * 5000 + "a" + ")" * 5000])
def test_deep_nesting_is_a_syntax_error(text):
    """Un anidamiento que agota la pila se informa como error de sintaxis."""
    with pytest.raises(FormulaSyntaxError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (1, 1)


def test_ast_rejects_malformed_nodes():
    with pytest.raises(ValueError):
        FormulaAst(AND, children=(var("a"),))
    with pytest.raises(ValueError):
        FormulaAst(NOT, children=())
    with pytest.raises(ValueError):
        const(2)
    with pytest.raises(ValueError):
        var("1a")


def test_variables_in_first_appearance_order():
    assert variables(parse("c & a | c ^ b")) == ["c", "a", "b"]


# --- Traducción a polinomio ---

def test_ast_to_poly_connective_rules():
    assert render_poly(ast_to_poly(parse("!a"))) == "1 - x1"
    assert render_poly(ast_to_poly(parse("a & b"))) == "x1x2"
    assert render_poly(ast_to_poly(parse("a | b"))) == "x1 + x2 - x1x2"
    assert render_poly(ast_to_poly(parse("a ^ b"))) == "x1 + x2 - 2*x1x2"


def test_ast_to_poly_xor_chain_of_three():
    assert ast_to_poly(parse("a ^ b ^ c")) == \
        parse_poly("x1 + x2 + x3 - 2*x1x2 - 2*x1x3 - 2*x2x3 + 4*x1x2x3", 3)


def test_ast_to_poly_tautology_and_contradiction():
    assert ast_to_poly(parse("a & !a")) == zero(1)
    assert ast_to_poly(parse("a | !a")) == constant(1, 1)


def test_ast_to_poly_with_explicit_order():
    poly = ast_to_poly(parse("b & !a"), ["a", "b", "c"])
    assert render_poly(poly) == "x2 - x1x2"
    assert poly.nvars == 3


def test_ast_to_poly_order_errors():
    with pytest.raises(UnknownVariableError):
        ast_to_poly(parse("a & b"), ["a"])
    with pytest.raises(ValueError):
        ast_to_poly(parse("a"), ["a", "a"])


def test_evaluate_ast_requires_every_variable():
    with pytest.raises(UnknownVariableError):
        evaluate_ast(parse("a | b"), {"a": 0})


# --- Equivalencia ---

def test_equivalence_of_xor_and_its_expansion():
    result = equivalence(parse("a ^ b"), parse("(a | b) & !(a & b)"))
    assert result.equivalent is True
    assert result.variable_order == ("a", "b")
    assert result.witness is None


def test_non_equivalence_gives_witness():
    """a | b y a ^ b solo difieren en a = b = 1."""
    result = equivalence(parse("a | b"), parse("a ^ b"))
    assert result.equivalent is False
    assert result.witness == {"a": 1, "b": 1}


def test_witness_beyond_symbolic_cap(monkeypatch):
    """Con más variables que el tope simbólico el testigo sigue siendo la primera fila distinta."""
    monkeypatch.setattr(settings, "MAX_SYMBOLIC_VARS", 8)
    names = [f"v{i:02d}" for i in range(1, 13)]
    f = parse(" & ".join(names))
    g = parse(" & ".join(names[:-1]) + f" & !{names[-1]}")
    result = equivalence(f, g)
    assert result.equivalent is False
    assert result.witness == {**{name: 1 for name in names[:-1]}, names[-1]: 0}
    assert evaluate_ast(f, result.witness) != evaluate_ast(g, result.witness)


def test_equivalence_over_union_of_variables():
    result = equivalence(parse("a & (b | !b)"), parse("a"))
    assert result.equivalent is True
    assert result.variable_order == ("a", "b")


# --- Solidez ---

def test_soundness_on_ten_thousand_random_formulas():
    """Prueba 4: 10.000 fórmulas aleatorias; polinomio y semántica clásica coinciden."""
    rng = random.Random(SOUNDNESS_SEED)
    for _ in range(10_000):
        ast = random_formula(rng, depth=3)
        assert parse(render(ast)) == ast
        assert_sound(ast)


formula_strategy = st.recursive(
    st.one_of(st.sampled_from(NAMES).map(var), st.sampled_from((0, 1)).map(const)),
    lambda children: st.one_of(
        children.map(neg),
        st.tuples(st.sampled_from((AND, OR, XOR)), st.lists(children, min_size=2, max_size=3))
        .map(lambda pair: nary(pair[0], *pair[1])),
    ),
    max_leaves=12,
)


@hyp_settings(max_examples=200, deadline=None)
@given(formula_strategy)
def test_render_parse_round_trip(ast):
    assert parse(render(ast)) == ast


@hyp_settings(max_examples=200, deadline=None)
@given(formula_strategy)
def test_polynomial_matches_classical_semantics(ast):
    assert_sound(ast)


@hyp_settings(max_examples=100, deadline=None)
@given(formula_strategy)
def test_translated_formulas_are_indicators(ast):
    """Toda fórmula se traduce a un polinomio indicador (valores en {0, 1})."""
    poly = ast_to_poly(ast)
    for bits in itertools.product((0, 1), repeat=poly.nvars):
        assert evaluate(poly, bits) in (0, 1)


@hyp_settings(max_examples=100, deadline=None)
@given(formula_strategy, formula_strategy)
def test_witness_separates_the_formulas(f, g):
    result = equivalence(f, g)
    if not result.equivalent:
        assignment = {name: result.witness[name] for name in result.variable_order}
        assert evaluate_ast(f, assignment) != evaluate_ast(g, assignment)
