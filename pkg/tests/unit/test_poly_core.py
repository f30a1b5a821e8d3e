# -*- coding: utf-8 -*-
import itertools

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from algebra.poly_core import (
    IndicatorError,
    MultilinearPoly,
    SymbolicCapError,
    TruthTable,
    VariableCountError,
    _multiply_distributive,
    add,
    coefficient,
    constant,
    degree,
    evaluate,
    from_truth_table,
    homogeneous_part,
    is_indicator,
    mod2,
    monomial,
    multiply,
    parse_poly,
    render,
    restrict,
    scale,
    to_truth_table,
    truncate_degree,
    variable,
    xor_op,
    zero,
)
from algebra.constructs import upsilon, xor_chain

# --- Generadores de polinomios aleatorios (hypothesis) ---

@st.composite
def polys(draw, min_vars=0, max_vars=6, max_coef=20):
    """Polinomio canónico arbitrario con nvars en [min_vars, max_vars]."""
    nvars = draw(st.integers(min_vars, max_vars))
    terms = draw(st.dictionaries(st.integers(0, (1 << nvars) - 1),
                                 st.integers(-max_coef, max_coef), max_size=12))
    return MultilinearPoly(nvars, terms)


@st.composite
def poly_pairs(draw, max_vars=6):
    p = draw(polys(max_vars=max_vars))
    terms = draw(st.dictionaries(st.integers(0, (1 << p.nvars) - 1), st.integers(-20, 20), max_size=12))
    return p, MultilinearPoly(p.nvars, terms)


@st.composite
def indicators(draw, max_vars=5):
    """Polinomio indicador construido desde una tabla 0/1 aleatoria."""
    nvars = draw(st.integers(1, max_vars))
    values = draw(st.lists(st.integers(0, 1), min_size=1 << nvars, max_size=1 << nvars))
    return from_truth_table(TruthTable(nvars, tuple(values)))


def all_assignments(nvars):
    return list(itertools.product((0, 1), repeat=nvars))


# --- Ejemplos de las operaciones ---

def test_add_disjoint_supports():
    """Prueba 1: x1 + x2 no mezcla términos."""
    assert render(add(variable(1, 2), variable(2, 2))) == "x1 + x2"


def test_add_rebuilds_pairwise_interference_form():
    """Prueba 2: (x1 - 2x1x2) + x2 es la forma de Zhegalkin de la disyunción exclusiva."""
    p = add(variable(1, 2), monomial([1, 2], 2, -2))
    assert render(add(p, variable(2, 2))) == "x1 + x2 - 2*x1x2"


def test_add_inverse_gives_zero_polynomial():
    p = parse_poly("3 + x1 - 5*x1x3", 3)
    result = add(p, scale(p, -1))
    assert result == zero(3)
    assert len(result) == 0
    assert render(result) == "0"


def test_add_rejects_variable_count_mismatch():
    with pytest.raises(VariableCountError):
        add(variable(1, 2), variable(1, 3))


def test_scale_examples():
    assert render(scale(monomial([1, 2], 2), -2)) == "-2*x1x2"
    assert render(scale(monomial([1, 2, 3], 3), 4)) == "4*x1x2x3"
    p = parse_poly("1 - x1 + 7*x2x3", 3)
    assert scale(p, 1) == p
    assert scale(p, 0) == zero(3)


def test_multiply_is_idempotent_on_variables():
    """Prueba: x^2 = x."""
    x1 = variable(1, 1)
    assert multiply(x1, x1) == x1


def test_multiply_xor_by_delta_factor_matches_oracle():
    """El producto (x1 + x2 - 2x1x2)(1 - x1x2x3) coincide punto a punto con el producto de valores."""
    p = parse_poly("x1 + x2 - 2*x1x2", 3)
    q = parse_poly("1 - x1x2x3", 3)
    product = multiply(p, q)
    for a in all_assignments(3):
        assert evaluate(product, a) == evaluate(p, a) * evaluate(q, a)
    assert evaluate(product, (1, 1, 1)) == 0


def test_multiply_by_one_is_identity():
    p = parse_poly("2 - x1 + 3*x1x2", 2)
    assert multiply(p, constant(1, 2)) == p


def test_xor_op_examples():
    assert render(xor_op(variable(1, 2), variable(2, 2))) == "x1 + x2 - 2*x1x2"
    assert render(xor_op(constant(1, 3), monomial([1, 2, 3], 3))) == "1 - x1x2x3"


def test_xor_op_validation_rejects_non_indicator():
    """Con validate=True, 2*x1 no es indicador."""
    with pytest.raises(IndicatorError):
        xor_op(scale(variable(1, 2), 2), variable(2, 2), validate=True)
    # Sin validación se calcula igualmente
    xor_op(scale(variable(1, 2), 2), variable(2, 2))


def test_evaluate_examples_and_errors():
    xor2 = parse_poly("x1 + x2 - 2*x1x2", 2)
    assert evaluate(xor2, (1, 1)) == 0
    assert evaluate(constant(1, 4), (0, 1, 0, 1)) == 1
    assert evaluate(xor_chain(3), (1, 1, 1)) == 1
    with pytest.raises(ValueError):
        evaluate(xor2, (1,))
    with pytest.raises(ValueError):
        evaluate(xor2, (1, 2))


def test_to_truth_table_examples():
    assert to_truth_table(variable(1, 1)).values == (0, 1)
    assert to_truth_table(xor_op(variable(1, 2), variable(2, 2))).values == (0, 1, 1, 0)
    delta3 = parse_poly("1 - x1x2x3", 3)
    assert to_truth_table(delta3).values == (1, 1, 1, 1, 1, 1, 1, 0)


def test_to_truth_table_respects_symbolic_cap():
    with pytest.raises(SymbolicCapError):
        to_truth_table(MultilinearPoly(17, {1: 1}))
    with pytest.raises(SymbolicCapError):
        to_truth_table(MultilinearPoly(5, {1: 1}), cap=4)


def test_from_truth_table_examples():
    assert render(from_truth_table([0, 1, 1, 0])) == "x1 + x2 - 2*x1x2"
    weight_one = [int(bin(m).count("1") == 1) for m in range(8)]
    assert render(from_truth_table(weight_one)) == \
        "x1 + x2 + x3 - 2*x1x2 - 2*x1x3 - 2*x2x3 + 3*x1x2x3"
    assert from_truth_table([0] * 16) == zero(4)


def test_from_truth_table_rejects_bad_length():
    with pytest.raises(ValueError):
        from_truth_table([0, 1, 1])
    with pytest.raises(ValueError):
        TruthTable(2, (0, 1, 1))


def test_non_integral_coefficients_are_rejected():
    """Un coeficiente real no entero nunca se trunca en silencio a 0."""
    with pytest.raises(ValueError):
        MultilinearPoly(1, {1: 0.4})
    with pytest.raises(ValueError):
        scale(variable(1, 1), 0.5)
    with pytest.raises(ValueError):
        from_truth_table([0, 1.7])
    with pytest.raises(ValueError):
        TruthTable(1, (0, "1"))


def test_integral_reals_are_canonical():
    assert MultilinearPoly(1, {0: 0.0, 1: 2.0}) == scale(variable(1, 1), 2)
    assert MultilinearPoly(1, {1: 0.0}) == zero(1)
    assert MultilinearPoly(2, {3: True}).terms == {3: 1}


def test_truncate_degree_examples():
    assert render(truncate_degree(xor_chain(3), 2)) == "x1 + x2 + x3 - 2*x1x2 - 2*x1x3 - 2*x2x3"
    p = xor_chain(4)
    assert truncate_degree(p, 4) == p
    assert truncate_degree(xor_chain(5), 2) == upsilon(5)


def test_restrict_blocks_variables():
    """Bloquear la rendija A hace a = 0 y elimina abc."""
    p = xor_chain(3)
    assert render(restrict(p, [2, 3])) == "x2 + x3 - 2*x2x3"
    assert restrict(p, [1, 2, 3]) == p


def test_mod2_gives_anf_of_parity():
    assert render(mod2(xor_chain(3))) == "x1 + x2 + x3"


def test_render_parse_round_trip_with_constant_and_negative_lead():
    text = "-3 + x2 - x1x3 + 12*x1x2x3"
    assert render(parse_poly(text, 3)) == text


def test_operator_sugar():
    x1, x2 = variable(1, 2), variable(2, 2)
    assert (x1 ^ x2) == x1 + x2 - 2 * (x1 * x2)
    assert sum([x1, x2]) == add(x1, x2)
    assert -x1 == scale(x1, -1)


# --- Propiedades ---

@hyp_settings(max_examples=150, deadline=None)
@given(polys(max_vars=8))
def test_truth_table_round_trip(p):
    """from_truth_table(to_truth_table(p)) = p."""
    assert from_truth_table(to_truth_table(p)) == p


def test_truth_table_round_trip_exhaustive_small():
    """Todos los polinomios con coeficientes en {-1, 0, 1} sobre dos variables."""
    for coefs in itertools.product((-1, 0, 1), repeat=4):
        p = MultilinearPoly(2, dict(enumerate(coefs)))
        assert from_truth_table(to_truth_table(p)) == p


def test_truth_table_round_trip_at_twelve_variables():
    p = MultilinearPoly(12, {0: 5, 1: -1, 0b101010101010: 7, (1 << 12) - 1: -3})
    assert from_truth_table(to_truth_table(p)) == p


@hyp_settings(max_examples=150, deadline=None)
@given(poly_pairs(), st.integers(-5, 5))
def test_evaluation_homomorphism(pair, k):
    p, q = pair
    s, prod, scaled = add(p, q), multiply(p, q), scale(p, k)
    for a in all_assignments(p.nvars):
        assert evaluate(s, a) == evaluate(p, a) + evaluate(q, a)
        assert evaluate(prod, a) == evaluate(p, a) * evaluate(q, a)
        assert evaluate(scaled, a) == k * evaluate(p, a)


@hyp_settings(max_examples=100, deadline=None)
@given(poly_pairs(max_vars=6))
def test_dense_and_distributive_products_agree(pair):
    p, q = pair
    assert multiply(p, q) == _multiply_distributive(p, q)


@hyp_settings(max_examples=100, deadline=None)
@given(indicators())
def test_indicator_idempotency(p):
    assert multiply(p, p) == p


@hyp_settings(max_examples=100, deadline=None)
@given(st.data())
def test_xor_table_is_pointwise_inequality(data):
    p = data.draw(indicators())
    values = data.draw(st.lists(st.integers(0, 1), min_size=1 << p.nvars, max_size=1 << p.nvars))
    q = from_truth_table(TruthTable(p.nvars, tuple(values)))
    table = to_truth_table(xor_op(p, q, validate=True))
    expected = tuple(int(a != b) for a, b in zip(to_truth_table(p).values, to_truth_table(q).values))
    assert table.values == expected


@hyp_settings(max_examples=100, deadline=None)
@given(polys(min_vars=1, max_vars=6))
def test_canonical_form_uniqueness(p):
    """Igual tabla de verdad implica igualdad estructural (y de texto)."""
    rebuilt = from_truth_table(list(to_truth_table(p).values))
    assert rebuilt == p
    assert render(rebuilt) == render(p)
    assert parse_poly(render(p), p.nvars) == p


def test_coefficient_degree_and_homogeneous_part():
    p = xor_chain(4)
    assert coefficient(p, [2, 4]) == -2
    assert coefficient(p, []) == 0
    assert degree(p) == 4
    assert degree(zero(3)) == -1
    assert degree(constant(5, 3)) == 0
    assert render(homogeneous_part(p, 3)) == "4*x1x2x3 + 4*x1x2x4 + 4*x1x3x4 + 4*x2x3x4"


def test_is_indicator():
    assert is_indicator(xor_chain(3))
    assert not is_indicator(upsilon(3))  # Υ_3(1,1,1) = 3 - 6 = -3
    assert evaluate(upsilon(3), (1, 1, 1)) == -3


def test_parse_poly_rejects_malformed_text():
    for bad in ("", "x1 +", "2x1", "x0", "x1 * x2"):
        with pytest.raises(ValueError):
            parse_poly(bad, 2)
