# -*- coding: utf-8 -*-
"""
Analizador de fórmulas proposicionales y su traducción a polinomios
multilineales (forma de Zhegalkin con coeficientes enteros).

Gramática (espacios no significativos):

    formula  := or_expr
    or_expr  := xor_expr { "|" xor_expr }
    xor_expr := and_expr { "^" and_expr }
    and_expr := unary { "&" unary }
    unary    := "!" unary | atom
    atom     := ident | "0" | "1" | "(" formula ")"

Precedencia: ! > & > ^ > |. Se aceptan los alias Unicode ¬ ∧ ∨ ⊕.
"""
import logging
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from algebra.poly_core import (
    MultilinearPoly,
    add,
    constant,
    multiply,
    scale,
    variable,
    xor_op,
)

logger = logging.getLogger("FormulaParser")

VARIABLE = "variable"
CONSTANT = "constant"
NOT = "not"
AND = "and"
OR = "or"
XOR = "xor"

NARY_KINDS = (AND, OR, XOR)

# Símbolo ASCII y precedencia de cada conectivo binario
OPERATOR_SYMBOLS = {OR: "|", XOR: "^", AND: "&"}
PRECEDENCE = {OR: 1, XOR: 2, AND: 3}

UNICODE_ALIASES = {"¬": "!", "∧": "&", "∨": "|", "⊕": "^"}

IDENT_PATTERN = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


# --- Errores ---

class FormulaSyntaxError(ValueError):
    """Error de sintaxis con posición (línea y columna, 1-based)."""

    def __init__(self, message: str, line: int, column: int, expected: str):
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(f"{message} en línea {line}, columna {column} (se esperaba {expected})")


class UnknownVariableError(ValueError):
    """La fórmula usa una variable que no está en el orden indicado."""


# --- AST ---

@dataclass(frozen=True)
class FormulaAst:
    kind: str
    name: str | None = None
    value: int | None = None
    children: tuple["FormulaAst", ...] = ()

    def __post_init__(self):
        if self.kind == VARIABLE and not (self.name and IDENT_PATTERN.fullmatch(self.name)):
            raise ValueError(f"Nombre de variable inválido: {self.name!r}")
        if self.kind == CONSTANT and self.value not in (0, 1):
            raise ValueError(f"Constante inválida: {self.value!r}")
        if self.kind == NOT and len(self.children) != 1:
            raise ValueError("La negación tiene exactamente un hijo")
        if self.kind in NARY_KINDS and len(self.children) < 2:
            raise ValueError(f"El nodo {self.kind} necesita al menos dos hijos")
        if self.kind not in (VARIABLE, CONSTANT, NOT) + NARY_KINDS:
            raise ValueError(f"Tipo de nodo desconocido: {self.kind!r}")

    def __str__(self) -> str:
        return render(self)


def var(name: str) -> FormulaAst:
    return FormulaAst(VARIABLE, name=name)


def const(value: int) -> FormulaAst:
    return FormulaAst(CONSTANT, value=value)


def neg(child: FormulaAst) -> FormulaAst:
    return FormulaAst(NOT, children=(child,))


def nary(kind: str, *children: FormulaAst) -> FormulaAst:
    return FormulaAst(kind, children=tuple(children))


# --- Analizador léxico ---

@dataclass(frozen=True)
class _Token:
    kind: str   # "ident", "const", "op", "lparen", "rparen", "end"
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        char = UNICODE_ALIASES.get(text[i], text[i])
        if char == "\n":
            line, column, i = line + 1, 1, i + 1
            continue
        if char.isspace():
            column, i = column + 1, i + 1
            continue
        match = IDENT_PATTERN.match(text, i)
        if match:
            tokens.append(_Token("ident", match.group(), line, column))
            column += len(match.group())
            i = match.end()
            continue
        if char in "01":
            tokens.append(_Token("const", char, line, column))
        elif char in "!&|^":
            tokens.append(_Token("op", char, line, column))
        elif char == "(":
            tokens.append(_Token("lparen", char, line, column))
        elif char == ")":
            tokens.append(_Token("rparen", char, line, column))
        else:
            raise FormulaSyntaxError(f"Carácter inesperado {text[i]!r}", line, column,
                                     "variable, constante, operador o paréntesis")
        column, i = column + 1, i + 1
    tokens.append(_Token("end", "", line, column))
    return tokens


# --- Analizador descendente recursivo ---

class _Parser:
    # Cada nivel: (tipo de nodo, símbolo, siguiente nivel)
    _LEVELS = ((OR, "|"), (XOR, "^"), (AND, "&"))

    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _error(self, expected: str):
        token = self.current
        found = "fin de la entrada" if token.kind == "end" else repr(token.text)
        raise FormulaSyntaxError(f"Encontrado {found}", token.line, token.column, expected)

    def parse_formula(self) -> FormulaAst:
        node = self._parse_level(0)
        if self.current.kind != "end":
            self._error("operador binario o fin de la entrada")
        return node

    def _parse_level(self, level: int) -> FormulaAst:
        if level == len(self._LEVELS):
            return self._parse_unary()
        kind, symbol = self._LEVELS[level]
        operands = [self._parse_level(level + 1)]
        while self.current.kind == "op" and self.current.text == symbol:
            self._advance()
            operands.append(self._parse_level(level + 1))
        if len(operands) == 1:
            return operands[0]
        return FormulaAst(kind, children=tuple(operands))

    def _parse_unary(self) -> FormulaAst:
        if self.current.kind == "op" and self.current.text == "!":
            self._advance()
            return neg(self._parse_unary())
        return self._parse_atom()

    def _parse_atom(self) -> FormulaAst:
        token = self.current
        if token.kind == "ident":
            self._advance()
            return var(token.text)
        if token.kind == "const":
            self._advance()
            return const(int(token.text))
        if token.kind == "lparen":
            self._advance()
            node = self._parse_level(0)
            if self.current.kind != "rparen":
                self._error("')'")
            self._advance()
            return node
        self._error("variable, constante, '!' o '('")


def parse(text: str) -> FormulaAst:
    """Convierte el texto en un AST; las cadenas de un mismo operador forman un nodo n-ario."""
    if not text or not text.strip():
        raise FormulaSyntaxError("Entrada vacía", 1, 1, "una fórmula")
    try:
        ast = _Parser(_tokenize(text)).parse_formula()
    except RecursionError:
        raise FormulaSyntaxError("Anidamiento demasiado profundo", 1, 1, "una fórmula menos anidada") from None
    logger.debug(f"Fórmula analizada: {render(ast)}")
    return ast


# --- Impresión ---

def render(ast: FormulaAst) -> str:
    """Impresión determinista; parse(render(ast)) reproduce el mismo AST."""
    if ast.kind == VARIABLE:
        return ast.name
    if ast.kind == CONSTANT:
        return str(ast.value)
    if ast.kind == NOT:
        child = ast.children[0]
        inner = render(child)
        return f"!{inner}" if child.kind in (VARIABLE, CONSTANT, NOT) else f"!({inner})"
    parts = []
    for child in ast.children:
        inner = render(child)
        # Un hijo binario de precedencia menor o igual necesita paréntesis
        if child.kind in NARY_KINDS and PRECEDENCE[child.kind] <= PRECEDENCE[ast.kind]:
            inner = f"({inner})"
        parts.append(inner)
    return f" {OPERATOR_SYMBOLS[ast.kind]} ".join(parts)


# --- Semántica ---

def variables(ast: FormulaAst) -> list[str]:
    """Variables en orden de primera aparición."""
    seen: dict[str, None] = {}

    def walk(node: FormulaAst):
        if node.kind == VARIABLE:
            seen.setdefault(node.name, None)
        for child in node.children:
            walk(child)

    walk(ast)
    return list(seen)


def evaluate_ast(ast: FormulaAst, assignment: Mapping[str, int]) -> int:
    """Semántica booleana clásica sobre {0, 1}."""
    if ast.kind == VARIABLE:
        if ast.name not in assignment:
            raise UnknownVariableError(f"Variable sin valor: {ast.name}")
        return int(bool(assignment[ast.name]))
    if ast.kind == CONSTANT:
        return ast.value
    values = [evaluate_ast(child, assignment) for child in ast.children]
    if ast.kind == NOT:
        return 1 - values[0]
    if ast.kind == AND:
        return int(all(values))
    if ast.kind == OR:
        return int(any(values))
    return sum(values) % 2


def _check_order(order: Sequence[str]) -> dict[str, int]:
    positions = {}
    for i, name in enumerate(order, start=1):
        if name in positions:
            raise ValueError(f"Variable duplicada en el orden: {name}")
        positions[name] = i
    return positions


def ast_to_poly(ast: FormulaAst, variable_order: Sequence[str] | None = None) -> MultilinearPoly:
    """
    Reglas: var -> x_i, ¬p -> 1-p, p∧q -> pq, p∨q -> p+q-pq, p⊕q -> p+q-2pq.
    Sin orden explícito se usa el de primera aparición.
    """
    order = list(variable_order) if variable_order is not None else variables(ast)
    positions = _check_order(order)
    nvars = len(order)
    for name in variables(ast):
        if name not in positions:
            raise UnknownVariableError(f"La variable {name} no aparece en el orden {order}")

    def lower(node: FormulaAst) -> MultilinearPoly:
        if node.kind == VARIABLE:
            return variable(positions[node.name], nvars)
        if node.kind == CONSTANT:
            return constant(node.value, nvars)
        children = [lower(child) for child in node.children]
        if node.kind == NOT:
            return add(constant(1, nvars), scale(children[0], -1))
        result = children[0]
        for child in children[1:]:
            if node.kind == AND:
                result = multiply(result, child)
            elif node.kind == OR:
                result = add(add(result, child), scale(multiply(result, child), -1))
            else:
                result = xor_op(result, child)
        return result

    return lower(ast)


@dataclass(frozen=True)
class EquivalenceResult:
    equivalent: bool
    variable_order: tuple[str, ...]
    witness: dict[str, int] | None = None


def equivalence(f: FormulaAst, g: FormulaAst) -> EquivalenceResult:
    """Compara los polinomios de ambas fórmulas sobre el orden unión (alfabético)."""
    order = tuple(sorted(set(variables(f)) | set(variables(g))))
    pf = ast_to_poly(f, order)
    pg = ast_to_poly(g, order)
    if pf == pg:
        return EquivalenceResult(True, order)
    difference = add(pf, scale(pg, -1))
    # Primera fila distinta: en el menor monomio la diferencia vale su coeficiente (no nulo)
    point = min(difference.terms)
    witness = {name: point >> i & 1 for i, name in enumerate(order)}
    logger.info(f"Fórmulas no equivalentes; testigo {witness}")
    return EquivalenceResult(False, order, witness)
