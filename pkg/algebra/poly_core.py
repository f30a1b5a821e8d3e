# -*- coding: utf-8 -*-
"""
Álgebra exacta de polinomios multilineales con coeficientes enteros.

Las variables x_1 ... x_N son idempotentes (x_i^2 = x_i), así que cada monomio
es un conjunto de variables. Se codifica como patrón de bits: el bit i-1
indica la presencia de x_i. Las tablas de verdad usan la misma convención
de índices: la entrada m es la evaluación en la asignación cuyos bits dan x_i.
"""
import logging
import numbers
import operator
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from core import settings

logger = logging.getLogger("PolyCore")


# --- Errores ---

class VariableCountError(ValueError):
    """Los operandos declaran un número de variables distinto."""


class SymbolicCapError(ValueError):
    """N fuera del rango permitido por la capa simbólica."""


class IndicatorError(ValueError):
    """Se esperaba un polinomio indicador (valores 0/1)."""


# --- Tipos ---

def _as_integer(value) -> int:
    """Coeficientes y valores son enteros; un real sólo vale si es entero exacto."""
    try:
        return int(operator.index(value))
    except TypeError:
        pass
    if isinstance(value, numbers.Real) and float(value).is_integer():
        return int(value)
    raise ValueError(f"Se esperaba un entero, recibido {value!r}")


class MultilinearPoly:
    """
    Polinomio multilineal en forma canónica: {monomio (bitmask): coeficiente != 0}.
    Inmutable; dos polinomios son iguales sii sus términos y nvars coinciden.
    """
    __slots__ = ("_nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[int, int] | None = None):
        if nvars < 0:
            raise ValueError(f"nvars debe ser >= 0, recibido {nvars}")
        canonical = {}
        limit = 1 << nvars
        for mask, coef in (terms or {}).items():
            if mask < 0 or mask >= limit:
                raise ValueError(f"Monomio {mask:b} usa variables fuera de 1..{nvars}")
            coef = _as_integer(coef)
            if coef:
                canonical[mask] = coef
        self._nvars = nvars
        self._terms = canonical
        self._hash = None

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[int, int]:
        # Copia: la instancia no se puede mutar desde fuera
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultilinearPoly):
            return NotImplemented
        return self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"MultilinearPoly(nvars={self._nvars}, '{render(self)}')"

    def __str__(self) -> str:
        return render(self)

    # Azúcar sintáctico sobre las operaciones del módulo
    def __add__(self, other):
        return add(self, _coerce(other, self._nvars))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, scale(_coerce(other, self._nvars), -1))

    def __rsub__(self, other):
        return add(_coerce(other, self._nvars), scale(self, -1))

    def __neg__(self):
        return scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        return multiply(self, other)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __xor__(self, other):
        return xor_op(self, _coerce(other, self._nvars))


@dataclass(frozen=True)
class TruthTable:
    """Valuación completa: values[m] es el valor en la asignación de bits m."""
    nvars: int
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(_as_integer(v) for v in self.values))
        if len(self.values) != 1 << self.nvars:
            raise ValueError(
                f"La tabla de {self.nvars} variables necesita {1 << self.nvars} entradas, tiene {len(self.values)}"
            )

    @classmethod
    def from_values(cls, values: Sequence[int]) -> "TruthTable":
        """Infiere nvars a partir de la longitud (debe ser potencia de dos)."""
        size = len(values)
        if size == 0 or size & (size - 1):
            raise ValueError(f"La longitud de la tabla ({size}) no es potencia de dos")
        return cls(size.bit_length() - 1, tuple(values))

    def is_indicator(self) -> bool:
        return all(v in (0, 1) for v in self.values)

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    def __len__(self) -> int:
        return len(self.values)


# --- Constructores ---

def zero(nvars: int) -> MultilinearPoly:
    return MultilinearPoly(nvars)


def constant(value: int, nvars: int) -> MultilinearPoly:
    return MultilinearPoly(nvars, {0: value})


def variable(index: int, nvars: int) -> MultilinearPoly:
    """x_index (índice 1-based)."""
    if not 1 <= index <= nvars:
        raise ValueError(f"Variable x{index} fuera de 1..{nvars}")
    return MultilinearPoly(nvars, {1 << (index - 1): 1})


def monomial(indices: Iterable[int], nvars: int, coef: int = 1) -> MultilinearPoly:
    return MultilinearPoly(nvars, {indices_to_mask(indices, nvars): coef})


def indices_to_mask(indices: Iterable[int], nvars: int) -> int:
    mask = 0
    for i in indices:
        if not 1 <= i <= nvars:
            raise ValueError(f"Variable x{i} fuera de 1..{nvars}")
        mask |= 1 << (i - 1)
    return mask


def mask_to_indices(mask: int) -> tuple[int, ...]:
    return tuple(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)


def _coerce(value, nvars: int) -> MultilinearPoly:
    if isinstance(value, MultilinearPoly):
        return value
    if isinstance(value, int):
        return constant(value, nvars)
    raise TypeError(f"No se puede operar MultilinearPoly con {type(value).__name__}")


def _check_same_nvars(p: MultilinearPoly, q: MultilinearPoly):
    if p.nvars != q.nvars:
        raise VariableCountError(f"nvars distinto: {p.nvars} frente a {q.nvars}")


def check_cap(n: int, minimum: int = 1, cap: int | None = None) -> int:
    """Valida minimum <= n <= cap (por defecto settings.MAX_SYMBOLIC_VARS)."""
    cap = settings.MAX_SYMBOLIC_VARS if cap is None else cap
    if not isinstance(n, int) or not minimum <= n <= cap:
        raise SymbolicCapError(f"n={n} fuera del rango {minimum}..{cap}")
    return n


# --- Operaciones ---

def add(p: MultilinearPoly, q: MultilinearPoly) -> MultilinearPoly:
    _check_same_nvars(p, q)
    terms = p.terms
    for mask, coef in q.items():
        terms[mask] = terms.get(mask, 0) + coef
    return MultilinearPoly(p.nvars, terms)


def scale(p: MultilinearPoly, k: int) -> MultilinearPoly:
    if k == 0:
        return zero(p.nvars)
    return MultilinearPoly(p.nvars, {mask: coef * k for mask, coef in p.items()})


def multiply(p: MultilinearPoly, q: MultilinearPoly) -> MultilinearPoly:
    """Producto distributivo; x_i^2 = x_i convierte el producto de monomios en unión."""
    _check_same_nvars(p, q)
    if p.nvars <= settings.MAX_SYMBOLIC_VARS and len(p) * len(q) > (p.nvars + 1) << p.nvars:
        return _multiply_dense(p, q)
    return _multiply_distributive(p, q)


def _multiply_dense(p: MultilinearPoly, q: MultilinearPoly) -> MultilinearPoly:
    # Producto de polinomios densos: mismo resultado en O(N 2^N) vía tablas de valores
    logger.debug(f"Producto denso: {len(p)}x{len(q)} términos, nvars={p.nvars}")
    left = to_truth_table(p).values
    right = to_truth_table(q).values
    return from_truth_table(TruthTable(p.nvars, tuple(a * b for a, b in zip(left, right))))


def _multiply_distributive(p: MultilinearPoly, q: MultilinearPoly) -> MultilinearPoly:
    if len(p) < len(q):
        p, q = q, p
    terms: dict[int, int] = {}
    q_items = list(q.items())
    for m1, c1 in p.items():
        for m2, c2 in q_items:
            key = m1 | m2
            terms[key] = terms.get(key, 0) + c1 * c2
    return MultilinearPoly(p.nvars, terms)


def xor_op(p: MultilinearPoly, q: MultilinearPoly, validate: bool = False) -> MultilinearPoly:
    """p ⊕ q = p + q - 2pq. Con validate=True comprueba que ambos son indicadores."""
    _check_same_nvars(p, q)
    if validate:
        for name, operand in (("p", p), ("q", q)):
            if not is_indicator(operand):
                raise IndicatorError(f"El operando {name} de xor_op no es indicador: {render(operand)}")
    return add(add(p, q), scale(multiply(p, q), -2))


def evaluate(p: MultilinearPoly, assignment: Sequence[int]) -> int:
    if len(assignment) != p.nvars:
        raise ValueError(f"La asignación tiene {len(assignment)} valores, se esperaban {p.nvars}")
    point = 0
    for i, value in enumerate(assignment):
        if value not in (0, 1):
            raise ValueError(f"Valor no binario en la posición {i + 1}: {value!r}")
        if value:
            point |= 1 << i
    return evaluate_mask(p, point)


def evaluate_mask(p: MultilinearPoly, point: int) -> int:
    """Evalúa en la asignación codificada como bitmask."""
    return sum(coef for mask, coef in p.items() if mask & point == mask)


def to_truth_table(p: MultilinearPoly, cap: int | None = None) -> TruthTable:
    """Transformada zeta sobre el retículo de subconjuntos: O(N 2^N)."""
    check_cap(p.nvars, minimum=0, cap=cap)
    values = [0] * (1 << p.nvars)
    for mask, coef in p.items():
        values[mask] = coef
    for bit in range(p.nvars):
        step = 1 << bit
        for mask in range(len(values)):
            if mask & step:
                values[mask] += values[mask ^ step]
    return TruthTable(p.nvars, tuple(values))


def from_truth_table(table: TruthTable | Sequence[int]) -> MultilinearPoly:
    """Inversión de Möbius: el único interpolante multilineal de la tabla."""
    if not isinstance(table, TruthTable):
        table = TruthTable.from_values(table)
    coefs = list(table.values)
    for bit in range(table.nvars):
        step = 1 << bit
        for mask in range(len(coefs)):
            if mask & step:
                coefs[mask] -= coefs[mask ^ step]
    return MultilinearPoly(table.nvars, {mask: c for mask, c in enumerate(coefs) if c})


def truncate_degree(p: MultilinearPoly, d: int) -> MultilinearPoly:
    if d < 0:
        raise ValueError(f"El grado de truncado debe ser >= 0, recibido {d}")
    return MultilinearPoly(p.nvars, {m: c for m, c in p.items() if m.bit_count() <= d})


def restrict(p: MultilinearPoly, open_slits: Iterable[int]) -> MultilinearPoly:
    """Bloquea las variables fuera de open_slits (x_i = 0); conserva nvars."""
    open_mask = indices_to_mask(open_slits, p.nvars)
    return MultilinearPoly(p.nvars, {m: c for m, c in p.items() if m & ~open_mask == 0})


def coefficient(p: MultilinearPoly, indices: Iterable[int]) -> int:
    return p._terms.get(indices_to_mask(indices, p.nvars), 0)


def degree(p: MultilinearPoly) -> int:
    return max((m.bit_count() for m in p._terms), default=-1)


def mod2(p: MultilinearPoly) -> MultilinearPoly:
    """Sombra ANF: coeficientes reducidos módulo 2."""
    return MultilinearPoly(p.nvars, {m: c % 2 for m, c in p.items()})


def is_indicator(p: MultilinearPoly) -> bool:
    return to_truth_table(p).is_indicator()


def homogeneous_part(p: MultilinearPoly, k: int) -> MultilinearPoly:
    return MultilinearPoly(p.nvars, {m: c for m, c in p.items() if m.bit_count() == k})


# --- Forma textual ---

def sorted_terms(p: MultilinearPoly) -> list[tuple[int, int]]:
    """Términos ordenados por (grado, valor numérico del patrón)."""
    return sorted(p.items(), key=lambda item: (item[0].bit_count(), item[0]))


def _render_monomial(mask: int) -> str:
    return "".join(f"x{i}" for i in mask_to_indices(mask))


def render(p: MultilinearPoly) -> str:
    """Forma determinista, ej: ``x1 + x2 - 2*x1x2``."""
    pieces = []
    for mask, coef in sorted_terms(p):
        magnitude = abs(coef)
        if mask == 0:
            body = str(magnitude)
        elif magnitude == 1:
            body = _render_monomial(mask)
        else:
            body = f"{magnitude}*{_render_monomial(mask)}"
        if not pieces:
            pieces.append(body if coef > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coef > 0 else '-'} {body}")
    return " ".join(pieces) if pieces else "0"


_TERM_RE = re.compile(r"^(?:(\d+)\*)?((?:x\d+)+)$|^(\d+)$")
_VAR_RE = re.compile(r"x(\d+)")


def parse_poly(text: str, nvars: int) -> MultilinearPoly:
    """Inversa de render (acepta también espacios arbitrarios alrededor de los signos)."""
    compact = text.replace(" ", "")
    if not compact:
        raise ValueError("Polinomio vacío")
    tokens = re.findall(r"[+-]?[^+-]+", compact)
    if "".join(tokens) != compact:
        raise ValueError(f"Polinomio mal formado: {text!r}")
    terms: dict[int, int] = {}
    for token in tokens:
        sign = -1 if token.startswith("-") else 1
        body = token.lstrip("+-")
        match = _TERM_RE.match(body)
        if not match:
            raise ValueError(f"Término mal formado: {token!r}")
        if match.group(3) is not None:
            mask, coef = 0, int(match.group(3))
        else:
            coef = int(match.group(1)) if match.group(1) else 1
            mask = indices_to_mask((int(v) for v in _VAR_RE.findall(match.group(2))), nvars)
        terms[mask] = terms.get(mask, 0) + sign * coef
    return MultilinearPoly(nvars, terms)
