# -*- coding: utf-8 -*-
"""
Objetos polinómicos con nombre: cadenas XOR, Υ_N, Δ_N y la proposición
"exactamente uno", junto con las verificaciones mecánicas de la identidad de
supresión (XOR_N·Δ_N = Υ_N·Δ_N) y de la imposibilidad de asignaciones no
contextuales.
"""
import itertools
import logging
from dataclasses import dataclass, field
from functools import reduce
from math import comb

from algebra.poly_core import (
    MultilinearPoly,
    add,
    check_cap,
    constant,
    from_truth_table,
    homogeneous_part,
    indices_to_mask,
    mask_to_indices,
    monomial,
    multiply,
    render,
    restrict,
    scale,
    variable,
    xor_op,
)

logger = logging.getLogger("Constructs")


# --- Informes ---

@dataclass(frozen=True)
class IdentityReport:
    """Resultado de comparar XOR_n·Δ_n con Υ_n·Δ_n."""
    n: int
    lhs: MultilinearPoly
    rhs: MultilinearPoly
    equal: bool
    # (grado, número de monomios) de los términos I_k anulados por Δ_n
    vanished_terms: list[tuple[int, int]] = field(default_factory=list)


@dataclass(frozen=True)
class AssignmentSearchResult:
    n: int
    consistent: list[tuple[int, ...]]


@dataclass(frozen=True)
class BlockingReport:
    """Comprobación de las proposiciones cuando se bloquean rendijas."""
    n: int
    checked_contexts: int
    delta_unit_contexts: int
    equal: bool
    failures: list[str] = field(default_factory=list)


@dataclass(frozen=True)
class CoefficientReport:
    n: int
    xor_matches: bool
    exactly_one_matches: bool

    @property
    def equal(self) -> bool:
        return self.xor_matches and self.exactly_one_matches


# --- Construcciones ---

def xor_chain(n: int) -> MultilinearPoly:
    """x_1 ⊕ ... ⊕ x_n; el monomio sobre S lleva coeficiente (-2)^(|S|-1)."""
    check_cap(n)
    return reduce(xor_op, (variable(i, n) for i in range(1, n + 1)))


def pair_proposition(i: int, j: int, n: int) -> MultilinearPoly:
    """({X_i, X_j}) = x_i ⊕ x_j: exactamente un resultado en el espacio de dos eventos."""
    if i == j:
        raise ValueError(f"La proposición de pares necesita dos rendijas distintas, recibido ({i}, {j})")
    return xor_op(variable(i, n), variable(j, n))


def upsilon(n: int) -> MultilinearPoly:
    """Υ_n = Σ_{i<j} (x_i ⊕ x_j) - (n-2) Σ_i x_i."""
    check_cap(n, minimum=2)
    pairs = reduce(add, (pair_proposition(i, j, n)
                         for i, j in itertools.combinations(range(1, n + 1), 2)))
    singles = reduce(add, (variable(i, n) for i in range(1, n + 1)))
    return add(pairs, scale(singles, -(n - 2)))


def delta(n: int) -> MultilinearPoly:
    """Δ_n = Π_{i<j<k} (1 ⊕ x_i x_j x_k); producto vacío (= 1) si n < 3."""
    check_cap(n)
    one = constant(1, n)
    result = one
    for triple in itertools.combinations(range(1, n + 1), 3):
        result = multiply(result, xor_op(one, monomial(triple, n)))
    return result


def exactly_one(n: int) -> MultilinearPoly:
    """({X_1, ..., X_n}) = XOR_n · Δ_n."""
    check_cap(n)
    return multiply(xor_chain(n), delta(n))


def interference_terms(n: int) -> dict[int, MultilinearPoly]:
    """Componentes I_k (k >= 3) de XOR_n - Υ_n agrupadas por grado."""
    check_cap(n, minimum=3)
    remainder = add(xor_chain(n), scale(upsilon(n), -1))
    return {k: homogeneous_part(remainder, k) for k in range(3, n + 1)}


# --- Verificaciones ---

def verify_reduction_identity(n: int) -> IdentityReport:
    """
    Calcula XOR_n·Δ_n y Υ_n·Δ_n por caminos independientes (sin cachés) y
    compara las formas canónicas. Un grado k figura en vanished_terms cuando
    I_k·Δ_n es idénticamente nulo.
    """
    check_cap(n, minimum=2)
    lhs = multiply(xor_chain(n), delta(n))
    rhs = multiply(upsilon(n), delta(n))
    equal = lhs == rhs

    vanished = []
    if n >= 3:
        factor = delta(n)
        for k, term in interference_terms(n).items():
            if term and not multiply(term, factor):
                vanished.append((k, len(term)))
    logger.info(f"Identidad de reducción n={n}: equal={equal}, anulados={vanished}")
    return IdentityReport(n=n, lhs=lhs, rhs=rhs, equal=equal, vanished_terms=vanished)


def _weight_oracle(n: int, predicate) -> MultilinearPoly:
    return from_truth_table([int(predicate(m.bit_count())) for m in range(1 << n)])


def verify_coefficient_laws(n: int) -> CoefficientReport:
    """
    Contrasta xor_chain y exactly_one con el interpolante de oráculos de peso
    independientes y con las fórmulas cerradas (-2)^(k-1) y (-1)^(k-1)·k.
    """
    check_cap(n)
    chain = xor_chain(n)
    single = exactly_one(n)

    parity = _weight_oracle(n, lambda w: w % 2 == 1)
    weight_one = _weight_oracle(n, lambda w: w == 1)

    closed_chain = MultilinearPoly(n, {m: (-2) ** (m.bit_count() - 1) for m in range(1, 1 << n)})
    closed_single = MultilinearPoly(n, {m: (-1) ** (m.bit_count() - 1) * m.bit_count()
                                        for m in range(1, 1 << n)})

    report = CoefficientReport(
        n=n,
        xor_matches=chain == parity == closed_chain,
        exactly_one_matches=single == weight_one == closed_single,
    )
    logger.info(f"Leyes de coeficientes n={n}: xor={report.xor_matches}, exactly_one={report.exactly_one_matches}")
    return report


def _embed(p: MultilinearPoly, positions: tuple[int, ...], nvars: int) -> MultilinearPoly:
    """Reubica x_1..x_|S| de p en las variables positions de un polinomio de nvars."""
    return MultilinearPoly(nvars, {
        indices_to_mask((positions[i - 1] for i in mask_to_indices(mask)), nvars): coef
        for mask, coef in p.items()
    })


def verify_blocking_reduction(n: int) -> BlockingReport:
    """
    Bloquear una rendija hace falsa su proposición (x_i = 0). Para cada
    conjunto abierto S no vacío comprueba que: Δ_n|S = 1 sii |S| <= 2;
    ({X_1..X_n})|S = Υ_n|S cuando |S| <= 2; y ({X_1..X_n})|S coincide con la
    proposición "exactamente uno" sobre las variables de S.
    """
    check_cap(n, minimum=2)
    full_delta = delta(n)
    full_single = exactly_one(n)
    full_upsilon = upsilon(n)
    one = constant(1, n)
    by_size = {k: exactly_one(k) for k in range(1, n + 1)}

    failures = []
    unit_contexts = 0
    contexts = 0
    for open_mask in range(1, 1 << n):
        contexts += 1
        open_indices = mask_to_indices(open_mask)
        size = len(open_indices)

        restricted_delta = restrict(full_delta, open_indices)
        delta_is_unit = restricted_delta == one
        unit_contexts += delta_is_unit
        if delta_is_unit != (size <= 2):
            failures.append(f"delta S={open_indices}: {render(restricted_delta)}")

        restricted_single = restrict(full_single, open_indices)
        if size <= 2 and restricted_single != restrict(full_upsilon, open_indices):
            failures.append(f"upsilon S={open_indices}")

        if restricted_single != _embed(by_size[size], open_indices, n):
            failures.append(f"exactly_one S={open_indices}")

    report = BlockingReport(n=n, checked_contexts=contexts, delta_unit_contexts=unit_contexts,
                            equal=not failures, failures=failures)
    logger.info(f"Reducción por bloqueo n={n}: {contexts} contextos, equal={report.equal}")
    return report


def noncontextual_assignments(n: int) -> AssignmentSearchResult:
    """
    Busca valuaciones 0/1 fijas que hagan verdadera la proposición
    "exactamente uno" en todo contexto de bloqueo (todo subconjunto abierto no
    vacío). Para n >= 2 el resultado es vacío.
    """
    check_cap(n)
    contexts = range(1, 1 << n)
    consistent = []
    for assignment in itertools.product((0, 1), repeat=n):
        point = sum(bit << i for i, bit in enumerate(assignment))
        if all((point & context).bit_count() == 1 for context in contexts):
            consistent.append(assignment)
    logger.info(f"Búsqueda no contextual n={n}: {len(consistent)} asignaciones consistentes")
    return AssignmentSearchResult(n=n, consistent=consistent)


# --- Serialización de informes (clave=valor, orden fijo) ---

def format_vanished(vanished: list[tuple[int, int]]) -> str:
    return ",".join(f"{k}:{count}" for k, count in vanished) or "-"


def identity_report_to_dict(report: IdentityReport) -> dict:
    return {
        "n": report.n,
        "equal": report.equal,
        "lhs": render(report.lhs),
        "rhs": render(report.rhs),
        "vanished_terms": [{"degree": k, "monomials": count} for k, count in report.vanished_terms],
    }


def render_identity_report(report: IdentityReport) -> str:
    return (f"identity=reduction n={report.n} equal={str(report.equal).lower()} "
            f"lhs_terms={len(report.lhs)} vanished={format_vanished(report.vanished_terms)}")


def assignment_result_to_dict(result: AssignmentSearchResult) -> dict:
    return {"n": result.n, "consistent": [list(a) for a in result.consistent]}


def render_assignment_result(result: AssignmentSearchResult) -> str:
    listed = ";".join("".join(str(b) for b in a) for a in result.consistent) or "-"
    return f"identity=ks n={result.n} consistent_count={len(result.consistent)} consistent={listed}"


def blocking_report_to_dict(report: BlockingReport) -> dict:
    return {
        "n": report.n,
        "equal": report.equal,
        "checked_contexts": report.checked_contexts,
        "delta_unit_contexts": report.delta_unit_contexts,
        "failures": list(report.failures),
    }


def render_blocking_report(report: BlockingReport) -> str:
    return (f"identity=blocking n={report.n} equal={str(report.equal).lower()} "
            f"contexts={report.checked_contexts} delta_unit={report.delta_unit_contexts}")


def coefficient_report_to_dict(report: CoefficientReport) -> dict:
    return {"n": report.n, "equal": report.equal,
            "xor_matches": report.xor_matches, "exactly_one_matches": report.exactly_one_matches}


def render_coefficient_report(report: CoefficientReport) -> str:
    return (f"identity=coefficients n={report.n} equal={str(report.equal).lower()} "
            f"xor={str(report.xor_matches).lower()} exactly_one={str(report.exactly_one_matches).lower()}")


def expected_degree_counts(n: int) -> list[tuple[int, int]]:
    """(k, C(n,k)) para k = 3..n: lo que debería anular Δ_n."""
    return [(k, comb(n, k)) for k in range(3, n + 1)]
