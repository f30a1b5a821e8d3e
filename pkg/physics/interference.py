# -*- coding: utf-8 -*-
"""
Funcionales de la jerarquía de Sorkin y residuos de descomposición sobre
probabilidades de subconjuntos P_S.

Los subconjuntos se codifican como patrones de bits (bit i-1 <=> rendija i).
Los valores de P_S pueden ser escalares o arrays de numpy sobre las
posiciones del detector; todo funcional se aplica elemento a elemento.

Nota de signo: la combinación de cinco rendijas impresa con "- 3(P_A + ... )"
contradice la forma general P_full - Σ P_ij + (n-2) Σ P_i, que es la que se
implementa (coincide con los casos de tres y cuatro rendijas y con los datos
de Born).
"""
import csv
import io
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

logger = logging.getLogger("Interference")

SLIT_LABELS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class SubsetError(ValueError):
    """Subconjunto vacío, fuera de rango o ausente en los datos."""


# --- Subconjuntos ---

def subset_mask(subset: Iterable[int], n: int) -> int:
    """Índices 1-based -> patrón de bits."""
    mask = 0
    for i in subset:
        if not 1 <= i <= n:
            raise SubsetError(f"Rendija {i} fuera de 1..{n}")
        mask |= 1 << (i - 1)
    if not mask:
        raise SubsetError("El subconjunto no puede ser vacío")
    return mask


def subset_label(mask: int) -> str:
    """Etiqueta ordenada, ej: 0b1101 -> 'ACD'."""
    return "".join(SLIT_LABELS[i] for i in range(mask.bit_length()) if mask >> i & 1)


def label_to_mask(label: str) -> int:
    mask = 0
    for char in label.strip():
        index = SLIT_LABELS.find(char)
        if index < 0:
            raise SubsetError(f"Etiqueta de rendija desconocida: {char!r}")
        mask |= 1 << index
    if not mask:
        raise SubsetError("Etiqueta de subconjunto vacía")
    return mask


def ordered_subsets(n: int) -> list[int]:
    """Subconjuntos no vacíos ordenados por (tamaño, patrón)."""
    return sorted(range(1, 1 << n), key=lambda m: (m.bit_count(), m))


def submasks(mask: int):
    """Todos los subconjuntos no vacíos de mask."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


# --- Tipos ---

@dataclass(frozen=True)
class SubsetProbabilities:
    n: int
    values: Mapping[int, float | np.ndarray]

    def __post_init__(self):
        if self.n < 1:
            raise SubsetError(f"n debe ser >= 1, recibido {self.n}")
        expected = set(range(1, 1 << self.n))
        missing = expected - set(self.values)
        extra = set(self.values) - expected
        if missing:
            raise SubsetError(f"Faltan {len(missing)} subconjuntos, ej: {subset_label(min(missing))}")
        if extra:
            raise SubsetError(f"Subconjuntos fuera de rango: {sorted(extra)}")
        for mask, value in self.values.items():
            array = np.asarray(value, dtype=float)
            if not np.all(np.isfinite(array)) or np.any(array < 0):
                raise SubsetError(f"P_{subset_label(mask)} debe ser finito y >= 0")
        object.__setattr__(self, "values", dict(self.values))

    def __getitem__(self, mask: int):
        try:
            return self.values[mask]
        except KeyError:
            raise SubsetError(f"Subconjunto ausente: {mask:b}") from None

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def at(self, index: int) -> "SubsetProbabilities":
        """Extrae la posición index de unos datos vectorizados."""
        return SubsetProbabilities(self.n, {m: float(np.asarray(v)[index]) for m, v in self.values.items()})

    def scaled(self, factor: float) -> "SubsetProbabilities":
        return SubsetProbabilities(self.n, {m: v * factor for m, v in self.values.items()})


@dataclass(frozen=True)
class InterferenceReport:
    n: int
    # K -> I_K (K = n: valor con signo; K < n: máximo |I_K| sobre los K-subconjuntos)
    sorkin_values: dict[int, float] = field(default_factory=dict)
    pairwise_residual: float = 0.0
    decohered_residual: float = 0.0

    def max_higher_order(self) -> float:
        """Máximo |I_K| con K >= 3 (0 si n < 3)."""
        return max((abs(v) for k, v in self.sorkin_values.items() if k >= 3), default=0.0)


# --- Funcionales ---

def _sorkin_mask(mask: int, p: SubsetProbabilities):
    size = mask.bit_count()
    total = 0.0
    for sub in submasks(mask):
        term = p[sub]
        total = total + term if (size - sub.bit_count()) % 2 == 0 else total - term
    return total


def sorkin(subset: Iterable[int], p: SubsetProbabilities):
    """I_K(S) = Σ_{∅≠T⊆S} (-1)^{|S|-|T|} P_T."""
    return _sorkin_mask(subset_mask(subset, p.n), p)


def _require_pairs(p: SubsetProbabilities):
    if p.n < 2:
        raise SubsetError(f"Se necesitan al menos dos rendijas, n={p.n}")


def _singles_sum(p: SubsetProbabilities):
    return sum(p[1 << i] for i in range(p.n))


def _pairs_sum(p: SubsetProbabilities):
    return sum(p[(1 << i) | (1 << j)] for i, j in itertools.combinations(range(p.n), 2))


def pairwise_prediction(p: SubsetProbabilities):
    """Patrón completo predicho solo con pares: Σ_{i<j} P_ij - (n-2) Σ_i P_i."""
    _require_pairs(p)
    return _pairs_sum(p) - (p.n - 2) * _singles_sum(p)


def pairwise_residual(p: SubsetProbabilities):
    """P_full - Σ_{i<j} P_ij + (n-2) Σ_i P_i."""
    _require_pairs(p)
    return p[p.full_mask] - pairwise_prediction(p)


def decohered_residual(p: SubsetProbabilities):
    """P_full - Σ_i P_i."""
    _require_pairs(p)
    return p[p.full_mask] - _singles_sum(p)


def _collapse(value) -> float:
    """Escalares con signo; arrays -> máximo valor absoluto sobre la rejilla."""
    if isinstance(value, np.ndarray):
        return float(np.max(np.abs(value))) if value.size else 0.0
    return float(value)


def hierarchy_report(p: SubsetProbabilities) -> InterferenceReport:
    """Calcula I_K para todos los K-subconjuntos, 2 <= K <= n, y ambos residuos."""
    _require_pairs(p)
    grouped: dict[int, list[int]] = {}
    for mask in range(1, 1 << p.n):
        size = mask.bit_count()
        if size >= 2:
            grouped.setdefault(size, []).append(mask)

    sorkin_values = {}
    for k in sorted(grouped):
        if k == p.n:
            sorkin_values[k] = _collapse(_sorkin_mask(p.full_mask, p))
        else:
            sorkin_values[k] = max(abs(_collapse(_sorkin_mask(m, p))) for m in grouped[k])

    report = InterferenceReport(
        n=p.n,
        sorkin_values=sorkin_values,
        pairwise_residual=_collapse(pairwise_residual(p)),
        decohered_residual=_collapse(decohered_residual(p)),
    )
    if not all(math.isfinite(v) for v in report_values(report)):
        raise ValueError("El informe de interferencia contiene valores no finitos")
    return report


def report_values(report: InterferenceReport) -> list[float]:
    return list(report.sorkin_values.values()) + [report.pairwise_residual, report.decohered_residual]


# --- Formatos de texto ---

def format_number(value: float) -> str:
    """17 cifras significativas: ida y vuelta exacta para float de 64 bits."""
    return format(float(value), ".17g")


def render_subset_table(p: SubsetProbabilities) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["subset", "P"])
    for mask in ordered_subsets(p.n):
        writer.writerow([subset_label(mask), format_number(_collapse(p[mask]))])
    return buffer.getvalue()


def parse_subset_table(text: str) -> SubsetProbabilities:
    """Lee la tabla `subset,P`; n es la rendija de mayor etiqueta."""
    reader = csv.reader(io.StringIO(text))
    rows = [row for row in reader if row and any(cell.strip() for cell in row)]
    if not rows or [cell.strip() for cell in rows[0]] != ["subset", "P"]:
        raise SubsetError("La tabla debe empezar con la cabecera 'subset,P'")
    values: dict[int, float] = {}
    for line_number, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise SubsetError(f"Fila {line_number}: se esperaban 2 columnas, hay {len(row)}")
        mask = label_to_mask(row[0])
        if mask in values:
            raise SubsetError(f"Fila {line_number}: subconjunto repetido {row[0].strip()}")
        try:
            values[mask] = float(row[1])
        except ValueError:
            raise SubsetError(f"Fila {line_number}: probabilidad no numérica {row[1]!r}") from None
    if not values:
        raise SubsetError("La tabla no contiene filas")
    n = max(values).bit_length()
    logger.info(f"Tabla de subconjuntos leída: n={n}, {len(values)} filas")
    return SubsetProbabilities(n, values)


def report_to_dict(report: InterferenceReport) -> dict:
    return {
        "n": report.n,
        "sorkin_values": {str(k): v for k, v in sorted(report.sorkin_values.items())},
        "pairwise_residual": report.pairwise_residual,
        "decohered_residual": report.decohered_residual,
    }


def render_report(report: InterferenceReport) -> str:
    lines = [f"n={report.n}"]
    lines += [f"I_{k}={format_number(v)}" for k, v in sorted(report.sorkin_values.items())]
    lines.append(f"pairwise_residual={format_number(report.pairwise_residual)}")
    lines.append(f"decohered_residual={format_number(report.decohered_residual)}")
    return "\n".join(lines) + "\n"
