# -*- coding: utf-8 -*-
"""
Simulador de N rendijas puntuales en aproximación de Fraunhofer.

Cada rendija i aporta a_i(x) = c_i · exp(i·2π·d_i·x / (λ·L)) en la posición x de
la pantalla (multiplicada opcionalmente por una envolvente gaussiana común).
Bloquear rendijas equivale a restringir la suma al subconjunto abierto.
"""
import cmath
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from core import settings
from core.discovery import ModelDiscovery
from core.json_validator import validate_document
from models.base_model import BaseProbabilityModel
from physics.interference import (
    InterferenceReport,
    SubsetProbabilities,
    format_number,
    hierarchy_report,
    ordered_subsets,
    subset_label,
    subset_mask,
)

logger = logging.getLogger("QuantumSim")


class ConfigError(ValueError):
    """Configuración de rendijas, rejilla o modelo inválida."""


# --- Tipos ---

@dataclass(frozen=True)
class SlitConfig:
    n: int
    base_amplitudes: tuple[complex, ...]
    slit_offsets: tuple[float, ...]
    wavelength: float
    screen_distance: float
    # Extensión: envolvente gaussiana común a todas las rendijas (None = rendijas ideales)
    envelope_width: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "base_amplitudes", tuple(complex(c) for c in self.base_amplitudes))
        object.__setattr__(self, "slit_offsets", tuple(float(d) for d in self.slit_offsets))
        if self.n < 1:
            raise ConfigError(f"n debe ser >= 1, recibido {self.n}")
        if len(self.base_amplitudes) != self.n or len(self.slit_offsets) != self.n:
            raise ConfigError(
                f"Se esperaban {self.n} amplitudes y desplazamientos; hay "
                f"{len(self.base_amplitudes)} y {len(self.slit_offsets)}"
            )
        if not all(cmath.isfinite(c) for c in self.base_amplitudes):
            raise ConfigError("Amplitudes no finitas")
        if not all(math.isfinite(d) for d in self.slit_offsets):
            raise ConfigError("Desplazamientos no finitos")
        norm = sum(abs(c) ** 2 for c in self.base_amplitudes)
        if abs(norm - 1.0) > settings.NORMALIZATION_TOLERANCE:
            raise ConfigError(f"Las amplitudes no están normalizadas: Σ|c_i|^2 = {norm!r}")
        if len(set(self.slit_offsets)) != self.n:
            raise ConfigError("Los desplazamientos de las rendijas deben ser distintos")
        if not (math.isfinite(self.wavelength) and self.wavelength > 0):
            raise ConfigError(f"Longitud de onda inválida: {self.wavelength}")
        if not (math.isfinite(self.screen_distance) and self.screen_distance > 0):
            raise ConfigError(f"Distancia a la pantalla inválida: {self.screen_distance}")
        if self.envelope_width is not None and not (math.isfinite(self.envelope_width) and self.envelope_width > 0):
            raise ConfigError(f"Anchura de envolvente inválida: {self.envelope_width}")


@dataclass(frozen=True)
class DetectorGrid:
    positions: tuple[float, ...]

    def __post_init__(self):
        positions = tuple(float(x) for x in self.positions)
        object.__setattr__(self, "positions", positions)
        if not positions:
            raise ConfigError("La rejilla de detectores está vacía")
        if not all(math.isfinite(x) for x in positions):
            raise ConfigError("La rejilla contiene posiciones no finitas")
        if any(b <= a for a, b in zip(positions, positions[1:])):
            raise ConfigError("Las posiciones de la rejilla deben ser estrictamente crecientes")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.positions, dtype=float)

    def __len__(self) -> int:
        return len(self.positions)


@dataclass(frozen=True)
class ModelKind:
    name: str
    epsilon: float = 0.0

    def __post_init__(self):
        if self.name not in ModelDiscovery.discover_models():
            raise ConfigError(f"Modelo desconocido: {self.name!r} (disponibles: {available_models()})")
        if not math.isfinite(self.epsilon):
            raise ConfigError(f"epsilon debe ser finito, recibido {self.epsilon}")
        if self.epsilon != 0.0 and self.name != NONQUANTUM:
            raise ConfigError(f"epsilon solo se aplica al modelo '{NONQUANTUM}', no a '{self.name}'")


BORN = "born"
DECOHERED = "decohered"
NONQUANTUM = "nonquantum"


@dataclass(frozen=True)
class ScanReport:
    n: int
    model: ModelKind
    points: list[tuple[float, InterferenceReport]] = field(default_factory=list)
    max_sorkin: dict[int, float] = field(default_factory=dict)
    max_pairwise_residual: float = 0.0
    max_decohered_residual: float = 0.0


# --- Modelos ---

def available_models() -> list[str]:
    return sorted(ModelDiscovery.discover_models())


def build_model(kind: ModelKind) -> BaseProbabilityModel:
    model_class = ModelDiscovery.discover_models()[kind.name]
    return model_class(logging.getLogger(f"Model.{kind.name}"), epsilon=kind.epsilon)


# --- Amplitudes y probabilidades ---

def _phase_factor(config: SlitConfig, offsets: np.ndarray, positions: np.ndarray) -> np.ndarray:
    phase = 2.0 * np.pi * np.outer(offsets, positions) / (config.wavelength * config.screen_distance)
    factor = np.exp(1j * phase)
    if config.envelope_width is not None:
        factor = factor * np.exp(-positions ** 2 / (2.0 * config.envelope_width ** 2))
    return factor


def amplitude_matrix(config: SlitConfig, positions: Sequence[float] | np.ndarray) -> np.ndarray:
    """Array complejo (n, m) con a_i(x) para cada rendija y posición."""
    positions = np.asarray(positions, dtype=float)
    coefficients = np.asarray(config.base_amplitudes, dtype=complex)[:, None]
    return coefficients * _phase_factor(config, np.asarray(config.slit_offsets), positions)


def amplitude(config: SlitConfig, slit: int, x: float) -> complex:
    if not 1 <= slit <= config.n:
        raise ConfigError(f"Rendija {slit} fuera de 1..{config.n}")
    if not math.isfinite(x):
        raise ConfigError(f"Posición no finita: {x}")
    return complex(amplitude_matrix(config, [x])[slit - 1, 0])


def _subset_rows(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def subset_probability(config: SlitConfig, subset: Iterable[int], x: float, model: ModelKind) -> float:
    """P_S(x) bajo el modelo indicado."""
    mask = subset_mask(subset, config.n)
    amplitudes = amplitude_matrix(config, [x])[_subset_rows(mask, config.n)]
    return float(build_model(model).intensity(amplitudes)[0])


def _check_simulation_cap(config: SlitConfig):
    if config.n > settings.MAX_SIMULATION_SLITS:
        raise ConfigError(
            f"n={config.n} supera el límite de simulación ({settings.MAX_SIMULATION_SLITS}); "
            f"cada punto genera 2^n - 1 subconjuntos"
        )


def generate_grid(config: SlitConfig, grid: DetectorGrid, model: ModelKind) -> SubsetProbabilities:
    """Versión vectorizada: cada P_S es un array sobre las posiciones de la rejilla."""
    _check_simulation_cap(config)
    matrix = amplitude_matrix(config, grid.as_array())
    engine = build_model(model)
    values = {mask: engine.intensity(matrix[_subset_rows(mask, config.n)])
              for mask in range(1, 1 << config.n)}
    return SubsetProbabilities(config.n, values)


def generate(config: SlitConfig, grid: DetectorGrid, model: ModelKind) -> list[tuple[float, SubsetProbabilities]]:
    """(x, SubsetProbabilities) para cada posición, en el orden de la rejilla."""
    data = generate_grid(config, grid, model)
    logger.info(f"Patrón generado: n={config.n}, modelo={model.name}, {len(grid)} posiciones")
    return [(x, data.at(index)) for index, x in enumerate(grid.positions)]


def scan_report(config: SlitConfig, grid: DetectorGrid, model: ModelKind) -> ScanReport:
    """Informe por punto más los máximos de |I_K| y de los residuos sobre la rejilla."""
    points = [(x, hierarchy_report(data)) for x, data in generate(config, grid, model)]
    max_sorkin = {}
    for _, report in points:
        for k, value in report.sorkin_values.items():
            max_sorkin[k] = max(max_sorkin.get(k, 0.0), abs(value))
    scan = ScanReport(
        n=config.n,
        model=model,
        points=points,
        max_sorkin=max_sorkin,
        max_pairwise_residual=max(abs(r.pairwise_residual) for _, r in points),
        max_decohered_residual=max(abs(r.decohered_residual) for _, r in points),
    )
    maxima = ", ".join(f"I_{k}={v:.3e}" for k, v in sorted(max_sorkin.items()))
    logger.info(f"Barrido n={config.n} modelo={model.name}: {maxima}, "
                f"residuo por pares={scan.max_pairwise_residual:.3e}")
    return scan


# --- Entrada / salida ---

def slit_config_from_dict(document: dict) -> SlitConfig:
    validate_document(document, "slit_config")
    amplitudes = [complex(re_part, im_part) for re_part, im_part in document["amplitudes"]]
    if document["n"] != len(amplitudes):
        raise ConfigError(f"n={document['n']} no coincide con {len(amplitudes)} amplitudes")
    return SlitConfig(
        n=document["n"],
        base_amplitudes=tuple(amplitudes),
        slit_offsets=tuple(document["offsets"]),
        wavelength=document["wavelength"],
        screen_distance=document["screen_distance"],
        envelope_width=document.get("envelope_width"),
    )


def slit_config_to_dict(config: SlitConfig) -> dict:
    document = {
        "n": config.n,
        "wavelength": config.wavelength,
        "screen_distance": config.screen_distance,
        "amplitudes": [[c.real, c.imag] for c in config.base_amplitudes],
        "offsets": list(config.slit_offsets),
    }
    if config.envelope_width is not None:
        document["envelope_width"] = config.envelope_width
    return document


def load_slit_config(path: str) -> SlitConfig:
    with open(path, "r", encoding="utf-8") as handle:
        document = json.load(handle)
    config = slit_config_from_dict(document)
    logger.info(f"Configuración cargada desde {path}: n={config.n}")
    return config


def parse_grid(spec: str) -> DetectorGrid:
    """'start:stop:count' -> rejilla equiespaciada con extremos incluidos."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ConfigError(f"Rejilla mal formada {spec!r}; formato start:stop:count")
    try:
        start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"Rejilla mal formada {spec!r}; formato start:stop:count") from None
    if count < 1:
        raise ConfigError(f"La rejilla necesita al menos un punto, recibido {count}")
    if count > 1 and not stop > start:
        raise ConfigError(f"La rejilla necesita stop > start, recibido {spec!r}")
    return DetectorGrid(tuple(np.linspace(start, stop, count)) if count > 1 else (start,))


def render_pattern(rows: Sequence[tuple[float, SubsetProbabilities]]) -> str:
    """Tabla `x,subset,P` con 17 cifras significativas."""
    lines = ["x,subset,P"]
    for x, data in rows:
        for mask in ordered_subsets(data.n):
            lines.append(f"{format_number(x)},{subset_label(mask)},{format_number(data[mask])}")
    return "\n".join(lines) + "\n"


def scan_report_to_dict(scan: ScanReport) -> dict:
    return {
        "n": scan.n,
        "model": scan.model.name,
        "epsilon": scan.model.epsilon,
        "points": len(scan.points),
        "max_sorkin": {str(k): v for k, v in sorted(scan.max_sorkin.items())},
        "max_pairwise_residual": scan.max_pairwise_residual,
        "max_decohered_residual": scan.max_decohered_residual,
    }


def render_scan_report(scan: ScanReport) -> str:
    lines = [f"n={scan.n}", f"model={scan.model.name}", f"epsilon={format_number(scan.model.epsilon)}",
             f"points={len(scan.points)}"]
    lines += [f"max_I_{k}={format_number(v)}" for k, v in sorted(scan.max_sorkin.items())]
    lines.append(f"max_pairwise_residual={format_number(scan.max_pairwise_residual)}")
    lines.append(f"max_decohered_residual={format_number(scan.max_decohered_residual)}")
    return "\n".join(lines) + "\n"


# --- Configuraciones aleatorias para barridos de propiedades ---

def random_config(n: int, rng: np.random.Generator, wavelength: float = 1.0,
                  screen_distance: float = 1.0) -> SlitConfig:
    """Amplitudes complejas normalizadas y desplazamientos distintos en [-2, 2]."""
    raw = rng.normal(size=n) + 1j * rng.normal(size=n)
    raw = raw / np.sqrt(np.sum(np.abs(raw) ** 2))
    offsets = np.sort(rng.uniform(-2.0, 2.0, size=n))
    while len(set(offsets.tolist())) != n:
        offsets = np.sort(rng.uniform(-2.0, 2.0, size=n))
    return SlitConfig(n=n, base_amplitudes=tuple(raw.tolist()), slit_offsets=tuple(offsets.tolist()),
                      wavelength=wavelength, screen_distance=screen_distance)
