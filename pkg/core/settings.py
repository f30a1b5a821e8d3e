# -*- coding: utf-8 -*-
"""
Constantes de configuración del sistema.

Cada valor puede sobrescribirse con una variable de entorno con prefijo
``SLITLOGIC_`` (ej: ``SLITLOGIC_MAX_SYMBOLIC_VARS=12``).
"""
import os

ENV_PREFIX = "SLITLOGIC_"


def _env(name: str, default, cast):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None or raw.strip() == "":
        return default
    return cast(raw)


# Directorio de logs persistentes (RotatingFileHandler)
LOG_DIR = _env("LOG_DIR", "logs", str)

# Límite de variables de la capa simbólica: las tablas de verdad crecen como 2^N
MAX_SYMBOLIC_VARS = _env("MAX_SYMBOLIC_VARS", 16, int)

# Límite de rendijas del simulador: cada punto genera 2^N - 1 subconjuntos
MAX_SIMULATION_SLITS = _env("MAX_SIMULATION_SLITS", 10, int)

# Tolerancia absoluta para considerar "nulo" un funcional de Sorkin
VANISHING_TOLERANCE = _env("VANISHING_TOLERANCE", 1e-10, float)

# Tolerancia de normalización de las amplitudes base (sum |c_i|^2 = 1)
NORMALIZATION_TOLERANCE = _env("NORMALIZATION_TOLERANCE", 1e-12, float)

# Semilla fija para las configuraciones aleatorias de las pruebas de propiedad
RANDOM_SEED = _env("RANDOM_SEED", 20240607, int)

# Hilos simultáneos del JobBroker
JOB_WORKERS = _env("JOB_WORKERS", 4, int)
