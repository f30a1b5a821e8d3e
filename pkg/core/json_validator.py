# -*- coding: utf-8 -*-
import logging

from jsonschema import validate, ValidationError

logger = logging.getLogger("JSONValidator")

# --- 1. Definición de Componentes Reutilizables ---

# Número complejo como par [re, im]
COMPLEX_PAIR_SCHEMA = {
    "type": "array",
    "items": {"type": "number"},
    "minItems": 2,
    "maxItems": 2,
}

POLYNOMIAL_TEXT_SCHEMA = {"type": "string", "pattern": "^[-0-9x* +]+$"}

# Valores de la jerarquía indexados por K (claves "2", "3", ...)
SORKIN_VALUES_SCHEMA = {
    "type": "object",
    "patternProperties": {"^[0-9]+$": {"type": "number"}},
    "additionalProperties": False,
}

# --- 2. Configuración de rendijas (fichero de entrada) ---

SLIT_CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "wavelength": {"type": "number", "exclusiveMinimum": 0},
        "screen_distance": {"type": "number", "exclusiveMinimum": 0},
        "amplitudes": {"type": "array", "items": COMPLEX_PAIR_SCHEMA, "minItems": 1},
        "offsets": {"type": "array", "items": {"type": "number"}, "minItems": 1},
        "envelope_width": {"type": "number", "exclusiveMinimum": 0},
    },
    "required": ["n", "wavelength", "screen_distance", "amplitudes", "offsets"],
    "additionalProperties": False,
}

# --- 3. Documentos de salida de la CLI ---

EXPAND_SCHEMA = {
    "type": "object",
    "properties": {
        "construct": {"type": "string", "enum": ["xor", "upsilon", "delta", "exactly-one"]},
        "n": {"type": "integer", "minimum": 1},
        "polynomial": POLYNOMIAL_TEXT_SCHEMA,
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "monomial": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                    "coefficient": {"type": "integer"},
                },
                "required": ["monomial", "coefficient"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["construct", "n", "polynomial", "terms"],
    "additionalProperties": False,
}

TRUTH_TABLE_SCHEMA = {
    "type": "object",
    "properties": {
        "variables": {"type": "array", "items": {"type": "string"}},
        "values": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["variables", "values"],
    "additionalProperties": False,
}

PARSE_SCHEMA = {
    "type": "object",
    "properties": {
        "formula": {"type": "string"},
        "variables": {"type": "array", "items": {"type": "string"}},
        "polynomial": POLYNOMIAL_TEXT_SCHEMA,
        "equivalent": {"type": "boolean"},
        "witness": {"type": ["object", "null"], "additionalProperties": {"type": "integer", "enum": [0, 1]}},
    },
    "required": ["formula"],
    "additionalProperties": True,
}

VERIFY_SCHEMA = {
    "type": "object",
    "properties": {
        "identity": {"type": "string", "enum": ["reduction", "coefficients", "ks", "blocking"]},
        "passed": {"type": "boolean"},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"n": {"type": "integer", "minimum": 1}, "equal": {"type": "boolean"}},
                "required": ["n", "equal"],
            },
        },
    },
    "required": ["identity", "passed", "results"],
    "additionalProperties": False,
}

INTERFERENCE_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "sorkin_values": SORKIN_VALUES_SCHEMA,
        "pairwise_residual": {"type": "number"},
        "decohered_residual": {"type": "number"},
    },
    "required": ["n", "sorkin_values", "pairwise_residual", "decohered_residual"],
    "additionalProperties": False,
}

SCAN_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "n": {"type": "integer", "minimum": 2},
        "model": {"type": "string"},
        "epsilon": {"type": "number"},
        "points": {"type": "integer", "minimum": 1},
        "max_sorkin": SORKIN_VALUES_SCHEMA,
        "max_pairwise_residual": {"type": "number", "minimum": 0},
        "max_decohered_residual": {"type": "number", "minimum": 0},
    },
    "required": ["n", "model", "epsilon", "points", "max_sorkin",
                 "max_pairwise_residual", "max_decohered_residual"],
    "additionalProperties": False,
}

# Diccionario final de esquemas para la función de validación
DOCUMENT_SCHEMAS = {
    "slit_config": SLIT_CONFIG_SCHEMA,
    "expand": EXPAND_SCHEMA,
    "table": TRUTH_TABLE_SCHEMA,
    "parse": PARSE_SCHEMA,
    "verify": VERIFY_SCHEMA,
    "interference_report": INTERFERENCE_REPORT_SCHEMA,
    "scan_report": SCAN_REPORT_SCHEMA,
}


# --- 4. Función de Validación Principal ---

def validate_document(document: dict, kind: str) -> bool:
    """
    Valida un documento JSON contra el esquema registrado para 'kind'.
    """
    if kind not in DOCUMENT_SCHEMAS:
        raise KeyError(f"Tipo de documento '{kind}' desconocido")

    try:
        validate(instance=document, schema=DOCUMENT_SCHEMAS[kind])
        return True
    except ValidationError as e:
        logger.error(f"FALLO DE VALIDACIÓN: el documento no cumple con el esquema '{kind}'")
        logger.error(f"Error detallado: {e.message}")
        raise ValidationError(f"JSON Validation Error for {kind}: {e.message}")
