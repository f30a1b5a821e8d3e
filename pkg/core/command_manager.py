# -*- coding: utf-8 -*-
"""
Interfaz de línea de comandos: un subcomando por responsabilidad.

    expand    construcciones simbólicas (xor, upsilon, delta, exactly-one)
    table     tabla de verdad de una fórmula o construcción
    parse     AST, polinomio o equivalencia de fórmulas
    verify    identidades (reduction, coefficients, ks, blocking) en un rango de n
    sorkin    informe de jerarquía a partir de una tabla `subset,P`
    simulate  patrón e informe a partir de una configuración de rendijas

Estado de salida: 0 éxito, 1 fallo de verificación, 2 error de uso o de entrada.
"""
import argparse
import json
import logging
import logging.handlers
import os
import sys
from enum import IntEnum
from typing import Callable, Sequence

from jsonschema import ValidationError

from algebra import constructs, formula_parser, poly_core
from core import settings
from core.job_broker import JobBroker
from core.json_validator import validate_document
from physics import interference, quantum_sim

logger = logging.getLogger("CommandManager")

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class ExitStatus(IntEnum):
    SUCCESS = 0
    VERIFICATION_FAILURE = 1
    USAGE_ERROR = 2


# --- Función de Configuración de Logging ---
def setup_system_logging(log_file_name: str = 'system.log'):
    """
    Configura el sistema de logging: fichero rotativo (DEBUG) en settings.LOG_DIR
    y consola (WARNING) en el flujo de error, para no mezclar logs con los informes.
    """
    os.makedirs(settings.LOG_DIR, exist_ok=True)
    root_logger = logging.getLogger()

    # Solo se retiran los handlers instalados por esta función
    for h in list(root_logger.handlers):
        if getattr(h, "_slitlogic_handler", False):
            h.close()
            root_logger.removeHandler(h)

    formatter = logging.Formatter(LOG_FORMAT)

    file_handler = logging.handlers.RotatingFileHandler(
        os.path.join(settings.LOG_DIR, log_file_name), maxBytes=10*1024*1024, backupCount=5, encoding='utf-8'
    )
    file_handler.setFormatter(formatter)
    file_handler.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler.setLevel(logging.WARNING)

    for handler in (file_handler, console_handler):
        handler._slitlogic_handler = True
        root_logger.addHandler(handler)
    root_logger.setLevel(logging.DEBUG)

    logging.getLogger("LoggingSetup").info(f"Logging configurado en: {log_file_name}")


# --- Análisis de argumentos ---

class UsageError(Exception):
    """Argumentos inválidos; se traduce a estado 2."""


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage().strip()}\n{self.prog}: error: {message}")


def parse_range(spec: str) -> list[int]:
    """'2..10' -> [2, ..., 10]; '5' -> [5]."""
    try:
        if ".." in spec:
            low, high = (int(part) for part in spec.split("..", 1))
        else:
            low = high = int(spec)
    except ValueError:
        raise UsageError(f"Rango inválido {spec!r}; formato a..b o un entero") from None
    if low > high:
        raise UsageError(f"Rango vacío {spec!r}")
    return list(range(low, high + 1))


def _parse_order(text: str | None) -> list[str] | None:
    if text is None:
        return None
    return [name.strip() for name in text.split(",") if name.strip()]


# Opciones cuyo valor puede empezar por "-" (p. ej. --grid -1:1:101)
DASHED_VALUE_OPTIONS = ("--grid",)


def _attach_dashed_values(argv: Sequence[str]) -> list[str]:
    """Une "--grid VALOR" en "--grid=VALOR" para que argparse no tome VALOR por una opción."""
    joined = []
    items = iter(argv)
    for item in items:
        if item in DASHED_VALUE_OPTIONS:
            value = next(items, None)
            joined.append(item if value is None else f"{item}={value}")
        else:
            joined.append(item)
    return joined


def build_parser() -> argparse.ArgumentParser:
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")

    parser = _ArgumentParser(prog="slitlogic", description="Lógica de interferencia de N rendijas")
    parser.add_argument("--log-file", default="system.log", help="Fichero de log dentro de LOG_DIR")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    sub.required = True

    expand = sub.add_parser("expand", parents=[common], help="Expande una construcción simbólica")
    expand.add_argument("construct", nargs="?", choices=list(CONSTRUCTS))
    expand.add_argument("--n", type=int)
    for name in CONSTRUCTS:
        expand.add_argument(f"--{name}", type=int, metavar="N", dest=f"shortcut_{name.replace('-', '_')}")

    table = sub.add_parser("table", parents=[common], help="Tabla de verdad")
    source = table.add_mutually_exclusive_group(required=True)
    source.add_argument("--formula")
    source.add_argument("--construct", choices=list(CONSTRUCTS))
    table.add_argument("--n", type=int)
    table.add_argument("--order", help="Orden de variables separado por comas")

    parse = sub.add_parser("parse", parents=[common], help="Analiza fórmulas")
    parse.add_argument("formula", nargs="?")
    parse.add_argument("--to-poly", metavar="FORMULA")
    parse.add_argument("--check-equiv", nargs=2, metavar=("F", "G"))
    parse.add_argument("--order", help="Orden de variables separado por comas")

    verify = sub.add_parser("verify", parents=[common], help="Verifica identidades en un rango de n")
    verify.add_argument("--identity", choices=list(IDENTITIES), default="reduction")
    verify.add_argument("--n", default="2..10")

    sorkin = sub.add_parser("sorkin", parents=[common], help="Informe de Sorkin desde una tabla subset,P")
    sorkin.add_argument("path", help="Fichero de probabilidades ('-' para la entrada estándar)")

    simulate = sub.add_parser("simulate", parents=[common], help="Simula un patrón de N rendijas")
    simulate.add_argument("config", help="Configuración JSON de las rendijas")
    simulate.add_argument("--model", choices=quantum_sim.available_models(), default=quantum_sim.BORN)
    simulate.add_argument("--epsilon", type=float, default=0.0)
    simulate.add_argument("--grid", default="-1:1:101", help="start:stop:count")
    simulate.add_argument("--pattern", help="Ruta del CSV x,subset,P (por defecto no se escribe)")
    return parser


# --- Subcomandos ---

CONSTRUCTS: dict[str, Callable[[int], poly_core.MultilinearPoly]] = {
    "xor": constructs.xor_chain,
    "upsilon": constructs.upsilon,
    "delta": constructs.delta,
    "exactly-one": constructs.exactly_one,
}


def _emit(document: dict, kind: str, text: str, output_format: str):
    if output_format == "json":
        validate_document(document, kind)
        sys.stdout.write(json.dumps(document, indent=2) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _command_expand(args) -> ExitStatus:
    chosen = [(name, getattr(args, f"shortcut_{name.replace('-', '_')}")) for name in CONSTRUCTS]
    chosen = [(name, n) for name, n in chosen if n is not None]
    if args.construct is not None:
        if args.n is None:
            raise UsageError("expand: falta --n")
        chosen.append((args.construct, args.n))
    if len(chosen) != 1:
        raise UsageError("expand: indica exactamente una construcción (ej: --xor 3 o 'xor --n 3')")
    name, n = chosen[0]
    poly = CONSTRUCTS[name](n)
    document = {
        "construct": name,
        "n": n,
        "polynomial": poly_core.render(poly),
        "terms": [{"monomial": list(poly_core.mask_to_indices(m)), "coefficient": c}
                  for m, c in poly_core.sorted_terms(poly)],
    }
    _emit(document, "expand", poly_core.render(poly), args.format)
    return ExitStatus.SUCCESS


def _render_table(names: Sequence[str], table: poly_core.TruthTable) -> str:
    lines = [",".join(list(names) + ["value"])]
    for point, value in enumerate(table.values):
        bits = [str(point >> i & 1) for i in range(len(names))]
        lines.append(",".join(bits + [str(value)]))
    return "\n".join(lines) + "\n"


def _command_table(args) -> ExitStatus:
    if args.formula is not None:
        ast = formula_parser.parse(args.formula)
        order = _parse_order(args.order) or formula_parser.variables(ast)
        poly = formula_parser.ast_to_poly(ast, order)
        names = order
    else:
        if args.n is None:
            raise UsageError("table: --construct necesita --n")
        poly = CONSTRUCTS[args.construct](args.n)
        names = [f"x{i}" for i in range(1, args.n + 1)]
    table = poly_core.to_truth_table(poly)
    document = {"variables": list(names), "values": list(table.values)}
    _emit(document, "table", _render_table(names, table), args.format)
    return ExitStatus.SUCCESS


def _command_parse(args) -> ExitStatus:
    if args.check_equiv:
        f, g = (formula_parser.parse(text) for text in args.check_equiv)
        result = formula_parser.equivalence(f, g)
        document = {
            "formula": formula_parser.render(f),
            "other": formula_parser.render(g),
            "variables": list(result.variable_order),
            "equivalent": result.equivalent,
            "witness": result.witness,
        }
        if result.equivalent:
            text = "equivalent"
        else:
            witness = " ".join(f"{k}={v}" for k, v in result.witness.items())
            text = f"not equivalent: {witness}"
        _emit(document, "parse", text, args.format)
        return ExitStatus.SUCCESS

    source = args.to_poly if args.to_poly is not None else args.formula
    if source is None:
        raise UsageError("parse: indica una fórmula, --to-poly o --check-equiv")
    ast = formula_parser.parse(source)
    order = _parse_order(args.order) or formula_parser.variables(ast)
    document = {"formula": formula_parser.render(ast), "variables": order}
    if args.to_poly is not None:
        poly = formula_parser.ast_to_poly(ast, order)
        document["polynomial"] = poly_core.render(poly)
        text = document["polynomial"]
    else:
        text = document["formula"]
    _emit(document, "parse", text, args.format)
    return ExitStatus.SUCCESS


def _ks_passed(result: constructs.AssignmentSearchResult) -> bool:
    expected = [(1,)] if result.n == 1 else []
    return result.consistent == expected


# identidad -> (función por n, n mínimo, a dict, a texto, criterio de éxito)
IDENTITIES = {
    "reduction": (constructs.verify_reduction_identity, 2, constructs.identity_report_to_dict,
                  constructs.render_identity_report, lambda r: r.equal),
    "coefficients": (constructs.verify_coefficient_laws, 1, constructs.coefficient_report_to_dict,
                     constructs.render_coefficient_report, lambda r: r.equal),
    "ks": (constructs.noncontextual_assignments, 1, constructs.assignment_result_to_dict,
           constructs.render_assignment_result, _ks_passed),
    "blocking": (constructs.verify_blocking_reduction, 2, constructs.blocking_report_to_dict,
                 constructs.render_blocking_report, lambda r: r.equal),
}


def _command_verify(args) -> ExitStatus:
    check, minimum, to_dict, to_text, passed = IDENTITIES[args.identity]
    values = parse_range(args.n)
    if values[0] < minimum or values[-1] > settings.MAX_SYMBOLIC_VARS:
        raise UsageError(f"verify {args.identity}: n debe estar en {minimum}..{settings.MAX_SYMBOLIC_VARS}")

    broker = JobBroker()
    jobs = [(f"{args.identity}[n={n}]", lambda n=n: check(n)) for n in values]
    results = broker.run(jobs)

    rows = []
    lines = []
    all_passed = True
    for result in results:
        ok = passed(result)
        all_passed &= ok
        row = to_dict(result)
        row["equal"] = ok
        rows.append(row)
        lines.append(to_text(result))
        if not ok:
            logger.error(f"Identidad {args.identity} FALLIDA para n={result.n}")
    lines.append(f"passed={str(all_passed).lower()}")
    document = {"identity": args.identity, "passed": all_passed, "results": rows}
    _emit(document, "verify", "\n".join(lines), args.format)
    return ExitStatus.SUCCESS if all_passed else ExitStatus.VERIFICATION_FAILURE


def _command_sorkin(args) -> ExitStatus:
    if args.path == "-":
        text = sys.stdin.read()
    else:
        with open(args.path, "r", encoding="utf-8") as handle:
            text = handle.read()
    data = interference.parse_subset_table(text)
    report = interference.hierarchy_report(data)
    _emit(interference.report_to_dict(report), "interference_report",
          interference.render_report(report), args.format)
    return ExitStatus.SUCCESS


def _command_simulate(args) -> ExitStatus:
    config = quantum_sim.load_slit_config(args.config)
    grid = quantum_sim.parse_grid(args.grid)
    model = quantum_sim.ModelKind(args.model, args.epsilon)
    if config.n < 2:
        raise UsageError("simulate: el informe de jerarquía necesita al menos dos rendijas")
    if args.pattern:
        rows = quantum_sim.generate(config, grid, model)
        with open(args.pattern, "w", encoding="utf-8", newline="") as handle:
            handle.write(quantum_sim.render_pattern(rows))
        logger.info(f"Patrón escrito en {args.pattern}")
    scan = quantum_sim.scan_report(config, grid, model)
    _emit(quantum_sim.scan_report_to_dict(scan), "scan_report",
          quantum_sim.render_scan_report(scan), args.format)
    return ExitStatus.SUCCESS


COMMANDS = {
    "expand": _command_expand,
    "table": _command_table,
    "parse": _command_parse,
    "verify": _command_verify,
    "sorkin": _command_sorkin,
    "simulate": _command_simulate,
}


def run(argv: Sequence[str]) -> int:
    """Punto de entrada de la CLI; devuelve el estado de salida."""
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_dashed_values(argv))
    except UsageError as e:
        sys.stderr.write(f"{e}\n")
        return ExitStatus.USAGE_ERROR
    except SystemExit as e:
        # --help termina con SystemExit(0)
        return int(e.code or 0)

    setup_system_logging(log_file_name=args.log_file)
    logger.info(f"Ejecutando comando '{args.command}' con argumentos {list(argv)}")
    try:
        return int(COMMANDS[args.command](args))
    except UsageError as e:
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        sys.stderr.write(parser.format_usage())
        return ExitStatus.USAGE_ERROR
    except formula_parser.FormulaSyntaxError as e:
        sys.stderr.write(f"{parser.prog}: error de sintaxis: {e}\n")
        return ExitStatus.USAGE_ERROR
    except (ValueError, ValidationError, OSError, json.JSONDecodeError) as e:
        logger.error(f"Entrada inválida para '{args.command}': {e}")
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return ExitStatus.USAGE_ERROR
    except RecursionError:
        logger.error(f"Entrada demasiado anidada para '{args.command}'")
        sys.stderr.write(f"{parser.prog}: error: entrada demasiado anidada\n")
        return ExitStatus.USAGE_ERROR
