"""
Línea de comandos del workbench.

Uso:
    python -m src.cli construct --name 3me --p 5 --upto 2
    python -m src.cli growth --name kle96
    python -m src.cli growth --series K --n 2 --m 0 --r 0
    python -m src.cli verify-all --filter p=3

Códigos de salida: 0 correcto, 1 discrepancia en verify, 2 parámetros no válidos,
3 combinación (p, nombre) no soportada.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from .core.distrib import algebraic_growth, flag, growth_formula
from .core.models import Series, WorkbenchConfig, WorkbenchError
from .data.catalog import construct, get_entry, load_fixture, verify, verify_all
from .data.parser import parse_heights
from .services.report import (
    export_to_excel, slice_document, slice_text, to_json, verify_document, verify_table,
)

logger = logging.getLogger(__name__)

NO_DISTRIBUTION = "depth 1: no non-integrable distribution"


def _config(args) -> WorkbenchConfig:
    return WorkbenchConfig.from_env(
        p=args.p,
        truncation=getattr(args, "upto", None),
        seed=args.seed,
        output_format=getattr(args, "format", None),
    )


def _params(args) -> dict:
    params = {"n": args.n, "m": args.m, "r": args.r}
    if args.N:
        params["heights"] = parse_heights(args.N)
    return params


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text + "\n", encoding="utf-8")
        logger.info(f"Escrito {output}")
    else:
        print(text)


# =============================================
# COMANDOS
# =============================================

def cmd_construct(args) -> int:
    config = _config(args)
    real = construct(args.name, args.p, args.upto, config, **_params(args))
    g = real.slice
    if config.output_format == "text":
        _emit(slice_text(g), args.output)
    else:
        _emit(to_json(slice_document(g, notes=real.notes)), args.output)
    return 0


def _growth_source(name: str) -> str:
    try:
        return load_fixture(name).get("growth_source", "algebraic")
    except WorkbenchError:
        return "algebraic"


def cmd_growth(args) -> int:
    if args.series:
        growth = growth_formula(Series(args.series.upper()), args.n or 0, args.m or 0, args.r or 0)
        print(growth)
        return 0
    if not args.name:
        logger.error("growth necesita --name o --series")
        return 2
    config = _config(args)
    real = construct(args.name, args.p, args.upto, config, **_params(args))
    negative = real.slice.negative()
    if negative.depth <= 1:
        print(NO_DISTRIBUTION)
        return 0
    if _growth_source(args.name) == "flag" and real.flag_fields:
        growth = flag(real.flag_fields)
    else:
        growth = algebraic_growth(negative)
    print(growth)
    return 0


def cmd_verify(args) -> int:
    report = verify(args.name, args.upto, _config(args))
    print(to_json(verify_document([report])) if args.format != "text" else _summary_line(report))
    return 0 if report.ok else 1


def _summary_line(report) -> str:
    line = f"{report.name:<14} {report.status.value.upper():<10} {report.computed.get('growth', '')}"
    if report.diffs:
        line += "  " + "; ".join(report.diffs)
    return line


def cmd_verify_all(args) -> int:
    reports = verify_all(args.filter, _config(args), workers=args.workers)
    if args.excel:
        Path(args.excel).write_bytes(export_to_excel({"Verificación": verify_table(reports)}))
    if args.format == "text":
        for report in reports:
            print(_summary_line(report))
    else:
        print(to_json(verify_document(reports)))
    failed = [r.name for r in reports if not r.ok]
    if failed:
        logger.error(f"Discrepancias en {', '.join(failed)}")
        return 1
    return 0


# =============================================
# ARGUMENTOS
# =============================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="liewb", description="Workbench de álgebras de Lie vectoriales modulares")
    parser.add_argument("--verbose", action="store_true", help="registro DEBUG")
    parser.add_argument("--quiet", action="store_true", help="sólo avisos y errores")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=int, default=None, help="característica (0 o primo)")
        p.add_argument("--upto", type=int, default=None, help="truncación en grado")
        p.add_argument("--seed", type=int, default=None, help="semilla de las pruebas aleatorias")
        p.add_argument("--format", choices=["json", "text"], default="json")

    def family(p: argparse.ArgumentParser) -> None:
        p.add_argument("--name", help="entrada del catálogo")
        p.add_argument("--n", type=int, default=None)
        p.add_argument("--m", type=int, default=None)
        p.add_argument("--r", type=int, default=None)
        p.add_argument("--N", default=None, help='alturas, p. ej. "1,1,inf"')

    p_construct = sub.add_parser("construct", help="construye una entrada del catálogo")
    common(p_construct)
    family(p_construct)
    p_construct.add_argument("--output", default=None, help="fichero de salida")
    p_construct.set_defaults(func=cmd_construct, required_name=True)

    p_growth = sub.add_parser("growth", help="vector de crecimiento de una entrada o de una serie")
    common(p_growth)
    family(p_growth)
    p_growth.add_argument("--series", choices=["K", "M", "k", "m"], default=None)
    p_growth.set_defaults(func=cmd_growth)

    p_verify = sub.add_parser("verify", help="compara una entrada con su fixture")
    common(p_verify)
    p_verify.add_argument("--name", required=True)
    p_verify.set_defaults(func=cmd_verify)

    p_all = sub.add_parser("verify-all", help="verifica todos los fixtures")
    common(p_all)
    p_all.add_argument("--filter", default=None, help='p. ej. "p=3" o "family=skryabin"')
    p_all.add_argument("--excel", default=None, help="exporta el resumen a un libro Excel")
    p_all.add_argument("--workers", type=int, default=1, help="procesos en paralelo")
    p_all.set_defaults(func=cmd_verify_all)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, stream=sys.stderr)
    if getattr(args, "required_name", False) and not args.name:
        parser.error("construct necesita --name")
    try:
        if getattr(args, "name", None):
            get_entry(args.name)
        return args.func(args)
    except WorkbenchError as e:
        logger.error(str(e))
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
