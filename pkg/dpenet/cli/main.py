"""Punto de entrada ``dpenet``."""
from __future__ import annotations

import argparse
import logging
import sys
from typing import Callable, NoReturn, Optional, Sequence

from .._config import Config
from ..config_file import parse_hw, parse_int_list
from ..errors import DpeNetError
from . import commands

logger = logging.getLogger(__name__)

USAGE_EXIT = 2
IO_EXIT = 4


class CliArgumentParser(argparse.ArgumentParser):
    """Los errores de uso también salen con el prefijo ``error:<categoría>:``."""

    def error(self, message: str) -> NoReturn:
        sys.stderr.write(f"error:usage: {message}\n")
        sys.exit(USAGE_EXIT)


def _hw(text: str) -> tuple[int, int]:
    try:
        return parse_hw(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _widths(text: str) -> tuple[int, ...]:
    try:
        return parse_int_list(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _add_training_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="fichero 'clave = valor' (los flags tienen prioridad)")
    p.add_argument("--data", help="directorio del dataset")
    p.add_argument("--out", help="ruta de salida")
    p.add_argument("--variant", choices=["dual_only", "single_only", "both"],
                   help="variante de red (por defecto: both)")
    p.add_argument("--lr", type=float, help="tasa de aprendizaje (por defecto: 1e-4)")
    p.add_argument("--epochs", type=int, help="épocas (por defecto: 40)")
    p.add_argument("--batch-size", dest="batch_size", type=int, help="tamaño de lote (por defecto: 8)")
    p.add_argument("--seed", type=int, help="semilla (por defecto: 0)")
    p.add_argument("--eval-every", dest="eval_every", type=int, help="épocas entre validaciones (por defecto: 1)")
    p.add_argument("--momentum", type=float, help=f"momento SGDM (por defecto: {Config.sgdm_momentum})")
    p.add_argument("--threshold", type=float, help=f"umbral de binarización (por defecto: {Config.threshold})")
    p.add_argument("--widths", type=_widths, help="anchos por etapa, p.ej. 16,32,64,128")
    p.add_argument("--blocks-per-stage", dest="blocks_per_stage", type=int, help="bloques por etapa (por defecto: 1)")
    p.add_argument("--size", type=_hw, help="resolución HxW de entrada (por defecto: la del dataset)")


def build_parser() -> argparse.ArgumentParser:
    parser = CliArgumentParser(prog="dpenet", description="Red de segmentación de doble codificador paralelo.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v INFO, -vv DEBUG")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliArgumentParser)

    p = sub.add_parser("gen-data", help="genera un dataset sintético")
    p.add_argument("--n", type=int, required=True, help="número de muestras")
    p.add_argument("--size", type=_hw, default=(288, 384), help="resolución HxW (por defecto: 288x384)")
    p.add_argument("--seed", type=int, default=0, help="semilla (por defecto: 0)")
    p.add_argument("--out", required=True, help="directorio de salida")
    p.set_defaults(handler=commands.cmd_gen_data)

    p = sub.add_parser("train", help="entrena una red y guarda checkpoint y log CSV")
    _add_training_flags(p)
    p.add_argument("--log", help="CSV de entrenamiento (por defecto: <out>.csv)")
    p.set_defaults(handler=commands.cmd_train)

    p = sub.add_parser("eval", help="evalúa un checkpoint sobre una partición")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--data", required=True)
    p.add_argument("--split", choices=["test", "val"], default="test", help="(por defecto: test)")
    p.add_argument("--threshold", type=float, default=Config.threshold, help="(por defecto: 0.5)")
    p.add_argument("--format", choices=["text", "record"], default="text", help="(por defecto: text)")
    p.set_defaults(handler=commands.cmd_eval)

    p = sub.add_parser("infer", help="predice la máscara de una imagen PPM")
    p.add_argument("--ckpt", required=True)
    p.add_argument("--image", required=True, help="imagen de entrada .ppm")
    p.add_argument("--mask", required=True, help="máscara de salida .pgm")
    p.add_argument("--threshold", type=float, default=Config.threshold, help="(por defecto: 0.5)")
    p.set_defaults(handler=commands.cmd_infer)

    p = sub.add_parser("ablate", help="entrena y evalúa las cuatro variantes de la ablación")
    _add_training_flags(p)
    p.set_defaults(handler=commands.cmd_ablate)

    p = sub.add_parser("gradcheck", help="comprobación de gradientes por diferencias finitas")
    p.add_argument("--seed", type=int, default=0, help="(por defecto: 0)")
    p.set_defaults(handler=commands.cmd_gradcheck)

    p = sub.add_parser("count-params", help="número exacto de parámetros entrenables")
    p.add_argument("--config")
    p.add_argument("--variant", choices=["dual_only", "single_only", "both"])
    p.add_argument("--widths", type=_widths)
    p.add_argument("--blocks-per-stage", dest="blocks_per_stage", type=int)
    p.add_argument("--size", type=_hw)
    p.add_argument("--breakdown", action="store_true", help="recuento por capa")
    p.set_defaults(handler=commands.cmd_count_params)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(asctime)s %(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except DpeNetError as exc:
        sys.stderr.write(f"error:{exc.category}: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(f"error:io: {exc}\n")
        return IO_EXIT


if __name__ == "__main__":
    sys.exit(main())
