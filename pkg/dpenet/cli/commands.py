# commands.py
# --------------------------------------------------------------
# Implementación de los subcomandos de la CLI
# --------------------------------------------------------------
#  Cada comando recibe el argparse.Namespace y devuelve el código de
#  salida (0 = éxito). Los errores se propagan como DpeNetError / OSError
#  y main.py los traduce a "error:<categoría>: mensaje".
# --------------------------------------------------------------
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import pandas as pd

from ..data import (DirectoryDataset, Purpose, generate_synthetic_dataset, read_ppm,
                    resize_bilinear, resize_nearest, split_dataset, write_dataset, write_pgm)
from ..errors import ConfigError, DataError, GradientCheckError
from ..metrics import check_threshold
from ..network import (ABLATION_VARIANTS, build_network, count_parameters, load_checkpoint,
                       parameter_breakdown, save_checkpoint)
from ..printing import ReportFormatter, ReportStyle
from ..tensor import SeededRng, Tensor, stack
from ..train import evaluate, predict, train_loop
from ..verification import run_gradient_suite
from .settings import RunSettings, resolve_settings

logger = logging.getLogger(__name__)


def _out(text: str) -> None:
    sys.stdout.write(text + "\n")


def _require(settings: RunSettings, key: str) -> str:
    if key not in settings.paths:
        raise ConfigError(f"Falta la ruta '{key}' (flag --{key} o clave en el fichero de configuración).")
    return settings.paths[key]


def _open_dataset(settings: RunSettings) -> tuple[DirectoryDataset, RunSettings]:
    """Abre el dataset y fija input_hw: la del fichero/flags o la de las propias muestras."""
    data = DirectoryDataset(_require(settings, "data"))
    ids = data.split.all_ids()
    if not ids:
        raise DataError(f"{data.root / 'split.txt'} no lista ninguna muestra.")
    net = settings.net
    if settings.hw_from_config:
        data.hw = net.input_hw
    else:
        hw = data.sample(ids[0], Purpose.EVAL).hw
        data.access_log.clear()
        net = net.with_overrides(input_hw=hw)
    net.validate()
    return data, RunSettings(net, settings.train, settings.paths, settings.hw_from_config)


# ---------------------------------------------------------------------------
# gen-data ==================================================================
# ---------------------------------------------------------------------------
def cmd_gen_data(args: argparse.Namespace) -> int:
    samples = generate_synthetic_dataset(args.n, args.size, args.seed)
    split = split_dataset([s.id for s in samples], args.seed)
    write_dataset(args.out, samples, split)
    _out(f"generadas {len(samples)} muestras en {args.out}: "
         f"train={len(split.train)} test={len(split.test)} val={len(split.validation)}")
    return 0


# ---------------------------------------------------------------------------
# train =====================================================================
# ---------------------------------------------------------------------------
def cmd_train(args: argparse.Namespace) -> int:
    settings = resolve_settings(args)
    data, settings = _open_dataset(settings)
    train_cfg = settings.train.validate()
    out = Path(_require(settings, "out"))
    log_path = Path(settings.paths.get("log", str(out.with_suffix(".csv"))))

    net = build_network(settings.net, SeededRng(train_cfg.seed))
    log = train_loop(net, data, train_cfg)
    save_checkpoint(net, out)
    log.to_csv(log_path)
    _out(f"checkpoint={out} log={log_path} steps={len(log)} final_loss={log.losses[-1]:.6f}")
    return 0


# ---------------------------------------------------------------------------
# eval / infer ==============================================================
# ---------------------------------------------------------------------------
def cmd_eval(args: argparse.Namespace) -> int:
    net = load_checkpoint(args.ckpt)
    data = DirectoryDataset(args.data, hw=net.cfg.input_hw)
    ids = data.split.get(args.split)
    if not ids:
        raise DataError(f"La partición '{args.split}' está vacía.")
    report = evaluate(net, data, ids, args.threshold)
    ReportFormatter.set_style(ReportStyle.RECORD if args.format == "record" else ReportStyle.TEXT)
    _out(report.render())
    if args.format == "text":
        _out(report.record_line())
    return 0


def cmd_infer(args: argparse.Namespace) -> int:
    threshold = check_threshold(args.threshold)
    net = load_checkpoint(args.ckpt)
    image = read_ppm(args.image)
    original_hw = (int(image.data.shape[1]), int(image.data.shape[2]))
    divisor = net.cfg.divisor
    work_hw = original_hw
    if original_hw[0] % divisor or original_hw[1] % divisor:
        work_hw = net.cfg.input_hw
        image = resize_bilinear(image, work_hw)
    prob = predict(net, stack([image]))
    out_mask = Tensor((prob.data[0] >= threshold).astype(prob.dtype))
    if work_hw != original_hw:
        out_mask = resize_nearest(out_mask, original_hw)
    write_pgm(args.mask, out_mask)
    _out(f"máscara escrita en {args.mask} ({int(out_mask.data.sum())} píxeles de primer plano)")
    return 0


# ---------------------------------------------------------------------------
# ablate ====================================================================
# ---------------------------------------------------------------------------
def cmd_ablate(args: argparse.Namespace) -> int:
    settings = resolve_settings(args)
    data, settings = _open_dataset(settings)
    out_dir = Path(_require(settings, "out"))
    out_dir.mkdir(parents=True, exist_ok=True)
    eval_ids = data.split.test or data.split.validation
    if not eval_ids:
        raise DataError("No hay muestras de test ni de validación para la ablación.")

    rows = []
    for item in ABLATION_VARIANTS:
        net_cfg = item.net_config(settings.net)
        lr = item.learning_rate(settings.train.effective_lr)
        train_cfg = settings.train.with_overrides(lr=lr, lr_override=None).validate()
        logger.info("ablación: %s (%s, lr=%g)", item.name, net_cfg.variant.value, lr)
        net = build_network(net_cfg, SeededRng(train_cfg.seed))
        log = train_loop(net, data, train_cfg)
        log.to_csv(out_dir / f"{item.name}.log.csv")
        report = evaluate(net, data, eval_ids, train_cfg.threshold)
        rows.append({"variant": item.name, "mdice": report.mdice, "accuracy": report.accuracy,
                     "miou": report.miou, "lr": lr, "parameters": count_parameters(net)})

    table = pd.DataFrame(rows, columns=["variant", "mdice", "accuracy", "miou", "lr", "parameters"])
    table.to_csv(out_dir / "ablation.csv", index=False, lineterminator="\n")
    _out(ReportFormatter.ablation_table_str(table))
    return 0


# ---------------------------------------------------------------------------
# gradcheck / count-params ==================================================
# ---------------------------------------------------------------------------
def cmd_gradcheck(args: argparse.Namespace) -> int:
    results = run_gradient_suite(args.seed)
    for r in results:
        _out(f"{r.name:<24} error={r.error:.3e} tol={r.tolerance:.0e} {'ok' if r.passed else 'FALLO'}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise GradientCheckError(f"{len(failed)} comprobaciones fallidas: {', '.join(failed)}")
    return 0


def cmd_count_params(args: argparse.Namespace) -> int:
    settings = resolve_settings(args)
    net = build_network(settings.net.validate(), SeededRng(settings.train.seed))
    if args.breakdown:
        frame = pd.DataFrame(parameter_breakdown(net), columns=["layer", "parameters"])
        _out(ReportFormatter.table_str(frame))
    _out(str(count_parameters(net)))
    return 0
