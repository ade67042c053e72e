"""Command-line interface.

Exit codes: 0 ok, 2 usage, 3 parse, 4 numerical (not positive definite or
degenerate model), 5 I/O, 6 unusable dataset (missing class, too few rows).
"""
import argparse
import json
import sys

from . import __version__
from .documents import (
    REPORT_SCHEMA,
    DocumentError,
    dumps_curve,
    dumps_labeled_csv,
    dumps_model,
    fmt,
    loads_curve,
    loads_model,
    read_labeled_csv,
)
from .empirical import mc_confusion, simulate_dataset
from .errors import DatasetError, DegenerateModelError, DomainError, NotPositiveDefiniteError
from .lda import fit
from .roc import auc, confusion_at, fpr_at, sample_roc, tpr_at, youden
from .svgplot import render

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_NUMERIC = 4
EXIT_IO = 5
EXIT_DATA = 6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_IO) from exc


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from exc


def _load_model(path):
    text = _read(path)
    try:
        return loads_model(text)
    except NotPositiveDefiniteError:
        raise
    except ValueError as exc:
        raise DocumentError(f"{path}: {exc}") from exc


def _emit(args, payload, text):
    """Print ``payload`` as JSON under --json, else ``text``."""
    if args.json:
        out = json.dumps(payload, indent=2) + "\n"
    else:
        out = text if text.endswith("\n") else text + "\n"
    _write(args.output, out)


def _cells_text(cells):
    return "  ".join(f"{k.upper()}={fmt(v)}" for k, v in cells.items())


# ------------------------------------------------------------------ verbs

def cmd_fit(args):
    data, names = read_labeled_csv(_read(args.input), args.label_column)
    model = fit(data)
    if args.output is None:
        raise CliError("fit needs --output for the model file", EXIT_USAGE)
    _write(args.output, dumps_model(model))
    n0, n1 = data.class_counts()
    summary = {"n": data.dim, "m": data.size, "class0": n0, "class1": n1, "delta": model.delta}
    line = f"n={data.dim} m={data.size} class0={n0} class1={n1} delta={fmt(model.delta)}\n"
    sys.stdout.write(json.dumps(summary) + "\n" if args.json else line)
    return model


def cmd_roc(args):
    model = _load_model(args.model)
    if args.points < 2:
        raise CliError("--points must be at least 2", EXIT_USAGE)
    curve = sample_roc(model, args.points)
    _write(args.output, dumps_curve(curve))
    return curve


def cmd_auc(args):
    model = _load_model(args.model)
    value = auc(model)
    _emit(args, {"auc": value, "delta": model.delta}, f"auc={fmt(value)}")


def cmd_youden(args):
    y = youden(_load_model(args.model))
    payload = {"theta_star": y.theta_star, "fpr": y.fpr_at_star, "tpr": y.tpr_at_star,
               "j_max": y.j_max, "degenerate": y.degenerate}
    text = " ".join(f"{k}={fmt(v) if isinstance(v, float) else v}" for k, v in payload.items())
    _emit(args, payload, text)


def cmd_confusion(args):
    c = confusion_at(_load_model(args.model), args.theta)
    _emit(args, {"theta": c.theta, **c.as_dict()}, f"theta={fmt(c.theta)}  {_cells_text(c.as_dict())}")


def build_report(model, theta, samples, seed):
    c = confusion_at(model, theta)
    y = youden(model)
    rates = None if model.degenerate else {"fpr": fpr_at(model, theta), "tpr": tpr_at(model, theta)}
    mc = None
    if samples > 0:
        rep = mc_confusion(model, theta, samples, seed)
        mc = {"samples": rep.sample_count, "seed": rep.seed, "estimated": rep.estimated,
              "max_abs_gap": rep.max_abs_gap}
    return {
        "schema_version": "1",
        "model": {"dim": model.dim, "p0": model.p0, "scale": model.scale, "delta": model.delta,
                  "degenerate": model.degenerate},
        "theta": c.theta,
        "confusion": c.as_dict(),
        "rates": rates,
        "youden": {"theta_star": y.theta_star, "fpr": y.fpr_at_star, "tpr": y.tpr_at_star,
                   "j_max": y.j_max, "degenerate": y.degenerate},
        "auc": auc(model),
        "monte_carlo": mc,
    }


def report_text(rep):
    m, y = rep["model"], rep["youden"]
    lines = [
        f"model      n={m['dim']} p0={fmt(m['p0'])} scale={fmt(m['scale'])} delta={fmt(m['delta'])}"
        + ("  [degenerate]" if m["degenerate"] else ""),
        f"threshold  theta={fmt(rep['theta'])}",
        f"confusion  {_cells_text(rep['confusion'])}",
    ]
    if rep["rates"] is not None:
        lines.append(f"rates      FPR={fmt(rep['rates']['fpr'])} TPR={fmt(rep['rates']['tpr'])}")
    lines.append(f"youden     theta*={fmt(y['theta_star'])} FPR={fmt(y['fpr'])} TPR={fmt(y['tpr'])} "
                 f"J={fmt(y['j_max'])}")
    lines.append(f"auc        {fmt(rep['auc'])}")
    mc = rep["monte_carlo"]
    if mc is not None:
        lines.append(f"monte carlo samples={mc['samples']} seed={mc['seed']}  {_cells_text(mc['estimated'])}")
        lines.append(f"           max_abs_gap={fmt(mc['max_abs_gap'])}")
    return "\n".join(lines) + "\n"


def cmd_report(args):
    if args.samples < 0:
        raise CliError("--samples must be non-negative", EXIT_USAGE)
    rep = build_report(_load_model(args.model), args.theta, args.samples, args.seed)
    _emit(args, rep, report_text(rep))
    return rep


def cmd_simulate(args):
    if args.count < 1:
        raise CliError("--count must be at least 1", EXIT_USAGE)
    model = _load_model(args.model)
    _write(args.output, dumps_labeled_csv(simulate_dataset(model, args.count, args.seed)))


def cmd_plot(args):
    curve = loads_curve(_read(args.curve))
    marker = None
    if args.youden_model:
        y = youden(_load_model(args.youden_model))
        marker = (y.fpr_at_star, y.tpr_at_star)
    if args.output is None:
        raise CliError("plot needs --output for the SVG file", EXIT_USAGE)
    _write(args.output, render(curve, marker))


def cmd_schema(args):
    _write(args.output, json.dumps(REPORT_SCHEMA, indent=2) + "\n")


# ------------------------------------------------------------------ parser

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("-o", "--output", default=None, help="output path (default stdout)")

    parser = argparse.ArgumentParser(prog="ldaroc", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ldaroc {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("fit", parents=[common], help="fit a model from a labeled CSV")
    p.add_argument("input")
    p.add_argument("--label-column", default="label")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("roc", parents=[common], help="write the analytic ROC curve as CSV")
    p.add_argument("model")
    p.add_argument("--points", type=int, default=256)
    p.set_defaults(func=cmd_roc)

    for name, func, help_ in (("auc", cmd_auc, "area under the curve"),
                              ("youden", cmd_youden, "Youden-optimal operating point")):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("model")
        p.set_defaults(func=func)

    p = sub.add_parser("confusion", parents=[common], help="confusion distribution at a threshold")
    p.add_argument("model")
    p.add_argument("--theta", type=float, default=0.0)
    p.set_defaults(func=cmd_confusion)

    p = sub.add_parser("report", parents=[common], help="analytic summary with optional Monte Carlo check")
    p.add_argument("model")
    p.add_argument("--theta", type=float, default=0.0)
    p.add_argument("--samples", type=int, default=0)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("simulate", parents=[common], help="draw a labeled CSV from a model")
    p.add_argument("model")
    p.add_argument("--count", type=int, default=1000)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("plot", parents=[common], help="render a curve CSV as SVG")
    p.add_argument("curve")
    p.add_argument("--youden-model", default=None, help="mark the Youden point of this model")
    p.set_defaults(func=cmd_plot)

    p = sub.add_parser("schema", parents=[common], help="print the report JSON schema")
    p.set_defaults(func=cmd_schema)
    return parser


_EXIT_CODES = (
    (CliError, None),
    (DocumentError, EXIT_PARSE),
    (DatasetError, EXIT_DATA),
    (NotPositiveDefiniteError, EXIT_NUMERIC),
    (DegenerateModelError, EXIT_NUMERIC),
    (DomainError, EXIT_USAGE),
)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except tuple(t for t, _ in _EXIT_CODES) as exc:
        code = next(c for t, c in _EXIT_CODES if isinstance(exc, t))
        print(f"ldaroc {args.verb}: {exc}", file=sys.stderr)
        return exc.code if code is None else code
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
