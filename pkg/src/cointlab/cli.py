"""Command-line interface.

One verb per pipeline stage for standalone debugging (each prints its
section of the report as JSON), plus `report` which composes everything and
writes the text / markdown / JSON renderings and the SVG charts, and
`cv-sim` which regenerates critical-value tables by simulation.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import cv_tables
from .errors import CointlabError, PipelineStageError
from .pipeline import PipelineConfig, ingest_wdi_csv, run_pipeline
from .plots import emit_plots
from .report import FORMATS, render_report

_SECTION_VERBS = {
    "ingest": ("data",),
    "unitroot": ("unit_root_adf", "unit_root_pp"),
    "lagselect": ("lag_selection",),
    "johansen": ("johansen", "johansen_fcdi"),
    "vecm": ("vecm_beta", "vecm_beta_fcdi", "ect"),
    "ols": ("ols", "ols_fcdi"),
    "fcdi": ("fcdi_construction",),
    "causality": ("causality",),
    "diagnose": ("diagnostics",),
}


def _load_config(args) -> PipelineConfig:
    config = PipelineConfig.from_json(args.config)
    updates = {}
    if getattr(args, "seed", None) is not None:
        updates["seed"] = args.seed
    if getattr(args, "out", None) is not None:
        updates["output_dir"] = args.out
    if getattr(args, "format", None):
        updates["output_formats"] = tuple(args.format.split(","))
    return dataclasses.replace(config, **updates) if updates else config


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--config", required=True, help="path to the JSON pipeline config")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--out", default=None, help="override the output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cointlab")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb in _SECTION_VERBS:
        p = sub.add_parser(verb, help=f"run the pipeline and print the {verb} section")
        _add_common(p)

    p = sub.add_parser("report", help="run the full pipeline and write all outputs")
    _add_common(p)
    p.add_argument(
        "--format",
        default=None,
        help=f"comma-separated list from {FORMATS} (default: config output_formats)",
    )

    p = sub.add_parser("plot", help="emit the SVG charts for the ingested series")
    _add_common(p)

    p = sub.add_parser("cv-sim", help="regenerate critical values by simulation")
    p.add_argument("--family", choices=("df", "johansen"), required=True)
    p.add_argument("--det-spec", default=None, help="deterministic specification")
    p.add_argument("--stat", choices=("trace", "max_eigen"), default="trace")
    p.add_argument("--d-minus-r", type=int, default=1)
    p.add_argument("--T", type=int, default=1000)
    p.add_argument("--reps", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None, help="write the table file here instead of stdout")
    return parser


def _run_cv_sim(args) -> str:
    if args.family == "df":
        det = args.det_spec or "constant"
        table = cv_tables.simulate_df_quantiles(det, args.T, args.reps, args.seed)
    else:
        det = args.det_spec or "unrestricted_constant"
        table = cv_tables.simulate_johansen_quantiles(
            args.stat, args.d_minus_r, det, args.T, args.reps, args.seed
        )
    return cv_tables.format_table([table])


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.verb == "cv-sim":
            text = _run_cv_sim(args)
            if args.out:
                Path(args.out).write_text(text)
            else:
                sys.stdout.write(text)
            return 0

        config = _load_config(args)

        if args.verb == "plot":
            data = ingest_wdi_csv(config.data_path, config.variable_map, config.span)
            for path in emit_plots(data, config.output_dir):
                print(path)
            return 0

        report = run_pipeline(config)

        if args.verb == "report":
            out = Path(config.output_dir)
            out.mkdir(parents=True, exist_ok=True)
            ext = {"text": "txt", "markdown": "md", "json": "json"}
            for fmt in config.output_formats:
                (out / f"report.{ext[fmt]}").write_text(render_report(report, fmt))
                print(out / f"report.{ext[fmt]}")
            data = ingest_wdi_csv(config.data_path, config.variable_map, config.span)
            for path in emit_plots(data, out):
                print(path)
            return 0

        payload = {name: report.sections[name] for name in _SECTION_VERBS[args.verb]}
        print(json.dumps(payload, indent=2))
        return 0
    except PipelineStageError as exc:
        print(f"cointlab: {exc}", file=sys.stderr)
        return 1
    except CointlabError as exc:
        print(f"cointlab: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
