"""Deterministic rendering of an assembled report as text, markdown, or JSON.

The JSON form is the machine-readable tree (schema version in the meta
block); the text and markdown forms mirror the table layout of the analysis:
unit roots, lag selection, cointegration rank, normalized long-run vectors
with significance stars, OLS, causality grid, diagnostics.
"""

from __future__ import annotations

import json
from typing import List

from .pipeline import Report

FORMATS = ("text", "markdown", "json")


def _stars(p: float) -> str:
    if p < 0.01:
        return "***"
    if p < 0.05:
        return "**"
    if p < 0.10:
        return "*"
    return ""


def _fmt(x, nd=4) -> str:
    if x is None:
        return "."
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, float):
        return f"{x:.{nd}f}"
    return str(x)


class _Table:
    """Small fixed-width / pipe table builder."""

    def __init__(self, headers: List[str]):
        self.headers = headers
        self.rows: List[List[str]] = []

    def add(self, *cells):
        self.rows.append([str(c) for c in cells])

    def text(self) -> str:
        widths = [len(h) for h in self.headers]
        for row in self.rows:
            widths = [max(w, len(c)) for w, c in zip(widths, row)]
        def line(cells):
            return "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
        sep = "  ".join("-" * w for w in widths)
        return "\n".join([line(self.headers), sep] + [line(r) for r in self.rows])

    def markdown(self) -> str:
        head = "| " + " | ".join(self.headers) + " |"
        sep = "| " + " | ".join("---" for _ in self.headers) + " |"
        body = ["| " + " | ".join(r) + " |" for r in self.rows]
        return "\n".join([head, sep] + body)


def _render_unit_root(section: dict) -> _Table:
    t = _Table(["series", "level stat", "", "diff stat", "", "order"])
    for row in section["rows"]:
        t.add(
            row["series"],
            _fmt(row["level_stat"], 3),
            row["level_stars"],
            _fmt(row["diff_stat"], 3),
            row["diff_stars"],
            row["order"],
        )
    return t


def _render_lag_selection(section: dict) -> _Table:
    t = _Table(["lag", "LL", "LR", "FPE", "AIC", "HQIC", "SBIC"])
    starred = section["starred"]
    for row in section["rows"]:
        def star(criterion, text):
            return text + "*" if starred.get(criterion) == row["lag"] else text
        t.add(
            row["lag"],
            _fmt(row["ll"], 3),
            star("lr", _fmt(row["lr"], 3)) if row["lr"] is not None else ".",
            star("fpe", f"{row['fpe']:.3e}"),
            star("aic", _fmt(row["aic"])),
            star("hqic", _fmt(row["hqic"])),
            star("sbic", _fmt(row["sbic"])),
        )
    return t


def _render_johansen(section: dict) -> _Table:
    t = _Table(["rank", "trace", "cv 5%", "", "max-eigen", "cv 5%", ""])
    for row in section["rows"]:
        t.add(
            row["hypothesized_rank"],
            _fmt(row["trace_stat"]),
            _fmt(row["trace_cv_5pct"], 2),
            "reject" if row["trace_rejects"] else "",
            _fmt(row["max_eigen_stat"]),
            _fmt(row["max_eigen_cv_5pct"], 2),
            "reject" if row["max_eigen_rejects"] else "",
        )
    return t


def _render_beta(section: dict) -> _Table:
    t = _Table(["beta", "coef", "se", "z", "P>|z|", "", "long-run effect"])
    for row in section["rows"]:
        if "se" in row:
            t.add(
                row["variable"],
                _fmt(row["coef"]),
                _fmt(row["se"]),
                _fmt(row["z"], 2),
                _fmt(row["p"], 3),
                _stars(row["p"]),
                row.get("long_run_effect", ""),
            )
        else:
            t.add(row["variable"], _fmt(row["coef"]), ".", ".", ".", "",
                  row.get("long_run_effect", ""))
    return t


def _render_ols(section: dict) -> _Table:
    t = _Table(["variable", "coef", "se", "t", "p", ""])
    for row in section["coefficients"]:
        t.add(
            row["variable"],
            _fmt(row["coef"], 3),
            _fmt(row["se"], 3),
            _fmt(row["t"], 2),
            _fmt(row["p"], 3),
            _stars(row["p"]),
        )
    return t


def _render_causality(section: dict) -> List[str]:
    parts = []
    for target, rows in section["blocks"].items():
        t = _Table(["excluded", "chi-sq", "df", "p"])
        for row in rows:
            t.add(row["excluded"], _fmt(row["chi_square"]), row["df"], _fmt(row["p_value"]))
        parts.append((f"dependent variable: {target}", t))
    return parts


def _render_diagnostics(section: dict):
    lm = _Table(["lag", "chi2", "df", "p"])
    for row in section["lm"]:
        lm.add(row["lag"], _fmt(row["chi_square"], 3), row["df"], _fmt(row["p_value"], 3))
    jb = _Table(["equation", "chi2", "df", "p", "reference p", "flag"])
    for row in section["normality"]:
        jb.add(
            row["equation"],
            _fmt(row["chi_square"], 4),
            row["df"],
            _fmt(row["p_value"], 4),
            _fmt(row.get("reference_p_value"), 4),
            "MISMATCH" if row.get("reference_mismatch") else "",
        )
    notes = [
        row["reference_note"] for row in section["normality"] if row.get("reference_note")
    ]
    return lm, jb, notes


def render_report(report: Report, fmt: str) -> str:
    """Serialize the report in one of the supported formats."""
    if fmt == "json":
        return json.dumps(report.to_tree(), indent=2) + "\n"
    if fmt not in FORMATS:
        raise ValueError(f"format must be one of {FORMATS}, got {fmt!r}")

    md = fmt == "markdown"
    out: List[str] = []

    def heading(text, level=2):
        if md:
            out.append("#" * level + " " + text)
        else:
            out.append(text)
            out.append("=" * len(text) if level == 1 else "-" * len(text))
        out.append("")

    def emit_table(t: _Table):
        out.append(t.markdown() if md else t.text())
        out.append("")

    def emit_kv(pairs):
        for k, v in pairs:
            out.append(f"- {k}: {v}" if md else f"{k}: {v}")
        out.append("")

    meta = report.meta
    s = report.sections

    heading("cointlab analysis report", 1)
    emit_kv(
        [
            ("package", f"{meta['package']} {meta['version']}"),
            ("data file", meta["data_file"]),
            ("data digest", meta["data_digest"][:16]),
            ("config hash", meta["config_hash"][:16]),
            ("span", f"{meta['span'][0]}-{meta['span'][1]}"),
            ("seed", meta["seed"]),
        ]
    )

    heading("Foreign capital index construction")
    emit_kv(
        [("loading " + k, _fmt(v)) for k, v in s["fcdi_construction"]["loadings"].items()]
        + [
            ("explained variance ratio",
             _fmt(s["fcdi_construction"]["explained_variance_ratio"])),
            ("method", meta["index_construction"]),
        ]
    )

    heading("Unit root tests (ADF)")
    emit_table(_render_unit_root(s["unit_root_adf"]))
    heading("Unit root tests (Phillips-Perron)")
    emit_table(_render_unit_root(s["unit_root_pp"]))

    heading("Lag length selection")
    emit_table(_render_lag_selection(s["lag_selection"]))
    ls = s["lag_selection"]
    used = f"{ls['used_lag']} (overridden by config)" if ls["overridden"] else str(ls["used_lag"])
    emit_kv([("used lag", used)])

    heading("Cointegration rank tests")
    emit_table(_render_johansen(s["johansen"]))
    emit_kv([("selected rank", s["johansen"]["selected_rank"])])
    heading("Cointegration rank tests (lngdp, fcdi)")
    emit_table(_render_johansen(s["johansen_fcdi"]))
    emit_kv([("selected rank", s["johansen_fcdi"]["selected_rank"])])

    heading("Normalized long-run relation")
    if "notice" in s["vecm_beta"]:
        emit_kv([("notice", s["vecm_beta"]["notice"])])
    else:
        emit_table(_render_beta(s["vecm_beta"]))
        emit_kv([("note", s["vecm_beta"]["note"])])

    heading("Normalized long-run relation (lngdp, fcdi)")
    if "notice" in s["vecm_beta_fcdi"]:
        emit_kv([("notice", s["vecm_beta_fcdi"]["notice"])])
    else:
        emit_table(_render_beta(s["vecm_beta_fcdi"]))

    heading("Error-correction term")
    if "notice" in s["ect"]:
        emit_kv([("notice", s["ect"]["notice"])])
    else:
        emit_kv(
            [
                ("ADF statistic", _fmt(s["ect"]["adf_stat"], 3) + s["ect"]["adf_stars"]),
                ("decision", s["ect"]["adf_decision"]),
            ]
        )

    heading("Least squares (lngdp on lnfdi, lnrem, lnaid)")
    emit_table(_render_ols(s["ols"]))
    emit_kv(
        [
            ("R-squared", _fmt(s["ols"]["r_squared"])),
            ("adj R-squared", _fmt(s["ols"]["adj_r_squared"])),
            ("F", _fmt(s["ols"]["f_stat"], 2)),
            ("F p-value", _fmt(s["ols"]["f_p_value"])),
        ]
    )
    heading("Least squares (lngdp on fcdi)")
    emit_table(_render_ols(s["ols_fcdi"]))
    emit_kv(
        [
            ("R-squared", _fmt(s["ols_fcdi"]["r_squared"])),
            ("F", _fmt(s["ols_fcdi"]["f_stat"], 2)),
        ]
    )

    heading("Short-run causality (block exogeneity)")
    if "notice" in s["causality"]:
        emit_kv([("notice", s["causality"]["notice"])])
    else:
        for title, t in _render_causality(s["causality"]):
            out.append(("**" + title + "**") if md else title)
            out.append("")
            emit_table(t)
        if "fcdi_pair" in s["causality"]:
            t = _Table(["equation", "excluded", "chi-sq", "df", "p"])
            for eq, row in s["causality"]["fcdi_pair"].items():
                t.add(eq, row["excluded"], _fmt(row["chi_square"]), row["df"],
                      _fmt(row["p_value"]))
            out.append("**index system**" if md else "index system")
            out.append("")
            emit_table(t)

    heading("Residual diagnostics")
    if "notice" in s["diagnostics"]:
        emit_kv([("notice", s["diagnostics"]["notice"])])
    else:
        lm, jb, notes = _render_diagnostics(s["diagnostics"])
        out.append("**autocorrelation (LM)**" if md else "autocorrelation (LM)")
        out.append("")
        emit_table(lm)
        out.append("**normality (Jarque-Bera)**" if md else "normality (Jarque-Bera)")
        out.append("")
        emit_table(jb)
        for note in notes:
            out.append(("- " if md else "note: ") + note)
        if notes:
            out.append("")

    return "\n".join(out).rstrip() + "\n"
