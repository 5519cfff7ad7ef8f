"""Static SVG chart emission for the ingested series.

Output is deterministic: a fixed hash salt replaces matplotlib's randomized
clip-path ids and the SVG date metadata is suppressed, so re-running on
identical data reproduces identical bytes.
"""

from __future__ import annotations

from pathlib import Path
from typing import List

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .errors import IoFailure
from .series import Dataset


def _plot(years, values, title: str, ylabel: str, path: Path) -> None:
    with plt.rc_context({"svg.hashsalt": "cointlab"}):
        fig, ax = plt.subplots(figsize=(7.0, 3.5), dpi=100)
        ax.plot(years, values, color="#1f5f8b", linewidth=1.6)
        ax.set_title(title)
        ax.set_xlabel("year")
        ax.set_ylabel(ylabel)
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        try:
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise IoFailure(f"cannot write {path}: {exc}") from exc
        finally:
            plt.close(fig)


def emit_plots(data: Dataset, output_dir) -> List[str]:
    """One line chart per ingested series, plus GDP growth in percent.

    The growth chart is the year-over-year percentage change of the ingested
    (current-dollar) GDP series.  Returns the list of written file paths.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise IoFailure(f"cannot create {out}: {exc}") from exc

    gdp = data.get("gdp")
    growth = 100.0 * (gdp.values[1:] / gdp.values[:-1] - 1.0)
    scale = 1e6  # display in millions of current US$

    jobs = [
        ("fig1_gdp_growth.svg", gdp.years[1:], growth,
         "GDP growth (year over year, %)", "percent"),
        ("fig2_fdi.svg", data.get("fdi").years, data.get("fdi").values / scale,
         "FDI net inflows", "million current US$"),
        ("fig3_remittance.svg", data.get("remittance").years,
         data.get("remittance").values / scale,
         "Personal remittances received", "million current US$"),
        ("fig4_aid.svg", data.get("aid").years, data.get("aid").values / scale,
         "Net official development assistance and aid", "million current US$"),
    ]
    written = []
    for fname, years, values, title, ylabel in jobs:
        path = out / fname
        _plot(years, values, title, ylabel, path)
        written.append(str(path))
    return written
