"""CSV export and import of phase-transition grids.

Schema (one row per cell, ``\\n`` line endings)::

    m,s,trials,successes,success_rate,mean_rsdr_db,median_rsdr_db,noise_snr_db,subsample,dict_field,seed

Floats are written with six significant digits; infinite SNR is ``inf``.
"""

from __future__ import annotations

import csv
import io
import math
from pathlib import Path
from typing import List, Sequence, Union

from spf_deconv.harness.grid import GridRow, SuccessGrid
from spf_deconv.harness.trials import TrialResult

CSV_HEADER = (
    "m", "s", "trials", "successes", "success_rate", "mean_rsdr_db",
    "median_rsdr_db", "noise_snr_db", "subsample", "dict_field", "seed",
)


def format_float(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.6g}"


def to_csv(source: Union[SuccessGrid, Sequence[TrialResult]]) -> str:
    """Render a grid (or trials, aggregated per cell) as CSV text."""
    grid = source if isinstance(source, SuccessGrid) else SuccessGrid.from_trials(list(source))
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in grid:
        writer.writerow([
            row.m,
            row.s,
            row.trials,
            row.successes,
            format_float(row.success_rate),
            format_float(row.mean_rsdr_db),
            format_float(row.median_rsdr_db),
            format_float(row.noise_snr_db),
            row.subsample,
            row.dict_field,
            row.seed,
        ])
    return buffer.getvalue()


def export_csv(source: Union[SuccessGrid, Sequence[TrialResult]], path: Union[str, Path]) -> None:
    """Write :func:`to_csv` output to ``path``.

    Raises:
        OSError: If the file cannot be written.
    """
    Path(path).write_text(to_csv(source), encoding="utf-8", newline="")


def import_csv(path: Union[str, Path]) -> SuccessGrid:
    """Read a CSV written by :func:`export_csv`.

    Raises:
        ValueError: If the header does not match the schema.
    """
    with open(path, newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise ValueError(f"unexpected CSV header in {path}: {header}")
        rows: List[GridRow] = []
        for record in reader:
            if not record:
                continue
            fields = dict(zip(CSV_HEADER, record))
            rows.append(GridRow(
                m=int(fields["m"]),
                s=int(fields["s"]),
                trials=int(fields["trials"]),
                successes=int(fields["successes"]),
                mean_rsdr_db=float(fields["mean_rsdr_db"]),
                median_rsdr_db=float(fields["median_rsdr_db"]),
                noise_snr_db=float(fields["noise_snr_db"]),
                subsample=fields["subsample"],
                dict_field=fields["dict_field"],
                seed=int(fields["seed"]),
            ))
    return SuccessGrid(tuple(rows))
