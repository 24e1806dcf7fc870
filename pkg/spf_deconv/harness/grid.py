"""Phase-transition grids.

:func:`phase_transition` runs every (m, s) cell of a config, spreading
trials over a thread pool. ``Executor.map`` yields results in submission
order and every trial seeds itself, so the aggregated grid is identical for
any worker count.
"""

from __future__ import annotations

import logging
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt
from tqdm.auto import tqdm

from spf_deconv.harness.config import ExperimentConfig
from spf_deconv.harness.trials import Cell, TrialResult, run_trial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GridRow:
    """Aggregated statistics of one (m, s) cell; one CSV row."""
    m: int
    s: int
    trials: int
    successes: int
    mean_rsdr_db: float
    median_rsdr_db: float
    noise_snr_db: float
    subsample: str
    dict_field: str
    seed: int

    @property
    def success_rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    @property
    def ratio(self) -> float:
        return self.s / self.m


@dataclass(frozen=True)
class SuccessGrid:
    """Per-cell tallies of a phase-transition experiment, in grid order."""
    rows: Tuple[GridRow, ...] = ()

    def __iter__(self) -> Iterator[GridRow]:
        return iter(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    @classmethod
    def from_trials(cls, trials: Sequence[TrialResult]) -> SuccessGrid:
        """Aggregate trials by cell, keeping the order cells first appear in."""
        groups: Dict[Cell, List[TrialResult]] = OrderedDict()
        for trial in trials:
            groups.setdefault(trial.cell, []).append(trial)
        rows = []
        for (m, s), group in groups.items():
            rsdr = np.array([t.rsdr_db for t in group])
            first = group[0]
            rows.append(GridRow(
                m=m,
                s=s,
                trials=len(group),
                successes=sum(t.success for t in group),
                mean_rsdr_db=float(rsdr.mean()),
                median_rsdr_db=float(np.median(rsdr)),
                noise_snr_db=first.noise_snr_db,
                subsample=first.subsample,
                dict_field=first.dict_field,
                seed=first.base_seed,
            ))
        return cls(tuple(rows))

    @property
    def m_axis(self) -> List[int]:
        return sorted({row.m for row in self.rows})

    @property
    def ratio_axis(self) -> List[float]:
        return sorted({row.ratio for row in self.rows})

    def cell(self, m: int, s: int) -> Optional[GridRow]:
        return next((row for row in self.rows if row.m == m and row.s == s), None)

    def rate_matrix(self) -> npt.NDArray[np.float64]:
        """Success rates indexed [ratio, m] along the two axes; NaN where absent."""
        ms, ratios = self.m_axis, self.ratio_axis
        out = np.full((len(ratios), len(ms)), np.nan)
        for row in self.rows:
            out[ratios.index(row.ratio), ms.index(row.m)] = row.success_rate
        return out


def phase_transition(
        cfg: ExperimentConfig,
        threads: int = 1,
        progress: bool = False,
) -> SuccessGrid:
    """Run ``cfg.trials_per_cell`` trials in every cell and aggregate them.

    Args:
        cfg: The experiment.
        threads: Worker threads; the result does not depend on it.
        progress: Show a tqdm progress bar.

    Returns:
        SuccessGrid: One row per cell in config order.
    """
    tasks = [(cell, t) for cell in cfg.cells() for t in range(cfg.trials_per_cell)]
    logger.info("phase transition: %d cells x %d trials on %d thread(s)",
                len(cfg.cells()), cfg.trials_per_cell, threads)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as executor:
        results = list(tqdm(
            executor.map(lambda task: run_trial(cfg, *task), tasks),
            total=len(tasks),
            desc="Trials",
            disable=not progress,
        ))
    grid = SuccessGrid.from_trials(results)
    for row in grid:
        logger.info("cell m=%d s=%d: %d/%d successes, median RSDR %.1f dB",
                    row.m, row.s, row.successes, row.trials, row.median_rsdr_db)
    return grid
