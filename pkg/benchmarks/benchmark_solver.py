"""Benchmark of the FFT measurement path, the cone projection and full solves."""

import time
from typing import Any, Callable, List, Tuple

import numpy as np
from rich.console import Console
from rich.table import Table
from tqdm.auto import tqdm

from spf_deconv.harness.config import parse_config
from spf_deconv.harness.trials import run_trial
from spf_deconv.model.dictionary import gen_dictionary, gen_sparse_signal
from spf_deconv.operator.measurement import MeasOperator, SamplingPattern
from spf_deconv.projection.cone import project_flatness_cone
from spf_deconv.solver.spf import default_flatness_level

console = Console()


def benchmark_operation(func: Callable[..., Any], *args: Any, **kwargs: Any) -> Tuple[float, Any]:
    """Benchmark a function call."""
    start = time.perf_counter()
    result = func(*args, **kwargs)
    duration = time.perf_counter() - start
    return duration, result


def average_ms(func: Callable[..., Any], iterations: int, *args: Any) -> float:
    return sum(benchmark_operation(func, *args)[0] for _ in range(iterations)) / iterations * 1000


def run_benchmarks(sizes: List[int], iterations: int = 5) -> None:
    """Time the building blocks and one solve per size."""
    table = Table(title=f"spf-deconv timings (ms, averaged over {iterations} iterations)")
    for column in ("n", "forward", "adjoint", "cone", "solve", "RSDR (dB)"):
        table.add_column(column, justify="right")

    rng = np.random.default_rng(0)
    for n in tqdm(sizes, desc="Testing different sizes"):
        op = MeasOperator(
            gen_dictionary(n, seed=rng), gen_dictionary(n, seed=rng),
            SamplingPattern.random(n, n // 2, seed=rng),
        )
        u = gen_sparse_signal(n, 4, seed=rng, field="complex")
        v = gen_sparse_signal(n, 4, seed=rng, field="complex")
        b = op.forward(u, v)
        spiky = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        spiky[0] += 10 * np.sqrt(n)

        forward = average_ms(op.forward, iterations, u, v)
        adjoint = average_ms(op.adjoint, iterations, b)
        cone = average_ms(project_flatness_cone, iterations, spiky, default_flatness_level(n))

        cfg = parse_config({"m_values": [n], "s_values": [max(1, n // 64)], "trials_per_cell": 1})
        solve_time, result = benchmark_operation(run_trial, cfg, cfg.cells()[0], 0)
        table.add_row(
            str(n), f"{forward:.3f}", f"{adjoint:.3f}", f"{cone:.3f}",
            f"{solve_time * 1000:.1f}", f"{result.rsdr_db:.1f}",
        )
    console.print(table)


if __name__ == "__main__":
    run_benchmarks([64, 128, 256, 512, 1024])
