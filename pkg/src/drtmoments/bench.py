"""Best-of-K wall-clock timing of the moment backends over a size ladder."""
from __future__ import annotations

import csv
import logging
import math
import os
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import TextIO

from .drt import build_power_table, drt_raw_moments, power_table
from .image import MAX_DIMENSION, GrayImage, generate
from .moments import RawMoments
from .reference import baseline_raw_moments, naive_raw_moments

log = logging.getLogger(__name__)

BACKENDS: dict[str, Callable[..., RawMoments]] = {
    "naive": naive_raw_moments,
    "baseline": baseline_raw_moments,
    "drt": drt_raw_moments,
}

DEFAULT_LADDER = [(200, 200), (400, 400), (800, 800), (1600, 1200), (2400, 1800), (4032, 3024)]
DEFAULT_REPETITIONS = 1000
CI_REPETITIONS = 50

CSV_COLUMNS = ("backend", "width", "height", "repetitions", "best_time_us", "checksum")
PLOT_COLUMNS = ("sqrt_pixels", "log10_time_us", "backend")


class ChecksumMismatch(RuntimeError):
    """Backends disagreed on the moments of a benchmarked image."""


@dataclass(frozen=True)
class BenchRecord:
    backend: str
    width: int
    height: int
    repetitions: int
    best_time_us: float
    checksum: int


def _timed_call(backend: str, image: GrayImage, include_table_build: bool):
    """Return a zero-argument callable timing one end-to-end computation."""
    func = BACKENDS[backend]
    if backend != "drt":
        return lambda: func(image)
    max_k = image.width + image.height - 2
    if include_table_build:
        return lambda: func(image, table=build_power_table(max_k))
    table = power_table(max_k)
    return lambda: func(image, table=table)


def best_of(call: Callable[[], object], repetitions: int, clock=time.perf_counter_ns):
    """Run ``call`` ``repetitions`` times; return (fastest ns, last result)."""
    best = None
    result = None
    for _ in range(repetitions):
        start = clock()
        result = call()
        elapsed = clock() - start
        if best is None or elapsed < best:
            best = elapsed
    return best, result


def run_bench(
    sizes: Iterable[tuple[int, int]],
    repetitions: int = CI_REPETITIONS,
    seed: int = 0,
    backends: Sequence[str] = ("naive", "baseline", "drt"),
    include_table_build: bool = False,
    interleave: bool = True,
    clock: Callable[[], int] = time.perf_counter_ns,
) -> list[BenchRecord]:
    """Time every backend on one seeded uniform image per size.

    Image generation is outside the timed region.  Each backend gets one
    untimed warm-up call (JIT compilation, caches) whose result is checked
    against the other backends, then ``repetitions`` timed calls; the
    minimum is recorded.  With ``interleave`` the timed calls run in
    round-robin order over all (size, backend) cells, so slow drift in
    machine load affects every cell alike; otherwise each cell's runs are
    consecutive.  Raises :class:`ChecksumMismatch` if backends disagree on
    any moment.
    """
    if repetitions < 1:
        raise ValueError(f"repetitions must be at least 1, got {repetitions}")
    unknown = [b for b in backends if b not in BACKENDS]
    if unknown:
        raise ValueError(f"unknown backend(s): {', '.join(unknown)}")
    sizes = [(int(w), int(h)) for w, h in sizes]
    for w, h in sizes:
        if not (1 <= w <= MAX_DIMENSION and 1 <= h <= MAX_DIMENSION):
            raise ValueError(
                f"size {w}x{h} outside 1..{MAX_DIMENSION}; larger images break the exact accumulation guarantee"
            )

    cells = []
    for w, h in sizes:
        image = generate("uniform", w, h, seed)
        reference = None
        for backend in backends:
            call = _timed_call(backend, image, include_table_build)
            result = call()
            if reference is None:
                reference = (backend, result)
            elif result != reference[1]:
                name = result.first_difference(reference[1])
                raise ChecksumMismatch(
                    f"{backend} and {reference[0]} disagree on {name} for {w}x{h} seed {seed}"
                )
            cells.append((backend, w, h, call, result.m00))

    if interleave:
        best = [None] * len(cells)
        for _ in range(repetitions):
            for i, cell in enumerate(cells):
                start = clock()
                cell[3]()
                elapsed = clock() - start
                if best[i] is None or elapsed < best[i]:
                    best[i] = elapsed
    else:
        best = [best_of(cell[3], repetitions, clock)[0] for cell in cells]

    records = []
    for (backend, w, h, _, checksum), best_ns in zip(cells, best):
        # perf_counter_ns can report 0 for sub-tick calls; clamp to one tick
        best_us = max(best_ns, 1) / 1000.0
        log.info("%s %dx%d: fastest of %d = %.1f us", backend, w, h, repetitions, best_us)
        records.append(BenchRecord(backend, w, h, repetitions, best_us, checksum))
    return records


def plot_rows(records: Sequence[BenchRecord]) -> list[tuple[float, float, str]]:
    """``(sqrt(pixels), log10(best_time_us), backend)`` sorted by backend, then size."""
    rows = [
        (math.sqrt(r.width * r.height), math.log10(r.best_time_us), r.backend)
        for r in records
    ]
    rows.sort(key=lambda row: (row[2], row[0]))
    return rows


def _write_results(records, fh, fmt):
    writer = csv.writer(fh, lineterminator="\n")
    if fmt == "csv":
        writer.writerow(CSV_COLUMNS)
        for r in records:
            writer.writerow([r.backend, r.width, r.height, r.repetitions, r.best_time_us, r.checksum])
    else:
        writer.writerow(PLOT_COLUMNS)
        writer.writerows(plot_rows(records))


def emit_results(records: Sequence[BenchRecord], out: str | os.PathLike | TextIO, fmt: str = "csv") -> None:
    """Write records as raw ``csv`` or as ``plotdata`` for a log-time vs.
    sqrt-pixels chart.  ``out`` is a path or an open text stream."""
    if not records:
        raise ValueError("no benchmark records to write")
    if fmt not in ("csv", "plotdata"):
        raise ValueError(f"unknown results format {fmt!r}; expected csv or plotdata")
    if hasattr(out, "write"):
        _write_results(records, out, fmt)
        return
    with open(out, "w", newline="") as fh:
        _write_results(records, fh, fmt)


def scaling_ratios(records: Sequence[BenchRecord], backend: str) -> list[float]:
    """Best-time ratio between consecutive sizes (ordered by pixel count)."""
    chosen = sorted(
        (r for r in records if r.backend == backend), key=lambda r: r.width * r.height
    )
    return [b.best_time_us / a.best_time_us for a, b in zip(chosen, chosen[1:])]
