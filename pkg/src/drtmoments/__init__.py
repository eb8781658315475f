"""Exact raw image moments of 8-bit grayscale images from discrete Radon projections."""
from .bench import BenchRecord, emit_results, run_bench
from .drt import (
    MomentConsistencyError,
    PowerTable,
    array_moment,
    build_power_table,
    drt_raw_moments,
    power_table,
)
from .image import MAX_DIMENSION, GrayImage, generate
from .moments import MOMENT_NAMES, MultCounter, RawMoments
from .pgm import PGMError, load_pgm, save_pgm
from .projections import ProjectionSet, project, render_projection
from .reference import baseline_raw_moments, naive_raw_moments

__version__ = "0.1.0"
