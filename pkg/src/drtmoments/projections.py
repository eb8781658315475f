"""Discrete Radon projections of an image along four directions.

For an image of width ``M`` and height ``N``:

* ``vertical[k]``      sums column ``x = k``                       (length ``M``)
* ``horizontal[k]``    sums row ``y = k``                          (length ``N``)
* ``diagonal[k]``      sums pixels with ``x + y == k``             (length ``N + M - 1``)
* ``antidiagonal[k]``  sums pixels with ``y - x + M - 1 == k``     (length ``N + M - 1``)

All four are produced by one pass over the pixels using only additions.
"""
from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import numba
import numpy as np

from .image import GrayImage, check_dimensions
from .pgm import save_pgm

PROJECTION_LABELS = {
    "V": "vertical",
    "H": "horizontal",
    "D": "diagonal",
    "A": "antidiagonal",
}


@numba.njit(cache=True, nogil=True)
def _project_rows(img):
    n, m = img.shape
    # uint32 holds 255 * 2**15 with room to spare
    vertical = np.zeros(m, np.uint32)
    horizontal = np.zeros(n, np.uint32)
    diagonal = np.zeros(n + m - 1, np.uint32)
    # Accumulated back to front so every row lands on a forward slice;
    # reversing the sequence at the end gives the anti-diagonal array.
    anti_rev = np.zeros(n + m - 1, np.uint32)
    for y in range(n):
        row = img[y]
        d = diagonal[y:y + m]
        a = anti_rev[n - 1 - y:n - 1 - y + m]
        s = np.uint32(0)
        for x in range(m):
            p = np.uint32(row[x])
            s += p
            vertical[x] += p
            d[x] += p
        # kept as a separate loop so both stay vectorizable
        for x in range(m):
            a[x] += np.uint32(row[x])
        horizontal[y] = s
    return vertical, horizontal, diagonal, anti_rev[::-1].copy()


@dataclass(frozen=True, eq=False)
class ProjectionSet:
    vertical: np.ndarray
    horizontal: np.ndarray
    diagonal: np.ndarray
    antidiagonal: np.ndarray
    source_width: int
    source_height: int

    def arrays(self) -> dict[str, np.ndarray]:
        """Projections keyed by their one-letter labels ``V``, ``H``, ``D``, ``A``."""
        return {label: getattr(self, attr) for label, attr in PROJECTION_LABELS.items()}

    def __eq__(self, other):
        if not isinstance(other, ProjectionSet):
            return NotImplemented
        return (
            (self.source_width, self.source_height) == (other.source_width, other.source_height)
            and all(np.array_equal(a, b) for a, b in zip(self.arrays().values(), other.arrays().values()))
        )

    __hash__ = None


def project(image: GrayImage) -> ProjectionSet:
    """Compute the four projection arrays of ``image``."""
    check_dimensions(image)
    v, h, d, a = _project_rows(image.array)
    for arr in (v, h, d, a):
        arr.flags.writeable = False
    return ProjectionSet(v, h, d, a, image.width, image.height)


def density_image(values, height: int = 256) -> GrayImage:
    """Bar-style density plot: column ``k`` is white from the bottom up to a
    height proportional to ``values[k]``, with the maximum filling the column.
    """
    values = np.asarray(values, dtype=np.int64)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("projection must be a non-empty 1D array")
    if height < 1:
        raise ValueError("plot height must be positive")
    peak = int(values.max())
    if peak <= 0:
        filled = np.zeros(values.size, dtype=np.int64)
    else:
        filled = values * height // peak
    rows = np.arange(height)[:, None]
    plot = np.where(rows >= height - filled[None, :], 255, 0)
    return GrayImage.from_array(plot)


def render_projection(values, out: str | os.PathLike, fmt: str = "csv", height: int = 256) -> None:
    """Write one projection array as ``csv`` (``index,value`` rows under a
    header line) or as a ``pgm`` density plot."""
    if fmt == "csv":
        with open(out, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["index", "value"])
            writer.writerows(enumerate(int(v) for v in values))
    elif fmt in ("pgm", "pgm-density"):
        save_pgm(density_image(values, height), out)
    else:
        raise ValueError(f"unknown projection format {fmt!r}; expected csv or pgm")
