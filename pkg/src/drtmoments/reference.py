"""Comparison backends: the direct definition and a row-wise baseline.

Both run vectorized over int64 arrays.  Every elementwise product is bounded
by ``255 * (2**15)**3 = 2**53`` for images within ``MAX_DIMENSION``, so
products never overflow; sums go through :func:`exact_row_sums`, which only
uses a plain int64 reduction when the worst case provably fits.

Multiplication counts (one per elementwise product):

* naive:    ``20 * N * M``  (moment ``m<i><j>`` spends ``i + j`` per pixel)
* baseline: ``3 * N * M + 7 * N``
"""
from __future__ import annotations

import numpy as np

from .image import GrayImage, check_dimensions
from .moments import MOMENT_NAMES, MOMENT_ORDERS, MultCounter, RawMoments

_INT64_MAX = np.iinfo(np.int64).max
_LOW_MASK = (1 << 32) - 1
_BAND_ELEMENTS = 1 << 16


def exact_row_sums(terms: np.ndarray, bound: int) -> list[int]:
    """Exact sums along the last axis of a non-negative int64 array.

    ``bound`` is an upper limit on any single element.  When a row could
    overflow int64 the elements are split into 32-bit halves, each summed
    separately, and recombined as Python integers.
    """
    terms = np.atleast_2d(terms)
    if bound * terms.shape[-1] <= _INT64_MAX:
        return terms.sum(axis=-1).tolist()
    high = (terms >> 32).sum(axis=-1).tolist()
    low = (terms & _LOW_MASK).sum(axis=-1).tolist()
    return [(h << 32) + lo for h, lo in zip(high, low)]


def exact_total(terms: np.ndarray, bound: int) -> int:
    return sum(exact_row_sums(terms, bound))


def _coordinates(image: GrayImage):
    n, m = image.height, image.width
    xs = np.arange(m, dtype=np.int64)
    ys = np.arange(n, dtype=np.int64)[:, None]
    return image.array, xs, ys


def naive_raw_moments(image: GrayImage, counter: MultCounter | None = None) -> RawMoments:
    """Each moment summed straight from its definition, sharing no work.

    Rows are processed in bands of about ``_BAND_ELEMENTS`` pixels so the
    int64 work buffer stays cache-resident; every band recomputes every
    weight product from scratch.
    """
    check_dimensions(image)
    if counter is not None:
        counter.reset()
    pixels, xs, ys = _coordinates(image)
    n, m = image.height, image.width
    rows = max(1, min(n, _BAND_ELEMENTS // m))
    work = np.empty((rows, m), dtype=np.int64)
    values = dict.fromkeys(MOMENT_NAMES, 0)
    for top in range(0, n, rows):
        band = pixels[top:top + rows]
        band_ys = ys[top:top + rows]
        term = work[:band.shape[0]]
        for name in MOMENT_NAMES:
            i, j = MOMENT_ORDERS[name]
            weights = [xs] * i + [band_ys] * j
            if not weights:
                values[name] += exact_total(band, 255)
                continue
            # the first product widens the uint8 pixels straight into `term`
            np.multiply(band, weights[0], out=term)
            for w in weights[1:]:
                np.multiply(term, w, out=term)
            values[name] += exact_total(term, 255 * (m - 1) ** i * (n - 1) ** j)
    if counter is not None:
        counter.add(sum(i + j for i, j in MOMENT_ORDERS.values()) * n * m)
    return RawMoments(**values)


def baseline_raw_moments(image: GrayImage, counter: MultCounter | None = None) -> RawMoments:
    """Row sums of ``p``, ``p*x``, ``p*x**2``, ``p*x**3``, then per-row
    combination with powers of ``y``.

    Each pixel costs three multiplications (``x*p``, ``(x*p)*x``,
    ``(x*x*p)*x``) and each row seven, matching the mainstream scheme's
    ``3NM + 7N`` budget.
    """
    check_dimensions(image)
    if counter is not None:
        counter.reset()
    pixels, xs, _ = _coordinates(image)
    n, m = image.height, image.width
    xp = pixels * xs
    xxp = xp * xs
    xxxp = xxp * xs
    if counter is not None:
        counter.add(3 * n * m)
    top = m - 1
    x0 = exact_row_sums(pixels, 255)
    x1 = exact_row_sums(xp, 255 * top)
    x2 = exact_row_sums(xxp, 255 * top ** 2)
    x3 = exact_row_sums(xxxp, 255 * top ** 3)

    m00 = m10 = m01 = m20 = m11 = m02 = m30 = m21 = m12 = m03 = 0
    for y, (s0, s1, s2, s3) in enumerate(zip(x0, x1, x2, x3)):
        py = y * s0
        sy = y * y
        m03 += py * sy
        m12 += s1 * sy
        m21 += s2 * y
        m30 += s3
        m02 += s0 * sy
        m11 += s1 * y
        m20 += s2
        m01 += py
        m10 += s1
        m00 += s0
    if counter is not None:
        counter.add(7 * n)
    return RawMoments(m00, m10, m01, m20, m11, m02, m30, m21, m12, m03)
