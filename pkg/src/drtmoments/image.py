"""Grayscale image container and deterministic synthetic images.

Pixels are stored row-major: the intensity at column ``x`` and row ``y`` is
``pixels[y * width + x]``.  Moments use ``x`` as the column coordinate
(``0 <= x < width``) and ``y`` as the row coordinate (``0 <= y < height``).
"""
from __future__ import annotations

from collections.abc import Sequence

import numpy as np

# Largest width/height for which every backend's exact accumulation is proven.
MAX_DIMENSION = 1 << 15

KINDS = ("constant", "delta", "gradient", "uniform")


class GrayImage:
    """Immutable 8-bit grayscale image.

    Parameters
    ----------
    width, height : int
        Image size in pixels, both at least 1.
    pixels : sequence of int or ndarray
        Row-major intensities in ``[0, 255]``, exactly ``width * height`` of
        them.  A 2D array of shape ``(height, width)`` is also accepted.
    """

    __slots__ = ("width", "height", "_pixels")

    def __init__(self, width: int, height: int, pixels: Sequence[int] | np.ndarray):
        width, height = int(width), int(height)
        if width < 1 or height < 1:
            raise ValueError(f"image dimensions must be positive, got {width}x{height}")
        raw = np.asarray(pixels)
        if raw.size != width * height:
            raise ValueError(
                f"expected {width * height} pixels for a {width}x{height} image, got {raw.size}"
            )
        if raw.dtype != np.uint8:
            if raw.size and not np.issubdtype(raw.dtype, np.integer):
                raise TypeError(f"pixel values must be integers, got dtype {raw.dtype}")
            if raw.size and (raw.min() < 0 or raw.max() > 255):
                raise ValueError("pixel values must lie in [0, 255]")
        flat = np.array(raw, dtype=np.uint8).reshape(-1)
        flat.flags.writeable = False
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "_pixels", flat)

    def __setattr__(self, name, value):
        raise AttributeError("GrayImage is immutable")

    @classmethod
    def from_array(cls, array: np.ndarray) -> GrayImage:
        """Build an image from a ``(height, width)`` array."""
        array = np.asarray(array)
        if array.ndim != 2:
            raise ValueError(f"expected a 2D array, got shape {array.shape}")
        height, width = array.shape
        return cls(width, height, array)

    @property
    def pixels(self) -> np.ndarray:
        """Flat read-only ``uint8`` view, row-major."""
        return self._pixels

    @property
    def array(self) -> np.ndarray:
        """Read-only ``(height, width)`` view of the pixels."""
        return self._pixels.reshape(self.height, self.width)

    @property
    def shape(self) -> tuple[int, int]:
        return self.height, self.width

    def __getitem__(self, xy: tuple[int, int]) -> int:
        x, y = xy
        if not (0 <= x < self.width and 0 <= y < self.height):
            raise IndexError(f"pixel ({x}, {y}) outside {self.width}x{self.height} image")
        return int(self._pixels[y * self.width + x])

    def transpose(self) -> GrayImage:
        """Swap the x and y axes."""
        return GrayImage.from_array(self.array.T)

    def __eq__(self, other):
        if not isinstance(other, GrayImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and np.array_equal(self._pixels, other._pixels)
        )

    __hash__ = None

    def __repr__(self):
        return f"GrayImage(width={self.width}, height={self.height})"


def random_bytes(count: int, seed: int) -> np.ndarray:
    """``count`` uniform bytes from the raw PCG64 stream seeded with ``seed``.

    Only the bit generator's raw 64-bit output is used (little-endian byte
    order), which numpy keeps stable across releases, so corpora are
    reproducible on any machine.
    """
    words = np.random.PCG64(seed).random_raw((count + 7) // 8)
    return words.astype("<u8").view(np.uint8)[:count]


def generate(
    kind: str,
    width: int,
    height: int,
    seed: int = 0,
    *,
    value: int = 255,
    x: int = 0,
    y: int = 0,
) -> GrayImage:
    """Deterministic synthetic image.

    ``constant`` fills every pixel with ``value``; ``delta`` puts ``value`` at
    ``(x, y)`` on a black background; ``gradient`` ramps linearly from 0 at the
    top-left corner to 255 at the bottom-right; ``uniform`` draws every pixel
    independently from ``[0, 255]`` via :func:`random_bytes`.  ``seed`` only
    affects ``uniform``.
    """
    if width < 1 or height < 1:
        raise ValueError(f"image dimensions must be positive, got {width}x{height}")
    if kind == "constant":
        return GrayImage(width, height, np.full(width * height, value, dtype=np.int64))
    if kind == "delta":
        if not (0 <= x < width and 0 <= y < height):
            raise ValueError(f"delta position ({x}, {y}) outside {width}x{height} image")
        pixels = np.zeros(width * height, dtype=np.int64)
        pixels[y * width + x] = value
        return GrayImage(width, height, pixels)
    if kind == "gradient":
        span = max(1, (width - 1) + (height - 1))
        ramp = np.add.outer(np.arange(height), np.arange(width)) * 255 // span
        return GrayImage(width, height, ramp)
    if kind == "uniform":
        return GrayImage(width, height, random_bytes(width * height, seed))
    raise ValueError(f"unknown image kind {kind!r}; expected one of {', '.join(KINDS)}")


def check_dimensions(image: GrayImage) -> None:
    if image.width > MAX_DIMENSION or image.height > MAX_DIMENSION:
        raise ValueError(
            f"{image.width}x{image.height} exceeds the supported maximum dimension "
            f"{MAX_DIMENSION}; exact accumulation is not guaranteed beyond it"
        )
