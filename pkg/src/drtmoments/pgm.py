"""Reading and writing 8-bit PGM files (Netpbm ``P5`` binary and ``P2`` plain)."""
from __future__ import annotations

import os

import numpy as np

from .image import GrayImage

_WHITESPACE = b" \t\n\r\v\f"


class PGMError(ValueError):
    """Base class for unreadable PGM input."""


class MalformedHeaderError(PGMError):
    pass


class UnsupportedDepthError(PGMError):
    pass


class TruncatedDataError(PGMError):
    pass


class ZeroDimensionError(PGMError):
    pass


class _Tokens:
    """Whitespace/comment-aware tokenizer over a byte buffer."""

    def __init__(self, data: bytes, pos: int = 0):
        self.data = data
        self.pos = pos

    def _skip(self):
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == ord("#"):
                while self.pos < n and data[self.pos] not in b"\r\n":
                    self.pos += 1
            else:
                break

    def next(self) -> bytes | None:
        self._skip()
        start = self.pos
        data, n = self.data, len(self.data)
        while self.pos < n and data[self.pos] not in _WHITESPACE and data[self.pos] != ord("#"):
            self.pos += 1
        return data[start:self.pos] or None


def _header_int(tokens: _Tokens, name: str, path) -> int:
    tok = tokens.next()
    if tok is None:
        raise MalformedHeaderError(f"{path}: header ends before {name}")
    if not tok.isdigit():
        raise MalformedHeaderError(f"{path}: {name} is not a non-negative integer: {tok!r}")
    return int(tok)


def parse_pgm(data: bytes, path: str = "<bytes>") -> GrayImage:
    """Decode a PGM held in memory.  See :func:`load_pgm`."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise MalformedHeaderError(f"{path}: not a PGM file (magic {magic!r})")
    tokens = _Tokens(data, 2)
    if len(data) > 2 and data[2] not in _WHITESPACE and data[2] != ord("#"):
        raise MalformedHeaderError(f"{path}: no whitespace after magic number")
    width = _header_int(tokens, "width", path)
    height = _header_int(tokens, "height", path)
    maxval = _header_int(tokens, "maxval", path)
    if width == 0 or height == 0:
        raise ZeroDimensionError(f"{path}: zero image dimension {width}x{height}")
    if maxval == 0 or maxval > 65535:
        raise MalformedHeaderError(f"{path}: maxval {maxval} outside 1..65535")
    if maxval > 255:
        raise UnsupportedDepthError(f"{path}: maxval {maxval} needs 16-bit samples; only 8-bit is supported")
    count = width * height

    if magic == b"P5":
        # exactly one whitespace byte separates maxval from the raster
        start = tokens.pos
        if start >= len(data) or data[start] not in _WHITESPACE:
            raise TruncatedDataError(f"{path}: missing raster after header")
        raster = data[start + 1:start + 1 + count]
        if len(raster) < count:
            raise TruncatedDataError(f"{path}: expected {count} pixel bytes, found {len(raster)}")
        pixels = np.frombuffer(raster, dtype=np.uint8)
    else:
        values = []
        for _ in range(count):
            tok = tokens.next()
            if tok is None:
                raise TruncatedDataError(f"{path}: expected {count} pixel values, found {len(values)}")
            if not tok.isdigit():
                raise MalformedHeaderError(f"{path}: bad pixel value {tok!r}")
            values.append(int(tok))
        pixels = np.array(values, dtype=np.int64)

    if pixels.size and int(pixels.max()) > maxval:
        raise MalformedHeaderError(f"{path}: pixel value {int(pixels.max())} exceeds maxval {maxval}")
    return GrayImage(width, height, pixels)


def load_pgm(path: str | os.PathLike) -> GrayImage:
    """Read a P5 or P2 PGM with ``maxval <= 255``.

    Samples are returned as stored; images with ``maxval < 255`` are not
    rescaled.
    """
    with open(path, "rb") as fh:
        data = fh.read()
    return parse_pgm(data, os.fspath(path))


def encode_pgm(image: GrayImage, binary: bool = True) -> bytes:
    if binary:
        header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
        return header + image.pixels.tobytes()
    lines = [f"P2\n{image.width} {image.height}\n255"]
    # plain PGM lines stay under 70 characters
    values = image.pixels.tolist()
    for i in range(0, len(values), 17):
        lines.append(" ".join(map(str, values[i:i + 17])))
    return ("\n".join(lines) + "\n").encode("ascii")


def save_pgm(image: GrayImage, path: str | os.PathLike, binary: bool = True) -> None:
    """Write ``image`` as P5 (``binary=True``) or P2 with maxval 255."""
    with open(path, "wb") as fh:
        fh.write(encode_pgm(image, binary))
