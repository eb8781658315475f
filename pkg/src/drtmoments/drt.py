"""Raw moments assembled from 1D moments of the four projection arrays.

Expanding the diagonal and anti-diagonal third moments over pixels gives

    D3 = m30 + m03 + 3*m21 + 3*m12
    A3 = m03 - m30 + 3*m21 - 3*m12

so ``D3 - A3 = 2*m30 + 6*m12`` and ``D3 + A3 = 2*m03 + 6*m21``.  Some printed
versions of this method pair ``D3 + A3`` with ``m12`` instead; that variant is
kept available as ``as_printed=True`` only so it can be shown to fail.

Only the nine weighted 1D sums multiply by coordinate powers, which makes the
cost ``3M + 3N + 3(N + M - 1)`` multiplications per image once the power table
exists; the final assembly adds two constant multiplications.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from operator import mul

from .image import GrayImage
from .moments import MultCounter, RawMoments
from .projections import ProjectionSet, project


class MomentConsistencyError(ArithmeticError):
    """An assembly step that must divide exactly did not."""

    def __init__(self, moment: str, numerator: int, divisor: int):
        self.moment = moment
        self.value = Fraction(numerator, divisor)
        super().__init__(
            f"{moment}: {numerator}/{divisor} = {self.value} is not an integer"
        )


@dataclass(frozen=True)
class PowerTable:
    """Exact ``k**i`` for ``k = 0..max_k`` and ``i = 1, 2, 3``."""

    max_k: int
    powers: dict[int, tuple[int, ...]]

    def covers(self, k: int) -> bool:
        return 0 <= k <= self.max_k


def build_power_table(max_k: int) -> PowerTable:
    if max_k < 0:
        raise ValueError(f"max_k must be non-negative, got {max_k}")
    ks = range(max_k + 1)
    squares = tuple(k * k for k in ks)
    cubes = tuple(k * s for k, s in zip(ks, squares))
    return PowerTable(max_k, {1: tuple(ks), 2: squares, 3: cubes})


@lru_cache(maxsize=16)
def power_table(max_k: int) -> PowerTable:
    """Cached :func:`build_power_table`; tables are immutable and shareable."""
    return build_power_table(max_k)


def array_moment(
    arr,
    order: int,
    offset: int = 0,
    table: PowerTable | None = None,
    counter: MultCounter | None = None,
) -> int:
    """``sum(arr[k] * (k + offset)**order)`` computed exactly.

    Negative shifted indices reuse the table entry for ``|k + offset|`` and
    take their sign from the parity of ``order``, so a nonzero order costs
    exactly ``len(arr)`` multiplications and order 0 costs none.
    """
    if order not in (0, 1, 2, 3):
        raise ValueError(f"order must be 0..3, got {order}")
    values = arr.tolist() if hasattr(arr, "tolist") else list(arr)
    if order == 0:
        return sum(values)
    n = len(values)
    if n == 0:
        return 0
    if table is None:
        table = power_table(max(abs(offset), abs(n - 1 + offset)))
    lo, hi = offset, n - 1 + offset
    if not (table.covers(abs(lo)) and table.covers(abs(hi))):
        raise ValueError(f"power table up to {table.max_k} does not cover indices {lo}..{hi}")
    powers = table.powers[order]

    if offset >= 0:
        total = sum(map(mul, values, powers[offset:offset + n]))
    else:
        # first `split` entries sit at negative positions -split..-1
        split = min(-offset, n)
        positive = sum(map(mul, values[split:], powers[0:n - split]))
        negative = sum(map(mul, values[:split], powers[-offset:-offset - split:-1]))
        total = positive - negative if order % 2 else positive + negative
    if counter is not None:
        counter.add(n)
    return total


def _exact_div(numerator: int, divisor: int, moment: str) -> int:
    q, r = divmod(numerator, divisor)
    if r:
        raise MomentConsistencyError(moment, numerator, divisor)
    return q


def assemble(
    proj: ProjectionSet,
    table: PowerTable | None = None,
    counter: MultCounter | None = None,
    *,
    as_printed: bool = False,
) -> RawMoments:
    """Combine 1D projection moments into the ten raw moments."""
    width, height = proj.source_width, proj.source_height
    if table is None:
        table = power_table(width + height - 2)

    def moment(arr, order, offset=0):
        return array_moment(arr, order, offset, table, counter)

    m00 = moment(proj.vertical, 0)
    m10, m20, m30 = (moment(proj.vertical, i) for i in (1, 2, 3))
    m01, m02, m03 = (moment(proj.horizontal, i) for i in (1, 2, 3))
    d2 = moment(proj.diagonal, 2)
    d3 = moment(proj.diagonal, 3)
    a3 = moment(proj.antidiagonal, 3, -(width - 1))

    m11 = _exact_div(d2 - m20 - m02, 2, "m11")
    if as_printed:
        m12 = _exact_div(d3 + a3 - 2 * m30, 6, "m12")
        m21 = _exact_div(d3 - a3 - 2 * m03, 6, "m21")
    else:
        m12 = _exact_div(d3 - a3 - 2 * m30, 6, "m12")
        m21 = _exact_div(d3 + a3 - 2 * m03, 6, "m21")
    if counter is not None:
        counter.add_assembly(2)
    return RawMoments(m00, m10, m01, m20, m11, m02, m30, m21, m12, m03)


def drt_raw_moments(
    image: GrayImage,
    counter: MultCounter | None = None,
    table: PowerTable | None = None,
    *,
    as_printed: bool = False,
) -> RawMoments:
    """Exact raw moments of ``image`` from its projection arrays.

    ``table`` defaults to the cached power table for the image size; its
    construction is never charged to ``counter``.
    """
    if counter is not None:
        counter.reset()
    return assemble(project(image), table, counter, as_printed=as_printed)
