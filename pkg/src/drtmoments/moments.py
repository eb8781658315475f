"""Result and instrumentation types shared by every moment backend."""
from __future__ import annotations

from dataclasses import astuple, dataclass, fields

# Order the moments are reported in.
MOMENT_NAMES = ("m00", "m10", "m01", "m20", "m11", "m02", "m30", "m21", "m12", "m03")

# (x exponent, y exponent) for each name
MOMENT_ORDERS = {name: (int(name[1]), int(name[2])) for name in MOMENT_NAMES}


@dataclass(frozen=True)
class RawMoments:
    """The ten raw moments ``sum I(x, y) * x**i * y**j`` with ``i + j <= 3``.

    Fields are named ``m<i><j>``; all values are exact Python integers.
    """

    m00: int
    m10: int
    m01: int
    m20: int
    m11: int
    m02: int
    m30: int
    m21: int
    m12: int
    m03: int

    def as_dict(self) -> dict[str, int]:
        return dict(zip(MOMENT_NAMES, astuple(self)))

    def transposed(self) -> RawMoments:
        """Moments of the transposed image: every ``m<i><j>`` becomes ``m<j><i>``."""
        values = self.as_dict()
        return RawMoments(**{name: values[f"m{name[2]}{name[1]}"] for name in MOMENT_NAMES})

    def first_difference(self, other: RawMoments) -> str | None:
        """Name of the first moment (in report order) where the two disagree."""
        for f in fields(self):
            if getattr(self, f.name) != getattr(other, f.name):
                return f.name
        return None

    def format_lines(self) -> str:
        return "\n".join(f"{name.upper()}={value}" for name, value in self.as_dict().items())


@dataclass
class MultCounter:
    """Tally of multiplications performed by one backend call.

    ``count`` holds multiplications of pixel data (or projection sums) by
    coordinate weights.  Multiplications by constant literals during final
    assembly go to ``assembly_count``.  Backends reset the counter on entry,
    so a counter reflects the most recent call only.
    """

    count: int = 0
    assembly_count: int = 0

    def reset(self) -> None:
        self.count = 0
        self.assembly_count = 0

    def add(self, n: int) -> None:
        self.count += n

    def add_assembly(self, n: int) -> None:
        self.assembly_count += n

    @property
    def total(self) -> int:
        return self.count + self.assembly_count
