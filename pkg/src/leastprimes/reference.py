"""Loader for the pinned reference table of published average values.

The values ship as a data file so that the CLI diff column and the acceptance
suite check against a single source of truth.  Printed strings are truncated
decimals, so 'matches all printed digits' means printed <= value < printed +
one unit in the last place.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .symgroup import CycleType


@dataclass(frozen=True)
class ReferenceValue:
    quantity: str
    printed: str
    n: Optional[int] = None
    parts: Optional[str] = None
    label: Optional[str] = None
    name: Optional[str] = None

    @property
    def value(self) -> float:
        return float(self.printed)

    @property
    def decimals(self) -> int:
        return len(self.printed.split(".")[1]) if "." in self.printed else 0

    @property
    def ulp(self) -> float:
        return 10.0 ** -self.decimals

    def matches_printed_digits(self, computed: float) -> bool:
        """True when `computed` truncates to exactly the printed digits."""
        return 0 <= computed - self.value < self.ulp

    def cycle_type(self) -> CycleType:
        if self.parts is None:
            raise ValueError(f"{self.quantity} reference row has no class")
        return CycleType.of(int(p) for p in self.parts.split(","))


def _load() -> dict:
    text = resources.files("leastprimes.data").joinpath("reference_values.json").read_text()
    return json.loads(text)


_RAW = _load()


def table(quantity: str, n: Optional[int] = None) -> list[ReferenceValue]:
    """Reference rows for a quantity, optionally filtered by degree, in
    published row order."""
    if quantity in ("little-n", "big-N"):
        rows = [ReferenceValue(quantity=quantity, **r) for r in _RAW[quantity]]
    elif quantity == "big-N-odd-union":
        rows = [ReferenceValue(quantity=quantity, **r) for r in _RAW[quantity]]
    elif quantity == "classical":
        rows = [ReferenceValue(quantity="classical", **r) for r in _RAW["classical"]]
    else:
        raise KeyError(f"no reference table for {quantity!r}")
    if n is not None:
        rows = [r for r in rows if r.n == n]
    return rows


def lookup(quantity: str, n: Optional[int] = None, parts: Optional[str] = None,
           name: Optional[str] = None) -> Optional[ReferenceValue]:
    for row in table(quantity if quantity != "classical" else "classical"):
        if n is not None and row.n != n:
            continue
        if parts is not None and row.parts != parts:
            continue
        if name is not None and row.name != name:
            continue
        return row
    return None
