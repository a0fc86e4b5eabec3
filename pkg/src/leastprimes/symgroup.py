"""Conjugacy-class combinatorics of the symmetric group S_n.

Conjugacy classes are identified with cycle types, i.e. partitions of n.
Class sizes and densities are exact; floating point never enters here.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial


@dataclass(frozen=True, order=True)
class CycleType:
    """A conjugacy class of S_n, stored as its cycle type.

    `parts` is the non-increasing tuple of cycle lengths, summing to `n`.
    Fixed points appear as parts equal to 1.
    """

    n: int
    parts: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"degree must be >= 1, got {self.n}")
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError(f"cycle lengths must be positive: {self.parts}")
        if tuple(sorted(self.parts, reverse=True)) != self.parts:
            raise ValueError(f"parts must be sorted non-increasing: {self.parts}")
        if sum(self.parts) != self.n:
            raise ValueError(f"parts {self.parts} do not sum to n={self.n}")

    @classmethod
    def of(cls, parts, n: int | None = None) -> "CycleType":
        """Build from any iterable of cycle lengths, sorting as needed."""
        parts = tuple(sorted(parts, reverse=True))
        return cls(n=sum(parts) if n is None else n, parts=parts)

    def is_even(self) -> bool:
        """True when the class lies in the alternating group A_n."""
        return sum(p - 1 for p in self.parts) % 2 == 0

    def parts_label(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def cycle_label(self) -> str:
        """Representative-permutation label, e.g. (12)(345); 'e' for the identity."""
        pieces = []
        next_sym = 1
        for p in self.parts:
            if p > 1:
                syms = range(next_sym, next_sym + p)
                pieces.append("(" + "".join(str(s) for s in syms) + ")")
            next_sym += p
        return "".join(pieces) or "e"


def cycle_types(n: int) -> list[CycleType]:
    """All partitions of n as CycleTypes, in descending lexicographic order.

    >>> [ct.parts for ct in cycle_types(3)]
    [(3,), (2, 1), (1, 1, 1)]
    """
    if n < 1:
        raise ValueError(f"degree must be >= 1, got {n}")

    out: list[CycleType] = []

    def extend(remaining: int, cap: int, acc: list[int]):
        if remaining == 0:
            out.append(CycleType(n, tuple(acc)))
            return
        for part in range(min(cap, remaining), 0, -1):
            acc.append(part)
            extend(remaining - part, part, acc)
            acc.pop()

    extend(n, n, [])
    return out


def class_size(ct: CycleType) -> int:
    """|C| = n! / prod_k k^{m_k} m_k!  with m_k the multiplicity of part k."""
    mult: dict[int, int] = {}
    for p in ct.parts:
        mult[p] = mult.get(p, 0) + 1
    denom = 1
    for k, m in mult.items():
        denom *= k**m * factorial(m)
    return factorial(ct.n) // denom


def class_density(ct: CycleType) -> Fraction:
    """|C| / n! as an exact reduced rational."""
    return Fraction(class_size(ct), factorial(ct.n))


def class_of_degree_pattern(degrees, n: int) -> CycleType:
    """Map a multiset of residue degrees to the cycle type it spells.

    For an unramified prime away from the discriminant, the degrees of the
    irreducible factors of the defining polynomial mod p form the cycle type
    of the Frobenius class.
    """
    degrees = tuple(degrees)
    if sum(degrees) != n:
        raise ValueError(f"degrees {degrees} do not sum to n={n}")
    return CycleType.of(degrees, n)


_CYCLE_RE = re.compile(r"\(([0-9a-zA-Z\s,]+?)\)")


def parse_class_spec(text: str, n: int) -> CycleType:
    """Parse a class given as parts ('2,1,1') or cycle notation ('(12)(34)').

    Cycle notation pads implicit fixed points up to degree n; 'e' or '1' or
    '()' names the identity.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty class spec")
    if text in ("e", "1", "()", "id"):
        return CycleType(n, (1,) * n)
    if text.startswith("("):
        cycles = _CYCLE_RE.findall(text)
        joined = "".join(cycles)
        if not cycles or _CYCLE_RE.sub("", text).strip():
            raise ValueError(f"malformed cycle notation: {text!r}")
        seen: set[str] = set()
        lengths = []
        for cyc in cycles:
            syms = [s for s in re.split(r"[,\s]+", cyc.strip()) if s] if ("," in cyc or " " in cyc) else list(cyc)
            if len(syms) < 2:
                raise ValueError(f"cycles must move at least 2 symbols: ({cyc})")
            for s in syms:
                if s in seen:
                    raise ValueError(f"symbol {s} repeated in {text!r}")
                seen.add(s)
            lengths.append(len(syms))
        moved = sum(lengths)
        if moved > n:
            raise ValueError(f"{text!r} moves {moved} symbols but degree is {n}")
        lengths.extend([1] * (n - moved))
        return CycleType.of(lengths, n)
    try:
        parts = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ValueError(f"cannot parse class spec {text!r}") from None
    if sum(parts) > n:
        raise ValueError(f"parts {parts} exceed degree {n}")
    parts.extend([1] * (n - sum(parts)))
    return CycleType.of(parts, n)
