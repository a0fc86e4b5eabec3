"""Frobenius statistics of concrete number fields.

Fields come in as monic integer polynomials (constant term first).  For each
prime away from the discriminant, the degrees of the irreducible factors mod p
spell the cycle type of the Frobenius class; scanning primes in order yields
the field's least-prime statistics, aggregated for comparison with the series
predictions.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import series
from .primes import PrimeSource
from .symgroup import CycleType, class_of_degree_pattern

DEFAULT_BOUND = 10**4

NOT_FOUND = "not-found"
TAINTED = "tainted"


class InternalError(RuntimeError):
    """An impossible state: signals a bug, not bad input."""


# ---------------------------------------------------------------------------
# integer polynomial discriminant


def _bareiss_det(m: list[list[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free elimination)."""
    n = len(m)
    m = [row[:] for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def poly_disc(coeffs: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial (constant term first).

    Computed as (-1)^(n(n-1)/2) Res(f, f'), with the resultant an exact
    Sylvester determinant.
    """
    n = len(coeffs) - 1
    if n < 2:
        raise ValueError(f"degree must be >= 2, got {n}")
    if coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    f = list(reversed(coeffs))  # highest degree first
    fp = [c * (n - i) for i, c in enumerate(f[:-1])]  # derivative, degree n-1
    size = 2 * n - 1
    rows = []
    for i in range(n - 1):  # n-1 shifted copies of f
        rows.append([0] * i + f + [0] * (size - n - 1 - i))
    for i in range(n):  # n shifted copies of f'
        rows.append([0] * i + fp + [0] * (size - n - i))
    res = _bareiss_det(rows)
    return (-1) ** (n * (n - 1) // 2) * res


# ---------------------------------------------------------------------------
# factorization degree patterns over F_p

Pattern = tuple[int, ...]


def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_rem(out, mod, p)


def _poly_rem(a: list[int], b: list[int], p: int) -> list[int]:
    # b monic (leading coefficient 1 mod p)
    a = _poly_trim([c % p for c in a])
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - db
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * bi) % p
        a.pop()
        _poly_trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim(a[:]), _poly_trim(b[:])
    while b:
        inv = pow(b[-1], p - 2, p)
        b = [(c * inv) % p for c in b]  # make monic for stable remainder
        a, b = b, _poly_rem(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p)
        a = [(c * inv) % p for c in a]
    return a


def _poly_powp(w: list[int], mod: list[int], p: int) -> list[int]:
    """w(x)^p mod (mod, p) via repeated squaring."""
    result = [1]
    acc = w[:]
    e = p
    while e:
        if e & 1:
            result = _poly_mulmod(result, acc, mod, p)
        acc = _poly_mulmod(acc, acc, mod, p)
        e >>= 1
    return result


def degree_pattern_mod_p(coeffs: Sequence[int], p: int) -> Optional[Pattern]:
    """Degrees of the irreducible factors of f mod p, sorted ascending.

    Returns None when f mod p is not squarefree.  Uses distinct-degree
    factorization; only the degree split is computed, never the factors.
    """
    if coeffs[-1] % p == 0:
        raise ValueError(f"p={p} divides the leading coefficient")
    f = _poly_trim([c % p for c in coeffs])
    n = len(f) - 1
    # squarefree check: gcd(f, f') must be constant (f' == 0 falls out too)
    fprime = _poly_trim([(i * c) % p for i, c in enumerate(f)][1:])
    if len(_poly_gcd(f, fprime, p)) != 1:
        return None

    degrees: list[int] = []
    fstar = f[:]
    w = [0, 1]  # x
    d = 0
    while len(fstar) - 1 > 2 * d:
        d += 1
        w = _poly_powp(w, fstar, p)  # w = w^p mod fstar
        diff = w[:]
        while len(diff) < 2:
            diff.append(0)
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(fstar, _poly_trim(diff), p)
        if len(g) > 1:
            deg_g = len(g) - 1
            degrees.extend([d] * (deg_g // d))
            fstar = _poly_quo(fstar, g, p)
            w = _poly_rem(w, fstar, p) if len(fstar) > 1 else [0]
    if len(fstar) - 1 > 0:
        degrees.append(len(fstar) - 1)
    degrees.sort()
    assert sum(degrees) == n
    return tuple(degrees)


def _poly_quo(a: list[int], b: list[int], p: int) -> list[int]:
    # exact quotient of monic polynomials mod p
    a = a[:]
    db = len(b) - 1
    out = [0] * (len(a) - db)
    for shift in range(len(a) - db - 1, -1, -1):
        lead = a[shift + db]
        out[shift] = lead
        if lead:
            for i, bi in enumerate(b):
                a[shift + i] = (a[shift + i] - lead * bi) % p
    return out


# ---------------------------------------------------------------------------
# field records and per-prime outcomes


@dataclass(frozen=True)
class FieldRecord:
    """A number field given by a monic defining polynomial.

    `coeffs` is constant-term first and includes the leading 1.  `field_disc`
    is the field discriminant when known; it must divide the polynomial
    discriminant with square cofactor.
    """

    coeffs: tuple[int, ...]
    field_disc: Optional[int] = None
    label: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        n = self.degree
        if n not in (3, 4, 5):
            raise ValueError(f"degree must be 3, 4, or 5, got {n}")
        if self.coeffs[-1] != 1:
            raise ValueError("polynomial must be monic (leading coefficient 1)")
        if self.field_disc is not None:
            pd = self.poly_disc()
            if self.field_disc == 0 or pd % self.field_disc != 0:
                raise ValueError(
                    f"field discriminant {self.field_disc} does not divide the "
                    f"polynomial discriminant {pd}"
                )
            ratio = pd // self.field_disc
            if ratio <= 0 or math.isqrt(ratio) ** 2 != ratio:
                raise ValueError(
                    f"poly disc / field disc = {ratio} is not a positive square"
                )

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def poly_disc(self) -> int:
        return poly_disc(self.coeffs)

    def name(self) -> str:
        return self.label or "poly[" + ",".join(str(c) for c in self.coeffs) + "]"


class OutcomeKind(Enum):
    CLASS = "class"
    RAMIFIED = "ramified"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class FrobOutcome:
    prime: int
    kind: OutcomeKind
    cycle_type: Optional[CycleType] = None


def frobenius_outcome(rec: FieldRecord, p: int) -> FrobOutcome:
    """Classify one prime: Frobenius class, ramified, or indeterminate.

    Primes dividing the polynomial discriminant but not a known field
    discriminant are indeterminate (no maximal-order computation here).
    """
    pd = rec.poly_disc()
    if pd % p != 0:
        pattern = degree_pattern_mod_p(rec.coeffs, p)
        if pattern is None:
            raise InternalError(
                f"f mod {p} not squarefree although {p} does not divide "
                f"disc={pd} for {rec.name()}"
            )
        return FrobOutcome(p, OutcomeKind.CLASS, class_of_degree_pattern(pattern, rec.degree))
    if rec.field_disc is not None and rec.field_disc % p == 0:
        return FrobOutcome(p, OutcomeKind.RAMIFIED)
    return FrobOutcome(p, OutcomeKind.INDETERMINATE)


def outcome_stream(rec: FieldRecord, bound: int, primes: Optional[PrimeSource] = None) -> Iterator[FrobOutcome]:
    """Per-prime outcomes for all primes <= bound, in order.

    Both statistics below consume this single stream, so they always agree on
    the underlying per-prime classification.
    """
    if primes is None:
        primes = PrimeSource()
    for p in primes.iter_up_to(bound):
        yield frobenius_outcome(rec, p)


def little_n_of_field(
    rec: FieldRecord,
    ct: CycleType,
    bound: int = DEFAULT_BOUND,
    primes: Optional[PrimeSource] = None,
) -> Union[int, str]:
    """Least prime ramified or with Frobenius class != ct.

    Returns TAINTED when an indeterminate prime precedes the decision, and
    NOT_FOUND when every prime <= bound has class exactly ct.
    """
    for out in outcome_stream(rec, bound, primes):
        if out.kind is OutcomeKind.RAMIFIED:
            return out.prime
        if out.kind is OutcomeKind.INDETERMINATE:
            return TAINTED
        if out.cycle_type != ct:
            return out.prime
    return NOT_FOUND


def big_N_of_field(
    rec: FieldRecord,
    ct: CycleType,
    bound: int = DEFAULT_BOUND,
    primes: Optional[PrimeSource] = None,
) -> Union[int, str]:
    """Least prime with Frobenius class exactly ct (ramified primes skipped)."""
    for out in outcome_stream(rec, bound, primes):
        if out.kind is OutcomeKind.INDETERMINATE:
            return TAINTED
        if out.kind is OutcomeKind.CLASS and out.cycle_type == ct:
            return out.prime
    return NOT_FOUND


# ---------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class ScanReport:
    quantity: str
    class_parts: str
    bound: int
    rows: tuple[tuple[str, Union[int, str]], ...]  # (field name, value)
    fields_total: int
    fields_decided: int
    tainted: int
    not_found: int
    empirical_mean: Optional[float]
    predicted_mean: float

    @property
    def deviation(self) -> Optional[float]:
        if self.empirical_mean is None:
            return None
        return abs(self.empirical_mean - self.predicted_mean)

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "class": self.class_parts,
            "bound": self.bound,
            "fields_total": self.fields_total,
            "fields_decided": self.fields_decided,
            "tainted": self.tainted,
            "not_found": self.not_found,
            "empirical_mean": self.empirical_mean,
            "predicted_mean": self.predicted_mean,
            "deviation": self.deviation,
            "rows": [{"field": name, "value": value} for name, value in self.rows],
        }


def aggregate_scan(
    records: Iterable[FieldRecord],
    ct: CycleType,
    quantity: str,
    bound: int = DEFAULT_BOUND,
    eps: float = series.DEFAULT_EPS,
) -> ScanReport:
    """Scan every record, average the decided values, attach the prediction."""
    if quantity not in ("little-n", "big-N"):
        raise ValueError(f"quantity must be 'little-n' or 'big-N', got {quantity!r}")
    scan = little_n_of_field if quantity == "little-n" else big_N_of_field
    primes = PrimeSource()
    rows: list[tuple[str, Union[int, str]]] = []
    degree: Optional[int] = None
    total = tainted = notfound = 0
    values: list[int] = []
    for rec in records:
        if degree is None:
            degree = rec.degree
            if ct.n != degree:
                raise ValueError(
                    f"class degree {ct.n} does not match field degree {degree}"
                )
        elif rec.degree != degree:
            raise ValueError(
                f"mixed degrees in scan: {degree} and {rec.degree} ({rec.name()})"
            )
        value = scan(rec, ct, bound, primes)
        rows.append((rec.name(), value))
        total += 1
        if value == TAINTED:
            tainted += 1
        elif value == NOT_FOUND:
            notfound += 1
        else:
            values.append(value)
    n = degree if degree is not None else ct.n
    if quantity == "little-n":
        predicted = series.avg_little_n(n, ct, eps).value
    else:
        predicted = series.avg_big_N(n, ct, eps).value
    return ScanReport(
        quantity=quantity,
        class_parts=ct.parts_label(),
        bound=bound,
        rows=tuple(rows),
        fields_total=total,
        fields_decided=len(values),
        tainted=tainted,
        not_found=notfound,
        empirical_mean=sum(values) / len(values) if values else None,
        predicted_mean=predicted,
    )


# ---------------------------------------------------------------------------
# record ingestion


def _record_from_obj(obj: dict, where: str) -> FieldRecord:
    try:
        coeffs = tuple(int(c) for c in obj["coeffs"])
    except (KeyError, TypeError, ValueError):
        raise ValueError(f"{where}: missing or malformed 'coeffs'") from None
    disc = obj.get("disc")
    label = obj.get("label")
    return FieldRecord(
        coeffs=coeffs,
        field_disc=int(disc) if disc is not None else None,
        label=str(label) if label is not None else None,
    )


def load_records(path: Union[str, Path]) -> list[FieldRecord]:
    """Read field records from a JSON-lines or CSV file.

    JSONL: one object per line, {"coeffs": [c0..cn], "disc": d, "label": s},
    disc and label optional.  CSV: columns label,disc,c0,...,cn (disc may be
    empty).
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    if path.suffix.lower() == ".csv":
        return _load_csv(path)
    records = []
    with path.open() as fh:
        for i, line in enumerate(fh, 1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{i}: invalid JSON: {exc}") from None
            records.append(_record_from_obj(obj, f"{path}:{i}"))
    return records


def _load_csv(path: Path) -> list[FieldRecord]:
    records = []
    with path.open(newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            return records
        coeff_cols = sorted(
            (c for c in reader.fieldnames if c.startswith("c") and c[1:].isdigit()),
            key=lambda c: int(c[1:]),
        )
        if not coeff_cols:
            raise ValueError(f"{path}: no coefficient columns c0..cn found")
        for i, row in enumerate(reader, 2):
            coeffs = tuple(int(row[c]) for c in coeff_cols)
            disc = row.get("disc", "").strip()
            label = row.get("label", "").strip()
            records.append(
                FieldRecord(
                    coeffs=coeffs,
                    field_disc=int(disc) if disc else None,
                    label=label or None,
                )
            )
    return records
