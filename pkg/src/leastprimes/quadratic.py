"""Brute force over quadratic fields: Kronecker symbols, fundamental
discriminants, and empirical averages of the least split/inert/ramified-or-
wrong-sign primes, for comparison with the series limits."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from . import series
from .primes import PrimeSource

TARGETS = ("+1", "-1", "not+1", "not-1")
QUANTITIES = ("N+1", "N-1", "n+1", "n-1", "erdos-prime")


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    res = 1
    if n < 0:
        n = -n
        if a < 0:
            res = -res
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            res = -res
    # n odd positive: Jacobi with reciprocity
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                res = -res
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            res = -res
        a %= n
    return res if n == 1 else 0


def squarefree_mask(limit: int) -> np.ndarray:
    """Boolean mask, mask[k] True iff k is squarefree (mask[0] False)."""
    mask = np.ones(limit + 1, dtype=bool)
    mask[0] = False
    for q in range(2, math.isqrt(limit) + 1):
        mask[q * q :: q * q] = False
    return mask


def fundamental_array(limit: int, sign: int) -> np.ndarray:
    """All fundamental discriminants D with sign(D)=sign, |D| <= limit,
    ascending in |D|, as signed int64."""
    if limit < 3:
        return np.empty(0, dtype=np.int64)
    sf = squarefree_mask(limit)
    a = np.arange(limit + 1, dtype=np.int64)
    quarter = a >> 2
    if sign > 0:
        cond = (a % 4 == 1) & sf & (a > 1)
        cond |= (a % 4 == 0) & np.isin(quarter % 4, (2, 3)) & sf[quarter]
        return a[cond]
    cond = (a % 4 == 3) & sf
    cond |= (a % 4 == 0) & np.isin(quarter % 4, (1, 2)) & sf[quarter]
    return -a[cond]


def fundamental_discriminants(limit: int, sign: int) -> Iterator[int]:
    """Stream of fundamental discriminants with ±D <= limit, ascending |D|."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    yield from fundamental_array(limit, sign).tolist()


def is_fundamental_discriminant(d: int) -> bool:
    if d == 1 or d == 0:
        return False
    if d % 4 == 1:
        return _is_squarefree(abs(d))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _is_squarefree(abs(m))
    return False


def _is_squarefree(n: int) -> bool:
    if n % 4 == 0:
        return False
    q = 3
    while q * q <= n:
        if n % (q * q) == 0:
            return False
        q += 2
    return True


def fundamental_discriminant_of(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for a nonsquare integer d."""
    if d == 0:
        raise ValueError("d must be nonzero")
    s = 1 if d > 0 else -1
    n = abs(d)
    core = 1
    q = 2
    while q * q <= n:
        exp = 0
        while n % q == 0:
            n //= q
            exp += 1
        if exp % 2:
            core *= q
        q += 1 if q == 2 else 2
    core *= n  # leftover prime
    core *= s
    if core == 1:
        raise ValueError(f"{d} is a perfect square; no quadratic field")
    return core if core % 4 == 1 else 4 * core


def _matches(chi: int, target: str) -> bool:
    if target == "+1":
        return chi == 1
    if target == "-1":
        return chi == -1
    if target == "not+1":
        return chi != 1
    if target == "not-1":
        return chi != -1
    raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")


def first_sign_prime(d: int, target: str, primes: Optional[PrimeSource] = None) -> int:
    """Smallest prime p whose symbol (d/p) meets the target condition."""
    if primes is None:
        primes = PrimeSource()
    k = 0
    while True:
        try:
            p = primes[k]
        except IndexError:
            raise RuntimeError(
                f"no prime below {primes.hard_limit} with ({d}/p) matching "
                f"{target}; this indicates a bug"
            ) from None
        if _matches(kronecker(d, p), target):
            return p
        k += 1


def _chi_table(p: int) -> np.ndarray:
    """chi values (d/p) indexed by d mod p (d mod 8 for p=2)."""
    if p == 2:
        return np.array([0, 1, 0, -1, 0, -1, 0, 1], dtype=np.int8)
    return np.array([kronecker(r, p) for r in range(p)], dtype=np.int8)


def scan_first_sign_primes(ds: np.ndarray, target: str, prime_limit: int = 10**4) -> np.ndarray:
    """Vectorised first_sign_prime over an array of discriminants."""
    from .primes import sieve_primes

    out = np.zeros(ds.size, dtype=np.int64)
    active = np.arange(ds.size)
    for p in sieve_primes(prime_limit):
        if active.size == 0:
            return out
        mod = p if p != 2 else 8
        chi = _chi_table(p)[ds[active] % mod]
        if target == "+1":
            hit = chi == 1
        elif target == "-1":
            hit = chi == -1
        elif target == "not+1":
            hit = chi != 1
        elif target == "not-1":
            hit = chi != -1
        else:
            raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")
        out[active[hit]] = p
        active = active[~hit]
    raise RuntimeError(
        f"{active.size} discriminants undecided below {prime_limit}; "
        "this indicates a bug"
    )


@dataclass(frozen=True)
class QuadraticAverages:
    """Empirical mean of a first-sign-prime statistic with its predicted limit."""

    quantity: str
    sign: str
    limit: int
    count: int
    mean: float
    predicted: float

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "sign": self.sign,
            "limit": self.limit,
            "count": self.count,
            "mean": self.mean,
            "predicted": self.predicted,
            "deviation": self.mean - self.predicted,
        }


def _quantity_target(quantity: str) -> str:
    # N,+1: first split prime; N,-1: first inert; n,±1: first ramified-or-wrong-sign
    return {
        "N+1": "+1",
        "N-1": "-1",
        "n+1": "not+1",
        "n-1": "not-1",
        "erdos-prime": "-1",
    }[quantity]


def predicted_limit(quantity: str, eps: float = series.DEFAULT_EPS) -> float:
    if quantity in ("N+1", "N-1"):
        return series.pollack_constant(eps).value
    if quantity in ("n+1", "n-1"):
        return series.quadratic_little_n(eps).value
    if quantity == "erdos-prime":
        return series.erdos_constant(eps).value
    raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")


def discriminant_family(limit: int, sign: str, quantity: str) -> np.ndarray:
    if quantity == "erdos-prime":
        from .primes import sieve_primes

        ps = np.asarray(sieve_primes(limit), dtype=np.int64)
        return ps[ps > 2]
    if sign == "both":
        return np.concatenate([fundamental_array(limit, +1), fundamental_array(limit, -1)])
    if sign == "+":
        return fundamental_array(limit, +1)
    if sign == "-":
        return fundamental_array(limit, -1)
    raise ValueError(f"sign must be '+', '-', or 'both', got {sign!r}")


def quadratic_averages(
    limit: int,
    sign: str,
    quantity: str,
    eps: float = series.DEFAULT_EPS,
    return_values: bool = False,
):
    """Average the statistic over all fundamental discriminants |D| <= limit
    (or over odd prime discriminants for the prime-family variant)."""
    if limit < 3:
        raise ValueError(f"limit must be >= 3, got {limit}")
    if quantity not in QUANTITIES:
        raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")
    ds = discriminant_family(limit, sign, quantity)
    values = scan_first_sign_primes(ds, _quantity_target(quantity))
    result = QuadraticAverages(
        quantity=quantity,
        sign="prime" if quantity == "erdos-prime" else sign,
        limit=limit,
        count=int(ds.size),
        mean=float(values.mean()) if ds.size else math.nan,
        predicted=predicted_limit(quantity, eps),
    )
    if return_values:
        return result, ds, values
    return result
