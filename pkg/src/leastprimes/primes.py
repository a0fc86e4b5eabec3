"""Prime generation shared by the series, scanner, and quadratic modules."""

from __future__ import annotations

import math
from array import array

_SMALL_PRIMES = (2, 3, 5, 7, 11)


def sieve_primes(limit: int) -> array:
    """All primes <= limit, ascending, as an array of native ints."""
    if limit < 2:
        return array("q")
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    p = 2
    while p * p <= limit:
        if flags[p]:
            start = p * p
            flags[start :: p] = bytearray(len(range(start, limit + 1, p)))
        p += 1
    return array("q", (i for i, f in enumerate(flags) if f))


class PrimeSource:
    """A growable ascending prime list.

    Extends itself by re-sieving at twice the previous bound whenever an index
    past the current end is requested, up to `hard_limit` (the divergence guard
    for series that never terminate).
    """

    def __init__(self, initial_limit: int = 1 << 16, hard_limit: int = 10**8):
        self.hard_limit = hard_limit
        self._limit = min(initial_limit, hard_limit)
        self._primes = sieve_primes(self._limit)

    def __len__(self) -> int:
        return len(self._primes)

    def __getitem__(self, k: int) -> int:
        while k >= len(self._primes):
            if self._limit >= self.hard_limit:
                raise IndexError(
                    f"prime index {k} exceeds sieve hard limit {self.hard_limit}"
                )
            self._limit = min(self._limit * 2, self.hard_limit)
            self._primes = sieve_primes(self._limit)
        return self._primes[k]

    def iter_up_to(self, bound: int):
        """Yield primes <= bound in ascending order."""
        k = 0
        while True:
            try:
                p = self[k]
            except IndexError:
                return
            if p > bound:
                return
            yield p
            k += 1


def is_prime(n: int) -> bool:
    """Trial-division primality check; intended for input validation."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def nth_prime_upper_bound(k: int) -> float:
    """Upper bound for the k-th prime (1-indexed).

    Uses p_k < k (ln k + ln ln k) for k >= 6, exact values below.
    """
    if k < 1:
        raise ValueError("prime index must be >= 1")
    if k <= len(_SMALL_PRIMES):
        return float(_SMALL_PRIMES[k - 1])
    lk = math.log(k)
    return k * (lk + math.log(lk))
