"""Monte-Carlo sampling of the per-prime decision model.

An independent stochastic check on the series engine: walk the primes, draw
Bernoulli(hit(p)) per prime, record the first success.  Draws come from a
counter-based generator keyed by (seed, sample index, prime index), so the
result is bit-reproducible and independent of batching or scheduling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .primes import PrimeSource
from .series import HitModel, big_N_model, little_n_model, union_odd_model
from .symgroup import CycleType

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

QUANTITIES = ("little-n", "big-N", "big-N-odd-union")


def _mix64(z: int) -> int:
    """SplitMix64 finalizer on a 64-bit state."""
    z &= _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def _stream_key(seed: int, index: int) -> int:
    return _mix64((seed + (index + 1) * _GOLDEN) & _MASK)


def _uniform53(key: int, step: int) -> float:
    """The (key, step) cell of the counter-based stream, as a 53-bit uniform."""
    return (_mix64((key + step * _GOLDEN) & _MASK) >> 11) * 2.0**-53


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


@dataclass(frozen=True)
class McEstimate:
    """Sample mean of the first-hit prime with its standard error."""

    mean: float
    std_error: float
    samples: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
        }


def sample_first_hit(
    model: HitModel,
    rng_seed: int,
    sample_index: int = 0,
    primes: Optional[PrimeSource] = None,
) -> int:
    """Walk primes, drawing Bernoulli(hit(p)) each; return the first success."""
    if primes is None:
        primes = PrimeSource()
    key = _stream_key(rng_seed, sample_index)
    k = 0
    while True:
        try:
            p = primes[k]
        except IndexError:
            raise RuntimeError(
                f"no hit below the sieve limit {primes.hard_limit}; "
                "the hit model is degenerate"
            ) from None
        if _uniform53(key, k + 1) < float(model.hit(p)):
            return p
        k += 1


def model_for(n: int, ct: Optional[CycleType], quantity: str) -> HitModel:
    if quantity == "little-n":
        return little_n_model(n, ct)
    if quantity == "big-N":
        return big_N_model(n, ct)
    if quantity == "big-N-odd-union":
        return union_odd_model(n)
    raise ValueError(f"unknown quantity {quantity!r}; expected one of {QUANTITIES}")


def sample_counts(
    model: HitModel,
    samples: int,
    seed: int,
    primes: Optional[PrimeSource] = None,
) -> dict[int, int]:
    """Histogram {first-hit prime: count} over `samples` independent streams.

    Vectorised over samples; identical to repeated sample_first_hit calls.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    if primes is None:
        primes = PrimeSource()
    idx = np.arange(samples, dtype=np.uint64)
    with np.errstate(over="ignore"):
        keys = _mix64_np((np.uint64(seed & _MASK) + (idx + np.uint64(1)) * np.uint64(_GOLDEN)))
    counts: dict[int, int] = {}
    k = 0
    while keys.size:
        p = primes[k]
        hp = float(model.hit(p))
        step = np.uint64(((k + 1) * _GOLDEN) & _MASK)
        with np.errstate(over="ignore"):
            u = (_mix64_np(keys + step) >> np.uint64(11)) * 2.0**-53
        hit = u < hp
        nhit = int(hit.sum())
        if nhit:
            counts[p] = nhit
        keys = keys[~hit]
        k += 1
    return counts


def estimate_from_counts(counts: dict[int, int], seed: int) -> McEstimate:
    n = sum(counts.values())
    total = sum(p * c for p, c in counts.items())
    total2 = sum(p * p * c for p, c in counts.items())
    mean = total / n
    var = (total2 - n * mean * mean) / (n - 1) if n > 1 else 0.0
    return McEstimate(
        mean=mean,
        std_error=math.sqrt(max(var, 0.0) / n),
        samples=n,
        seed=seed,
    )


def estimate(
    n: int,
    ct: Optional[CycleType],
    quantity: str,
    samples: int,
    seed: int,
    primes: Optional[PrimeSource] = None,
) -> McEstimate:
    """Mean and standard error of the first-hit prime for a table cell."""
    model = model_for(n, ct, quantity)
    counts = sample_counts(model, samples, seed, primes)
    return estimate_from_counts(counts, seed)
