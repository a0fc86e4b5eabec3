"""First-hit expectation series over primes.

Every average this package computes has the shape

    E = sum_q  q * hit(q) * prod_{p < q} (1 - hit(p))

where hit(p) is an exact rational per-prime decision probability.  The
evaluator keeps the survival product in exact integer arithmetic while it is
large, switches to floating point once it is tiny, accumulates terms with
compensated summation, and reports a rigorous bound on the truncated tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .localmodel import f as local_f
from .primes import PrimeSource, nth_prime_upper_bound
from .symgroup import CycleType, class_density

DEFAULT_EPS = 1e-10
DEFAULT_SIEVE_LIMIT = 1_000_000

# Switch the survival product to floating point once it drops below this
# magnitude; by then the remaining terms are far below any useful eps.
EXACT_MAGNITUDE_FLOOR_BITS = -100  # 2^-100 < 1e-30

# Also switch once the unreduced integer pair grows past this many bits: the
# switch rounding is 2^-53 relative either way, and unbounded integers make
# slow-decaying products (survival ratios near 1) quadratically expensive.
EXACT_BITS_CAP = 4096


class SeriesConvergenceError(RuntimeError):
    """Raised when the tail bound cannot be pushed below eps within the sieve."""


@dataclass(frozen=True)
class SeriesResult:
    """A truncated series value with its truncation report."""

    value: float
    terms_used: int
    last_prime: int
    tail_estimate: float
    requested_eps: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "terms_used": self.terms_used,
            "last_prime": self.last_prime,
            "tail_estimate": self.tail_estimate,
            "requested_eps": self.requested_eps,
        }


@dataclass(frozen=True)
class HitModel:
    """Per-prime decision model.

    `hit` maps a prime to the exact probability that the scan is decided
    there.  `survival_sup` maps a prime q to an upper bound on 1 - hit(p)
    valid for every prime p > q; it feeds the tail bound.  All models built
    by this module supply a tight monotone bound.
    """

    hit: Callable[[int], Fraction]
    survival_sup: Callable[[int], float]


def _ratio_to_float(num: int, den: int) -> float:
    """num/den for positive ints of any size, accurate to <1 ulp of 2^-55."""
    shift = den.bit_length() - num.bit_length() + 55
    if shift >= 0:
        return math.ldexp((num << shift) // den, -shift)
    return math.ldexp(num // (den << -shift), -shift)


def _tail_bound(prod: float, k_used: int, s: float) -> float:
    """Bound the omitted tail after the first k_used primes.

    The j-th omitted term is p_{K+j} * hit * (survival product) with the
    product bounded by prod * s^(j-1); primes are bounded by the explicit
    k-th prime upper bound.  Finite for any s < 1.
    """
    if prod == 0.0:
        return 0.0
    if not s < 1.0:
        return math.inf
    total = 0.0
    weight = 1.0
    j = 1
    while True:
        t = nth_prime_upper_bound(k_used + j) * weight
        total += t
        # ub(k+1)/ub(k) <= 1 + 2/k, so the remainder is geometric once
        # r = s*(1 + 2/k) dips below 1.
        r = s * (1.0 + 2.0 / (k_used + j))
        if r < 1.0:
            closure = t * r / (1.0 - r)
            if closure <= 1e-6 * total or closure == 0.0:
                return prod * (total + closure)
        weight *= s
        j += 1
        if j > 5_000_000:
            return math.inf


def first_hit_expectation(
    model: HitModel,
    eps: float = DEFAULT_EPS,
    *,
    sieve_limit: int = DEFAULT_SIEVE_LIMIT,
    primes: Optional[PrimeSource] = None,
) -> SeriesResult:
    """Evaluate sum_q q*hit(q)*prod_{p<q}(1-hit(p)) until the tail is < eps.

    Always includes at least the q=2 term.  Raises SeriesConvergenceError if
    the sieve is exhausted first (e.g. hit identically 0).
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if primes is None:
        primes = PrimeSource(hard_limit=sieve_limit)

    total = 0.0
    comp = 0.0  # Neumaier compensation
    num, den = 1, 1  # exact survival product, unreduced
    prod_f: Optional[float] = None  # float survival product once switched
    k = 0
    q = 2
    checking_tail = False
    while True:
        try:
            q = primes[k]
        except IndexError:
            surv = prod_f if prod_f is not None else _ratio_to_float(num, den)
            raise SeriesConvergenceError(
                f"tail bound still above eps={eps} after exhausting primes below "
                f"{primes.hard_limit} (survival product {surv:.3e}); "
                "the hit model may be degenerate"
            ) from None
        h = model.hit(q)
        if not 0 <= h <= 1:
            raise ValueError(f"hit probability {h} at p={q} is outside [0,1]")
        if prod_f is None:
            term = _ratio_to_float(num * h.numerator * q, den * h.denominator)
        else:
            term = q * float(h) * prod_f
        # compensated accumulation
        t = total + term
        comp += (total - t) + term if abs(total) >= abs(term) else (term - t) + total
        total = t
        s = 1 - h
        if prod_f is None:
            num *= s.numerator
            den *= s.denominator
            bits = num.bit_length() - den.bit_length()
            if num == 0 or bits < EXACT_MAGNITUDE_FLOOR_BITS or den.bit_length() > EXACT_BITS_CAP:
                prod_f = _ratio_to_float(num, den) if num else 0.0
        else:
            prod_f *= float(s)
        k += 1
        prod_now = prod_f if prod_f is not None else _ratio_to_float(num, den)
        s_sup = model.survival_sup(q)
        # cheap proxy before paying for the full bound
        if not checking_tail:
            if s_sup < 1.0 and prod_now * nth_prime_upper_bound(k + 1) / (1.0 - s_sup) < 0.5 * eps:
                checking_tail = True
            else:
                continue
        tail = _tail_bound(prod_now, k, s_sup)
        if tail <= eps:
            return SeriesResult(
                value=total + comp,
                terms_used=k,
                last_prime=q,
                tail_estimate=tail,
                requested_eps=eps,
            )


# ---------------------------------------------------------------------------
# model constructors


def little_n_model(n: int, ct: CycleType) -> HitModel:
    """Scan ends at the first prime ramified or with Frobenius outside ct."""
    c = class_density(ct)
    cf = float(c)

    def hit(p: int) -> Fraction:
        fp = local_f(n, p)
        return (1 - c + fp) / (1 + fp)

    # survival = c/(1+f(p)) increases towards c as p grows
    return HitModel(hit=hit, survival_sup=lambda q: cf)


def big_N_model(n: int, ct: CycleType) -> HitModel:
    """Scan ends at the first prime with Frobenius exactly ct."""
    c = class_density(ct)

    def hit(p: int) -> Fraction:
        return c / (1 + local_f(n, p))

    def survival_sup(q: int) -> float:
        # (1-c+f)/(1+f) decreases in p, so its value at q bounds all p > q
        fq = local_f(n, q)
        return float((1 - c + fq) / (1 + fq))

    return HitModel(hit=hit, survival_sup=survival_sup)


def union_odd_model(n: int) -> HitModel:
    """Scan for the first Frobenius in the union of classes outside A_n.

    That union always has density 1/2 in S_n.
    """
    half = Fraction(1, 2)

    def hit(p: int) -> Fraction:
        return half / (1 + local_f(n, p))

    def survival_sup(q: int) -> float:
        fq = local_f(n, q)
        return float((half + fq) / (1 + fq))

    return HitModel(hit=hit, survival_sup=survival_sup)


def quadratic_little_n_model() -> HitModel:
    """First prime ramified or with the wrong quadratic symbol.

    Per prime: ramify 1/(p+1), each symbol value p/(2(p+1)).
    """
    return HitModel(
        hit=lambda p: Fraction(p + 2, 2 * (p + 1)),
        survival_sup=lambda q: 0.5,  # survival p/(2(p+1)) increases towards 1/2
    )


def pollack_model() -> HitModel:
    """First prime with a prescribed quadratic symbol value, over all
    fundamental discriminants."""
    return HitModel(
        hit=lambda p: Fraction(p, 2 * (p + 1)),
        survival_sup=lambda q: (q + 2) / (2.0 * (q + 1)),  # decreasing
    )


def erdos_model() -> HitModel:
    """Symbol values are a fair coin per prime (prime-discriminant family)."""
    half = Fraction(1, 2)
    return HitModel(hit=lambda p: half, survival_sup=lambda q: 0.5)


# ---------------------------------------------------------------------------
# spec-level operations


def avg_little_n(n: int, ct: CycleType, eps: float = DEFAULT_EPS, **kw) -> SeriesResult:
    return first_hit_expectation(little_n_model(n, ct), eps, **kw)


def avg_big_N(n: int, ct: CycleType, eps: float = DEFAULT_EPS, **kw) -> SeriesResult:
    return first_hit_expectation(big_N_model(n, ct), eps, **kw)


def avg_big_N_union_odd(n: int, eps: float = DEFAULT_EPS, **kw) -> SeriesResult:
    return first_hit_expectation(union_odd_model(n), eps, **kw)


def quadratic_little_n(eps: float = DEFAULT_EPS, **kw) -> SeriesResult:
    return first_hit_expectation(quadratic_little_n_model(), eps, **kw)


def pollack_constant(eps: float = DEFAULT_EPS, **kw) -> SeriesResult:
    return first_hit_expectation(pollack_model(), eps, **kw)


def erdos_constant(eps: float = DEFAULT_EPS, **kw) -> SeriesResult:
    return first_hit_expectation(erdos_model(), eps, **kw)
