"""Local probability model for primes in S_n-fields, n in {3,4,5}.

At a prime p, a field is unramified with Frobenius class C with probability
|C|/|S_n| / (1+f(p)), or ramified with splitting type r with probability
c_r(p) / (1+f(p)).  The per-degree mass function f and the per-type
multipliers c_r are short polynomials in 1/p with rational coefficients,
normalised so that the type multipliers sum to f(p) exactly.
"""

from __future__ import annotations

from fractions import Fraction

from .symgroup import CycleType, class_density, cycle_types

SUPPORTED_DEGREES = (3, 4, 5)

# f(p) = sum coeff_k / p^k, keyed by degree
_F_COEFFS = {
    3: ((1, 1), (1, 2)),
    4: ((1, 1), (2, 2), (1, 3)),
    5: ((1, 1), (2, 2), (2, 3), (1, 4)),
}

# ramified splitting types: label -> multiplier c(p) = coeff / p^power
_RAMIFIED_TYPES: dict[int, tuple[tuple[str, Fraction, int], ...]] = {
    3: (
        ("1^2 1", Fraction(1), 1),
        ("1^3", Fraction(1), 2),
    ),
    4: (
        ("1^2 1 1", Fraction(1, 2), 1),
        ("1^2 2", Fraction(1, 2), 1),
        ("1^2 1^2", Fraction(1, 2), 2),
        ("2^2", Fraction(1, 2), 2),
        ("1^3 1", Fraction(1), 2),
        ("1^4", Fraction(1), 3),
    ),
    5: (
        ("1^2 1 1 1", Fraction(1, 6), 1),
        ("1^2 1 2", Fraction(1, 2), 1),
        ("1^2 3", Fraction(1, 3), 1),
        ("1^2 1^2 1", Fraction(1, 2), 2),
        ("2^2 1", Fraction(1, 2), 2),
        ("1^3 1 1", Fraction(1, 2), 2),
        ("1^3 2", Fraction(1, 2), 2),
        ("1^3 1^2", Fraction(1), 3),
        ("1^4 1", Fraction(1), 3),
        ("1^5", Fraction(1), 4),
    ),
}


def _check_degree(n: int) -> None:
    if n not in SUPPORTED_DEGREES:
        raise ValueError(f"local model is defined for degrees {SUPPORTED_DEGREES}, got {n}")


def f(n: int, p: int) -> Fraction:
    """Ramified mass f(p) for degree n, exact."""
    _check_degree(n)
    return sum((Fraction(c, p**k) for c, k in _F_COEFFS[n]), Fraction(0))


def splitting_type_labels(n: int) -> tuple[str, ...]:
    _check_degree(n)
    return tuple(label for label, _, _ in _RAMIFIED_TYPES[n])


def unramified_density(n: int, p: int, ct: CycleType) -> Fraction:
    """Probability that p is unramified with Frobenius class ct."""
    _check_degree(n)
    if ct.n != n:
        raise ValueError(f"class {ct.parts} has degree {ct.n}, model degree is {n}")
    return class_density(ct) / (1 + f(n, p))


def ramified_densities(n: int, p: int) -> dict[str, Fraction]:
    """Per-splitting-type ramification probabilities at p, exact."""
    _check_degree(n)
    denom = 1 + f(n, p)
    return {label: (c / p**k) / denom for label, c, k in _RAMIFIED_TYPES[n]}


def ramified_density_total(n: int, p: int) -> Fraction:
    """Total probability that p ramifies: f(p)/(1+f(p))."""
    fp = f(n, p)
    return fp / (1 + fp)


def model_table(n: int, p: int) -> dict:
    """Full density table at (n, p), for the CLI `model dump` path."""
    _check_degree(n)
    unram = {
        ct.parts_label(): unramified_density(n, p, ct) for ct in cycle_types(n)
    }
    ram = ramified_densities(n, p)
    total = sum(unram.values()) + sum(ram.values())
    return {
        "n": n,
        "p": p,
        "f": str(f(n, p)),
        "unramified": {k: str(v) for k, v in unram.items()},
        "ramified": {k: str(v) for k, v in ram.items()},
        "total": str(total),
    }
