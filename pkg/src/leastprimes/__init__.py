"""Average least primes with prescribed Frobenius splitting behaviour.

Library layout:

- symgroup: conjugacy classes of S_n as cycle types
- localmodel: per-prime splitting densities for degrees 3, 4, 5
- series: the first-hit expectation series and every named constant
- montecarlo: stochastic sampling of the same local model
- quadratic: brute force over fundamental discriminants
- frobscan: least-prime statistics of concrete fields from polynomials
- cli: the `leastprimes` command
"""

from .frobscan import (
    NOT_FOUND,
    TAINTED,
    FieldRecord,
    FrobOutcome,
    OutcomeKind,
    ScanReport,
    aggregate_scan,
    big_N_of_field,
    degree_pattern_mod_p,
    frobenius_outcome,
    little_n_of_field,
    load_records,
    poly_disc,
)
from .localmodel import (
    f,
    model_table,
    ramified_densities,
    ramified_density_total,
    unramified_density,
)
from .montecarlo import McEstimate, estimate, sample_first_hit
from .quadratic import (
    QuadraticAverages,
    first_sign_prime,
    fundamental_discriminants,
    kronecker,
    quadratic_averages,
)
from .series import (
    HitModel,
    SeriesConvergenceError,
    SeriesResult,
    avg_big_N,
    avg_big_N_union_odd,
    avg_little_n,
    erdos_constant,
    first_hit_expectation,
    pollack_constant,
    quadratic_little_n,
)
from .symgroup import (
    CycleType,
    class_density,
    class_of_degree_pattern,
    class_size,
    cycle_types,
    parse_class_spec,
)

__version__ = "0.1.0"
