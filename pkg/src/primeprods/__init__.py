"""primeprods: exact desk-scale checks for residue classes represented by
short products of primes.

Submodules: modular (sieve/inverses/unit metadata), expsums (exponential sums,
counting functions, energy, bilinear checks), coverage (class coverage with
witnesses), admissibility (sieve constants and exponent conditions),
sieve_analysis (sequences, profiles, degrees), acceptance (criterion sweeps),
cli (command-line frontend).
"""

from .admissibility import (
    DEFAULT_CONSTANTS,
    AdmissibilityQuery,
    AdmissibilityVerdict,
    GreavesConstants,
    Pair,
    Theta,
    check_admissibility,
    closed_form_alpha,
    quadruple_query,
    region_scan,
    reproduce_table,
    theta,
    to_pair,
    triple_query,
)
from .coverage import (
    AlmostPrimeTable,
    CoverageReport,
    almost_primes,
    coverage_check,
    coverage_check_bruteforce,
    minimal_exponent_search,
)
from .errors import (
    CapacityError,
    IncompatibleCountsError,
    NotInvertibleError,
    ResourceBudgetError,
    UnsupportedCaseError,
)
from .expsums import (
    BilinearReport,
    BoundContext,
    DeviationRecord,
    EnergyBoundReport,
    ExpSumValue,
    InverseResidueCounts,
    build_counts,
    build_counts_1,
    check_bilinear,
    check_energy_bound,
    convolve,
    delta_k,
    energy,
    exp_sum_from_counts,
    s_k,
    s_k_direct,
    t_k,
)
from .modular import (
    Modulus,
    PrimeTable,
    ResidueClass,
    batch_inverse,
    coprime_primes,
    coprime_primes_upto,
    mod_inverse,
    sieve_primes,
)
from .sieve_analysis import (
    DistributionProfile,
    LevelExponents,
    SievedSequence,
    SieveWitness,
    build_sequence,
    end_to_end_witness,
    level_exponents,
    profile_distribution,
    sieve_predicate,
)

__version__ = "0.1.0"
