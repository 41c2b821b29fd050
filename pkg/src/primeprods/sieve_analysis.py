"""Sieved residue sequences, divisibility profiles, and degree arithmetic.

For a unit a the sequence holds the window representatives v ≡ a·p̄₁⋯p̄_k
(mod m) with v <= y, kept with multiplicity.  Divisibility counts over d <= D
are compared against the expected N/d; the degree g = (β+ε)/d_exponent feeds
the strict sieve threshold g < ϑ_ℓ, which is consumed as a black-box predicate.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .admissibility import DEFAULT_CONSTANTS, GreavesConstants
from .coverage import omega_sieve
from .errors import ResourceBudgetError, UnsupportedCaseError
from .modular import Modulus, as_modulus, coprime_primes_upto, mod_inverse
from .expsums import count_stages

SEQUENCE_BUDGET = 10**8


@dataclass(frozen=True)
class SievedSequence:
    """Multiset of window representatives with one lexicographically-smallest
    witness tuple per distinct value."""

    a: int
    m: Modulus
    x: float
    y: float
    k: int
    tuple_count: int  # π'(x)^k
    multiplicity: dict[int, int]
    witness: dict[int, tuple[int, ...]]

    @property
    def total(self) -> int:
        return sum(self.multiplicity.values())


def build_sequence(
    a: int,
    m: int | Modulus,
    x: float,
    y: float,
    k: int,
    *,
    budget: int | None = None,
    witnesses: bool = True,
) -> SievedSequence:
    """Exact multiplicities from the k-fold inverse-product counts; the total
    multiplicity equals T_k(a;x,y) by construction."""
    mod = as_modulus(m)
    mm = mod.m
    if math.gcd(a, mm) != 1:
        raise ValueError(f"a={a} must be coprime to m={mm}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if not 1 <= y <= mm:
        raise ValueError(f"window cutoff y={y} outside [1, m={mm}]")
    primes = coprime_primes_upto(x, mod)
    cap = SEQUENCE_BUDGET if budget is None else budget
    if len(primes) ** k > cap:
        raise ResourceBudgetError(
            f"{len(primes)}^{k} tuples exceed the budget of {cap}"
        )
    stages = count_stages(x, mod, k)
    counts = stages[-1]
    a_inv = mod_inverse(a, mod)
    mult: dict[int, int] = {}
    for v in range(1, min(math.floor(y), mm - 1) + 1):
        c = counts.counts[a_inv * v % mm]
        if c:
            mult[v] = c
    wit: dict[int, tuple[int, ...]] = {}
    if witnesses and mult:
        supports = [[c > 0 for c in st.counts] for st in stages]
        for v in mult:
            t = a_inv * v % mm
            tup: list[int] = []
            for i in range(1, k + 1):
                level = supports[k - i]
                for p in primes:
                    cand = t * p % mm  # peel p̄ off the inverse product
                    if level[cand]:
                        tup.append(p)
                        t = cand
                        break
                else:
                    raise RuntimeError(f"witness backtracking failed at v={v}")
            wit[v] = tuple(tup)
    return SievedSequence(
        a=a, m=mod, x=x, y=y, k=k,
        tuple_count=len(primes) ** k, multiplicity=mult, witness=wit,
    )


@dataclass(frozen=True)
class ProfileRecord:
    d: int
    count: int
    expected: float
    remainder: float
    coprime: bool


@dataclass(frozen=True)
class DistributionProfile:
    """Per-divisor counts against the expected N/d, N = π'(x)^k·⌊y⌋/m.

    The remainder sum is reported next to N^(1-κ) reference curves only; no
    power saving is asserted.
    """

    sequence: SievedSequence
    level: float
    main_count: float
    records: tuple[ProfileRecord, ...]
    sum_remainders: float
    reference_curves: dict[float, float]


def profile_distribution(
    seq: SievedSequence, level: float, kappas: tuple[float, ...] = (0.1, 0.25, 0.5)
) -> DistributionProfile:
    if level < 1:
        raise ValueError(f"level must be at least 1, got {level}")
    mm = seq.m.m
    big_n = seq.tuple_count * math.floor(seq.y) / mm
    ylim = math.floor(seq.y)
    records: list[ProfileRecord] = []
    for d in range(1, math.floor(level) + 1):
        coprime = math.gcd(d, mm) == 1
        # divisors sharing a factor with m cannot divide a unit representative
        count = (
            sum(seq.multiplicity.get(v, 0) for v in range(d, ylim + 1, d))
            if coprime
            else 0
        )
        expected = big_n / d
        records.append(ProfileRecord(d, count, expected, abs(count - expected), coprime))
    return DistributionProfile(
        sequence=seq,
        level=level,
        main_count=big_n,
        records=tuple(records),
        sum_remainders=math.fsum(r.remainder for r in records),
        reference_curves={kap: big_n ** (1.0 - kap) for kap in kappas},
    )


@dataclass(frozen=True)
class LevelExponents:
    """Level-of-distribution exponent and degree for one k, at x = m^α, y = m^β."""

    k: int
    alpha: float
    beta: float
    epsilon: float
    ell: int
    d_exponent: float
    degree: float | None  # g = (β+ε)/d_exponent when the denominator is positive
    theta: float
    sieve_pass: bool


def level_exponents(
    k: int,
    alpha: float,
    beta: float,
    epsilon: float = 0.0,
    ell: int = 2,
    constants: GreavesConstants = DEFAULT_CONSTANTS,
) -> LevelExponents:
    if k not in (1, 2, 3, 4):
        raise UnsupportedCaseError(f"no level formula for k={k}")
    if not 0.5 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [1/2, 1], got {alpha}")
    if not 0.0 <= beta <= 1.0:
        raise ValueError(f"beta must lie in [0, 1], got {beta}")
    if epsilon < 0.0:
        raise ValueError(f"epsilon must be nonnegative, got {epsilon}")
    th = constants.theta_value(ell)
    if k == 1:
        d_exp = min(alpha / 16 + beta - 1.0, alpha / 3 + beta - 1.25)
    elif k == 2:
        d_exp = alpha + beta - 1.5
    elif k == 3:
        d_exp = alpha / 2 + beta - 1.0
    else:
        d_exp = beta - 0.5
    if d_exp > 0.0:
        degree = (beta + epsilon) / d_exp
        ok = degree < th
    else:
        degree = None
        ok = False
    return LevelExponents(k, alpha, beta, epsilon, ell, d_exp, degree, th, ok)


def sieve_predicate(
    degree: float, ell: int, constants: GreavesConstants = DEFAULT_CONSTANTS
) -> bool:
    """Strict threshold g < ϑ_ℓ under which the weighted sieve guarantees an
    element with at most ell prime factors."""
    if not math.isfinite(degree):
        raise ValueError(f"degree must be finite, got {degree}")
    return degree < constants.theta_value(ell)


@dataclass(frozen=True)
class SieveWitness:
    value: int
    primes: tuple[int, ...]


def end_to_end_witness(
    m: int | Modulus,
    x: float,
    y: float,
    k: int,
    ell: int,
    a: int,
    *,
    budget: int | None = None,
) -> SieveWitness | None:
    """Smallest sequence element v >= 2 with Ω(v) <= ell, with its witnessing
    prime tuple; None when the window holds no such almost prime."""
    if ell < 1:
        raise ValueError(f"ell must be at least 1, got {ell}")
    seq = build_sequence(a, m, x, y, k, budget=budget, witnesses=True)
    if not seq.multiplicity:
        return None
    om = omega_sieve(max(seq.multiplicity))
    for v in sorted(seq.multiplicity):
        if v >= 2 and om[v] <= ell:
            return SieveWitness(v, seq.witness[v])
    return None
