"""Coverage of reduced residue classes by products p₁⋯p_k·s at small moduli.

Decides by exact computation which reduced classes a admit a solution of
p₁⋯p_k·s ≡ a (mod m) with primes p_i <= x and s <= y a product of at most
`ell` primes, and recovers one lexicographically-smallest witness per covered
class.  ell = 0 drops the s factor, k = 0 keeps only s.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import ResourceBudgetError
from .expsums import multiply_distributions
from .modular import Modulus, as_modulus, batch_inverse, coprime_primes_upto

ENUMERATION_BUDGET = 10**6


def omega_sieve(limit: int) -> np.ndarray:
    """Ω(n), the number of prime factors with multiplicity, for n in [0, limit]."""
    big_omega = np.zeros(max(limit + 1, 2), dtype=np.int8)
    for p in range(2, limit + 1):
        if big_omega[p] == 0:  # untouched by smaller primes, so p is prime
            q = p
            while q <= limit:
                big_omega[q::q] += 1
                q *= p
    return big_omega


@dataclass(frozen=True)
class AlmostPrimeTable:
    """Integers s in [2, y] with Ω(s) <= ell, ascending; ell = 1 is the primes."""

    y: float
    ell: int
    values: tuple[int, ...]


def almost_primes(y: float, ell: int) -> AlmostPrimeTable:
    if y < 2:
        raise ValueError(f"cutoff must be at least 2, got {y}")
    if ell < 1:
        raise ValueError(f"ell must be at least 1, got {ell}")
    om = omega_sieve(math.floor(y))
    hits = np.flatnonzero((om >= 1) & (om <= ell))
    return AlmostPrimeTable(y, ell, tuple(int(n) for n in hits))


@dataclass(frozen=True)
class CoverageReport:
    m: int
    x: float
    y: float
    k: int
    ell: int
    phi: int
    covered: tuple[int, ...]
    uncovered: tuple[int, ...]
    witness: dict[int, tuple[int, ...]]
    counts: dict[int, int]

    @property
    def fully_covered(self) -> bool:
        return not self.uncovered


def _coverage_inputs(mod: Modulus, x: float, y: float, k: int, ell: int, allow_large: bool):
    if k < 0 or ell < 0 or k + ell < 1:
        raise ValueError(f"need k >= 0, ell >= 0 and k + ell >= 1, got k={k}, ell={ell}")
    if not allow_large and (x > mod.m or y > mod.m):
        raise ValueError(
            f"x={x}, y={y} exceed m={mod.m}; pass allow_large=True for oversized windows"
        )
    primes = coprime_primes_upto(x, mod) if k >= 1 else []
    s_values: list[int] = []
    if ell >= 1 and y >= 2:
        s_values = [s for s in almost_primes(y, ell).values if math.gcd(s, mod.m) == 1]
    return primes, s_values


def coverage_check(
    m: int | Modulus,
    x: float,
    y: float,
    k: int,
    ell: int,
    *,
    allow_large: bool = False,
    witnesses: bool = True,
) -> CoverageReport:
    """Coverage by composing residue distributions, not by tuple enumeration.

    The k-fold prime-residue distribution is convolved with the s distribution;
    witnesses are recovered afterwards by backtracking through the partial
    compositions.
    """
    mod = as_modulus(m)
    primes, s_values = _coverage_inputs(mod, x, y, k, ell, allow_large)
    mm = mod.m

    dist = [0] * mm
    if ell >= 1:
        for s in s_values:
            dist[s % mm] += 1
    else:
        dist[1] = 1
    p_dist = [0] * mm
    for p in primes:
        p_dist[p % mm] += 1

    partials = [dist]  # partials[j] = (j primes)·s distribution
    for _ in range(k):
        partials.append(multiply_distributions(partials[-1], p_dist, mm))
    final = partials[-1]

    counts = {a: final[a] for a in mod.units}
    covered = tuple(a for a in mod.units if final[a])
    uncovered = tuple(a for a in mod.units if not final[a])
    witness: dict[int, tuple[int, ...]] = {}
    if witnesses and covered:
        witness = _backtrack_witnesses(mod, primes, s_values, ell, k, partials, covered)
    return CoverageReport(
        m=mm, x=x, y=y, k=k, ell=ell, phi=mod.phi,
        covered=covered, uncovered=uncovered, witness=witness, counts=counts,
    )


def _backtrack_witnesses(
    mod: Modulus,
    primes: list[int],
    s_values: list[int],
    ell: int,
    k: int,
    partials: list[list[int]],
    covered: Iterable[int],
) -> dict[int, tuple[int, ...]]:
    mm = mod.m
    supports = [[c > 0 for c in level] for level in partials]
    prime_inv = dict(zip(primes, batch_inverse(primes, mod)))
    smallest_s: dict[int, int] = {}
    for s in s_values:
        smallest_s.setdefault(s % mm, s)

    out: dict[int, tuple[int, ...]] = {}
    for a in covered:
        t = a
        tup: list[int] = []
        for i in range(1, k + 1):
            level = supports[k - i]
            for p in primes:
                cand = t * prime_inv[p] % mm
                if level[cand]:
                    tup.append(p)
                    t = cand
                    break
            else:  # positive count guarantees a completion
                raise RuntimeError(f"witness backtracking failed for class {a}")
        if ell >= 1:
            tup.append(smallest_s[t])
        out[a] = tuple(tup)
    return out


def coverage_check_bruteforce(
    m: int | Modulus,
    x: float,
    y: float,
    k: int,
    ell: int,
    *,
    allow_large: bool = False,
    budget: int = ENUMERATION_BUDGET,
) -> CoverageReport:
    """Reference path: enumerate every (p₁,...,p_k, s) tuple directly."""
    mod = as_modulus(m)
    primes, s_values = _coverage_inputs(mod, x, y, k, ell, allow_large)
    mm = mod.m
    work = len(primes) ** k * (len(s_values) if ell >= 1 else 1)
    if work > budget:
        raise ResourceBudgetError(f"{work} tuples exceed enumeration budget {budget}")

    counts = dict.fromkeys(mod.units, 0)
    witness: dict[int, tuple[int, ...]] = {}
    for tup in itertools.product(primes, repeat=k):
        r = 1
        for p in tup:
            r = r * p % mm
        if ell >= 1:
            for s in s_values:
                val = r * s % mm
                counts[val] += 1
                if val not in witness:
                    witness[val] = tup + (s,)
        else:
            counts[r] += 1
            if r not in witness:
                witness[r] = tup
    covered = tuple(a for a in mod.units if counts[a])
    uncovered = tuple(a for a in mod.units if not counts[a])
    return CoverageReport(
        m=mm, x=x, y=y, k=k, ell=ell, phi=mod.phi,
        covered=covered, uncovered=uncovered, witness=witness, counts=counts,
    )


def minimal_exponent_search(
    m: int | Modulus, k: int, ell: int, grid: Iterable[float]
) -> float | None:
    """Smallest γ in the grid with full coverage at x = y = m^γ, or None.

    Coverage is monotone in the window, so the first passing grid point is the
    minimum over the grid.
    """
    exponents = list(grid)
    if not exponents:
        raise ValueError("exponent grid is empty")
    if any(not 0 < g <= 1 for g in exponents) or exponents != sorted(exponents):
        raise ValueError("exponent grid must be ascending within (0, 1]")
    mod = as_modulus(m)
    for gamma in exponents:
        cut = mod.m**gamma
        if coverage_check(mod, cut, cut, k, ell, witnesses=False).fully_covered:
            return gamma
    return None
