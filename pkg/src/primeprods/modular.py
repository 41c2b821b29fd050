"""Exact modular arithmetic primitives: prime sieving, inverses, unit-group metadata.

Everything runs on plain Python integers, so products never wrap silently.
Moduli and sieve limits are capped at 2**31: desk-scale experiments never need
more, and the cap keeps bitmap allocations sane.
"""
from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import CapacityError, NotInvertibleError

MODULUS_CAP = 2**31
SIEVE_LIMIT_CAP = 2**31


@dataclass(frozen=True)
class PrimeTable:
    """All primes up to `limit`, strictly ascending."""

    limit: int
    primes: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.primes)

    def upto(self, x: float) -> tuple[int, ...]:
        """Primes <= x; requires x <= limit."""
        if x > self.limit:
            raise ValueError(f"cutoff {x} exceeds sieve limit {self.limit}")
        return self.primes[: bisect_right(self.primes, x)]


@lru_cache(maxsize=None)
def sieve_primes(limit: int) -> PrimeTable:
    """Sieve of Eratosthenes up to `limit` inclusive."""
    if limit < 2:
        raise ValueError(f"sieve limit must be at least 2, got {limit}")
    if limit > SIEVE_LIMIT_CAP:
        raise CapacityError(f"sieve limit {limit} exceeds cap {SIEVE_LIMIT_CAP}")
    mask = np.ones(limit + 1, dtype=bool)
    mask[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if mask[p]:
            mask[p * p :: p] = False
    return PrimeTable(limit, tuple(int(p) for p in np.flatnonzero(mask)))


@dataclass(frozen=True)
class Modulus:
    """A modulus m >= 2 with unit-group metadata, computed lazily and cached."""

    m: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"modulus must be at least 2, got {self.m}")
        if self.m > MODULUS_CAP:
            raise CapacityError(f"modulus {self.m} exceeds cap {MODULUS_CAP}")

    @cached_property
    def factorization(self) -> dict[int, int]:
        """Prime factorization by trial division."""
        n = self.m
        out: dict[int, int] = {}
        d = 2
        while d * d <= n:
            while n % d == 0:
                out[d] = out.get(d, 0) + 1
                n //= d
            d += 1 if d == 2 else 2
        if n > 1:
            out[n] = out.get(n, 0) + 1
        return out

    @cached_property
    def phi(self) -> int:
        """Number of units, by the multiplicative formula."""
        res = self.m
        for p in self.factorization:
            res = res // p * (p - 1)
        return res

    @cached_property
    def omega(self) -> int:
        """Number of distinct prime divisors."""
        return len(self.factorization)

    @cached_property
    def unit_mask(self) -> np.ndarray:
        """Boolean bitmap over [0, m): True exactly where gcd(v, m) = 1."""
        return np.gcd(np.arange(self.m, dtype=np.int64), self.m) == 1

    @cached_property
    def units(self) -> tuple[int, ...]:
        return tuple(int(v) for v in np.flatnonzero(self.unit_mask))

    def is_unit(self, v: int) -> bool:
        return math.gcd(v, self.m) == 1

    def residue(self, n: int) -> "ResidueClass":
        return ResidueClass(n % self.m, self)


@dataclass(frozen=True)
class ResidueClass:
    """A canonical residue in [0, m)."""

    value: int
    modulus: Modulus

    def __post_init__(self) -> None:
        if not 0 <= self.value < self.modulus.m:
            raise ValueError(f"residue {self.value} outside [0, {self.modulus.m})")

    def is_unit(self) -> bool:
        return self.modulus.is_unit(self.value)

    def inverse(self) -> "ResidueClass":
        return ResidueClass(mod_inverse(self.value, self.modulus), self.modulus)


def as_modulus(m: int | Modulus) -> Modulus:
    return m if isinstance(m, Modulus) else Modulus(m)


def mod_inverse(n: int, m: int | Modulus) -> int:
    """The unique u in [1, m) with n*u ≡ 1 (mod m)."""
    mod = as_modulus(m).m
    try:
        return pow(n, -1, mod)
    except ValueError as exc:
        raise NotInvertibleError(
            f"{n} has no inverse modulo {mod} (gcd = {math.gcd(n, mod)})"
        ) from exc


def batch_inverse(values: Sequence[int], m: int | Modulus) -> list[int]:
    """Inverses of all `values` mod m using a single modular inversion.

    Prefix-product pass: element-wise equivalent to mod_inverse, but with two
    multiplications per element instead of an extended gcd each.
    """
    mod = as_modulus(m).m
    vs = [v % mod for v in values]
    prefix = 1
    prefixes = []
    for v in vs:
        prefixes.append(prefix)
        prefix = prefix * v % mod
    try:
        running = pow(prefix, -1, mod)
    except ValueError:
        bad = next(v for v in vs if math.gcd(v, mod) > 1)
        raise NotInvertibleError(f"{bad} has no inverse modulo {mod}") from None
    out = [0] * len(vs)
    for i in range(len(vs) - 1, -1, -1):
        out[i] = prefixes[i] * running % mod
        running = running * vs[i] % mod
    return out


def coprime_primes(pt: PrimeTable, m: int | Modulus, x: float) -> list[int]:
    """Primes p <= x with p not dividing m, ascending (the π'(x) list)."""
    mod = as_modulus(m).m
    return [p for p in pt.upto(x) if mod % p != 0]


def coprime_primes_upto(x: float, m: int | Modulus) -> list[int]:
    """Sieve up to x and keep the primes coprime to m."""
    if x < 2:
        return []
    limit = math.floor(x)  # primes <= x are the primes <= floor(x)
    return coprime_primes(sieve_primes(limit), m, limit)
