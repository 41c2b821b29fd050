"""Exponential sums over inverse prime products, counting functions, and checks.

The sums S_k(a;x) = Σ e_m(a·p̄₁⋯p̄_k) over ordered k-tuples of primes p_i <= x
coprime to m are evaluated through the exact integer distribution N_k(r) of the
inverse products, built by multiplicative convolution; floating point enters
only in the final character sum.  A tuple-by-tuple direct evaluator survives as
the cross-validation oracle.
"""
from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import IncompatibleCountsError, ResourceBudgetError
from .modular import Modulus, as_modulus, batch_inverse, coprime_primes_upto

DIRECT_SUM_BUDGET = 10**8

_PHASE_TABLE_CAP = 1 << 16


def multiply_distributions(a: Sequence[int], b: Sequence[int], m: int) -> list[int]:
    """Multiplicative convolution over Z_m: out[s·t mod m] += a[s]·b[t].

    Exact integer arithmetic; the naive support×support double loop is the
    reference algorithm.
    """
    out = [0] * m
    support_b = [(t, c) for t, c in enumerate(b) if c]
    for s, ca in enumerate(a):
        if ca:
            for t, cb in support_b:
                out[s * t % m] += ca * cb
    return out


@dataclass(frozen=True)
class InverseResidueCounts:
    """N_k(r): ordered k-tuples of primes <= x coprime to m, binned by the
    residue of the product of their inverses.  k=0 is the convolution identity
    (a point mass at r=1)."""

    k: int
    x: float
    m: Modulus
    counts: tuple[int, ...]

    def total(self) -> int:
        return sum(self.counts)

    def support(self) -> list[tuple[int, int]]:
        return [(r, c) for r, c in enumerate(self.counts) if c]


def identity_counts(x: float, m: int | Modulus) -> InverseResidueCounts:
    """The convolution identity: a single empty tuple with product 1."""
    mod = as_modulus(m)
    counts = [0] * mod.m
    counts[1] = 1
    return InverseResidueCounts(0, x, mod, tuple(counts))


def build_counts_1(x: float, m: int | Modulus) -> InverseResidueCounts:
    """N_1(r) = #{p <= x prime, p coprime to m, p̄ ≡ r (mod m)}."""
    mod = as_modulus(m)
    primes = coprime_primes_upto(x, mod)
    counts = [0] * mod.m
    for u in batch_inverse(primes, mod):
        counts[u] += 1
    return InverseResidueCounts(1, x, mod, tuple(counts))


def convolve(
    counts_a: InverseResidueCounts, counts_b: InverseResidueCounts
) -> InverseResidueCounts:
    """Compose two count distributions; k adds, total mass multiplies."""
    if counts_a.m != counts_b.m or counts_a.x != counts_b.x:
        raise IncompatibleCountsError(
            f"cannot convolve counts over (m={counts_a.m.m}, x={counts_a.x}) "
            f"with (m={counts_b.m.m}, x={counts_b.x})"
        )
    merged = multiply_distributions(counts_a.counts, counts_b.counts, counts_a.m.m)
    return InverseResidueCounts(
        counts_a.k + counts_b.k, counts_a.x, counts_a.m, tuple(merged)
    )


def count_stages(x: float, m: int | Modulus, k: int) -> list[InverseResidueCounts]:
    """[identity, N_1, ..., N_k]: successive convolution powers of N_1."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    mod = as_modulus(m)
    stages = [identity_counts(x, mod)]
    if k >= 1:
        n1 = build_counts_1(x, mod)
        for _ in range(k):
            stages.append(convolve(stages[-1], n1))
    return stages


def build_counts(x: float, m: int | Modulus, k: int) -> InverseResidueCounts:
    """N_k via (k-1) convolutions of N_1."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return count_stages(x, m, k)[-1]


@dataclass(frozen=True)
class ExpSumValue:
    """One evaluated exponential sum; abs never exceeds the tuple count."""

    k: int
    a: int
    x: float
    m: int
    value: complex

    @property
    def abs(self) -> float:
        return abs(self.value)


def exp_sum_from_counts(counts: InverseResidueCounts, a: int) -> ExpSumValue:
    """Character sum Σ_r N_k(r)·e_m(a·r) with compensated accumulation."""
    mod = counts.m.m
    step = 2.0 * math.pi / mod
    sup = counts.support()
    re = math.fsum(c * math.cos(step * (a * r % mod)) for r, c in sup)
    im = math.fsum(c * math.sin(step * (a * r % mod)) for r, c in sup)
    return ExpSumValue(counts.k, a, counts.x, mod, complex(re, im))


def s_k(a: int, x: float, k: int, m: int | Modulus) -> ExpSumValue:
    """S_k(a;x) through the residue-count distribution.

    a = 0 and gcd(a, m) > 1 are legal; a = 0 gives exactly π'(x)^k.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return exp_sum_from_counts(build_counts(x, m, k), a)


def s_k_direct(
    a: int, x: float, k: int, m: int | Modulus, budget: int | None = None
) -> ExpSumValue:
    """Reference evaluation of S_k(a;x) by k nested loops over prime tuples.

    Cross-validation only; refuses instances beyond the iteration budget.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    mod = as_modulus(m)
    cap = DIRECT_SUM_BUDGET if budget is None else budget
    primes = coprime_primes_upto(x, mod)
    if len(primes) ** k > cap:
        raise ResourceBudgetError(
            f"{len(primes)}^{k} tuples exceed the budget of {cap} iterations"
        )
    invs = batch_inverse(primes, mod)
    mm = mod.m
    step = 2.0 * math.pi / mm
    a0 = a % mm
    res: list[float] = []
    ims: list[float] = []
    for tup in itertools.product(invs, repeat=k):
        r = a0
        for u in tup:
            r = r * u % mm
        res.append(math.cos(step * r))
        ims.append(math.sin(step * r))
    return ExpSumValue(k, a, x, mm, complex(math.fsum(res), math.fsum(ims)))


def prime_residue_counts(x: float, m: int | Modulus) -> list[int]:
    """Counts of p mod m over primes p <= x coprime to m (no inversion)."""
    mod = as_modulus(m)
    counts = [0] * mod.m
    for p in coprime_primes_upto(x, mod):
        counts[p % mod.m] += 1
    return counts


def energy(x: float, m: int | Modulus) -> int:
    """Ordered quadruples (p₁,p₂,q₁,q₂) of primes <= x coprime to m with
    p̄₁p̄₂ ≡ q̄₁q̄₂ (mod m).

    Inversion is a bijection on units, so this equals Σ_r M(r)² for the plain
    pair-product distribution M(r) = #{(p₁,p₂): p₁p₂ ≡ r}.
    """
    if x < 2:
        raise ValueError(f"cutoff must be >= 2, got {x}")
    mod = as_modulus(m)
    single = prime_residue_counts(x, mod)
    pairs = multiply_distributions(single, single, mod.m)
    return sum(c * c for c in pairs)


@dataclass(frozen=True)
class EnergyBoundReport:
    x: float
    m: int
    energy: int
    rhs: float
    passed: bool


def check_energy_bound(x: float, m: int | Modulus) -> EnergyBoundReport:
    """Compare the collision count against the unconditional 2x²(x²/m+1)."""
    mod = as_modulus(m)
    e = energy(x, mod)
    rhs = 2.0 * x * x * (x * x / mod.m + 1.0)
    return EnergyBoundReport(x, mod.m, e, rhs, e <= rhs)


@dataclass(frozen=True)
class BilinearReport:
    lhs: float
    rhs: float
    passed: bool


def check_bilinear(
    u_values: Sequence[int],
    v_values: Sequence[int],
    phi: Mapping[int, complex],
    psi: Mapping[int, complex],
    a: int,
    m: int | Modulus,
    rel_slack: float = 1e-6,
) -> BilinearReport:
    """Evaluate |Σ_u Σ_v φ_u ψ_v e_m(a·u·v)| against sqrt(Φ·Ψ·m)."""
    mod = as_modulus(m)
    mm = mod.m
    if math.gcd(a, mm) != 1:
        raise ValueError(f"a={a} must be coprime to m={mm}")
    us = list(u_values)
    vs = list(v_values)
    big_phi = math.fsum(abs(phi[u]) ** 2 for u in us)
    big_psi = math.fsum(abs(psi[v]) ** 2 for v in vs)
    table = None
    if mm <= _PHASE_TABLE_CAP:
        table = [cmath.exp(2j * math.pi * j / mm) for j in range(mm)]
    re_terms: list[float] = []
    im_terms: list[float] = []
    for u in us:
        au = a * u % mm
        fu = phi[u]
        for v in vs:
            j = au * v % mm
            w = table[j] if table is not None else cmath.exp(2j * math.pi * j / mm)
            z = fu * psi[v] * w
            re_terms.append(z.real)
            im_terms.append(z.imag)
    lhs = abs(complex(math.fsum(re_terms), math.fsum(im_terms)))
    rhs = math.sqrt(big_phi * big_psi * mm)
    return BilinearReport(lhs, rhs, lhs <= rhs * (1.0 + rel_slack))


def random_bilinear_instance(rng, m: int | None = None, m_max: int = 499, size_cap: int = 64):
    """A seeded random instance: modulus, unit subsets, unit-norm coefficients,
    and a unit a.  Returns (U, V, phi, psi, a, Modulus)."""
    mod = as_modulus(m if m is not None else rng.randrange(2, m_max + 1))
    units = list(mod.units)
    ku = rng.randint(1, min(size_cap, len(units)))
    kv = rng.randint(1, min(size_cap, len(units)))
    u_set = rng.sample(units, ku)
    v_set = rng.sample(units, kv)
    phi = {u: cmath.exp(2j * math.pi * rng.random()) for u in u_set}
    psi = {v: cmath.exp(2j * math.pi * rng.random()) for v in v_set}
    a = rng.choice(units)
    return u_set, v_set, phi, psi, a, mod


def t_k_from_counts(counts: InverseResidueCounts, a: int, y: float) -> int:
    """T_k(a;x,y) from a prebuilt N_k: tuples whose window representative
    (a·r mod m, taken in [1, m-1]) does not exceed ⌊y⌋."""
    mod = counts.m.m
    if math.gcd(a, mod) != 1:
        raise ValueError(f"a={a} must be coprime to m={mod}")
    if not 1 <= y <= mod:
        raise ValueError(f"window cutoff y={y} outside [1, m={mod}]")
    ylim = math.floor(y)
    return sum(c for r, c in counts.support() if a * r % mod <= ylim)


def t_k(a: int, x: float, y: float, k: int, m: int | Modulus) -> int:
    """Count of (p₁,...,p_k, v) with primes <= x coprime to m, 1 <= v <= y and
    a·p̄₁⋯p̄_k ≡ v (mod m)."""
    return t_k_from_counts(build_counts(x, m, k), a, y)


@dataclass(frozen=True)
class DeviationRecord:
    """T_k against its main term.  bound_rhs is the asymptotic bound shape with
    a configurable slack in place of the unbounded factor; report-only."""

    k: int
    a: int
    x: float
    y: float
    m: int
    t_count: int
    main_term: float
    delta: float
    bound_rhs: float | None
    range_ok: bool


def _deviation_bound_shape(k: int, x: float, m: int) -> float | None:
    if k == 1:
        return x**0.9375 + m**0.25 * x ** (2.0 / 3.0)
    if k == 2:
        return x * math.sqrt(m)
    if k == 3:
        return x**2.5
    if k == 4:
        return x**4 / math.sqrt(m)
    return None


def delta_k(
    a: int,
    x: float,
    y: float,
    k: int,
    m: int | Modulus,
    slack_c: float = 1.0,
    slack_exp: float = 0.0,
) -> DeviationRecord:
    """T_k(a;x,y) minus π'(x)^k·⌊y⌋/m, with the k = 1..4 bound shapes."""
    mod = as_modulus(m)
    counts = build_counts(x, mod, k)
    t_count = t_k_from_counts(counts, a, y)
    main = counts.total() * math.floor(y) / mod.m
    shape = _deviation_bound_shape(k, x, mod.m)
    slack = slack_c * math.log(mod.m) ** slack_exp
    return DeviationRecord(
        k=k,
        a=a,
        x=x,
        y=y,
        m=mod.m,
        t_count=t_count,
        main_term=main,
        delta=t_count - main,
        bound_rhs=None if shape is None else shape * slack,
        range_ok=mod.m >= x >= math.sqrt(mod.m),
    )


@dataclass(frozen=True)
class BoundContext:
    """gcd-stratified context for the S_2..S_4 bound shapes (report-only)."""

    a: int
    m: int
    x: float
    f: int

    @classmethod
    def from_params(cls, a: int, m: int | Modulus, x: float) -> "BoundContext":
        mod = as_modulus(m).m
        return cls(a=a, m=mod, x=x, f=math.gcd(a, mod))

    def sum_bound_shapes(
        self, slack_c: float = 1.0, slack_exp: float = 0.0
    ) -> dict[str, float]:
        f, m, x = self.f, self.m, self.x
        slack = slack_c * math.log(m) ** slack_exp
        ratio = f * x / m
        return {
            "s2": x * (ratio + 1.0) * math.sqrt(m / f) * slack,
            "s3": x**2.5 * math.sqrt(ratio + 1.0) * slack,
            "s4": x**4 * math.sqrt(f / m) * slack,
        }
