"""Admissible-exponent arithmetic: sieve constants, sufficient conditions, and
closed-form boundary exponents.

A triple (ℓ; α, β) or quadruple (k, ℓ; α, β) is certified when the relevant
denominators are strictly positive and the binding ratio β/denominator stays
at or below ϑ_ℓ = ℓ − δ_ℓ.  All comparisons carry a 1e-12 guard band so that
boundary values evaluate deterministically in double precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import UnsupportedCaseError

COMPARISON_GUARD = 1e-12

# Greaves' announced sieve constants, stored as decimal strings and parsed once.
_DELTA_STRINGS = {2: "0.044560", 3: "0.074267", 4: "0.103974"}
_DELTA_TAIL_STRING = "0.124821"  # every ell >= 5

CONSTANTS_NOTE = (
    "delta constants are Greaves' announced values (derivation details "
    "unpublished); alternate tables can be supplied via GreavesConstants"
)

CASES = ("triple", "k2", "k3", "k4")


class GreavesConstants:
    """Sieve constants δ_ℓ, strictly increasing up to ℓ = 5 and flat beyond."""

    def __init__(
        self,
        delta: Mapping[int, float] | None = None,
        tail: float | None = None,
        note: str = CONSTANTS_NOTE,
    ) -> None:
        table = {ell: float(v) for ell, v in _DELTA_STRINGS.items()}
        flat = float(_DELTA_TAIL_STRING)
        if delta:
            table.update({int(ell): float(v) for ell, v in delta.items()})
        if tail is not None:
            flat = float(tail)
        values = [table[2], table[3], table[4], flat]
        if any(not 0.0 < v < 1.0 for v in values):
            raise ValueError(f"delta values must lie in (0, 1): {values}")
        if sorted(values) != values or len(set(values)) != 4:
            raise ValueError(f"delta values must increase up to ell=5: {values}")
        self._table = table
        self._tail = flat
        self.note = note

    def delta(self, ell: int) -> float:
        if ell < 2:
            raise ValueError(f"delta is defined for ell >= 2, got {ell}")
        return self._table[ell] if ell < 5 else self._tail

    def theta_value(self, ell: int) -> float:
        return ell - self.delta(ell)


DEFAULT_CONSTANTS = GreavesConstants()


@dataclass(frozen=True)
class Theta:
    ell: int
    value: float


def theta(ell: int, constants: GreavesConstants = DEFAULT_CONSTANTS) -> Theta:
    """ϑ_ℓ = ℓ − δ_ℓ."""
    return Theta(ell, constants.theta_value(ell))


@dataclass(frozen=True)
class AdmissibilityQuery:
    """A triple (ℓ; α, β) or quadruple (k, ℓ; α, β) inside the proven regime."""

    family: str
    k: int | None
    ell: int
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if self.family not in ("triple", "quadruple"):
            raise ValueError(f"unknown family {self.family!r}")
        if self.family == "quadruple" and self.k is None:
            raise ValueError("quadruple queries need k")
        if self.family == "triple" and self.k is not None:
            raise ValueError("triple queries take no k")
        if self.ell < 2:
            raise ValueError(f"ell must be at least 2, got {self.ell}")
        if not 0.5 <= self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in [1/2, 1], got {self.alpha}")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError(f"beta must lie in [0, 1], got {self.beta}")


def triple_query(ell: int, alpha: float, beta: float) -> AdmissibilityQuery:
    return AdmissibilityQuery("triple", None, ell, alpha, beta)


def quadruple_query(k: int, ell: int, alpha: float, beta: float) -> AdmissibilityQuery:
    return AdmissibilityQuery("quadruple", k, ell, alpha, beta)


@dataclass(frozen=True)
class Pair:
    """A derived pair (k; α); `for_primes` tags the prime-moduli variant."""

    k: int
    alpha: float
    for_primes: bool = False


@dataclass(frozen=True)
class AdmissibilityVerdict:
    query: AdmissibilityQuery
    passes: bool
    binding_constraint: str
    margins: dict[str, float | None]

    @property
    def ratio(self) -> float | None:
        """The binding ratio, when every denominator is positive."""
        vals = [v for key, v in self.margins.items() if key.startswith("ratio") and v is not None]
        return max(vals) if vals else None


def _conditions(query: AdmissibilityQuery) -> list[tuple[str, float]]:
    a, b = query.alpha, query.beta
    if query.family == "triple" or query.k == 1:
        # k=1 quadruples reduce to the triple congruence
        return [("16", a / 16 + b - 1.0), ("3", a / 3 + b - 1.25)]
    if query.k == 2:
        return [("", a + b - 1.5)]
    if query.k == 3:
        return [("", a / 2 + b - 1.0)]
    if query.k == 4:
        return [("", b - 0.5)]
    raise UnsupportedCaseError(f"no proven case for quadruples with k={query.k}")


def check_admissibility(
    query: AdmissibilityQuery, constants: GreavesConstants = DEFAULT_CONSTANTS
) -> AdmissibilityVerdict:
    """Evaluate the sufficient conditions: denominators strictly positive and
    binding ratio <= ϑ_ℓ (non-strict, with the comparison guard band)."""
    th = constants.theta_value(query.ell)
    margins: dict[str, float | None] = {"theta": th}
    worst_den: float | None = None
    worst_den_key = ""
    ratios: list[tuple[str, float]] = []
    for name, den in _conditions(query):
        dkey = f"den_{name}" if name else "den"
        rkey = f"ratio_{name}" if name else "ratio"
        margins[dkey] = den
        if den > 0.0:
            r = query.beta / den
            margins[rkey] = r
            ratios.append((rkey, r))
        else:
            margins[rkey] = None
            if worst_den is None or den < worst_den:
                worst_den, worst_den_key = den, dkey
    if worst_den is not None:
        return AdmissibilityVerdict(query, False, worst_den_key, margins)
    bind_key, bind_ratio = max(ratios, key=lambda kv: kv[1])
    # guard band scales with theta so boundary equality stays deterministic
    # even where a tiny denominator amplifies double-precision roundoff
    passes = bind_ratio <= th + COMPARISON_GUARD * max(1.0, th)
    return AdmissibilityVerdict(query, passes, bind_key, margins)


def query_for_case(case: str, ell: int, alpha: float, beta: float) -> AdmissibilityQuery:
    if case == "triple":
        return triple_query(ell, alpha, beta)
    if case in ("k2", "k3", "k4"):
        return quadruple_query(int(case[1]), ell, alpha, beta)
    raise UnsupportedCaseError(f"unknown case {case!r}; expected one of {CASES}")


def closed_form_alpha(
    case: str, ell: int, constants: GreavesConstants = DEFAULT_CONSTANTS
) -> float:
    """Equal-exponent boundary value: the α where the binding ratio at (α, α)
    equals ϑ_ℓ exactly.

    For the triple case the value drops below 1 only once ϑ_ℓ >= 16 (ℓ >= 17);
    larger values are returned as-is but fall outside the α <= 1 regime.
    """
    if case not in CASES:
        raise UnsupportedCaseError(f"unknown case {case!r}; expected one of {CASES}")
    if ell < 3:
        raise ValueError(f"closed-form exponents need ell >= 3, got {ell}")
    th = constants.theta_value(ell)
    alpha = {
        "triple": 16 * th / (17 * th - 16),
        "k2": 3 * th / (4 * th - 2),
        "k3": 2 * th / (3 * th - 2),
        "k4": th / (2 * th - 2),
    }[case]
    if alpha <= 1.0:  # in-regime values must sit exactly on the boundary
        verdict = check_admissibility(query_for_case(case, ell, alpha, alpha), constants)
        if not verdict.passes or abs((verdict.ratio or math.inf) - th) > 1e-9 * th:
            raise RuntimeError(
                f"boundary inconsistency for case {case}, ell={ell}: {verdict}"
            )
    return alpha


def to_pair(query: AdmissibilityQuery) -> Pair:
    """Derived pair at equal exponents: (k+ℓ; α) from a quadruple, (ℓ+1; α)
    from a triple."""
    if query.beta != query.alpha:
        raise ValueError(
            f"pair derivation needs beta == alpha, got {query.alpha} != {query.beta}"
        )
    if query.family == "triple":
        return Pair(k=query.ell + 1, alpha=query.alpha)
    return Pair(k=query.k + query.ell, alpha=query.alpha)


def region_scan(
    case: str,
    ell: int,
    alpha_grid: Iterable[float],
    beta_grid: Iterable[float],
    constants: GreavesConstants = DEFAULT_CONSTANTS,
) -> list[dict]:
    """Verdict per grid point; plot-ready."""
    alphas = list(alpha_grid)
    betas = list(beta_grid)
    for grid in (alphas, betas):
        if any(not 0.0 <= g <= 1.0 for g in grid) or grid != sorted(grid):
            raise ValueError("grids must be ascending within [0, 1]")
    th = constants.theta_value(ell)
    rows: list[dict] = []
    for a in alphas:
        for b in betas:
            if a < 0.5:  # outside the proven alpha range: nothing is certified
                rows.append({
                    "case": case, "k": _case_k(case), "ell": ell,
                    "alpha": a, "beta": b, "ratio": None, "theta": th,
                    "passes": False, "binding_constraint": "alpha_below_half",
                })
                continue
            v = check_admissibility(query_for_case(case, ell, a, b), constants)
            rows.append({
                "case": case, "k": _case_k(case), "ell": ell,
                "alpha": a, "beta": b, "ratio": v.ratio, "theta": th,
                "passes": v.passes, "binding_constraint": v.binding_constraint,
            })
    return rows


def _case_k(case: str) -> int | None:
    return None if case == "triple" else int(case[1])


def round_up_3(value: float) -> float:
    """Ceiling at the third decimal; values within 1e-9 of a grid point stay put."""
    return math.ceil(value * 1000 - 1e-9) / 1000


def reproduce_table(constants: GreavesConstants = DEFAULT_CONSTANTS) -> dict:
    """The reference exponent table: the four equal-exponent quadruples, their
    derived pairs, the ℓ = 17 triple, and k=4 rows at large ℓ showing the
    approach of α to 1/2."""
    rows: list[dict] = []
    for case, k, ell in (("k2", 2, 3), ("k3", 3, 3), ("k4", 4, 3), ("k4", 4, 4)):
        alpha = closed_form_alpha(case, ell, constants)
        printed = round_up_3(alpha)
        pair = to_pair(quadruple_query(k, ell, printed, printed))
        rows.append({
            "kind": "quadruple", "case": case, "k": k, "ell": ell,
            "alpha_exact": alpha, "alpha": f"{printed:.3f}",
            "pair_k": pair.k, "pair_alpha": f"{pair.alpha:.3f}",
        })
    t17 = closed_form_alpha("triple", 17, constants)
    rows.append({
        "kind": "triple", "case": "triple", "k": None, "ell": 17,
        "alpha_exact": t17, "alpha": f"{round_up_3(t17):.3f}",
        "pair_k": None, "pair_alpha": None,
    })
    for ell in (10, 100, 1000):
        alpha = closed_form_alpha("k4", ell, constants)
        printed = round_up_3(alpha)
        rows.append({
            "kind": "limit", "case": "k4", "k": 4, "ell": ell,
            "alpha_exact": alpha, "alpha": f"{printed:.3f}",
            "pair_k": 4 + ell, "pair_alpha": f"{printed:.3f}",
        })
    return {"note": constants.note, "rows": rows}
