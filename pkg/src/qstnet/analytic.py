"""Closed-form dynamics of shifted complete graphs.

Two families are covered, both with the input/output pair at vertices
``0`` and ``n - 1`` carrying the same energy shift ``dE``:

* ``Family.KN``: the complete graph ``K_n``;
* ``Family.KN_MINUS``: ``K_n`` with the input/output edge removed.

Every formula below is written term by term in its published form, without
algebraic simplification, so that a disagreement with the numeric
eigendecomposition points at the formula rather than at this module. The
``verify`` module runs those comparisons.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, UnsupportedSizeError


class Family(str, enum.Enum):
    KN = "kn"
    KN_MINUS = "knm"


class EntryClass(str, enum.Enum):
    DIAG_IO = "DiagIO"
    DIAG_OTHER = "DiagOther"
    OFF_IO_IO = "OffIOIO"
    OFF_IO_OTHER = "OffIOOther"
    OFF_OTHER_OTHER = "OffOtherOther"


@dataclass(frozen=True)
class AnalyticParams:
    family: Family
    n: int
    dE: float
    rate: float  # alpha for K_n, beta for K_n minus an edge


@dataclass(frozen=True)
class AnalyticSpectrum:
    n: int
    lambda1: float
    lambda2: float
    lambda34: tuple[float, float]
    omega: tuple[float, float]

    def eigenvalues(self) -> list[float]:
        """Sorted multiset, with ``lambda2`` repeated ``n - 3`` times."""
        vals = [self.lambda1, *([self.lambda2] * (self.n - 3)), *self.lambda34]
        return sorted(vals)


@dataclass(frozen=True)
class PstSchedule:
    family: Family
    n: int
    dE_opt: float
    rate: float

    def time(self, k: int) -> float:
        return (2 * math.pi + 4 * math.pi * k) / self.rate


@dataclass(frozen=True)
class MaxFidelityPrediction:
    """Published maximum of one fidelity class and the times it is reached.

    ``pair`` is one of ``ii`` (input/output return), ``kk`` (return at a
    vertex outside the pair), ``ij`` (input to output), ``ik`` (input to
    another vertex), ``kl`` (between two vertices outside the pair).
    Every entry still needs numeric confirmation; see ``verify``.
    """

    family: Family
    n: int
    pair: str
    dE: float
    value: float
    time_rule: str
    time: Callable[[int], float]
    needs_verification: bool = True


def _check_n(n: int) -> None:
    if n < 4:
        raise UnsupportedSizeError(f"closed forms hold for n >= 4, got n={n}")


def alpha_radicand(n: int, dE: float) -> float:
    return 4 * n**2 - 4 * (n - 4) * dE + dE**2


def beta_radicand(n: int, dE: float) -> float:
    return 4 * (n**2 + 2 * n - 7) - 4 * (n - 3) * dE + dE**2


def _root(value: float, name: str) -> float:
    if value < 0:
        raise DomainError(f"{name} radicand is negative ({value})")
    return math.sqrt(value)


def params(family: Family, n: int, dE: float) -> AnalyticParams:
    family = Family(family)
    _check_n(n)
    if family is Family.KN:
        rate = _root(alpha_radicand(n, dE), "alpha")
    else:
        rate = _root(beta_radicand(n, dE), "beta")
    return AnalyticParams(family, n, float(dE), rate)


def spectrum(family: Family, n: int, dE: float) -> AnalyticSpectrum:
    p = params(family, n, dE)
    r = p.rate
    if p.family is Family.KN:
        lam1 = dE - 2
        lam3 = (2 * (n - 2) + dE + r) / 2
        lam4 = (2 * (n - 2) + dE - r) / 2
        om = ((2 * (n - 4) - dE + r) / (4 * (n - 2)), (2 * (n - 4) - dE - r) / (4 * (n - 2)))
    else:
        lam1 = dE
        lam3 = (2 * (n - 3) + dE + r) / 2
        lam4 = (2 * (n - 3) + dE - r) / 2
        om = ((2 * (n - 3) - dE + r) / (4 * (n - 2)), (2 * (n - 3) - dE - r) / (4 * (n - 2)))
    return AnalyticSpectrum(n, lam1, -2.0, (lam3, lam4), om)


def kn_fidelity(n: int, dE: float, t: float) -> float:
    """Input-to-output fidelity of shifted ``K_n``."""
    a = params(Family.KN, n, dE).rate
    d = dE
    return (
        (d**2 + 3 * a**2 - 4 * d * (n - 4) + 4 * (n - 4) ** 2) / (8 * a**2)
        + (8 + d + a - 2 * n) * (a + 2 * n - 8 - d) / (8 * a**2) * math.cos(a * t)
        - (d - 2 * (n - 4) + a) / (4 * a) * math.cos(t * (2 * n - d + a) / 2)
        + (d - 2 * (n - 4) - a) / (4 * a) * math.cos(t * (2 * n - d - a) / 2)
    )


def knm_fidelity(n: int, dE: float, t: float) -> float:
    """Input-to-output fidelity of shifted ``K_n`` without the input/output edge."""
    b = params(Family.KN_MINUS, n, dE).rate
    d = dE
    return (
        (d**2 + 3 * b**2 - 4 * d * (n - 3) + 4 * (n - 3) ** 2) / (8 * b**2)
        + (6 + d + b - 2 * n) * (b + 2 * n - 6 - d) / (8 * b**2) * math.cos(b * t)
        - (6 - 2 * n + d + b) / (4 * b) * math.cos(t * (2 * n - 6 - d + b) / 2)
        + (6 - 2 * n + d - b) / (4 * b) * math.cos(t * (2 * n - 6 - d - b) / 2)
    )


def analytic_fidelity(family: Family, n: int, dE: float, t: float) -> float:
    if Family(family) is Family.KN:
        return kn_fidelity(n, dE, t)
    return knm_fidelity(n, dE, t)


def pst_schedule(family: Family, n: int) -> PstSchedule:
    family = Family(family)
    _check_n(n)
    dE_opt = 2 * n if family is Family.KN else 2 * n - 6
    return PstSchedule(family, n, float(dE_opt), params(family, n, dE_opt).rate)


def analytic_propagator_entry(family: Family, n: int, dE: float, t: float, entry_class: EntryClass) -> complex:
    """One entry of ``exp(-iHt)`` for the requested vertex class, as published.

    The ``K_n`` minus an edge expressions contain ``alpha`` (the ``K_n``
    rate) in two coefficients; they are kept that way.
    """
    family = Family(family)
    entry_class = EntryClass(entry_class)
    spec = spectrum(family, n, dE)
    lam1, lam2 = spec.lambda1, spec.lambda2
    lam3, lam4 = spec.lambda34
    e1, e2, e3, e4 = (cmath.exp(-1j * lam * t) for lam in (lam1, lam2, lam3, lam4))
    d = dE
    if family is Family.KN:
        a = params(Family.KN, n, dE).rate
        if entry_class is EntryClass.DIAG_IO:
            return (a - 2 * n + d + 8) / (4 * a) * e3 + (a - 2 * n - d + 8) / (4 * a) * e4 + 0.5 * e1
        if entry_class is EntryClass.DIAG_OTHER:
            return (
                (n - 3) / (n - 2) * e1
                + (a - 2 * n + d + 8) / (2 * n * a - 4 * a) * e3
                + (a + 2 * n - d - 8) / (2 * n * a - 4 * a) * e4
            )
        if entry_class is EntryClass.OFF_IO_IO:
            return (d - 2 * (n - 4) + a) / (4 * a) * e3 + (2 * (n - 4) - d + a) / (4 * a) * e4 - 0.5 * e1
        if entry_class is EntryClass.OFF_IO_OTHER:
            return 2 * (e3 - e4) / a
        return (
            (d - 2 * (n - 4) + a) / (2 * (n - 2) * a) * e4
            + (2 * (n - 4) - d + a) / (2 * (n - 2) * a) * e3
            - 1 / ((n - 2) * a) * e2
        )

    b = params(Family.KN_MINUS, n, dE).rate
    a = _root(alpha_radicand(n, dE), "alpha")
    if entry_class is EntryClass.DIAG_IO:
        return (b - 2 * n + d + 6) / (4 * b) * e3 + (b - 2 * n - d + 6) / (4 * b) * e4 + 0.5 * e1
    if entry_class is EntryClass.DIAG_OTHER:
        return (
            (n - 3) / (n - 2) * e1
            + (b - 2 * n + d + 6) / (2 * n * b - 4 * b) * e3
            + (b + 2 * n - d - 6) / (2 * n * b - 4 * b) * e4
        )
    if entry_class is EntryClass.OFF_IO_IO:
        return (d - 2 * (n - 3) + b) / (4 * b) * e3 + (2 * (n - 3) - d + a) / (4 * b) * e4 - 0.5 * e1
    if entry_class is EntryClass.OFF_IO_OTHER:
        return 2 * (e3 - e4) / b
    return (
        (d - 2 * (n - 3) + b) / (2 * (n - 2) * b) * e4
        + (2 * (n - 3) - d + a) / (2 * (n - 2) * b) * e3
        - 1 / ((n - 2) * b) * e2
    )


def max_fidelity_predictions(family: Family, n: int) -> list[MaxFidelityPrediction]:
    """Published maxima for the five vertex-pair classes at the optimal shift."""
    family = Family(family)
    sched = pst_schedule(family, n)
    d = sched.dE_opt
    r = sched.rate
    name = "alpha" if family is Family.KN else "beta"
    kl = (r * (n - 2) - 2) ** 2 / (4 * r**2 * (n - 2) ** 2)
    if family is Family.KN:
        ij_rate, ij_rule = r, "(2pi+4pi k)/alpha"
    else:
        # The input-to-output time is stated with alpha for this family.
        ij_rate = _root(alpha_radicand(n, d), "alpha")
        ij_rule = "(2pi+4pi k)/alpha"
    return [
        MaxFidelityPrediction(family, n, "ii", d, 1.0, f"2k pi/{name}", lambda k: 2 * k * math.pi / r),
        MaxFidelityPrediction(family, n, "kk", d, 1.0, f"4k pi/{name}", lambda k: 4 * k * math.pi / r),
        MaxFidelityPrediction(
            family, n, "ij", d, 1.0, ij_rule, lambda k: (2 * math.pi + 4 * math.pi * k) / ij_rate
        ),
        MaxFidelityPrediction(
            family, n, "ik", d, 16 / r**2, f"(2pi+4pi k)/{name}", lambda k: (2 * math.pi + 4 * math.pi * k) / r
        ),
        MaxFidelityPrediction(family, n, "kl", d, kl, f"2k pi/{name}", lambda k: 2 * k * math.pi / r),
    ]
