"""Cross-check every closed form against the numeric eigendecomposition.

Anything that disagrees beyond ``tol`` becomes one ``Discrepancy`` row; an
empty report means every checked formula matched.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np

from . import analytic
from .analytic import EntryClass, Family
from .graph import complete, complete_minus_edge
from .hamiltonian import build
from .search import maximize_fidelity
from .spectral import eigendecompose, fidelity, propagator

DEFAULT_DE_GRID = ("0", "1", "2n-6", "2n", "17.3")
REPORT_HEADER = "family,n,dE,quantity,paper_value,oracle_value,abs_error"
ORACLE_TOL = 1e-9


@dataclass(frozen=True)
class Discrepancy:
    family: Family
    n: int
    dE: float
    quantity: str
    published_value: complex | float
    oracle_value: complex | float
    abs_error: float


def _fmt(x) -> str:
    if isinstance(x, complex):
        return f"{x.real:.17g}{x.imag:+.17g}j"
    return f"{x:.17g}"


def report_csv(rows: list[Discrepancy]) -> str:
    buf = io.StringIO()
    buf.write(REPORT_HEADER + "\n")
    for d in rows:
        buf.write(
            f"{d.family.value},{d.n},{d.dE:.17g},{d.quantity},{_fmt(d.published_value)},"
            f"{_fmt(d.oracle_value)},{d.abs_error:.17g}\n"
        )
    return buf.getvalue()


def resolve_shift(token, n: int) -> float:
    """Evaluate grid tokens such as ``2n-6`` or ``17.3`` for a given ``n``."""
    s = str(token).replace(" ", "")
    if "n" not in s:
        return float(s)
    head, _, tail = s.partition("n")
    coef = float(head) if head not in ("", "+", "-") else float(head + "1")
    return coef * n + (float(tail) if tail else 0.0)


def family_graph(family: Family, n: int):
    if Family(family) is Family.KN:
        return complete(n)
    return complete_minus_edge(n, 0, n - 1)


def family_eigensystem(family: Family, n: int, dE: float):
    return eigendecompose(build(family_graph(family, n), {0: dE, n - 1: dE}))


# (row, column) representatives with input/output at 0 and n-1.
_ENTRY_POSITIONS = {
    EntryClass.DIAG_IO: (0, 0),
    EntryClass.DIAG_OTHER: (1, 1),
    EntryClass.OFF_IO_IO: (0, -1),
    EntryClass.OFF_IO_OTHER: (0, 1),
    EntryClass.OFF_OTHER_OTHER: (1, 2),
}
_PAIR_POSITIONS = {"ii": (0, 0), "kk": (1, 1), "ij": (0, -1), "ik": (0, 1), "kl": (1, 2)}


def _worst(pairs):
    """``(published, oracle)`` pair with the largest absolute difference."""
    return max(pairs, key=lambda p: abs(p[0] - p[1]))


def check_parameter_point(family: Family, n: int, dE: float, times, tol: float = ORACLE_TOL) -> list[Discrepancy]:
    family = Family(family)
    es = family_eigensystem(family, n, dE)
    rows = []

    def record(quantity, published, oracle):
        err = abs(published - oracle)
        if not err <= tol:
            rows.append(Discrepancy(family, n, dE, quantity, published, oracle, float(err)))

    spec = analytic.spectrum(family, n, dE)
    pairs = list(zip(spec.eigenvalues(), es.eigenvalues.tolist()))
    record("eigenvalues", *_worst(pairs))

    fid_pairs = [(analytic.analytic_fidelity(family, n, dE, t), fidelity(es, 0, n - 1, t)) for t in times]
    record("fidelity_io", *_worst(fid_pairs))

    for cls, (r, c) in _ENTRY_POSITIONS.items():
        entry_pairs = []
        for t in times:
            u = propagator(es, t)
            entry_pairs.append((analytic.analytic_propagator_entry(family, n, dE, t, cls), complex(u[r, c % n])))
        record(f"propagator_{cls.value}", *_worst(entry_pairs))
    return rows


def check_schedule(family: Family, n: int, tol: float = ORACLE_TOL, harmonics=(0, 1, 2)) -> list[Discrepancy]:
    family = Family(family)
    sched = analytic.pst_schedule(family, n)
    es = family_eigensystem(family, n, sched.dE_opt)
    rows = []
    for k in harmonics:
        f = fidelity(es, 0, n - 1, sched.time(k))
        if not abs(1.0 - f) <= tol:
            rows.append(Discrepancy(family, n, sched.dE_opt, f"pst_k{k}", 1.0, f, abs(1.0 - f)))
    return rows


def check_predictions(family: Family, n: int, tol: float = ORACLE_TOL, grid_points: int = 20_000) -> list[Discrepancy]:
    """Compare each published maximum with the numeric value.

    The fidelity is checked at the stated time for the first two nonzero
    harmonics, and the largest fidelity over four schedule periods is
    checked against the stated maximum.
    """
    family = Family(family)
    rows = []
    period = 4 * math.pi / analytic.pst_schedule(family, n).rate
    for pred in analytic.max_fidelity_predictions(family, n):
        es = family_eigensystem(family, n, pred.dE)
        r, c = (v % n for v in _PAIR_POSITIONS[pred.pair])
        harmonics = (1, 2) if pred.time(0) == 0.0 else (0, 1)
        checks = [(f"at_time_k{k}", fidelity(es, r, c, pred.time(k))) for k in harmonics]
        checks.append(("window_max", maximize_fidelity(es, r, c, (0.0, 4 * period), grid_points).f_max))
        for label, oracle in checks:
            err = abs(pred.value - oracle)
            if not err <= tol:
                quantity = f"max_f({pred.pair})_{label}[{pred.time_rule}]"
                rows.append(Discrepancy(family, n, pred.dE, quantity, pred.value, oracle, err))
    return rows


def verify(
    families=(Family.KN, Family.KN_MINUS),
    sizes=range(4, 13),
    shift_grid=DEFAULT_DE_GRID,
    n_times: int = 50,
    t_max: float = 20.0,
    seed: int = 0,
    tol: float = ORACLE_TOL,
) -> list[Discrepancy]:
    rng = np.random.default_rng(seed)
    rows: list[Discrepancy] = []
    for family in families:
        for n in sizes:
            times = rng.uniform(0.0, t_max, n_times)
            for token in shift_grid:
                rows += check_parameter_point(family, n, resolve_shift(token, n), times, tol)
            rows += check_schedule(family, n, tol)
            rows += check_predictions(family, n, tol)
    return rows
