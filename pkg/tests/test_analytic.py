import math

import numpy as np
import pytest

from qstnet.analytic import (
    EntryClass,
    Family,
    alpha_radicand,
    analytic_fidelity,
    analytic_propagator_entry,
    beta_radicand,
    max_fidelity_predictions,
    params,
    pst_schedule,
    spectrum,
)
from qstnet.errors import UnsupportedSizeError
from qstnet.spectral import fidelity, propagator
from qstnet.verify import (
    REPORT_HEADER,
    check_parameter_point,
    family_eigensystem,
    report_csv,
    resolve_shift,
    verify,
)

SIZES = range(4, 13)
SHIFTS = (0.0, 1.0, 3.5, 10.0, 17.3)


def test_small_sizes_rejected():
    for family in Family:
        with pytest.raises(UnsupportedSizeError):
            params(family, 3, 1.0)
        with pytest.raises(UnsupportedSizeError):
            pst_schedule(family, 2)


@pytest.mark.parametrize("n", SIZES)
def test_radicands_positive(n):
    for d in np.linspace(-50, 80, 261):
        assert alpha_radicand(n, d) > 0
        assert beta_radicand(n, d) > 0


def test_k5_schedule():
    s = pst_schedule(Family.KN, 5)
    assert s.dE_opt == 10
    assert s.rate == pytest.approx(math.sqrt(160))
    assert s.time(0) == pytest.approx(2 * math.pi / math.sqrt(160))
    sm = pst_schedule(Family.KN_MINUS, 5)
    assert sm.dE_opt == 4
    assert sm.rate == pytest.approx(math.sqrt(4 * 28 - 8 * 4 + 16))


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", SIZES)
def test_spectrum_matches_eigh(family, n):
    for d in SHIFTS:
        es = family_eigensystem(family, n, d)
        assert np.max(np.abs(np.array(spectrum(family, n, d).eigenvalues()) - es.eigenvalues)) < 1e-10


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", (4, 7, 12))
def test_fidelity_matches_numeric(family, n):
    rng = np.random.default_rng(n)
    for d in SHIFTS:
        es = family_eigensystem(family, n, d)
        for t in rng.uniform(0, 30, 40):
            assert analytic_fidelity(family, n, d, t) == pytest.approx(fidelity(es, 0, n - 1, t), abs=1e-10)


@pytest.mark.parametrize("family", list(Family))
@pytest.mark.parametrize("n", SIZES)
def test_schedule_periodicity(family, n):
    s = pst_schedule(family, n)
    period = 4 * math.pi / s.rate
    for t in np.linspace(0, 3, 17):
        a = analytic_fidelity(family, n, s.dE_opt, t)
        b = analytic_fidelity(family, n, s.dE_opt, t + period)
        assert a == pytest.approx(b, abs=1e-10)
    for k in range(3):
        assert analytic_fidelity(family, n, s.dE_opt, s.time(k)) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("family", list(Family))
def test_off_io_other_matches_numeric(family):
    n, d, t = 7, 4.2, 1.9
    es = family_eigensystem(family, n, d)
    got = analytic_propagator_entry(family, n, d, t, EntryClass.OFF_IO_OTHER)
    assert abs(got - propagator(es, t)[0, 1]) < 1e-12


def test_kn_off_io_io_vanishes_at_zero():
    for n in SIZES:
        assert abs(analytic_propagator_entry(Family.KN, n, 3.0, 0.0, EntryClass.OFF_IO_IO)) < 1e-14


def test_knm_off_io_io_keeps_alpha_coefficient():
    # With alpha in place of beta the entry does not vanish at t = 0.
    n, d = 6, 3.0
    a = math.sqrt(alpha_radicand(n, d))
    b = math.sqrt(beta_radicand(n, d))
    got = analytic_propagator_entry(Family.KN_MINUS, n, d, 0.0, EntryClass.OFF_IO_IO)
    assert got == pytest.approx((a + b) / (4 * b) - 0.5, abs=1e-14)
    assert abs(got) > 1e-3


def test_predictions_shape():
    for family in Family:
        preds = max_fidelity_predictions(family, 6)
        assert [p.pair for p in preds] == ["ii", "kk", "ij", "ik", "kl"]
        assert all(p.needs_verification for p in preds)
        assert preds[0].time(0) == 0.0
        ik = preds[3]
        assert ik.value == pytest.approx(16 / pst_schedule(family, 6).rate ** 2)


def test_resolve_shift():
    assert resolve_shift("2n-6", 7) == 8
    assert resolve_shift("2n", 5) == 10
    assert resolve_shift("17.3", 5) == 17.3
    assert resolve_shift("n", 4) == 4
    assert resolve_shift(0, 9) == 0


def test_clean_parameter_point():
    # Fidelity and eigenvalues agree; only the propagator entries differ.
    rows = check_parameter_point(Family.KN, 6, 17.3, np.linspace(0.1, 5, 10))
    quantities = {r.quantity for r in rows}
    assert "fidelity_io" not in quantities
    assert "eigenvalues" not in quantities
    assert "propagator_OffIOOther" not in quantities
    assert "propagator_DiagIO" in quantities


@pytest.fixture(scope="module")
def report():
    return verify(sizes=range(4, 9))


def test_report_flags_known_entry_typos(report):
    q = {(r.family, r.quantity) for r in report}
    for cls in ("DiagIO", "DiagOther", "OffOtherOther"):
        assert (Family.KN, f"propagator_{cls}") in q
        assert (Family.KN_MINUS, f"propagator_{cls}") in q
    assert (Family.KN_MINUS, "propagator_OffIOIO") in q
    assert (Family.KN, "propagator_OffIOIO") not in q


def test_report_confirms_closed_fidelities(report):
    bad = {r.quantity for r in report}
    assert "fidelity_io" not in bad
    assert "eigenvalues" not in bad
    assert not any(q.startswith("pst_k") for q in bad)
    assert not any(q.startswith("propagator_OffIOOther") for q in bad)


def test_report_prediction_findings(report):
    q = {(r.family, r.quantity) for r in report}
    # ij maximum is exact for K_n; for K_n minus an edge it is reached at the beta times only
    assert not any(f is Family.KN and s.startswith("max_f(ij)") for f, s in q)
    assert not any(f is Family.KN_MINUS and s.startswith("max_f(ij)_window") for f, s in q)
    assert any(f is Family.KN_MINUS and s.startswith("max_f(ij)_at_time") for f, s in q)
    # the ik bound is right but sits at odd multiples of pi/rate
    assert not any(s.startswith("max_f(ik)_window") for _, s in q)
    assert any(s.startswith("max_f(kl)_window") for _, s in q)


def test_report_values_are_real_errors(report):
    for r in report:
        assert r.abs_error > 1e-9
        assert r.abs_error == pytest.approx(abs(r.published_value - r.oracle_value))
    text = report_csv(report)
    lines = text.splitlines()
    assert lines[0] == REPORT_HEADER
    assert len(lines) == len(report) + 1
