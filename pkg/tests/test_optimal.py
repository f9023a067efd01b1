"""
Test the optimal interaction times and precision curves
"""

import pytest
from pydantic import ValidationError

from dephaseprobe.core import metrology, optimal
from dephaseprobe.models import OptimumReport


@pytest.mark.parametrize("s", [0.02, 0.05, 0.1])
def test_sub_ohmic_optimal_time(s):
    report = optimal.maximize_qfi_over_time(s)
    assert not report.saturating
    # the (π/2)e^s law undershoots the true optimum by about 15% here
    ratio = report.tau_star / optimal.sub_ohmic_time(s)
    assert 1.1 < ratio < 1.2


@pytest.mark.parametrize("s", [2.3, 2.6, 3.0])
def test_super_ohmic_optimal_time(s):
    report = optimal.maximize_qfi_over_time(s)
    assert not report.saturating
    assert report.tau_star == pytest.approx(optimal.quarter_period_time(s), rel=0.1)


def test_saturates_at_horizon():
    report = optimal.maximize_qfi_over_time(1.6, tau_max=35.0)
    assert report.saturating
    assert report.tau_star == 35.0
    assert report.horizon == 35.0
    assert report.qfi_star == pytest.approx(metrology.qfi_ohmicity(1.6, 35.0).qfi, rel=1e-3)


def test_best_precision_between_regimes():
    best = {s: optimal.maximize_qfi_over_time(s) for s in (0.5, 1.5, 2.0)}
    q = {s: metrology.qsnr(s, report.qfi_star) for s, report in best.items()}
    assert q[1.5] > q[0.5]
    assert q[1.5] > q[2.0]


def test_refinement_independent_of_scan_density():
    coarse = optimal.maximize_qfi_over_time(2.5)
    fine = optimal.maximize_qfi_over_time(2.5, scan_points=1024)
    assert fine.tau_star == pytest.approx(coarse.tau_star, rel=1e-2)


@pytest.mark.parametrize("s", [0.1, 2.5, 3.0])
def test_interior_optimum_is_a_maximum(s):
    report = optimal.maximize_qfi_over_time(s)
    delta = 1e-3 * report.tau_star
    for tau in (report.tau_star - delta, report.tau_star + delta):
        assert metrology.qfi_ohmicity(s, tau).qfi <= report.qfi_star


@pytest.mark.parametrize("s", [0.3, 1.0, 2.2])
def test_optimum_beats_unit_time(s):
    report = optimal.maximize_qfi_over_time(s)
    assert report.qfi_star >= metrology.qfi_ohmicity(s, 1.0).qfi * (1 - 1e-9)


@pytest.mark.parametrize("s, tau_max", [(0.0, 35.0), (-0.5, 35.0), (1.0, 1e-4)])
def test_maximize_domain(s, tau_max):
    with pytest.raises(ValueError):
        optimal.maximize_qfi_over_time(s, tau_max=tau_max)


def test_optimal_time_trends():
    small = optimal.optimal_time_curve([0.05, 0.1, 0.2], max_workers=1)
    taus = [report.tau_star for report in small.reports]
    assert taus == sorted(taus)

    large = optimal.optimal_time_curve([2.3, 2.6, 3.0], max_workers=1)
    taus = [report.tau_star for report in large.reports]
    assert taus == sorted(taus, reverse=True)


def test_failed_point_does_not_sink_curve():
    table = optimal.optimal_time_curve([0.5, -1.0, 2.5], max_workers=2)
    assert [report.s for report in table.reports] == [0.5, 2.5]
    assert len(table.failures) == 1
    assert table.failures[0].s == -1.0
    assert "positive" in table.failures[0].message


def test_optimal_qfi_curve_sorted():
    curve = optimal.optimal_qfi_curve([3.0, 0.5, 2.3], max_workers=1)
    assert [point.s for point in curve] == [0.5, 2.3, 3.0]
    for point in curve:
        assert point.qsnr_star == pytest.approx(point.s**2 * point.qfi_star, rel=1e-14)


def test_time_jump_between_regimes():
    reports = [optimal.maximize_qfi_over_time(s) for s in (2.0, 1.6)]
    assert optimal.locate_time_jump(reports) == (1.6, 2.0)


def test_locate_time_jump_synthetic():
    reports = [
        OptimumReport(s=s, tau_star=tau, qfi_star=0.1, saturating=False, horizon=35.0)
        for s, tau in [(1.0, 10.0), (1.2, 12.0), (1.4, 3.0), (1.6, 1.0)]
    ]
    assert optimal.locate_time_jump(reports) == (1.2, 1.4)
    assert optimal.locate_time_jump(reports[:2]) is None
    assert optimal.locate_time_jump(reports, factor=5.0) is None


def test_saturating_report_sits_at_horizon():
    with pytest.raises(ValidationError):
        OptimumReport(s=1.6, tau_star=30.0, qfi_star=0.15, saturating=True, horizon=35.0)


def test_reference_times():
    assert optimal.quarter_period_time(2.0) == pytest.approx(0.7853981633974483)
    assert optimal.sub_ohmic_time(0.0) == pytest.approx(1.5707963267948966)
