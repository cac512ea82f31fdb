"""
Tests for the verification checks
"""

import numpy as np
import pytest

from analyzers.radius_analyzer import ClassId
from analyzers.verification_analyzer import (
    VerificationAnalyzer, family_logderiv, rotation_family_logderiv, shah_bound,
)
from domains.regions import SIN1, Region, RegionKind
from functions.errors import ClaimError


@pytest.fixture
def verifier(radius_analyzer):
    return VerificationAnalyzer(radius_analyzer)


def test_sharp_pair_count(verifier):
    pairs = verifier.sharp_pairs()
    off_axis = [pair for pair in pairs if pair[1].kind is RegionKind.REVERSE_LEMNISCATE]
    assert len(pairs) == 28
    assert len(off_axis) == 3


def test_every_real_axis_sharp_claim_touches_the_boundary(verifier):
    for class_id, region in verifier.sharp_pairs():
        report = verifier.sharpness_check(class_id, region)
        if region.kind is RegionKind.REVERSE_LEMNISCATE:
            assert report.status == 'off-axis'
            continue
        assert report.passed, (class_id, region.label, report.boundary_distance)


def test_lemniscate_touch_is_on_the_right(verifier):
    report = verifier.sharpness_check('G1', 'lemniscate')
    assert report.touch_point.real > 0
    assert report.boundary_distance < 1e-9


def test_half_plane_touch_for_g3(verifier):
    report = verifier.sharpness_check('G3', Region(RegionKind.STARLIKE, 0.3))
    assert report.value.real == pytest.approx(0.3, abs=1e-9)
    assert report.touch_point.real < 0


def test_g2_sine_touches_the_right_real_point(verifier):
    report = verifier.sharpness_check('G2', 'sine')
    assert report.touch_point.real > 0
    assert report.value.real == pytest.approx(1 + SIN1, abs=1e-9)


def test_sharpness_rejects_lower_bound_claims(verifier):
    with pytest.raises(ClaimError):
        verifier.sharpness_check('G2', 'parabolic')


@pytest.mark.parametrize('class_id, region, factor, expected', [
    ('G1', 'parabolic', 0.99, True),
    ('G1', 'parabolic', 1.05, False),
    ('G3', 'nephroid', 0.9, True),
    ('G2', 'cardioid', 0.99, True),
    ('G2', 'sine', 1.05, False),
])
def test_containment(verifier, radius_analyzer, class_id, region, factor, expected):
    radius = radius_analyzer.radius_for_region(class_id, region).value
    report = verifier.containment_check(class_id, region, factor * radius, 1000)
    assert bool(report) is expected
    if not expected:
        assert report.witness is not None


def test_parabolic_witness_is_on_the_real_axis(verifier, radius_analyzer):
    radius = radius_analyzer.radius_for_region('G1', 'parabolic').value
    report = verifier.containment_check('G1', 'parabolic', 1.05 * radius)
    assert report.witness.imag == pytest.approx(0, abs=1e-12)
    assert report.witness.real < 0.5


def test_containment_needs_enough_samples(verifier):
    with pytest.raises(ValueError):
        verifier.containment_check('G1', 'parabolic', 0.05, 100)


def test_rotation_family_kernels():
    z = 0.3 + 0.2j
    assert rotation_family_logderiv(0.0, z) == pytest.approx(2 * z / (1 - z ** 2))
    assert rotation_family_logderiv(0.5, z) == pytest.approx(z / (1 - z))


def test_shah_equality_cases():
    r = 0.4
    assert abs(rotation_family_logderiv(0.0, r)) == pytest.approx(2 * r / (1 - r ** 2))
    assert abs(rotation_family_logderiv(0.5, r)) == pytest.approx(float(shah_bound(0.5, r)))
    assert abs(rotation_family_logderiv(0.0, 1j * r)) < shah_bound(0.0, r)


@pytest.mark.parametrize('alpha', [0.0, 0.5])
def test_shah_bound_check(verifier, alpha):
    report = verifier.shah_bound_check(alpha, 1000)
    assert report.max_excess <= 1e-10
    assert report.attainment_gap <= 1e-8
    assert report.max_ratio == pytest.approx(1, abs=1e-8)
    assert report.passed


def test_product_family_reproduces_f2():
    z = np.array([0.1, -0.15 + 0.05j])
    eps = np.ones((2, 3))
    values = family_logderiv(ClassId.G2, eps, z)
    expected = 1 + 2 * z / (1 + z) + 3 * z / (1 - z)
    assert np.allclose(values, expected)


def test_real_part_check(verifier):
    result = verifier.real_part_check(1000)
    assert result['passed']
    assert min(result['class_slack'].values()) == pytest.approx(0, abs=1e-9)


@pytest.mark.parametrize('class_id', list(ClassId))
def test_triangle_chain(verifier, class_id):
    result = verifier.triangle_chain_check(class_id, 1000, seed=5)
    assert result['passed']


@pytest.mark.parametrize('kind', ['lemniscate', 'lune', 'nephroid', 'sigmoid', 'exponential'])
def test_oracle_cross_validation(verifier, kind):
    result = verifier.oracle_cross_validation(kind, samples=10000, seed=1)
    assert result['disagreements'] == 0
    assert result['compared'] > 9000


def test_oracle_cross_validation_needs_a_generator(verifier):
    with pytest.raises(ValueError):
        verifier.oracle_cross_validation('parabolic')


def test_run_suite_collects_results(verifier):
    result = verifier.run_suite('sharpness')
    assert result['success'] and result['passed']
    assert len(result['checks']) == 28


def test_run_suite_records_raising_checks(verifier, mocker):
    mocker.patch.object(verifier, 'shah_bound_check', side_effect=RuntimeError('boom'))
    result = verifier.run_suite('shah')
    assert result['success']
    assert not result['passed']
    assert result['failures'][0][2] == 'boom'


def test_run_suite_unknown(verifier):
    result = verifier.run_suite('nonsense')
    assert result['success'] is False


def test_sharpness_report_carries_pass_key(verifier):
    record = verifier.sharpness_check('G1', 'lemniscate').to_dict()
    assert record['pass'] is record['passed'] is True
    assert len(record['touch_point']) == 2


def test_containment_suite_passes(verifier):
    result = verifier.run_suite('containment')
    assert result['success'] and result['passed'], result['failures']
    assert len(result['checks']) == 33


def test_oracle_suite_uses_at_least_ten_thousand_samples(verifier, mocker):
    xval = mocker.patch.object(verifier, 'oracle_cross_validation',
                               return_value={'passed': True, 'disagreements': 0})
    result = verifier.run_suite('oracle-xval', samples=1000)
    assert result['passed']
    assert xval.call_count == 8
    assert all(call.args[1] == 10000 for call in xval.call_args_list)


@pytest.mark.parametrize('class_id', list(ClassId))
def test_class_extremals_are_members(verifier, class_id):
    result = verifier.membership_check(class_id, 1000)
    assert result['passed']
    for ratio in result['ratios'].values():
        assert ratio['min_re'] > ratio['threshold']


def test_membership_ratios_reach_their_thresholds(verifier):
    g1 = verifier.membership_check('G1', 1000)['ratios']
    g2 = verifier.membership_check('G2', 1000)['ratios']
    assert g1['f/g']['min_re'] == pytest.approx(0.01 / 1.99, abs=1e-9)
    assert g1['g/(z p0)']['min_re'] == pytest.approx(0.01 / 1.99, abs=1e-9)
    assert g2['g/(z p0)']['threshold'] == 0.5
    assert g2['g/(z p0)']['min_re'] == pytest.approx(1 / 1.99, abs=1e-9)


def test_membership_suite(verifier):
    result = verifier.run_suite('membership')
    assert result['passed']
    assert [check['class'] for check in result['checks']] == ['G1', 'G2', 'G3']


def test_membership_failure_is_reported(verifier, mocker):
    mocker.patch.dict('analyzers.verification_analyzer.CLASS_MEMBERSHIP',
                      {ClassId.G3: (('f/(z p0)', 'G1FN', None, 0.6),)})
    result = verifier.run_suite('membership')
    assert not result['passed']
    assert result['failures'][0][:2] == ['G3', 'membership']
    assert result['failures'][0][2] < 0
