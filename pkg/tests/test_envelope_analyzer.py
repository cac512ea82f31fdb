"""
Tests for the envelope explorer
"""

import numpy as np
import pytest

from analyzers.envelope_analyzer import EnvelopeAnalyzer, default_eps_grid
from analyzers.radius_analyzer import ClassId
from analyzers.verification_analyzer import VerificationAnalyzer
from domains.regions import RegionKind
from functions.extremal import logderiv
from reference.manifest import PaperManifest

CONJECTURES = ['parabolic', 'exponential', 'cardioid', 'lune', 'rational']

# Sharp claims whose extremal touches the boundary on the real axis
REAL_AXIS_SHARP_PAIRS = [
    (class_id.value, region) for class_id, region in VerificationAnalyzer().sharp_pairs()
    if region.kind is not RegionKind.REVERSE_LEMNISCATE
]


@pytest.fixture(scope='module')
def explorer():
    return EnvelopeAnalyzer()


@pytest.fixture(scope='module')
def manifest():
    return PaperManifest()


@pytest.mark.parametrize('region', CONJECTURES)
def test_g2_envelope_reaches_the_conjectured_radius(explorer, manifest, region):
    estimate = explorer.envelope_upper_bound('G2', region, eps_grid=64)
    assert estimate.proven_radius <= estimate.r_upper
    assert estimate.r_upper == pytest.approx(manifest.conjecture('G2', region), abs=2e-3)
    assert estimate.witness['r'] == estimate.r_upper


def test_g2_parabolic_brackets_the_f2_exit(explorer):
    estimate = explorer.envelope_upper_bound('G2', 'parabolic')
    assert 0.1000 <= estimate.r_upper <= 0.1012


def test_g1_parabolic_meets_the_proven_radius(explorer):
    estimate = explorer.envelope_upper_bound('G1', 'parabolic', eps_grid=32)
    assert estimate.r_upper == pytest.approx(np.sqrt(37) - 6, abs=1e-6)


@pytest.mark.parametrize('class_id, region', REAL_AXIS_SHARP_PAIRS,
                         ids=[f'{class_id}-{region.label}' for class_id, region in REAL_AXIS_SHARP_PAIRS])
def test_sharp_pairs_are_met_from_above(explorer, class_id, region):
    estimate = explorer.envelope_upper_bound(class_id, region, eps_grid=16)
    radius = estimate.proven_radius
    assert radius - 1e-6 <= estimate.r_upper <= radius + 2e-3


def test_family_at_unit_rotations_is_the_extremal(explorer):
    values = explorer.family_values(ClassId.G2, 0.1, 4)
    # eps grid index 0 is eps = 1 for every factor
    assert values[0] == pytest.approx(logderiv('F2', 0.1))


def test_family_size(explorer):
    assert explorer.family_values(ClassId.G3, 0.1, 8).shape == (64,)
    assert explorer.family_values(ClassId.G1, 0.1, 8).shape == (512,)


def test_no_exit_below_the_ceiling(explorer):
    estimate = explorer.envelope_upper_bound('G3', 'parabolic', eps_grid=8, r_max=0.05)
    assert estimate.r_upper == 0.05
    assert estimate.witness == {}


def test_eps_grid_from_environment(mocker):
    mocker.patch.dict('os.environ', {'STARRAD_EPS_GRID': '16'})
    assert default_eps_grid() == 16
    mocker.patch.dict('os.environ', {'STARRAD_EPS_GRID': 'dense'})
    assert default_eps_grid() == 64


def test_report_serializes(explorer):
    data = explorer.envelope_upper_bound('G1', 'sine', eps_grid=16).to_dict()
    assert set(data) >= {'class_id', 'region', 'r_upper', 'proven_radius', 'witness'}
    assert len(data['witness']['eps_angles']) == 3
