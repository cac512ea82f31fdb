"""
Tests for the command-line application
"""

import json
from pathlib import Path

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from app import VERSION, create_app
from reference.manifest import PaperManifest

GOLDEN = Path(__file__).parent / 'golden'


@pytest.fixture
def cli():
    return create_app()


@pytest.fixture
def runner():
    return CliRunner()


def test_version(cli, runner):
    result = runner.invoke(cli, ['--version'])
    assert result.exit_code == 0
    assert VERSION in result.output


def test_g1_table_matches_golden_file(cli, runner, tmp_path):
    out = tmp_path / 'table.csv'
    result = runner.invoke(cli, ['table', '--class', 'g1', '--alpha', '0', '--format', 'csv',
                                 '--out', str(out)])
    assert result.exit_code == 0, result.output
    assert out.read_bytes() == (GOLDEN / 'table_g1_all.csv').read_bytes()


def test_table_output_is_byte_stable(cli, runner, tmp_path):
    first, second = tmp_path / 'first.json', tmp_path / 'second.json'
    for out in (first, second):
        result = runner.invoke(cli, ['table', '--class', 'g3', '--alpha', '0', '--alpha', '0.5',
                                     '--format', 'json', '--out', str(out)])
        assert result.exit_code == 0
    assert first.read_bytes() == second.read_bytes()
    records = json.loads(first.read_text())
    assert len(records) == 12
    assert records[1]['alpha'] == 0.5


def test_markdown_table(cli, runner, tmp_path):
    out = tmp_path / 'table.md'
    result = runner.invoke(cli, ['table', '--class', 'g2', '--target', 'sine', '--format', 'md',
                                 '--out', str(out)])
    assert result.exit_code == 0
    lines = out.read_text().splitlines()
    assert lines[0].startswith('| class | region |')
    assert len(lines) == 3


def test_compare_paper_annotates_typos(cli, runner, tmp_path):
    out = tmp_path / 'compare.json'
    result = runner.invoke(cli, ['table', '--class', 'all', '--compare-paper', '--format', 'json',
                                 '--out', str(out)])
    assert result.exit_code == 0, result.output
    records = json.loads(out.read_text())
    by_key = {(record['class'], record['region']): record for record in records}

    assert by_key[('G2', 'reverse-lemniscate')]['annotation'] == 'paper-typo'
    for record in records:
        assert (record['abs_diff'] is None) == (record['paper_value'] is None)
        if record['annotation'] is None:
            assert record['abs_diff'] < 5e-4


def test_compare_paper_fails_on_mismatch(cli, runner, tmp_path, mocker):
    mocker.patch.object(PaperManifest, 'value', return_value=0.5)
    result = runner.invoke(cli, ['table', '--class', 'g1', '--target', 'lemniscate',
                                 '--compare-paper', '--out', str(tmp_path / 'out.csv')])
    assert result.exit_code == 1


@pytest.mark.parametrize('args', [
    ['table', '--class', 'g4'],
    ['table', '--alpha', '1.0'],
    ['verify', '--samples', '10'],
    ['dump', '--what', 'region'],
    ['dump', '--what', 'trajectory', '--class', 'g1'],
    ['envelope', '--class', 'g2'],
    ['nonsense'],
])
def test_usage_errors_exit_with_two(cli, runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_dump_region(cli, runner, tmp_path):
    out = tmp_path / 'cardioid.csv'
    result = runner.invoke(cli, ['dump', '--what', 'region', '--target', 'cardioid',
                                 '--points', '64', '--out', str(out)])
    assert result.exit_code == 0
    frame = pd.read_csv(out)
    assert list(frame.columns) == ['t', 're', 'im']
    assert len(frame) == 64


def test_dump_trajectory_touches_the_lemniscate(cli, runner, tmp_path):
    out = tmp_path / 'trajectory.csv'
    result = runner.invoke(cli, ['dump', '--what', 'trajectory', '--class', 'g1',
                                 '--r', '0.0687096753', '--points', '512', '--out', str(out)])
    assert result.exit_code == 0
    frame = pd.read_csv(out)
    w = frame['re'].to_numpy() + 1j * frame['im'].to_numpy()
    residual = np.abs(np.abs(w ** 2 - 1) - 1)
    assert len(frame) == 512
    assert residual.min() < 1e-6


def test_verify_shah_suite(cli, runner, tmp_path):
    out = tmp_path / 'verify.json'
    result = runner.invoke(cli, ['verify', '--suite', 'shah', '--out', str(out)])
    assert result.exit_code == 0
    report = json.loads(out.read_text())
    assert report['passed']
    assert len(report['suites']['shah']['checks']) == 2


def test_verify_exits_with_one_on_failure(cli, runner, tmp_path, mocker):
    mocker.patch('analyzers.verification_analyzer.VerificationAnalyzer.triangle_chain_check',
                 return_value={'passed': False, 'max_excess': 1.0})
    result = runner.invoke(cli, ['verify', '--suite', 'chain', '--out', str(tmp_path / 'v.json')])
    assert result.exit_code == 1


def test_envelope_command(cli, runner, tmp_path):
    out = tmp_path / 'envelope.json'
    result = runner.invoke(cli, ['envelope', '--class', 'g1', '--target', 'parabolic',
                                 '--eps-grid', '16', '--out', str(out)])
    assert result.exit_code == 0
    estimate = json.loads(out.read_text())
    assert estimate['r_upper'] == pytest.approx(np.sqrt(37) - 6, abs=1e-6)
    assert estimate['witness']['eps_angles']
    assert estimate['conjecture'] is None


def test_envelope_reports_the_published_conjecture(cli, runner, tmp_path):
    out = tmp_path / 'envelope.json'
    result = runner.invoke(cli, ['envelope', '--class', 'g2', '--target', 'parabolic',
                                 '--eps-grid', '16', '--out', str(out)])
    assert result.exit_code == 0
    estimate = json.loads(out.read_text())
    assert estimate['conjecture'] == pytest.approx(0.1010)
    assert estimate['proven_radius'] <= estimate['r_upper']


def test_verify_membership_suite(cli, runner, tmp_path):
    out = tmp_path / 'verify.json'
    result = runner.invoke(cli, ['verify', '--suite', 'membership', '--out', str(out)])
    assert result.exit_code == 0
    checks = json.loads(out.read_text())['suites']['membership']['checks']
    assert [check['class'] for check in checks] == ['G1', 'G2', 'G3']
    assert checks[1]['ratios']['g/(z p0)']['min_re'] > 0.5
