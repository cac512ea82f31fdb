"""
Verification command
"""

import logging
import sys

import click

from analyzers.verification_analyzer import VerificationAnalyzer
from api.output import status, write_json

logger = logging.getLogger(__name__)

SUITES = ['sharpness', 'containment', 'shah', 'oracle-xval', 'real-part', 'chain', 'membership']


@click.command('verify')
@click.option('--suite', type=click.Choice(SUITES + ['all']), default='all', show_default=True)
@click.option('--samples', type=click.IntRange(min=1000), default=1000, show_default=True,
              help='Samples per sampling check')
@click.option('--tol', type=click.FloatRange(min=0, min_open=True), default=1e-8,
              show_default=True, help='Sharpness threshold')
@click.option('--out', default='-', help='Report path, - for stdout')
def verify_command(suite, samples, tol, out):
    """Run verification suites and emit a JSON report."""
    analyzer = VerificationAnalyzer()
    names = SUITES if suite == 'all' else [suite]

    report = {'passed': True, 'suites': {}}
    for name in names:
        result = analyzer.run_suite(name, samples=samples, tol=tol)
        report['suites'][name] = result
        if not result.get('success') or not result['passed']:
            report['passed'] = False

    write_json(report, out)

    for name, result in report['suites'].items():
        for label, target, residual in result.get('failures', []):
            status(f'{name}: {label}/{target} failed ({residual})', ok=False)
        if result.get('passed'):
            status(f'{name}: {len(result["checks"])} checks passed')

    if not report['passed']:
        sys.exit(1)
