"""
Envelope exploration command
"""

import logging

import click

from analyzers.envelope_analyzer import DEFAULT_R_STEP, DEFAULT_R_TOL, EnvelopeAnalyzer
from api.output import status, write_json
from domains.regions import Region, RegionKind
from reference.manifest import PaperManifest

logger = logging.getLogger(__name__)


@click.command('envelope')
@click.option('--class', 'class_name', type=click.Choice(['g1', 'g2', 'g3']), required=True)
@click.option('--target', type=click.Choice([kind.value for kind in RegionKind]), required=True)
@click.option('--alpha', type=click.FloatRange(0, 1, max_open=True), default=0.0,
              help='Order of the half-plane')
@click.option('--eps-grid', type=click.IntRange(min=4), default=None,
              help='Rotation grid size (default STARRAD_EPS_GRID or 64)')
@click.option('--r-step', type=click.FloatRange(min=0, min_open=True), default=DEFAULT_R_STEP,
              show_default=True)
@click.option('--r-tol', type=click.FloatRange(min=0, min_open=True), default=DEFAULT_R_TOL,
              show_default=True)
@click.option('--out', default='-', help='JSON path, - for stdout')
def envelope_command(class_name, target, alpha, eps_grid, r_step, r_tol, out):
    """Estimate the sharp radius from above over the product family."""
    estimate = EnvelopeAnalyzer().envelope_upper_bound(
        class_name, Region(RegionKind(target), alpha),
        eps_grid=eps_grid, r_step=r_step, r_tol=r_tol,
    )
    record = estimate.to_dict()
    # Published conjectured radius for the open cases, None elsewhere
    record['conjecture'] = PaperManifest().conjecture(estimate.class_id, target)
    write_json(record, out)
    status(f'{estimate.class_id}/{estimate.region}: r_upper={estimate.r_upper:.6f}, '
           f'proven {estimate.proven_radius:.6f}')
