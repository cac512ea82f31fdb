"""
Plot-data command: region boundaries and log-derivative trajectories
"""

import logging

import click
import numpy as np
import pandas as pd

from analyzers.verification_analyzer import CLASS_EXTREMALS
from analyzers.radius_analyzer import as_class
from api.output import status, write_text
from domains.regions import Region, RegionKind, boundary_points
from functions.extremal import ExtremalId, logderiv

logger = logging.getLogger(__name__)

TARGET_CHOICES = [kind.value for kind in RegionKind]
CLASS_CHOICES = ['g1', 'g2', 'g3', 'p0']


def region_frame(target: str, points: int, alpha: float = 0.0) -> pd.DataFrame:
    polyline = boundary_points(Region(RegionKind(target), alpha), points)
    return pd.DataFrame({'t': polyline.t, 're': polyline.points.real, 'im': polyline.points.imag})


def trajectory_frame(class_name: str, r: float, points: int) -> pd.DataFrame:
    """Image of |z| = r under zf'/f of the class extremal (or z p0'/p0)."""
    fid = ExtremalId.P0 if class_name == 'p0' else CLASS_EXTREMALS[as_class(class_name)]
    t = np.linspace(0, 2 * np.pi, points)
    values = np.asarray(logderiv(fid, r * np.exp(1j * t)))
    return pd.DataFrame({'t': t, 're': values.real, 'im': values.imag})


@click.command('dump')
@click.option('--what', type=click.Choice(['region', 'trajectory']), required=True)
@click.option('--target', type=click.Choice(TARGET_CHOICES), help='Domain for --what region')
@click.option('--alpha', type=click.FloatRange(0, 1, max_open=True), default=0.0,
              help='Order of the half-plane')
@click.option('--class', 'class_name', type=click.Choice(CLASS_CHOICES),
              help='Class extremal for --what trajectory')
@click.option('--r', 'radius', type=click.FloatRange(0, 1, min_open=True, max_open=True),
              help='Circle radius for --what trajectory')
@click.option('--points', type=click.IntRange(min=16), default=512, show_default=True)
@click.option('--out', default='-', help='CSV path, - for stdout')
def dump_command(what, target, alpha, class_name, radius, points, out):
    """Dump boundary or trajectory samples as CSV with header t,re,im."""
    if what == 'region':
        if target is None:
            raise click.UsageError('--what region requires --target')
        frame = region_frame(target, points, alpha)
    else:
        if class_name is None or radius is None:
            raise click.UsageError('--what trajectory requires --class and --r')
        frame = trajectory_frame(class_name, radius, points)

    write_text(frame.to_csv(index=False, float_format='%.12g', lineterminator='\n'), out)
    status(f'{len(frame)} samples written')
