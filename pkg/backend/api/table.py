"""
Radius table command
"""

import logging
import sys
from typing import List, Sequence

import click
import pandas as pd

from analyzers.radius_analyzer import ClassId, RadiusAnalyzer, RadiusResult
from api.output import status, to_markdown, write_text
from domains.regions import RegionKind
from reference.manifest import PaperManifest

logger = logging.getLogger(__name__)

CLASS_CHOICES = ['g1', 'g2', 'g3', 'all']
TARGET_CHOICES = [kind.value for kind in RegionKind] + ['all']
BASE_COLUMNS = ['class', 'region', 'alpha', 'radius', 'sharp', 'method']
COMPARE_COLUMNS = ['paper_value', 'abs_diff', 'annotation']
FLOAT_FORMAT = '%.10f'


def _select(results: List[RadiusResult], class_name: str, target: str) -> List[RadiusResult]:
    selected = []
    for result in results:
        if class_name != 'all' and result.class_id is not ClassId(class_name.upper()):
            continue
        if target != 'all' and result.region.kind.value != target:
            continue
        selected.append(result)
    return selected


def build_table(class_name: str = 'all', target: str = 'all', alphas: Sequence[float] = (0.0,),
                compare_paper: bool = False) -> pd.DataFrame:
    """
    Assemble the radius table as a frame with stable columns.

    Args:
        class_name: g1, g2, g3 or all
        target: Region kind name or all
        alphas: Orders of the half-plane rows
        compare_paper: Append published values, differences and annotations

    Returns:
        DataFrame in class, then region order; with compare_paper a
        boolean 'failed' attribute is stored in frame.attrs
    """
    results = _select(RadiusAnalyzer().full_table(alphas), class_name, target)
    frame = pd.DataFrame([result.to_record() for result in results], columns=BASE_COLUMNS)
    frame['alpha'] = frame['alpha'].astype(float)

    if compare_paper:
        manifest = PaperManifest()
        comparisons = [manifest.compare(result.class_id.value, result.region.kind.value,
                                        result.value, result.region.alpha)
                       for result in results]
        for column in COMPARE_COLUMNS:
            frame[column] = [comparison[column] for comparison in comparisons]
        frame.attrs['failed'] = [
            (result.class_id.value, result.region.label, comparison['abs_diff'])
            for result, comparison in zip(results, comparisons) if comparison['failed']
        ]

    return frame


def render(frame: pd.DataFrame, fmt: str) -> str:
    """Serialize the table as csv, json or md."""
    if fmt == 'csv':
        return frame.to_csv(index=False, float_format=FLOAT_FORMAT, lineterminator='\n')
    if fmt == 'json':
        return frame.to_json(orient='records', indent=2, double_precision=10) + '\n'
    return to_markdown(frame)


@click.command('table')
@click.option('--class', 'class_name', type=click.Choice(CLASS_CHOICES), default='all',
              show_default=True, help='Function class')
@click.option('--target', type=click.Choice(TARGET_CHOICES), default='all', show_default=True,
              help='Target domain')
@click.option('--alpha', 'alphas', type=click.FloatRange(0, 1, max_open=True), multiple=True,
              help='Order for the half-plane rows (repeatable, default 0)')
@click.option('--format', 'fmt', type=click.Choice(['json', 'csv', 'md']), default='csv',
              show_default=True)
@click.option('--out', default='-', help='Output path, - for stdout')
@click.option('--compare-paper', is_flag=True, help='Append published values and differences')
def table_command(class_name, target, alphas, fmt, out, compare_paper):
    """Compute the radius table."""
    frame = build_table(class_name, target, alphas or (0.0,), compare_paper)
    write_text(render(frame, fmt), out)

    failed = frame.attrs.get('failed', [])
    if compare_paper and failed:
        for class_id, region, diff in failed:
            status(f'{class_id}/{region}: differs from the published value by {diff:.2e}', ok=False)
        sys.exit(1)

    status(f'{len(frame)} radii computed' + (', all within tolerance' if compare_paper else ''))
