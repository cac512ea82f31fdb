"""
Output helpers shared by the command modules
"""

import json
import logging
from typing import Dict, Optional

import click
import pandas as pd
from colorama import Fore, Style

logger = logging.getLogger(__name__)


def write_text(text: str, out: Optional[str]):
    """Write data to a file, or to stdout for None or '-'."""
    if out in (None, '-'):
        click.echo(text, nl=not text.endswith('\n'))
        return
    with open(out, 'w', encoding='utf-8', newline='') as handle:
        handle.write(text)
    logger.info(f"Wrote {len(text)} bytes to {out}")


def write_json(data: Dict, out: Optional[str]):
    write_text(json.dumps(data, indent=2, sort_keys=False) + '\n', out)


def to_markdown(frame: pd.DataFrame) -> str:
    """Render a frame as a pipe table."""
    def cell(value) -> str:
        if value is None or (isinstance(value, float) and pd.isna(value)):
            return ''
        if isinstance(value, float):
            return f'{value:.6f}'
        return str(value)

    header = '| ' + ' | '.join(frame.columns) + ' |'
    rule = '|' + '|'.join('---' for _ in frame.columns) + '|'
    rows = ['| ' + ' | '.join(cell(value) for value in row) + ' |'
            for row in frame.itertuples(index=False)]
    return '\n'.join([header, rule] + rows) + '\n'


def status(message: str, ok: bool = True):
    """Colored status line on stderr."""
    color = Fore.GREEN if ok else Fore.RED
    click.echo(f'{color}{message}{Style.RESET_ALL}', err=True)
