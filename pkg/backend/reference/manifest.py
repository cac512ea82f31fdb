"""
Published radius values and their annotations
"""

import json
import logging
from pathlib import Path
from typing import Callable, Dict, Optional

import numpy as np

logger = logging.getLogger(__name__)

MANIFEST_PATH = Path(__file__).parent / 'paper_values.json'

# Half-plane radii as printed, evaluated at the requested alpha
PRINTED_ALPHA_FORMULAS: Dict[str, Callable[[float], float]] = {
    'G1': lambda a: (1 - a) / (3 + np.sqrt(10 - 2 * a + a ** 2)),
    'G2': lambda a: 2 * (1 - a) / (5 + np.sqrt(25 - 4 * a + a ** 2)),
    'G3': lambda a: (1 - a) / (2 + np.sqrt(5 - 2 * a + a ** 2)),
}


class PaperManifest:
    """Lookup of published values keyed by (class, region)."""

    def __init__(self, path: Path = MANIFEST_PATH):
        """Load the manifest file."""
        with open(path, encoding='utf-8') as handle:
            self.data = json.load(handle)
        self.version = self.data['version']
        self.tolerance = float(self.data['tolerance'])
        logger.debug(f"Loaded reference manifest {self.version} from {path}")

    def value(self, class_id: str, region: str, alpha: Optional[float] = None) -> Optional[float]:
        """Published radius, or None when none is published."""
        if region == 'starlike':
            return float(PRINTED_ALPHA_FORMULAS[class_id](alpha or 0.0))
        return self.data['radii'].get(class_id, {}).get(region)

    def conjecture(self, class_id: str, region: str) -> Optional[float]:
        return self.data['conjectures'].get(class_id, {}).get(region)

    def annotation(self, class_id: str, region: str) -> Optional[Dict]:
        return self.data['annotations'].get(f'{class_id}/{region}')

    def compare(self, class_id: str, region: str, radius: float,
                alpha: Optional[float] = None) -> Dict:
        """
        Compare a computed radius with the published one.

        Args:
            class_id: Class label such as 'G2'
            region: Region kind name
            radius: Computed radius
            alpha: Order for half-plane rows

        Returns:
            Dictionary with paper_value, abs_diff, annotation and whether
            the difference is a failure (above tolerance and not annotated)
        """
        paper_value = self.value(class_id, region, alpha)
        if paper_value is None:
            return {'paper_value': None, 'abs_diff': None, 'annotation': None, 'failed': False}

        abs_diff = abs(radius - paper_value)
        annotation = self.annotation(class_id, region)
        note = annotation['kind'] if annotation else None
        return {
            'paper_value': paper_value,
            'abs_diff': abs_diff,
            'annotation': note,
            'failed': abs_diff > self.tolerance and annotation is None,
        }
