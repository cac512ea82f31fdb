"""
Envelope explorer: upper estimates of the sharp radii over parametric families
"""

import logging
import os
from dataclasses import asdict, dataclass, field
from typing import Dict, Optional, Union

import numpy as np

from analyzers.radius_analyzer import ClassId, RadiusAnalyzer, as_class
from analyzers.verification_analyzer import CLASS_KERNELS, rotation_family_logderiv
from domains.regions import Region, as_region, contains_many

logger = logging.getLogger(__name__)

DEFAULT_EPS_GRID = 64
DEFAULT_R_STEP = 0.005
DEFAULT_R_TOL = 1e-7
DEFAULT_R_MAX = 0.6


@dataclass
class EnvelopeEstimate:
    """Largest grid radius at which every sampled family member stays inside."""

    class_id: str
    region: str
    r_upper: float
    proven_radius: float
    eps_grid: int
    r_step: float
    r_tol: float
    witness: Dict = field(default_factory=dict)

    def to_dict(self) -> Dict:
        return asdict(self)


def default_eps_grid() -> int:
    """Rotation grid size, from STARRAD_EPS_GRID."""
    try:
        return max(4, int(os.getenv('STARRAD_EPS_GRID', DEFAULT_EPS_GRID)))
    except ValueError:
        logger.warning(f"Invalid STARRAD_EPS_GRID, using {DEFAULT_EPS_GRID}")
        return DEFAULT_EPS_GRID


class EnvelopeAnalyzer:
    """
    Scans r upward over the product family f = z * prod p_i and bisects
    the first radius where zf'/f leaves the domain.

    zf'/f depends only on eps_i z, so z is fixed at r on the positive axis
    and the rotation is absorbed into the eps grid.
    """

    def __init__(self, radius_analyzer: Optional[RadiusAnalyzer] = None):
        """Initialize envelope analyzer."""
        self.radius_analyzer = radius_analyzer or RadiusAnalyzer()

    def family_values(self, class_id: ClassId, r: float, eps_grid: int) -> np.ndarray:
        """All values 1 + sum of kernel terms over the eps grid (Minkowski sum)."""
        angles = 2 * np.pi * np.arange(eps_grid) / eps_grid
        u = r * np.exp(1j * angles)
        values = np.ones(1, dtype=complex)
        for alpha in CLASS_KERNELS[class_id]:
            term = rotation_family_logderiv(alpha, u)
            values = (values[:, None] + term[None, :]).ravel()
        return values

    def first_exit(self, class_id: ClassId, region: Region, r: float,
                   eps_grid: int) -> Optional[Dict]:
        """Witness parameters of a family member leaving the domain at r, if any."""
        values = self.family_values(class_id, r, eps_grid)
        inside = contains_many(region, values)
        if np.all(inside):
            return None

        index = int(np.argmin(inside))
        factors = len(CLASS_KERNELS[class_id])
        digits = np.unravel_index(index, (eps_grid,) * factors)
        angles = [float(2 * np.pi * digit / eps_grid) for digit in digits]
        w = complex(values[index])
        return {'r': r, 'z': r, 'eps_angles': angles, 'value': [w.real, w.imag]}

    def envelope_upper_bound(self, class_id: Union[ClassId, str], region: Union[Region, str],
                             eps_grid: Optional[int] = None, r_step: float = DEFAULT_R_STEP,
                             r_tol: float = DEFAULT_R_TOL,
                             r_max: float = DEFAULT_R_MAX) -> EnvelopeEstimate:
        """
        Estimate the sharp radius from above by sampling the family.

        Args:
            class_id: G1, G2 or G3
            region: Target domain
            eps_grid: Points per rotation grid (default from configuration)
            r_step: Grid step of the upward scan
            r_tol: Bisection tolerance between grid cells
            r_max: Scan ceiling

        Returns:
            EnvelopeEstimate with r_upper and the violating parameters
        """
        class_id = as_class(class_id)
        region = as_region(region)
        eps_grid = eps_grid or default_eps_grid()
        proven = self.radius_analyzer.radius_for_region(class_id, region).value

        low, high, witness = 0.0, None, None
        r = r_step
        while r <= r_max:
            witness = self.first_exit(class_id, region, r, eps_grid)
            if witness is not None:
                high = r
                break
            low = r
            r += r_step

        if high is None:
            logger.warning(f"{class_id.value}/{region.label}: no exit below r={r_max}")
            return EnvelopeEstimate(class_id.value, region.label, r_max, proven,
                                    eps_grid, r_step, r_tol)

        while high - low > r_tol:
            middle = (low + high) / 2
            found = self.first_exit(class_id, region, middle, eps_grid)
            if found is None:
                low = middle
            else:
                high, witness = middle, found

        logger.info(f"Envelope {class_id.value}/{region.label}: r_upper={high:.6f} "
                    f"(proven {proven:.6f})")
        return EnvelopeEstimate(
            class_id=class_id.value,
            region=region.label,
            r_upper=high,
            proven_radius=proven,
            eps_grid=eps_grid,
            r_step=r_step,
            r_tol=r_tol,
            witness=witness,
        )
