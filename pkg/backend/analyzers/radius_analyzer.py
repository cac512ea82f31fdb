"""
Radius-of-starlikeness engine for the classes G1, G2, G3
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Optional, Sequence, Union

import numpy as np
from scipy.optimize import bisect

from domains.regions import (
    NAMED_KINDS, RL_ETA, Region, RegionKind, as_region, inner_disc_radius,
)
from functions.errors import BracketError, DiskDomainError

logger = logging.getLogger(__name__)

BISECTION_BRACKET = (0.0, 0.99)
BISECTION_XTOL = 1e-12
BISECTION_MAXITER = 200
AGREEMENT_TOL = 1e-10


class ClassId(str, Enum):
    """The three function classes."""

    G1 = 'G1'
    G2 = 'G2'
    G3 = 'G3'


class BoundKind(str, Enum):
    MODULUS = 'modulus'
    REAL_PART_LOWER = 'real-part-lower'


@dataclass(frozen=True)
class ClassBound:
    """A radius-bound function b(r) attached to a class."""

    class_id: ClassId
    kind: BoundKind
    formula: str
    rule: Callable[[float], float]


MODULUS_BOUNDS: Dict[ClassId, ClassBound] = {
    ClassId.G1: ClassBound(ClassId.G1, BoundKind.MODULUS, '6r/(1-r^2)',
                           lambda r: 6 * r / (1 - r ** 2)),
    ClassId.G2: ClassBound(ClassId.G2, BoundKind.MODULUS, 'r(r+5)/(1-r^2)',
                           lambda r: r * (r + 5) / (1 - r ** 2)),
    ClassId.G3: ClassBound(ClassId.G3, BoundKind.MODULUS, '4r/(1-r^2)',
                           lambda r: 4 * r / (1 - r ** 2)),
}

# Lower bounds for Re zf'/f; only G2 improves on 1 - b(r)
REAL_PART_BOUNDS: Dict[ClassId, ClassBound] = {
    ClassId.G1: ClassBound(ClassId.G1, BoundKind.REAL_PART_LOWER, '(1-6r-r^2)/(1-r^2)',
                           lambda r: (1 - 6 * r - r ** 2) / (1 - r ** 2)),
    ClassId.G2: ClassBound(ClassId.G2, BoundKind.REAL_PART_LOWER, '(1-5r)/(1-r^2)',
                           lambda r: (1 - 5 * r) / (1 - r ** 2)),
    ClassId.G3: ClassBound(ClassId.G3, BoundKind.REAL_PART_LOWER, '(1-4r-r^2)/(1-r^2)',
                           lambda r: (1 - 4 * r - r ** 2) / (1 - r ** 2)),
}

# Regions with a sharp G2 radius; everything else is a lower bound
G2_SHARP_KINDS = {
    RegionKind.STARLIKE, RegionKind.LEMNISCATE, RegionKind.SINE,
    RegionKind.REVERSE_LEMNISCATE, RegionKind.NEPHROID, RegionKind.SIGMOID,
}

# Reverse-lemniscate quartics in r, highest degree first
RL_QUARTICS = {
    (ClassId.G1, 'printed'): [RL_ETA, 0.0, -(36 + 2 * RL_ETA), 0.0, RL_ETA],
    (ClassId.G3, 'printed'): [RL_ETA, 0.0, -(16 + 2 * RL_ETA), 0.0, RL_ETA],
    (ClassId.G2, 'printed'): [1 - RL_ETA, 10.0, 25 - 2 * RL_ETA, 0.0, -RL_ETA],
    (ClassId.G2, 'derived'): [1 - RL_ETA, 10.0, 25 + 2 * RL_ETA, 0.0, -RL_ETA],
}


def as_class(class_id: Union[ClassId, str]) -> ClassId:
    """Parse a class identifier such as 'g2'."""
    return ClassId(str(getattr(class_id, 'value', class_id)).upper())


@dataclass
class RadiusResult:
    """A computed radius together with how it was obtained."""

    class_id: ClassId
    region: Region
    value: float
    sharp: bool
    method: str
    equation: str
    cross_check: Optional[float] = None
    notes: List[str] = field(default_factory=list)

    def to_record(self) -> Dict:
        return {
            'class': self.class_id.value,
            'region': self.region.kind.value,
            'alpha': self.region.alpha if self.region.kind is RegionKind.STARLIKE else None,
            'radius': self.value,
            'sharp': self.sharp,
            'method': self.method,
        }


def bound_value(class_id: Union[ClassId, str], r: float) -> float:
    """
    Evaluate the disc bound b(r) of a class.

    Args:
        class_id: G1, G2 or G3
        r: Radius in [0, 1)

    Returns:
        b(r)
    """
    if not 0 <= r < 1:
        raise DiskDomainError(f'r must lie in [0, 1), got {r}')
    return float(MODULUS_BOUNDS[as_class(class_id)].rule(r))


def real_part_lower(class_id: Union[ClassId, str], r: float) -> float:
    """
    Lower bound of Re zf'/f on |z| = r for the class.

    Args:
        class_id: G1, G2 or G3
        r: Radius in [0, 1)

    Returns:
        The real-part bound at r
    """
    if not 0 <= r < 1:
        raise DiskDomainError(f'r must lie in [0, 1), got {r}')
    return float(REAL_PART_BOUNDS[as_class(class_id)].rule(r))


def _bisect_increasing(func: Callable[[float], float], target: float) -> float:
    low, high = BISECTION_BRACKET

    def shifted(r):
        return func(r) - target

    if shifted(low) * shifted(high) > 0:
        raise BracketError(f'No root of b(r) = {target} in [{low}, {high}]')
    return float(bisect(shifted, low, high, xtol=BISECTION_XTOL, maxiter=BISECTION_MAXITER))


def reverse_lemniscate_quartic_root(class_id: Union[ClassId, str], variant: str = 'printed') -> float:
    """
    Smallest root in (0, 1) of a reverse-lemniscate quartic.

    Args:
        class_id: G1, G2 or G3
        variant: 'printed' for the published polynomial, 'derived' for the
            expansion of b2(r)^2 = eta (1-r^2)^2 (G2 only)

    Returns:
        The root
    """
    coefficients = RL_QUARTICS[(as_class(class_id), variant)]
    roots = np.roots(coefficients)
    candidates = sorted(root.real for root in roots
                        if abs(root.imag) < 1e-12 and 0 < root.real < 1)
    if not candidates:
        raise BracketError(f'No root in (0, 1) for the {variant} {class_id} quartic')
    return float(candidates[0])


class RadiusAnalyzer:
    """Computes radii of the classes for the target domains."""

    def __init__(self):
        """Initialize radius analyzer."""
        try:
            self.threads = max(1, int(os.getenv('STARRAD_THREADS', 1)))
        except ValueError:
            logger.warning("Invalid STARRAD_THREADS, running single-threaded")
            self.threads = 1

    def is_sharp(self, class_id: ClassId, region: Region) -> bool:
        """Whether the radius for this pair is claimed sharp."""
        if as_class(class_id) is not ClassId.G2:
            return True
        return region.kind in G2_SHARP_KINDS

    def radius_starlike_alpha(self, class_id: Union[ClassId, str], alpha: float) -> RadiusResult:
        """
        Radius of starlikeness of order alpha.

        Args:
            class_id: G1, G2 or G3
            alpha: Order in [0, 1)

        Returns:
            RadiusResult solving real_part_lower(r) = alpha
        """
        class_id = as_class(class_id)
        if not 0 <= alpha < 1:
            raise DiskDomainError(f'alpha must lie in [0, 1), got {alpha}')

        if class_id is ClassId.G1:
            closed = (1 - alpha) / (3 + np.sqrt(10 - 2 * alpha + alpha ** 2))
        elif class_id is ClassId.G3:
            closed = (1 - alpha) / (2 + np.sqrt(5 - 2 * alpha + alpha ** 2))
        else:
            # Root of alpha r^2 - 5r + (1 - alpha) = 0
            closed = 2 * (1 - alpha) / (5 + np.sqrt(25 - 4 * alpha + 4 * alpha ** 2))

        bound = REAL_PART_BOUNDS[class_id]
        bisected = _bisect_increasing(lambda r: -bound.rule(r), -alpha)

        result = RadiusResult(
            class_id=class_id,
            region=Region(RegionKind.STARLIKE, alpha),
            value=float(closed),
            sharp=True,
            method='closed-form',
            equation=f'{bound.formula} = {alpha:g}',
            cross_check=bisected,
        )
        self._check_agreement(result)
        return result

    def radius_for_region(self, class_id: Union[ClassId, str],
                          region: Union[Region, RegionKind, str]) -> RadiusResult:
        """
        Radius for a named target domain via b(r) = inner_disc_radius(region, 1).

        Args:
            class_id: G1, G2 or G3
            region: Target domain

        Returns:
            RadiusResult with the closed-form value and its bisection cross-check
        """
        class_id = as_class(class_id)
        region = as_region(region)
        if region.kind is RegionKind.STARLIKE:
            return self.radius_starlike_alpha(class_id, region.alpha)

        c = inner_disc_radius(region, 1.0)
        if class_id is ClassId.G2:
            closed = 2 * c / (5 + np.sqrt(25 + 4 * c + 4 * c ** 2))
        else:
            beta = 6 if class_id is ClassId.G1 else 4
            closed = 2 * c / (beta + np.sqrt(beta ** 2 + 4 * c ** 2))

        bound = MODULUS_BOUNDS[class_id]
        bisected = _bisect_increasing(bound.rule, c)

        result = RadiusResult(
            class_id=class_id,
            region=region,
            value=float(closed),
            sharp=self.is_sharp(class_id, region),
            method='closed-form',
            equation=f'{bound.formula} = {c:.12g}',
            cross_check=bisected,
        )
        if region.kind is RegionKind.REVERSE_LEMNISCATE:
            result.notes.append('tangency of the inner disc is off the real axis')
        self._check_agreement(result)
        return result

    def univalence_radius(self, class_id: Union[ClassId, str]) -> float:
        """Radius of univalence, equal to the radius of starlikeness of order 0."""
        return self.radius_starlike_alpha(class_id, 0.0).value

    def full_table(self, alphas: Sequence[float] = (0.0,)) -> List[RadiusResult]:
        """
        All radii: every class against every alpha and every named domain.

        Args:
            alphas: Orders for the half-plane rows

        Returns:
            Results ordered by class, then alpha rows, then named domains
        """
        pairs = [(class_id, Region(RegionKind.STARLIKE, alpha))
                 for class_id in ClassId for alpha in alphas]
        pairs += [(class_id, Region(kind)) for class_id in ClassId for kind in NAMED_KINDS]
        order = {class_id: index for index, class_id in enumerate(ClassId)}
        pairs.sort(key=lambda pair: order[pair[0]])

        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                results = list(executor.map(lambda pair: self.radius_for_region(*pair), pairs))
        else:
            results = [self.radius_for_region(*pair) for pair in pairs]

        logger.info(f"Computed {len(results)} radii ({len(alphas)} alpha values, {self.threads} threads)")
        return results

    def _check_agreement(self, result: RadiusResult):
        gap = abs(result.value - result.cross_check)
        if gap > AGREEMENT_TOL:
            logger.warning(f"{result.class_id.value}/{result.region.label}: closed form and "
                           f"bisection differ by {gap:.3e}")
            result.notes.append(f'closed-form/bisection gap {gap:.3e}')
