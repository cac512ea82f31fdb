"""
Ma-Minda target domains: membership, inner-disc radii and boundary tracing
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

import numpy as np

from domains.generators import (
    RATIONAL_K, SQRT2, GeneratorId, get_generator, winding_membership, winding_numbers,
)
from functions.errors import NearBoundaryError, RangeError

logger = logging.getLogger(__name__)

E = np.e
SIN1 = np.sin(1.0)
# Reverse-lemniscate constant; the disc about 1 has radius sqrt(RL_ETA)
RL_ETA = np.sqrt(2 * (SQRT2 - 1)) - 2 * (SQRT2 - 1)
BOUNDARY_EPS = 1e-12
UNBOUNDED_EXTENT = 3.0


class RegionKind(str, Enum):
    """The eleven target domains, named as on the command line."""

    STARLIKE = 'starlike'
    LEMNISCATE = 'lemniscate'
    PARABOLIC = 'parabolic'
    EXPONENTIAL = 'exponential'
    CARDIOID = 'cardioid'
    SINE = 'sine'
    LUNE = 'lune'
    RATIONAL = 'rational'
    REVERSE_LEMNISCATE = 'reverse-lemniscate'
    NEPHROID = 'nephroid'
    SIGMOID = 'sigmoid'


NAMED_KINDS = [kind for kind in RegionKind if kind is not RegionKind.STARLIKE]

# Kinds with no usable closed-form inequality; contains() asks the winding oracle
WINDING_KINDS = {
    RegionKind.CARDIOID: GeneratorId.CARDIOID,
    RegionKind.SINE: GeneratorId.SINE,
    RegionKind.RATIONAL: GeneratorId.RATIONAL,
}


@dataclass(frozen=True)
class Region:
    """One target domain; alpha is only meaningful for STARLIKE."""

    kind: RegionKind
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'kind', RegionKind(getattr(self.kind, 'value', self.kind)))
        if self.kind is RegionKind.STARLIKE and not 0 <= self.alpha < 1:
            raise RangeError(f'alpha must lie in [0, 1), got {self.alpha}')

    @property
    def label(self) -> str:
        if self.kind is RegionKind.STARLIKE:
            return f'starlike(alpha={self.alpha:g})'
        return self.kind.value


@dataclass
class BoundaryPolyline:
    """Ordered samples of a domain boundary."""

    region: Region
    t: np.ndarray
    points: np.ndarray
    closed: bool = field(default=True)


def as_region(region: Union[Region, RegionKind, str], alpha: float = 0.0) -> Region:
    """Coerce a kind name or kind into a Region."""
    if isinstance(region, Region):
        return region
    return Region(RegionKind(getattr(region, 'value', region)), alpha)


def _principal_log(w: np.ndarray) -> np.ndarray:
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.log(w)


def _rational_preimage(w: np.ndarray) -> np.ndarray:
    # psi(z) = w  <=>  z^2 + k w z - (w - 1) k^2 = 0; psi is univalent so at most one root lies in the disk
    k = RATIONAL_K
    disc = np.sqrt((k * w) ** 2 + 4 * (w - 1) * k ** 2)
    first = (-k * w + disc) / 2
    second = (-k * w - disc) / 2
    return np.where(np.abs(first) <= np.abs(second), first, second)


def defining_functional(region: Union[Region, str], w) -> np.ndarray:
    """
    The defining-inequality functional of a domain.

    Negative inside, zero on the boundary, positive outside (or +inf where
    the formula leaves its branch). Points of the wrong symmetric component
    of the lemniscate-type curves are reported as +inf.

    Args:
        region: Target domain
        w: Point(s)

    Returns:
        Functional value(s) as a float array
    """
    region = as_region(region)
    w = np.asarray(w, dtype=complex)
    u, v = w.real, w.imag
    kind = region.kind

    with np.errstate(divide='ignore', invalid='ignore', over='ignore'):
        if kind is RegionKind.STARLIKE:
            value = region.alpha - u
        elif kind is RegionKind.LEMNISCATE:
            value = np.where(u > 0, np.abs(w ** 2 - 1) - 1, np.inf)
        elif kind is RegionKind.PARABOLIC:
            value = np.abs(w - 1) - u
        elif kind is RegionKind.EXPONENTIAL:
            value = np.where(u > 0, np.abs(_principal_log(w)) - 1, np.inf)
        elif kind is RegionKind.CARDIOID:
            # Principal branch: w = 1/3 + (2/3)(1+z)^2 with Re(1+z) > 0 on the disk
            value = np.abs(np.sqrt(1.5 * (w - 1 / 3)) - 1) - 1
        elif kind is RegionKind.SINE:
            value = np.abs(np.arcsin(w - 1)) - 1
        elif kind is RegionKind.LUNE:
            value = np.where(u > 0, np.abs(w ** 2 - 1) - 2 * np.abs(w), np.inf)
        elif kind is RegionKind.RATIONAL:
            value = np.abs(_rational_preimage(w)) - 1
        elif kind is RegionKind.REVERSE_LEMNISCATE:
            value = np.where(u < SQRT2, np.abs((w - SQRT2) ** 2 - 1) - 1, np.inf)
        elif kind is RegionKind.NEPHROID:
            # Real cube root keeps the functional linear at the real-axis points 1/3 and 5/3
            value = np.cbrt(((u - 1) ** 2 + v ** 2 - 4 / 9) ** 3 - 4 * v ** 2 / 3)
        elif kind is RegionKind.SIGMOID:
            ratio = w / (2 - w)
            value = np.where(np.isfinite(ratio) & (ratio.real > 0),
                             np.abs(_principal_log(ratio)) - 1, np.inf)
        else:
            raise ValueError(f'Unsupported region kind {kind}')

    return np.where(np.isnan(value), np.inf, value).astype(float)


def boundary_residual(region: Union[Region, str], w) -> np.ndarray:
    """Absolute defining functional: zero exactly on the boundary."""
    return np.abs(defining_functional(region, w))


def cardioid_quartic(w) -> np.ndarray:
    """(9u^2+9v^2-18u+5)^2 - 16(9u^2+9v^2-6u+1); zero on the cardioid curve."""
    w = np.asarray(w, dtype=complex)
    s = 9 * w.real ** 2 + 9 * w.imag ** 2
    return (s - 18 * w.real + 5) ** 2 - 16 * (s - 6 * w.real + 1)


def contains(region: Union[Region, str], w: complex, nodes: Optional[int] = None) -> bool:
    """
    Strict-interior membership of a single point.

    Closed-form inequalities are used where they exist; the cardioid, sine
    and rational domains are decided by the winding oracle of their
    generator. Boundary points are outside.

    Args:
        region: Target domain
        w: Point to classify
        nodes: Optional node count for the winding oracle

    Returns:
        True iff w lies in the open domain
    """
    region = as_region(region)
    w = complex(w)
    if not np.isfinite(w.real) or not np.isfinite(w.imag):
        return False

    generator = WINDING_KINDS.get(region.kind)
    if generator is None:
        return bool(defining_functional(region, w) < -BOUNDARY_EPS)

    try:
        return winding_membership(generator, w, nodes) >= 1
    except NearBoundaryError as e:
        logger.debug(f"{region.label}: {e}; reporting outside")
        return False


def contains_many(region: Union[Region, str], ws, oracle: bool = False,
                  nodes: Optional[int] = None) -> np.ndarray:
    """
    Vectorized membership.

    Same semantics as contains(). By default the winding-oracle kinds are
    decided by inverting their generator in closed form; with oracle=True
    they go through the batched winding oracle, unresolved points counting
    as outside.

    Args:
        region: Target domain
        ws: Array of points
        oracle: Use the winding oracle for cardioid, sine and rational
        nodes: Starting node count for the oracle

    Returns:
        Boolean array with the shape of ws
    """
    region = as_region(region)
    generator = WINDING_KINDS.get(region.kind)
    if oracle and generator is not None:
        points = np.asarray(ws, dtype=complex)
        finite = np.isfinite(points)
        counts, resolved = winding_numbers(generator, np.where(finite, points, 0), nodes)
        return finite & resolved & (counts >= 1)
    return defining_functional(region, ws) < -BOUNDARY_EPS


def rational_resultant(w) -> np.ndarray:
    """
    Resultant in z of psi(z) = w and its reflection in |z| = 1.

    A real polynomial in (u, v) vanishing on the rational-domain boundary,
    smooth through the cusp-like point 2(sqrt2-1) where the preimage
    modulus is not.
    """
    w = np.asarray(w, dtype=complex)
    k = RATIONAL_K
    modulus2 = np.abs(w) ** 2
    head = 1 - k ** 4 * np.abs(w - 1) ** 2
    cross = k * np.conj(w) + k ** 3 * modulus2 - k ** 3 * w
    return head ** 2 - np.abs(cross) ** 2


def inner_disc_radius(region: Union[Region, str], a: float) -> float:
    """
    Radius of the largest disc about a known to lie in the domain.

    Args:
        region: Target domain
        a: Real disc center within the containment lemma's range

    Returns:
        The lemma's disc radius
    """
    region = as_region(region)
    kind = region.kind

    def check(ok: bool, interval: str):
        if not ok:
            raise RangeError(f'a={a} outside {interval} for {region.label}')

    if kind is RegionKind.STARLIKE:
        check(a > region.alpha, f'({region.alpha}, inf)')
        return a - region.alpha
    if kind is RegionKind.LEMNISCATE:
        check(2 * SQRT2 / 3 < a < SQRT2, '(2sqrt2/3, sqrt2)')
        return SQRT2 - a
    if kind is RegionKind.PARABOLIC:
        check(0.5 < a < 1.5, '(1/2, 3/2)')
        return a - 0.5
    if kind is RegionKind.EXPONENTIAL:
        check(1 / E <= a <= (E + 1 / E) / 2, '[1/e, (e+1/e)/2]')
        return a - 1 / E
    if kind is RegionKind.CARDIOID:
        check(1 / 3 < a <= 5 / 3, '(1/3, 5/3]')
        return (3 * a - 1) / 3
    if kind is RegionKind.SINE:
        check(abs(a - 1) <= SIN1, '|a-1| <= sin 1')
        return SIN1 - abs(a - 1)
    if kind is RegionKind.LUNE:
        check(SQRT2 - 1 < a < SQRT2 + 1, '(sqrt2-1, sqrt2+1)')
        return 1 - abs(SQRT2 - a)
    if kind is RegionKind.RATIONAL:
        check(2 * (SQRT2 - 1) < a <= SQRT2, '(2(sqrt2-1), sqrt2]')
        return a - 2 * (SQRT2 - 1)
    if kind is RegionKind.REVERSE_LEMNISCATE:
        check(SQRT2 / 3 <= a < SQRT2, '[sqrt2/3, sqrt2)')
        inner = 1 - (SQRT2 - a) ** 2
        return float(np.sqrt(np.sqrt(inner) - inner))
    if kind is RegionKind.NEPHROID:
        check(1 / 3 < a <= 1, '(1/3, 1]')
        return a - 1 / 3
    if kind is RegionKind.SIGMOID:
        check(2 / (1 + E) < a < 2 * E / (1 + E), '(2/(1+e), 2e/(1+e))')
        return (E - 1) / (E + 1) - abs(a - 1)

    raise ValueError(f'Unsupported region kind {kind}')


def boundary_points(region: Union[Region, str], n: int) -> BoundaryPolyline:
    """
    Sample the boundary of a domain.

    Bounded domains are traced as closed curves (first sample equals the
    last); the half-plane and the parabola are traced over |Im w| <= 3.

    Args:
        region: Target domain
        n: Number of samples, at least 16

    Returns:
        BoundaryPolyline with parameter t and points
    """
    region = as_region(region)
    if n < 16:
        raise ValueError('At least 16 boundary samples are required')
    kind = region.kind

    if kind in (RegionKind.STARLIKE, RegionKind.PARABOLIC):
        v = np.linspace(-UNBOUNDED_EXTENT, UNBOUNDED_EXTENT, n)
        u = region.alpha + 0 * v if kind is RegionKind.STARLIKE else 0.5 + v ** 2 / 2
        return BoundaryPolyline(region, v, u + 1j * v, closed=False)

    t = np.linspace(0, 2 * np.pi, n)
    circle = np.exp(1j * t)

    if kind is RegionKind.LUNE:
        # Arc of |w-1| = sqrt2 from i through 1+sqrt2 to -i, then arc of |w+1| = sqrt2 back to i
        right_count = n // 2
        right = 1 + SQRT2 * np.exp(1j * np.linspace(3 * np.pi / 4, -3 * np.pi / 4, right_count))
        left = -1 + SQRT2 * np.exp(1j * np.linspace(-np.pi / 4, np.pi / 4, n - right_count + 1)[1:])
        points = np.concatenate([right, left])
    elif kind is RegionKind.LEMNISCATE:
        points = np.sqrt(1 + circle)
    elif kind is RegionKind.REVERSE_LEMNISCATE:
        points = SQRT2 - np.sqrt(1 + circle)
    elif kind is RegionKind.EXPONENTIAL:
        points = np.exp(circle)
    elif kind is RegionKind.NEPHROID:
        points = 1 + circle - circle ** 3 / 3
    else:
        points = get_generator(kind.value).value(circle)

    # Pin the seam so the polyline closes exactly
    points[-1] = points[0]
    return BoundaryPolyline(region, t, points, closed=True)
