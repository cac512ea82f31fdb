"""
Closed-form extremal functions and the quantities derived from them
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Union

import numpy as np
from scipy.optimize import bisect

from functions.errors import BracketError, DiskDomainError, SingularityError

logger = logging.getLogger(__name__)

ComplexLike = Union[complex, float, np.ndarray]

TAYLOR_CONTOUR_RADIUS = 0.5
TAYLOR_MIN_NODES = 256
CRITICAL_BRACKET = (1e-6, 0.99)
BISECTION_XTOL = 1e-12
BISECTION_MAXITER = 200


class ExtremalId(str, Enum):
    """Identifiers of the built-in extremal functions."""

    F1 = 'F1'
    F2 = 'F2'
    G1FN = 'G1FN'
    G2FN = 'G2FN'
    P0 = 'P0'


@dataclass(frozen=True)
class ExtremalFunction:
    """A closed-form evaluator pair (f, f')."""

    fid: ExtremalId
    formula: str
    value: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]
    normalized: bool = True


EXTREMALS: Dict[ExtremalId, ExtremalFunction] = {
    ExtremalId.F1: ExtremalFunction(
        fid=ExtremalId.F1,
        formula='z((1+z)/(1-z))^3',
        value=lambda z: z * ((1 + z) / (1 - z)) ** 3,
        deriv=lambda z: (1 + z) ** 2 * (1 + 6 * z - z ** 2) / (1 - z) ** 4,
    ),
    ExtremalId.F2: ExtremalFunction(
        fid=ExtremalId.F2,
        formula='z(1+z)^2/(1-z)^3',
        value=lambda z: z * (1 + z) ** 2 / (1 - z) ** 3,
        deriv=lambda z: (1 + 6 * z + 5 * z ** 2) / (1 - z) ** 4,
    ),
    ExtremalId.G1FN: ExtremalFunction(
        fid=ExtremalId.G1FN,
        formula='z((1+z)/(1-z))^2',
        value=lambda z: z * ((1 + z) / (1 - z)) ** 2,
        deriv=lambda z: (1 + 5 * z + 3 * z ** 2 - z ** 3) / (1 - z) ** 3,
    ),
    ExtremalId.G2FN: ExtremalFunction(
        fid=ExtremalId.G2FN,
        formula='z(1+z)/(1-z)^2',
        value=lambda z: z * (1 + z) / (1 - z) ** 2,
        deriv=lambda z: (1 + 3 * z) / (1 - z) ** 3,
    ),
    ExtremalId.P0: ExtremalFunction(
        fid=ExtremalId.P0,
        formula='(1+z)/(1-z)',
        value=lambda z: (1 + z) / (1 - z),
        deriv=lambda z: 2 / (1 - z) ** 2,
        normalized=False,
    ),
}


def get_extremal(fid: Union[ExtremalId, str]) -> ExtremalFunction:
    """
    Look up a built-in extremal function.

    Args:
        fid: Identifier or its string name (case-insensitive)

    Returns:
        The registered ExtremalFunction
    """
    return EXTREMALS[ExtremalId(str(getattr(fid, 'value', fid)).upper())]


def _as_disk_point(z: ComplexLike) -> np.ndarray:
    points = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(points)):
        raise DiskDomainError(f'Non-finite point {z!r}')
    if np.any(np.abs(points) >= 1):
        raise DiskDomainError(f'Point outside the open unit disk: {z!r}')
    return points


def _finish(result: np.ndarray, what: str) -> ComplexLike:
    if not np.all(np.isfinite(result)):
        raise SingularityError(f'Non-finite {what}')
    if result.ndim == 0:
        return complex(result)
    return result


def evaluate(fid: Union[ExtremalId, str], z: ComplexLike) -> ComplexLike:
    """
    Evaluate an extremal function at a disk point (or an array of them).

    Args:
        fid: Extremal identifier
        z: Point(s) with |z| < 1

    Returns:
        f(z) as a complex number, or an array for array input
    """
    extremal = get_extremal(fid)
    points = _as_disk_point(z)
    with np.errstate(divide='ignore', invalid='ignore'):
        return _finish(extremal.value(points), f'{extremal.fid.value} value')


def evaluate_deriv(fid: Union[ExtremalId, str], z: ComplexLike) -> ComplexLike:
    """
    Evaluate the closed-form derivative f'(z).

    Args:
        fid: Extremal identifier
        z: Point(s) with |z| < 1

    Returns:
        f'(z)
    """
    extremal = get_extremal(fid)
    points = _as_disk_point(z)
    with np.errstate(divide='ignore', invalid='ignore'):
        return _finish(extremal.deriv(points), f'{extremal.fid.value} derivative')


def logderiv(fid: Union[ExtremalId, str], z: ComplexLike) -> ComplexLike:
    """
    Compute z f'(z) / f(z).

    For the normalized extremals the removable singularity at the origin
    is filled with 1. For p0, which does not vanish at the origin, the
    quotient z p0'/p0 is returned as is.

    Args:
        fid: Extremal identifier
        z: Point(s) with |z| < 1

    Returns:
        The logarithmic derivative at z
    """
    extremal = get_extremal(fid)
    points = _as_disk_point(z)

    with np.errstate(divide='ignore', invalid='ignore'):
        value = extremal.value(points)
        deriv = extremal.deriv(points)

        if not extremal.normalized:
            return _finish(points * deriv / value, 'p0 log-derivative')

        at_origin = points == 0
        if np.any((value == 0) & ~at_origin):
            raise SingularityError(f'{extremal.fid.value} vanishes away from the origin')
        safe_value = np.where(at_origin, 1.0, value)
        result = np.where(at_origin, 1.0 + 0j, points * deriv / safe_value)

    return _finish(result, f'{extremal.fid.value} log-derivative')


def taylor_coeffs(fid: Union[ExtremalId, str], n: int) -> List[float]:
    """
    Extract n Taylor coefficients by the trapezoid rule on the circle
    |z| = 1/2. Normalized functions (a_0 = 0, a_1 = 1) give a_1..a_n;
    P0 is not normalized and gives a_0..a_{n-1}.

    Args:
        fid: Extremal identifier
        n: Number of coefficients, at least 1

    Returns:
        Real parts of the coefficients (not rounded)
    """
    if n < 1:
        raise ValueError('n must be at least 1')

    nodes = max(64 * n, TAYLOR_MIN_NODES)
    theta = 2 * np.pi * np.arange(nodes) / nodes
    samples = np.asarray(evaluate(fid, TAYLOR_CONTOUR_RADIUS * np.exp(1j * theta)))
    start = 1 if get_extremal(fid).normalized else 0

    # Discrete Cauchy integral: the FFT bin k carries a_k r0^k
    spectrum = np.fft.fft(samples) / nodes
    k = np.arange(start, start + n)
    coefficients = spectrum[k] / TAYLOR_CONTOUR_RADIUS ** k

    logger.debug(f"Taylor coefficients of {fid}: {coefficients.real.tolist()} ({nodes} nodes)")
    return coefficients.real.tolist()


def critical_radius(fid: Union[ExtremalId, str]) -> float:
    """
    Find rho in (0, 1) with f'(-rho) = 0 by bisection on the negative axis.

    Args:
        fid: One of F1, F2, G1FN

    Returns:
        The critical radius (radius of univalence of the class)
    """
    extremal = get_extremal(fid)
    if extremal.fid not in (ExtremalId.F1, ExtremalId.F2, ExtremalId.G1FN):
        raise ValueError(f'critical_radius is defined for F1, F2, G1FN, not {extremal.fid.value}')

    def derivative_on_axis(x: float) -> float:
        return float(np.real(extremal.deriv(np.asarray(-x, dtype=complex))))

    low, high = CRITICAL_BRACKET
    if derivative_on_axis(low) * derivative_on_axis(high) > 0:
        raise BracketError(f'No sign change of {extremal.fid.value}\' on [-{high}, -{low}]')

    root = bisect(derivative_on_axis, low, high, xtol=BISECTION_XTOL, maxiter=BISECTION_MAXITER)
    logger.debug(f"Critical radius of {extremal.fid.value}: {root:.15f}")
    return float(root)
