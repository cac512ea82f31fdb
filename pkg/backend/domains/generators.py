"""
Analytic generator maps of the target domains and the argument-principle oracle
"""

import logging
import os
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Optional, Tuple, Union

import numpy as np

from functions.errors import NearBoundaryError

logger = logging.getLogger(__name__)

SQRT2 = np.sqrt(2.0)
RATIONAL_K = SQRT2 + 1
RL_C = SQRT2 - 1

CONTOUR_RADIUS = 1 - 1e-6
MIN_NODES = 2048
MAX_NODES = 2 ** 20
ROUNDING_SLACK = 0.25
# Upper bound on matrix entries evaluated per chunk
CHUNK_ENTRIES = 2 ** 22


class GeneratorId(str, Enum):
    """Generator maps phi with phi(0) = 1 whose image is a target domain."""

    CARDIOID = 'cardioid'
    SINE = 'sine'
    RATIONAL = 'rational'
    LEMNISCATE = 'lemniscate'
    LUNE = 'lune'
    NEPHROID = 'nephroid'
    SIGMOID = 'sigmoid'
    EXPONENTIAL = 'exponential'
    REVERSE_LEMNISCATE = 'reverse-lemniscate'


@dataclass(frozen=True)
class Generator:
    """An analytic map phi on the closed disk together with phi'."""

    gid: GeneratorId
    formula: str
    value: Callable[[np.ndarray], np.ndarray]
    deriv: Callable[[np.ndarray], np.ndarray]


def _rl_quotient(z):
    return (1 - z) / (1 + 2 * RL_C * z)


GENERATORS: Dict[GeneratorId, Generator] = {
    GeneratorId.CARDIOID: Generator(
        GeneratorId.CARDIOID, '1+(4/3)z+(2/3)z^2',
        lambda z: 1 + 4 * z / 3 + 2 * z ** 2 / 3,
        lambda z: 4 / 3 + 4 * z / 3,
    ),
    GeneratorId.SINE: Generator(
        GeneratorId.SINE, '1+sin z',
        lambda z: 1 + np.sin(z),
        np.cos,
    ),
    GeneratorId.RATIONAL: Generator(
        GeneratorId.RATIONAL, '1+(kz+z^2)/(k^2-kz), k=sqrt(2)+1',
        lambda z: 1 + (RATIONAL_K * z + z ** 2) / (RATIONAL_K ** 2 - RATIONAL_K * z),
        lambda z: RATIONAL_K * (RATIONAL_K ** 2 + 2 * RATIONAL_K * z - z ** 2)
        / (RATIONAL_K ** 2 - RATIONAL_K * z) ** 2,
    ),
    GeneratorId.LEMNISCATE: Generator(
        GeneratorId.LEMNISCATE, 'sqrt(1+z)',
        lambda z: np.sqrt(1 + z),
        lambda z: 0.5 / np.sqrt(1 + z),
    ),
    GeneratorId.LUNE: Generator(
        GeneratorId.LUNE, 'z+sqrt(1+z^2)',
        lambda z: z + np.sqrt(1 + z ** 2),
        lambda z: 1 + z / np.sqrt(1 + z ** 2),
    ),
    GeneratorId.NEPHROID: Generator(
        GeneratorId.NEPHROID, '1+z-z^3/3',
        lambda z: 1 + z - z ** 3 / 3,
        lambda z: 1 - z ** 2,
    ),
    GeneratorId.SIGMOID: Generator(
        GeneratorId.SIGMOID, '2/(1+exp(-z))',
        lambda z: 2 / (1 + np.exp(-z)),
        lambda z: 2 * np.exp(-z) / (1 + np.exp(-z)) ** 2,
    ),
    GeneratorId.EXPONENTIAL: Generator(
        GeneratorId.EXPONENTIAL, 'exp(z)',
        np.exp,
        np.exp,
    ),
    GeneratorId.REVERSE_LEMNISCATE: Generator(
        GeneratorId.REVERSE_LEMNISCATE, 'sqrt(2)-(sqrt(2)-1)sqrt((1-z)/(1+2(sqrt(2)-1)z))',
        lambda z: SQRT2 - RL_C * np.sqrt(_rl_quotient(z)),
        lambda z: RL_C * (1 + 2 * RL_C)
        / (2 * np.sqrt(_rl_quotient(z)) * (1 + 2 * RL_C * z) ** 2),
    ),
}


def get_generator(gid: Union[GeneratorId, str]) -> Generator:
    """Look up a generator by identifier or name."""
    return GENERATORS[GeneratorId(getattr(gid, 'value', gid))]


def default_nodes() -> int:
    """Node count for the oracle, from STARRAD_WINDING_NODES (at least 2048)."""
    try:
        nodes = int(os.getenv('STARRAD_WINDING_NODES', 4096))
    except ValueError:
        logger.warning("Invalid STARRAD_WINDING_NODES, using 4096")
        nodes = 4096
    return max(nodes, MIN_NODES)


def winding_values(generator: Generator, ws: np.ndarray, nodes: int) -> np.ndarray:
    """
    Unrounded argument-principle integrals for an array of points.

    The integral (1/2 pi i) of phi'/(phi - w) over |z| = 1 - 1e-6 is
    evaluated with the periodic trapezoid rule, i.e. the mean of
    z phi'(z) / (phi(z) - w) over equispaced nodes. Nodes sit at half
    steps so none lands on a branch point such as z = -1 or z = +-i.

    Args:
        generator: Generator map
        ws: Points w (any shape)
        nodes: Number of trapezoid nodes

    Returns:
        Complex integral values with the shape of ws
    """
    points = np.atleast_1d(np.asarray(ws, dtype=complex)).ravel()
    z = _contour(nodes)
    phi = generator.value(z)
    weight = z * generator.deriv(z)

    result = np.empty(points.shape, dtype=complex)
    chunk = max(1, CHUNK_ENTRIES // nodes)
    for start in range(0, points.size, chunk):
        block = points[start:start + chunk]
        with np.errstate(divide='ignore', invalid='ignore'):
            result[start:start + chunk] = np.mean(weight[None, :] / (phi[None, :] - block[:, None]), axis=1)

    return result.reshape(np.shape(ws))


def polygon_winding(generator: Generator, ws: np.ndarray, nodes: int) -> np.ndarray:
    """
    Winding numbers of the sampled image polygon, by summed phase increments.

    Each step's increment is the principal argument of
    (phi(z_{j+1}) - w) / (phi(z_j) - w), so the total is an exact multiple
    of 2 pi whenever every step turns by less than pi.
    """
    points = np.atleast_1d(np.asarray(ws, dtype=complex)).ravel()
    phi = generator.value(_contour(nodes))
    following = np.roll(phi, -1)

    result = np.empty(points.shape, dtype=float)
    chunk = max(1, CHUNK_ENTRIES // nodes)
    for start in range(0, points.size, chunk):
        block = points[start:start + chunk, None]
        with np.errstate(divide='ignore', invalid='ignore'):
            turns = np.angle((following[None, :] - block) / (phi[None, :] - block))
        result[start:start + chunk] = turns.sum(axis=1) / (2 * np.pi)

    return np.round(result).reshape(np.shape(ws))


def _contour(nodes: int) -> np.ndarray:
    theta = 2 * np.pi * (np.arange(nodes) + 0.5) / nodes
    return CONTOUR_RADIUS * np.exp(1j * theta)


def winding_numbers(generator: Union[Generator, GeneratorId, str], ws: np.ndarray,
                    nodes: Optional[int] = None, max_nodes: int = MAX_NODES) -> Tuple[np.ndarray, np.ndarray]:
    """
    Rounded winding numbers with adaptive node doubling.

    A point is resolved once its integral lies within 0.25 of an integer
    and that integer equals the phase-increment count of the image
    polygon. Other points are retried with twice the nodes until max_nodes.

    Args:
        generator: Generator map or its identifier
        ws: Points w
        nodes: Starting node count (default from configuration)
        max_nodes: Refinement cap

    Returns:
        Tuple of (winding numbers, resolved mask); unresolved entries hold 0
    """
    if not isinstance(generator, Generator):
        generator = get_generator(generator)
    nodes = default_nodes() if nodes is None else nodes
    if nodes < MIN_NODES:
        raise ValueError(f'At least {MIN_NODES} nodes are required, got {nodes}')
    # A start above the cap still gets one pass
    max_nodes = max(max_nodes, nodes)

    points = np.atleast_1d(np.asarray(ws, dtype=complex)).ravel()
    counts = np.zeros(points.shape, dtype=int)
    resolved = np.zeros(points.shape, dtype=bool)
    pending = np.arange(points.size)

    while pending.size and nodes <= max_nodes:
        values = winding_values(generator, points[pending], nodes)
        rounded = np.round(values.real)
        good = np.isfinite(values) & (np.abs(values - rounded) <= ROUNDING_SLACK)
        if good.any():
            good[good] = polygon_winding(generator, points[pending[good]], nodes) == rounded[good]
        counts[pending[good]] = rounded[good].astype(int)
        resolved[pending[good]] = True
        pending = pending[~good]
        if pending.size:
            logger.debug(f"{pending.size} points near the {generator.gid.value} boundary, "
                         f"retrying with {2 * nodes} nodes")
        nodes *= 2

    shape = np.shape(ws)
    return counts.reshape(shape), resolved.reshape(shape)


def winding_membership(generator: Union[Generator, GeneratorId, str], w: complex,
                       nodes: Optional[int] = None) -> int:
    """
    Winding number of phi(|z| = 1 - 1e-6) about w.

    Args:
        generator: Generator map or its identifier
        w: Point to classify
        nodes: Trapezoid nodes, at least 2048

    Returns:
        N(w); N >= 1 means w is attained by phi on the disk
    """
    counts, resolved = winding_numbers(generator, np.asarray([w]), nodes)
    if not resolved[0]:
        if not isinstance(generator, Generator):
            generator = get_generator(generator)
        raw = complex(winding_values(generator, np.asarray([w]), MAX_NODES)[0])
        raise NearBoundaryError(f'Winding value {raw:.6f} for w={w} is not near an integer', raw)
    return int(counts[0])
