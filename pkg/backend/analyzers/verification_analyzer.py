"""
Numerical verification of the radius theorems
"""

import logging
from dataclasses import asdict, dataclass
from typing import Dict, List, Optional, Union

import numpy as np

from analyzers.radius_analyzer import (
    ClassId, RadiusAnalyzer, as_class, bound_value, real_part_lower,
)
from domains.generators import default_nodes, winding_numbers
from domains.regions import (
    NAMED_KINDS, Region, RegionKind, WINDING_KINDS, as_region, boundary_residual,
    cardioid_quartic, contains_many, defining_functional, rational_resultant,
)
from functions.errors import ClaimError
from functions.extremal import ExtremalId, evaluate, logderiv

logger = logging.getLogger(__name__)

CLASS_EXTREMALS = {
    ClassId.G1: ExtremalId.F1,
    ClassId.G2: ExtremalId.F2,
    ClassId.G3: ExtremalId.G1FN,
}

# Kernel orders per factor: 0 for (1+eps z)/(1-eps z), 1/2 for 1/(1-eps z)
CLASS_KERNELS = {
    ClassId.G1: (0.0, 0.0, 0.0),
    ClassId.G2: (0.0, 0.5, 0.0),
    ClassId.G3: (0.0, 0.0),
}

# Ratios (name, numerator, denominator, threshold) whose real part must exceed
# the threshold; a missing denominator stands for z p0(z)
CLASS_MEMBERSHIP = {
    ClassId.G1: (
        ('f/g', ExtremalId.F1, ExtremalId.G1FN, 0.0),
        ('g/(z p0)', ExtremalId.G1FN, None, 0.0),
    ),
    ClassId.G2: (
        ('f/g', ExtremalId.F2, ExtremalId.G2FN, 0.0),
        ('g/(z p0)', ExtremalId.G2FN, None, 0.5),
    ),
    ClassId.G3: (
        ('f/(z p0)', ExtremalId.G1FN, None, 0.0),
    ),
}
MEMBERSHIP_RADIUS = 0.99

XVAL_KINDS = {
    RegionKind.LEMNISCATE: 'lemniscate',
    RegionKind.LUNE: 'lune',
    RegionKind.NEPHROID: 'nephroid',
    RegionKind.SIGMOID: 'sigmoid',
    RegionKind.EXPONENTIAL: 'exponential',
}
XVAL_BOX = (-0.5, 2.5, -1.5, 1.5)
XVAL_COLLAR = 1e-6
XVAL_SAMPLES = 10000

SHAH_EXCESS_TOL = 1e-10
SHAH_ATTAIN_TOL = 1e-8
SHAH_R_GRID = np.linspace(0.05, 0.95, 19)


@dataclass
class SharpnessReport:
    """Boundary-touch test of a class extremal at the computed radius."""

    class_id: str
    region: str
    radius: float
    touch_point: complex
    value: complex
    boundary_distance: float
    passed: bool
    status: str = 'checked'

    def to_dict(self) -> Dict:
        data = asdict(self)
        for key in ('touch_point', 'value'):
            data[key] = [data[key].real, data[key].imag]
        data['pass'] = self.passed
        return data


@dataclass
class ContainmentReport:
    """Sampling of the disc |w-1| = b(r) against a domain."""

    class_id: str
    region: str
    r: float
    disc_radius: float
    samples: int
    passed: bool
    witness: Optional[complex] = None

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict:
        data = asdict(self)
        if self.witness is not None:
            data['witness'] = [self.witness.real, self.witness.imag]
        return data


@dataclass
class ShahReport:
    """Sampled ratio of |zp'/p| to its bound for the rotation family of P(alpha)."""

    alpha: float
    samples: int
    max_ratio: float
    max_excess: float
    attainment_gap: float
    passed: bool


def touch_distance(region: Region, w) -> np.ndarray:
    """
    Boundary distance used for sharpness.

    The cardioid and the rational domain have cusp-like boundary points on
    the real axis where their inverse maps are not smooth; there the
    polynomial equations of the boundary curves are used instead.
    """
    if region.kind is RegionKind.CARDIOID:
        return np.abs(cardioid_quartic(w))
    if region.kind is RegionKind.RATIONAL:
        return np.abs(rational_resultant(w))
    return boundary_residual(region, w)


def rotation_family_logderiv(alpha: float, u) -> np.ndarray:
    """
    z p'/p for p(z) = (1 + (1-2 alpha) u)/(1 - u), u = eps z.

    alpha = 0 gives (1+eps z)/(1-eps z) and alpha = 1/2 gives 1/(1-eps z).
    """
    u = np.asarray(u, dtype=complex)
    return 2 * (1 - alpha) * u / ((1 + (1 - 2 * alpha) * u) * (1 - u))


def shah_bound(alpha: float, r) -> np.ndarray:
    """Sharp bound of |zp'/p| on |z| = r over P(alpha)."""
    r = np.asarray(r, dtype=float)
    return 2 * (1 - alpha) * r / ((1 - r) * (1 + (1 - 2 * alpha) * r))


def family_logderiv(class_id: ClassId, eps: np.ndarray, z: np.ndarray) -> np.ndarray:
    """
    zf'/f of the product family built from rotation kernels.

    G1: z p1 p2 p3, G2: z p1 h p3, G3: z p1 p3, with p = (1+eps z)/(1-eps z)
    and h = 1/(1-eps z); eps has one column per factor.
    """
    z = np.asarray(z, dtype=complex)
    value = np.ones(z.shape, dtype=complex)
    for index, alpha in enumerate(CLASS_KERNELS[class_id]):
        value = value + rotation_family_logderiv(alpha, eps[..., index] * z)
    return value


class VerificationAnalyzer:
    """Runs the sampling checks behind each radius claim."""

    def __init__(self, radius_analyzer: Optional[RadiusAnalyzer] = None):
        """Initialize verification analyzer."""
        self.radius_analyzer = radius_analyzer or RadiusAnalyzer()

    def sharp_pairs(self, alpha: float = 0.0) -> List[tuple]:
        """All (class, region) pairs claimed sharp, with the half-plane at alpha."""
        pairs = []
        for class_id in ClassId:
            regions = [Region(RegionKind.STARLIKE, alpha)] + [Region(kind) for kind in NAMED_KINDS]
            pairs += [(class_id, region) for region in regions
                      if self.radius_analyzer.is_sharp(class_id, region)]
        return pairs

    def sharpness_check(self, class_id: Union[ClassId, str], region: Union[Region, str],
                        tol: float = 1e-8) -> SharpnessReport:
        """
        Evaluate the class extremal at z = +R and z = -R and measure the
        distance of zf'/f to the domain boundary.

        Args:
            class_id: G1, G2 or G3
            region: A domain for which the radius is claimed sharp
            tol: Pass threshold on the boundary distance

        Returns:
            SharpnessReport for the closer of the two touch points
        """
        class_id = as_class(class_id)
        region = as_region(region)
        result = self.radius_analyzer.radius_for_region(class_id, region)
        if not result.sharp:
            raise ClaimError(f'{class_id.value}/{region.label} is not claimed sharp')

        radius = result.value
        candidates = np.array([radius, -radius], dtype=complex)
        values = np.asarray(logderiv(CLASS_EXTREMALS[class_id], candidates))
        distances = touch_distance(region, values)
        best = int(np.argmin(distances))

        report = SharpnessReport(
            class_id=class_id.value,
            region=region.label,
            radius=radius,
            touch_point=complex(candidates[best]),
            value=complex(values[best]),
            boundary_distance=float(distances[best]),
            passed=bool(distances[best] < tol),
        )
        if region.kind is RegionKind.REVERSE_LEMNISCATE:
            # Tangency happens off the real axis, so neither +R nor -R touches
            report.status = 'off-axis'
            report.passed = False
        elif not report.passed:
            logger.warning(f"Sharpness failed for {class_id.value}/{region.label}: "
                           f"distance {report.boundary_distance:.3e}")
        return report

    def containment_check(self, class_id: Union[ClassId, str], region: Union[Region, str],
                          r: float, n: int = 1000) -> ContainmentReport:
        """
        Sample n points on |w-1| = b(r) and test membership in the domain.

        For a half-plane the disc reaches left to the real-part lower bound.

        Args:
            class_id: G1, G2 or G3
            region: Target domain
            r: Radius in (0, 1)
            n: Number of samples, at least 1000

        Returns:
            ContainmentReport; truthy iff every sample is inside
        """
        class_id = as_class(class_id)
        region = as_region(region)
        if n < 1000:
            raise ValueError('At least 1000 samples are required')

        if region.kind is RegionKind.STARLIKE:
            # Half-planes use the real-part lower bound
            disc_radius = 1 - real_part_lower(class_id, r)
        else:
            disc_radius = bound_value(class_id, r)
        theta = 2 * np.pi * np.arange(n) / n
        points = 1 + disc_radius * np.exp(1j * theta)
        inside = contains_many(region, points, oracle=True)

        witness = None
        if not np.all(inside):
            outside = points[~inside]
            # Prefer a real-axis witness when one was sampled
            on_axis = outside[np.abs(outside.imag) < 1e-12]
            witness = complex(on_axis[0] if on_axis.size else outside[0])

        return ContainmentReport(
            class_id=class_id.value,
            region=region.label,
            r=r,
            disc_radius=disc_radius,
            samples=n,
            passed=witness is None,
            witness=witness,
        )

    def shah_bound_check(self, alpha: float, samples: int = 1000) -> ShahReport:
        """
        Compare |zp'/p| over the rotation family of P(alpha) with its bound.

        Args:
            alpha: Order, 0 or 1/2
            samples: Number of (eps, z) pairs per radius, at least 1000

        Returns:
            ShahReport; passes when the bound is never exceeded and is attained
        """
        if samples < 1000:
            raise ValueError('At least 1000 samples are required')
        side = int(np.ceil(np.sqrt(samples)))
        angles = 2 * np.pi * np.arange(side) / side
        eps = np.exp(1j * angles)

        max_ratio, max_excess, attainment_gap = 0.0, -np.inf, 0.0
        for r in SHAH_R_GRID:
            z = r * np.exp(1j * angles)
            modulus = np.abs(rotation_family_logderiv(alpha, eps[:, None] * z[None, :]))
            bound = float(shah_bound(alpha, r))
            max_ratio = max(max_ratio, float(modulus.max() / bound))
            max_excess = max(max_excess, float(modulus.max() - bound))
            attainment_gap = max(attainment_gap, bound - float(modulus.max()))

        return ShahReport(
            alpha=alpha,
            samples=side * side,
            max_ratio=max_ratio,
            max_excess=max_excess,
            attainment_gap=attainment_gap,
            passed=max_excess <= SHAH_EXCESS_TOL and attainment_gap <= SHAH_ATTAIN_TOL,
        )

    def real_part_check(self, samples: int = 1000) -> Dict:
        """
        Check Re zh'/h >= -2r/(1-r^2) over P and Re zk'/k >= -r/(1+r) over
        P(1/2) on the rotation families, and the class bounds
        Re zf'/f >= real_part_lower(class, r).
        """
        side = int(np.ceil(np.sqrt(samples)))
        angles = 2 * np.pi * np.arange(side) / side
        worst = {'P': np.inf, 'P(1/2)': np.inf}
        class_worst = {class_id.value: np.inf for class_id in ClassId}

        for r in SHAH_R_GRID:
            u = r * np.exp(1j * angles)
            worst['P'] = min(worst['P'], float(
                (rotation_family_logderiv(0.0, u).real + 2 * r / (1 - r ** 2)).min()))
            worst['P(1/2)'] = min(worst['P(1/2)'], float(
                (rotation_family_logderiv(0.5, u).real + r / (1 + r)).min()))
            for class_id, fid in CLASS_EXTREMALS.items():
                values = np.asarray(logderiv(fid, u))
                slack = float((values.real - real_part_lower(class_id, r)).min())
                class_worst[class_id.value] = min(class_worst[class_id.value], slack)

        passed = all(value >= -1e-12 for value in list(worst.values()) + list(class_worst.values()))
        return {'passed': passed, 'lemma_slack': worst, 'class_slack': class_worst}

    def membership_check(self, class_id: Union[ClassId, str], samples: int = 1000) -> Dict:
        """
        Check that the class extremals satisfy the defining ratio conditions.

        Each ratio of CLASS_MEMBERSHIP is sampled on a polar grid of
        0 < |z| <= 0.99 and its smallest real part compared with the
        threshold (0 for P, 1/2 for P(1/2)).

        Args:
            class_id: G1, G2 or G3
            samples: Approximate number of grid points

        Returns:
            Dictionary with the smallest real part of every ratio
        """
        class_id = as_class(class_id)
        side = int(np.ceil(np.sqrt(samples)))
        radii = np.linspace(0.01, MEMBERSHIP_RADIUS, side)
        angles = 2 * np.pi * np.arange(side) / side
        z = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
        kernel = z * np.asarray(evaluate(ExtremalId.P0, z))

        ratios = {}
        for name, numerator, denominator, threshold in CLASS_MEMBERSHIP[class_id]:
            below = kernel if denominator is None else np.asarray(evaluate(denominator, z))
            min_re = float((np.asarray(evaluate(numerator, z)) / below).real.min())
            ratios[name] = {'min_re': min_re, 'threshold': threshold}

        passed = all(ratio['min_re'] > ratio['threshold'] for ratio in ratios.values())
        logger.debug(f"Membership of {class_id.value} extremals: {ratios}")
        return {'class': class_id.value, 'ratios': ratios, 'passed': passed}

    def triangle_chain_check(self, class_id: Union[ClassId, str], samples: int = 1000,
                             seed: int = 0) -> Dict:
        """
        Check |zf'/f - 1| <= b(|z|) for random members of the product family.

        Args:
            class_id: G1, G2 or G3
            samples: Number of random (eps_1, eps_2, eps_3, z)
            seed: Random seed

        Returns:
            Dictionary with the largest excess over the bound
        """
        class_id = as_class(class_id)
        rng = np.random.default_rng(seed)
        eps = np.exp(2j * np.pi * rng.random((samples, 3)))
        z = 0.9 * np.sqrt(rng.random(samples)) * np.exp(2j * np.pi * rng.random(samples))
        values = family_logderiv(class_id, eps, z)
        r = np.abs(z)
        bounds = np.array([bound_value(class_id, float(radius)) for radius in r])
        excess = float((np.abs(values - 1) - bounds).max())
        return {'class': class_id.value, 'samples': samples, 'max_excess': excess,
                'passed': excess <= 1e-12}

    def oracle_cross_validation(self, region: Union[Region, str], samples: int = XVAL_SAMPLES,
                                seed: int = 0, nodes: Optional[int] = None) -> Dict:
        """
        Compare closed-form membership with the winding oracle of the
        generator on random points of [-0.5, 2.5] x [-1.5, 1.5].

        Points within the 1e-6 collar of the boundary or whose winding
        number stays unresolved are excluded.

        Args:
            region: Lemniscate, lune, nephroid, sigmoid or exponential
                (or a winding kind, which checks the inverse maps)
            samples: Number of random points
            seed: Random seed
            nodes: Starting oracle node count

        Returns:
            Dictionary with counts of compared and disagreeing points
        """
        region = as_region(region)
        generator = XVAL_KINDS.get(region.kind) or WINDING_KINDS.get(region.kind)
        if generator is None:
            raise ValueError(f'No generator cross-check for {region.label}')

        rng = np.random.default_rng(seed)
        low_u, high_u, low_v, high_v = XVAL_BOX
        ws = rng.uniform(low_u, high_u, samples) + 1j * rng.uniform(low_v, high_v, samples)

        functional = defining_functional(region, ws)
        closed_form = functional < 0
        counts, resolved = winding_numbers(generator, ws, nodes or default_nodes())
        compared = resolved & (np.abs(functional) > XVAL_COLLAR)
        disagreements = compared & (closed_form != (counts >= 1))

        result = {
            'region': region.label,
            'samples': samples,
            'compared': int(compared.sum()),
            'disagreements': int(disagreements.sum()),
            'passed': not bool(disagreements.any()),
        }
        if disagreements.any():
            logger.warning(f"Oracle disagreement for {region.label} at {ws[disagreements][:5]}")
        return result

    def _suite_checks(self, suite: str, samples: int, tol: float):
        """Yield (label, callable) pairs; each callable returns (record, failure or None)."""
        if suite == 'sharpness':
            for class_id, region in self.sharp_pairs():
                def check(class_id=class_id, region=region):
                    report = self.sharpness_check(class_id, region, tol)
                    failed = report.status == 'checked' and not report.passed
                    return report.to_dict(), report.boundary_distance if failed else None
                yield (class_id.value, region.label), check

        elif suite == 'containment':
            regions = [Region(RegionKind.STARLIKE)] + [Region(kind) for kind in NAMED_KINDS]
            for class_id in ClassId:
                for region in regions:
                    def check(class_id=class_id, region=region):
                        radius = self.radius_analyzer.radius_for_region(class_id, region).value
                        inner = self.containment_check(class_id, region, 0.99 * radius, samples)
                        outer = self.containment_check(class_id, region, 1.05 * radius, samples)
                        record = {'inner': inner.to_dict(), 'outer': outer.to_dict()}
                        return record, (inner.disc_radius if not inner or outer else None)
                    yield (class_id.value, region.label), check

        elif suite == 'shah':
            for alpha in (0.0, 0.5):
                def check(alpha=alpha):
                    report = self.shah_bound_check(alpha, samples)
                    return asdict(report), None if report.passed else report.max_excess
                yield ('P', f'alpha={alpha:g}'), check

        elif suite == 'oracle-xval':
            for kind in list(XVAL_KINDS) + list(WINDING_KINDS):
                def check(kind=kind):
                    result = self.oracle_cross_validation(Region(kind), max(samples, XVAL_SAMPLES))
                    return result, None if result['passed'] else result['disagreements']
                yield ('oracle', kind.value), check

        elif suite == 'real-part':
            def check():
                result = self.real_part_check(samples)
                return result, None if result['passed'] else min(result['class_slack'].values())
            yield ('real-part', 'all'), check

        elif suite == 'chain':
            for class_id in ClassId:
                def check(class_id=class_id):
                    result = self.triangle_chain_check(class_id, samples)
                    return result, None if result['passed'] else result['max_excess']
                yield (class_id.value, 'chain'), check

        elif suite == 'membership':
            for class_id in ClassId:
                def check(class_id=class_id):
                    result = self.membership_check(class_id, samples)
                    slack = min(ratio['min_re'] - ratio['threshold'] for ratio in result['ratios'].values())
                    return result, None if result['passed'] else slack
                yield (class_id.value, 'membership'), check

        else:
            raise ValueError(f'Unknown suite {suite}')

    def run_suite(self, suite: str, samples: int = 1000, tol: float = 1e-8) -> Dict:
        """
        Run a named verification suite.

        A check that raises is logged and recorded as failed; the suite
        carries on with the remaining checks.

        Args:
            suite: sharpness, containment, shah, oracle-xval, real-part, chain or membership
            samples: Sample count for the sampling suites
            tol: Sharpness threshold

        Returns:
            Dictionary with 'success', 'passed', 'checks' and 'failures'
        """
        try:
            planned = list(self._suite_checks(suite, samples, tol))
        except ValueError as e:
            logger.error(f"Cannot run suite {suite}: {e}")
            return {'success': False, 'error': 'Unknown suite', 'details': str(e)}

        checks, failures = [], []
        for index, ((label, target), check) in enumerate(planned, start=1):
            try:
                record, residual = check()
                checks.append(record)
                if residual is not None:
                    failures.append([label, target, residual])
            except Exception as e:
                logger.error(f"Check {label}/{target} in suite {suite} raised: {e}")
                failures.append([label, target, str(e)])

            if index % 10 == 0:
                logger.info(f"Suite {suite}: processed {index}/{len(planned)} checks")

        logger.info(f"Suite {suite}: {len(checks)} checks, {len(failures)} failures")
        return {
            'success': True,
            'suite': suite,
            'passed': not failures,
            'checks': checks,
            'failures': failures,
        }
