"""Ordering regions of the coupling angle and prefix-sum derivative tests.

For a fixed photon number the sorted spectrum keeps a constant sorting
permutation on maximal angle intervals ("regions") of [0, pi/4). Region
boundaries are the crossover angles where two components coincide. Within
a region, whether an infinitesimal increase of the angle yields a majorized
spectrum reduces to the sign pattern of the accumulation derivatives: the
angle derivatives of the prefix sums of the sorted spectrum.
"""

from __future__ import annotations

import enum
import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .beamsplitter import as_photon_number, spectrum
from .vectors import TOL, sort_desc

QUARTER_PI = math.pi / 4

_DIRECT_K_LIMIT = 60


class AmbiguousOrderingError(ValueError):
    """The angle sits on a crossover, where the sort order is undefined.

    The sorting permutation is discontinuous there; the caller must pick a
    side of the crossover explicitly.
    """


@dataclass(frozen=True)
class RegionPartition:
    """Crossover angles partitioning [0, pi/4) into fixed-ordering regions.

    ``crossovers`` are sorted ascending. Region r (1-based) is the
    half-open interval [crossovers[r-2], crossovers[r-1]), with region 1
    starting at 0 and the last region ending at pi/4; a crossover angle
    itself belongs to the region on its right. ``orderings[r-1]`` is the
    sorting permutation sampled at the midpoint of region r, and
    ``pairs[i]`` lists the component index pairs (n, m), n > m, that
    coincide at ``crossovers[i]``.
    """

    k: int
    crossovers: tuple[float, ...]
    orderings: tuple[tuple[int, ...], ...]
    pairs: tuple[tuple[tuple[int, int], ...], ...]

    @property
    def n_regions(self) -> int:
        return len(self.crossovers) + 1

    def region_of(self, theta: float) -> int:
        """1-based region label of an angle in [0, pi/4)."""
        if not 0.0 <= theta < QUARTER_PI:
            raise ValueError(f"theta must lie in [0, pi/4), got {theta!r}")
        return bisect_right(self.crossovers, theta) + 1


@dataclass(frozen=True)
class AccumulationDerivatives:
    """Angle derivatives of the sorted-spectrum prefix sums at one angle.

    ``values[j]`` is the derivative of the sum of the j+1 largest
    components, for j = 0 .. k-1. The full-sum derivative is identically
    zero by normalization and is not stored.
    """

    theta: float
    values: tuple[float, ...]


class InfinitesimalStatus(str, enum.Enum):
    HOLDS = "Holds"
    VIOLATED = "Violated"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class InfinitesimalVerdict:
    """Whether nudging the angle upward yields a majorized spectrum."""

    status: InfinitesimalStatus
    first_violation: int | None = None
    derivatives: AccumulationDerivatives | None = None


def find_crossovers(k: int) -> RegionPartition:
    """Enumerate all component crossings inside (0, pi/4).

    Components n and m (n > m) coincide where

        tan(theta)^(2(n-m)) = (m! (k-m)!) / (n! (k-n)!),

    an explicit equation with a single solution per pair. Solutions are
    kept when they fall strictly inside (0, pi/4), sorted, and deduplicated
    within tolerance; the coinciding pairs are recorded per crossover.
    """
    k = as_photon_number(k)
    if k < 1:
        raise ValueError("k must be at least 1")

    hits: list[tuple[float, tuple[int, int]]] = []
    for n in range(1, k + 1):
        for m in range(n):
            ratio = Fraction(
                math.factorial(m) * math.factorial(k - m),
                math.factorial(n) * math.factorial(k - n),
            )
            t = float(ratio) ** (1.0 / (2 * (n - m)))
            theta = math.atan(t)
            if TOL < theta < QUARTER_PI - TOL:
                hits.append((theta, (n, m)))
    hits.sort(key=lambda item: item[0])

    crossovers: list[float] = []
    pairs: list[list[tuple[int, int]]] = []
    for theta, pair in hits:
        if crossovers and abs(theta - crossovers[-1]) <= TOL:
            pairs[-1].append(pair)
        else:
            crossovers.append(theta)
            pairs.append([pair])

    boundaries = [0.0, *crossovers, QUARTER_PI]
    orderings = []
    for lo, hi in zip(boundaries[:-1], boundaries[1:]):
        mid = 0.5 * (lo + hi)
        orderings.append(sort_desc(spectrum(k, mid)).perm)

    return RegionPartition(
        k=k,
        crossovers=tuple(crossovers),
        orderings=tuple(orderings),
        pairs=tuple(tuple(p) for p in pairs),
    )


def component_derivatives(k: int, theta: float) -> np.ndarray:
    """Angle derivatives of all spectrum components, in original index order.

    Uses the expanded product form

        dP_n/dtheta = C(k,n) * [ 2(k-n) c^(2n+1) s^(2(k-n)-1)
                                 - 2n     c^(2n-1) s^(2(k-n)+1) ],

    which stays finite at theta = 0 and pi/2 (each singular factor only
    appears multiplied by a vanishing coefficient, and those terms are
    skipped outright).
    """
    k = as_photon_number(k)
    theta = float(theta)
    c = math.cos(theta)
    s = math.sin(theta)
    out = np.zeros(k + 1)
    if k == 0:
        return out
    if k <= _DIRECT_K_LIMIT:
        binom = 1.0
        for n in range(k + 1):
            term = 0.0
            if n < k:
                term += 2.0 * (k - n) * c ** (2 * n + 1) * s ** (2 * (k - n) - 1)
            if n > 0:
                term -= 2.0 * n * c ** (2 * n - 1) * s ** (2 * (k - n) + 1)
            out[n] = binom * term
            binom *= (k - n) / (n + 1)
    else:
        lgk = math.lgamma(k + 1)
        for n in range(k + 1):
            lbin = lgk - math.lgamma(n + 1) - math.lgamma(k - n + 1)
            term = 0.0
            if n < k and c > 0.0 and s > 0.0:
                term += 2.0 * (k - n) * math.exp(
                    lbin + (2 * n + 1) * math.log(c) + (2 * (k - n) - 1) * math.log(s)
                )
            if n > 0 and c > 0.0 and s > 0.0:
                term -= 2.0 * n * math.exp(
                    lbin + (2 * n - 1) * math.log(c) + (2 * (k - n) + 1) * math.log(s)
                )
            out[n] = term
    return out


def accumulation_derivatives(
    k: int, theta: float, *, tol: float = TOL
) -> AccumulationDerivatives:
    """Prefix-sum derivatives of the sorted spectrum at one angle.

    Raises :class:`AmbiguousOrderingError` when ``theta`` is within ``tol``
    of a crossover (or of pi/4 itself), where the sorting permutation is
    not well defined.
    """
    k = as_photon_number(k)
    theta = _check_region_angle(theta)
    if k == 0:
        return AccumulationDerivatives(theta=theta, values=())
    if QUARTER_PI - theta <= tol:
        raise AmbiguousOrderingError(
            "theta sits at pi/4 where symmetric components tie"
        )
    for cross in find_crossovers(k).crossovers:
        if abs(theta - cross) <= tol:
            raise AmbiguousOrderingError(
                f"theta is within tolerance of the crossover at {cross!r}"
            )
    order = sort_desc(spectrum(k, theta)).perm
    deriv = component_derivatives(k, theta)
    acc = np.cumsum(deriv[list(order)])[:k]
    return AccumulationDerivatives(theta=theta, values=tuple(float(a) for a in acc))


def region1_closed_form(k: int, j: int, theta: float) -> float:
    """Closed form of the j-th accumulation derivative in the first region:

        -cos(theta)^(2k) * 2(k-j) * C(k,j) * tan(theta)^(2j+1),

    manifestly nonpositive for j = 0 .. k-1, which is why infinitesimal
    majorization always holds before the first crossover.
    """
    k = as_photon_number(k)
    if not 0 <= j <= k - 1:
        raise ValueError(f"j must lie in [0, {k - 1}], got {j}")
    theta = _check_region_angle(theta)
    lead = math.cos(theta) ** (2 * k)
    return -lead * 2.0 * (k - j) * math.comb(k, j) * math.tan(theta) ** (2 * j + 1)


def infinitesimal_verdict(
    k: int, theta: float, *, tol: float = TOL
) -> InfinitesimalVerdict:
    """Decide infinitesimal parametric majorization at one angle.

    Holds when every accumulation derivative is at most ``tol``; Violated
    reports the first offending prefix index; Boundary is returned when the
    angle sits on a crossover (or at pi/4), where the two sides of the
    crossing must be examined separately.
    """
    k = as_photon_number(k)
    theta = _check_region_angle(theta)
    if k == 0:
        return InfinitesimalVerdict(
            status=InfinitesimalStatus.HOLDS,
            derivatives=AccumulationDerivatives(theta=theta, values=()),
        )
    if QUARTER_PI - theta <= tol:
        return InfinitesimalVerdict(status=InfinitesimalStatus.BOUNDARY)
    for cross in find_crossovers(k).crossovers:
        if abs(theta - cross) <= tol:
            return InfinitesimalVerdict(status=InfinitesimalStatus.BOUNDARY)
    acc = accumulation_derivatives(k, theta, tol=tol)
    for j, value in enumerate(acc.values):
        if value > tol:
            return InfinitesimalVerdict(
                status=InfinitesimalStatus.VIOLATED,
                first_violation=j,
                derivatives=acc,
            )
    return InfinitesimalVerdict(status=InfinitesimalStatus.HOLDS, derivatives=acc)


def positivity_bound(k: int, n: int) -> float:
    """Bounding angle up to which the n-th component derivative stays positive:

        arctan( (n / (k-n)) ^ (1 / (2n-1)) ).

    Here n indexes the components in the first-region sorted
    parameterization, valid for 1 <= n <= k-1.
    """
    k = as_photon_number(k)
    if not 1 <= n <= k - 1:
        raise ValueError(f"n must lie in [1, {k - 1}], got {n}")
    return math.atan((n / (k - n)) ** (1.0 / (2 * n - 1)))


def _check_region_angle(theta: float) -> float:
    theta = float(theta)
    if not 0.0 <= theta <= QUARTER_PI:
        raise ValueError(
            f"theta must lie in [0, pi/4], got {theta!r}; angles beyond pi/4 "
            "mirror onto pi/2 - theta with transmittance and reflectance swapped"
        )
    return theta
