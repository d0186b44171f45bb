"""Kink (dark-soliton) counting in the sign-changing component.

A kink is a zero crossing of phi2 whose flanking lobes both reach the
amplitude threshold: by default 5% of the largest |phi1|, alternatively a
fixed absolute amplitude.  Sub-threshold lobes are fused into their larger
neighbor (dropping the crossing between them) before re-evaluation, which
makes the count well defined for shallow edge lobes and sub-threshold
wiggle chains.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .model import CouplingProfile, FieldPair, Parity


class ThresholdReference(enum.Enum):
    MAX_PHI1 = "max-phi1"
    ABSOLUTE = "absolute"


@dataclass(frozen=True)
class KinkThresholdConfig:
    relative_threshold: float = 0.05
    reference: ThresholdReference = ThresholdReference.MAX_PHI1
    absolute_value: float = 0.02

    def __post_init__(self):
        if not 0.0 < self.relative_threshold < 1.0:
            raise ValueError(
                f"relative_threshold must lie in (0, 1), got {self.relative_threshold}"
            )
        if self.reference is ThresholdReference.ABSOLUTE and not self.absolute_value > 0:
            raise ValueError("absolute_value must be positive")


@dataclass(frozen=True)
class KinkReport:
    count: int
    positions: tuple
    threshold_used: float
    parity_consistent: bool | None


@dataclass
class _Lobe:
    sign: float
    first: int  # index range of significant samples
    last: int
    peak: float


def parity_of(profile: CouplingProfile) -> Parity:
    return profile.parity


def _build_lobes(phi2: np.ndarray, floor: float) -> list[_Lobe]:
    lobes: list[_Lobe] = []
    for i, value in enumerate(phi2):
        if abs(value) <= floor:
            continue
        s = 1.0 if value > 0 else -1.0
        if lobes and lobes[-1].sign == s:
            lobes[-1].last = i
            lobes[-1].peak = max(lobes[-1].peak, abs(value))
        else:
            lobes.append(_Lobe(sign=s, first=i, last=i, peak=abs(value)))
    return lobes


def _merge_below_threshold(lobes: list[_Lobe], threshold: float) -> list[_Lobe]:
    lobes = list(lobes)
    while len(lobes) > 1:
        weakest = min(range(len(lobes)), key=lambda i: lobes[i].peak)
        if lobes[weakest].peak >= threshold:
            break
        if weakest == 0:
            into = 1
        elif weakest == len(lobes) - 1:
            into = weakest - 1
        else:
            left, right = lobes[weakest - 1], lobes[weakest + 1]
            into = weakest - 1 if left.peak >= right.peak else weakest + 1
        lo, hi = min(weakest, into), max(weakest, into)
        fused = _Lobe(
            sign=lobes[into].sign,
            first=lobes[lo].first,
            last=lobes[hi].last,
            peak=max(lobes[lo].peak, lobes[hi].peak),
        )
        lobes[lo:hi + 1] = [fused]
        # fusing can leave equal-sign neighbors; coalesce them (no crossing between)
        j = 0
        while j < len(lobes) - 1:
            if lobes[j].sign == lobes[j + 1].sign:
                lobes[j] = _Lobe(
                    sign=lobes[j].sign,
                    first=lobes[j].first,
                    last=lobes[j + 1].last,
                    peak=max(lobes[j].peak, lobes[j + 1].peak),
                )
                del lobes[j + 1]
            else:
                j += 1
    return lobes


def count_kinks(
    fields: FieldPair,
    cfg: KinkThresholdConfig = KinkThresholdConfig(),
    profile: CouplingProfile | None = None,
) -> KinkReport:
    """Count thresholded sign changes of phi2 and locate them.

    Crossing positions are linearly interpolated between the bracketing
    significant nodes.  When a coupling profile is supplied the report also
    states whether the count parity matches the modulation parity; with no
    profile that flag is None.
    """
    p2 = fields.phi2
    x = fields.grid.nodes
    if cfg.reference is ThresholdReference.MAX_PHI1:
        threshold = cfg.relative_threshold * float(np.max(np.abs(fields.phi1)))
    else:
        threshold = cfg.absolute_value

    peak2 = float(np.max(np.abs(p2)))
    if peak2 == 0.0:
        return KinkReport(0, (), threshold, _parity_ok(0, profile))
    floor = 10.0 * np.finfo(float).eps * peak2
    lobes = _merge_below_threshold(_build_lobes(p2, floor), threshold)
    if len(lobes) <= 1 or lobes[0].peak < threshold:
        return KinkReport(0, (), threshold, _parity_ok(0, profile))

    positions = []
    for left, right in zip(lobes[:-1], lobes[1:]):
        i, j = left.last, right.first
        xi, xj = x[i], x[j]
        yi, yj = p2[i], p2[j]
        positions.append(float(xi + yi * (xj - xi) / (yi - yj)))
    count = len(positions)
    return KinkReport(count, tuple(positions), threshold, _parity_ok(count, profile))


def _parity_ok(count: int, profile: CouplingProfile | None) -> bool | None:
    if profile is None:
        return None
    expected_odd = profile.parity is Parity.ODD
    return (count % 2 == 1) == expected_odd
