"""Physical constants, free-space propagation, substrates, and the
thick/thin substrate regime classifier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

C0 = 2.99792458e8            # speed of light (m/s)
MU0 = 4e-7 * math.pi         # vacuum permeability (H/m)
EPS0 = 1.0 / (MU0 * C0**2)   # vacuum permittivity (F/m)
ETA0 = MU0 * C0              # vacuum wave impedance (ohm), ~ 376.73 ~ 120*pi


@dataclass(frozen=True)
class PhysicalConstants:
    c: float
    mu0: float
    eps0: float
    eta0: float


CONSTANTS = PhysicalConstants(c=C0, mu0=MU0, eps0=EPS0, eta0=ETA0)


@dataclass(frozen=True)
class SubstrateSpec:
    """Dielectric slab plus the patch-metal conductivity.

    Lengths are meters. Defaults: loss tangent 1e-3, copper conductivity
    5.8e7 S/m; override both for other laminates/metals.
    """

    eps_r: float
    h: float
    tan_delta: float = 1e-3
    sigma: float = 5.8e7

    def __post_init__(self) -> None:
        if not self.eps_r >= 1.0:
            raise DomainError(f"relative permittivity must be >= 1, got {self.eps_r}")
        if not self.h > 0.0:
            raise DomainError(f"substrate thickness must be > 0, got {self.h}")
        if not self.tan_delta >= 0.0:
            raise DomainError(f"loss tangent must be >= 0, got {self.tan_delta}")
        if not self.sigma > 0.0:
            raise DomainError(f"conductivity must be > 0, got {self.sigma}")


class Regime(Enum):
    THICK = "thick"
    THIN = "thin"


@dataclass(frozen=True)
class RegimeReport:
    ratio: float       # h / lambda0
    threshold: float   # regime boundary for this permittivity
    regime: Regime


def free_space_wavelength(f: float) -> float:
    """lambda0 = c / f, f in Hz."""
    if not f > 0.0:
        raise DomainError(f"frequency must be > 0, got {f}")
    return C0 / f


def wavenumber(f: float) -> float:
    """k0 = 2*pi / lambda0 (rad/m)."""
    return 2.0 * math.pi / free_space_wavelength(f)


# Surface-wave onset anchors: (eps_r, h/lambda0 boundary). The boundary
# scales with electrical thickness, so interpolate linearly in 1/sqrt(eps_r)
# and clamp outside the anchor range.
_ANCHOR_LO = (2.32, 0.09)
_ANCHOR_HI = (10.0, 0.03)


def regime_threshold(eps_r: float) -> float:
    """h/lambda0 boundary above which thin-substrate design formulas fail."""
    if not eps_r >= 1.0:
        raise DomainError(f"relative permittivity must be >= 1, got {eps_r}")
    x1, t1 = 1.0 / math.sqrt(_ANCHOR_LO[0]), _ANCHOR_LO[1]
    x2, t2 = 1.0 / math.sqrt(_ANCHOR_HI[0]), _ANCHOR_HI[1]
    x = 1.0 / math.sqrt(eps_r)
    t = t1 + (t2 - t1) * (x - x1) / (x2 - x1)
    return min(max(t, 0.03), 0.09)


def thickness_regime(sub: SubstrateSpec, f: float) -> RegimeReport:
    """Classify the substrate as electrically thick or thin at frequency f.

    Advisory only: callers should warn on THICK/THIN mismatches with the
    formula set in use, never hard-fail.
    """
    ratio = sub.h / free_space_wavelength(f)
    threshold = regime_threshold(sub.eps_r)
    regime = Regime.THICK if ratio > threshold else Regime.THIN
    return RegimeReport(ratio=ratio, threshold=threshold, regime=regime)
