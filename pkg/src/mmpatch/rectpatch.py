"""Rectangular patch synthesis and input-resistance analysis on thick substrates.

The resonant input resistance is decomposed into four series terms:

    R_in = R_r (radiation) + R_s (surface wave) + R_c (conductor) + R_d (dielectric)

with the radiation term additionally tapered by the feed inset position.
The surface-wave term is tied to the radiation term through the loss factor
T1 returned by :func:`surface_wave_factor`.

Two radiation-resistance model variants are exposed and must be selected
explicitly:

* ``"eq8-literal"``   - transit-time reading of the empirical radiation
  formula, R_r = Z0w * lambda0 / (2*pi*L_ef);
* ``"calibrated"``    - the same quantity rescaled by a frozen constant so
  that the reference 39 GHz design (eps_r = 4.7, h = 0.8 mm, L = 1.06 mm,
  W = 0.98 mm) presents exactly 50 ohm at a 0.05 mm feed inset.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .errors import ConfigError, DomainError, SingularFeedError, SynthesisError
from .media import ETA0, MU0, SubstrateSpec, free_space_wavelength, wavenumber

RECT_VARIANTS = ("eq8-literal", "calibrated")

# Frozen scale applied to the eq8-literal radiation resistance so the
# reference design above hits a 50 ohm match; re-derived in the test suite.
RECT_CALIBRATION_SCALE = 0.7044537608944994


@dataclass(frozen=True)
class RectPatchDesign:
    """Rectangular patch geometry: resonant length L, width W, feed inset
    measured inward from the radiating edge (all meters)."""

    L: float
    W: float
    feed_offset_a: float
    substrate: SubstrateSpec
    f_design: float

    def __post_init__(self) -> None:
        if not self.L > 0.0:
            raise DomainError(f"patch length must be > 0, got {self.L}")
        if not self.W > 0.0:
            raise DomainError(f"patch width must be > 0, got {self.W}")
        if not 0.0 <= self.feed_offset_a <= 0.5 * self.L:
            raise DomainError(
                f"feed inset must lie in [0, L/2] = [0, {0.5 * self.L}], "
                f"got {self.feed_offset_a}"
            )
        if not self.f_design > 0.0:
            raise DomainError(f"design frequency must be > 0, got {self.f_design}")


@dataclass(frozen=True)
class RectDerived:
    """Intermediate quantities of the analysis chain, kept for reporting."""

    eps_eff: float    # synthesis-side effective permittivity
    eps_ew: float     # analysis-side effective permittivity (same fit)
    Q_r: float        # radiation quality factor
    Z0w: float        # substrate-filled strip impedance (ohm)
    Z0a: float        # air-filled strip impedance (ohm)
    W_eq: float       # equivalent parallel-plate width (m)
    L_ef: float       # effective resonant length (m)
    delta_L: float    # open-edge length extension (m)
    K1: float         # surface-wave wavenumber (rad/m)
    T1: float         # surface-wave loss factor (dimensionless)
    lambda_d: float   # in-dielectric wavelength (m)


@dataclass(frozen=True)
class ResistanceBreakdown:
    """Series resistance decomposition; R_total is always the exact sum."""

    R_r: float
    R_s: float
    R_c: float
    R_d: float
    R_total: float


def eps_effective(sub: SubstrateSpec, L: float) -> float:
    """Effective permittivity of a patch of resonant length L.

    Fringing fields live partly in air, so the value falls between 1 and
    eps_r, approaching eps_r as h/L -> 0.
    """
    if not L > 0.0:
        raise DomainError(f"length must be > 0, got {L}")
    ratio = 10.0 * sub.h / L
    return 0.5 * ((sub.eps_r + 1.0) + (sub.eps_r - 1.0) / math.sqrt(1.0 + ratio * ratio))


def synth_rect(f0: float, sub: SubstrateSpec) -> RectPatchDesign:
    """Synthesize patch length and width for resonance at f0.

    Empirical thick-substrate fits: L scales with sqrt(h * lambda_d) where
    lambda_d is the in-dielectric wavelength, and W scales with
    lambda0 * ln(lambda0/h). The feed inset is left at 0 for later matching.
    """
    lam0 = free_space_wavelength(f0)
    lam_d = lam0 / math.sqrt(sub.eps_r)
    L = (math.pi / sub.eps_r) * math.sqrt(sub.h * lam_d)
    log_term = math.log(lam0 / sub.h) - 1.0
    if log_term <= 0.0:
        raise SynthesisError(
            f"width fit needs lambda0 > e*h; got lambda0={lam0:.6g} m, h={sub.h:.6g} m"
        )
    ee = eps_effective(sub, L)
    W = lam0 / (2.0 * math.pi * math.sqrt(ee)) * log_term
    return RectPatchDesign(L=L, W=W, feed_offset_a=0.0, substrate=sub, f_design=f0)


def q_radiation(sub: SubstrateSpec, f: float, eps_ew: float) -> float:
    """Radiation quality factor Q_r = (lambda0 / 4h) * sqrt(eps_ew)."""
    if not eps_ew >= 1.0:
        raise DomainError(f"effective permittivity must be >= 1, got {eps_ew}")
    return free_space_wavelength(f) / (4.0 * sub.h) * math.sqrt(eps_ew)


def _z0_strip(eps_r: float, W: float, h: float) -> float:
    # Narrow-strip fit for W/h <= 3.3; classical wide-strip fit above.
    # The two fits meet at the branch point to within ~1.5 %.
    u = W / h
    if u <= 3.3:
        geo = math.log(4.0 * h / W + math.sqrt(2.0 + 16.0 * (h / W) ** 2))
        corr = (eps_r - 1.0) / (eps_r + 1.0) * (0.2258 + 0.1208 / eps_r)
        return ETA0 / (math.pi * math.sqrt(2.0 * (eps_r + 1.0))) * (geo - corr)
    denom = (
        0.5 * u
        + 0.4413
        + 0.0823 * (eps_r - 1.0) / eps_r**2
        + (eps_r + 1.0) / eps_r * (0.231 + 0.1592 * math.log(0.5 * u + 0.94))
    )
    return ETA0 / (2.0 * math.sqrt(eps_r)) / denom


def strip_impedance(sub: SubstrateSpec, W: float) -> float:
    """Characteristic impedance of a zero-thickness strip of width W over the
    substrate. Evaluate with ``replace(sub, eps_r=1.0)`` for the air-filled
    variant."""
    if not W > 0.0:
        raise DomainError(f"strip width must be > 0, got {W}")
    return _z0_strip(sub.eps_r, W, sub.h)


def equivalent_width(design: RectPatchDesign, f: float) -> float:
    """Parallel-plate width presenting the same impedance as the strip:
    W_eq = eta0 * h / (Z0w * sqrt(eps_ew)). Always >= W because fringing
    lowers the strip impedance below the parallel-plate value."""
    sub = design.substrate
    eew = eps_effective(sub, design.L)
    z0w = strip_impedance(sub, design.W)
    return ETA0 * sub.h / (z0w * math.sqrt(eew))


def effective_length(design: RectPatchDesign, f: float) -> float:
    """Resonant length grown by the fringing-field extension on both edges."""
    sub = design.substrate
    eew = eps_effective(sub, design.L)
    w_eq = equivalent_width(design, f)
    return design.L + 0.5 * (w_eq - design.W) * (eew + 0.9) / (eew - 0.299)


def edge_extension(design: RectPatchDesign) -> float:
    """Open-edge length extension delta_L, proportional to h."""
    sub = design.substrate
    eew = eps_effective(sub, design.L)
    ratio = design.L / sub.h
    return (
        0.412
        * sub.h
        * (eew + 0.9)
        / (eew - 0.299)
        * (ratio + 0.264)
        / (ratio + 0.813)
    )


def surface_wave_factor(
    sub: SubstrateSpec, f: float, t1_form: str = "printed"
) -> tuple[float, float]:
    """Surface-wave wavenumber K1 and loss factor T1 = R_s / R_r.

    ``t1_form`` selects the bracket of the loss factor: ``"printed"`` keeps
    both terms as (1 + (K1 h)^2/3)^2; ``"corrected"`` flips the first term's
    sign to (1 - (K1 h)^2/3)^2 for sensitivity runs.

    eps_r = 1 supports no surface wave and returns (0.0, 0.0).
    """
    if t1_form not in ("printed", "corrected"):
        raise ConfigError(f"unknown T1 form {t1_form!r}; use 'printed' or 'corrected'")
    er = sub.eps_r
    k0 = wavenumber(f)
    num = -er * er + er * math.sqrt(er * er + 4.0 * k0 * k0 * sub.h * sub.h * (er - 1.0))
    if num <= 0.0:
        return 0.0, 0.0
    K1 = math.sqrt(num / (2.0 * sub.h * sub.h))
    u = K1 * sub.h
    u2_3 = u * u / 3.0
    first = (1.0 - u2_3) ** 2 if t1_form == "corrected" else (1.0 + u2_3) ** 2
    second = (1.0 + u2_3) ** 2 / math.cos(u) ** 2
    T1 = (u / er) ** 2 * (first + second)
    return K1, T1


def r_conductor_rect(design: RectPatchDesign, f: float) -> float:
    """Conductor-loss resistance: 0.00027 * (L/W) * Q_r^2 * sqrt(f in GHz)."""
    eew = eps_effective(design.substrate, design.L)
    qr = q_radiation(design.substrate, f, eew)
    return 0.00027 * (design.L / design.W) * qr * qr * math.sqrt(f / 1e9)


def r_dielectric_rect(design: RectPatchDesign, f: float) -> float:
    """Dielectric-loss resistance, scaled off the conductor term by the
    dielectric-to-conductor power-loss ratio tan_delta * h * sqrt(pi f mu0 sigma)."""
    sub = design.substrate
    ratio = sub.tan_delta * sub.h * math.sqrt(math.pi * f * MU0 * sub.sigma)
    return r_conductor_rect(design, f) * ratio


def _check_variant(variant: str) -> None:
    if variant not in RECT_VARIANTS:
        raise ConfigError(
            f"unknown rectangular model variant {variant!r}; expected one of {RECT_VARIANTS}"
        )


def r_radiation_rect(design: RectPatchDesign, f: float, variant: str) -> float:
    """Resonant (edge) radiation resistance under the selected model variant."""
    _check_variant(variant)
    lam0 = free_space_wavelength(f)
    z0w = strip_impedance(design.substrate, design.W)
    l_ef = effective_length(design, f)
    base = z0w * lam0 / (2.0 * math.pi * l_ef)
    if variant == "calibrated":
        return RECT_CALIBRATION_SCALE * base
    return base


def _feed_factor_raw(x: float) -> float:
    # (1 - sin(2x)/sin(x)) / (1 - cos(2x)) = (1 - 2 cos x) / (2 sin^2 x).
    denom = 1.0 - math.cos(2.0 * x)
    if abs(denom) < 1e-12:
        raise SingularFeedError(
            f"feed-taper denominator 1 - cos(2*k0*(a + delta_L)) vanishes at "
            f"k0*(a + delta_L) = {x:.6g} rad"
        )
    return (1.0 - math.sin(2.0 * x) / math.sin(x)) / denom


def feed_taper(design: RectPatchDesign, f: float, a: float | None = None) -> float:
    """Radiation-coupling taper of the feed inset, normalized to 1 at the
    radiating edge and decreasing monotonically toward the patch center.

    Raises SingularFeedError for insets where the taper expression is
    singular (inset plus edge extension a multiple of half a wavelength).
    """
    if a is None:
        a = design.feed_offset_a
    k0 = wavenumber(f)
    d_l = edge_extension(design)
    x_feed = k0 * (a + d_l)
    x_edge = k0 * d_l
    return _feed_factor_raw(x_feed) / _feed_factor_raw(x_edge)


def input_resistance_rect(design: RectPatchDesign, f: float, variant: str) -> float:
    """Resonant input resistance at the design's feed inset.

    The radiation term is tapered with feed position; surface-wave,
    conductor, and dielectric terms add in series untapered.
    """
    r_r = r_radiation_rect(design, f, variant)
    _, t1 = surface_wave_factor(design.substrate, f)
    tau = feed_taper(design, f)
    return r_r * tau + t1 * r_r + r_conductor_rect(design, f) + r_dielectric_rect(design, f)


def derive_rect(design: RectPatchDesign, f: float, t1_form: str = "printed") -> RectDerived:
    """All intermediate analysis quantities for reporting."""
    sub = design.substrate
    lam0 = free_space_wavelength(f)
    eew = eps_effective(sub, design.L)
    k1, t1 = surface_wave_factor(sub, f, t1_form)
    return RectDerived(
        eps_eff=eps_effective(sub, design.L),
        eps_ew=eew,
        Q_r=q_radiation(sub, f, eew),
        Z0w=strip_impedance(sub, design.W),
        Z0a=strip_impedance(replace(sub, eps_r=1.0), design.W),
        W_eq=equivalent_width(design, f),
        L_ef=effective_length(design, f),
        delta_L=edge_extension(design),
        K1=k1,
        T1=t1,
        lambda_d=lam0 / math.sqrt(sub.eps_r),
    )


def analyze_rect(
    design: RectPatchDesign, f: float, variant: str
) -> tuple[ResistanceBreakdown, RectDerived, float]:
    """Full analysis: resistance breakdown, derived intermediates, and the
    input resistance at the design's feed inset."""
    der = derive_rect(design, f)
    r_r = r_radiation_rect(design, f, variant)
    r_s = der.T1 * r_r
    r_c = r_conductor_rect(design, f)
    r_d = r_dielectric_rect(design, f)
    breakdown = ResistanceBreakdown(
        R_r=r_r, R_s=r_s, R_c=r_c, R_d=r_d, R_total=r_r + r_s + r_c + r_d
    )
    r_in = r_r * feed_taper(design, f) + r_s + r_c + r_d
    return breakdown, der, r_in
