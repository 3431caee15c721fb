"""Circular patch (lowest mode) synthesis, loss decomposition, feed
placement, far fields, directivity, efficiency, and gain.

Radius synthesis inverts the resonance condition of the lowest cavity mode,
whose in-cavity wavenumber satisfies k * a_eff = 1.84118... (first root of
J1'). The effective radius includes the fringing enlargement by default; a
no-fringing mode is available behind the ``fringing`` flag for literal
closed-form reproduction.

Loss bookkeeping: the radiation resistance comes from the small-radius
series expansion of the radiated power. Surface-wave, conductor, and
dielectric resistances are series terms proportional to their loss powers,
R_x = R_r * P_x / P_r, so the efficiency R_r / R_total equals the radiated
fraction of the input power exactly. The alternative closed-form (voltage
route) conductor/dielectric resistances are kept as cross-checks in
:func:`r_conductor_circ_printed` / :func:`r_dielectric_circ_printed`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, ModelRangeError, SynthesisError
from .media import EPS0, ETA0, MU0, C0, SubstrateSpec, free_space_wavelength, wavenumber
from .rectpatch import ResistanceBreakdown, surface_wave_factor
from .specfun import Bracket, bessel_j, find_root_bracketed

# First positive root of J1'; reproduced by specfun.jprime_first_root(1).
J1P_FIRST_ROOT = 1.8411837813406593

_J1_AT_ROOT = bessel_j(1, J1P_FIRST_ROOT)  # peak value of J1, ~0.581865


@dataclass(frozen=True)
class CircPatchDesign:
    """Circular patch: physical radius a, fringing-enlarged radius a_eff,
    feed radius rho0 (None = edge-equivalent reference), all meters."""

    a: float
    a_eff: float
    rho0: float | None
    substrate: SubstrateSpec
    f_design: float
    mode_n: int = 1

    def __post_init__(self) -> None:
        if not self.a > 0.0:
            raise DomainError(f"disk radius must be > 0, got {self.a}")
        if not self.a_eff >= self.a:
            raise DomainError(
                f"effective radius must be >= physical radius, got {self.a_eff} < {self.a}"
            )
        if self.rho0 is not None and not 0.0 <= self.rho0 <= self.a:
            raise DomainError(f"feed radius must lie in [0, a], got {self.rho0}")
        if not self.f_design > 0.0:
            raise DomainError(f"design frequency must be > 0, got {self.f_design}")
        if self.mode_n != 1:
            raise DomainError("only the lowest mode (n = 1) is modeled")


@dataclass(frozen=True)
class CavityField:
    """Cavity mode description at a reference edge-field amplitude E0.

    E0 cancels out of every resistance and of efficiency, directivity, and
    gain; it only scales powers and stored energy.
    """

    E0: float
    k: float    # in-cavity wavenumber at resonance (rad/m)
    k11: float  # mode wavenumber, 1.84118... / a_eff (rad/m)


@dataclass(frozen=True)
class CircLossReport:
    P_r: float
    P_s: float
    P_c: float
    P_d: float
    W_T: float
    breakdown: ResistanceBreakdown
    e_r: float
    D: float
    G: float


def effective_radius(a: float, sub: SubstrateSpec) -> float:
    """Fringing-enlarged disk radius.

    a_eff = a * sqrt(1 + (2h / (pi a eps_r)) (ln(pi a / 2h) + 1.7726));
    tends to a as h -> 0 and grows monotonically with h in the working range.
    For disks far smaller than the substrate thickness (a < ~0.11 h) the
    fit's correction turns negative, which is outside its validity; it is
    clamped there so a_eff >= a always holds and radius synthesis can
    bracket safely.
    """
    if not a > 0.0:
        raise DomainError(f"disk radius must be > 0, got {a}")
    term = 2.0 * sub.h / (math.pi * a * sub.eps_r) * (
        math.log(math.pi * a / (2.0 * sub.h)) + 1.7726
    )
    return a * math.sqrt(max(1.0 + term, 1.0))


def resonant_frequency(a: float, sub: SubstrateSpec, fringing: bool = True) -> float:
    """Lowest-mode resonance of a disk of physical radius a."""
    a_eff = effective_radius(a, sub) if fringing else a
    return J1P_FIRST_ROOT * C0 / (2.0 * math.pi * a_eff * math.sqrt(sub.eps_r))


def resonant_radius(f0: float, sub: SubstrateSpec, fringing: bool = True) -> float:
    """Physical radius resonating at f0; inverse of :func:`resonant_frequency`."""
    if not f0 > 0.0:
        raise DomainError(f"frequency must be > 0, got {f0}")
    a0 = J1P_FIRST_ROOT * C0 / (2.0 * math.pi * f0 * math.sqrt(sub.eps_r))
    if not fringing:
        return a0
    try:
        return find_root_bracketed(
            lambda a: resonant_frequency(a, sub) - f0,
            Bracket(0.1 * a0, 10.0 * a0),
            tol=1e-9 * a0,
        )
    except Exception as exc:
        raise SynthesisError(f"radius synthesis failed at f0={f0:.6g} Hz: {exc}") from exc


def circ_design_from_radius(
    a: float,
    sub: SubstrateSpec,
    f_design: float,
    fringing: bool = True,
    rho0: float | None = None,
) -> CircPatchDesign:
    """Wrap a known physical radius into a design record."""
    a_eff = effective_radius(a, sub) if fringing else a
    return CircPatchDesign(a=a, a_eff=a_eff, rho0=rho0, substrate=sub, f_design=f_design)


def cavity_field(design: CircPatchDesign, E0: float = 1.0) -> CavityField:
    if not E0 > 0.0:
        raise DomainError(f"edge field amplitude must be > 0, got {E0}")
    k11 = J1P_FIRST_ROOT / design.a_eff
    return CavityField(E0=E0, k=k11, k11=k11)


def _radiation_series(k0a: float) -> float:
    # Quartic expansion of the radiated-power angular integral; good to
    # ~0.3 % for k0a <= 0.8 and ~3.5 % at k0a = 1.2.
    s2 = k0a * k0a
    return 4.0 / 3.0 - (8.0 / 15.0) * s2 + (11.0 / 105.0) * s2 * s2


def p_radiated(design: CircPatchDesign, f: float, E0: float = 1.0) -> float:
    """Radiated power of the lowest mode at edge-field amplitude E0 (W)."""
    lam0 = free_space_wavelength(f)
    k0a = wavenumber(f) * design.a_eff
    if k0a > 1.8:
        warnings.warn(
            f"radiated-power series truncation degrades beyond k0*a_eff = 1.8 "
            f"(got {k0a:.3f})",
            RuntimeWarning,
            stacklevel=2,
        )
    v0 = E0 * design.substrate.h
    return (
        math.pi**3
        * design.a_eff**2
        * v0
        * v0
        / (2.0 * lam0 * lam0 * ETA0)
        * _radiation_series(k0a)
    )


def r_radiation_circ(design: CircPatchDesign, f: float) -> float:
    """Edge radiation resistance; the field amplitude cancels out."""
    lam0 = free_space_wavelength(f)
    k0a = wavenumber(f) * design.a_eff
    series = _radiation_series(k0a)
    if series <= 0.0:
        raise ModelRangeError(
            f"radiated-power series non-positive at k0*a_eff = {k0a:.3f}"
        )
    return lam0 * lam0 * ETA0 / (math.pi**3 * design.a_eff**2 * series)


def r_surface_circ(design: CircPatchDesign, f: float, t1_form: str = "printed") -> float:
    """Surface-wave resistance R_s = T1 * R_r (shared T1 with the
    rectangular model)."""
    _, t1 = surface_wave_factor(design.substrate, f, t1_form)
    return t1 * r_radiation_circ(design, f)


def stored_energy(design: CircPatchDesign, E0: float = 1.0, n_points: int = 2001) -> float:
    """Total energy stored in the cavity at resonance (J).

    Radial quadrature of the mode profile:
    W_T = (eps0 eps_r h pi E0^2 / 2) * integral_0^a_eff J1(k11 rho)^2 rho drho.
    This integral form is authoritative; the closed form evaluated at the
    disk edge (:func:`stored_energy_closed_form`) matches it at resonance.
    """
    if n_points < 2:
        raise DomainError("quadrature needs at least 2 points")
    sub = design.substrate
    k11 = J1P_FIRST_ROOT / design.a_eff
    rho = np.linspace(0.0, design.a_eff, n_points)
    j1 = np.array([bessel_j(1, float(k11 * r)) for r in rho])
    integral = float(np.trapezoid(j1 * j1 * rho, rho))
    return 0.5 * EPS0 * sub.eps_r * sub.h * math.pi * E0 * E0 * integral


def stored_energy_closed_form(design: CircPatchDesign, f: float, E0: float = 1.0) -> float:
    """Edge-evaluated closed form of the stored energy; cross-check only."""
    omega = 2.0 * math.pi * f
    c = J1P_FIRST_ROOT
    bracket = _J1_AT_ROOT**2 * (c * c - 1.0)
    return E0 * E0 * design.substrate.h / (8.0 * omega * f * MU0) * bracket


def p_dielectric(design: CircPatchDesign, f: float, E0: float = 1.0) -> float:
    """Dielectric loss power P_d = omega * tan_delta * W_T."""
    return 2.0 * math.pi * f * design.substrate.tan_delta * stored_energy(design, E0)


def p_conductor(design: CircPatchDesign, f: float, E0: float = 1.0) -> float:
    """Conductor loss power P_c = omega * W_T / (h * sqrt(pi f mu0 sigma))."""
    sub = design.substrate
    skin = sub.h * math.sqrt(math.pi * f * MU0 * sub.sigma)
    return 2.0 * math.pi * f * stored_energy(design, E0) / skin


def r_dielectric_circ(design: CircPatchDesign, f: float) -> float:
    """Series dielectric resistance R_d = R_r * P_d / P_r (zero when lossless)."""
    pr = p_radiated(design, f)
    return r_radiation_circ(design, f) * p_dielectric(design, f) / pr


def r_conductor_circ(design: CircPatchDesign, f: float) -> float:
    """Series conductor resistance R_c = R_r * P_c / P_r."""
    pr = p_radiated(design, f)
    return r_radiation_circ(design, f) * p_conductor(design, f) / pr


def r_dielectric_circ_printed(design: CircPatchDesign, f: float) -> float:
    """Voltage-route closed form 4 mu0 f h / (tan_delta * J1^2(c) (c^2 - 1)).

    Equals (E0 h)^2 / (2 P_d); kept as a cross-check of the series value.
    Returns +inf for a lossless dielectric.
    """
    sub = design.substrate
    if sub.tan_delta == 0.0:
        return math.inf
    c = J1P_FIRST_ROOT
    bracket = _J1_AT_ROOT**2 * (c * c - 1.0)
    return 4.0 * MU0 * f * sub.h / (sub.tan_delta * bracket)


def r_conductor_circ_printed(design: CircPatchDesign, f: float) -> float:
    """Voltage-route closed form 4 mu0 f h^2 sqrt(pi f mu0 sigma) / (J1^2(c) (c^2 - 1))."""
    sub = design.substrate
    c = J1P_FIRST_ROOT
    bracket = _J1_AT_ROOT**2 * (c * c - 1.0)
    return 4.0 * MU0 * f * sub.h**2 * math.sqrt(math.pi * f * MU0 * sub.sigma) / bracket


def r_total_circ(
    design: CircPatchDesign, f: float, t1_form: str = "printed"
) -> ResistanceBreakdown:
    """Series resistance breakdown at the edge-equivalent reference."""
    r_r = r_radiation_circ(design, f)
    _, t1 = surface_wave_factor(design.substrate, f, t1_form)
    r_s = t1 * r_r
    r_c = r_conductor_circ(design, f)
    r_d = r_dielectric_circ(design, f)
    return ResistanceBreakdown(
        R_r=r_r, R_s=r_s, R_c=r_c, R_d=r_d, R_total=r_r + r_s + r_c + r_d
    )


def _feed_taper_circ(design: CircPatchDesign, rho0: float) -> float:
    k11 = J1P_FIRST_ROOT / design.a_eff
    j = bessel_j(1, k11 * rho0)
    return (j / _J1_AT_ROOT) ** 2


def input_resistance_circ(
    design: CircPatchDesign,
    f: float,
    rho0: float | None = None,
    basis: str = "total",
    t1_form: str = "printed",
) -> float:
    """Input resistance at feed radius rho0 via the J1^2 mode taper.

    ``basis="total"`` tapers the full series resistance (the realized input
    resistance). ``basis="radiation"`` tapers the radiation term alone - the
    classical placement rule; a feed placed with it sees the slightly larger
    total-basis resistance, which is what sets the residual mismatch of the
    synthesized designs.
    """
    if rho0 is None:
        rho0 = design.rho0
    if rho0 is None:
        taper = 1.0
    else:
        if not 0.0 <= rho0 <= design.a:
            raise DomainError(f"feed radius must lie in [0, a], got {rho0}")
        taper = _feed_taper_circ(design, rho0)
    if basis == "total":
        base = r_total_circ(design, f, t1_form).R_total
    elif basis == "radiation":
        base = r_radiation_circ(design, f)
    else:
        raise DomainError(f"unknown basis {basis!r}; use 'total' or 'radiation'")
    return base * taper


def feed_radius_for_match(
    design: CircPatchDesign,
    f: float,
    target_R: float,
    basis: str = "total",
    t1_form: str = "printed",
) -> float:
    """Feed radius where the tapered input resistance equals target_R.

    Solves J1^2(k11 rho0) / J1^2(k11 a_eff) = target_R / R_basis on [0, a];
    fails if the target exceeds the resistance available at the physical edge.
    """
    if not target_R > 0.0:
        raise DomainError(f"target resistance must be > 0, got {target_R}")
    edge = input_resistance_circ(design, f, rho0=design.a, basis=basis, t1_form=t1_form)
    if target_R > edge:
        raise DomainError(
            f"target {target_R:.4g} ohm exceeds the {edge:.4g} ohm available at "
            f"the disk edge; no feed radius can match it"
        )
    k11 = J1P_FIRST_ROOT / design.a_eff
    if basis == "total":
        base = r_total_circ(design, f, t1_form).R_total
    else:
        base = r_radiation_circ(design, f)
    j_target = math.sqrt(target_R / base) * _J1_AT_ROOT
    # J1(k11 rho) rises monotonically on [0, a] (its first peak is at the
    # effective edge), so the bracket is guaranteed.
    return find_root_bracketed(
        lambda rho: bessel_j(1, k11 * rho) - j_target,
        Bracket(0.0, design.a),
        tol=1e-12 * design.a,
    )


def _j_on_grid(n: int, values: np.ndarray) -> np.ndarray:
    flat = np.ravel(values)
    out = np.array([bessel_j(n, float(v)) for v in flat])
    return out.reshape(np.shape(values))


def far_fields(
    design: CircPatchDesign,
    f: float,
    E0: float,
    theta: float | np.ndarray,
    phi: float | np.ndarray,
) -> tuple[np.ndarray, np.ndarray]:
    """Far-field magnitudes |E_theta|, |E_phi| of the lowest mode at 1 m.

    Standard two-term form over an infinite ground plane:
    E_theta ~ cos(phi) [J0(u) - J2(u)], E_phi ~ cos(theta) sin(phi)
    [J0(u) + J2(u)] with u = k0 a_eff sin(theta), common prefactor
    E0 h k0 a_eff / 2. Hemispherical integration of these fields reproduces
    the radiated-power series within its truncation error.

    theta is restricted to the upper hemisphere [0, pi/2].
    """
    theta_arr = np.asarray(theta, dtype=float)
    phi_arr = np.asarray(phi, dtype=float)
    if np.any(theta_arr < 0.0) or np.any(theta_arr > math.pi / 2 + 1e-12):
        raise DomainError("theta must lie in the upper hemisphere [0, pi/2]")
    k0 = wavenumber(f)
    u = k0 * design.a_eff * np.sin(theta_arr)
    j0 = _j_on_grid(0, u)
    j2 = _j_on_grid(2, u)
    pref = E0 * design.substrate.h * k0 * design.a_eff / 2.0
    e_theta = np.abs(pref * np.cos(phi_arr) * (j0 - j2))
    e_phi = np.abs(pref * np.cos(theta_arr) * np.sin(phi_arr) * (j0 + j2))
    return e_theta, e_phi


def radiated_power_from_pattern(
    design: CircPatchDesign,
    f: float,
    E0: float = 1.0,
    n_theta: int = 181,
    n_phi: int = 361,
) -> float:
    """Hemispherical quadrature of the far-field power density (W)."""
    theta = np.linspace(0.0, math.pi / 2, n_theta)
    phi = np.linspace(0.0, 2.0 * math.pi, n_phi)
    e_theta, e_phi = far_fields(design, f, E0, theta[:, None], phi[None, :])
    integrand = (e_theta**2 + e_phi**2) * np.sin(theta)[:, None] / (2.0 * ETA0)
    inner = np.trapezoid(integrand, phi, axis=1)
    return float(np.trapezoid(inner, theta))


def directivity(design: CircPatchDesign, f: float, n_theta: int = 2001) -> float:
    """Broadside directivity of the modeled pattern (dimensionless).

    D = 4 pi U(theta=0) / P_rad with the radiated power integrated from the
    same pattern, so amplitude and reference distance cancel; tends to 3.0
    as the disk becomes electrically small.
    """
    k0a = wavenumber(f) * design.a_eff
    theta = np.linspace(0.0, math.pi / 2, n_theta)
    u = k0a * np.sin(theta)
    j0 = _j_on_grid(0, u)
    j2 = _j_on_grid(2, u)
    integrand = ((j0 - j2) ** 2 + np.cos(theta) ** 2 * (j0 + j2) ** 2) * np.sin(theta)
    return 4.0 / float(np.trapezoid(integrand, theta))


def efficiency(design: CircPatchDesign, f: float, t1_form: str = "printed") -> float:
    """Radiated fraction of the input power, e_r = R_r / R_total in (0, 1]."""
    b = r_total_circ(design, f, t1_form)
    return b.R_r / b.R_total


def gain(design: CircPatchDesign, f: float, t1_form: str = "printed") -> float:
    """G = e_r * D (dimensionless)."""
    return efficiency(design, f, t1_form) * directivity(design, f)


def pattern_cut(
    design: CircPatchDesign, f: float, plane: str, step: float = math.pi / 180
) -> list[tuple[float, float]]:
    """Principal-plane pattern cut, normalized to 0 dB at broadside.

    ``plane="E"`` is the |E_theta| cut in the phi = 0 plane, ``plane="H"``
    the |E_phi| cut in the phi = pi/2 plane. Theta runs over [-pi/2, pi/2];
    negative angles map to the mirrored azimuth. Nulls give -inf dB.
    """
    if plane not in ("E", "H"):
        raise DomainError(f"plane must be 'E' or 'H', got {plane!r}")
    if not step > 0.0:
        raise DomainError(f"step must be > 0, got {step}")
    n = int(round(math.pi / 2 / step))
    thetas = np.arange(-n, n + 1) * step
    phi = 0.0 if plane == "E" else math.pi / 2
    e_theta, e_phi = far_fields(design, f, 1.0, np.abs(thetas), phi)
    mags = e_theta if plane == "E" else e_phi
    peak = float(mags[n])  # theta = 0 sample
    out: list[tuple[float, float]] = []
    for th, m in zip(thetas, mags):
        rel = float(m) / peak
        db = 20.0 * math.log10(rel) if rel > 0.0 else -math.inf
        out.append((float(th), db))
    return out


def loss_report(
    design: CircPatchDesign, f: float, E0: float = 1.0, t1_form: str = "printed"
) -> CircLossReport:
    """Powers, stored energy, resistance breakdown, efficiency, directivity,
    and gain in one record."""
    p_r = p_radiated(design, f, E0)
    _, t1 = surface_wave_factor(design.substrate, f, t1_form)
    p_s = t1 * p_r
    p_c = p_conductor(design, f, E0)
    p_d = p_dielectric(design, f, E0)
    w_t = stored_energy(design, E0)
    breakdown = r_total_circ(design, f, t1_form)
    e_r = breakdown.R_r / breakdown.R_total
    d = directivity(design, f)
    return CircLossReport(
        P_r=p_r, P_s=p_s, P_c=p_c, P_d=p_d, W_T=w_t,
        breakdown=breakdown, e_r=e_r, D=d, G=e_r * d,
    )


def synth_circ(
    f0: float,
    sub: SubstrateSpec,
    target_R: float = 50.0,
    fringing: bool = True,
    placement_basis: str = "radiation",
    t1_form: str = "printed",
) -> CircPatchDesign:
    """Synthesize a circular patch resonant at f0 with the feed placed for
    target_R.

    The default placement tapers the radiation resistance (the classical
    rule); evaluate the realized match with
    ``input_resistance_circ(design, f0, basis="total")``.
    """
    a = resonant_radius(f0, sub, fringing)
    design = circ_design_from_radius(a, sub, f0, fringing)
    rho0 = feed_radius_for_match(design, f0, target_R, basis=placement_basis, t1_form=t1_form)
    return circ_design_from_radius(a, sub, f0, fringing, rho0=rho0)
