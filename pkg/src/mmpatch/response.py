"""Frequency-domain response: input impedance near resonance, reflection,
return loss, VSWR, sweeps, and resonance/bandwidth extraction.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import IO

import numpy as np

from . import circpatch, rectpatch
from .errors import DomainError
from .media import C0

RL_CLAMP_DB = -100.0          # keeps CSV/JSON finite on a perfect match
BANDWIDTH_CRITERION_DB = -10.0

CSV_HEADER = "f_hz,r_in_ohm,x_in_ohm,gamma_mag,rl_db,vswr"


@dataclass(frozen=True)
class SweepSpec:
    f_start: float
    f_stop: float
    points: int
    reference_impedance: float = 50.0

    def __post_init__(self) -> None:
        if not self.f_start > 0.0:
            raise DomainError(f"sweep start must be > 0, got {self.f_start}")
        if not self.f_start < self.f_stop:
            raise DomainError("sweep requires f_start < f_stop")
        if self.points < 2:
            raise DomainError(f"sweep needs at least 2 points, got {self.points}")
        if not self.reference_impedance > 0.0:
            raise DomainError("reference impedance must be > 0")


@dataclass(frozen=True)
class ResonatorModel:
    """Single-resonator description consumed by the sweep engine.

    Off resonance the input impedance follows a parallel-RLC law,
    Z(f) = r_res / (1 + j q_total nu) with nu = f/f_res - f_res/f.
    """

    f_res: float
    r_res: float
    q_total: float

    def __post_init__(self) -> None:
        if not self.f_res > 0.0:
            raise DomainError("resonant frequency must be > 0")
        if not self.r_res > 0.0:
            raise DomainError("resonant resistance must be > 0")
        if not self.q_total > 0.0:
            raise DomainError("quality factor must be > 0")


@dataclass(frozen=True)
class FrequencyResponse:
    """Ordered sweep samples; arrays share one frequency grid."""

    f_hz: np.ndarray
    r_in_ohm: np.ndarray
    x_in_ohm: np.ndarray
    gamma_mag: np.ndarray
    rl_db: np.ndarray
    vswr: np.ndarray
    reference_impedance: float = 50.0

    def write_csv(self, stream: IO[str]) -> None:
        stream.write(CSV_HEADER + "\n")
        for row in zip(self.f_hz, self.r_in_ohm, self.x_in_ohm,
                       self.gamma_mag, self.rl_db, self.vswr):
            stream.write(",".join(format(v, ".10g") for v in row) + "\n")

    def to_json_dict(self) -> dict:
        return {
            "reference_impedance": self.reference_impedance,
            "samples": [
                {
                    "f_hz": float(f), "r_in_ohm": float(r), "x_in_ohm": float(x),
                    "gamma_mag": float(g), "rl_db": float(rl), "vswr": float(v),
                }
                for f, r, x, g, rl, v in zip(
                    self.f_hz, self.r_in_ohm, self.x_in_ohm,
                    self.gamma_mag, self.rl_db, self.vswr)
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


@dataclass(frozen=True)
class ResonanceReport:
    f_res: float
    rl_min_db: float
    vswr_at_res: float
    bandwidth_hz: float
    q_loaded: float | None
    notes: tuple[str, ...] = ()


def input_impedance_vs_freq(model: ResonatorModel, f: float) -> complex:
    """Complex input impedance of the resonator at frequency f."""
    if not f > 0.0:
        raise DomainError(f"frequency must be > 0, got {f}")
    nu = f / model.f_res - model.f_res / f
    return model.r_res / (1.0 + 1j * model.q_total * nu)


def reflection(z: complex, z_ref: float) -> complex:
    """Voltage reflection coefficient against a real reference impedance."""
    if not z_ref > 0.0:
        raise DomainError(f"reference impedance must be > 0, got {z_ref}")
    return (z - z_ref) / (z + z_ref)


def return_loss_db(gamma_mag: float) -> float:
    """20 log10 |Gamma|, clamped at -100 dB for reporting."""
    if gamma_mag <= 10.0 ** (RL_CLAMP_DB / 20.0):
        return RL_CLAMP_DB
    return max(20.0 * math.log10(gamma_mag), RL_CLAMP_DB)


def vswr(gamma_mag: float) -> float:
    """(1 + |Gamma|) / (1 - |Gamma|); +inf at total reflection."""
    if gamma_mag < 0.0:
        raise DomainError("reflection magnitude cannot be negative")
    if gamma_mag >= 1.0:
        return math.inf
    return (1.0 + gamma_mag) / (1.0 - gamma_mag)


def rect_resonator(design: rectpatch.RectPatchDesign, variant: str) -> ResonatorModel:
    """RLC stand-in for a rectangular design: resonance at the design
    frequency, resistance from the feed-inset analysis, Q from the
    radiation quality factor."""
    f0 = design.f_design
    r_res = rectpatch.input_resistance_rect(design, f0, variant)
    eew = rectpatch.eps_effective(design.substrate, design.L)
    q = rectpatch.q_radiation(design.substrate, f0, eew)
    return ResonatorModel(f_res=f0, r_res=r_res, q_total=q)


def circ_q_total(design: circpatch.CircPatchDesign, f: float,
                 t1_form: str = "printed") -> float:
    """Quality factor from the energy budget: omega W_T over the summed
    radiated, surface-wave, conductor, and dielectric powers."""
    p_r = circpatch.p_radiated(design, f)
    _, t1 = rectpatch.surface_wave_factor(design.substrate, f, t1_form)
    p_sum = p_r * (1.0 + t1) + circpatch.p_conductor(design, f) + circpatch.p_dielectric(design, f)
    return 2.0 * math.pi * f * circpatch.stored_energy(design) / p_sum


def circ_resonator(design: circpatch.CircPatchDesign,
                   t1_form: str = "printed") -> ResonatorModel:
    """RLC stand-in for a circular design: resonance from the effective
    radius, resistance at the design's feed radius (total basis), Q from the
    energy budget."""
    f_res = circpatch.J1P_FIRST_ROOT * C0 / (
        2.0 * math.pi * design.a_eff * math.sqrt(design.substrate.eps_r))
    r_res = circpatch.input_resistance_circ(design, f_res, basis="total", t1_form=t1_form)
    q = circ_q_total(design, f_res, t1_form)
    return ResonatorModel(f_res=f_res, r_res=r_res, q_total=q)


def sweep(model: ResonatorModel, spec: SweepSpec) -> FrequencyResponse:
    """Uniform-grid frequency sweep; fully vectorized, hence deterministic."""
    f = np.linspace(spec.f_start, spec.f_stop, spec.points)
    nu = f / model.f_res - model.f_res / f
    z = model.r_res / (1.0 + 1j * model.q_total * nu)
    gamma = (z - spec.reference_impedance) / (z + spec.reference_impedance)
    gmag = np.abs(gamma)
    floor = 10.0 ** (RL_CLAMP_DB / 20.0)
    rl = 20.0 * np.log10(np.maximum(gmag, floor))
    with np.errstate(divide="ignore"):
        vs = np.where(gmag < 1.0, (1.0 + gmag) / (1.0 - gmag), np.inf)
    return FrequencyResponse(
        f_hz=f, r_in_ohm=z.real, x_in_ohm=z.imag, gamma_mag=gmag,
        rl_db=rl, vswr=vs, reference_impedance=spec.reference_impedance,
    )


def _parabolic_vertex(f: np.ndarray, y: np.ndarray, i: int) -> float:
    # Vertex of the parabola through samples i-1, i, i+1; falls back to the
    # sample frequency when the three points are degenerate.
    y0, y1, y2 = y[i - 1], y[i], y[i + 1]
    denom = y0 - 2.0 * y1 + y2
    if denom <= 0.0:
        return float(f[i])
    shift = 0.5 * (y0 - y2) / denom
    step = float(f[i + 1] - f[i])
    return float(f[i]) + shift * step


def extract_resonance(resp: FrequencyResponse) -> ResonanceReport:
    """Locate the return-loss minimum and the -10 dB bandwidth around it.

    The reported minimum depth and VSWR are sample values; the resonance
    frequency is refined with a three-point parabola. Band edges between
    samples are linearly interpolated. Notes flag minima at the sweep
    boundary and bands truncated by it.
    """
    f = resp.f_hz
    rl = resp.rl_db
    n = len(f)
    i_min = int(np.argmin(rl))
    notes: list[str] = []
    if i_min in (0, n - 1):
        notes.append("rl-min-at-sweep-edge")
        f_res = float(f[i_min])
    else:
        f_res = _parabolic_vertex(f, rl, i_min)
        f_res = min(max(f_res, float(f[0])), float(f[-1]))

    thr = BANDWIDTH_CRITERION_DB
    if rl[i_min] > thr:
        notes.append("no-sample-below-threshold")
        bandwidth = 0.0
    else:
        lo = i_min
        while lo > 0 and rl[lo - 1] <= thr:
            lo -= 1
        hi = i_min
        while hi < n - 1 and rl[hi + 1] <= thr:
            hi += 1
        if lo == 0:
            f_lo = float(f[0])
            notes.append("band-truncated-at-sweep-start")
        else:
            # crossing between samples lo-1 (above) and lo (below)
            frac = (thr - rl[lo - 1]) / (rl[lo] - rl[lo - 1])
            f_lo = float(f[lo - 1] + frac * (f[lo] - f[lo - 1]))
        if hi == n - 1:
            f_hi = float(f[-1])
            notes.append("band-truncated-at-sweep-stop")
        else:
            frac = (thr - rl[hi + 1]) / (rl[hi] - rl[hi + 1])
            f_hi = float(f[hi + 1] + frac * (f[hi] - f[hi + 1]))
        bandwidth = f_hi - f_lo

    return ResonanceReport(
        f_res=f_res,
        rl_min_db=float(rl[i_min]),
        vswr_at_res=float(resp.vswr[i_min]),
        bandwidth_hz=bandwidth,
        q_loaded=(f_res / bandwidth) if bandwidth > 0.0 else None,
        notes=tuple(notes),
    )
