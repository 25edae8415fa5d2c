"""Decoherence and feasibility budget for the protocol.

Magnetic noise is modeled as quasi-static and Gaussian: constant within one
shot, normally distributed across shots. The dephasing time is defined as
T_phi = 1/(2*pi * sensitivity * sigma_B), under which the Ramsey contrast
decays as exp(-t^2 / (2 T_phi^2)); the alternative 1/(sensitivity*sigma_B)
definition is available via ``definition="linear"``.
"""

import math
from dataclasses import dataclass

import numpy as np

from .constants import TWO_PI
from .errors import DomainError
from .gate import schedule_total_duration

# Monte Carlo samples are derived per chunk from (seed, chunk index), so the
# result is independent of how chunks would be distributed across workers.
MC_CHUNK = 65536

ADIABATIC_MIN_PERIODS = 3.0


@dataclass(frozen=True)
class NoiseModel:
    """Noise and trap inputs for the budget."""

    sigma_b_gauss: float
    gamma_inelastic_per_s: float
    trap_frequency_hz: float
    seed: int = 0

    def __post_init__(self):
        if self.sigma_b_gauss < 0:
            raise DomainError(f"sigma_B must be >= 0 G, got {self.sigma_b_gauss!r}")
        if self.gamma_inelastic_per_s < 0:
            raise DomainError(f"inelastic rate must be >= 0, got {self.gamma_inelastic_per_s!r}")
        if not self.trap_frequency_hz > 0:
            raise DomainError(f"trap frequency must be > 0 Hz, got {self.trap_frequency_hz!r}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError(f"seed must fit in 64 bits, got {self.seed!r}")


@dataclass(frozen=True)
class AdiabaticityResult:
    ok: bool
    margin: float  # trap periods elapsed during the pulse


@dataclass(frozen=True)
class BudgetReport:
    dephasing_time_s: float
    gate_time_s: float
    operations_count: int      # None when the dephasing time is unbounded
    loss_probability: float
    adiabaticity_ok: bool
    readout_min_duration_s: float


def dephasing_time(sensitivity_hz_per_g, sigma_b_gauss, definition="angular"):
    """Dephasing time of the qubit transition under rms field noise sigma_B.

    Returns math.inf when sigma_B = 0.
    """
    if not sensitivity_hz_per_g > 0:
        raise DomainError(f"sensitivity must be > 0 Hz/G, got {sensitivity_hz_per_g!r}")
    if sigma_b_gauss < 0:
        raise DomainError(f"sigma_B must be >= 0 G, got {sigma_b_gauss!r}")
    if definition not in ("angular", "linear"):
        raise DomainError(f"definition must be 'angular' or 'linear', got {definition!r}")
    if sigma_b_gauss == 0.0:
        return math.inf
    spread = sensitivity_hz_per_g * sigma_b_gauss
    return 1.0 / (TWO_PI * spread) if definition == "angular" else 1.0 / spread


def ramsey_contrast_mc(sensitivity_hz_per_g, sigma_b_gauss, t_s, n_samples, seed):
    """Monte Carlo Ramsey contrast |<exp(i 2 pi * sensitivity * dB * t)>| under
    quasi-static Gaussian field offsets dB ~ N(0, sigma_B^2).

    Bit-identical for identical seeds: sample chunk c comes from an
    independent Philox stream keyed by (seed, c) and chunks are reduced in
    index order.
    """
    if n_samples < 1000:
        raise DomainError(f"need n_samples >= 1000 for a meaningful contrast, got {n_samples!r}")
    if t_s < 0:
        raise DomainError(f"time must be >= 0, got {t_s!r}")
    total = 0.0 + 0.0j
    done = 0
    chunk_index = 0
    while done < n_samples:
        take = min(MC_CHUNK, n_samples - done)
        key = np.array([int(seed) & 0xFFFFFFFFFFFFFFFF, chunk_index], dtype=np.uint64)
        rng = np.random.Generator(np.random.Philox(key=key))
        db = rng.standard_normal(take) * sigma_b_gauss
        total += np.exp(1j * TWO_PI * sensitivity_hz_per_g * db * t_s).sum()
        done += take
        chunk_index += 1
    return float(abs(total / n_samples))


def inelastic_loss_probability(gamma_per_s, t_s):
    """Probability 1 - exp(-gamma*t) of an inelastic loss event within t."""
    if gamma_per_s < 0 or t_s < 0:
        raise DomainError("rate and time must both be >= 0")
    return -math.expm1(-gamma_per_s * t_s)


def operations_budget(dephasing_time_s, gate_time_s):
    """Number of gates fitting within the dephasing time: floor(T_phi/T_gate)."""
    if not (dephasing_time_s > 0 and math.isfinite(dephasing_time_s)):
        raise DomainError(f"dephasing time must be finite and > 0, got {dephasing_time_s!r}")
    if not gate_time_s > 0:
        raise DomainError(f"gate time must be > 0, got {gate_time_s!r}")
    return int(math.floor(dephasing_time_s / gate_time_s))


def adiabaticity_check(pulse_duration_s, trap_frequency_hz, min_periods=ADIABATIC_MIN_PERIODS):
    """Pass when the pulse spans at least min_periods trap oscillation periods."""
    if not pulse_duration_s > 0:
        raise DomainError(f"pulse duration must be > 0, got {pulse_duration_s!r}")
    if not trap_frequency_hz > 0:
        raise DomainError(f"trap frequency must be > 0, got {trap_frequency_hz!r}")
    margin = pulse_duration_s * trap_frequency_hz
    return AdiabaticityResult(ok=margin >= min_periods, margin=margin)


def selective_readout_min_duration(splitting_hz, selectivity_factor=1.0):
    """Minimum pulse duration resolving a qubit splitting: factor/splitting."""
    if not splitting_hz > 0:
        raise DomainError(f"splitting must be > 0 Hz, got {splitting_hz!r}")
    if not selectivity_factor > 0:
        raise DomainError(f"selectivity factor must be > 0, got {selectivity_factor!r}")
    return selectivity_factor / splitting_hz


def assemble_budget(noise, sensitivity_hz_per_g, schedule, readout_splitting_hz,
                    selectivity_factor=1.0, min_periods=ADIABATIC_MIN_PERIODS):
    """Compose the individual estimates into one report.

    Adiabaticity is judged on the one-qubit (enabler) rotation steps of the
    schedule; the conversion pulses are bounded by other physics. A schedule
    without rotation steps passes vacuously.
    """
    t_phi = dephasing_time(sensitivity_hz_per_g, noise.sigma_b_gauss)
    durations = schedule_total_duration(schedule)
    gate_time = durations.gate_s
    if not gate_time > 0:
        raise DomainError("schedule has no gate steps; gate time must be > 0")
    ops = None if math.isinf(t_phi) else operations_budget(t_phi, gate_time)
    loss = inelastic_loss_probability(noise.gamma_inelastic_per_s, gate_time)
    rotations = [s.duration_s for s in schedule.steps
                 if s.kind in ("enabler_rotation", "enabler_return")]
    if rotations:
        adiabatic_ok = all(
            adiabaticity_check(d, noise.trap_frequency_hz, min_periods=min_periods).ok
            for d in rotations)
    else:
        adiabatic_ok = True
    return BudgetReport(
        dephasing_time_s=t_phi,
        gate_time_s=gate_time,
        operations_count=ops,
        loss_probability=loss,
        adiabaticity_ok=adiabatic_ok,
        readout_min_duration_s=selective_readout_min_duration(readout_splitting_hz,
                                                              selectivity_factor),
    )
