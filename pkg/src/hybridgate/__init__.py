"""Deterministic calculators and few-level simulators for an atom/molecule
hybrid quantum-computing platform: hyperfine level structure and addressing,
Raman/STIRAP conversion dynamics, the dipole-dipole phase gate, and the
decoherence budget."""

__version__ = "0.1.0"

from .budget import (
    AdiabaticityResult,
    BudgetReport,
    NoiseModel,
    adiabaticity_check,
    assemble_budget,
    dephasing_time,
    inelastic_loss_probability,
    operations_budget,
    ramsey_contrast_mc,
    selective_readout_min_duration,
)
from .constants import (
    BOHR_MAGNETON_HZ_PER_G,
    CONSTANTS,
    PhysicalConstants,
    angular_to_linear,
    debye_to_si,
    linear_to_angular,
)
from .dynamics import (
    ComplexAmplitudeVector,
    EffectiveTwoLevel,
    LambdaParams,
    PulseEnvelope,
    Trajectory,
    TwoLevelParams,
    effective_rabi,
    integrate_schrodinger,
    pi_pulse_duration,
    simulate_raman_pi_pulse,
    simulate_stirap,
    two_level_population,
)
from .errors import (
    ConfigError,
    DomainError,
    HybridGateError,
    NumericalFailure,
    StepSizeError,
)
from .gate import (
    DipoleParams,
    GateSchedule,
    TwoQubitUnitary,
    accumulated_phase_numeric,
    build_gate_schedule,
    build_phase_gate,
    dipole_dipole_rate,
    gate_fidelity,
    induced_dipole,
    interaction_time_for_pi,
    schedule_total_duration,
    total_phase_closed_form,
)
from .hyperfine import (
    ENABLED_0,
    ENABLED_1,
    LI7,
    RB87,
    STORAGE_0,
    STORAGE_1,
    AtomSpecies,
    HyperfineChannel,
    HyperfineState,
    breit_rabi_energy,
    field_sensitivity,
    open_decay_channels,
    resonance_site_count,
    site_frequency_resolution,
    transition_frequency,
)
