"""Hyperfine level structure of ground-state alkali atoms in a magnetic field.

Level energies follow the closed Breit-Rabi form

    E(f = I +/- 1/2, m) / dE_hf = offset +/- (1/2) sqrt(1 + m*x + x^2),
    x = g_J * mu_B * B / dE_hf,

in two variants selected by ``mode``:

* ``"paper"`` (default): offset fixed at -1/12 and no nuclear term, the
  as-published variant this package reproduces number-for-number;
* ``"standard"``: textbook offset -1/(2(2I+1)) plus the nuclear Zeeman term
  g_I * mu_B * m * B.

The offset cancels in every transition frequency, so the two modes differ
only through g_I (zero by default).  Energies are linear frequencies in Hz,
relative to the hyperfine centroid; fields are in Gauss.
"""

import math
from dataclasses import dataclass

from .constants import BOHR_MAGNETON_HZ_PER_G
from .errors import DomainError

MODES = ("paper", "standard")


@dataclass(frozen=True)
class AtomSpecies:
    """Ground-state alkali atom: nuclear spin, splitting and g-factors.

    hyperfine_splitting_hz is the zero-field f = I-1/2 <-> I+1/2 interval
    (linear Hz). g_i uses the convention E_nuclear = g_i * mu_B * m * B and
    enters only in "standard" mode.
    """

    name: str
    nuclear_spin: float
    hyperfine_splitting_hz: float
    g_j: float
    g_i: float = 0.0

    def __post_init__(self):
        two_i = 2.0 * self.nuclear_spin
        if self.nuclear_spin <= 0 or abs(two_i - round(two_i)) > 1e-12:
            raise DomainError(f"nuclear spin must be a positive half-integer, got {self.nuclear_spin!r}")
        if not self.hyperfine_splitting_hz > 0:
            raise DomainError(f"hyperfine splitting must be > 0 Hz, got {self.hyperfine_splitting_hz!r}")

    @property
    def f_lower(self):
        return int(round(self.nuclear_spin - 0.5))

    @property
    def f_upper(self):
        return int(round(self.nuclear_spin + 0.5))


@dataclass(frozen=True)
class HyperfineState:
    """One |f, m> sublevel."""

    f: int
    m: int

    def __post_init__(self):
        if abs(self.m) > self.f:
            raise DomainError(f"|m| <= f required, got |{self.f},{self.m}>")

    def label(self):
        return f"|{self.f},{self.m}>"


@dataclass(frozen=True)
class HyperfineChannel:
    """Two-atom collision channel / computational basis state.

    The total projection m_tot = m_a + m_b is conserved in collisions and
    classifies which inelastic decay channels are open.
    """

    species_a: AtomSpecies
    state_a: HyperfineState
    species_b: AtomSpecies
    state_b: HyperfineState

    def __post_init__(self):
        _require_valid_state(self.species_a, self.state_a)
        _require_valid_state(self.species_b, self.state_b)

    @property
    def m_tot(self):
        return self.state_a.m + self.state_b.m

    def label(self):
        return (f"{self.state_a.label()}{self.species_a.name}"
                f"+{self.state_b.label()}{self.species_b.name}")

    def internal_energy_hz(self, b_gauss, mode="paper"):
        """Sum of the two single-atom level energies [Hz]; kinetic energy is
        taken as zero (ultracold regime)."""
        return (breit_rabi_energy(self.species_a, self.state_a, b_gauss, mode=mode)
                + breit_rabi_energy(self.species_b, self.state_b, b_gauss, mode=mode))


def _require_valid_state(species, state):
    if state.f not in (species.f_lower, species.f_upper):
        raise DomainError(
            f"state {state.label()} invalid for {species.name}: "
            f"f must be {species.f_lower} or {species.f_upper}")


def _require_mode(mode):
    if mode not in MODES:
        raise DomainError(f"mode must be one of {MODES}, got {mode!r}")


# Built-in species. The Li7 splitting is a pinned literature value.
RB87 = AtomSpecies("Rb87", 1.5, 6.835e9, 2.00233)
LI7 = AtomSpecies("Li7", 1.5, 803.5e6, 2.00230)

SPECIES_PRESETS = {"Rb87": RB87, "Li7": LI7}

# Qubit channels: Rb carries the qubit, Li enables the gate when moved
# from |2,2> to |1,1>.
STORAGE_0 = HyperfineChannel(RB87, HyperfineState(1, 1), LI7, HyperfineState(2, 2))
STORAGE_1 = HyperfineChannel(RB87, HyperfineState(2, 2), LI7, HyperfineState(2, 2))
ENABLED_0 = HyperfineChannel(RB87, HyperfineState(1, 1), LI7, HyperfineState(1, 1))
ENABLED_1 = HyperfineChannel(RB87, HyperfineState(2, 2), LI7, HyperfineState(1, 1))


def zeeman_parameter(species, b_gauss):
    """Dimensionless field parameter x = g_J * mu_B * B / dE_hf."""
    if b_gauss < 0:
        raise DomainError(f"magnetic field must be >= 0 G, got {b_gauss!r}")
    return species.g_j * BOHR_MAGNETON_HZ_PER_G * b_gauss / species.hyperfine_splitting_hz


def all_states(species):
    """Every |f, m> sublevel of the ground manifold, ordered (f, m) ascending."""
    out = []
    for f in (species.f_lower, species.f_upper):
        for m in range(-f, f + 1):
            out.append(HyperfineState(f, m))
    return out


def breit_rabi_energy(species, state, b_gauss, mode="paper"):
    """Level energy [Hz] of |f, m> at field B [G], relative to the centroid.

    Raises DomainError for states invalid for the species, negative field,
    or a negative radicand 1 + m*x + x^2 (possible for m < 0 at
    intermediate x); negative radicands are hard errors, never clamped.
    """
    _require_mode(mode)
    _require_valid_state(species, state)
    x = zeeman_parameter(species, b_gauss)
    radicand = 1.0 + state.m * x + x * x
    if radicand < 0.0:
        raise DomainError(
            f"negative Breit-Rabi radicand {radicand!r} for {state.label()} at {b_gauss} G")
    sign = 1.0 if state.f == species.f_upper else -1.0
    if mode == "paper":
        offset = -1.0 / 12.0
        nuclear = 0.0
    else:
        offset = -1.0 / (2.0 * (2.0 * species.nuclear_spin + 1.0))
        nuclear = species.g_i * BOHR_MAGNETON_HZ_PER_G * state.m * b_gauss
    return species.hyperfine_splitting_hz * (offset + sign * 0.5 * math.sqrt(radicand)) + nuclear


def transition_frequency(species, upper, lower, b_gauss, mode="paper"):
    """E(upper) - E(lower) [Hz]. The mode offset cancels; modes differ only
    through the g_I term."""
    return (breit_rabi_energy(species, upper, b_gauss, mode=mode)
            - breit_rabi_energy(species, lower, b_gauss, mode=mode))


def field_sensitivity(species, upper, lower, b_gauss, mode="paper"):
    """Analytic derivative d(transition_frequency)/dB [Hz/G].

    Undefined where a stretched-state radicand vanishes (kink point);
    raises DomainError there rather than returning a one-sided value.
    """
    _require_mode(mode)
    _require_valid_state(species, upper)
    _require_valid_state(species, lower)
    x = zeeman_parameter(species, b_gauss)
    dx_db = species.g_j * BOHR_MAGNETON_HZ_PER_G / species.hyperfine_splitting_hz

    def dlevel_db(state):
        radicand = 1.0 + state.m * x + x * x
        if radicand < 0.0:
            raise DomainError(
                f"negative Breit-Rabi radicand for {state.label()} at {b_gauss} G")
        if radicand == 0.0:
            raise DomainError(
                f"field sensitivity undefined at radicand zero for {state.label()} at {b_gauss} G")
        sign = 1.0 if state.f == species.f_upper else -1.0
        slope = sign * (state.m + 2.0 * x) / (4.0 * math.sqrt(radicand))
        nuclear = species.g_i * BOHR_MAGNETON_HZ_PER_G * state.m if mode == "standard" else 0.0
        return species.hyperfine_splitting_hz * slope * dx_db + nuclear

    return dlevel_db(upper) - dlevel_db(lower)


def site_frequency_resolution(sensitivity_hz_per_g, gradient_g_per_cm, spacing_cm):
    """Qubit-frequency difference [Hz] between lattice sites one spacing apart
    in a magnetic gradient."""
    for name, value in (("sensitivity", sensitivity_hz_per_g),
                        ("gradient", gradient_g_per_cm),
                        ("spacing", spacing_cm)):
        if value < 0:
            raise DomainError(f"{name} must be >= 0, got {value!r}")
    return sensitivity_hz_per_g * gradient_g_per_cm * spacing_cm


def resonance_site_count(resonance_width_g, gradient_g_per_cm, spacing_cm):
    """Number of sites per lattice dimension that fit inside a resonance of
    the given width under a field gradient: floor(width / (gradient*spacing))."""
    if resonance_width_g < 0:
        raise DomainError(f"resonance width must be >= 0 G, got {resonance_width_g!r}")
    if gradient_g_per_cm <= 0 or spacing_cm <= 0:
        raise DomainError("gradient and spacing must be > 0 for a site count")
    return int(math.floor(resonance_width_g / (gradient_g_per_cm * spacing_cm)))


def open_decay_channels(channel, b_gauss, mode="paper"):
    """All two-atom channels (same species pair) the input can decay into.

    A channel is open when it conserves m_tot and has strictly lower total
    internal energy. An empty list means the input channel is collisionally
    stable in this model. Results are sorted by energy, lowest first.
    """
    e_in = channel.internal_energy_hz(b_gauss, mode=mode)
    found = []
    for sa in all_states(channel.species_a):
        for sb in all_states(channel.species_b):
            if sa.m + sb.m != channel.m_tot:
                continue
            if sa == channel.state_a and sb == channel.state_b:
                continue
            cand = HyperfineChannel(channel.species_a, sa, channel.species_b, sb)
            e = cand.internal_energy_hz(b_gauss, mode=mode)
            if e < e_in:
                found.append((e, cand))
    found.sort(key=lambda pair: (pair[0], pair[1].state_a.f, pair[1].state_a.m))
    return [cand for _, cand in found]
