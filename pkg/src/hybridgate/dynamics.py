"""Two- and three-level coherent dynamics: analytic Rabi formulas and a
deterministic fixed-step Schrodinger integrator.

The Lambda system is written in the rotating frame with the atom-pair state
at zero energy, the excited molecular state at -delta_e and the target
molecular state at -delta; couplings are real, omega_p/2 and omega_s/2.
All frequencies are angular (rad/s) with hbar absorbed, so i dpsi/dt = H psi.

Integration is classical 4th-order Runge-Kutta with a fixed substep chosen
so that ||H||*h stays at STEP_PHASE_TARGET (hard limit STEP_PHASE_MAX,
checked). For a time-independent H the classical RK4 update equals
multiplication by the 4th-order Taylor polynomial of exp(-i*H*h), which a
fast path exploits through matrix binary powering; the math is identical.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericalFailure, StepSizeError

STEP_PHASE_TARGET = 0.01   # default ||H||_F * h per RK4 substep
STEP_PHASE_MAX = 0.05      # hard precondition on ||H||_F * h
NORM_DRIFT_LIMIT = 1e-7    # max allowed |sum|c|^2 - 1| for unitary evolution

LAMBDA_LABELS = ("atoms", "excited", "molecule")


@dataclass(frozen=True)
class ComplexAmplitudeVector:
    """Normalized state vector with named basis states."""

    amplitudes: np.ndarray
    labels: tuple

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        if amps.ndim != 1 or len(amps) != len(self.labels):
            raise DomainError("amplitudes and labels must have matching 1-d length")
        norm_sq = float(np.sum(np.abs(amps) ** 2))
        if abs(norm_sq - 1.0) > 1e-9:
            raise DomainError(f"state not normalized: sum |c|^2 = {norm_sq!r}")

    def populations(self):
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class Trajectory:
    """Integrator output: states on the requested time grid."""

    times: np.ndarray
    amplitudes: np.ndarray   # shape (n_times, dim)
    labels: tuple

    def populations(self):
        return np.abs(self.amplitudes) ** 2

    def norms_squared(self):
        return np.sum(np.abs(self.amplitudes) ** 2, axis=1)

    @property
    def norm_drift(self):
        return float(np.max(np.abs(self.norms_squared() - 1.0)))

    def final_populations(self):
        return np.abs(self.amplitudes[-1]) ** 2


@dataclass(frozen=True)
class TwoLevelParams:
    """Effective two-level drive: Rabi frequency and two-photon detuning."""

    omega_r_rad_s: float
    delta_rad_s: float = 0.0

    def __post_init__(self):
        if self.omega_r_rad_s < 0:
            raise DomainError(f"omega_r must be >= 0, got {self.omega_r_rad_s!r}")

    @property
    def generalized_rabi_rad_s(self):
        return math.hypot(self.omega_r_rad_s, self.delta_rad_s)


@dataclass(frozen=True)
class LambdaParams:
    """Pump/Stokes drive of the three-level system.

    gamma_e adds a loss term -i*gamma_e/2 on the excited diagonal.
    stark_compensated shifts the bare two-photon detuning so the dressed
    (light-shifted) detuning equals delta_rad_s.
    """

    omega_p_rad_s: float
    omega_s_rad_s: float
    delta_e_rad_s: float
    delta_rad_s: float = 0.0
    gamma_e_rad_s: float = 0.0
    stark_compensated: bool = True

    def __post_init__(self):
        if self.gamma_e_rad_s < 0:
            raise DomainError(f"gamma_e must be >= 0, got {self.gamma_e_rad_s!r}")


@dataclass(frozen=True)
class EffectiveTwoLevel:
    """Far-detuned reduction of the Lambda system."""

    omega_r_rad_s: float
    light_shift_pump_rad_s: float    # shift of the atom-pair level
    light_shift_stokes_rad_s: float  # shift of the molecular level


@dataclass(frozen=True)
class PulseEnvelope:
    """Time envelope of one laser pulse; zero outside [start, start+duration]."""

    shape: str
    peak_rad_s: float
    start_s: float
    duration_s: float
    center_s: float = None
    rms_width_s: float = None

    def __post_init__(self):
        if self.shape not in ("rectangular", "gaussian"):
            raise DomainError(f"shape must be 'rectangular' or 'gaussian', got {self.shape!r}")
        if not self.duration_s > 0:
            raise DomainError(f"duration must be > 0, got {self.duration_s!r}")
        if self.peak_rad_s < 0:
            raise DomainError(f"peak amplitude must be >= 0, got {self.peak_rad_s!r}")
        if self.shape == "gaussian":
            if self.center_s is None or self.rms_width_s is None:
                raise DomainError("gaussian envelope needs center_s and rms_width_s")
            if not self.rms_width_s > 0:
                raise DomainError(f"rms width must be > 0, got {self.rms_width_s!r}")

    @classmethod
    def rectangular(cls, peak_rad_s, start_s, duration_s):
        return cls("rectangular", peak_rad_s, start_s, duration_s)

    @classmethod
    def gaussian(cls, peak_rad_s, center_s, rms_width_s, cutoff_sigmas=4.0):
        start = center_s - cutoff_sigmas * rms_width_s
        return cls("gaussian", peak_rad_s, start, 2.0 * cutoff_sigmas * rms_width_s,
                   center_s=center_s, rms_width_s=rms_width_s)

    @property
    def end_s(self):
        return self.start_s + self.duration_s

    def value(self, t):
        if t < self.start_s or t >= self.end_s:
            return 0.0
        if self.shape == "rectangular":
            return self.peak_rad_s
        u = (t - self.center_s) / self.rms_width_s
        return self.peak_rad_s * math.exp(-0.5 * u * u)

    def values(self, times):
        times = np.asarray(times, dtype=float)
        inside = (times >= self.start_s) & (times < self.end_s)
        if self.shape == "rectangular":
            return np.where(inside, self.peak_rad_s, 0.0)
        u = (times - self.center_s) / self.rms_width_s
        return np.where(inside, self.peak_rad_s * np.exp(-0.5 * u * u), 0.0)


def two_level_population(params, t):
    """Transferred population |c_g(t)|^2 of a two-level drive started in the
    other state: (omega^2/W^2) sin^2(W t / 2), W = sqrt(omega^2 + delta^2).

    Accepts scalar or array t >= 0; returns 0 when omega = delta = 0.
    """
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise DomainError("time must be >= 0")
    w = params.generalized_rabi_rad_s
    if w == 0.0:
        out = np.zeros_like(t_arr)
        return float(out) if np.isscalar(t) else out
    amp = (params.omega_r_rad_s / w) ** 2
    out = amp * np.sin(0.5 * w * t_arr) ** 2
    return float(out) if np.isscalar(t) else out


def effective_rabi(params):
    """Reduce the far-detuned Lambda system to a two-level drive.

    Returns the effective Rabi frequency omega_p*omega_s/(2*delta_e) and the
    two light shifts omega_p^2/(4*delta_e), omega_s^2/(4*delta_e).
    """
    if params.delta_e_rad_s == 0.0:
        raise DomainError("effective two-level reduction requires delta_e != 0")
    de = params.delta_e_rad_s
    return EffectiveTwoLevel(
        omega_r_rad_s=params.omega_p_rad_s * params.omega_s_rad_s / (2.0 * de),
        light_shift_pump_rad_s=params.omega_p_rad_s ** 2 / (4.0 * de),
        light_shift_stokes_rad_s=params.omega_s_rad_s ** 2 / (4.0 * de),
    )


def pi_pulse_duration(params):
    """Duration pi / sqrt(omega^2 + delta^2) of a generalized pi pulse."""
    w = params.generalized_rabi_rad_s
    if w == 0.0:
        raise DomainError("pi pulse undefined for omega_r = delta = 0")
    return math.pi / w


def _taylor4_step(h_matrix, h):
    """One-substep RK4 update matrix for constant H: 4th-order Taylor
    polynomial of exp(-i*H*h)."""
    a = -1j * h * h_matrix
    dim = h_matrix.shape[0]
    m = np.eye(dim, dtype=complex)
    term = np.eye(dim, dtype=complex)
    for k in range(1, 5):
        term = term @ a / k
        m = m + term
    return m


def _frobenius(h_matrix):
    return float(np.linalg.norm(h_matrix))


def _is_hermitian(h_matrix):
    scale = max(1.0, float(np.max(np.abs(h_matrix))))
    return float(np.max(np.abs(h_matrix - h_matrix.conj().T))) <= 1e-12 * scale


def integrate_schrodinger(hamiltonian, psi0, t_grid, substeps=None, constant=False,
                          step_phase=STEP_PHASE_TARGET):
    """Integrate i dpsi/dt = H(t) psi on a uniform time grid.

    Parameters
    ----------
    hamiltonian : callable t -> (d, d) complex ndarray
    psi0 : ComplexAmplitudeVector or normalized 1-d array
    t_grid : increasing, uniform array of output times
    substeps : RK4 substeps per grid interval; derived from step_phase and
        the sampled max Frobenius norm of H when omitted
    constant : fast path for time-independent H (identical arithmetic
        through the Taylor-4 update matrix)

    Raises StepSizeError when max||H||*h exceeds the hard limit, and
    NumericalFailure when a Hermitian run drifts from unit norm by more
    than NORM_DRIFT_LIMIT.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid.ndim != 1 or len(t_grid) < 2:
        raise DomainError("t_grid must be a 1-d array with at least two times")
    dts = np.diff(t_grid)
    dt = float(dts[0])
    if dt <= 0 or np.max(np.abs(dts - dt)) > 1e-9 * abs(dt):
        raise DomainError("t_grid must be uniform and increasing")

    if isinstance(psi0, ComplexAmplitudeVector):
        labels = psi0.labels
        psi = psi0.amplitudes.copy()
    else:
        psi = np.asarray(psi0, dtype=complex).copy()
        labels = tuple(f"state{i}" for i in range(len(psi)))
        norm_sq = float(np.sum(np.abs(psi) ** 2))
        if abs(norm_sq - 1.0) > 1e-9:
            raise DomainError(f"psi0 not normalized: sum |c|^2 = {norm_sq!r}")

    n_intervals = len(t_grid) - 1
    if constant:
        h0 = np.asarray(hamiltonian(t_grid[0]), dtype=complex)
        norm_max = _frobenius(h0)
        hermitian = _is_hermitian(h0)
    else:
        # Max norm sampled on grid points and midpoints (the RK4 stencil).
        probes = np.concatenate([t_grid, t_grid[:-1] + 0.5 * dt])
        sampled = [np.asarray(hamiltonian(t), dtype=complex) for t in probes]
        norm_max = max(_frobenius(h) for h in sampled)
        hermitian = all(_is_hermitian(h) for h in sampled)

    if substeps is None:
        substeps = max(1, int(math.ceil(dt * norm_max / step_phase))) if norm_max > 0 else 1
    if substeps < 1:
        raise DomainError(f"substeps must be >= 1, got {substeps!r}")
    h = dt / substeps
    if norm_max * h > STEP_PHASE_MAX:
        raise StepSizeError(
            f"step size too coarse: max||H||*h = {norm_max * h:.3g} > {STEP_PHASE_MAX}; "
            f"increase substeps or refine t_grid")

    out = np.empty((len(t_grid), len(psi)), dtype=complex)
    out[0] = psi

    if constant:
        m_interval = np.linalg.matrix_power(_taylor4_step(h0, h), substeps)
        for i in range(1, len(t_grid)):
            psi = m_interval @ psi
            out[i] = psi
    else:
        h_next = np.asarray(hamiltonian(t_grid[0]), dtype=complex)
        for i in range(n_intervals):
            t0 = t_grid[i]
            for k in range(substeps):
                t = t0 + k * h
                h_a = h_next
                h_mid = np.asarray(hamiltonian(t + 0.5 * h), dtype=complex)
                h_next = np.asarray(hamiltonian(t + h), dtype=complex)
                k1 = -1j * (h_a @ psi)
                k2 = -1j * (h_mid @ (psi + (0.5 * h) * k1))
                k3 = -1j * (h_mid @ (psi + (0.5 * h) * k2))
                k4 = -1j * (h_next @ (psi + h * k3))
                psi = psi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            out[i + 1] = psi

    traj = Trajectory(times=t_grid, amplitudes=out, labels=labels)
    if hermitian and traj.norm_drift > NORM_DRIFT_LIMIT:
        raise NumericalFailure(
            f"norm drift {traj.norm_drift:.3e} exceeds {NORM_DRIFT_LIMIT} on a unitary run")
    return traj


def compensated_bare_detuning(params):
    """Bare two-photon detuning whose dressed value equals params.delta_rad_s.

    The dressed detuning is delta_bare + shift_pump - shift_stokes, so
    compensation subtracts the differential light shift.
    """
    if not params.stark_compensated:
        return params.delta_rad_s
    shifts = effective_rabi(params)
    return params.delta_rad_s - (shifts.light_shift_pump_rad_s - shifts.light_shift_stokes_rad_s)


def lambda_matrix(params, omega_p=None, omega_s=None, delta_bare=None):
    """Rotating-frame Lambda Hamiltonian [rad/s] for given instantaneous
    couplings; defaults to the constant values in params."""
    op = params.omega_p_rad_s if omega_p is None else omega_p
    os_ = params.omega_s_rad_s if omega_s is None else omega_s
    delta = params.delta_rad_s if delta_bare is None else delta_bare
    h = np.array([[0.0, 0.5 * op, 0.0],
                  [0.5 * op, -params.delta_e_rad_s, 0.5 * os_],
                  [0.0, 0.5 * os_, -delta]], dtype=complex)
    if params.gamma_e_rad_s > 0.0:
        h[1, 1] -= 0.5j * params.gamma_e_rad_s
    return h


def raman_trajectory(params, duration_s, n_points=241):
    """Integrate a rectangular Raman pulse (constant H) from the atom-pair
    state over [0, duration]."""
    if not duration_s > 0:
        raise DomainError(f"duration must be > 0, got {duration_s!r}")
    h = lambda_matrix(params, delta_bare=compensated_bare_detuning(params))
    psi0 = ComplexAmplitudeVector(np.array([1.0, 0.0, 0.0], dtype=complex), LAMBDA_LABELS)
    grid = np.linspace(0.0, duration_s, n_points)
    return integrate_schrodinger(lambda t: h, psi0, grid, constant=True)


def simulate_raman_pi_pulse(params, duration_s, n_points=241):
    """Final populations (P_atoms, P_excited, P_molecule) after a rectangular
    Raman pulse of the given duration."""
    traj = raman_trajectory(params, duration_s, n_points=n_points)
    p_a, p_e, p_g = traj.final_populations()
    return float(p_a), float(p_e), float(p_g)


def stirap_trajectory(pump, stokes, params, n_points=601):
    """Integrate the Lambda system under Gaussian pump and Stokes envelopes.

    Light-shift compensation does not apply here (the envelopes are resolved
    exactly, and delta_e may be zero); the bare detunings in params are used.
    """
    for name, env in (("pump", pump), ("stokes", stokes)):
        if env.shape != "gaussian":
            raise DomainError(f"{name} envelope must be gaussian for this transfer")
    t0 = min(pump.start_s, stokes.start_s)
    t1 = max(pump.end_s, stokes.end_s)

    def hfunc(t):
        return lambda_matrix(params, omega_p=pump.value(t), omega_s=stokes.value(t),
                             delta_bare=params.delta_rad_s)

    psi0 = ComplexAmplitudeVector(np.array([1.0, 0.0, 0.0], dtype=complex), LAMBDA_LABELS)
    grid = np.linspace(t0, t1, n_points)
    return integrate_schrodinger(hfunc, psi0, grid)


def simulate_stirap(pump, stokes, params, n_points=601):
    """Transfer efficiency: final molecular population of the pulse sequence."""
    traj = stirap_trajectory(pump, stokes, params, n_points=n_points)
    return float(traj.final_populations()[2])
