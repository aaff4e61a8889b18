"""Physical model of N two-level emitters in a bidirectional waveguide.

Couplings: two emitters separated by propagation phase φ acquire a
dissipative coupling Γ₁₂ = √(γ₁ᵂγ₂ᵂ)cosφ and a dispersive coupling
J₁₂ = ½√(γ₁ᵂγ₂ᵂ)sinφ, with γᵂ = βΓ the guided decay rate.

Directional field operators (emitter 1 as phase reference):

    E_L = i Σ_m √(γᵂ_m/2) e^{+iφ_1m} σ⁻_m
    E_R = i Σ_m √(γᵂ_m/2) e^{−iφ_1m} σ⁻_m

Master equation (rotating frame at the drive, detunings emitter−laser):

    H   = Σ Δ_m σ⁺σ⁻ + Σ_{m<n} J_mn(σ⁺_mσ⁻_n + h.c.)
          + ½ Σ Ω_m(t)(e^{iθ_m}σ⁺_m + h.c.)
    L_k = E_L, E_R, √((1−β_m)Γ_m) σ⁻_m, √(γ_d,m/2) σᶻ_m

The collective dissipator from {E_L, E_R} is algebraically identical to the
standard pairwise form with cross rates Γ_mn; the residual-loss and σᶻ
channels model non-guided decay and pure dephasing.
"""

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from . import hilbert


@dataclass(frozen=True)
class EmitterParams:
    """Rates of one emitter; all angular rates in rad/ns.

    ``fano_xi`` (weak-cavity Fano factor) is carried through configs for
    completeness but enters no computation here.
    """
    gamma_total: float
    beta: float
    detuning: float = 0.0
    dephasing: float = 0.0
    spectral_diffusion_sigma: float = 0.0
    permanent_dipole: float = 0.0   # GHz/mV, config-level voltage map only
    fano_xi: float = 0.0

    def __post_init__(self):
        if self.gamma_total <= 0:
            raise ValueError("gamma_total must be > 0")
        if not 0.0 <= self.beta <= 1.0:
            raise ValueError("beta must lie in [0, 1]")
        for name in ("dephasing", "spectral_diffusion_sigma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be >= 0")

    @property
    def gamma_wg(self):
        """Decay rate into the guided mode, γᵂ = βΓ."""
        return self.beta * self.gamma_total


@dataclass(frozen=True)
class WaveguideSystem:
    """N emitters with pairwise coupling phases.

    ``coupling_phase`` is a scalar φ for N=2 or a symmetric matrix φ_mn
    with zero diagonal.  Because the directional field operators are fixed
    by the phases relative to emitter 1, an N>2 matrix must be consistent
    with positions on a line: φ_mn = |φ_1m − φ_1n|.
    """
    emitters: tuple
    coupling_phase: object = 0.0

    def __post_init__(self):
        emitters = tuple(self.emitters)
        if len(emitters) < 1:
            raise ValueError("need at least one emitter")
        hilbert._check_n(len(emitters))
        object.__setattr__(self, "emitters", emitters)
        n = len(emitters)
        phi = self.coupling_phase
        if np.isscalar(phi):
            if n > 2 and phi != 0.0:
                raise ValueError("scalar coupling phase only defined for N <= 2")
            mat = np.zeros((n, n))
            if n == 2:
                mat[0, 1] = mat[1, 0] = float(phi)
        else:
            mat = np.array(phi, dtype=float)
            if mat.shape != (n, n):
                raise ValueError(f"coupling phase matrix must be {n}x{n}")
            if not np.allclose(mat, mat.T, atol=1e-12):
                raise ValueError("coupling phase matrix must be symmetric")
            if not np.allclose(np.diag(mat), 0.0, atol=1e-12):
                raise ValueError("coupling phase matrix must have zero diagonal")
            ref = mat[0]
            if not np.allclose(np.abs(ref[:, None] - ref[None, :]), mat,
                               atol=1e-9):
                raise ValueError(
                    "coupling phases inconsistent with collinear emitters: "
                    "need phi_mn = |phi_1m - phi_1n|")
        object.__setattr__(self, "_phase_matrix", mat)

    @property
    def n(self):
        return len(self.emitters)

    @property
    def phase_matrix(self):
        return self._phase_matrix.copy()

    def phase_from_first(self, m):
        """φ_1m, the propagation phase of emitter m relative to emitter 1."""
        return self._phase_matrix[0, m - 1]

    def with_detunings(self, detunings):
        """Copy of the system with per-emitter detunings replaced."""
        detunings = np.broadcast_to(np.asarray(detunings, float), (self.n,))
        new = tuple(dataclasses.replace(e, detuning=float(d))
                    for e, d in zip(self.emitters, detunings))
        return WaveguideSystem(new, self.coupling_phase)

    def with_detuning_offsets(self, offsets):
        """Copy with offsets added to the existing detunings."""
        offsets = np.broadcast_to(np.asarray(offsets, float), (self.n,))
        return self.with_detunings(
            [e.detuning + float(d) for e, d in zip(self.emitters, offsets)])

    def detunings(self):
        return np.array([e.detuning for e in self.emitters])


def coupling_rates(gamma_wg_1, gamma_wg_2, phi):
    """(Γ₁₂, J₁₂) for two guided decay rates and coupling phase φ."""
    if gamma_wg_1 < 0 or gamma_wg_2 < 0:
        raise ValueError("guided rates must be >= 0")
    root = np.sqrt(gamma_wg_1 * gamma_wg_2)
    return root * np.cos(phi), 0.5 * root * np.sin(phi)


def field_operator(system, direction):
    """Collective field operator E_L or E_R of the guided mode."""
    if direction not in ("L", "R"):
        raise ValueError("direction must be 'L' or 'R'")
    sign = 1.0 if direction == "L" else -1.0
    n = system.n
    op = np.zeros((2 ** n, 2 ** n), dtype=complex)
    for m in range(1, n + 1):
        gw = system.emitters[m - 1].gamma_wg
        phase = np.exp(sign * 1j * system.phase_from_first(m))
        op += np.sqrt(gw / 2.0) * phase * hilbert.lowering_operator(n, m)
    return 1j * op


def effective_hamiltonian(system, detunings=None):
    """Non-Hermitian single-excitation Hamiltonian (N×N).

    Diagonal Δ_m − iΓ_m/2; off-diagonal −(i/2) e^{iφ_mn} √(β_mβ_nΓ_mΓ_n),
    which packages J_mn − iΓ_mn/2 in one complex entry.
    """
    n = system.n
    if detunings is None:
        detunings = system.detunings()
    detunings = np.broadcast_to(np.asarray(detunings, float), (n,))
    h = np.zeros((n, n), dtype=complex)
    phase = system._phase_matrix
    for m in range(n):
        em = system.emitters[m]
        h[m, m] = detunings[m] - 0.5j * em.gamma_total
        for k in range(m + 1, n):
            ek = system.emitters[k]
            off = -0.5j * np.exp(1j * phase[m, k]) * np.sqrt(
                em.gamma_wg * ek.gamma_wg)
            h[m, k] = off
            h[k, m] = off
    return h


@dataclass(frozen=True)
class PulseSpec:
    """Gaussian pulse envelope, parameterized by area (π = full inversion).

    The envelope is shared by all emitters; emitter m receives the pulse
    area ``area * weight_m`` where the weights are the DriveConfig
    rabi_amplitude entries.  Gaussian support is truncated at ±6σ.
    """
    sigma_t: float = 0.03
    area: float = np.pi
    repetition_period: float = 13.6
    center: float = None

    def __post_init__(self):
        if self.sigma_t <= 0:
            raise ValueError("sigma_t must be > 0")
        if self.repetition_period <= 0:
            raise ValueError("repetition_period must be > 0")
        if self.center is None:
            object.__setattr__(self, "center", 6.0 * self.sigma_t)

    @property
    def peak(self):
        """Peak Rabi rate of a unit-weight pulse: area = peak·σ√(2π)."""
        return self.area / (self.sigma_t * np.sqrt(2.0 * np.pi))

    @property
    def support(self):
        return (self.center - 6.0 * self.sigma_t,
                self.center + 6.0 * self.sigma_t)

    def envelope(self, t):
        """Unit-weight Rabi rate at time t (first period only)."""
        t = np.asarray(t, dtype=float)
        x = (t - self.center) / self.sigma_t
        out = np.where(np.abs(x) <= 6.0, self.peak * np.exp(-0.5 * x * x), 0.0)
        return out


@dataclass(frozen=True)
class DriveConfig:
    """Classical drive: per-emitter Rabi amplitudes and phases.

    CW mode: rabi_amplitude in rad/ns, constant in time.  Pulsed mode:
    rabi_amplitude entries are dimensionless weights on the shared pulse.
    """
    rabi_amplitude: tuple
    drive_phase: tuple
    mode: str = "cw"
    pulse: PulseSpec = None

    def __post_init__(self):
        rabi = tuple(float(x) for x in np.atleast_1d(self.rabi_amplitude))
        phase = tuple(float(x) for x in np.atleast_1d(self.drive_phase))
        if len(rabi) != len(phase):
            raise ValueError("rabi_amplitude and drive_phase lengths differ")
        if any(x < 0 for x in rabi):
            raise ValueError("Rabi amplitudes must be >= 0")
        if self.mode not in ("cw", "pulsed"):
            raise ValueError("mode must be 'cw' or 'pulsed'")
        if self.mode == "pulsed" and self.pulse is None:
            raise ValueError("pulsed mode requires a PulseSpec")
        object.__setattr__(self, "rabi_amplitude", rabi)
        object.__setattr__(self, "drive_phase", phase)

    @classmethod
    def off(cls, n):
        return cls((0.0,) * n, (0.0,) * n, "cw")

    @property
    def n(self):
        return len(self.rabi_amplitude)

    @property
    def is_cw(self):
        return self.mode == "cw"

    def validate_against(self, system):
        if self.n != system.n:
            raise ValueError(
                f"drive has {self.n} channels for {system.n} emitters")
        if self.mode == "pulsed":
            max_lifetime = max(1.0 / e.gamma_total for e in system.emitters)
            if self.pulse.repetition_period <= 10.0 * max_lifetime:
                raise ValueError(
                    "repetition_period must exceed 10x the longest lifetime")

    def rabi_at(self, t):
        """Per-emitter Rabi rates Ω_m(t) in rad/ns (nearest pulse only)."""
        if self.is_cw:
            return np.array(self.rabi_amplitude)
        period = self.pulse.repetition_period
        t_local = t - period * np.floor((t - self.pulse.center) / period + 0.5)
        return np.array(self.rabi_amplitude) * self.pulse.envelope(t_local)

    def breakpoints(self, t0, t1):
        """Times in (t0, t1) where the envelope turns on/off; integrator
        segments must not step across a pulse."""
        if self.is_cw or all(r == 0 for r in self.rabi_amplitude):
            return []
        period = self.pulse.repetition_period
        lo, hi = self.pulse.support
        pts = []
        k = int(np.floor((t0 - hi) / period))
        while True:
            a, b = lo + k * period, hi + k * period
            if a > t1:
                break
            for x in (a, b):
                if t0 < x < t1:
                    pts.append(x)
            k += 1
        return pts


def _spre_spost(a, b):
    """Superoperator for ρ ↦ a ρ b on C-order flattened ρ."""
    return np.kron(a, b.T)


class LindbladGenerator:
    """dρ/dt = L(t)[ρ] for a WaveguideSystem under a DriveConfig.

    The superoperator acts on C-order flattened density matrices.  The
    drive enters linearly, so L(t) = L₀ + Σ_m Ω_m(t) D_m with static D_m.
    """

    def __init__(self, system, drive=None):
        if drive is None:
            drive = DriveConfig.off(system.n)
        drive.validate_against(system)
        self.system = system
        self.drive = drive
        n = system.n
        self.dim = 2 ** n

        h0 = np.zeros((self.dim, self.dim), dtype=complex)
        for m in range(1, n + 1):
            h0 += system.emitters[m - 1].detuning * hilbert.number_operator(n, m)
        for m in range(1, n + 1):
            for k in range(m + 1, n + 1):
                _, j_mk = coupling_rates(
                    system.emitters[m - 1].gamma_wg,
                    system.emitters[k - 1].gamma_wg,
                    system._phase_matrix[m - 1, k - 1])
                sm = hilbert.lowering_operator(n, m)
                sk = hilbert.lowering_operator(n, k)
                h0 += j_mk * (sm.conj().T @ sk + sk.conj().T @ sm)
        self.hamiltonian_static = h0

        jumps = [field_operator(system, "L"), field_operator(system, "R")]
        for m in range(1, n + 1):
            em = system.emitters[m - 1]
            resid = (1.0 - em.beta) * em.gamma_total
            if resid > 0:
                jumps.append(np.sqrt(resid) * hilbert.lowering_operator(n, m))
            if em.dephasing > 0:
                jumps.append(np.sqrt(em.dephasing / 2.0) * hilbert.pauli_z(n, m))
        self.jump_operators = jumps

        eye = np.eye(self.dim)
        l0 = -1j * (_spre_spost(h0, eye) - _spre_spost(eye, h0))
        for jop in jumps:
            jdj = jop.conj().T @ jop
            l0 += _spre_spost(jop, jop.conj().T)
            l0 -= 0.5 * (_spre_spost(jdj, eye) + _spre_spost(eye, jdj))
        self.static_superoperator = l0

        # unit-Rabi drive superoperators, one per driven emitter
        self._drive_ops = []
        for m in range(1, n + 1):
            w = drive.rabi_amplitude[m - 1]
            if w == 0:
                self._drive_ops.append(None)
                continue
            th = drive.drive_phase[m - 1]
            sm = hilbert.lowering_operator(n, m)
            hd = 0.5 * (np.exp(1j * th) * sm.conj().T + np.exp(-1j * th) * sm)
            self._drive_ops.append(
                -1j * (_spre_spost(hd, eye) - _spre_spost(eye, hd)))

    @property
    def is_time_dependent(self):
        return (not self.drive.is_cw) and any(
            d is not None for d in self._drive_ops)

    def hamiltonian(self, t=0.0):
        n = self.system.n
        h = self.hamiltonian_static.copy()
        rabi = self.drive.rabi_at(t)
        for m in range(1, n + 1):
            if rabi[m - 1] == 0:
                continue
            th = self.drive.drive_phase[m - 1]
            sm = hilbert.lowering_operator(n, m)
            h += 0.5 * rabi[m - 1] * (np.exp(1j * th) * sm.conj().T
                                      + np.exp(-1j * th) * sm)
        return h

    def superoperator(self, t=0.0):
        l = self.static_superoperator
        if self.drive.is_cw:
            rabi = self.drive.rabi_amplitude
            for w, d in zip(rabi, self._drive_ops):
                if d is not None:
                    l = l + w * d
            return l
        env = self.drive.rabi_at(t)
        out = l.copy()
        for w, d in zip(env, self._drive_ops):
            if d is not None and w != 0.0:
                out += w * d
        return out

    def apply(self, t, rho_vec):
        """Right-hand side L(t)·vec(ρ) without materializing L(t)."""
        out = self.static_superoperator @ rho_vec
        env = self.drive.rabi_at(t) if not self.drive.is_cw \
            else np.array(self.drive.rabi_amplitude)
        for w, d in zip(env, self._drive_ops):
            if d is not None and w != 0.0:
                out += w * (d @ rho_vec)
        return out
