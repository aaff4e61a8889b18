"""Time propagation, steady states, and one- and two-time correlations.

Two-time quantities use the quantum regression theorem: with Λ_τ the same
propagator that evolves ρ,

    G_αβ(τ) = Tr[E_β†E_β · Λ_τ(E_α ρ E_α†)].

CW correlations start from the steady state and are τ-stationary; pulsed
correlations are computed as fully time-resolved maps G(t₁, t₂) over one
pulse window (same-pulse) and across one repetition period
(different-pulse), then integrated along the diagonal.
"""

import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

from .errors import DegenerateSteadyStateError, IntegrationError, NumericalError
from .hilbert import DensityState
from .model import DriveConfig, LindbladGenerator, field_operator

NEGATIVE_G_TOL = 1e-10  # regression numerics may produce tiny negatives


@dataclass
class Trajectory:
    """Propagated states on a time grid, with the drive that produced them."""
    times: np.ndarray
    states: np.ndarray          # (nt, dim, dim) complex
    drive: DriveConfig

    def state(self, i):
        return DensityState(self.states[i], validate=False)

    def expectation(self, op):
        """⟨op⟩(t) for all grid times."""
        return np.einsum("tij,ji->t", self.states, np.asarray(op))


def _as_matrix(state):
    if isinstance(state, DensityState):
        return state.matrix
    state = np.asarray(state, dtype=complex)
    if state.ndim == 1:
        return np.outer(state, state.conj())
    return state


def _segments(drive, t0, t1):
    pts = [t0] + drive.breakpoints(t0, t1) + [t1]
    return [(a, b) for a, b in zip(pts[:-1], pts[1:]) if b > a]


def _pulse_active(drive, a, b):
    if drive.is_cw or all(r == 0 for r in drive.rabi_amplitude):
        return False
    period = drive.pulse.repetition_period
    lo, hi = drive.pulse.support
    k = int(np.floor((a - hi) / period))
    while lo + k * period <= b:
        if hi + k * period > a:
            return True
        k += 1
    return False


def _integrate(gen, y0, t0, t1, t_eval, rtol, atol):
    """solve_ivp across drive breakpoints; returns states at t_eval."""
    drive = gen.drive
    if gen.is_time_dependent:
        def rhs(t, y):
            return gen.apply(t, y)
    else:
        l_static = gen.superoperator()

        def rhs(t, y):
            return l_static @ y

    out = np.empty((len(t_eval), y0.size), dtype=complex)
    filled = 0
    y = y0
    for a, b in _segments(drive, t0, t1):
        inside = [t for t in t_eval[filled:] if a - 1e-12 <= t <= b + 1e-12]
        # the segment end must be evaluated so the next segment continues
        # from the true state, even when it is not a requested grid point
        eval_pts = list(inside)
        if not eval_pts or eval_pts[-1] < b - 1e-12:
            eval_pts.append(b)
        kwargs = {}
        if _pulse_active(drive, a, b):
            kwargs["max_step"] = drive.pulse.sigma_t / 5.0
        sol = solve_ivp(rhs, (a, b), y, method="RK45", t_eval=eval_pts,
                        rtol=rtol, atol=atol, dense_output=False, **kwargs)
        if not sol.success:
            raise IntegrationError(
                f"integrator failed near t = {sol.t[-1] if len(sol.t) else a:.6g} ns: "
                f"{sol.message}", t=float(sol.t[-1]) if len(sol.t) else a)
        if inside:
            out[filled:filled + len(inside)] = sol.y[:, :len(inside)].T
            filled += len(inside)
        y = sol.y[:, -1]
    return out, y


def propagate(initial, system, drive, t_grid, rtol=1e-10, atol=1e-12,
              validate=True):
    """Propagate a density state along t_grid (must start at 0, monotone).

    Every stored state is checked against the DensityState invariants
    unless ``validate=False``; total trace drift beyond 1e-8 raises.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    if t_grid[0] != 0.0:
        raise ValueError("t_grid must start at 0")
    if np.any(np.diff(t_grid) <= 0):
        raise ValueError("t_grid must be strictly increasing")
    gen = LindbladGenerator(system, drive)
    rho0 = _as_matrix(initial)
    if rho0.shape != (gen.dim, gen.dim):
        raise ValueError("initial state dimension mismatch")
    ys, _ = _integrate(gen, rho0.reshape(-1), 0.0, float(t_grid[-1]),
                       list(t_grid), rtol, atol)
    states = ys.reshape(len(t_grid), gen.dim, gen.dim)
    traces = np.einsum("tii->t", states).real
    drift = np.max(np.abs(traces - 1.0))
    if drift > 1e-8:
        raise NumericalError(f"trace drift {drift:.2e} exceeds 1e-8")
    if validate:
        for s in states:
            DensityState(s)
    return Trajectory(times=t_grid, states=states, drive=drive)


def steady_state(system, drive):
    """Unique steady state of the CW-driven generator.

    Uniqueness is certified by the second-smallest singular value of the
    superoperator exceeding 1e-10; the returned state satisfies
    ‖L(ρ_ss)‖ ≤ 1e-11 and has unit trace.
    """
    if not drive.is_cw:
        raise ValueError("steady_state requires a CW drive")
    gen = LindbladGenerator(system, drive)
    l = gen.superoperator()
    _, s, vh = np.linalg.svd(l)
    if s[-2] <= 1e-10:
        raise DegenerateSteadyStateError(
            f"null space is degenerate (second singular value {s[-2]:.2e})")
    rho = vh[-1].conj().reshape(gen.dim, gen.dim)
    rho = (rho + rho.conj().T) / 2.0
    rho = rho / np.trace(rho).real
    residual = np.max(np.abs(l @ rho.reshape(-1)))
    if residual > 1e-11:
        raise NumericalError(f"steady-state residual {residual:.2e} > 1e-11")
    return DensityState(rho)


@dataclass
class CorrelationResult:
    """G(τ) values with clipping diagnostics."""
    tau: np.ndarray
    values: np.ndarray
    clipped: int = 0            # entries below -NEGATIVE_G_TOL before clip
    min_raw: float = 0.0


def _trace_weight(op):
    """Row vector w with Tr[op·X] = w @ vec(X) for C-order vec."""
    return np.asarray(op).T.reshape(-1)


def _clip_correlations(tau, raw):
    clipped = int(np.sum(raw < -NEGATIVE_G_TOL))
    if clipped:
        warnings.warn(
            f"{clipped} correlation values below -{NEGATIVE_G_TOL:g} clipped "
            f"to zero (min {raw.min():.3e})", RuntimeWarning)
    return CorrelationResult(tau=tau, values=np.clip(raw, 0.0, None),
                             clipped=clipped, min_raw=float(raw.min()))


def two_time_correlation(system, drive, a_op, b_op, rho, tau_grid,
                         t_start=0.0, rtol=1e-10, atol=1e-12):
    """G(τ) = Tr[B†B Λ_τ(A ρ A†)] via the quantum regression theorem.

    ``rho`` is the state at absolute time ``t_start`` (the steady state for
    CW problems).  Negative values beyond the 1e-10 tolerance are clipped
    with a warning and counted in the result.
    """
    tau_grid = np.asarray(tau_grid, dtype=float)
    if np.any(tau_grid < 0) or np.any(np.diff(tau_grid) <= 0):
        raise ValueError("tau_grid must be nonnegative and increasing")
    gen = LindbladGenerator(system, drive)
    rho_m = _as_matrix(rho)
    seed = (a_op @ rho_m @ a_op.conj().T).reshape(-1)
    w = _trace_weight(b_op.conj().T @ b_op)

    raw = np.empty(len(tau_grid))
    if not gen.is_time_dependent:
        l = gen.superoperator()
        x = seed.copy()
        prev = 0.0
        for i, t in enumerate(tau_grid):
            if t > prev:
                x = expm(l * (t - prev)) @ x
                prev = t
            raw[i] = np.real(w @ x)
    else:
        eval_times = [t_start + t for t in tau_grid]
        ys, _ = _integrate(gen, seed, t_start, eval_times[-1], eval_times,
                           rtol, atol)
        raw[:] = np.real(ys @ w)
    return _clip_correlations(tau_grid, raw)


def g2_cw(system, drive, pairs=("LL", "RR", "LR", "RL"), tau_max=6.0,
          dt=0.005):
    """Steady-state g²_αβ(τ) for the requested port pairs.

    Returns a dict with 'tau', per-pair normalized 'g2' (τ ≥ 0), steady
    intensities, and clip diagnostics.  Negative delays follow from
    g²_αβ(−τ) = g²_βα(τ).
    """
    rho_ss = steady_state(system, drive)
    ops = {"L": field_operator(system, "L"), "R": field_operator(system, "R")}
    intens = {p: max(np.real(rho_ss.expectation(ops[p].conj().T @ ops[p])), 0.0)
              for p in "LR"}
    tau = np.arange(0.0, tau_max + dt / 2, dt)
    out = {"tau": tau, "intensity": intens, "g2": {}, "G2": {}, "clipped": {}}
    gen = LindbladGenerator(system, drive)
    step = expm(gen.superoperator() * dt)

    # all pair seeds march through the same propagator in one pass
    seeds = np.stack(
        [(ops[p[0]] @ rho_ss.matrix @ ops[p[0]].conj().T).reshape(-1)
         for p in pairs], axis=1)
    weights = np.stack([_trace_weight(ops[p[1]].conj().T @ ops[p[1]])
                        for p in pairs], axis=0)
    raw = np.empty((len(tau), len(pairs)))
    x = seeds
    for i in range(len(tau)):
        raw[i] = np.real(np.einsum("pj,jp->p", weights, x))
        x = step @ x
    for k, pair in enumerate(pairs):
        res = _clip_correlations(tau, raw[:, k])
        denom = intens[pair[0]] * intens[pair[1]]
        if denom <= 0:
            raise NumericalError(f"zero steady flux for pair {pair}")
        out["G2"][pair] = res.values
        out["g2"][pair] = res.values / denom
        out["clipped"][pair] = res.clipped
    return out


@dataclass
class CorrelationMap:
    """Two-time correlation values on a (t₁, t₂) grid."""
    t1: np.ndarray
    t2: np.ndarray
    values: np.ndarray
    kind: str                   # 'same_pulse' | 'different_pulse'
    normalization: dict = field(default_factory=dict)


@dataclass
class PulsedG2Result:
    ports: str
    t: np.ndarray
    same: CorrelationMap
    different: CorrelationMap
    intensity_a: np.ndarray
    intensity_b: np.ndarray
    period: float
    clipped: int = 0


def _step_matrices(gen, t, rtol=1e-10, atol=1e-12):
    """Propagator Φ_k over each [t_k, t_{k+1}]; static steps share one expm."""
    dim2 = gen.dim ** 2
    drive = gen.drive
    dt = t[1] - t[0]
    p_static = None
    mats = []
    for k in range(len(t) - 1):
        a, b = t[k], t[k + 1]
        if not _pulse_active(drive, a, b):
            if p_static is None:
                p_static = expm(gen.static_superoperator * dt)
            mats.append(p_static)
            continue

        def rhs(tt, y):
            phi = y.reshape(dim2, dim2)
            return (gen.superoperator(tt) @ phi).reshape(-1)

        sol = solve_ivp(rhs, (a, b), np.eye(dim2, dtype=complex).reshape(-1),
                        method="RK45", rtol=rtol, atol=atol,
                        max_step=drive.pulse.sigma_t / 5.0)
        if not sol.success:
            raise IntegrationError(f"propagator step failed in [{a}, {b}]",
                                   t=a)
        mats.append(sol.y[:, -1].reshape(dim2, dim2))
    return mats


def pulsed_g2_map(system, drive, ports="LL", window=4.0, dt=0.01,
                  initial=None, rtol=1e-10, atol=1e-12,
                  separation_periods=500):
    """Fully time-resolved G²_αβ(t₁, t₂) maps for one pulse window.

    Returns same-pulse and different-pulse maps on the full (t₁, t₂)
    square; for t₂ < t₁ the same-pulse map holds G_βα(t₂, t₁).  The
    different-pulse map correlates t₁ in one pulse window with t₂ a large
    number of repetition periods later (coincidence hardware pairs pulses
    hundreds of periods apart), so it factorizes into I(t₁)I(t₂) once the
    system has fully relaxed.
    """
    if not (len(ports) == 2 and set(ports) <= set("LR")):
        raise ValueError("ports must be two of 'L'/'R'")
    if drive.is_cw:
        raise ValueError("pulsed_g2_map requires a pulsed drive")
    a, b = ports[0], ports[1]
    gen = LindbladGenerator(system, drive)
    dim, dim2 = gen.dim, gen.dim ** 2
    nt = int(round(window / dt)) + 1
    t = np.arange(nt) * dt
    mats = _step_matrices(gen, t, rtol, atol)

    ops = {"L": field_operator(system, "L"), "R": field_operator(system, "R")}
    w_tr = {p: _trace_weight(ops[p].conj().T @ ops[p]) for p in "LR"}

    if initial is None:
        rho = np.zeros((dim, dim), dtype=complex)
        rho[-1, -1] = 1.0   # ground state |g...g⟩
    else:
        rho = _as_matrix(initial)
    rho_t = np.empty((nt, dim, dim), dtype=complex)
    rho_t[0] = rho
    for k in range(nt - 1):
        rho_t[k + 1] = (mats[k] @ rho_t[k].reshape(-1)).reshape(dim, dim)

    intensity = {p: np.maximum(
        np.real(np.einsum("tij,ji->t", rho_t, ops[p].conj().T @ ops[p])), 0.0)
        for p in "LR"}

    def seeds_for(port):
        e = ops[port]
        return np.stack([(e @ r @ e.conj().T).reshape(-1) for r in rho_t],
                        axis=1)  # (dim2, nt)

    banks = {a: seeds_for(a)}
    if b != a:
        banks[b] = seeds_for(b)

    g_upper = {}  # (alpha, beta) -> map over t1 <= t2
    for alpha, beta in {(a, b), (b, a)}:
        g_upper[(alpha, beta)] = np.zeros((nt, nt))

    # march all seed banks forward through the window
    live = {p: np.zeros((dim2, nt), dtype=complex) for p in banks}
    for k in range(nt):
        for p in banks:
            live[p][:, k] = banks[p][:, k]
        for (alpha, beta_), g in g_upper.items():
            g[:k + 1, k] = np.real(w_tr[beta_] @ live[alpha][:, :k + 1])
        if k < nt - 1:
            for p in banks:
                live[p][:, :k + 1] = mats[k] @ live[p][:, :k + 1]

    same = np.where(np.arange(nt)[None, :] >= np.arange(nt)[:, None],
                    g_upper[(a, b)],
                    g_upper[(b, a)].T)

    # relax across `separation_periods` repetitions, then march through the
    # far-away pulse window
    period = drive.pulse.repetition_period
    gap = period - window
    if gap < 0:
        raise ValueError("window exceeds the repetition period")
    if separation_periods < 1:
        raise ValueError("separation_periods must be >= 1")
    p_gap = expm(gen.static_superoperator * gap)
    if separation_periods > 1:
        p_window = np.eye(dim2, dtype=complex)
        for m in mats:
            p_window = m @ p_window
        p_gap = np.linalg.matrix_power(p_gap @ p_window,
                                       separation_periods - 1) @ p_gap
    for p in banks:
        live[p] = p_gap @ live[p]
    g_diff = np.zeros((nt, nt))
    for k in range(nt):
        g_diff[:, k] = np.real(w_tr[b] @ live[a])
        if k < nt - 1:
            live[a] = mats[k] @ live[a]

    n_neg = int(np.sum(same < -NEGATIVE_G_TOL) + np.sum(g_diff < -NEGATIVE_G_TOL))
    if n_neg:
        warnings.warn(f"{n_neg} map values below -{NEGATIVE_G_TOL:g} clipped",
                      RuntimeWarning)
    same = np.clip(same, 0.0, None)
    g_diff = np.clip(g_diff, 0.0, None)

    meta = {"ports": ports, "dt": dt, "window": window, "period": period,
            "separation_periods": separation_periods}
    return PulsedG2Result(
        ports=ports, t=t,
        same=CorrelationMap(t, t, same, "same_pulse", dict(meta)),
        different=CorrelationMap(t, t + separation_periods * period, g_diff,
                                 "different_pulse", dict(meta)),
        intensity_a=intensity[a], intensity_b=intensity[b],
        period=period, clipped=n_neg)


@dataclass
class PulsedCorrelogram:
    """Diagonal-integrated correlograms, normalized per pulse pair.

    ``center`` and ``side`` are correlation densities
    q(τ) = ∫G²(t, t+τ)dt / (∫I_α dt · ∫I_β dt); the side peak (τ measured
    about one repetition period) integrates to 1 for uncorrelated pulses.
    The dimensionless peak height reported by experiments is the ratio of
    the center maximum to the side maximum.
    """
    tau: np.ndarray
    center: np.ndarray
    side: np.ndarray
    norm: float
    period: float

    def center_height(self):
        peak = self.side.max()
        if peak <= 0:
            raise NumericalError("side peak vanishes; cannot normalize")
        return float(self.center.max() / peak)

    def normalized(self):
        peak = self.side.max()
        if peak <= 0:
            raise NumericalError("side peak vanishes; cannot normalize")
        return self.center / peak, self.side / peak


def _diagonal_integral(values, dt):
    """∫G(t, t+τ)dt for every diagonal offset, trapezoid along the diagonal."""
    nt = values.shape[0]
    out = np.empty(2 * nt - 1)
    for j in range(-(nt - 1), nt):
        d = values.diagonal(j)
        if len(d) == 1:
            out[j + nt - 1] = d[0] * dt
        else:
            out[j + nt - 1] = (d.sum() - 0.5 * (d[0] + d[-1])) * dt
    return out


def integrated_pulsed_g2(result):
    """Integrate PulsedG2Result maps into center/side correlograms."""
    dt = float(result.t[1] - result.t[0])
    ia = np.trapezoid(result.intensity_a, dx=dt)
    ib = np.trapezoid(result.intensity_b, dx=dt)
    norm = ia * ib
    if norm <= 0:
        raise NumericalError("zero integrated intensity; g2 undefined")
    nt = len(result.t)
    tau = np.arange(-(nt - 1), nt) * dt
    center = _diagonal_integral(result.same.values, dt) / norm
    side = _diagonal_integral(result.different.values, dt) / norm
    return PulsedCorrelogram(tau=tau, center=center, side=side, norm=norm,
                             period=result.period)
