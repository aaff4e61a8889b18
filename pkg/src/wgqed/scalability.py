"""Monte Carlo estimate of the probability that a waveguide hosts a set of
independently tunable, mutually resonant emitters.

Model: the emitter count per waveguide is Poisson(μ); each emitter falls
into one of n_reg equal electrically independent regions (uniform
multinomial) and has a wavelength drawn from a Gaussian of width σ.  A set
of n_set emitters succeeds if they sit in pairwise distinct regions and
their wavelength spread fits inside the tuning range δλ.

Two feasibility rules are implemented:

* ``consecutive`` — n_set *consecutive* sorted wavelengths whose regions
  are pairwise distinct (the published rule; used to reproduce the quoted
  probabilities).
* ``window_distinct`` — any wavelength window containing emitters from at
  least n_set distinct regions.  This is the correct criterion: e.g.
  regions (A,B,B,C) at wavelengths (1,2,3,4) with n_set=3 has no feasible
  consecutive triple but the window 1..4 works.  It dominates the
  consecutive rule by construction.

Sampling is deterministic and parallelism-independent: samples are
partitioned into fixed-size chunks with counter-based Philox streams keyed
by (seed, n_qd, chunk index), and reductions are integer sums.
"""

from dataclasses import dataclass

import numpy as np
from numpy.random import Generator, Philox, SeedSequence
from scipy.special import ndtri
from scipy.stats import poisson

CHUNK = 1 << 15
MODES = ("consecutive", "window_distinct")


@dataclass(frozen=True)
class ScalabilityConfig:
    mu_qd: float                 # mean emitters per waveguide
    sigma_qd: float              # inhomogeneous wavelength spread (nm)
    delta_lambda: float          # tuning range (nm)
    n_reg: int                   # independently tunable regions
    n_set: int                   # target set size
    n_wg: int = 1                # waveguides per chip
    runs: int = 200_000          # Monte Carlo samples per N_QD
    seed: int = 0
    mode: str = "consecutive"

    def __post_init__(self):
        if self.mu_qd <= 0:
            raise ValueError("mu_qd must be > 0")
        if self.sigma_qd <= 0:
            raise ValueError("sigma_qd must be > 0")
        if self.delta_lambda < 0:
            raise ValueError("delta_lambda must be >= 0")
        if not 1 <= self.n_set <= self.n_reg:
            raise ValueError("need n_reg >= n_set >= 1")
        if self.n_reg > 64:
            raise ValueError("n_reg > 64 not supported (bitmask window scan)")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.n_wg < 1:
            raise ValueError("n_wg must be >= 1")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")


@dataclass
class YieldResult:
    p_per_waveguide: float
    standard_error: float
    p_per_chip: float
    truncation_n_max: int
    mode: str = "consecutive"
    truncated_mass: float = 1.0


def poisson_weights(mu, mass_target=0.9995):
    """Poisson pmf values up to the smallest N covering ``mass_target``.

    The weights are NOT renormalized; the covered mass is reported so the
    (tiny) truncated remainder stays visible.
    """
    if mu <= 0:
        raise ValueError("mu must be > 0")
    out = []
    acc = 0.0
    n = 0
    while acc < mass_target:
        w = float(poisson.pmf(n, mu))
        out.append((n, w))
        acc += w
        n += 1
        if n > 100_000:
            raise RuntimeError("Poisson truncation did not converge")
    return out


def sample_waveguide(n_qd, config, rng):
    """Draw one waveguide realization: regions (1-based) and wavelengths."""
    regions = rng.integers(1, config.n_reg + 1, size=n_qd)
    wavelengths = rng.standard_normal(n_qd) * config.sigma_qd
    return regions, wavelengths


def min_feasible_spread(wavelengths, regions, n_set, mode="consecutive"):
    """Smallest wavelength spread of a feasible set; inf when infeasible.

    ``consecutive``: minimal spread over runs of n_set consecutive sorted
    wavelengths with pairwise distinct regions.  ``window_distinct``:
    minimal window containing >= n_set distinct regions.  The latter never
    exceeds the former.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    wavelengths = np.asarray(wavelengths, dtype=float)
    regions = np.asarray(regions)
    if wavelengths.shape != regions.shape:
        raise ValueError("wavelengths and regions must have equal length")
    n = len(wavelengths)
    if n < n_set or len(set(regions.tolist())) < n_set:
        return np.inf
    if n_set == 1:
        return 0.0
    order = np.argsort(wavelengths, kind="stable")
    lam = wavelengths[order]
    reg = regions[order]
    best = np.inf
    if mode == "consecutive":
        for k in range(n - n_set + 1):
            win = reg[k:k + n_set]
            if len(set(win.tolist())) == n_set:
                best = min(best, lam[k + n_set - 1] - lam[k])
        return best
    counts = {}
    lo = 0
    for hi in range(n):
        counts[reg[hi]] = counts.get(reg[hi], 0) + 1
        while len(counts) >= n_set:
            best = min(best, lam[hi] - lam[lo])
            counts[reg[lo]] -= 1
            if counts[reg[lo]] == 0:
                del counts[reg[lo]]
            lo += 1
    return best


def _sparse_or_table(bits):
    """OR over windows of length 2^p: tables[p][:, k] = OR(bits[k : k+2^p])."""
    tables = [bits]
    length = 1
    while 2 * length <= bits.shape[1]:
        prev = tables[-1]
        tables.append(prev[:, :bits.shape[1] - 2 * length + 1]
                      | prev[:, length:bits.shape[1] - length + 1])
        length *= 2
    return tables


def _window_or(tables, start, length):
    """OR over [start, start+length) with overlap-safe doubling lookups."""
    p = int(length).bit_length() - 1
    half = 1 << p
    t = tables[p]
    return t[:, start] | t[:, start + length - half]


def _successes_consecutive(lam, reg_bits, n_set, dl):
    m, n = lam.shape
    tables = _sparse_or_table(reg_bits)
    ok = np.zeros(m, dtype=bool)
    for k in range(n - n_set + 1):
        distinct = np.bitwise_count(
            _window_or(tables, k, n_set)) == n_set
        ok |= distinct & (lam[:, k + n_set - 1] - lam[:, k] <= dl)
    return ok


def _successes_window(lam, reg_bits, n_set, dl):
    m, n = lam.shape
    tables = _sparse_or_table(reg_bits)
    rows = np.arange(m)
    ok = np.zeros(m, dtype=bool)
    for i in range(n - n_set + 1):
        hi = np.sum(lam <= (lam[:, i] + dl)[:, None], axis=1)  # window end
        length = hi - i
        valid = length >= n_set
        if not np.any(valid):
            continue
        ln = np.where(valid, length, n_set)
        p = np.frexp(ln.astype(float))[1] - 1   # floor(log2(ln)) per row
        half = (1 << p).astype(np.int64)
        t_stack = tables
        or_lo = np.empty(m, dtype=reg_bits.dtype)
        or_hi = np.empty(m, dtype=reg_bits.dtype)
        for pp in np.unique(p[valid]):
            sel = valid & (p == pp)
            or_lo[sel] = t_stack[pp][rows[sel], i]
            or_hi[sel] = t_stack[pp][rows[sel],
                                     i + ln[sel] - half[sel]]
        distinct = np.zeros(m, dtype=bool)
        distinct[valid] = np.bitwise_count(
            or_lo[valid] | or_hi[valid]) >= n_set
        ok |= distinct
    return ok


def conditional_success_count(n_qd, config, runs=None):
    """Successes among ``runs`` waveguides with exactly n_qd emitters.

    Draws the wavelengths directly in sorted order (exponential spacings
    mapped through the normal quantile function); the region sequence in
    sorted order is i.i.d. uniform because ranks are independent of the
    order statistics.  Deterministic for fixed (seed, n_qd, chunk).
    """
    runs = config.runs if runs is None else runs
    if n_qd < config.n_set:
        return 0
    dl = config.delta_lambda / config.sigma_qd
    check = (_successes_consecutive if config.mode == "consecutive"
             else _successes_window)
    succ = 0
    done = 0
    chunk_index = 0
    while done < runs:
        m = min(CHUNK, runs - done)
        rng = Generator(Philox(SeedSequence(config.seed,
                                            spawn_key=(n_qd, chunk_index))))
        spacings = rng.standard_exponential((m, n_qd + 1))
        u = np.cumsum(spacings[:, :-1], axis=1) / spacings.sum(
            axis=1, keepdims=True)
        lam = ndtri(u)                              # sorted, sigma=1 units
        regions = rng.integers(0, config.n_reg, size=(m, n_qd))
        reg_bits = (np.uint64(1) << regions.astype(np.uint64))
        succ += int(np.count_nonzero(check(lam, reg_bits, config.n_set, dl)))
        done += m
        chunk_index += 1
    return succ


def probability_per_waveguide(config):
    """P(n_set) = Σ_N P(n_set | N)·P_pois(N) with binomial standard error."""
    weights = poisson_weights(config.mu_qd)
    p_total = 0.0
    var_total = 0.0
    for n_qd, w in weights:
        s = conditional_success_count(n_qd, config)
        p = s / config.runs
        p_total += w * p
        var_total += w * w * p * (1.0 - p) / config.runs
    return YieldResult(
        p_per_waveguide=p_total,
        standard_error=float(np.sqrt(var_total)),
        p_per_chip=probability_per_chip(p_total, config.n_wg),
        truncation_n_max=weights[-1][0],
        mode=config.mode,
        truncated_mass=float(sum(w for _, w in weights)))


def probability_per_chip(p_per_waveguide, n_wg):
    """1 − (1−P)^n_wg: at least one success among n_wg waveguides."""
    if not 0.0 <= p_per_waveguide <= 1.0:
        raise ValueError("probability must lie in [0, 1]")
    if n_wg < 1:
        raise ValueError("n_wg must be >= 1")
    return float(1.0 - (1.0 - p_per_waveguide) ** n_wg)
