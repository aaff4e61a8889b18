"""Independent oracles for the scalability sampler.

These deliberately avoid the production code paths: feasibility is decided
by brute force over subsets/windows, region assignments are enumerated
exhaustively (grouped by count multiset), and the wavelength integral is a
deterministic Sobol quasi-Monte Carlo quadrature.
"""

from itertools import combinations, product
from math import inf

import numpy as np
from scipy.special import ndtri
from scipy.stats import qmc


def brute_force_min_spread(wavelengths, regions, n_set, mode):
    """Minimal feasible spread by exhaustive subset / window search."""
    order = np.argsort(wavelengths, kind="stable")
    lam = np.asarray(wavelengths, float)[order]
    reg = np.asarray(regions)[order]
    n = len(lam)
    best = inf
    if mode == "window_distinct":
        for idx in combinations(range(n), n_set):
            if len({reg[i] for i in idx}) == n_set:
                best = min(best, lam[idx[-1]] - lam[idx[0]])
    else:
        for k in range(n - n_set + 1):
            if len(set(reg[k:k + n_set].tolist())) == n_set:
                best = min(best, lam[k + n_set - 1] - lam[k])
    return best


def _assignment_groups(n_qd, n_reg):
    """Group the n_reg^n_qd equally likely assignments by representative.

    Assignments that differ by region relabeling or emitter permutation
    have identical success probability, so one canonical representative
    per occupation multiset suffices; each carries its total probability.
    """
    groups = {}
    for a in product(range(n_reg), repeat=n_qd):
        counts = tuple(sorted((a.count(r) for r in range(n_reg)),
                              reverse=True))
        if counts not in groups:
            rep = []
            for r, c in enumerate(counts):
                rep.extend([r] * c)
            groups[counts] = [np.array(rep), 0]
        groups[counts][1] += 1
    total = n_reg ** n_qd
    return [(rep, mult / total) for rep, mult in groups.values()]


def qmc_conditional_probability(n_qd, n_reg, n_set, dl_over_sigma, mode,
                                log2_points=16, scrambles=4):
    """P(success | n_qd) by assignment enumeration + Sobol quadrature.

    Owen-scrambled Sobol points (averaged over a few scrambles): plain
    Sobol nets are visibly biased for the fine diagonal bands
    |z_i - z_j| <= dl that decide success at small tuning ranges.
    """
    if n_qd < n_set:
        return 0.0
    return float(np.mean([
        _qmc_single(n_qd, n_reg, n_set, dl_over_sigma, mode, log2_points, s)
        for s in range(scrambles)]))


def _qmc_single(n_qd, n_reg, n_set, dl_over_sigma, mode, log2_points, seed):
    sob = qmc.Sobol(d=n_qd, scramble=True, seed=seed)
    u = sob.random_base2(log2_points)
    u = np.clip(u, 1e-12, 1 - 1e-12)
    z = ndtri(u)                      # (npts, n_qd) iid standard normals
    total = 0.0
    for rep, weight in _assignment_groups(n_qd, n_reg):
        if len(set(rep.tolist())) < n_set:
            continue
        if mode == "window_distinct":
            ok = np.zeros(len(z), dtype=bool)
            for idx in combinations(range(n_qd), n_set):
                if len({rep[i] for i in idx}) == n_set:
                    sub = z[:, idx]
                    ok |= (sub.max(axis=1) - sub.min(axis=1)) <= dl_over_sigma
        else:
            order = np.argsort(z, axis=1, kind="stable")
            lam = np.take_along_axis(z, order, axis=1)
            reg = rep[order]
            ok = np.zeros(len(z), dtype=bool)
            for k in range(n_qd - n_set + 1):
                win = reg[:, k:k + n_set]
                distinct = np.ones(len(z), dtype=bool)
                for a in range(n_set):
                    for b in range(a + 1, n_set):
                        distinct &= win[:, a] != win[:, b]
                ok |= distinct & ((lam[:, k + n_set - 1] - lam[:, k])
                                  <= dl_over_sigma)
        total += weight * ok.mean()
    return total


def distinct_regions_probability(n_qd, n_reg, n_set):
    """P(emitters occupy >= n_set distinct regions), exact enumeration."""
    return sum(weight for rep, weight in _assignment_groups(n_qd, n_reg)
               if len(set(rep.tolist())) >= n_set)
