"""Shared test utilities: reference vectors and independent oracles.

The oracles here deliberately avoid the package's vectorized evaluation
paths so they can confirm results through a second route.
"""

import math

import numpy as np

# Known flat pair for an 8-element half-wavelength ULA: the squared pattern
# magnitudes of these two sign vectors sum to a constant at every angle.
KNOWN_W1 = np.array([1, -1, -1, 1, 1, 1, 1, 1], dtype=complex)
KNOWN_W2 = np.array([-1, 1, -1, 1, -1, -1, 1, 1], dtype=complex)

# Legacy broadcast-beam weighting with unequal amplitudes (PA-efficiency
# example).
LEGACY_TAPER = np.array([0.55, 1, 1, 0.55, 0.85, 1, 0.85])


def aperiodic_autocorrelation(seq, lag):
    """Direct-sum aperiodic autocorrelation at one lag."""
    seq = np.asarray(seq)
    n = len(seq)
    return complex(sum(seq[i] * np.conj(seq[i + lag]) for i in range(n - lag)))


def autocorrelation_sums(w1, w2):
    """Sum of the two aperiodic autocorrelations at every nonzero lag."""
    n = len(w1)
    return np.array([
        aperiodic_autocorrelation(w1, k) + aperiodic_autocorrelation(w2, k)
        for k in range(1, n)
    ])


def is_complementary_pair(w1, w2, tol=1e-9):
    return bool(np.all(np.abs(autocorrelation_sums(w1, w2)) < tol))


def direct_gain_ula(w, theta, d=0.5):
    """g = w^H a(theta) for a ULA via an explicit per-element loop."""
    n = len(w)
    acc = 0j
    for k in range(n):
        acc += np.conj(w[k]) * np.exp(-1j * 2 * math.pi * d * k * math.sin(theta))
    return acc / math.sqrt(n)


def direct_variance_ula(vectors, n_grid=4096, d=0.5):
    """Canonical composite variance over a uniform azimuth grid, computed
    with plain loops and math.fsum."""
    thetas = [2 * math.pi * i / n_grid for i in range(n_grid)]
    powers = []
    for th in thetas:
        p = math.fsum(abs(direct_gain_ula(w, th, d)) ** 2 for w in vectors) / len(vectors)
        powers.append(p)
    m = math.fsum(powers) / n_grid
    return math.fsum((p - m) ** 2 for p in powers) / n_grid


def brute_force_pair_minimum(n, k=2, n_grid=4096, d=0.5):
    """Minimal composite variance over ALL ordered candidate pairs with no
    phase fixing, scored on the full grid with an independent numpy path."""
    # alphabet and the full candidate space of k**n vectors
    alphabet = np.exp(2j * np.pi * np.arange(k) / k)
    if k == 2:
        alphabet = np.array([1.0 + 0.0j, -1.0 + 0.0j])
    idx = np.indices((k,) * n).reshape(n, -1).T
    vectors = alphabet[idx]                              # (k^n, n)
    thetas = 2 * np.pi * np.arange(n_grid) / n_grid
    phases = np.exp(-2j * np.pi * d * np.outer(np.sin(thetas), np.arange(n)))
    powers = np.abs(np.conj(vectors) @ phases.T) ** 2 / n  # (k^n, n_grid)
    best = math.inf
    m = vectors.shape[0]
    for i in range(m):
        comp = (powers[i] + powers) / 2.0
        mu = comp.mean(axis=1, keepdims=True)
        var = ((comp - mu) ** 2).mean(axis=1)
        best = min(best, float(var.min()))
    return best


def brute_force_pair_minimum_fixed(n, k=2, n_grid=4096, d=0.5):
    """Same minimum restricted to candidates whose first entry is 1."""
    alphabet = np.exp(2j * np.pi * np.arange(k) / k)
    if k == 2:
        alphabet = np.array([1.0 + 0.0j, -1.0 + 0.0j])
    idx = np.indices((k,) * (n - 1)).reshape(n - 1, -1).T
    vectors = np.concatenate(
        [np.ones((idx.shape[0], 1), dtype=complex), alphabet[idx]], axis=1
    )
    thetas = 2 * np.pi * np.arange(n_grid) / n_grid
    phases = np.exp(-2j * np.pi * d * np.outer(np.sin(thetas), np.arange(n)))
    powers = np.abs(np.conj(vectors) @ phases.T) ** 2 / n
    best = math.inf
    for i in range(vectors.shape[0]):
        comp = (powers[i] + powers) / 2.0
        mu = comp.mean(axis=1, keepdims=True)
        var = ((comp - mu) ** 2).mean(axis=1)
        best = min(best, float(var.min()))
    return best


def psi_grid_power(w, n_points=512):
    """|g|^2 over a uniform grid of the phase variable psi (per-element
    normalization), via the DFT identity g(psi_m) = sum_k conj(w_k) e^{-jkm}."""
    w = np.asarray(w, dtype=complex)
    return np.abs(np.fft.fft(np.conj(w), n_points)) ** 2 / w.size


def binomial_sigma(p, n_bits):
    """Standard deviation of a BER estimate over independent bits."""
    return math.sqrt(max(p * (1.0 - p), 1e-300) / n_bits)


def rayleigh_block_sigma(snr_db, n_bits, bits_per_block, n_quad=200001):
    """Standard deviation of the BER estimate under per-block Rayleigh
    fading, where errors are correlated inside a block.

    Uses E[p], E[p^2] of p(x) = 0.5 erfc(sqrt(gamma x)) with x ~ Exp(1),
    evaluated by the substitution x = -ln(u) and a midpoint rule.
    """
    gamma = 10.0 ** (snr_db / 10.0)
    u = (np.arange(n_quad) + 0.5) / n_quad
    p = 0.5 * np.vectorize(math.erfc)(np.sqrt(gamma * (-np.log(u))))
    ep = float(p.mean())
    ep2 = float((p * p).mean())
    return math.sqrt((ep - ep2) / n_bits + (ep2 - ep * ep) * bits_per_block / n_bits)
