"""Complementary weight-vector synthesis: exhaustive / randomized pair search
over a quantized phase alphabet, a constructive fast path for lengths that
admit binary complementary pairs, and randomized flat-coverage sequences.

A pair (w1, w2) is complementary when |g1|^2 + |g2|^2 is constant over all
directions; with per-element normalization the composite amplitude is then
exactly 1 everywhere. For binary weights this is the classic complementary-
sequence (Golay) property: the aperiodic autocorrelations of the two
sequences cancel at every nonzero lag.
"""

from __future__ import annotations

from dataclasses import dataclass

import math
import numpy as np

from .arrays import ULA, ArrayGeometry, steering_ula
from .patterns import (
    PER_ELEMENT,
    AngularGrid,
    composite_power,
    evaluate_pattern,
    pattern_variance,
)

EPS_ZERO = 1e-12
"""Variance below this counts as an exact zero (double-precision roundoff
scale for arrays up to 256 elements)."""

EXHAUSTIVE_PAIR_LIMIT = 2 ** 20
"""Practical cap on ordered candidate pairs for the exhaustive mode; larger
spaces must use the randomized or constructive modes."""

HARD_PAIR_LIMIT = 2 ** 32
"""Absolute contract bound on the phase-fixed exhaustive space."""

COARSE_POINTS = 512
"""Grid size used to score candidates inside the search; the winner is
re-scored on the full evaluation grid."""

MODE_EXHAUSTIVE = "exhaustive"
MODE_RANDOMIZED = "randomized"
MODE_GOLAY = "golay"

_RBF_ALPHABET = 8

# Verified binary complementary seed of length 10 (autocorrelations of the
# two sequences cancel exactly at every nonzero lag).
_SEED_10 = (
    (1, -1, -1, 1, -1, 1, 1, 1, 1, 1),
    (1, 1, -1, -1, 1, 1, 1, -1, 1, -1),
)

# Flat-coverage basis for an 8-element half-wavelength ULA: unit modulus per
# entry with low single-beam variance.
BASIS_8 = (math.sqrt(2) / 2) * np.array(
    [
        -math.sqrt(2),
        -1 + 1j,
        math.sqrt(2) * 1j,
        1 - 1j,
        -1 + 1j,
        1 - 1j,
        math.sqrt(2),
        1 + 1j,
    ]
)


class SearchSpaceError(ValueError):
    """Exhaustive candidate space exceeds the evaluation budget."""


class UnsupportedLengthError(ValueError):
    """No constructive complementary pair is available for this length."""


def phase_alphabet(k: int) -> np.ndarray:
    """K-th roots of unity, exact for the small alphabets used most."""
    if k < 1:
        raise ValueError("alphabet size must be >= 1")
    if k == 1:
        return np.array([1.0 + 0.0j])
    if k == 2:
        return np.array([1.0 + 0.0j, -1.0 + 0.0j])
    if k == 4:
        return np.array([1 + 0j, 1j, -1 + 0j, -1j])
    return np.exp(2j * np.pi * np.arange(k) / k)


@dataclass(frozen=True)
class ComplementarySet:
    """Two (or three, for odd hybrid groupings) unit-modulus weight vectors
    together with the flatness score of their composite pattern.

    ``composite_variance`` is the canonical (grid-mean) variance of the
    composite power under per-element normalization, re-computable from the
    vectors on the evaluation grid.
    """

    vectors: tuple
    composite_variance: float
    alphabet_size: int

    def __post_init__(self):
        vectors = tuple(np.asarray(v, dtype=complex) for v in self.vectors)
        object.__setattr__(self, "vectors", vectors)
        if not 2 <= len(vectors) <= 3:
            raise ValueError("a complementary set holds 2 or 3 vectors")
        n = vectors[0].size
        for v in vectors:
            if v.shape != (n,):
                raise ValueError("all vectors must share one length")
            if np.max(np.abs(np.abs(v) - 1.0)) > 1e-9:
                raise ValueError("vector entries must be unit modulus")
        if self.composite_variance < 0:
            raise ValueError("composite variance must be nonnegative")
        if self.alphabet_size < 1:
            raise ValueError("alphabet size must be positive")

    @property
    def n_elements(self) -> int:
        return self.vectors[0].size


@dataclass(frozen=True)
class SearchConfig:
    """Knobs for :func:`search_complementary`.

    ``k`` is the phase-quantization (accuracy) factor: candidate entries are
    drawn from the alphabet exp(2j*pi*m/k). ``budget`` bounds candidate-pair
    evaluations in randomized mode. ``grid`` is the final scoring grid
    (geometry default when None).
    """

    k: int = 2
    mode: str = MODE_EXHAUSTIVE
    budget: int = 100_000
    grid: AngularGrid | None = None
    seed: int = 0
    coarse_points: int = COARSE_POINTS

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("accuracy factor k must be >= 2")
        if self.mode not in (MODE_EXHAUSTIVE, MODE_RANDOMIZED, MODE_GOLAY):
            raise ValueError(f"unknown search mode {self.mode!r}")
        if self.budget < 1:
            raise ValueError("budget must be positive")
        if self.coarse_points < 2:
            raise ValueError("coarse grid needs at least 2 points")


def _coarse_grid(geom: ArrayGeometry, n_points: int) -> AngularGrid:
    if geom.kind == ULA:
        return AngularGrid.default_ula(n_points)
    n_phi = max(2, int(round(math.sqrt(n_points / 2))))
    return AngularGrid.default_upa(n_phi, 2 * n_phi)


def _steering_matrix(geom: ArrayGeometry, grid: AngularGrid) -> np.ndarray:
    """Steering vectors for every grid point, shape (N, n_points)."""
    if geom.kind == ULA:
        return steering_ula(geom, grid.thetas).T
    cols = []
    for phi in grid.phis:
        sp = math.sin(phi)
        ex = np.exp(
            -2j * np.pi * geom.d_x * sp * np.outer(np.arange(geom.n_x), np.cos(grid.thetas))
        )
        ey = np.exp(
            -2j * np.pi * geom.d_y * sp * np.outer(np.arange(geom.n_y), np.sin(grid.thetas))
        )
        cols.append(np.einsum("xt,yt->xyt", ex, ey).reshape(geom.n_elements, -1))
    return np.concatenate(cols, axis=1)


def _vectors_from_digits(digits: np.ndarray, k: int) -> np.ndarray:
    """Candidate weight vectors from phase-index digits of elements 1..N-1
    (element 0 fixed to 1)."""
    alphabet = phase_alphabet(k)
    lead = np.ones(digits.shape[:-1] + (1,), dtype=complex)
    return np.concatenate([lead, alphabet[digits]], axis=-1)


def _digits_of(indices: np.ndarray, k: int, n_digits: int) -> np.ndarray:
    """Big-endian base-k digits, lexicographic order matches integer order."""
    out = np.empty(indices.shape + (n_digits,), dtype=np.int64)
    rem = indices.astype(np.int64)
    for pos in range(n_digits - 1, -1, -1):
        out[..., pos] = rem % k
        rem = rem // k
    return out


def _candidate_powers(vectors: np.ndarray, a_matrix: np.ndarray) -> np.ndarray:
    """Per-element-normalized |g|^2 rows for a batch of candidate vectors."""
    n = a_matrix.shape[0]
    g = np.conj(vectors) @ a_matrix / math.sqrt(n)
    return np.abs(g) ** 2


def _row_variances(powers: np.ndarray) -> np.ndarray:
    m = powers.mean(axis=-1, keepdims=True)
    return ((powers - m) ** 2).mean(axis=-1)


def _rescore(vectors, geom: ArrayGeometry, grid: AngularGrid) -> float:
    patterns = [evaluate_pattern(w, geom, grid, PER_ELEMENT) for w in vectors]
    return pattern_variance(composite_power(patterns), grid)


def _finish(vectors, geom, grid, k) -> ComplementarySet:
    return ComplementarySet(
        vectors=tuple(vectors),
        composite_variance=_rescore(vectors, geom, grid),
        alphabet_size=k,
    )


def search_complementary(geom: ArrayGeometry, cfg: SearchConfig = SearchConfig()) -> ComplementarySet:
    """Find a weight-vector pair minimizing the composite-pattern variance.

    Candidates take entries from the k-th-roots alphabet with the first
    coefficient of both vectors fixed to 1 (pattern magnitudes are invariant
    to a global phase per vector, which shrinks the space from k^(2N) to
    k^(2(N-1)) ordered pairs). Pairs are scored on a coarse grid in
    lexicographic order of their phase indices; the scan stops at the first
    exactly-flat pair (variance below ``EPS_ZERO``), otherwise the earliest
    minimum wins. The winner is re-scored on the full grid.

    Deterministic: exhaustive mode scans lexicographically, randomized mode
    is reproducible from ``cfg.seed``, and any parallel schedule must return
    the same pair as this sequential scan.

    Raises
    ------
    SearchSpaceError
        If exhaustive mode would exceed the pair budget (use mode
        "randomized" or "golay" instead).
    """
    n = geom.n_elements
    grid = cfg.grid if cfg.grid is not None else (
        AngularGrid.default_ula() if geom.kind == ULA else AngularGrid.default_upa()
    )

    if cfg.mode == MODE_GOLAY:
        if geom.kind == ULA:
            pair = golay_construct(n)
            return _finish(pair.vectors, geom, grid, 2)
        # planar fallback: per-axis pairs combined elementwise by Kronecker
        # product; the composite is generally not flat, so the measured
        # variance is reported rather than asserted zero
        ax = _axis_pair(geom.n_x)
        ay = _axis_pair(geom.n_y)
        w1 = np.kron(ax[0], ay[0])
        w2 = np.kron(ax[1], ay[1])
        return _finish((w1, w2), geom, grid, 2)

    coarse = _coarse_grid(geom, cfg.coarse_points)
    a_coarse = _steering_matrix(geom, coarse)
    n_digits = n - 1

    if cfg.mode == MODE_EXHAUSTIVE:
        ordered_pairs = float(cfg.k) ** (2 * n_digits)
        if ordered_pairs > min(HARD_PAIR_LIMIT, EXHAUSTIVE_PAIR_LIMIT):
            raise SearchSpaceError(
                f"exhaustive search over k={cfg.k}, N={n} means "
                f"{ordered_pairs:.3g} candidate pairs (limit {EXHAUSTIVE_PAIR_LIMIT}); "
                f"use mode '{MODE_RANDOMIZED}' or mode '{MODE_GOLAY}' instead"
            )
        m = cfg.k ** n_digits
        cand = _vectors_from_digits(_digits_of(np.arange(m), cfg.k, n_digits), cfg.k)
        powers = _candidate_powers(cand, a_coarse)
        best_var = math.inf
        best_pair = None
        for i in range(m):
            # unordered scan: pairs (i, j >= i) in lexicographic order
            row = _row_variances((powers[i] + powers[i:]) / 2.0)
            flat = np.nonzero(row < EPS_ZERO)[0]
            if flat.size:
                # earliest exactly-flat pair; everything before it scored higher
                j = i + int(flat[0])
                return _finish((cand[i], cand[j]), geom, grid, cfg.k)
            jrel = int(np.argmin(row))
            if row[jrel] < best_var:
                best_var = float(row[jrel])
                best_pair = (cand[i], cand[i + jrel])
        return _finish(best_pair, geom, grid, cfg.k)

    # randomized: sample candidate pairs digitwise, uniform over the space
    rng = np.random.default_rng(cfg.seed)
    best_var = math.inf
    best_pair = None
    remaining = cfg.budget
    chunk_size = 1024
    while remaining > 0:
        take = min(chunk_size, remaining)
        remaining -= take
        digits = rng.integers(0, cfg.k, size=(take, 2, n_digits))
        w1 = _vectors_from_digits(digits[:, 0, :], cfg.k)
        w2 = _vectors_from_digits(digits[:, 1, :], cfg.k)
        p = (_candidate_powers(w1, a_coarse) + _candidate_powers(w2, a_coarse)) / 2.0
        var = _row_variances(p)
        flat = np.nonzero(var < EPS_ZERO)[0]
        if flat.size:
            i = int(flat[0])
            return _finish((w1[i], w2[i]), geom, grid, cfg.k)
        i = int(np.argmin(var))
        if var[i] < best_var:
            best_var = float(var[i])
            best_pair = (w1[i], w2[i])
    return _finish(best_pair, geom, grid, cfg.k)


def _axis_pair(n: int):
    """Binary complementary pair along one UPA axis (trivial for length 1)."""
    if n == 1:
        one = np.array([1.0 + 0.0j])
        return one, one
    pair = golay_construct(n)
    return pair.vectors[0], pair.vectors[1]


def golay_construct(n: int, grid: AngularGrid | None = None) -> ComplementarySet:
    """Constructive complementary pair for lengths 2^a and 10*2^a.

    Starts from the trivial length-1 pair (or the verified length-10 seed)
    and doubles with (a|b, a|-b), which preserves the complementary
    property. The returned variance is scored on ``grid`` (default
    4096-point azimuth grid for a half-wavelength ULA).

    Raises
    ------
    UnsupportedLengthError
        For lengths without a supported construction; callers fall back to
        :func:`search_complementary`.
    """
    if n < 2:
        raise UnsupportedLengthError("need at least 2 elements")
    core = n
    while core % 2 == 0:
        core //= 2
    if core == 1:
        a = np.array([1.0 + 0.0j])
        b = np.array([1.0 + 0.0j])
    elif core == 5 and n % 10 == 0:
        a = np.array(_SEED_10[0], dtype=complex)
        b = np.array(_SEED_10[1], dtype=complex)
    else:
        raise UnsupportedLengthError(
            f"no constructive pair for length {n}; supported lengths are "
            f"2^a and 10*2^a (fall back to search_complementary)"
        )
    while a.size < n:
        a, b = np.concatenate([a, b]), np.concatenate([a, -b])
    geom = ArrayGeometry.ula(n)
    if grid is None:
        grid = AngularGrid.default_ula()
    return _finish((a, b), geom, grid, 2)


def _single_beam_minimum(geom: ArrayGeometry, k: int = _RBF_ALPHABET) -> np.ndarray:
    """Best single unit-modulus vector by flatness over the k-phase alphabet.

    Exhaustive when the space is small, otherwise a seeded randomized probe;
    deterministic either way.
    """
    n = geom.n_elements
    coarse = _coarse_grid(geom, COARSE_POINTS)
    a_coarse = _steering_matrix(geom, coarse)
    n_digits = n - 1
    space = float(k) ** n_digits
    best_var = math.inf
    best = None
    if space <= 2 ** 18:
        m = k ** n_digits
        for start in range(0, m, 8192):
            idx = np.arange(start, min(start + 8192, m))
            cand = _vectors_from_digits(_digits_of(idx, k, n_digits), k)
            var = _row_variances(_candidate_powers(cand, a_coarse))
            i = int(np.argmin(var))
            if var[i] < best_var:
                best_var = float(var[i])
                best = cand[i]
    else:
        rng = np.random.default_rng(2357)
        for _ in range(20):
            digits = rng.integers(0, k, size=(1024, n_digits))
            cand = _vectors_from_digits(digits, k)
            var = _row_variances(_candidate_powers(cand, a_coarse))
            i = int(np.argmin(var))
            if var[i] < best_var:
                best_var = float(var[i])
                best = cand[i]
    return best


def rbf_basis(geom: ArrayGeometry) -> np.ndarray:
    """Basis vector for randomized flat-coverage beams.

    The built-in 8-element basis for an 8-element ULA, otherwise the best
    single vector found by flatness minimization over the 8-phase alphabet.
    """
    if geom.kind == ULA and geom.n_elements == 8:
        return BASIS_8.copy()
    return _single_beam_minimum(geom)


def rbf_phase_indices(seed: int, tfb_index: int, n: int) -> np.ndarray:
    """Per-block random phase indices (uniform over the 8-phase alphabet),
    addressable by block index so any block is reproducible on its own."""
    rng = np.random.default_rng([seed, tfb_index])
    return rng.integers(0, _RBF_ALPHABET, size=n)


def rbf_sequence(geom: ArrayGeometry, count: int, seed: int,
                 basis: np.ndarray | None = None) -> list:
    """Randomized beam schedule: ``count`` unit-modulus vectors.

    Each vector is the basis multiplied elementwise by i.i.d. uniform
    8-phase rotations, freshly drawn per block; over many blocks the average
    radiated power is equal in every direction. Deterministic given
    ``seed``.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    if basis is None:
        basis = rbf_basis(geom)
    basis = np.asarray(basis, dtype=complex)
    if basis.shape != (geom.n_elements,):
        raise ValueError("basis length must match the geometry")
    alphabet = phase_alphabet(_RBF_ALPHABET)
    return [
        basis * alphabet[rbf_phase_indices(seed, t, geom.n_elements)]
        for t in range(count)
    ]


def split_subarrays(geom: ArrayGeometry):
    """First and second halves of the (row-major) element index range, for
    feeding the two beams of a pair to two virtual sub-arrays."""
    n = geom.n_elements
    if n % 2 != 0:
        raise ValueError(
            "sub-array split needs an even element count; odd counts use a "
            "three-beam grouping instead"
        )
    return np.arange(0, n // 2), np.arange(n // 2, n)


# -- codebook files ----------------------------------------------------------

def _quantize_indices(w: np.ndarray, k: int) -> np.ndarray:
    alphabet = phase_alphabet(k)
    idx = np.mod(np.round(np.angle(w) * k / (2 * np.pi)).astype(int), k)
    if np.max(np.abs(w - alphabet[idx])) > 1e-9:
        raise ValueError("vector entries are not on the phase alphabet")
    return idx


def save_codebook(path, cset: ComplementarySet, geom: ArrayGeometry,
                  mode: str = MODE_EXHAUSTIVE, seed: int = 0) -> None:
    """Write a complementary set as key-value text with vectors stored as
    phase indices; the format round-trips bit-exactly."""
    lines = [
        f"n = {cset.n_elements}",
        f"k = {cset.alphabet_size}",
        f"kind = {geom.kind}",
        f"n_x = {geom.n_x}",
        f"n_y = {geom.n_y}",
        f"d_x = {geom.d_x!r}",
        f"d_y = {geom.d_y!r}",
        f"mode = {mode}",
        f"seed = {seed}",
        f"variance = {cset.composite_variance!r}",
    ]
    for i, w in enumerate(cset.vectors, start=1):
        idx = _quantize_indices(w, cset.alphabet_size)
        lines.append(f"w{i} = " + " ".join(str(v) for v in idx))
    with open(path, "w", newline="") as f:
        f.write("\n".join(lines) + "\n")


def load_codebook(path):
    """Read a codebook file back into (set, geometry, mode, seed)."""
    fields = {}
    with open(path) as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            key, _, value = line.partition("=")
            fields[key.strip()] = value.strip()
    try:
        k = int(fields["k"])
        geom = ArrayGeometry(
            kind=fields["kind"],
            n_x=int(fields["n_x"]),
            n_y=int(fields["n_y"]),
            d_x=float(fields["d_x"]),
            d_y=float(fields["d_y"]),
        )
        alphabet = phase_alphabet(k)
        vectors = []
        for i in range(1, 4):
            key = f"w{i}"
            if key not in fields:
                break
            idx = np.array([int(v) for v in fields[key].split()])
            vectors.append(alphabet[idx])
        cset = ComplementarySet(
            vectors=tuple(vectors),
            composite_variance=float(fields["variance"]),
            alphabet_size=k,
        )
        return cset, geom, fields["mode"], int(fields["seed"])
    except KeyError as exc:
        raise ValueError(f"codebook file is missing field {exc}") from exc
