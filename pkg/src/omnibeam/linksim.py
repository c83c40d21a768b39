"""Monte Carlo uncoded-BER simulation of broadcast reception.

Schemes
-------
single      one isotropic antenna, the coverage benchmark
rbf         a fresh random flat-coverage beam on every block
cbf-digital both beams of a complementary pair transmitted at once on two
            virtual sub-arrays carrying the payload on orthogonal resources;
            the receiver combines them, so the power gain is the composite
            (|g1|^2 + |g2|^2) / 2 at the receiver angle
cbf-analog  one beam of the pair per block, payload repeated over each block
            pair at half power per copy, maximal-ratio combining at the
            receiver

Noise calibration: symbols have unit energy, QPSK carries 2 bits/symbol and
Eb/N0 is defined at the receiver for the unit-gain reference, so the complex
noise variance per symbol is 1 / (2 * ebn0_linear). Fading, when enabled, is
an i.i.d. unit-power complex Gaussian coefficient per block, drawn
independently of the beamforming gains.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .arrays import ULA, ArrayGeometry, Direction, steering
from .codebooks import (
    MODE_GOLAY,
    ComplementarySet,
    SearchConfig,
    golay_construct,
    phase_alphabet,
    rbf_basis,
    rbf_phase_indices,
    search_complementary,
)

SINGLE = "single"
RBF = "rbf"
CBF_DIGITAL = "cbf-digital"
CBF_ANALOG = "cbf-analog"
SCHEMES = (SINGLE, RBF, CBF_DIGITAL, CBF_ANALOG)

AWGN = "awgn"
RAYLEIGH = "rayleigh"
CHANNELS = (AWGN, RAYLEIGH)

BER_CSV_COLUMNS = ("scheme", "channel", "angle_deg", "snr_db", "ber", "bit_errors", "bits")
NOISE_NOTE = "noise: sigma2 = 1/(2*ebn0_linear) per complex symbol; Es = 1, QPSK 2 bits/symbol"

_CHUNK_BLOCKS = 512
_ALPHABET_8 = phase_alphabet(8)


@dataclass(frozen=True)
class SimConfig:
    """One simulation run: a scheme observed from a fixed angle over a list
    of per-bit SNR (Eb/N0) points."""

    scheme: str
    geom: ArrayGeometry
    angle: Direction
    channel: str
    snr_db_list: tuple
    block_len: int = 100
    total_bits: int = 10_000_000
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "snr_db_list", tuple(float(s) for s in self.snr_db_list))
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.channel not in CHANNELS:
            raise ValueError(f"unknown channel {self.channel!r}")
        if not self.snr_db_list:
            raise ValueError("need at least one SNR point")
        if self.block_len < 1:
            raise ValueError("block_len must be >= 1")
        if self.total_bits < 2 or self.total_bits % 2 != 0:
            raise ValueError("total_bits must be even (QPSK carries 2 bits/symbol)")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")


@dataclass(frozen=True)
class BerCurve:
    """BER versus SNR samples with the raw error counts behind them."""

    snr_db: np.ndarray
    ber: np.ndarray
    bit_errors: np.ndarray
    bits_simulated: np.ndarray

    def __post_init__(self):
        for name in ("snr_db", "ber", "bit_errors", "bits_simulated"):
            object.__setattr__(self, name, np.asarray(getattr(self, name)))
        if not (self.snr_db.shape == self.ber.shape == self.bit_errors.shape
                == self.bits_simulated.shape):
            raise ValueError("curve arrays must share one shape")
        expected = self.bit_errors / np.maximum(self.bits_simulated, 1)
        if not np.allclose(self.ber, expected, rtol=0, atol=0):
            raise ValueError("ber must equal bit_errors / bits_simulated")


@dataclass(frozen=True)
class RbfState:
    """Schedule of random flat-coverage beams: a basis vector plus the seed
    that drives the per-block phase draws."""

    basis: np.ndarray
    seed: int

    def weights(self, tfb_index: int) -> np.ndarray:
        idx = rbf_phase_indices(self.seed, tfb_index, self.basis.size)
        return self.basis * _ALPHABET_8[idx]


def qpsk_modulate(bits: np.ndarray) -> np.ndarray:
    """Gray-mapped QPSK with unit symbol energy.

    Bit pair (b0, b1) maps to ((1-2*b0) + 1j*(1-2*b1)) / sqrt(2), so
    (0, 0) -> (1+1j)/sqrt(2) and (1, 1) -> (-1-1j)/sqrt(2).
    """
    bits = np.asarray(bits)
    if bits.size % 2 != 0:
        raise ValueError("QPSK needs an even number of bits")
    i = 1.0 - 2.0 * bits[0::2]
    q = 1.0 - 2.0 * bits[1::2]
    return (i + 1j * q) / math.sqrt(2)


def qpsk_demodulate(symbols: np.ndarray, channel_gain) -> np.ndarray:
    """Coherent minimum-distance QPSK decisions after derotating by the
    known channel gain (scalar or per-symbol array)."""
    symbols = np.asarray(symbols)
    gain = np.asarray(channel_gain)
    if np.any(gain == 0):
        raise ValueError("channel gain must be nonzero for coherent detection")
    z = symbols * np.conj(gain)
    bits = np.empty(2 * symbols.size, dtype=np.int64)
    bits[0::2] = (z.real < 0).astype(np.int64)
    bits[1::2] = (z.imag < 0).astype(np.int64)
    return bits


def _pair_gains(pair: ComplementarySet, geom: ArrayGeometry, angle: Direction):
    a = steering(geom, angle)
    root_n = math.sqrt(geom.n_elements)
    g1 = complex(np.conj(pair.vectors[0]) @ a) / root_n
    g2 = complex(np.conj(pair.vectors[1]) @ a) / root_n
    return g1, g2


def effective_gain(scheme: str, geom: ArrayGeometry, angle: Direction,
                   tfb_index: int, state=None) -> complex:
    """Complex channel gain seen by the receiver on one block.

    * single antenna: 1
    * rbf: the gain of that block's random beam (``state`` is an
      :class:`RbfState`)
    * cbf-digital: the real composite amplitude
      sqrt((|g1|^2 + |g2|^2) / 2), identical on every block (``state`` is a
      :class:`~omnibeam.codebooks.ComplementarySet`)
    * cbf-analog: g1 on even blocks, g2 on odd blocks (the receiver combines
      each consecutive pair)
    """
    if scheme == SINGLE:
        return 1.0 + 0.0j
    if scheme == RBF:
        if not isinstance(state, RbfState):
            raise ValueError("rbf needs an RbfState")
        w = state.weights(tfb_index)
        a = steering(geom, angle)
        return complex(np.conj(w) @ a) / math.sqrt(geom.n_elements)
    if scheme in (CBF_DIGITAL, CBF_ANALOG):
        if not isinstance(state, ComplementarySet):
            raise ValueError("cbf needs a ComplementarySet")
        g1, g2 = _pair_gains(state, geom, angle)
        if scheme == CBF_DIGITAL:
            return complex(math.sqrt((abs(g1) ** 2 + abs(g2) ** 2) / 2.0))
        return g1 if tfb_index % 2 == 0 else g2
    raise ValueError(f"unknown scheme {scheme!r}")


def qpsk_awgn_ber(snr_db) -> np.ndarray:
    """Closed-form QPSK bit error rate in AWGN: Q(sqrt(2 * Eb/N0))."""
    gamma = 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)
    return 0.5 * np.vectorize(math.erfc)(np.sqrt(gamma))


def qpsk_rayleigh_ber(snr_db) -> np.ndarray:
    """Closed-form QPSK bit error rate in flat Rayleigh fading:
    (1 - sqrt(g/(1+g))) / 2 with g the linear Eb/N0."""
    gamma = 10.0 ** (np.asarray(snr_db, dtype=float) / 10.0)
    return 0.5 * (1.0 - np.sqrt(gamma / (1.0 + gamma)))


def _rbf_block_gains(state: RbfState, c_vec: np.ndarray, root_n: float,
                     first_block: int, n_blocks: int) -> np.ndarray:
    idx = np.stack([
        rbf_phase_indices(state.seed, t, c_vec.size)
        for t in range(first_block, first_block + n_blocks)
    ])
    return (np.conj(_ALPHABET_8[idx]) @ c_vec) / root_n


def _simulate_point(cfg: SimConfig, snr_db: float, rng, gains_ctx,
                    min_errors: int, min_bits: int):
    gamma = 10.0 ** (snr_db / 10.0)
    sigma2 = 1.0 / (2.0 * gamma)
    noise_scale = math.sqrt(sigma2 / 2.0)
    rayleigh = cfg.channel == RAYLEIGH
    n_sym_total = cfg.total_bits // 2
    block_len = cfg.block_len

    errors = 0
    bits_done = 0
    sym_done = 0
    block_idx = 0
    while sym_done < n_sym_total:
        n_blocks = min(_CHUNK_BLOCKS, -(-(n_sym_total - sym_done) // block_len))
        n_sym = min(n_blocks * block_len, n_sym_total - sym_done)
        bits = rng.integers(0, 2, size=2 * n_sym)
        s = qpsk_modulate(bits)
        blk = np.minimum(np.arange(n_sym) // block_len, n_blocks - 1)

        if cfg.scheme == CBF_ANALOG:
            g1, g2 = gains_ctx
            fade = np.ones(n_blocks, dtype=complex)
            if rayleigh:
                fade = (rng.standard_normal(n_blocks)
                        + 1j * rng.standard_normal(n_blocks)) / math.sqrt(2)
            h1 = fade * (g1 / math.sqrt(2))
            h2 = fade * (g2 / math.sqrt(2))
            noise = (rng.standard_normal((2, n_sym))
                     + 1j * rng.standard_normal((2, n_sym))) * noise_scale
            y1 = h1[blk] * s + noise[0]
            y2 = h2[blk] * s + noise[1]
            z = np.conj(h1[blk]) * y1 + np.conj(h2[blk]) * y2
            g_eff = (np.abs(h1) ** 2 + np.abs(h2) ** 2)[blk]
            rx = qpsk_demodulate(z, g_eff)
        else:
            if cfg.scheme == SINGLE:
                h_block = np.ones(n_blocks, dtype=complex)
            elif cfg.scheme == CBF_DIGITAL:
                h_block = np.full(n_blocks, gains_ctx, dtype=complex)
            else:  # RBF
                state, c_vec, root_n = gains_ctx
                h_block = _rbf_block_gains(state, c_vec, root_n, block_idx, n_blocks)
            if rayleigh:
                h_block = h_block * (rng.standard_normal(n_blocks)
                                     + 1j * rng.standard_normal(n_blocks)) / math.sqrt(2)
            noise = (rng.standard_normal(n_sym)
                     + 1j * rng.standard_normal(n_sym)) * noise_scale
            h = h_block[blk]
            y = h * s + noise
            rx = qpsk_demodulate(y, h)

        errors += int(np.count_nonzero(rx != bits))
        bits_done += 2 * n_sym
        sym_done += n_sym
        block_idx += n_blocks
        if errors >= min_errors and bits_done >= min_bits:
            break
    return errors, bits_done


def run_ber(cfg: SimConfig, pair: ComplementarySet | None = None,
            rbf_basis_vec: np.ndarray | None = None, *,
            min_errors: int = 500, min_bits: int = 1_000_000) -> BerCurve:
    """Monte Carlo BER over ``cfg.snr_db_list``.

    Streams bits through QPSK, multiplies each block by the scheme's
    effective gain (times an independent per-block fade on the Rayleigh
    channel), adds noise calibrated to the per-bit SNR, detects coherently
    and counts errors. The transmit power budget is identical across
    schemes.

    Each SNR point draws from its own generator seeded with
    ``cfg.seed XOR point_index``, so results are independent of execution
    order and bit-identical for a given config. A point may stop early once
    it has seen ``min_errors`` errors and ``min_bits`` bits.

    ``pair`` overrides the complementary pair for the cbf schemes (default:
    constructed pair for the geometry); ``rbf_basis_vec`` overrides the rbf
    basis vector.
    """
    if cfg.scheme in (CBF_DIGITAL, CBF_ANALOG):
        if pair is None:
            if cfg.geom.kind == ULA:
                pair = golay_construct(cfg.geom.n_elements)
            else:
                pair = search_complementary(cfg.geom, SearchConfig(mode=MODE_GOLAY))
        g1, g2 = _pair_gains(pair, cfg.geom, cfg.angle)
        if cfg.scheme == CBF_DIGITAL:
            gains_ctx = math.sqrt((abs(g1) ** 2 + abs(g2) ** 2) / 2.0)
        else:
            gains_ctx = (g1, g2)
    elif cfg.scheme == RBF:
        basis = rbf_basis(cfg.geom) if rbf_basis_vec is None else np.asarray(rbf_basis_vec, dtype=complex)
        state = RbfState(basis, cfg.seed)
        c_vec = np.conj(basis) * steering(cfg.geom, cfg.angle)
        gains_ctx = (state, c_vec, math.sqrt(cfg.geom.n_elements))
    else:
        gains_ctx = None

    errors = []
    bits = []
    for j, snr_db in enumerate(cfg.snr_db_list):
        rng = np.random.default_rng(cfg.seed ^ j)
        e, b = _simulate_point(cfg, snr_db, rng, gains_ctx, min_errors, min_bits)
        errors.append(e)
        bits.append(b)
    errors = np.array(errors, dtype=np.int64)
    bits = np.array(bits, dtype=np.int64)
    return BerCurve(
        snr_db=np.array(cfg.snr_db_list),
        ber=errors / bits,
        bit_errors=errors,
        bits_simulated=bits,
    )


def angle_sweep(cfg: SimConfig, angles, pair: ComplementarySet | None = None,
                **kwargs) -> list:
    """Run :func:`run_ber` at each receiver angle with a per-angle seed
    offset from the shared base seed."""
    curves = []
    for i, angle in enumerate(angles):
        if not isinstance(angle, Direction):
            angle = Direction(float(angle))
        sub = replace(cfg, angle=angle, seed=cfg.seed + i)
        curves.append(run_ber(sub, pair=pair, **kwargs))
    return curves


def write_ber_csv(path, curves, configs) -> None:
    """Write one or more curves with the fixed column schema
    scheme, channel, angle_deg, snr_db, ber, bit_errors, bits."""
    if isinstance(curves, BerCurve):
        curves = [curves]
        configs = [configs]
    with open(path, "w", newline="") as f:
        f.write(f"# {NOISE_NOTE}\n")
        f.write(",".join(BER_CSV_COLUMNS) + "\n")
        for curve, cfg in zip(curves, configs):
            angle_deg = math.degrees(cfg.angle.theta)
            for i in range(curve.snr_db.size):
                f.write(
                    f"{cfg.scheme},{cfg.channel},{angle_deg:.10g},"
                    f"{float(curve.snr_db[i])!r},{float(curve.ber[i])!r},"
                    f"{int(curve.bit_errors[i])},{int(curve.bits_simulated[i])}\n"
                )
