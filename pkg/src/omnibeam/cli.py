"""Command-line front end.

Commands: ``search`` (complementary-pair codebooks), ``pattern`` (CSV/SVG
beam patterns), ``variance`` (flatness reports), ``simulate`` (Monte Carlo
BER), ``sweep-angles`` (BER at several receiver angles).

Every command writes a ``<command>-manifest.json`` next to its outputs with
the fully resolved configuration; re-running with ``--config`` pointing at
that manifest reproduces the outputs byte for byte. A config file may supply
any flag; explicit flags win over the file.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__
from .arrays import ULA, ArrayGeometry, Direction
from .codebooks import (
    MODE_EXHAUSTIVE,
    ComplementarySet,
    SearchConfig,
    save_codebook,
    load_codebook,
    search_complementary,
)
from .patterns import (
    PER_ELEMENT,
    VARIANCE_MODE_INTEGRAL,
    AngularGrid,
    composite_power,
    evaluate_pattern,
    pattern_variance,
    write_pattern_csv,
)
from .linksim import (
    AWGN,
    CBF_ANALOG,
    CBF_DIGITAL,
    RAYLEIGH,
    RBF,
    SINGLE,
    SimConfig,
    angle_sweep,
    qpsk_awgn_ber,
    qpsk_rayleigh_ber,
    run_ber,
    write_ber_csv,
)
from .svgplot import polar_pattern_svg, semilog_ber_svg

_SCHEME_ALIASES = {
    "single": SINGLE,
    "rbf": RBF,
    "cbf": CBF_DIGITAL,
    "cbf-digital": CBF_DIGITAL,
    "cbf-analog": CBF_ANALOG,
}

_DEFAULTS = {
    "search": {
        "ula": None, "upa": None, "spacing": 0.5, "spacing_y": None,
        "k": 2, "mode": MODE_EXHAUSTIVE, "budget": 100_000,
        "out": "codebook.txt", "seed": 0, "grid_points": 4096,
    },
    "pattern": {
        "codebook": None, "vector": None, "ula": None, "upa": None,
        "spacing": 0.5, "spacing_y": None, "svg": False,
        "seed": 0, "grid_points": 4096,
    },
    "variance": {
        "codebook": None, "vector": None, "ula": None, "upa": None,
        "spacing": 0.5, "spacing_y": None,
        "seed": 0, "grid_points": 4096,
    },
    "simulate": {
        "scheme": None, "channel": AWGN, "snr": "0:2:10",
        "angle_deg": 30.0, "elev_deg": 90.0,
        "ula": 8, "upa": None, "spacing": 0.5, "spacing_y": None,
        "bits": 10_000_000, "block_len": 100, "codebook": None,
        "out": "ber.csv", "svg": False, "seed": 0, "grid_points": 4096,
    },
    "sweep-angles": {
        "scheme": None, "channel": AWGN, "snr": "0:2:10",
        "angles": "0,45,90,135,200", "elev_deg": 90.0,
        "ula": 8, "upa": None, "spacing": 0.5, "spacing_y": None,
        "bits": 10_000_000, "block_len": 100, "codebook": None,
        "out": "ber_sweep.csv", "svg": False, "seed": 0, "grid_points": 4096,
    },
}


def _parse_vector(text: str) -> np.ndarray:
    try:
        entries = [complex(tok.strip().replace(" ", "")) for tok in text.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"could not parse vector {text!r}: {exc}") from exc
    if not entries:
        raise ValueError("empty weight vector")
    return np.array(entries, dtype=complex)


def _parse_snr(text: str) -> tuple:
    text = str(text).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"SNR range must be start:step:stop, got {text!r}")
        start, step, stop = (float(p) for p in parts)
        if step <= 0:
            raise ValueError("SNR step must be positive")
        n = int(math.floor((stop - start) / step + 1e-9)) + 1
        if n < 1:
            raise ValueError(f"empty SNR range {text!r}")
        return tuple(start + i * step for i in range(n))
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


def _load_config_file(path: str, command: str) -> dict:
    with open(path) as f:
        data = json.load(f)
    if not isinstance(data, dict):
        raise ValueError("config file must hold a JSON object")
    if "config" in data and "command" in data:  # a manifest
        if data["command"] != command:
            raise ValueError(
                f"manifest was written by {data['command']!r}, not {command!r}"
            )
        data = data["config"]
    return data


def _resolve(args: argparse.Namespace, command: str) -> dict:
    defaults = _DEFAULTS[command]
    resolved = dict(defaults)
    if getattr(args, "config", None):
        file_cfg = _load_config_file(args.config, command)
        for key, value in file_cfg.items():
            if key not in defaults:
                raise ValueError(f"unknown config key {key!r} for command {command!r}")
            resolved[key] = value
    for key in defaults:
        value = getattr(args, key.replace("-", "_"), None)
        if value is not None:
            resolved[key] = value
    if "upa" in resolved and resolved["upa"] is not None:
        resolved["upa"] = [int(v) for v in resolved["upa"]]
    return resolved


def _geometry(cfg: dict) -> ArrayGeometry:
    d = float(cfg.get("spacing") or 0.5)
    dy = cfg.get("spacing_y")
    dy = d if dy is None else float(dy)
    if cfg.get("upa") is not None:
        nx, ny = cfg["upa"]
        return ArrayGeometry.upa(nx, ny, d, dy)
    if cfg.get("ula") is not None:
        return ArrayGeometry.ula(int(cfg["ula"]), d)
    raise ValueError("no geometry given: use --ula N or --upa NX NY")


def _grid_for(geom: ArrayGeometry, points: int) -> AngularGrid:
    if geom.kind == ULA:
        return AngularGrid.default_ula(int(points))
    n_phi = max(2, int(round(math.sqrt(points / 2))))
    return AngularGrid.default_upa(n_phi, 2 * n_phi)


def _write_manifest(out_dir: Path, command: str, cfg: dict, outputs: list) -> Path:
    manifest = {
        "command": command,
        "config": cfg,
        "seed": cfg.get("seed", 0),
        "tool_version": __version__,
        "outputs": outputs,
    }
    path = out_dir / f"{command}-manifest.json"
    with open(path, "w", newline="") as f:
        f.write(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path


def _out_dir(args) -> Path:
    out = Path(getattr(args, "out_dir", None) or ".")
    out.mkdir(parents=True, exist_ok=True)
    return out


def _beams_from_cfg(cfg: dict):
    """Resolve (vectors, geometry) from either a codebook file or an inline
    vector plus geometry flags."""
    if cfg.get("codebook"):
        cset, geom, _, _ = load_codebook(cfg["codebook"])
        return list(cset.vectors), geom
    if cfg.get("vector"):
        vec = _parse_vector(cfg["vector"])
        geom = _geometry(cfg)
        if vec.size != geom.n_elements:
            raise ValueError(
                f"vector has {vec.size} entries but the geometry has "
                f"{geom.n_elements} elements"
            )
        return [vec], geom
    raise ValueError("need --codebook FILE or --vector COEFFS")


def cmd_search(args) -> int:
    cfg = _resolve(args, "search")
    out_dir = _out_dir(args)
    geom = _geometry(cfg)
    search_cfg = SearchConfig(
        k=int(cfg["k"]),
        mode=cfg["mode"],
        budget=int(cfg["budget"]),
        grid=_grid_for(geom, int(cfg["grid_points"])),
        seed=int(cfg["seed"]),
    )
    t0 = time.perf_counter()
    result = search_complementary(geom, search_cfg)
    elapsed = time.perf_counter() - t0
    path = out_dir / cfg["out"]
    save_codebook(path, result, geom, mode=cfg["mode"], seed=int(cfg["seed"]))
    _write_manifest(out_dir, "search", cfg, [cfg["out"]])
    print(f"composite variance: {result.composite_variance!r}")
    print(f"search time: {elapsed:.3f} s")
    print(f"codebook written to {path}")
    return 0


def _evaluate_beams(vectors, geom, grid):
    return [evaluate_pattern(w, geom, grid, PER_ELEMENT) for w in vectors]


def cmd_pattern(args) -> int:
    cfg = _resolve(args, "pattern")
    out_dir = _out_dir(args)
    vectors, geom = _beams_from_cfg(cfg)
    grid = _grid_for(geom, int(cfg["grid_points"]))
    patterns = _evaluate_beams(vectors, geom, grid)
    outputs = []
    for i, pat in enumerate(patterns, start=1):
        name = f"beam_{i}.csv"
        write_pattern_csv(out_dir / name, pat)
        outputs.append(name)
        print(f"beam {i}: variance = {pattern_variance(pat)!r}")
    if len(patterns) >= 2:
        comp = np.sqrt(composite_power(patterns))
        name = "composite.csv"
        with open(out_dir / name, "w", newline="") as f:
            f.write("phi_rad,theta_rad,composite\n")
            for p, phi in enumerate(grid.phis):
                for t, theta in enumerate(grid.thetas):
                    f.write(f"{float(phi)!r},{float(theta)!r},{float(comp[p, t])!r}\n")
        outputs.append(name)
        print(f"composite: variance = {pattern_variance(comp ** 2, grid)!r}")
    if cfg["svg"]:
        if grid.is_planar:
            print("svg output covers azimuth cuts only; skipping for a planar grid")
        else:
            traces = [(f"beam {i}", np.abs(p.gains[0])) for i, p in enumerate(patterns, 1)]
            if len(patterns) >= 2:
                traces.append(("composite", np.sqrt(composite_power(patterns))[0]))
            name = "pattern.svg"
            polar_pattern_svg(out_dir / name, grid.thetas, traces)
            outputs.append(name)
    _write_manifest(out_dir, "pattern", cfg, outputs)
    return 0


def cmd_variance(args) -> int:
    cfg = _resolve(args, "variance")
    out_dir = _out_dir(args)
    vectors, geom = _beams_from_cfg(cfg)
    grid = _grid_for(geom, int(cfg["grid_points"]))
    patterns = _evaluate_beams(vectors, geom, grid)
    lines = []
    for i, pat in enumerate(patterns, start=1):
        lines.append(f"beam_{i} variance_mean = {pattern_variance(pat)!r}")
        lines.append(
            f"beam_{i} variance_integral = "
            f"{pattern_variance(pat, mode=VARIANCE_MODE_INTEGRAL)!r}"
        )
    if len(patterns) >= 2:
        power = composite_power(patterns)
        lines.append(f"composite variance_mean = {pattern_variance(power, grid)!r}")
        lines.append(
            f"composite variance_integral = "
            f"{pattern_variance(power, grid, mode=VARIANCE_MODE_INTEGRAL)!r}"
        )
    name = "variance.txt"
    with open(out_dir / name, "w", newline="") as f:
        f.write("\n".join(lines) + "\n")
    for line in lines:
        print(line)
    _write_manifest(out_dir, "variance", cfg, [name])
    return 0


def _sim_config(cfg: dict, angle_deg: float, seed: int) -> SimConfig:
    geom = _geometry(cfg)
    scheme = _SCHEME_ALIASES.get(str(cfg["scheme"] or ""))
    if scheme is None:
        raise ValueError(
            f"unknown scheme {cfg['scheme']!r}; choose from {sorted(_SCHEME_ALIASES)}"
        )
    return SimConfig(
        scheme=scheme,
        geom=geom,
        angle=Direction(math.radians(float(angle_deg)),
                        math.radians(float(cfg["elev_deg"]))),
        channel=cfg["channel"],
        snr_db_list=_parse_snr(cfg["snr"]),
        block_len=int(cfg["block_len"]),
        total_bits=int(cfg["bits"]),
        seed=seed,
    )


def _load_pair(cfg: dict) -> ComplementarySet | None:
    if cfg.get("codebook"):
        cset, _, _, _ = load_codebook(cfg["codebook"])
        return cset
    return None


def _reference_curve(channel: str, snr_db):
    oracle = qpsk_awgn_ber if channel == AWGN else qpsk_rayleigh_ber
    return oracle(np.asarray(snr_db))


def cmd_simulate(args) -> int:
    cfg = _resolve(args, "simulate")
    out_dir = _out_dir(args)
    sim = _sim_config(cfg, cfg["angle_deg"], int(cfg["seed"]))
    curve = run_ber(sim, pair=_load_pair(cfg))
    write_ber_csv(out_dir / cfg["out"], curve, sim)
    outputs = [cfg["out"]]
    for s, b, e, n in zip(curve.snr_db, curve.ber, curve.bit_errors, curve.bits_simulated):
        print(f"{sim.scheme} {sim.channel} {s:g} dB: ber {b:.6e} ({e} errors / {n} bits)")
    if cfg["svg"]:
        name = "ber.svg"
        semilog_ber_svg(
            out_dir / name, curve.snr_db,
            [(sim.scheme, curve.ber),
             ("reference", _reference_curve(sim.channel, curve.snr_db))],
            title=f"uncoded BER, {sim.channel}",
        )
        outputs.append(name)
    _write_manifest(out_dir, "simulate", cfg, outputs)
    return 0


def cmd_sweep_angles(args) -> int:
    cfg = _resolve(args, "sweep-angles")
    out_dir = _out_dir(args)
    angles = [float(tok) for tok in str(cfg["angles"]).split(",") if tok.strip()]
    if not angles:
        raise ValueError("no angles given")
    base = _sim_config(cfg, angles[0], int(cfg["seed"]))
    directions = [Direction(math.radians(a), math.radians(float(cfg["elev_deg"])))
                  for a in angles]
    curves = angle_sweep(base, directions, pair=_load_pair(cfg))
    configs = [SimConfig(base.scheme, base.geom, d, base.channel, base.snr_db_list,
                         base.block_len, base.total_bits, base.seed + i)
               for i, d in enumerate(directions)]
    write_ber_csv(out_dir / cfg["out"], curves, configs)
    outputs = [cfg["out"]]
    for a, curve in zip(angles, curves):
        worst = float(np.max(curve.ber))
        print(f"angle {a:g} deg: max ber {worst:.6e}")
    if cfg["svg"]:
        name = "ber_sweep.svg"
        semilog_ber_svg(
            out_dir / name, curves[0].snr_db,
            [(f"{a:g} deg", c.ber) for a, c in zip(angles, curves)],
            title=f"{base.scheme} BER by angle, {base.channel}",
        )
        outputs.append(name)
    _write_manifest(out_dir, "sweep-angles", cfg, outputs)
    return 0


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None, help="base RNG seed")
    p.add_argument("--out-dir", default=None, help="directory for outputs (default .)")
    p.add_argument("--grid-points", type=int, default=None,
                   help="azimuth samples for pattern grids (default 4096)")
    p.add_argument("--config", default=None,
                   help="JSON config file or a previously written manifest; "
                        "explicit flags win")


def _add_geometry(p: argparse.ArgumentParser, ula_help="ULA element count") -> None:
    p.add_argument("--ula", type=int, default=None, help=ula_help)
    p.add_argument("--upa", type=int, nargs=2, metavar=("NX", "NY"), default=None,
                   help="UPA rows and columns (takes precedence over --ula)")
    p.add_argument("--spacing", type=float, default=None,
                   help="element spacing in wavelengths (default 0.5)")
    p.add_argument("--spacing-y", type=float, default=None,
                   help="UPA column spacing in wavelengths (default: --spacing)")


def _add_beam_source(p: argparse.ArgumentParser) -> None:
    p.add_argument("--codebook", default=None, help="codebook file from `search`")
    p.add_argument("--vector", default=None,
                   help="inline weight vector, comma-separated complex entries")


def _add_sim_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--scheme", default=None,
                   help="single | rbf | cbf | cbf-digital | cbf-analog")
    p.add_argument("--channel", default=None, choices=[AWGN, RAYLEIGH])
    p.add_argument("--snr", default=None,
                   help="Eb/N0 list: 'start:step:stop' (inclusive) or comma list, dB")
    p.add_argument("--bits", type=int, default=None, help="bits per SNR point")
    p.add_argument("--block-len", type=int, default=None, help="symbols per block")
    p.add_argument("--elev-deg", type=float, default=None,
                   help="receiver elevation in degrees (default 90)")
    p.add_argument("--codebook", default=None,
                   help="codebook file supplying the cbf beam pair")
    p.add_argument("--out", default=None, help="output CSV name")
    p.add_argument("--svg", action=argparse.BooleanOptionalAction, default=None,
                   help="also write an SVG plot")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="omnibeam",
        description="Complementary beam pairs and broadcast BER simulation "
                    "for antenna arrays.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="search or construct a complementary beam pair")
    _add_geometry(p)
    p.add_argument("--k", type=int, default=None, help="phase alphabet size (default 2)")
    p.add_argument("--mode", default=None, choices=["exhaustive", "randomized", "golay"])
    p.add_argument("--budget", type=int, default=None,
                   help="candidate pairs for randomized mode")
    p.add_argument("--out", default=None, help="codebook file name")
    _add_common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("pattern", help="export beam patterns as CSV (and SVG)")
    _add_beam_source(p)
    _add_geometry(p, ula_help="ULA element count (with --vector)")
    p.add_argument("--svg", action=argparse.BooleanOptionalAction, default=None,
                   help="also write a polar SVG plot")
    _add_common(p)
    p.set_defaults(func=cmd_pattern)

    p = sub.add_parser("variance", help="report pattern flatness metrics")
    _add_beam_source(p)
    _add_geometry(p, ula_help="ULA element count (with --vector)")
    _add_common(p)
    p.set_defaults(func=cmd_variance)

    p = sub.add_parser("simulate", help="Monte Carlo BER at one receiver angle")
    _add_sim_flags(p)
    p.add_argument("--angle-deg", type=float, default=None,
                   help="receiver azimuth in degrees (default 30)")
    _add_geometry(p, ula_help="ULA element count (default 8)")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep-angles", help="Monte Carlo BER at several angles")
    _add_sim_flags(p)
    p.add_argument("--angles", default=None,
                   help="comma-separated receiver azimuths in degrees")
    _add_geometry(p, ula_help="ULA element count (default 8)")
    _add_common(p)
    p.set_defaults(func=cmd_sweep_angles)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
