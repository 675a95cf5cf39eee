"""Command-line front end for the delay-Doppler pulse toolkit.

One binary, eight subcommands, all driven by the same declarative JSON
config.  Flags override config values; the DD_ISAC_SEED environment
variable overrides every other seed source.  Outputs are UTF-8 CSV or
JSON with LF line endings.  Exit status: 0 success, 2 bad invocation or
config, 1 runtime failure.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import os
import sys
import warnings

import numpy as np

from .bounds import (
    FIM_CLOSED,
    TruncationWarning,
    crlb_closed_form,
    crlb_from_fim,
    fim_closed_form,
    fim_discrete,
    snr_to_kfim,
)
from .capacity import CapacityConfig, Normalization, ergodic_capacity
from .channel import effective_channel, sample_veh_a, sample_wssus
from .covariance import (
    ScatterStats,
    assemble_covariance,
    condition_number,
    ipr,
    jensen_capacity,
    mc_covariance,
)
from .grid import GridSpec
from .pulses import PULSE_KINDS, PulseParams, sample_pulse
from .sweep import (
    CommSetup,
    SenseSetup,
    SweepAxes,
    read_records_csv,
    records_to_csv,
    run_sweep,
    tradeoff_extract,
    write_manifest,
)

SEED_ENV = "DD_ISAC_SEED"


class ConfigError(Exception):
    """Invalid config file or invalid flag/config combination."""


_INT = "integer"
_NUM = "number"
_STR = "string"
_SNR = "number or list of numbers"

# every key a config file may carry, with its expected JSON shape
CONFIG_SCHEMA = {
    "grid_m": _INT,
    "grid_n": _INT,
    "frame_duration_s": _NUM,
    "bandwidth_hz": _NUM,
    "pulse": _STR,
    "gamma": _NUM,
    "alpha_c": _NUM,
    "beta_c": _NUM,
    "rrc_rolloff": _NUM,
    "channel_model": _STR,
    "paths": _INT,
    "sigma_h2": _NUM,
    "tau_max_s": _NUM,
    "nu_max_hz": _NUM,
    "snr_db": _SNR,
    "realizations": _INT,
    "mc_draws": _INT,
    "master_seed": _INT,
    "sense_m": _INT,
    "sense_n": _INT,
    "fim_domain": _STR,
    "sweep_points": _INT,
    "out": _STR,
}

_COMMON = dict(
    frame_duration_s=1.12e-3,
    bandwidth_hz=28e3,
    pulse="tgp",
    gamma=1.0,
    alpha_c=0.0,
    beta_c=0.0,
    rrc_rolloff=0.6,
    sigma_h2=1.0,
    mc_draws=1000,
    master_seed=0,
    sense_m=256,
    sense_n=256,
    fim_domain="cell",
    sweep_points=20,
    out=None,
)

# covariance-analysis defaults: small grid, uniform scattering
COVARIANCE_DEFAULTS = dict(
    _COMMON,
    grid_m=8,
    grid_n=8,
    channel_model="wssus",
    paths=8,
    tau_max_s=None,
    nu_max_hz=None,
    snr_db=(15.0,),
    realizations=1000,
)

# joint-analysis defaults: communication grid, vehicular channel
ISAC_DEFAULTS = dict(
    _COMMON,
    grid_m=16,
    grid_n=16,
    channel_model="veh_a",
    paths=6,
    tau_max_s=None,
    nu_max_hz=815.0,
    snr_db=(0.0, 4.0, 8.0, 12.0, 16.0, 20.0),
    realizations=160,
)

_TABLE_BY_COMMAND = {
    "channel": COVARIANCE_DEFAULTS,
    "covariance": COVARIANCE_DEFAULTS,
    "validate": COVARIANCE_DEFAULTS,
    "pulse": ISAC_DEFAULTS,
    "crlb": ISAC_DEFAULTS,
    "capacity": ISAC_DEFAULTS,
    "sweep": ISAC_DEFAULTS,
    "tradeoff": ISAC_DEFAULTS,
}


def _coerce(key: str, value):
    kind = CONFIG_SCHEMA[key]
    if kind == _INT:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"key '{key}': expected {kind}, got {value!r}")
        return value
    if kind == _NUM:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"key '{key}': expected {kind}, got {value!r}")
        return float(value)
    if kind == _STR:
        if not isinstance(value, str):
            raise ConfigError(f"key '{key}': expected {kind}, got {value!r}")
        return value
    # SNR: scalar or list
    if isinstance(value, bool):
        raise ConfigError(f"key '{key}': expected {kind}, got {value!r}")
    if isinstance(value, (int, float)):
        return (float(value),)
    if isinstance(value, list) and value and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in value
    ):
        return tuple(float(v) for v in value)
    raise ConfigError(f"key '{key}': expected {kind}, got {value!r}")


def load_config(command: str, path: str | None, overrides: dict) -> dict:
    """Merge table defaults, config file, flag overrides, and the env seed."""
    cfg = dict(_TABLE_BY_COMMAND[command])
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                doc = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(
                f"malformed JSON in {path} at line {exc.lineno}: {exc.msg}"
            ) from exc
        if not isinstance(doc, dict):
            raise ConfigError(f"config {path} must be a JSON object")
        unknown = sorted(set(doc) - set(CONFIG_SCHEMA))
        if unknown:
            raise ConfigError(
                f"unknown config key(s) {', '.join(map(repr, unknown))}; "
                f"known keys: {', '.join(sorted(CONFIG_SCHEMA))}"
            )
        for key, value in doc.items():
            cfg[key] = _coerce(key, value)
    for key, value in overrides.items():
        if value is not None:
            cfg[key] = value
    env_seed = os.environ.get(SEED_ENV)
    if env_seed is not None:
        try:
            cfg["master_seed"] = int(env_seed)
        except ValueError:
            raise ConfigError(
                f"{SEED_ENV} must be an integer, got {env_seed!r}"
            ) from None
    return cfg


def _build_grid(cfg: dict, sensing: bool = False) -> GridSpec:
    m = cfg["sense_m"] if sensing else cfg["grid_m"]
    n = cfg["sense_n"] if sensing else cfg["grid_n"]
    try:
        return GridSpec(m, n, cfg["frame_duration_s"], cfg["bandwidth_hz"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _build_pulse(cfg: dict, g: GridSpec):
    kind = cfg["pulse"]
    if kind not in PULSE_KINDS:
        raise ConfigError(
            f"unknown pulse {kind!r}; choose from {', '.join(PULSE_KINDS)}"
        )
    try:
        if kind == "tgp":
            params = PulseParams(cfg["gamma"], cfg["alpha_c"], cfg["beta_c"])
            return sample_pulse(kind, g, params)
        rolloff = (cfg["rrc_rolloff"], cfg["rrc_rolloff"])
        return sample_pulse(kind, g, rolloff=rolloff)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _scatter_stats(cfg: dict, g: GridSpec) -> ScatterStats:
    tau_max = cfg["tau_max_s"] if cfg["tau_max_s"] is not None else 5.0 * g.d_tau
    nu_max = cfg["nu_max_hz"] if cfg["nu_max_hz"] is not None else 2.0 * g.d_nu
    try:
        return ScatterStats(
            p=cfg["paths"], sigma_h2=cfg["sigma_h2"], tau_max=tau_max, nu_max=nu_max
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _path_sampler(cfg: dict, g: GridSpec):
    model = cfg["channel_model"]
    if model == "veh_a":
        nu_max = cfg["nu_max_hz"] if cfg["nu_max_hz"] is not None else 815.0
        return lambda rng: sample_veh_a(nu_max, rng)
    if model == "wssus":
        stats = _scatter_stats(cfg, g)
        return lambda rng: sample_wssus(
            stats.p, stats.sigma_h2, stats.tau_max, stats.nu_max, rng
        )
    raise ConfigError(f"unknown channel model {model!r}; choose veh_a or wssus")


def _emit(text: str, out: str | None, summary: str) -> None:
    """Write an artifact to `out` (stdout when None) plus a summary line."""
    if out is None:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    else:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        print(summary)


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def _fmt(value) -> str:
    if value is None:
        return ""
    return format(value, ".17g")


def _cmd_pulse(args) -> int:
    cfg = load_config("pulse", args.config, _flag_overrides(args))
    g = _build_grid(cfg)
    pulse = _build_pulse(cfg, g)
    rows = []
    for m in range(g.M):
        for n in range(g.N):
            v = pulse.samples[m, n]
            rows.append((m, n, _fmt(v.real), _fmt(v.imag), _fmt(abs(v))))
    text = _csv_text(("m", "n", "re", "im", "abs"), rows)
    _emit(
        text,
        cfg["out"],
        f"pulse {cfg['pulse']} on {g.M}x{g.N}: {len(rows)} samples, unit energy",
    )
    return 0


def _cmd_channel(args) -> int:
    cfg = load_config("channel", args.config, _flag_overrides(args))
    g = _build_grid(cfg)
    pulse = _build_pulse(cfg, g)
    sampler = _path_sampler(cfg, g)
    rng = np.random.default_rng(cfg["master_seed"])
    paths = sampler(rng)
    ch = effective_channel(paths, pulse)
    header = {
        "grid": {"M": g.M, "N": g.N, "T": g.T, "B": g.B},
        "pulse": _pulse_doc(cfg),
        "channel_model": cfg["channel_model"],
        "seed": cfg["master_seed"],
        "flattening": "delay_major p=k*N+l",
        "wrap": True,
        "doppler_twist": "transmit",
    }
    rows = []
    for p in range(g.mn):
        for q in range(g.mn):
            v = ch.matrix[p, q]
            rows.append((p, q, _fmt(v.real), _fmt(v.imag)))
    text = json.dumps(header) + "\n" + _csv_text(("p", "q", "re", "im"), rows)
    _emit(
        text,
        cfg["out"],
        f"channel {cfg['channel_model']} on {g.M}x{g.N}: "
        f"{g.mn}x{g.mn} matrix, seed {cfg['master_seed']}",
    )
    return 0


def _pulse_doc(cfg: dict) -> dict:
    doc = {"kind": cfg["pulse"]}
    if cfg["pulse"] == "tgp":
        doc.update(gamma=cfg["gamma"], alpha_c=cfg["alpha_c"], beta_c=cfg["beta_c"])
    if cfg["pulse"] == "rrc":
        doc["rolloff"] = cfg["rrc_rolloff"]
    return doc


def _cmd_covariance(args) -> int:
    cfg = load_config("covariance", args.config, _flag_overrides(args))
    g = _build_grid(cfg)
    if cfg["pulse"] != "tgp":
        raise ConfigError("the covariance model is defined for the tgp pulse")
    try:
        params = PulseParams(cfg["gamma"], cfg["alpha_c"], cfg["beta_c"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    stats = _scatter_stats(cfg, g)
    model = assemble_covariance(params, g, stats)
    snr_db = cfg["snr_db"][0]
    report = {
        "ipr": ipr(model.r_h),
        "condition_number": condition_number(model.r_h),
        "jensen_capacity_bits": jensen_capacity(
            model.r_h, 10.0 ** (snr_db / 10.0), g.mn
        ),
        "grid": {"M": g.M, "N": g.N, "T": g.T, "B": g.B},
        "params": _pulse_doc(cfg),
        "channel_stats": {
            "paths": stats.p,
            "sigma_h2": stats.sigma_h2,
            "tau_max_s": stats.tau_max,
            "nu_max_hz": stats.nu_max,
            "snr_db": snr_db,
            "trace": float(np.real(np.trace(model.r_h))),
        },
    }
    text = json.dumps(report, indent=2) + "\n"
    _emit(
        text,
        cfg["out"],
        f"covariance report on {g.M}x{g.N} "
        f"(gamma={cfg['gamma']:g}, alpha_c={cfg['alpha_c']:g}, "
        f"beta_c={cfg['beta_c']:g})",
    )
    return 0


def _cmd_crlb(args) -> int:
    cfg = load_config("crlb", args.config, _flag_overrides(args))
    g = _build_grid(cfg, sensing=True)
    method = args.method
    if cfg["pulse"] != "tgp":
        if method == "closed":
            raise ConfigError("closed-form bounds exist only for the tgp pulse")
        method = "discrete"
    elif method is None:
        method = "closed"
    try:
        params = (
            PulseParams(cfg["gamma"], cfg["alpha_c"], cfg["beta_c"])
            if cfg["pulse"] == "tgp"
            else None
        )
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    rows = []
    fim_k1 = None
    if method == "discrete":
        pulse = _build_pulse(cfg, g)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            fim_k1 = fim_discrete(pulse, 1.0, domain=cfg["fim_domain"])
    for db in cfg["snr_db"]:
        k_fim = snr_to_kfim(db)
        if method == "closed":
            bound = crlb_closed_form(params, g, k_fim)
            label = FIM_CLOSED
        else:
            scaled = dataclasses.replace(fim_k1, k_fim=k_fim)
            bound = crlb_from_fim(scaled, g)
            label = f"discrete_{cfg['fim_domain']}"
        rows.append(
            (
                _fmt(cfg["gamma"]) if params is not None else "",
                _fmt(cfg["alpha_c"]) if params is not None else "",
                _fmt(cfg["beta_c"]) if params is not None else "",
                _fmt(db),
                _fmt(bound.crlb_tau),
                _fmt(bound.crlb_nu),
                _fmt(bound.rho2),
                _fmt(bound.q_det),
                label,
            )
        )
    text = _csv_text(
        ("gamma", "alpha_c", "beta_c", "snr_db", "crlb_tau_s2", "crlb_nu_hz2",
         "rho2", "q_det", "method"),
        rows,
    )
    last = rows[-1]
    _emit(
        text,
        cfg["out"],
        f"crlb {cfg['pulse']} ({last[-1]}): at {last[3]} dB "
        f"crlb_tau_s2={last[4]} crlb_nu_hz2={last[5]} rho2={last[6]}",
    )
    return 0


def _cmd_capacity(args) -> int:
    cfg = load_config("capacity", args.config, _flag_overrides(args))
    g = _build_grid(cfg)
    pulse = _build_pulse(cfg, g)
    sampler = _path_sampler(cfg, g)
    cap_cfg = CapacityConfig(
        snr_db=cfg["snr_db"],
        mn=g.mn,
        realizations=cfg["realizations"],
        normalization=Normalization.UNIT_FROBENIUS,
        master_seed=cfg["master_seed"],
    )
    points = ergodic_capacity(cap_cfg, sampler, pulse)
    is_tgp = cfg["pulse"] == "tgp"
    rows = [
        (
            cfg["pulse"],
            _fmt(cfg["gamma"]) if is_tgp else "",
            _fmt(cfg["alpha_c"]) if is_tgp else "",
            _fmt(cfg["beta_c"]) if is_tgp else "",
            _fmt(pt.snr_db),
            _fmt(pt.mean),
            _fmt(pt.stderr),
            pt.realizations,
            cfg["master_seed"],
        )
        for pt in points
    ]
    text = _csv_text(
        ("pulse", "gamma", "alpha_c", "beta_c", "snr_db", "capacity_mean",
         "capacity_stderr", "realizations", "seed"),
        rows,
    )
    top = points[-1]
    _emit(
        text,
        cfg["out"],
        f"capacity {cfg['pulse']} on {g.M}x{g.N}: {top.mean:.2f} bits at "
        f"{top.snr_db:g} dB over {top.realizations} realizations",
    )
    return 0


def _sweep_axes(cfg: dict) -> SweepAxes:
    n = cfg["sweep_points"]
    if n < 1:
        raise ConfigError("sweep_points must be >= 1")
    return SweepAxes(
        gamma=tuple(np.geomspace(0.01, 100.0, n)),
        alpha_c=tuple(np.linspace(0.0, 50.0, n)),
        beta_c=tuple(np.linspace(0.0, 10.0, n)),
        snr_db=cfg["snr_db"],
    )


def _cmd_sweep(args) -> int:
    cfg = load_config("sweep", args.config, _flag_overrides(args))
    axes = _sweep_axes(cfg)
    comm = CommSetup(
        grid=_build_grid(cfg),
        realizations=cfg["realizations"],
        nu_max=cfg["nu_max_hz"] if cfg["nu_max_hz"] is not None else 815.0,
        master_seed=cfg["master_seed"],
    )
    sense = SenseSetup(grid=_build_grid(cfg, sensing=True))
    out = cfg["out"] if cfg["out"] is not None else "sweep.csv"

    progress = None
    if args.progress:
        import time

        t0 = time.monotonic()

        def progress(done, total):
            rate = (time.monotonic() - t0) / done
            eta = rate * (total - done)
            print(
                f"slice {done}/{total} done, eta {eta/60.0:.1f} min",
                file=sys.stderr,
                flush=True,
            )

    records = run_sweep(
        axes,
        comm,
        sense,
        shard_dir=args.shard_dir,
        progress=progress,
        threads=args.threads or _default_threads(),
    )
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(records_to_csv(records))
    manifest = args.manifest if args.manifest else out + ".manifest.json"
    write_manifest(manifest, axes, comm, sense)
    n_ok = sum(r.status == "ok" for r in records)
    print(
        f"sweep: {len(records)} records ({axes.points} points x "
        f"{len(axes.snr_db)} SNRs), {n_ok} ok -> {out} + {manifest}"
    )
    return 0


def _cmd_tradeoff(args) -> int:
    cfg = load_config("tradeoff", args.config, _flag_overrides(args))
    try:
        records = read_records_csv(args.records)
    except OSError as exc:
        raise ConfigError(f"cannot read records {args.records}: {exc}") from exc
    snr_db = args.snr_slice if args.snr_slice is not None else max(cfg["snr_db"])
    view = tradeoff_extract(records, snr_db)

    def point_doc(r):
        return {
            "gamma": r.gamma,
            "alpha_c": r.alpha_c,
            "beta_c": r.beta_c,
            "capacity_mean": r.capacity_mean,
            "crlb_tau_s2": r.crlb_tau_s2,
            "crlb_nu_hz2": r.crlb_nu_hz2,
            "rho2": r.rho2,
        }

    doc = {
        "snr_db": view.snr_db,
        "n_records": len(view.records),
        "capacity_mean": view.capacity_mean,
        "crlb_tau_mean": view.crlb_tau_mean,
        "crlb_nu_mean": view.crlb_nu_mean,
        "comm_optimal": point_doc(view.comm_optimal),
        "sensing_optimal": point_doc(view.sensing_optimal),
    }
    text = json.dumps(doc, indent=2) + "\n"
    _emit(
        text,
        cfg["out"],
        f"tradeoff at {snr_db:g} dB over {len(view.records)} records: "
        f"best capacity {view.comm_optimal.capacity_mean:.2f} bits, "
        f"best crlb_tau {view.sensing_optimal.crlb_tau_s2:.3e} s^2",
    )
    return 0


def _cmd_validate(args) -> int:
    cfg = load_config("validate", args.config, _flag_overrides(args))
    failures = 0

    # closed-form covariance against a Monte Carlo estimate
    g = _build_grid(cfg)
    try:
        params = PulseParams(cfg["gamma"], cfg["alpha_c"], cfg["beta_c"])
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    stats = _scatter_stats(cfg, g)
    model = assemble_covariance(params, g, stats)
    est = mc_covariance(params, g, stats, cfg["mc_draws"], cfg["master_seed"])
    rel = float(
        np.linalg.norm(est - model.r_h) / np.linalg.norm(model.r_h)
    )
    tol = 4.0 / np.sqrt(cfg["mc_draws"])
    failures += _check(
        "covariance closed form vs monte carlo",
        rel < tol,
        f"relative frobenius error {rel:.4f} (tol {tol:.4f}, "
        f"{cfg['mc_draws']} draws)",
    )

    # closed-form information matrix against the discrete sum
    sg = _build_grid(cfg, sensing=True)
    pulse = sample_pulse("tgp", sg, params)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", TruncationWarning)
        fim_d = fim_discrete(pulse, 1.0, domain="auto")
    fim_c = fim_closed_form(params, sg, 1.0)
    bound_d = crlb_from_fim(fim_d, sg)
    bound_c = crlb_from_fim(fim_c, sg)
    rel_tau = abs(bound_d.crlb_tau - bound_c.crlb_tau) / bound_c.crlb_tau
    rel_nu = abs(bound_d.crlb_nu - bound_c.crlb_nu) / bound_c.crlb_nu
    failures += _check(
        "information matrix closed form vs discrete",
        max(rel_tau, rel_nu) < 1e-9,
        f"relative bound error tau {rel_tau:.2e}, doppler {rel_nu:.2e} "
        f"on {sg.M}x{sg.N}",
    )

    # zero-coupling condition of the closed-form bounds
    flat = crlb_closed_form(PulseParams(cfg["gamma"], 0.0, -2.0), sg, 1.0)
    failures += _check(
        "zero coupling at alpha_c=0, beta_c=-2",
        flat.rho2 == 0.0,
        f"rho2 = {flat.rho2}",
    )

    print("validate:", "all checks passed" if failures == 0 else
          f"{failures} check(s) FAILED")
    if failures:
        raise RuntimeError("validation suite failed")
    return 0


def _check(name: str, ok: bool, detail: str) -> int:
    print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    return 0 if ok else 1


def _default_threads() -> int:
    counter = getattr(os, "process_cpu_count", os.cpu_count)
    return counter() or 1


def _parse_grid(text: str) -> tuple[int, int]:
    parts = text.lower().split("x")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("grid must look like 16x16")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError("grid must look like 16x16") from None


def _flag_overrides(args) -> dict:
    """Map parsed flags onto config keys, skipping flags the user omitted."""
    pairs = {
        "kind": "pulse",
        "pulse": "pulse",
        "gamma": "gamma",
        "alpha": "alpha_c",
        "beta": "beta_c",
        "rolloff": "rrc_rolloff",
        "model": "channel_model",
        "paths": "paths",
        "sigma_h2": "sigma_h2",
        "tau_max": "tau_max_s",
        "nu_max": "nu_max_hz",
        "realizations": "realizations",
        "draws": "mc_draws",
        "seed": "master_seed",
        "points": "sweep_points",
        "out": "out",
    }
    overrides = {}
    for attr, key in pairs.items():
        value = getattr(args, attr, None)
        if value is not None:
            overrides[key] = value
    grid = getattr(args, "grid", None)
    if grid is not None:
        overrides["grid_m"], overrides["grid_n"] = grid
    sense_grid = getattr(args, "sense_grid", None)
    if sense_grid is not None:
        overrides["sense_m"], overrides["sense_n"] = sense_grid
    snr = getattr(args, "snr", None)
    if snr is not None:
        overrides["snr_db"] = tuple(snr)
    domain = getattr(args, "domain", None)
    if domain is not None:
        overrides["fim_domain"] = domain
    return overrides


def _add_common(sub) -> None:
    sub.add_argument("--config", help="JSON config file")
    sub.add_argument("--out", help="output file (default: stdout)")
    sub.add_argument("--seed", type=int, help="master seed")
    sub.add_argument(
        "--threads",
        type=int,
        help="worker pool size (default: available parallelism)",
    )


def _add_pulse_flags(sub) -> None:
    sub.add_argument("--gamma", type=float, help="aspect ratio")
    sub.add_argument("--alpha", type=float, help="chirp rate")
    sub.add_argument("--beta", type=float, help="phase coupling")
    sub.add_argument("--rolloff", type=float, help="rrc roll-off")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ddisac",
        description="Delay-Doppler pulse design: bounds, capacity, sweeps.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("pulse", help="dump pulse samples as CSV")
    p.add_argument("action", nargs="?", choices=("dump",), default="dump")
    p.add_argument("--kind", choices=PULSE_KINDS, help="pulse kind")
    _add_pulse_flags(p)
    p.add_argument("--grid", type=_parse_grid, help="MxN grid")
    _add_common(p)
    p.set_defaults(func=_cmd_pulse)

    p = commands.add_parser("channel", help="dump one effective channel draw")
    p.add_argument("action", nargs="?", choices=("dump",), default="dump")
    p.add_argument("--kind", choices=PULSE_KINDS, help="pulse kind")
    _add_pulse_flags(p)
    p.add_argument("--model", choices=("wssus", "veh_a"), help="path model")
    p.add_argument("--paths", type=int, help="path count (wssus)")
    p.add_argument("--sigma-h2", dest="sigma_h2", type=float,
                   help="per-path gain variance (wssus)")
    p.add_argument("--tau-max", dest="tau_max", type=float,
                   help="delay spread bound in seconds (wssus)")
    p.add_argument("--nu-max", dest="nu_max", type=float,
                   help="doppler spread bound in hertz")
    p.add_argument("--grid", type=_parse_grid, help="MxN grid")
    _add_common(p)
    p.set_defaults(func=_cmd_channel)

    p = commands.add_parser(
        "covariance", help="closed-form channel covariance report"
    )
    p.add_argument("action", nargs="?", choices=("report",), default="report")
    _add_pulse_flags(p)
    p.add_argument("--paths", type=int, help="path count")
    p.add_argument("--sigma-h2", dest="sigma_h2", type=float,
                   help="per-path gain variance")
    p.add_argument("--tau-max", dest="tau_max", type=float,
                   help="delay spread bound in seconds")
    p.add_argument("--nu-max", dest="nu_max", type=float,
                   help="doppler spread bound in hertz")
    p.add_argument("--grid", type=_parse_grid, help="MxN grid")
    p.add_argument("--snr", type=float, nargs="+",
                   help="SNR(s) in dB for the capacity bound")
    _add_common(p)
    p.set_defaults(func=_cmd_covariance)

    p = commands.add_parser("crlb", help="delay-Doppler estimation bounds")
    p.add_argument("--pulse", choices=PULSE_KINDS, help="pulse kind")
    _add_pulse_flags(p)
    p.add_argument("--snr", type=float, nargs="+", help="SNR(s) in dB")
    p.add_argument("--method", choices=("closed", "discrete"),
                   help="closed form (tgp only) or discrete sums")
    p.add_argument("--domain", choices=("cell", "auto"),
                   help="integration domain for the discrete sums")
    p.add_argument("--sense-grid", dest="sense_grid", type=_parse_grid,
                   help="MxN sensing grid")
    _add_common(p)
    p.set_defaults(func=_cmd_crlb)

    p = commands.add_parser("capacity", help="ergodic capacity estimate")
    p.add_argument("--pulse", choices=PULSE_KINDS, help="pulse kind")
    _add_pulse_flags(p)
    p.add_argument("--model", choices=("wssus", "veh_a"), help="path model")
    p.add_argument("--paths", type=int, help="path count (wssus)")
    p.add_argument("--sigma-h2", dest="sigma_h2", type=float,
                   help="per-path gain variance (wssus)")
    p.add_argument("--tau-max", dest="tau_max", type=float,
                   help="delay spread bound in seconds (wssus)")
    p.add_argument("--nu-max", dest="nu_max", type=float,
                   help="doppler spread bound in hertz")
    p.add_argument("--realizations", type=int, help="channel realizations")
    p.add_argument("--snr", type=float, nargs="+", help="SNR(s) in dB")
    p.add_argument("--grid", type=_parse_grid, help="MxN grid")
    _add_common(p)
    p.set_defaults(func=_cmd_capacity)

    p = commands.add_parser("sweep", help="full parameter sweep to CSV")
    p.add_argument("--points", type=int, help="points per parameter axis")
    p.add_argument("--realizations", type=int, help="channel realizations")
    p.add_argument("--snr", type=float, nargs="+", help="SNR(s) in dB")
    p.add_argument("--grid", type=_parse_grid, help="communication grid")
    p.add_argument("--sense-grid", dest="sense_grid", type=_parse_grid,
                   help="sensing grid")
    p.add_argument("--shard-dir", help="checkpoint directory for resume")
    p.add_argument("--manifest", help="run-manifest path")
    p.add_argument("--progress", action="store_true",
                   help="print per-slice progress to stderr")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = commands.add_parser("tradeoff", help="extremal points of a sweep CSV")
    p.add_argument("--records", required=True, help="sweep CSV path")
    p.add_argument("--snr", dest="snr_slice", type=float, help="SNR slice in dB")
    _add_common(p)
    p.set_defaults(func=_cmd_tradeoff)

    p = commands.add_parser("validate", help="built-in oracle suite")
    p.add_argument("--draws", type=int, help="Monte Carlo draws")
    _add_pulse_flags(p)
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
