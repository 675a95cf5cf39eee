"""Exhaustive parameter sweep joining the sensing and communication metrics.

Each of the 8,000 pulse configurations is scored on a fine sensing grid
(discrete-grid estimation bounds) and on the communication grid
(ergodic capacity over a shared set of multipath realizations).  The
intrinsic information matrix does not depend on the operating SNR, so
each configuration is integrated once and the per-SNR records follow by
rescaling.

Sweeps run in gamma-indexed shards: every shard lands in its own CSV
written atomically, so an interrupted run resumes where it stopped and
the merged output is byte-stable across runs.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from .bounds import TruncationWarning, crlb_from_fim, fim_discrete, snr_to_kfim
from .capacity import CapacityConfig, Normalization, ergodic_capacity
from .channel import sample_veh_a
from .grid import GridSpec
from .pulses import PulseParams, sample_pulse

CSV_COLUMNS = (
    "gamma",
    "alpha_c",
    "beta_c",
    "snr_db",
    "capacity_mean",
    "capacity_stderr",
    "crlb_tau_s2",
    "crlb_nu_hz2",
    "rho2",
    "q_det",
    "status",
)

SNR_AXIS_DB = (0.0, 4.0, 8.0, 12.0, 16.0, 20.0)


@dataclass(frozen=True)
class SweepAxes:
    """The three pulse-parameter axes plus the SNR operating points."""

    gamma: tuple[float, ...]
    alpha_c: tuple[float, ...]
    beta_c: tuple[float, ...]
    snr_db: tuple[float, ...] = SNR_AXIS_DB

    def __post_init__(self) -> None:
        for name in ("gamma", "alpha_c", "beta_c", "snr_db"):
            object.__setattr__(
                self, name, tuple(float(v) for v in getattr(self, name))
            )
        if min(len(self.gamma), len(self.alpha_c), len(self.beta_c)) < 1:
            raise ValueError("every parameter axis needs at least one point")
        if len(self.snr_db) < 1:
            raise ValueError("snr axis must be non-empty")

    @property
    def points(self) -> int:
        return len(self.gamma) * len(self.alpha_c) * len(self.beta_c)


def default_axes() -> SweepAxes:
    """The 20x20x20 study grid: log-spaced aspect, linear phase knobs."""
    return SweepAxes(
        gamma=tuple(np.geomspace(0.01, 100.0, 20)),
        alpha_c=tuple(np.linspace(0.0, 50.0, 20)),
        beta_c=tuple(np.linspace(0.0, 10.0, 20)),
    )


@dataclass(frozen=True)
class SweepRecord:
    """One scored configuration at one operating SNR."""

    gamma: float
    alpha_c: float
    beta_c: float
    snr_db: float
    capacity_mean: float | None
    capacity_stderr: float | None
    crlb_tau_s2: float | None
    crlb_nu_hz2: float | None
    rho2: float | None
    q_det: float | None
    status: str = "ok"


@dataclass(frozen=True)
class CommSetup:
    """Communication side: grid, ensemble size, Doppler spread, seed."""

    grid: GridSpec
    realizations: int = 160
    nu_max: float = 815.0
    master_seed: int = 0

    def __post_init__(self) -> None:
        if self.realizations < 1:
            raise ValueError("realizations must be >= 1")
        if not self.nu_max > 0:
            raise ValueError("nu_max must be positive")


@dataclass(frozen=True)
class SenseSetup:
    """Sensing side: integration grid and echo gain magnitude."""

    grid: GridSpec
    h_t: complex = 1.0 + 0.0j

    def __post_init__(self) -> None:
        if not abs(self.h_t) > 0:
            raise ValueError("h_t must be nonzero")


def default_comm_setup(master_seed: int = 0) -> CommSetup:
    return CommSetup(grid=GridSpec(16, 16, 1.12e-3, 28e3), master_seed=master_seed)


def default_sense_setup() -> SenseSetup:
    return SenseSetup(grid=GridSpec(256, 256, 1.12e-3, 28e3))


def _score_point(
    gamma: float,
    alpha_c: float,
    beta_c: float,
    axes: SweepAxes,
    comm: CommSetup,
    sense: SenseSetup,
) -> list[SweepRecord]:
    status_parts: list[str] = []
    try:
        params = PulseParams(gamma, alpha_c, beta_c)
    except Exception as exc:  # noqa: BLE001 - recorded, sweep must not abort
        return [
            SweepRecord(gamma, alpha_c, beta_c, db, None, None, None, None,
                        None, None, status=f"params: {exc}")
            for db in axes.snr_db
        ]

    crlbs: dict[float, tuple[float, float, float, float]] = {}
    try:
        pulse = sample_pulse("tgp", sense.grid, params)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", TruncationWarning)
            fim = fim_discrete(pulse, 1.0, domain="cell")
        for db in axes.snr_db:
            scaled = dataclasses.replace(fim, k_fim=snr_to_kfim(db, sense.h_t))
            bound = crlb_from_fim(scaled, sense.grid)
            crlbs[db] = (bound.crlb_tau, bound.crlb_nu, bound.rho2, bound.q_det)
    except Exception as exc:  # noqa: BLE001 - recorded, sweep must not abort
        status_parts.append(f"sensing: {exc}")

    caps: dict[float, tuple[float, float]] = {}
    try:
        comm_pulse = sample_pulse("tgp", comm.grid, params)
        cfg = CapacityConfig(
            snr_db=axes.snr_db,
            mn=comm.grid.mn,
            realizations=comm.realizations,
            normalization=Normalization.UNIT_FROBENIUS,
            master_seed=comm.master_seed,
        )
        points = ergodic_capacity(
            cfg, lambda rng: sample_veh_a(comm.nu_max, rng), comm_pulse
        )
        caps = {pt.snr_db: (pt.mean, pt.stderr) for pt in points}
    except Exception as exc:  # noqa: BLE001
        status_parts.append(f"comm: {exc}")

    status = "ok" if not status_parts else "; ".join(status_parts)
    records = []
    for db in axes.snr_db:
        cap = caps.get(db)
        crlb = crlbs.get(db)
        records.append(
            SweepRecord(
                gamma=gamma,
                alpha_c=alpha_c,
                beta_c=beta_c,
                snr_db=db,
                capacity_mean=cap[0] if cap else None,
                capacity_stderr=cap[1] if cap else None,
                crlb_tau_s2=crlb[0] if crlb else None,
                crlb_nu_hz2=crlb[1] if crlb else None,
                rho2=crlb[2] if crlb else None,
                q_det=crlb[3] if crlb else None,
                status=status,
            )
        )
    return records


def _score_slice(
    gamma: float, axes: SweepAxes, comm: CommSetup, sense: SenseSetup
) -> list[SweepRecord]:
    out: list[SweepRecord] = []
    for alpha_c in axes.alpha_c:
        for beta_c in axes.beta_c:
            out.extend(_score_point(gamma, alpha_c, beta_c, axes, comm, sense))
    return out


def run_sweep(
    axes: SweepAxes,
    comm: CommSetup,
    sense: SenseSetup,
    shard_dir: str | Path | None = None,
    progress: Callable[[int, int], None] | None = None,
    threads: int = 1,
) -> list[SweepRecord]:
    """Score every configuration, optionally checkpointing per gamma slice.

    With a shard directory, each gamma slice is written as its own CSV
    once complete; slices already on disk are loaded instead of
    recomputed, so interrupted runs resume cheaply.  Slices are
    independent, so thread workers never change the merged output.
    """
    if threads < 1:
        raise ValueError("threads must be >= 1")
    shard_path = Path(shard_dir) if shard_dir is not None else None
    if shard_path is not None:
        shard_path.mkdir(parents=True, exist_ok=True)
    rows_per_slice = len(axes.alpha_c) * len(axes.beta_c) * len(axes.snr_db)

    def shard_file(gi: int) -> Path | None:
        if shard_path is None:
            return None
        return shard_path / f"shard_gamma{gi:02d}.csv"

    done: dict[int, list[SweepRecord]] = {}
    for gi, gamma in enumerate(axes.gamma):
        shard = shard_file(gi)
        if shard is not None and shard.exists():
            cached = read_records_csv(shard)
            if len(cached) == rows_per_slice and all(
                r.gamma == gamma for r in cached
            ):
                done[gi] = cached
    completed = len(done)
    if progress is not None and completed:
        progress(completed, len(axes.gamma))

    def finish(gi: int, slice_records: list[SweepRecord]) -> None:
        nonlocal completed
        shard = shard_file(gi)
        if shard is not None:
            tmp = shard.with_suffix(".tmp")
            tmp.write_bytes(records_to_csv(slice_records).encode("utf-8"))
            tmp.replace(shard)
        done[gi] = slice_records
        completed += 1
        if progress is not None:
            progress(completed, len(axes.gamma))

    pending = [gi for gi in range(len(axes.gamma)) if gi not in done]
    if threads == 1 or len(pending) <= 1:
        for gi in pending:
            finish(gi, _score_slice(axes.gamma[gi], axes, comm, sense))
    else:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = {
                gi: pool.submit(_score_slice, axes.gamma[gi], axes, comm, sense)
                for gi in pending
            }
            for gi in pending:
                finish(gi, futures[gi].result())

    records: list[SweepRecord] = []
    for gi in range(len(axes.gamma)):
        records.extend(done[gi])
    return records


def _format_value(value: float | None) -> str:
    if value is None:
        return ""
    return format(value, ".17g")


def records_to_csv(records: Iterable[SweepRecord]) -> str:
    """Render records as UTF-8 CSV text with a mandatory header row."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                _format_value(r.gamma),
                _format_value(r.alpha_c),
                _format_value(r.beta_c),
                _format_value(r.snr_db),
                _format_value(r.capacity_mean),
                _format_value(r.capacity_stderr),
                _format_value(r.crlb_tau_s2),
                _format_value(r.crlb_nu_hz2),
                _format_value(r.rho2),
                _format_value(r.q_det),
                r.status,
            ]
        )
    return buf.getvalue()


def write_records_csv(records: Iterable[SweepRecord], path: str | Path) -> None:
    Path(path).write_bytes(records_to_csv(records).encode("utf-8"))


def _parse_value(text: str) -> float | None:
    return float(text) if text else None


def read_records_csv(path: str | Path) -> list[SweepRecord]:
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV header in {path}")
        out = []
        for row in reader:
            if len(row) != len(CSV_COLUMNS):
                raise ValueError(f"malformed CSV row in {path}: {row!r}")
            out.append(
                SweepRecord(
                    gamma=float(row[0]),
                    alpha_c=float(row[1]),
                    beta_c=float(row[2]),
                    snr_db=float(row[3]),
                    capacity_mean=_parse_value(row[4]),
                    capacity_stderr=_parse_value(row[5]),
                    crlb_tau_s2=_parse_value(row[6]),
                    crlb_nu_hz2=_parse_value(row[7]),
                    rho2=_parse_value(row[8]),
                    q_det=_parse_value(row[9]),
                    status=row[10],
                )
            )
    return out


def write_manifest(
    path: str | Path,
    axes: SweepAxes,
    comm: CommSetup,
    sense: SenseSetup,
) -> None:
    """Record everything needed to reproduce a sweep byte-for-byte."""
    from importlib import metadata

    try:
        pkg_version = metadata.version("ddisac")
    except metadata.PackageNotFoundError:
        pkg_version = "unknown"
    doc = {
        "axes": {
            "gamma": list(axes.gamma),
            "alpha_c": list(axes.alpha_c),
            "beta_c": list(axes.beta_c),
            "snr_db": list(axes.snr_db),
        },
        "comm": {
            "grid": {"M": comm.grid.M, "N": comm.grid.N, "T": comm.grid.T,
                     "B": comm.grid.B},
            "realizations": comm.realizations,
            "nu_max": comm.nu_max,
            "master_seed": comm.master_seed,
            "channel_model": "veh_a",
            "normalization": "unit_frobenius",
            "shared_realizations": True,
        },
        "sense": {
            "grid": {"M": sense.grid.M, "N": sense.grid.N, "T": sense.grid.T,
                     "B": sense.grid.B},
            "h_t": [sense.h_t.real, sense.h_t.imag],
            "domain": "cell",
        },
        "versions": {"ddisac": pkg_version, "numpy": np.__version__},
        "columns": list(CSV_COLUMNS),
    }
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


@dataclass(frozen=True)
class EnvelopePoint:
    snr_db: float
    low: float
    mean: float
    high: float

    def __post_init__(self) -> None:
        if not self.low <= self.mean <= self.high:
            raise ValueError("envelope ordering violated")


def envelopes(records: Sequence[SweepRecord], metric: str) -> tuple[EnvelopePoint, ...]:
    """Per-SNR min/mean/max of one metric over the parameter cloud."""
    if metric not in CSV_COLUMNS or metric in ("gamma", "alpha_c", "beta_c",
                                               "snr_db", "status"):
        raise ValueError(f"not an aggregatable metric: {metric!r}")
    if not records:
        raise ValueError("no records")
    by_snr: dict[float, list[float]] = {}
    for r in records:
        value = getattr(r, metric)
        if value is not None and np.isfinite(value):
            by_snr.setdefault(r.snr_db, []).append(value)
    points = []
    for db in sorted(by_snr):
        values = by_snr[db]
        points.append(
            EnvelopePoint(
                snr_db=db,
                low=min(values),
                mean=float(np.mean(values)),
                high=max(values),
            )
        )
    return tuple(points)


@dataclass(frozen=True)
class TradeoffView:
    """Capacity-versus-bound scatter with its optimized corner points."""

    snr_db: float
    records: tuple[SweepRecord, ...]
    comm_optimal: SweepRecord
    sensing_optimal: SweepRecord
    capacity_mean: float
    crlb_tau_mean: float
    crlb_nu_mean: float


def tradeoff_extract(records: Sequence[SweepRecord], snr_db: float) -> TradeoffView:
    """Slice one SNR out of the sweep and mark its extremal points."""
    at_snr = tuple(
        r
        for r in records
        if r.snr_db == snr_db
        and r.capacity_mean is not None
        and r.crlb_tau_s2 is not None
    )
    if not at_snr:
        raise ValueError(f"no complete records at snr_db={snr_db}")
    comm_opt = max(at_snr, key=lambda r: r.capacity_mean)
    sense_opt = min(at_snr, key=lambda r: r.crlb_tau_s2)
    return TradeoffView(
        snr_db=snr_db,
        records=at_snr,
        comm_optimal=comm_opt,
        sensing_optimal=sense_opt,
        capacity_mean=float(np.mean([r.capacity_mean for r in at_snr])),
        crlb_tau_mean=float(np.mean([r.crlb_tau_s2 for r in at_snr])),
        crlb_nu_mean=float(np.mean([r.crlb_nu_hz2 for r in at_snr])),
    )
