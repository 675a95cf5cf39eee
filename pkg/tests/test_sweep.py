"""Sweep harness: record bookkeeping, scaling laws, checkpoint resume."""

import math

import numpy as np
import pytest

import ddisac.sweep as sweep_mod
from ddisac.bounds import TruncationWarning, fim_discrete, snr_to_kfim
from ddisac.grid import GridSpec
from ddisac.sweep import (
    CSV_COLUMNS,
    CommSetup,
    SenseSetup,
    SweepAxes,
    default_axes,
    envelopes,
    read_records_csv,
    records_to_csv,
    run_sweep,
    tradeoff_extract,
    write_manifest,
    write_records_csv,
)

TINY_AXES = SweepAxes(
    gamma=(0.5, 2.0), alpha_c=(0.0,), beta_c=(0.0, 3.0), snr_db=(0.0, 20.0)
)
TINY_COMM = CommSetup(grid=GridSpec(4, 4, 1.12e-3, 28e3), realizations=8)
TINY_SENSE = SenseSetup(grid=GridSpec(32, 32, 1.12e-3, 28e3))


@pytest.fixture(scope="module")
def tiny_records():
    return run_sweep(TINY_AXES, TINY_COMM, TINY_SENSE)


class TestAxes:
    def test_default_shape(self):
        axes = default_axes()
        assert axes.points == 8000
        assert len(axes.snr_db) == 6
        assert axes.gamma[0] == pytest.approx(0.01)
        assert axes.gamma[-1] == pytest.approx(100.0)
        assert axes.alpha_c[0] == 0.0 and axes.alpha_c[-1] == 50.0
        assert axes.beta_c[0] == 0.0 and axes.beta_c[-1] == 10.0

    def test_gamma_log_spaced(self):
        g = default_axes().gamma
        ratios = np.diff(np.log(g))
        assert np.allclose(ratios, ratios[0])

    def test_rejects_empty_axis(self):
        with pytest.raises(ValueError):
            SweepAxes(gamma=(), alpha_c=(1.0,), beta_c=(1.0,))
        with pytest.raises(ValueError):
            SweepAxes(gamma=(1.0,), alpha_c=(1.0,), beta_c=(1.0,), snr_db=())


class TestRecords:
    def test_count_and_status(self, tiny_records):
        assert len(tiny_records) == TINY_AXES.points * len(TINY_AXES.snr_db)
        assert all(r.status == "ok" for r in tiny_records)

    def test_crlb_snr_slope(self, tiny_records):
        by_params = {}
        for r in tiny_records:
            by_params.setdefault((r.gamma, r.beta_c), {})[r.snr_db] = r
        for pair in by_params.values():
            drop = math.log10(pair[0.0].crlb_tau_s2) - math.log10(
                pair[20.0].crlb_tau_s2
            )
            assert drop == pytest.approx(2.0, abs=1e-12)
            assert pair[0.0].rho2 == pair[20.0].rho2
            assert pair[20.0].q_det / pair[0.0].q_det == pytest.approx(
                1e4, rel=1e-12
            )

    def test_matches_direct_evaluation(self, tiny_records):
        from ddisac.bounds import crlb_from_fim
        from ddisac.pulses import PulseParams, sample_pulse

        rec = next(
            r
            for r in tiny_records
            if r.gamma == 2.0 and r.beta_c == 3.0 and r.snr_db == 20.0
        )
        pulse = sample_pulse("tgp", TINY_SENSE.grid, PulseParams(2.0, 0.0, 3.0))
        with pytest.warns(TruncationWarning):
            fim = fim_discrete(pulse, snr_to_kfim(20.0), domain="cell")
        bound = crlb_from_fim(fim, TINY_SENSE.grid)
        assert rec.crlb_tau_s2 == pytest.approx(bound.crlb_tau, rel=1e-12)
        assert rec.crlb_nu_hz2 == pytest.approx(bound.crlb_nu, rel=1e-12)

    def test_capacity_shares_realizations(self, tiny_records):
        from ddisac.capacity import CapacityConfig, ergodic_capacity
        from ddisac.channel import sample_veh_a
        from ddisac.pulses import PulseParams, sample_pulse

        rec = next(
            r
            for r in tiny_records
            if r.gamma == 0.5 and r.beta_c == 0.0 and r.snr_db == 0.0
        )
        pulse = sample_pulse("tgp", TINY_COMM.grid, PulseParams(0.5, 0.0, 0.0))
        cfg = CapacityConfig(
            snr_db=TINY_AXES.snr_db,
            mn=TINY_COMM.grid.mn,
            realizations=TINY_COMM.realizations,
            master_seed=TINY_COMM.master_seed,
        )
        pts = ergodic_capacity(
            cfg, lambda rng: sample_veh_a(TINY_COMM.nu_max, rng), pulse
        )
        assert rec.capacity_mean == pts[0].mean
        assert rec.capacity_stderr == pts[0].stderr


class TestFailureHandling:
    def test_sensing_failure_keeps_capacity(self, monkeypatch):
        def boom(*args, **kwargs):
            raise RuntimeError("synthetic sensing fault")

        monkeypatch.setattr(sweep_mod, "fim_discrete", boom)
        axes = SweepAxes(gamma=(1.0,), alpha_c=(0.0,), beta_c=(0.0,),
                         snr_db=(10.0,))
        records = run_sweep(axes, TINY_COMM, TINY_SENSE)
        assert len(records) == 1
        r = records[0]
        assert r.status.startswith("sensing:")
        assert "synthetic sensing fault" in r.status
        assert r.crlb_tau_s2 is None and r.q_det is None
        assert r.capacity_mean is not None

    def test_comm_failure_keeps_sensing(self, monkeypatch):
        def boom(*args, **kwargs):
            raise RuntimeError("synthetic capacity fault")

        monkeypatch.setattr(sweep_mod, "ergodic_capacity", boom)
        axes = SweepAxes(gamma=(1.0,), alpha_c=(0.0,), beta_c=(0.0,),
                         snr_db=(10.0,))
        records = run_sweep(axes, TINY_COMM, TINY_SENSE)
        r = records[0]
        assert r.status.startswith("comm:")
        assert r.capacity_mean is None
        assert r.crlb_tau_s2 is not None


class TestCsv:
    def test_round_trip(self, tiny_records, tmp_path):
        path = tmp_path / "sweep.csv"
        write_records_csv(tiny_records, path)
        back = read_records_csv(path)
        assert back == list(tiny_records)

    def test_byte_identical_reruns(self, tiny_records):
        again = run_sweep(TINY_AXES, TINY_COMM, TINY_SENSE)
        assert records_to_csv(again) == records_to_csv(tiny_records)

    def test_header_first_line(self, tiny_records):
        text = records_to_csv(tiny_records)
        assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
        assert "\r" not in text

    def test_none_fields_serialize_empty(self, tmp_path):
        rec = sweep_mod.SweepRecord(
            gamma=1.0, alpha_c=0.0, beta_c=0.0, snr_db=8.0,
            capacity_mean=None, capacity_stderr=None, crlb_tau_s2=None,
            crlb_nu_hz2=None, rho2=None, q_det=None, status="comm: x",
        )
        path = tmp_path / "partial.csv"
        write_records_csv([rec], path)
        assert read_records_csv(path) == [rec]

    def test_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
        with pytest.raises(ValueError):
            read_records_csv(path)


class TestResume:
    def test_shards_written_and_reused(self, tiny_records, tmp_path):
        shard_dir = tmp_path / "shards"
        first = run_sweep(TINY_AXES, TINY_COMM, TINY_SENSE, shard_dir=shard_dir)
        files = sorted(p.name for p in shard_dir.iterdir())
        assert files == ["shard_gamma00.csv", "shard_gamma01.csv"]
        assert records_to_csv(first) == records_to_csv(tiny_records)

        # second run must reuse both shards untouched
        stamps = {p: p.stat().st_mtime_ns for p in shard_dir.iterdir()}
        second = run_sweep(TINY_AXES, TINY_COMM, TINY_SENSE, shard_dir=shard_dir)
        assert records_to_csv(second) == records_to_csv(first)
        assert {p: p.stat().st_mtime_ns for p in shard_dir.iterdir()} == stamps

    def test_incomplete_shard_recomputed(self, tmp_path):
        shard_dir = tmp_path / "shards"
        full = run_sweep(TINY_AXES, TINY_COMM, TINY_SENSE, shard_dir=shard_dir)
        target = shard_dir / "shard_gamma01.csv"
        lines = target.read_text(encoding="utf-8").splitlines(keepends=True)
        target.write_text("".join(lines[:-1]), encoding="utf-8")
        again = run_sweep(TINY_AXES, TINY_COMM, TINY_SENSE, shard_dir=shard_dir)
        assert records_to_csv(again) == records_to_csv(full)

    def test_progress_callback(self, tmp_path):
        seen = []
        run_sweep(TINY_AXES, TINY_COMM, TINY_SENSE,
                  progress=lambda done, total: seen.append((done, total)))
        assert seen == [(1, 2), (2, 2)]


class TestAggregation:
    def test_envelope_ordering(self, tiny_records):
        for metric in ("capacity_mean", "crlb_tau_s2", "rho2"):
            env = envelopes(tiny_records, metric)
            assert [e.snr_db for e in env] == sorted(TINY_AXES.snr_db)
            for e in env:
                assert e.low <= e.mean <= e.high

    def test_envelope_rejects_non_metric(self, tiny_records):
        with pytest.raises(ValueError):
            envelopes(tiny_records, "gamma")
        with pytest.raises(ValueError):
            envelopes(tiny_records, "nonsense")

    def test_envelope_contains_every_record(self, tiny_records):
        env = {e.snr_db: e for e in envelopes(tiny_records, "capacity_mean")}
        for r in tiny_records:
            e = env[r.snr_db]
            assert e.low <= r.capacity_mean <= e.high

    def test_tradeoff_extrema(self, tiny_records):
        view = tradeoff_extract(tiny_records, 20.0)
        caps = [r.capacity_mean for r in view.records]
        taus = [r.crlb_tau_s2 for r in view.records]
        assert view.comm_optimal.capacity_mean == max(caps)
        assert view.sensing_optimal.crlb_tau_s2 == min(taus)
        assert all(r.snr_db == 20.0 for r in view.records)
        assert view.capacity_mean == pytest.approx(np.mean(caps))

    def test_tradeoff_missing_snr(self, tiny_records):
        with pytest.raises(ValueError):
            tradeoff_extract(tiny_records, 7.5)


class TestManifest:
    def test_written_fields(self, tmp_path):
        import json

        path = tmp_path / "manifest.json"
        write_manifest(path, TINY_AXES, TINY_COMM, TINY_SENSE)
        doc = json.loads(path.read_text(encoding="utf-8"))
        assert doc["axes"]["gamma"] == [0.5, 2.0]
        assert doc["comm"]["master_seed"] == 0
        assert doc["comm"]["realizations"] == 8
        assert doc["sense"]["grid"]["M"] == 32
        assert doc["columns"] == list(CSV_COLUMNS)
