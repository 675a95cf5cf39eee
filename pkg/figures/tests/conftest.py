"""Shared builders for schema-conformant synthetic artifacts."""

import csv
import json

import pytest

SWEEP_HEADER = [
    "gamma", "alpha_c", "beta_c", "snr_db", "capacity_mean",
    "capacity_stderr", "crlb_tau_s2", "crlb_nu_hz2", "rho2", "q_det",
    "status",
]
CRLB_HEADER = [
    "gamma", "alpha_c", "beta_c", "snr_db", "crlb_tau_s2", "crlb_nu_hz2",
    "rho2", "q_det", "method",
]
CAPACITY_HEADER = [
    "pulse", "gamma", "alpha_c", "beta_c", "snr_db", "capacity_mean",
    "capacity_stderr", "realizations", "seed",
]


HEADERS = {
    "sweep": SWEEP_HEADER,
    "crlb": CRLB_HEADER,
    "capacity": CAPACITY_HEADER,
}


def write_rows(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)
    return path


@pytest.fixture
def make_csv(tmp_path):
    """Factory writing a CSV under tmp_path; header by schema name or list."""

    def make(name, header, rows):
        if isinstance(header, str):
            header = HEADERS[header]
        return write_rows(tmp_path / name, header, rows)

    return make


@pytest.fixture
def sweep_csv(tmp_path):
    rows = []
    for snr in (0, 10, 20):
        for beta in (-2.0, 0.0, 2.0):
            rows.append([
                1.0, 0.0, beta, snr,
                10.0 + snr + beta,          # capacity_mean
                0.05,                        # capacity_stderr
                1e-10 * 10 ** (-snr / 10) * (1 + abs(beta)),
                1e4 * 10 ** (-snr / 10),
                0.1, 2.5, "ok",
            ])
    rows.append([1.0, 0.0, 9.0, 20, "", "", "", "", "", "", "failed"])
    return write_rows(tmp_path / "sweep.csv", SWEEP_HEADER, rows)


@pytest.fixture
def crlb_csv(tmp_path):
    rows = [
        ["", "", "", snr, 1e-9 * 10 ** (-snr / 10), 5e3 * 10 ** (-snr / 10),
         0.0, 1.0, "discrete_cell"]
        for snr in (0, 10, 20)
    ]
    return write_rows(tmp_path / "crlb.csv", CRLB_HEADER, rows)


@pytest.fixture
def beta_crlb_csv(tmp_path):
    rows = [
        [1.0, 1.0, beta, 0, 1e-10 * (1 + beta * beta), 1e4 / (1 + beta * beta),
         0.01, 3.0, "closed_form"]
        for beta in (-4.0, -2.0, 0.0, 2.0, 4.0)
    ]
    return write_rows(tmp_path / "beta.csv", CRLB_HEADER, rows)


@pytest.fixture
def capacity_csv(tmp_path):
    rows = [
        ["sinc", "", "", "", snr, 20.0 + snr, 0.1, 160, 0]
        for snr in (0, 10, 20)
    ]
    return write_rows(tmp_path / "capacity.csv", CAPACITY_HEADER, rows)


@pytest.fixture
def report_json(tmp_path):
    def make(name, ipr=0.5, cond=100.0, cap=30.0):
        doc = {
            "ipr": ipr,
            "condition_number": cond,
            "jensen_capacity_bits": cap,
            "grid": {"M": 8, "N": 8, "T": 0.00112, "B": 28000.0},
            "params": {"kind": "tgp", "gamma": 1.0, "alpha_c": 0.0, "beta_c": 0.0},
            "channel_stats": {"paths": 8, "snr_db": 15.0},
        }
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return make


@pytest.fixture
def tradeoff_json(tmp_path):
    corner = {
        "gamma": 1.0, "alpha_c": 0.0, "beta_c": 2.0,
        "capacity_mean": 110.0, "crlb_tau_s2": 5e-12,
        "crlb_nu_hz2": 3e3, "rho2": 0.2,
    }
    doc = {
        "snr_db": 20.0,
        "n_records": 9,
        "capacity_mean": 90.0,
        "crlb_tau_mean": 2e-11,
        "crlb_nu_mean": 5e3,
        "comm_optimal": dict(corner),
        "sensing_optimal": {**corner, "capacity_mean": 99.0, "crlb_tau_s2": 1e-12},
    }
    path = tmp_path / "tradeoff.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


@pytest.fixture
def spec_file(tmp_path):
    """Write a spec dict to disk and return its path."""

    def make(doc, name="spec.json"):
        path = tmp_path / name
        path.write_text(json.dumps(doc), encoding="utf-8")
        return path

    return make
