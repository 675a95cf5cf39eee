"""Declared shapes of the ddisac command-line artifacts.

The renderer consumes the producing tool only through its documented
file formats, so those formats are restated here as constants.  A CSV
is accepted when its header matches one of these schemas exactly; a
figure spec may only reference columns that appear below.
"""

SWEEP_COLUMNS = (
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

CRLB_COLUMNS = (
    "gamma",
    "alpha_c",
    "beta_c",
    "snr_db",
    "crlb_tau_s2",
    "crlb_nu_hz2",
    "rho2",
    "q_det",
    "method",
)

CAPACITY_COLUMNS = (
    "pulse",
    "gamma",
    "alpha_c",
    "beta_c",
    "snr_db",
    "capacity_mean",
    "capacity_stderr",
    "realizations",
    "seed",
)

PULSE_COLUMNS = ("m", "n", "re", "im", "abs")

CSV_SCHEMAS = {
    "sweep": SWEEP_COLUMNS,
    "crlb": CRLB_COLUMNS,
    "capacity": CAPACITY_COLUMNS,
    "pulse": PULSE_COLUMNS,
}

KNOWN_COLUMNS = frozenset(
    column for schema in CSV_SCHEMAS.values() for column in schema
)

# covariance report (JSON object)
REPORT_KEYS = (
    "ipr",
    "condition_number",
    "jensen_capacity_bits",
    "grid",
    "params",
    "channel_stats",
)
REPORT_METRICS = frozenset(
    ("ipr", "condition_number", "jensen_capacity_bits")
)

# trade-off extraction (JSON object)
TRADEOFF_POINTS = ("comm_optimal", "sensing_optimal")
TRADEOFF_POINT_KEYS = frozenset(
    (
        "gamma",
        "alpha_c",
        "beta_c",
        "capacity_mean",
        "crlb_tau_s2",
        "crlb_nu_hz2",
        "rho2",
    )
)
