"""Closed-form covariance of the effective channel under uniform scattering.

Averaging the effective channel over gains, delays and Dopplers turns
each covariance entry into a product of two one-dimensional integrals
of a Gaussian with a complex linear term, taken over the scattering
intervals.  Those integrals evaluate through the complex error
function; every exponential here is arranged so its real part stays
non-positive, which keeps the evaluation stable for arbitrarily
elongated pulses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grid import GridSpec
from .pulses import PulseParams
from .special import erfcx

_PSD_FLOOR = 1e-10


@dataclass(frozen=True)
class ScatterStats:
    """Uniform scattering model: path count, gain variance, spreads."""

    p: int
    sigma_h2: float
    tau_max: float
    nu_max: float

    def __post_init__(self) -> None:
        if not (isinstance(self.p, int) and self.p >= 1):
            raise ValueError("path count must be a positive integer")
        if not (self.sigma_h2 > 0 and self.tau_max > 0 and self.nu_max > 0):
            raise ValueError("scatter statistics must be positive")

    @property
    def density(self) -> float:
        """Joint uniform density over [0, tau_max] x [-nu_max, nu_max]."""
        return 1.0 / (2.0 * self.tau_max * self.nu_max)


@dataclass(frozen=True)
class QuadCoeffs:
    """Separable quadratic exponent of one covariance correlation term.

    The correlation integrand is exp(a_tau*tau^2 + b_tau*tau) *
    exp(a_nu*nu^2 + b_nu*nu) * exp(c_0) for the displacement tuple
    (d_k, d_kp, d_l, d_lp) of the two receive positions relative to a
    common transmit position.
    """

    a_tau: float
    b_tau: complex
    a_nu: float
    b_nu: complex
    c_0: complex
    disp: tuple[int, int, int, int]

    def __post_init__(self) -> None:
        if not (self.a_tau < 0 and self.a_nu < 0):
            raise ValueError("quadratic coefficients must be negative")


@dataclass(frozen=True)
class CovarianceModel:
    """Assembled channel covariance with its generating configuration."""

    grid: GridSpec
    params: PulseParams
    stats: ScatterStats
    r_h: np.ndarray

    def __post_init__(self) -> None:
        mn = self.grid.mn
        if self.r_h.shape != (mn, mn):
            raise ValueError(f"r_h must have shape ({mn}, {mn})")
        scale = float(np.max(np.abs(self.r_h)))
        if scale > 0:
            drift = float(np.max(np.abs(self.r_h - self.r_h.conj().T)))
            if drift > 1e-10 * scale:
                raise ValueError("r_h must be Hermitian")
        eig = np.linalg.eigvalsh(self.r_h)
        if eig[0] < -_PSD_FLOOR * max(eig[-1], 0.0):
            raise ValueError("r_h must be positive semidefinite up to round-off")


def quad_coeffs(
    p: PulseParams, g: GridSpec, disp: tuple[int, int, int, int]
) -> QuadCoeffs:
    """Exponent coefficients for one displacement tuple (d_k, d_kp, d_l, d_lp)."""
    d_k, d_kp, d_l, d_lp = disp
    a = d_k * g.d_tau
    ap = d_kp * g.d_tau
    b = d_l * g.d_nu
    bp = d_lp * g.d_nu
    a_tau = -4.0 * np.pi / (p.gamma * g.T**2)
    a_nu = -4.0 * np.pi * p.gamma / g.B**2
    b_tau = (4.0 * np.pi * g.d_tau / (p.gamma * g.T**2)) * (d_k + d_kp) - 1j * np.pi * (
        (2.0 * p.alpha_c * g.d_tau / g.T**2) * (d_k - d_kp)
        + p.beta_c * g.d_nu * (d_l - d_lp)
    )
    b_nu = (4.0 * np.pi * p.gamma * g.d_nu / g.B**2) * (d_l + d_lp) + 1j * np.pi * (
        (2.0 / (g.N * g.d_nu)) * (d_l - d_lp)
        - p.beta_c * g.d_tau * (d_k - d_kp)
    )
    c_0 = (
        -(2.0 * np.pi / (p.gamma * g.T**2)) * (a * a + ap * ap)
        - (2.0 * np.pi * p.gamma / g.B**2) * (b * b + bp * bp)
        + 1j * np.pi * (p.alpha_c / g.T**2) * (a * a - ap * ap)
        + 1j * np.pi * p.beta_c * (a * b - ap * bp)
    )
    return QuadCoeffs(
        a_tau=float(a_tau),
        b_tau=complex(b_tau),
        a_nu=float(a_nu),
        b_nu=complex(b_nu),
        c_0=complex(c_0),
        disp=(d_k, d_kp, d_l, d_lp),
    )


_real_erf = np.vectorize(math.erf, otypes=[float])


def _truncated_gaussian_integral(a_mag, center, lo, hi):
    # integral of exp(-a_mag*(t - center)^2) over [lo, hi], real case
    root = np.sqrt(a_mag)
    return (
        np.sqrt(np.pi)
        / (2.0 * root)
        * (_real_erf(root * (hi - center)) - _real_erf(root * (lo - center)))
    )


def covariance_diag(p: int, params: PulseParams, g: GridSpec, stats: ScatterStats):
    """Diagonal covariance entry: total received power at grid row p.

    Depends only on the envelope, so the phase knobs drop out exactly;
    the delay integral runs over [0, tau_max], Doppler over
    [-nu_max, nu_max].
    """
    k, l = divmod(int(p), g.N)
    if not (0 <= k < g.M and 0 <= l < g.N):
        raise ValueError("grid index out of range")
    a_tau = 4.0 * np.pi / (params.gamma * g.T**2)
    a_nu = 4.0 * np.pi * params.gamma / g.B**2
    c_tau = (k - np.arange(g.M)) * g.d_tau
    c_nu = (l - np.arange(g.N)) * g.d_nu
    i_tau = _truncated_gaussian_integral(a_tau, c_tau, 0.0, stats.tau_max)
    i_nu = _truncated_gaussian_integral(a_nu, c_nu, -stats.nu_max, stats.nu_max)
    return float(stats.p * stats.sigma_h2 * stats.density * i_tau.sum() * i_nu.sum())


def _integral_terms(a_mag, b, lo, hi):
    """Stable endpoint decomposition of int exp(-a_mag t^2 + b t) dt.

    Returns (exponents, coefficients): the integral equals
    sqrt(pi)/(2 sqrt(a_mag)) * sum(coef * exp(exponent)).  Exponents are
    meant to be combined with the constant c_0 before exponentiation;
    each endpoint exponent is the log-integrand at that endpoint, and
    the stationary term only appears when the Gaussian peak lies inside
    the interval, so the combined real parts never exceed zero.
    """
    c = b / (2.0 * a_mag)
    root = np.sqrt(a_mag)
    exps = []
    coefs = []
    sign_sum = None
    for t, outer in ((hi, 1.0), (lo, -1.0)):
        z = root * (t - c)
        s = np.where(z.real >= 0.0, 1.0, -1.0)
        exps.append(b * t - a_mag * t * t)
        coefs.append(-outer * s * erfcx(s * z))
        sign_sum = outer * s if sign_sum is None else sign_sum + outer * s
    exps.append(a_mag * c * c)
    coefs.append(sign_sum + 0.0j)
    return exps, coefs


def _correlation_sum(k, l, kp, lp, params, g, stats):
    # sum over transmit positions of E[H_{p,q} H*_{p',q}] for one path
    m = np.arange(g.M)[:, None]
    n = np.arange(g.N)[None, :]
    d_k = k - m
    d_kp = kp - m
    d_l = l - n
    d_lp = lp - n
    a = d_k * g.d_tau
    ap = d_kp * g.d_tau
    b = d_l * g.d_nu
    bp = d_lp * g.d_nu
    a_tau = 4.0 * np.pi / (params.gamma * g.T**2)
    a_nu = 4.0 * np.pi * params.gamma / g.B**2
    b_tau = (4.0 * np.pi * g.d_tau / (params.gamma * g.T**2)) * (
        d_k + d_kp
    ) - 1j * np.pi * (
        (2.0 * params.alpha_c * g.d_tau / g.T**2) * (d_k - d_kp)
        + params.beta_c * g.d_nu * (d_l - d_lp)
    )
    b_nu = (4.0 * np.pi * params.gamma * g.d_nu / g.B**2) * (
        d_l + d_lp
    ) + 1j * np.pi * (
        (2.0 / (g.N * g.d_nu)) * (d_l - d_lp)
        - params.beta_c * g.d_tau * (d_k - d_kp)
    )
    c_0 = (
        -(2.0 * np.pi / (params.gamma * g.T**2)) * (a * a + ap * ap)
        - (2.0 * np.pi * params.gamma / g.B**2) * (b * b + bp * bp)
        + 1j * np.pi * (params.alpha_c / g.T**2) * (a * a - ap * ap)
        + 1j * np.pi * params.beta_c * (a * b - ap * bp)
    )
    exp_tau, coef_tau = _integral_terms(a_tau, b_tau, 0.0, stats.tau_max)
    exp_nu, coef_nu = _integral_terms(a_nu, b_nu, -stats.nu_max, stats.nu_max)
    total = np.zeros_like(c_0)
    for et, ct in zip(exp_tau, coef_tau):
        for en, cn in zip(exp_nu, coef_nu):
            total += ct * cn * np.exp(c_0 + et + en)
    pref = np.pi / (4.0 * np.sqrt(a_tau * a_nu))
    return pref * complex(total.sum())


def covariance_offdiag(
    p: int,
    p_prime: int,
    q: int,
    params: PulseParams,
    g: GridSpec,
    stats: ScatterStats,
) -> complex:
    """Single-column correlation E[H_{p,q} H*_{p',q}] for one path.

    The full covariance entry sums this over all columns q and carries
    the path-count factor; see assemble_covariance.
    """
    if p == p_prime:
        raise ValueError("off-diagonal correlation requires p != p_prime")
    k, l = divmod(int(p), g.N)
    kp, lp = divmod(int(p_prime), g.N)
    m, n = divmod(int(q), g.N)
    for idx, bound in ((k, g.M), (l, g.N), (kp, g.M), (lp, g.N), (m, g.M), (n, g.N)):
        if not 0 <= idx < bound:
            raise ValueError("grid index out of range")
    # reuse the vectorized kernel on a single transmit position
    value = _correlation_entry_single(k, l, kp, lp, m, n, params, g, stats)
    return stats.sigma_h2 * stats.density * value


def _correlation_entry_single(k, l, kp, lp, m, n, params, g, stats):
    d = (k - m, kp - m, l - n, lp - n)
    qc = quad_coeffs(params, g, d)
    exp_tau, coef_tau = _integral_terms(-qc.a_tau, np.complex128(qc.b_tau), 0.0, stats.tau_max)
    exp_nu, coef_nu = _integral_terms(
        -qc.a_nu, np.complex128(qc.b_nu), -stats.nu_max, stats.nu_max
    )
    total = 0.0 + 0.0j
    for et, ct in zip(exp_tau, coef_tau):
        for en, cn in zip(exp_nu, coef_nu):
            total += complex(ct) * complex(cn) * np.exp(qc.c_0 + complex(et) + complex(en))
    return np.pi / (4.0 * np.sqrt(qc.a_tau * qc.a_nu)) * total


def assemble_covariance(
    params: PulseParams, g: GridSpec, stats: ScatterStats
) -> CovarianceModel:
    """Full Hermitian covariance of the flattened effective channel."""
    mn = g.mn
    r_h = np.zeros((mn, mn), dtype=complex)
    scale = stats.p * stats.sigma_h2 * stats.density
    for p in range(mn):
        k, l = divmod(p, g.N)
        r_h[p, p] = covariance_diag(p, params, g, stats)
        for pp in range(p + 1, mn):
            kp, lp = divmod(pp, g.N)
            value = scale * _correlation_sum(k, l, kp, lp, params, g, stats)
            r_h[p, pp] = value
            r_h[pp, p] = np.conj(value)
    return CovarianceModel(grid=g, params=params, stats=stats, r_h=r_h)


def mc_covariance(
    params: PulseParams,
    g: GridSpec,
    stats: ScatterStats,
    draws: int,
    rng_seed,
    kind: str = "tgp",
) -> np.ndarray:
    """Brute-force covariance estimate from independent channel draws.

    Uses the same conventions as the analytic model: unwrapped
    infinite-plane spreading, unit-peak profile, and the receive-index
    Doppler twist.
    """
    from .channel import effective_channel, sample_wssus
    from .pulses import sample_pulse

    if draws < 1:
        raise ValueError("draws must be positive")
    pulse = sample_pulse(kind, g, params if kind == "tgp" else None)
    rng = np.random.default_rng(rng_seed)
    acc = np.zeros((g.mn, g.mn), dtype=complex)
    for _ in range(draws):
        paths = sample_wssus(
            stats.p, stats.sigma_h2, stats.tau_max, stats.nu_max, rng
        )
        h = effective_channel(
            paths, pulse, wrap=False, receive_twist=True, peak_scale=True
        ).matrix
        acc += h @ h.conj().T
    return acc / draws


def jensen_capacity(r_h: np.ndarray, snr: float, mn: int) -> float:
    """Capacity upper bound from the mean covariance, in bits per frame.

    Evaluates log2 det(I + (snr/mn) R) through a Cholesky factorization,
    falling back to the Hermitian eigendecomposition when round-off
    makes the shifted matrix lose definiteness.
    """
    if not (snr >= 0 and np.isfinite(snr)):
        raise ValueError("snr must be finite and non-negative")
    if r_h.shape[0] != r_h.shape[1]:
        raise ValueError("covariance must be square")
    eig = np.linalg.eigvalsh(r_h)
    if eig[0] < -_PSD_FLOOR * max(float(eig[-1]), 0.0):
        raise ValueError("covariance is not positive semidefinite")
    a = np.eye(r_h.shape[0]) + (snr / mn) * r_h
    try:
        chol = np.linalg.cholesky(a)
        return float(2.0 * np.sum(np.log2(np.abs(np.diag(chol)))))
    except np.linalg.LinAlgError:
        clipped = np.clip(eig, 0.0, None)
        return float(np.sum(np.log2(1.0 + (snr / mn) * clipped)))


def ipr(r_h: np.ndarray) -> float:
    """Off-diagonal to diagonal energy ratio of the covariance."""
    diag = np.abs(np.diag(r_h)) ** 2
    total = np.abs(r_h) ** 2
    off = float(total.sum() - diag.sum())
    return off / float(diag.sum())


def condition_number(r_h: np.ndarray) -> float:
    """Eigenvalue spread of a Hermitian matrix, +inf when singular."""
    eig = np.linalg.eigvalsh(r_h)
    lam_min, lam_max = float(eig[0]), float(eig[-1])
    if lam_min <= lam_max * r_h.shape[0] * np.finfo(float).eps:
        return float("inf")
    return lam_max / lam_min
