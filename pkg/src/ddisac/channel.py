"""Multipath realizations and the effective delay-Doppler channel.

A physical path shifts the transmit pulse in delay and Doppler and
rotates its phase; stacking the pulse response for every transmit and
receive grid position gives the effective matrix acting on the symbol
vector.  Two stochastic path models are provided: uniform rectangular
scattering and the six-path vehicular profile.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec
from .pulses import DiscretePulse

_VEH_A_DELAYS = np.array([0.0, 310.0, 710.0, 1090.0, 1730.0, 2510.0]) * 1e-9
_VEH_A_POWERS_DB = np.array([0.0, -1.0, -9.0, -10.0, -15.0, -20.0])


@dataclass(frozen=True)
class PathSet:
    """Discrete multipath profile: complex gains and their shifts."""

    gains: np.ndarray
    delays: np.ndarray
    dopplers: np.ndarray

    def __post_init__(self) -> None:
        gains = np.asarray(self.gains, dtype=complex)
        delays = np.asarray(self.delays, dtype=float)
        dopplers = np.asarray(self.dopplers, dtype=float)
        if not (gains.ndim == delays.ndim == dopplers.ndim == 1):
            raise ValueError("path fields must be one-dimensional")
        if gains.size == 0 or not gains.size == delays.size == dopplers.size:
            raise ValueError("path fields must share a nonzero length")
        if not (
            np.all(np.isfinite(gains))
            and np.all(np.isfinite(delays))
            and np.all(np.isfinite(dopplers))
        ):
            raise ValueError("path fields must be finite")
        if np.any(delays < 0):
            raise ValueError("delays must be non-negative")
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "delays", delays)
        object.__setattr__(self, "dopplers", dopplers)

    @property
    def p(self) -> int:
        return self.gains.size


@dataclass(frozen=True)
class EffectiveChannel:
    """Channel matrix on the flattened grid, row p = k*N + l."""

    matrix: np.ndarray
    grid: GridSpec
    pulse: DiscretePulse

    def __post_init__(self) -> None:
        mn = self.grid.mn
        if self.matrix.shape != (mn, mn):
            raise ValueError(f"matrix must have shape ({mn}, {mn})")
        if not np.all(np.isfinite(self.matrix)):
            raise ValueError("matrix entries must be finite")


@dataclass(frozen=True)
class Target:
    """Point scatterer: complex gain and continuous delay/Doppler."""

    h_t: complex
    tau_t: float
    nu_t: float

    def __post_init__(self) -> None:
        if not (
            np.isfinite(self.h_t)
            and np.isfinite(self.tau_t)
            and np.isfinite(self.nu_t)
        ):
            raise ValueError("target parameters must be finite")


@dataclass(frozen=True)
class SensingEcho:
    """Noise-free target echo on the grid plus the noise level."""

    target: Target
    mu: np.ndarray
    n0: float
    sigma_n2: float
    grid: GridSpec

    def __post_init__(self) -> None:
        if self.mu.shape != (self.grid.M, self.grid.N):
            raise ValueError("mu must be sampled on the full grid")
        if not self.n0 > 0:
            raise ValueError("n0 must be positive")
        expected = self.n0 / (self.grid.d_tau * self.grid.d_nu)
        if abs(self.sigma_n2 - expected) > 1e-9 * expected:
            raise ValueError("sigma_n2 inconsistent with n0 on this grid")


def _check_principal_cell(delays, dopplers, g: GridSpec) -> None:
    if np.any(delays >= g.T):
        raise ValueError("path delay outside the principal cell")
    if np.any(np.abs(dopplers) >= g.B / 2):
        raise ValueError("path Doppler outside the principal cell")


def _wrap(values: np.ndarray, span: float) -> np.ndarray:
    half = span / 2.0
    return np.mod(values + half, span) - half


def effective_channel(
    paths: PathSet,
    pulse: DiscretePulse,
    *,
    wrap: bool = True,
    receive_twist: bool = False,
    peak_scale: bool = False,
) -> EffectiveChannel:
    """Superpose per-path pulse responses into the grid channel matrix.

    Each entry couples transmit position (m, n) to receive position
    (k, l) through the pulse spreading value at the wrapped continuous
    displacement ((k-m)*d_tau - tau_i, (l-n)*d_nu - nu_i) and the
    unimodular phase twist exp{j2pi(n*nu_i/B - m*tau_i/T)}.

    Parameters
    ----------
    paths : PathSet
    pulse : DiscretePulse
    wrap : bool
        Wrap displacements to [-T/2, T/2) x [-B/2, B/2), the circular
        grid model.  Disable to evaluate the raw displacement, which is
        what the analytic covariance integrals assume.
    receive_twist : bool
        Use the receive Doppler index l in the twist instead of the
        transmit index n (convention sensitivity check).
    peak_scale : bool
        Evaluate the spreading profile with unit peak instead of the
        sampled-pulse normalization constant.

    Notes
    -----
    Cost and memory are O((MN)^2) per path; intended for communication
    grid sizes, not the fine sensing grid.
    """
    g = pulse.grid
    _check_principal_cell(paths.delays, paths.dopplers, g)
    l = np.arange(g.N)[None, :, None, None]
    m = np.arange(g.M)[None, None, :, None]
    n = np.arange(g.N)[None, None, None, :]
    # The profile argument depends on the index differences only, so it
    # is evaluated on the (2M-1)x(2N-1) difference table and gathered.
    dk = np.arange(-(g.M - 1), g.M)[:, None]
    dl = np.arange(-(g.N - 1), g.N)[None, :]
    gather_k = (np.arange(g.M)[:, None, None, None] - m) + (g.M - 1)
    gather_l = (l - n) + (g.N - 1)
    acc = np.zeros((g.M, g.N, g.M, g.N), dtype=complex)
    dop_index = l if receive_twist else n
    for h_i, tau_i, nu_i in zip(paths.gains, paths.delays, paths.dopplers):
        d_tau = dk * g.d_tau - tau_i
        d_nu = dl * g.d_nu - nu_i
        if wrap:
            d_tau = _wrap(d_tau, g.T)
            d_nu = _wrap(d_nu, g.B)
        x = pulse.profile(d_tau, d_nu)[gather_k, gather_l]
        twist = np.exp(2j * np.pi * (dop_index * nu_i / g.B - m * tau_i / g.T))
        term = np.multiply(h_i, x)
        np.multiply(term, twist, out=term)
        acc += term
    scale = 1.0 if peak_scale else pulse.scale
    matrix = (scale * acc).reshape(g.mn, g.mn)
    return EffectiveChannel(matrix=matrix, grid=g, pulse=pulse)


def _as_generator(rng_seed) -> np.random.Generator:
    if isinstance(rng_seed, np.random.Generator):
        return rng_seed
    return np.random.default_rng(rng_seed)


def sample_wssus(
    p: int, sigma_h2: float, tau_max: float, nu_max: float, rng_seed
) -> PathSet:
    """Draw uniformly scattered paths with complex Gaussian gains.

    Delays are uniform on [0, tau_max], Dopplers uniform on
    [-nu_max, nu_max], gains circular complex Gaussian with variance
    sigma_h2 per path.
    """
    if p < 1:
        raise ValueError("path count must be at least 1")
    if not (sigma_h2 > 0 and tau_max > 0 and nu_max > 0):
        raise ValueError("model bounds must be positive")
    rng = _as_generator(rng_seed)
    delays = rng.uniform(0.0, tau_max, size=p)
    dopplers = rng.uniform(-nu_max, nu_max, size=p)
    gains = np.sqrt(sigma_h2 / 2.0) * (
        rng.standard_normal(p) + 1j * rng.standard_normal(p)
    )
    return PathSet(gains=gains, delays=delays, dopplers=dopplers)


def sample_veh_a(nu_max: float = 815.0, rng_seed=None) -> PathSet:
    """Draw the six-path vehicular profile with cosine-spread Doppler.

    Fixed delay and average-power profile (0..2510 ns, 0..-20 dB),
    normalized to unit total average power; per-path Doppler is
    nu_max*cos(theta) with theta uniform, giving the classic arcsine
    Doppler density.
    """
    if not nu_max > 0:
        raise ValueError("nu_max must be positive")
    rng = _as_generator(rng_seed)
    powers = 10.0 ** (_VEH_A_POWERS_DB / 10.0)
    powers = powers / powers.sum()
    theta = rng.uniform(0.0, 2.0 * np.pi, size=powers.size)
    dopplers = nu_max * np.cos(theta)
    gains = np.sqrt(powers / 2.0) * (
        rng.standard_normal(powers.size) + 1j * rng.standard_normal(powers.size)
    )
    return PathSet(gains=gains, delays=_VEH_A_DELAYS.copy(), dopplers=dopplers)


def mean_echo(target: Target, pulse: DiscretePulse, n0: float = 1.0) -> SensingEcho:
    """Noise-free echo of a point target, sampled on the grid.

    The echo is the quadrature-normalized pulse shifted to the target
    position and rotated by the delay-Doppler phase twist
    exp{j2pi(nu*tau_T - nu_T*tau)}.  The noise variance per sample is
    n0/(d_tau*d_nu) so that the sampled echo carries the target energy
    |h_T|^2 under grid quadrature.
    """
    g = pulse.grid
    _check_principal_cell(
        np.atleast_1d(target.tau_t), np.atleast_1d(target.nu_t), g
    )
    if not n0 > 0:
        raise ValueError("n0 must be positive")
    tau = g.delay_axis()[:, None]
    nu = g.doppler_axis()[None, :]
    d_tau = _wrap(tau - target.tau_t, g.T)
    d_nu = _wrap(nu - target.nu_t, g.B)
    c = pulse.scale / np.sqrt(g.d_tau * g.d_nu)
    twist = np.exp(2j * np.pi * (nu * target.tau_t - target.nu_t * tau))
    mu = target.h_t * c * pulse.profile(d_tau, d_nu) * twist
    sigma_n2 = n0 / (g.d_tau * g.d_nu)
    return SensingEcho(target=target, mu=mu, n0=n0, sigma_n2=sigma_n2, grid=g)
