"""Pulse shapes on the delay-Doppler grid.

The tunable Gaussian pulse is a real Gaussian envelope with aspect
ratio gamma multiplied by a unimodular phase controlled by a chirp rate
alpha_c and a delay-Doppler coupling beta_c.  Three static benchmark
shapes are provided alongside it: the symmetric Gaussian (the tunable
pulse with all knobs neutral), a separable root-raised-cosine, and a
separable sinc.  All discrete pulses are normalized to unit sample
energy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .grid import GridSpec

PULSE_KINDS = ("tgp", "sgp", "rrc", "sinc")


@dataclass(frozen=True)
class PulseParams:
    """Tunable pulse knobs: aspect ratio, chirp rate, phase coupling."""

    gamma: float
    alpha_c: float
    beta_c: float

    def __post_init__(self) -> None:
        if not (np.isfinite(self.gamma) and self.gamma > 0):
            raise ValueError("gamma must be positive and finite")
        if not (np.isfinite(self.alpha_c) and np.isfinite(self.beta_c)):
            raise ValueError("alpha_c and beta_c must be finite")


def tgp_continuous(tau, nu, p: PulseParams, g: GridSpec):
    """Continuous tunable Gaussian pulse, unnormalized (peak 1 at origin).

    Parameters
    ----------
    tau : float or array_like
        Delay in seconds.
    nu : float or array_like
        Doppler in hertz.
    p : PulseParams
    g : GridSpec
        Supplies the frame duration and bandwidth that scale the knobs.

    Returns
    -------
    complex or ndarray
        exp(-pi (2 tau^2/(gamma T^2) + 2 gamma nu^2/B^2))
        * exp(j pi (alpha_c tau^2/T^2 + beta_c tau nu)).
    """
    tau_a = np.asarray(tau, dtype=np.float64)
    nu_a = np.asarray(nu, dtype=np.float64)
    t2 = g.T * g.T
    b2 = g.B * g.B
    envelope = np.exp(
        -np.pi * (2.0 * tau_a**2 / (p.gamma * t2) + 2.0 * p.gamma * nu_a**2 / b2)
    )
    phase = np.exp(1j * np.pi * (p.alpha_c * tau_a**2 / t2 + p.beta_c * tau_a * nu_a))
    out = envelope * phase
    if np.ndim(tau) == 0 and np.ndim(nu) == 0:
        return complex(out)
    return out


def rrc_prototype(t, beta: float):
    """Root-raised-cosine impulse response at dimensionless argument t.

    The removable singularities at t = 0 and |t| = 1/(4 beta) are
    patched with their limit values; beta = 0 degenerates to sinc.
    """
    if not 0.0 <= beta <= 1.0:
        raise ValueError("roll-off must lie in [0, 1]")
    t_a = np.asarray(t, dtype=np.float64)
    if beta == 0.0:
        out = np.sinc(t_a)
        return out if out.ndim else float(out)

    num = np.sin(np.pi * t_a * (1.0 - beta)) + 4.0 * beta * t_a * np.cos(
        np.pi * t_a * (1.0 + beta)
    )
    den = np.pi * t_a * (1.0 - (4.0 * beta * t_a) ** 2)
    center = np.abs(t_a) < 1e-8
    edge = np.abs(4.0 * beta * np.abs(t_a) - 1.0) < 1e-8
    with np.errstate(divide="ignore", invalid="ignore"):
        out = num / np.where(center | edge, 1.0, den)
    out = np.where(center, 1.0 + beta * (4.0 / np.pi - 1.0), out)
    q = np.pi / (4.0 * beta)
    edge_val = (beta / np.sqrt(2.0)) * (
        (1.0 + 2.0 / np.pi) * np.sin(q) + (1.0 - 2.0 / np.pi) * np.cos(q)
    )
    out = np.where(edge, edge_val, out)
    return out if out.ndim else float(out)


def _profile_values(kind, params, rolloff, g: GridSpec, tau, nu):
    if kind in ("tgp", "sgp"):
        return tgp_continuous(tau, nu, params, g)
    if kind == "rrc":
        b_tau, b_nu = rolloff
        return rrc_prototype(np.asarray(tau) / g.T, b_tau) * rrc_prototype(
            np.asarray(nu) * g.T, b_nu
        )
    return np.sinc(np.asarray(tau) * g.B) * np.sinc(np.asarray(nu) * g.T)


@dataclass(frozen=True)
class DiscretePulse:
    """Unit-energy pulse sampled on a delay-Doppler grid.

    ``samples[i, j]`` holds the value at delay index m = i - M/2 and
    Doppler index n = j - N/2, so the origin sits at ``[M//2, N//2]``.
    """

    grid: GridSpec
    samples: np.ndarray
    kind: str
    params: PulseParams | None = None
    rolloff: tuple[float, float] | None = None

    def __post_init__(self) -> None:
        if self.kind not in PULSE_KINDS:
            raise ValueError(f"unknown pulse kind {self.kind!r}")
        if self.samples.shape != (self.grid.M, self.grid.N):
            raise ValueError("samples shape must be (M, N)")
        if not np.all(np.isfinite(self.samples)):
            raise ValueError("samples must be finite")
        energy = float(np.sum(np.abs(self.samples) ** 2))
        if abs(energy - 1.0) > 1e-12:
            raise ValueError(f"samples must have unit energy, got {energy!r}")

    def profile(self, tau, nu):
        """Continuous, unnormalized pulse value at (tau, nu).

        Gaussian kinds return the complex waveform; the separable
        root-raised-cosine and sinc kinds return real values.
        """
        return _profile_values(self.kind, self.params, self.rolloff, self.grid, tau, nu)

    @cached_property
    def scale(self) -> float:
        """Normalization constant relating profile to samples.

        samples = scale * profile(grid points); recomputed from the
        profile so nothing but the samples is stored.
        """
        raw = self.profile(
            self.grid.delay_axis()[:, None], self.grid.doppler_axis()[None, :]
        )
        return float(1.0 / np.sqrt(np.sum(np.abs(raw) ** 2)))


def sample_pulse(
    kind: str,
    g: GridSpec,
    params: PulseParams | None = None,
    rolloff: tuple[float, float] = (0.6, 0.6),
) -> DiscretePulse:
    """Sample a pulse of the given kind on the grid and normalize it.

    Parameters
    ----------
    kind : {"tgp", "sgp", "rrc", "sinc"}
    g : GridSpec
    params : PulseParams, optional
        Required for "tgp", forbidden otherwise.
    rolloff : (float, float)
        Delay and Doppler roll-offs for "rrc", each in [0, 1].  Ignored
        by the other kinds.

    Returns
    -------
    DiscretePulse
        With sample energy exactly renormalized to 1.
    """
    if kind not in PULSE_KINDS:
        raise ValueError(f"unknown pulse kind {kind!r}")
    if kind == "tgp":
        if params is None:
            raise ValueError("tgp requires PulseParams")
    elif params is not None:
        raise ValueError(f"{kind} does not take PulseParams")

    if kind == "sgp":
        params = PulseParams(1.0, 0.0, 0.0)

    stored_rolloff: tuple[float, float] | None = None
    if kind == "rrc":
        b_tau, b_nu = float(rolloff[0]), float(rolloff[1])
        if not (0.0 <= b_tau <= 1.0 and 0.0 <= b_nu <= 1.0):
            raise ValueError("roll-offs must lie in [0, 1]")
        stored_rolloff = (b_tau, b_nu)

    raw = _profile_values(
        kind, params, stored_rolloff, g, g.delay_axis()[:, None], g.doppler_axis()[None, :]
    )

    if not np.all(np.isfinite(raw)):
        raise ValueError(f"pulse samples are not finite for kind {kind!r}")
    energy = np.sum(np.abs(raw) ** 2)
    if energy <= 0.0:
        raise ValueError(f"degenerate all-zero pulse for kind {kind!r}")
    samples = np.asarray(raw, dtype=np.complex128) / np.sqrt(energy)
    return DiscretePulse(
        grid=g, samples=samples, kind=kind, params=params, rolloff=stored_rolloff
    )


def beta_c_limit(k_alias: int, g: GridSpec) -> float:
    """Largest phase coupling that keeps aliased replicas k_alias cells out.

    Doubles with min(M, N) and with each allowed aliasing order.
    """
    if k_alias < 0 or int(k_alias) != k_alias:
        raise ValueError("k_alias must be a non-negative integer")
    return (k_alias + 1) * 2.0 * min(g.M, g.N) / g.bt


def tgp_widths(p: PulseParams, g: GridSpec) -> tuple[float, float]:
    """Gaussian RMS widths (sigma_tau, sigma_nu) of the pulse profile.

    Their product B*T/(4 pi) does not depend on gamma.
    """
    sigma_tau = np.sqrt(p.gamma * g.T * g.T / (4.0 * np.pi))
    sigma_nu = np.sqrt(g.B * g.B / (4.0 * np.pi * p.gamma))
    return float(sigma_tau), float(sigma_nu)
