"""Delay-Doppler grid geometry."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Rectangular delay-Doppler grid.

    The grid has ``M`` delay bins of width ``T/M`` and ``N`` Doppler bins
    of width ``B/N``.  Sample positions are origin-centered: the delay
    index runs over ``{-M/2, ..., M/2 - 1}`` and the Doppler index over
    ``{-N/2, ..., N/2 - 1}``, which requires even ``M`` and ``N``.

    Parameters
    ----------
    M : int
        Number of delay bins (even, at least 2).
    N : int
        Number of Doppler bins (even, at least 2).
    T : float
        Frame duration in seconds.
    B : float
        Bandwidth in hertz.
    """

    M: int
    N: int
    T: float
    B: float

    def __post_init__(self) -> None:
        if int(self.M) != self.M or int(self.N) != self.N:
            raise ValueError("M and N must be integers")
        if self.M < 2 or self.N < 2:
            raise ValueError("grid needs M >= 2 and N >= 2")
        if self.M % 2 or self.N % 2:
            raise ValueError("origin-centered indexing needs even M and N")
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError("frame duration T must be positive and finite")
        if not (np.isfinite(self.B) and self.B > 0):
            raise ValueError("bandwidth B must be positive and finite")

    @property
    def d_tau(self) -> float:
        """Delay resolution T/M in seconds."""
        return self.T / self.M

    @property
    def d_nu(self) -> float:
        """Doppler resolution B/N in hertz."""
        return self.B / self.N

    @property
    def bt(self) -> float:
        """Time-bandwidth product B*T."""
        return self.B * self.T

    @property
    def mn(self) -> int:
        return self.M * self.N

    def delay_indices(self) -> np.ndarray:
        return np.arange(-(self.M // 2), self.M // 2)

    def doppler_indices(self) -> np.ndarray:
        return np.arange(-(self.N // 2), self.N // 2)

    def delay_axis(self) -> np.ndarray:
        """Grid delays m*d_tau in seconds, m centered."""
        return self.delay_indices() * self.d_tau

    def doppler_axis(self) -> np.ndarray:
        """Grid Dopplers n*d_nu in hertz, n centered."""
        return self.doppler_indices() * self.d_nu
