"""Error function of a complex argument.

The closed-form channel correlations need erf at genuinely complex
arguments, where the naive series or a real-line erf is useless.  The
implementation below combines a Maclaurin series near the origin with
the Faddeeva function w(z) further out, the latter evaluated by a
rational approximation of Weideman type for moderate arguments and by
the Laplace continued fraction for large ones.
"""

from __future__ import annotations

import numpy as np

_SQRT_PI = float(np.sqrt(np.pi))
_INV_SQRT_PI = 1.0 / _SQRT_PI
_TWO_OVER_SQRT_PI = 2.0 / _SQRT_PI

GUARD = 30.0
_SERIES_RADIUS = 1.5
_CF_RADIUS = 8.0
_EXP_OVERFLOW = 709.0


def _weideman_coeffs(n: int) -> tuple[float, np.ndarray]:
    # Chebyshev-like expansion of w on the upper half-plane; the
    # coefficients come out real by symmetry of the integrand.
    m = 2 * n
    m2 = 2 * m
    k = np.arange(-m + 1, m)
    big_l = float(np.sqrt(n / np.sqrt(2.0)))
    theta = k * np.pi / m
    t = big_l * np.tan(theta / 2.0)
    f = np.exp(-t * t) * (big_l * big_l + t * t)
    f = np.concatenate(([0.0], f))
    a = np.real(np.fft.fft(np.fft.fftshift(f))) / m2
    return big_l, a[1 : n + 1][::-1].copy()


_W_L, _W_A = _weideman_coeffs(48)


def _w_rational(z: np.ndarray) -> np.ndarray:
    # valid for Im z >= 0
    iz = 1j * z
    denom = _W_L - iz
    big_z = (_W_L + iz) / denom
    p = np.polyval(_W_A, big_z)
    return 2.0 * p / (denom * denom) + _INV_SQRT_PI / denom


def _w_contfrac(z: np.ndarray, depth: int = 24) -> np.ndarray:
    # Laplace continued fraction, accurate for |z| >= ~6, Im z >= 0
    r = np.zeros_like(z)
    for k in range(depth, 0, -1):
        r = (0.5 * k) / (z - r)
    return 1j * _INV_SQRT_PI / (z - r)


def _faddeeva_upper(z: np.ndarray) -> np.ndarray:
    """w(z) = exp(-z^2) erfc(-jz) for Im z >= 0."""
    out = np.empty_like(z)
    near = np.abs(z) < _CF_RADIUS
    if near.any():
        out[near] = _w_rational(z[near])
    far = ~near
    if far.any():
        out[far] = _w_contfrac(z[far])
    return out


def _erf_series(z: np.ndarray) -> np.ndarray:
    u = z.copy()
    s = z.copy()
    neg_zsq = -z * z
    for n in range(1, 30):
        u = u * neg_zsq / n
        s = s + u / (2 * n + 1)
    return _TWO_OVER_SQRT_PI * s


def erfcx(z):
    """Scaled complementary error function exp(z^2) erfc(z).

    Only the closed right half-plane Re z >= 0 is supported; the
    correlation evaluator arranges its exponents so that it never needs
    the unscaled, overflowing left-half-plane values.
    """
    scalar_in = np.ndim(z) == 0
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    if np.any(arr.real < 0.0):
        raise ValueError("erfcx requires Re z >= 0")
    out = _faddeeva_upper(1j * arr)
    if scalar_in:
        return complex(out[0])
    return out.reshape(np.shape(z))


def complex_erf(z):
    """erf(z) for complex z with |Re z| <= 30 and |Im z| <= 30.

    Parameters
    ----------
    z : complex or array_like of complex
        Argument(s) inside the guarded box.

    Returns
    -------
    complex or ndarray
        erf evaluated elementwise, better than 1e-12 relative accuracy.

    Raises
    ------
    ValueError
        If any argument lies outside the guarded range.
    OverflowError
        If the result magnitude exceeds the double-precision range,
        which happens when Im(z)^2 - Re(z)^2 is large.
    """
    scalar_in = np.ndim(z) == 0
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128)).ravel()
    if np.any(np.abs(arr.real) > GUARD) or np.any(np.abs(arr.imag) > GUARD):
        raise ValueError(
            "complex_erf argument outside the guarded box |Re z|, |Im z| <= 30"
        )

    # Canonicalize to the closed first quadrant so that oddness and
    # conjugate symmetry hold exactly, imaginary axis included.
    flip = (arr.real < 0.0) | ((arr.real == 0.0) & (arr.imag < 0.0))
    zz = np.where(flip, -arr, arr)
    conj = zz.imag < 0.0
    zz = np.where(conj, np.conj(zz), zz)
    out = np.empty_like(zz)

    small = np.abs(zz) <= _SERIES_RADIUS
    if small.any():
        out[small] = _erf_series(zz[small])
    large = ~small
    if large.any():
        zb = zz[large]
        grow = zb.imag * zb.imag - zb.real * zb.real
        if np.any(grow > _EXP_OVERFLOW):
            raise OverflowError(
                "erf(z) overflows double precision for this argument"
            )
        out[large] = 1.0 - np.exp(-zb * zb) * _faddeeva_upper(1j * zb)

    axis = zz.real == 0.0
    if axis.any():
        out[axis] = 1j * out[axis].imag
    out = np.where(conj, np.conj(out), out)
    out = np.where(flip, -out, out)
    if scalar_in:
        return complex(out[0])
    return out.reshape(np.shape(z))
