import numpy as np
import pytest

from ddisac import GridSpec


def test_derived_resolutions_exact():
    g = GridSpec(16, 8, 1.12e-3, 28e3)
    assert g.d_tau * g.M == g.T
    assert g.d_nu * g.N == g.B
    assert g.bt == 28e3 * 1.12e-3
    assert g.mn == 128


def test_axes_are_origin_centered():
    g = GridSpec(4, 6, 2.0, 3.0)
    assert list(g.delay_indices()) == [-2, -1, 0, 1]
    assert list(g.doppler_indices()) == [-3, -2, -1, 0, 1, 2]
    np.testing.assert_allclose(g.delay_axis(), np.array([-2, -1, 0, 1]) * 0.5)
    assert g.delay_axis()[g.M // 2] == 0.0


@pytest.mark.parametrize(
    "m, n, t, b",
    [
        (1, 4, 1.0, 1.0),
        (4, 1, 1.0, 1.0),
        (3, 4, 1.0, 1.0),
        (4, 6, 0.0, 1.0),
        (4, 6, 1.0, -2.0),
        (4, 6, float("nan"), 1.0),
        (4.5, 6, 1.0, 1.0),
    ],
)
def test_rejects_bad_geometry(m, n, t, b):
    with pytest.raises(ValueError):
        GridSpec(m, n, t, b)
