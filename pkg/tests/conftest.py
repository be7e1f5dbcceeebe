import numpy as np
import pytest

from pumpedsu11 import ChannelSpec, InterferometerConfig


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def random_config(rng, kind=None, nbar_range=(10.0, 1e6), r_max=2.0,
                  strength_range=(0.25, 4.0)):
    """Draw a valid interferometer configuration, resampling depleted pumps."""
    if kind is None:
        kind = rng.choice(["squeezing", "mode_mixing"])
    while True:
        r = rng.uniform(0.0, r_max)
        nbar = np.exp(rng.uniform(np.log(nbar_range[0]), np.log(nbar_range[1])))
        if nbar > 2.0 * np.sinh(r) ** 2 * 1.05 + 0.5:
            break
    return InterferometerConfig(
        nbar=nbar, r=r, theta=rng.uniform(0.0, np.pi / 2),
        channel=ChannelSpec(str(kind), rng.uniform(*strength_range),
                            rng.uniform(0.0, 2 * np.pi)),
        pump_phase=rng.uniform(0.0, 2 * np.pi),
        squeeze_phase=rng.uniform(0.0, 2 * np.pi),
        tritter_phase=rng.uniform(0.0, 2 * np.pi))
