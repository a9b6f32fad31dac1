import numpy as np
import pytest

from gaussbell import SamplerConfig, MeasurementSettings, mixed_cm_at, pure_params_at


@pytest.fixture
def rng():
    return np.random.default_rng(20260811)


def random_settings(rng, scale=0.7) -> MeasurementSettings:
    return MeasurementSettings(
        rng.normal(scale=scale, size=(3, 2)), rng.normal(scale=scale, size=(3, 2))
    )


def random_states(seed, n_pure, n_mixed):
    """A mix of sampled pure standard-form and random mixed CMs."""
    from gaussbell import build_pure_standard_form

    cfg = SamplerConfig(seed=seed, count=max(n_pure, n_mixed, 1))
    out = [build_pure_standard_form(pure_params_at(cfg, i)) for i in range(n_pure)]
    out += [mixed_cm_at(cfg, i) for i in range(n_mixed)]
    return out
