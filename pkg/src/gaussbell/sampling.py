"""Seeded random generation of pure parameter triples and mixed states.

Every sample is addressed by its index: sample ``i`` is drawn from a
generator seeded with ``(seed, stream, i)``, so streams are bit-identical
regardless of how the work is split across threads or processes.

Pure states: local invariants drawn uniformly, rejection-sampled against the
triangle constraints.  Mixed states: Williamson form sigma = S D S^T with
thermal symplectic eigenvalues drawn uniformly and S built by Euler
decomposition (Haar passive x single-mode squeezers x Haar passive).  The
sampling law and its hyperparameters are recorded in the metadata embedded
in every CSV the command-line tool writes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import ConsistencyError, DomainError
from .states import assert_valid_cm, purity, triangle_margins

PURE_LAW = "uniform-invariants-rejection"
MIXED_LAW = "williamson-euler"

_PURE_STREAM = 0
_MIXED_STREAM = 1


@dataclass(frozen=True)
class SamplerConfig:
    seed: int
    count: int
    a_max: float = 4.0
    nu_max: float = 2.0
    r_max: float = math.log(3.0)
    low_range_bias: bool = False

    def __post_init__(self):
        if self.count < 1:
            raise DomainError("count must be >= 1")
        if self.a_max <= 1.0:
            raise DomainError("a_max must exceed 1")
        if self.nu_max < 1.0:
            raise DomainError("nu_max must be >= 1")
        if self.r_max < 0.0:
            raise DomainError("r_max must be nonnegative")

    @property
    def a_high(self) -> float:
        """Upper edge of the invariant range (1.5 under the low-range bias)."""
        return 1.5 if self.low_range_bias else self.a_max


def _pure_params_with_tries(cfg: SamplerConfig, index: int) -> tuple[tuple[float, float, float], int]:
    rng = np.random.default_rng((cfg.seed, _PURE_STREAM, index))
    hi = cfg.a_high
    tries = 0
    while True:
        tries += 1
        a1, a2, a3 = 1.0 + (hi - 1.0) * rng.random(3)
        if min(triangle_margins(a1, a2, a3)) >= 0.0:
            return (float(a1), float(a2), float(a3)), tries


def pure_params_at(cfg: SamplerConfig, index: int) -> tuple[float, float, float]:
    """Deterministic pure-state invariant triple number ``index``."""
    return _pure_params_with_tries(cfg, index)[0]


def sample_pure_params(cfg: SamplerConfig) -> Iterator[tuple[float, float, float]]:
    for i in range(cfg.count):
        yield pure_params_at(cfg, i)


def pure_acceptance_rate(cfg: SamplerConfig, n: int) -> float:
    """Empirical triangle-acceptance rate over the first ``n`` indices."""
    tries = sum(_pure_params_with_tries(cfg, i)[1] for i in range(n))
    return n / tries


def _haar_unitary(rng: np.random.Generator, n: int = 3) -> np.ndarray:
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases[None, :]


def passive_symplectic(u: np.ndarray) -> np.ndarray:
    """Orthogonal symplectic matrix acting as the unitary ``u`` on the modes."""
    n = u.shape[0]
    out = np.zeros((2 * n, 2 * n))
    out[0::2, 0::2] = u.real
    out[0::2, 1::2] = -u.imag
    out[1::2, 0::2] = u.imag
    out[1::2, 1::2] = u.real
    return out


def mixed_cm_at(cfg: SamplerConfig, index: int) -> np.ndarray:
    """Deterministic mixed-state covariance matrix number ``index``."""
    rng = np.random.default_rng((cfg.seed, _MIXED_STREAM, index))
    nu = 1.0 + (cfg.nu_max - 1.0) * rng.random(3)
    r = cfg.r_max * rng.random(3)
    o1 = passive_symplectic(_haar_unitary(rng))
    o2 = passive_symplectic(_haar_unitary(rng))
    squeeze = np.diag([f for ri in r for f in (math.exp(-ri), math.exp(ri))])
    s = o1 @ squeeze @ o2
    thermal = np.diag([v for ni in nu for v in (ni, ni)])
    sigma = s @ thermal @ s.T
    sigma = 0.5 * (sigma + sigma.T)
    expected = 1.0 / float(np.prod(nu))
    if abs(purity(sigma) - expected) > 1e-9:
        raise ConsistencyError(
            f"sample {index}: purity {purity(sigma)!r} deviates from {expected!r}"
        )
    return assert_valid_cm(sigma, f"mixed sample {index}")


def sample_mixed_cm(cfg: SamplerConfig) -> Iterator[np.ndarray]:
    for i in range(cfg.count):
        yield mixed_cm_at(cfg, i)


def pure_metadata(cfg: SamplerConfig) -> dict:
    return {
        "law": PURE_LAW,
        "seed": cfg.seed,
        "count": cfg.count,
        "a_max": cfg.a_max,
        "a_high": cfg.a_high,
        "low_range_bias": cfg.low_range_bias,
    }


def mixed_metadata(cfg: SamplerConfig) -> dict:
    return {
        "law": MIXED_LAW,
        "seed": cfg.seed,
        "count": cfg.count,
        "nu_max": cfg.nu_max,
        "r_max": cfg.r_max,
    }
