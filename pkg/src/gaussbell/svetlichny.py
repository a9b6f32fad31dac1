"""The Svetlichny functional on three-mode Gaussian states.

Eight products of displaced-parity measurements, two settings per party, with
the fixed sign pattern below (primed-setting subsets): single and pair
subsets enter with +, the empty and full subsets with -.  A hybrid
local-nonlocal model bounds the functional by 4; any larger value certifies
genuine tripartite nonlocality.

For fully symmetric states the restricted maximum is known in closed form
(``symmetric_max_analytic``), attained on the antisymmetric momentum ansatz
xi_j = (0, p*), xi'_j = (0, -p*).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve, solve_triangular

from . import optimize
from .errors import DimensionMismatch, DomainError
from .states import purity, symmetric_pure

SQRT_3_OVER_2 = math.sqrt(1.5)
#: Limiting Svetlichny value of fully symmetric states, 16 / 3^(9/8).
S_INFINITY = 16.0 / 3.0**1.125
#: No state with purity below 3^(9/8)/4 can exceed the classical bound 4.
PURITY_CUTOFF = 3.0**1.125 / 4.0

#: Primed-setting subsets of the eight terms, in a fixed canonical order,
#: and their signs in the functional.
PRIMED_SUBSETS = ((1,), (2,), (3,), (1, 2, 3), (2, 3), (1, 3), (1, 2), ())
TERM_SIGNS = (1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0, -1.0)

_SIGNS = np.array(TERM_SIGNS)
_PRIMED_MASK = np.array(
    [[(j + 1) in subset for j in range(3)] for subset in PRIMED_SUBSETS]
)[:, :, None]


@dataclass(frozen=True, eq=False)
class MeasurementSettings:
    """Two phase-space settings per mode: xi (unprimed) and xi_prime."""

    xi: np.ndarray
    xi_prime: np.ndarray

    def __post_init__(self):
        for name in ("xi", "xi_prime"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (3, 2):
                raise DimensionMismatch(f"{name} must have shape (3, 2), got {arr.shape}")
            object.__setattr__(self, name, arr)

    @classmethod
    def origin(cls) -> "MeasurementSettings":
        return cls(np.zeros((3, 2)), np.zeros((3, 2)))

    @classmethod
    def antisymmetric(cls, p) -> "MeasurementSettings":
        """Momentum-only ansatz xi_j = (0, p_j), xi'_j = (0, -p_j)."""
        p = np.asarray(p, dtype=float).reshape(3)
        xi = np.column_stack([np.zeros(3), p])
        return cls(xi, -xi)

    @classmethod
    def from_flat(cls, vec) -> "MeasurementSettings":
        vec = np.asarray(vec, dtype=float).reshape(12)
        return cls(vec[:6].reshape(3, 2), vec[6:].reshape(3, 2))

    def to_flat(self) -> np.ndarray:
        return np.concatenate([self.xi.reshape(-1), self.xi_prime.reshape(-1)])

    def to_dict(self) -> dict:
        return {
            "xi": [[float(x) for x in row] for row in self.xi],
            "xi_prime": [[float(x) for x in row] for row in self.xi_prime],
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "MeasurementSettings":
        return cls(np.asarray(payload["xi"], float), np.asarray(payload["xi_prime"], float))


@dataclass(frozen=True)
class MaximizationResult:
    value: float
    settings: MeasurementSettings
    evaluations: int
    converged: bool


def f_of_a(a: float) -> float:
    """Auxiliary function a^2 - 1 + sqrt((9a^2 - 1)(a^2 - 1)) of the local invariant."""
    if a < 1.0:
        raise DomainError(f"f_of_a requires a >= 1, got {a!r}")
    return a * a - 1.0 + math.sqrt((9.0 * a * a - 1.0) * (a * a - 1.0))


def symmetric_pstar(a: float) -> float:
    """Optimal antisymmetric momentum setting for the symmetric pure state.

    Zero for a <= sqrt(3/2); beyond the threshold the stationarity condition
    of the symmetric restricted functional 2(3 e^{-A p^2} - e^{-B p^2}) gives

        p* = sqrt((a / f) * atanh((f - 2 a^2) / (4 a^2))),   f = f_of_a(a),

    which reproduces the closed-form maximum exactly (the atanh argument lies
    in [0, 1) for every finite a on this branch).
    """
    if a < 1.0:
        raise DomainError(f"symmetric_pstar requires a >= 1, got {a!r}")
    if a <= SQRT_3_OVER_2:
        return 0.0
    fa = f_of_a(a)
    arg = (fa - 2.0 * a * a) / (4.0 * a * a)
    if not 0.0 <= arg < 1.0:
        raise DomainError(f"atanh argument {arg!r} outside [0, 1) at a={a!r}")
    return math.sqrt((a / fa) * math.atanh(arg))


def symmetric_max_analytic(a: float) -> float:
    """Maximum Svetlichny value of the fully symmetric pure state.

    Equals 4 up to a = sqrt(3/2); beyond that

        4 (4a^2 + 3f - 4) (8a^2 - 2f - 5)^(3 / (-8a^2 + 2f + 8)) / (4a^2 + 5),

    continuous at the threshold and saturating at 16/3^(9/8) for large a.
    """
    if a < 1.0:
        raise DomainError(f"symmetric_max_analytic requires a >= 1, got {a!r}")
    if a <= SQRT_3_OVER_2:
        return 4.0
    fa = f_of_a(a)
    base = 8.0 * a * a - 2.0 * fa - 5.0
    if base <= 0.0:
        raise DomainError(f"power base {base!r} not positive at a={a!r}")
    exponent = 3.0 / (-8.0 * a * a + 2.0 * fa + 8.0)
    return 4.0 * (4.0 * a * a + 3.0 * fa - 4.0) * base**exponent / (4.0 * a * a + 5.0)


def _term_points(settings: MeasurementSettings) -> np.ndarray:
    """(8, 6) matrix of the phase-space points of the eight terms."""
    return np.where(_PRIMED_MASK, settings.xi_prime[None], settings.xi[None]).reshape(8, 6)


def svetlichny_value(sigma: np.ndarray, settings: MeasurementSettings) -> float:
    """Signed sum of the eight displaced-parity correlators."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (6, 6):
        raise DimensionMismatch(f"expected a three-mode CM, got shape {sigma.shape}")
    chol = np.linalg.cholesky(sigma)
    sqrt_det = float(np.prod(np.diagonal(chol)))
    y = solve_triangular(chol, _term_points(settings).T, lower=True, check_finite=False)
    quad = np.einsum("ij,ij->j", y, y)
    return float(_SIGNS @ np.exp(-quad)) / sqrt_det


def _restricted_objective(sigma: np.ndarray):
    """|S| on the antisymmetric momentum ansatz as a fast scalar function.

    On the ansatz, terms with complementary primed subsets coincide, so only
    four quadratic forms in the momentum block of sigma^{-1} survive:
    S = 2 mu (e^{-q_1} + e^{-q_2} + e^{-q_3} - e^{-q_0}), q_j flipping the
    sign of p_j and q_0 flipping none.
    """
    sigma_inv = cho_solve(cho_factor(sigma, lower=True), np.eye(6))
    mp = sigma_inv[np.ix_((1, 3, 5), (1, 3, 5))]
    m11, m22, m33 = mp[0, 0], mp[1, 1], mp[2, 2]
    m12, m13, m23 = mp[0, 1], mp[0, 2], mp[1, 2]
    two_mu = 2.0 * purity(sigma)
    exp = math.exp

    def objective(p):
        p1, p2, p3 = p
        diag = m11 * p1 * p1 + m22 * p2 * p2 + m33 * p3 * p3
        b12 = 2.0 * m12 * p1 * p2
        b13 = 2.0 * m13 * p1 * p3
        b23 = 2.0 * m23 * p2 * p3
        q0 = diag + b12 + b13 + b23
        q1 = diag - b12 - b13 + b23
        q2 = diag - b12 + b13 - b23
        q3 = diag + b12 - b13 - b23
        return abs(two_mu * (exp(-q1) + exp(-q2) + exp(-q3) - exp(-q0)))

    return objective


def _full_objective(sigma: np.ndarray):
    """|S| over all twelve setting coordinates, batched over the 8 terms."""
    chol = np.linalg.cholesky(sigma)
    sqrt_det = float(np.prod(np.diagonal(chol)))

    def objective(v):
        v = np.asarray(v, dtype=float)
        xi = v[:6].reshape(3, 2)
        xi_prime = v[6:].reshape(3, 2)
        pts = np.where(_PRIMED_MASK, xi_prime[None], xi[None]).reshape(8, 6)
        y = solve_triangular(chol, pts.T, lower=True, check_finite=False)
        quad = np.einsum("ij,ij->j", y, y)
        return abs(float(_SIGNS @ np.exp(-quad))) / sqrt_det

    return objective


def scaled_symmetric_params(sigma: np.ndarray) -> tuple[float, float] | None:
    """Detect sigma = c * (symmetric pure CM of invariant a); return (a, c) or None."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != (6, 6):
        return None
    det = float(np.linalg.det(sigma))
    if det <= 0:
        return None
    c = det ** (1.0 / 6.0)
    a = sigma[0, 0] / c
    if a < 1.0 - 1e-12:
        return None
    a = max(a, 1.0)
    try:
        reference = c * symmetric_pure(a)
    except DomainError:
        return None
    scale = max(1.0, float(np.max(np.abs(sigma))))
    if float(np.max(np.abs(sigma - reference))) > 1e-8 * scale:
        return None
    return a, c


def maximize_restricted(
    sigma: np.ndarray, opts: optimize.OptimizerOptions | None = None
) -> MaximizationResult:
    """Maximize |S| over the antisymmetric momentum ansatz (p1, p2, p3).

    Deterministic starts: the origin (whose value is 4*purity, the guaranteed
    floor) and, when the state is a scaled symmetric one, the +/- analytic
    optimum pattern.
    """
    sigma = np.asarray(sigma, dtype=float)
    objective = _restricted_objective(sigma)
    extra = [(0.0, 0.0, 0.0)]
    detected = scaled_symmetric_params(sigma)
    if detected is not None:
        a, c = detected
        p = math.sqrt(c) * symmetric_pstar(a)
        if p > 0.0:
            extra.append((p, p, p))
            extra.append((-p, -p, -p))
    result = optimize.maximize(objective, 3, opts, extra_starts=extra)
    return MaximizationResult(
        value=result.value,
        settings=MeasurementSettings.antisymmetric(result.point),
        evaluations=result.evaluations,
        converged=result.converged,
    )


def maximize_full(
    sigma: np.ndarray, opts: optimize.OptimizerOptions | None = None
) -> MaximizationResult:
    """Maximize |S| over all twelve setting coordinates.

    Seeded with the origin and the restricted optimum, so the result can
    never fall below the restricted one; used to verify that the momentum
    ansatz is optimal on pure standard-form states.
    """
    sigma = np.asarray(sigma, dtype=float)
    restricted = maximize_restricted(sigma, opts)
    objective = _full_objective(sigma)
    extra = [np.zeros(12), restricted.settings.to_flat()]
    result = optimize.maximize(objective, 12, opts, extra_starts=extra)
    return MaximizationResult(
        value=result.value,
        settings=MeasurementSettings.from_flat(result.point),
        evaluations=restricted.evaluations + result.evaluations,
        converged=result.converged,
    )
