"""Renyi-2 entropies and genuine tripartite entanglement.

The Renyi-2 entropy of a Gaussian state is (1/2) ln det sigma.  Genuine
tripartite entanglement of pure three-mode states is the monogamy residual

    min_i [ E(i | jk) - E(i | j) - E(i | k) ],

where the one-vs-two term is ln a_i and the two-mode terms are Gaussian
convex-roof Renyi-2 entanglements of the reduced states.  For two-mode
states in standard form the convex roof reduces to a one-parameter boundary
family (both defining constraints of the optimal pure state are tight),
which this module minimizes directly; the symmetric-state specialization
reproduces the closed form ``tripartite_renyi2_symmetric`` to machine
precision, which is the correctness gate for the construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import optimize as _optimize
from .errors import ConsistencyError, DomainError
from .states import (
    is_ppt,
    reduce_modes,
    build_pure_standard_form,
    scaled_symmetric_mixed,
)
from .svetlichny import f_of_a, maximize_restricted

#: Pure states with residual entanglement above (1/2) ln(32/27) necessarily
#: violate the Svetlichny bound.
ENTANGLEMENT_THRESHOLD = 0.5 * math.log(32.0 / 27.0)

_SEPARABLE_TOL = 1e-9
_THETA_GRID = 181


def renyi2_entropy(sigma: np.ndarray) -> float:
    """(1/2) ln det sigma; zero exactly for pure states."""
    sign, logdet = np.linalg.slogdet(np.asarray(sigma, dtype=float))
    if sign <= 0:
        raise DomainError("covariance matrix must have positive determinant")
    return 0.5 * logdet


def tripartite_renyi2_symmetric(a: float) -> float:
    """Residual entanglement of the symmetric pure state, in closed form:

    ln[ 8 a^3 / (4 (a^4 + a^2) - f(a) (a^2 - 1)) ].
    """
    if a < 1.0:
        raise DomainError(f"tripartite_renyi2_symmetric requires a >= 1, got {a!r}")
    fa = f_of_a(a)
    return math.log(8.0 * a**3 / (4.0 * (a**4 + a**2) - fa * (a * a - 1.0)))


def symmetric_a_for_entanglement(e: float) -> float:
    """Invert the symmetric residual: find a with tripartite_renyi2_symmetric(a) = e."""
    if e < 0.0:
        raise DomainError(f"entanglement must be nonnegative, got {e!r}")
    if e == 0.0:
        return 1.0
    hi = 2.0
    while tripartite_renyi2_symmetric(hi) < e:
        hi *= 2.0
        if hi > 1e9:
            raise DomainError(f"entanglement {e!r} out of invertible range")
    return float(brentq(lambda a: tripartite_renyi2_symmetric(a) - e, 1.0, hi, xtol=1e-14))


def _minimal_pure_local_det(sig4: np.ndarray) -> float:
    """min det(gamma_A) over pure two-mode Gaussian gamma <= sigma.

    Requires the standard (qq/pp block-diagonal) form, where pure states
    below sigma can be taken as Y (+) Y^{-1} with P^{-1} <= Y <= X; the
    objective is Y11 Y22 / det Y.  The optimum has both constraints tight,
    leaving a one-parameter family Y(theta) = X - s(theta) u u^T; the
    endpoints Y = X and Y = P^{-1} are added as explicit candidates.
    """
    x11, x12, x22 = sig4[0, 0], sig4[0, 2], sig4[2, 2]
    p11, p12, p22 = sig4[1, 1], sig4[1, 3], sig4[3, 3]
    cross = max(
        abs(sig4[0, 1]), abs(sig4[0, 3]), abs(sig4[2, 1]), abs(sig4[2, 3])
    )
    if cross > 1e-10 * max(1.0, x11, x22, p11, p22):
        raise DomainError("two-mode reduction is not in qq/pp block-diagonal form")

    det_p = p11 * p22 - p12 * p12
    i11, i12, i22 = p22 / det_p, -p12 / det_p, p11 / det_p  # P^{-1}

    def local_det(y11, y12, y22):
        return y11 * y22 / (y11 * y22 - y12 * y12)

    candidates = [local_det(x11, x12, x22), local_det(i11, i12, i22)]

    d11, d12, d22 = x11 - i11, x12 - i12, x22 - i22
    scale = max(1.0, abs(d11), abs(d22))
    evals, evecs = np.linalg.eigh(np.array([[d11, d12], [d12, d22]]))
    if evals[1] <= 1e-13 * scale:
        # X coincides with P^{-1}: the reduction is itself pure
        return min(candidates)
    if evals[0] <= 1e-13 * scale:
        # rank-one gap: a single line of boundary states
        u1, u2 = evecs[:, 1]

        def f_line(s):
            return local_det(x11 - s * u1 * u1, x12 - s * u1 * u2, x22 - s * u2 * u2)

        res = minimize_scalar(
            f_line, bounds=(0.0, evals[1]), method="bounded", options={"xatol": 1e-14}
        )
        candidates.append(f_line(float(res.x)))
        return min(candidates)

    det_d = d11 * d22 - d12 * d12
    e11, e12, e22 = d22 / det_d, -d12 / det_d, d11 / det_d  # D^{-1}

    def f_theta(theta):
        c = math.cos(theta)
        s = math.sin(theta)
        amount = 1.0 / (e11 * c * c + 2.0 * e12 * c * s + e22 * s * s)
        return local_det(
            x11 - amount * c * c, x12 - amount * c * s, x22 - amount * s * s
        )

    thetas = np.linspace(0.0, math.pi, _THETA_GRID)
    values = [f_theta(t) for t in thetas]
    i_best = int(np.argmin(values))
    lo = thetas[max(i_best - 1, 0)]
    hi = thetas[min(i_best + 1, _THETA_GRID - 1)]
    res = minimize_scalar(f_theta, bounds=(lo, hi), method="bounded", options={"xatol": 1e-14})
    candidates.append(f_theta(float(res.x)))
    return min(candidates)


def two_mode_renyi2(sig4: np.ndarray) -> float:
    """Gaussian convex-roof Renyi-2 entanglement of a two-mode state.

    Valid for states in the qq/pp block-diagonal standard form (which covers
    every reduction of a pure standard-form state).  Zero iff the state is
    separable (PPT).
    """
    sig4 = np.asarray(sig4, dtype=float)
    if sig4.shape != (4, 4):
        raise DomainError(f"expected a two-mode CM, got shape {sig4.shape}")
    ppt, _ = is_ppt(sig4, (2,))
    if ppt:
        return 0.0
    m2 = _minimal_pure_local_det(sig4)
    return 0.5 * math.log(max(m2, 1.0))


def tripartite_renyi2_pure(params) -> float:
    """Monogamy residual of a pure standard-form state, minimized over focus mode."""
    sigma = build_pure_standard_form(params)
    a1, a2, a3 = (float(a) for a in params)
    e12 = two_mode_renyi2(reduce_modes(sigma, (1, 2)))
    e13 = two_mode_renyi2(reduce_modes(sigma, (1, 3)))
    e23 = two_mode_renyi2(reduce_modes(sigma, (2, 3)))
    residual = min(
        math.log(a1) - e12 - e13,
        math.log(a2) - e12 - e23,
        math.log(a3) - e13 - e23,
    )
    if residual < -1e-9:
        raise ConsistencyError(
            f"monogamy violated for params {tuple(params)}: residual {residual:.3e}"
        )
    return max(residual, 0.0)


@dataclass(frozen=True)
class StateClassification:
    """Cumulative separability/nonlocality flags of a symmetric mixed state."""

    a: float
    mu: float
    min_nu_cut: float  # smallest PT symplectic eigenvalue across 1|23
    min_nu_pair: float  # smallest PT symplectic eigenvalue of two-mode reductions
    s_max: float
    fully_inseparable: bool
    promiscuous: bool
    svetlichny_nonlocal: bool


def classify_symmetric_mixed(
    a: float, mu: float, opts: _optimize.OptimizerOptions | None = None
) -> StateClassification:
    """Flags for the scaled symmetric state of invariant ``a`` and purity ``mu``.

    Fully inseparable iff the 1|23 partial transpose is nonpositive (all
    three cuts agree by symmetry); promiscuous iff additionally every
    two-mode reduction is NPT; Svetlichny-nonlocal iff the restricted
    maximum exceeds 4.
    """
    sigma = scaled_symmetric_mixed(a, mu)
    ppt_cut, nu_cut = is_ppt(sigma, (1,))
    nu_pair = min(
        is_ppt(reduce_modes(sigma, pair), (2,))[1]
        for pair in ((1, 2), (1, 3), (2, 3))
    )
    inseparable = not ppt_cut
    promiscuous = inseparable and nu_pair < 1.0 - _SEPARABLE_TOL
    s_max = maximize_restricted(sigma, opts).value
    nonlocal_flag = s_max > 4.0 + 1e-9
    return StateClassification(
        a=float(a),
        mu=float(mu),
        min_nu_cut=nu_cut,
        min_nu_pair=nu_pair,
        s_max=s_max,
        fully_inseparable=inseparable,
        promiscuous=promiscuous,
        svetlichny_nonlocal=nonlocal_flag,
    )
