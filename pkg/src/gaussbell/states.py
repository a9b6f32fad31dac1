"""Covariance matrices of three-mode Gaussian states.

Conventions
-----------
Quadratures are ordered ``(q1, p1, q2, p2, q3, p3)`` and normalized so that
the vacuum covariance matrix is the identity.  Mode indices in the public API
are 1-based.  A matrix is *bona fide* (i.e. the covariance matrix of a
physical state) when it is symmetric, positive definite and all of its
symplectic eigenvalues are >= 1.

Constructors always validate their output; operations on already-validated
matrices trust their inputs.
"""

from __future__ import annotations

import json
import math
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    DomainError,
    InvalidCovarianceMatrix,
    NumericalDomainError,
    TriangleViolation,
)

SYMMETRY_TOL = 1e-12
BONA_FIDE_TOL = 1e-9
TRIANGLE_TOL = 1e-12
RADICAND_CLAMP = 1e-9
_PAIRING_TOL = 1e-9


def symplectic_form(n_modes: int = 3) -> np.ndarray:
    """Block-diagonal symplectic form, one [[0, 1], [-1, 0]] block per mode."""
    w = np.array([[0.0, 1.0], [-1.0, 0.0]])
    out = np.zeros((2 * n_modes, 2 * n_modes))
    for m in range(n_modes):
        out[2 * m : 2 * m + 2, 2 * m : 2 * m + 2] = w
    return out


def mode_count(sigma: np.ndarray) -> int:
    sigma = np.asarray(sigma)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1] or sigma.shape[0] % 2:
        raise InvalidCovarianceMatrix(f"expected a 2n x 2n matrix, got shape {sigma.shape}")
    return sigma.shape[0] // 2


def vacuum(n_modes: int = 3) -> np.ndarray:
    return np.eye(2 * n_modes)


def assert_valid_cm(sigma: np.ndarray, name: str = "covariance matrix") -> np.ndarray:
    """Check symmetry, positive definiteness and the uncertainty relation.

    Returns the validated matrix as a float array.  Raises
    :class:`InvalidCovarianceMatrix` on failure.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = mode_count(sigma)
    asym = np.max(np.abs(sigma - sigma.T))
    if asym > SYMMETRY_TOL:
        raise InvalidCovarianceMatrix(f"{name} is not symmetric (max asymmetry {asym:.3e})")
    try:
        np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        raise InvalidCovarianceMatrix(f"{name} is not positive definite") from None
    nu_min = float(np.min(symplectic_eigenvalues(sigma)))
    if nu_min < 1.0 - BONA_FIDE_TOL:
        raise InvalidCovarianceMatrix(
            f"{name} violates the uncertainty relation (min symplectic eigenvalue {nu_min:.12g})"
        )
    del n
    return sigma


def triangle_margins(a1: float, a2: float, a3: float) -> tuple[float, float, float]:
    """Slack of the three pure-state constraints a_i <= a_j + a_k - 1.

    All margins nonnegative (within tolerance) iff (a1, a2, a3) are the local
    symplectic invariants of some pure three-mode Gaussian state.  The lower
    constraints |a_j - a_k| + 1 <= a_i are equivalent to the upper ones for
    the complementary indices, so three numbers suffice.
    """
    return (
        a2 + a3 - 1.0 - a1,
        a1 + a3 - 1.0 - a2,
        a1 + a2 - 1.0 - a3,
    )


def _check_pure_params(params: Sequence[float]) -> tuple[float, float, float]:
    if len(params) != 3:
        raise DomainError(f"expected three local invariants, got {len(params)}")
    a1, a2, a3 = (float(a) for a in params)
    for a in (a1, a2, a3):
        if not math.isfinite(a) or a < 1.0 - TRIANGLE_TOL:
            raise DomainError(f"local invariants must be >= 1, got {a!r}")
    margins = triangle_margins(a1, a2, a3)
    if min(margins) < -TRIANGLE_TOL:
        raise TriangleViolation(
            f"triple ({a1}, {a2}, {a3}) violates the triangle constraints "
            f"(margins {margins})"
        )
    return a1, a2, a3


def _clamped_sqrt(radicand: float) -> float:
    if radicand < -RADICAND_CLAMP:
        raise NumericalDomainError(f"radicand {radicand:.3e} below clamping range")
    return math.sqrt(max(radicand, 0.0))


def build_pure_standard_form(params: Sequence[float]) -> np.ndarray:
    """Covariance matrix of a pure three-mode state in standard form.

    The state is fixed, up to local unitaries, by its local symplectic
    invariants ``(a1, a2, a3)``: mode blocks are diag(a_j, a_j) and the
    correlation block of each pair (j, k) is diag(g+, g-) with

        g± = [sqrt(((ai-1)^2 - (aj-ak)^2) ((ai+1)^2 - (aj-ak)^2))
              ± sqrt(((ai-1)^2 - (aj+ak)^2) ((ai+1)^2 - (aj+ak)^2))] / (4 sqrt(aj ak))

    where i is the remaining mode.  Radicands in [-1e-9, 0) are clamped to
    zero; such values arise only on the boundary of the triangle region.
    """
    a = _check_pure_params(params)
    sigma = np.zeros((6, 6))
    for m in range(3):
        sigma[2 * m, 2 * m] = sigma[2 * m + 1, 2 * m + 1] = a[m]
    for j, k, i in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        diff = a[j] - a[k]
        summ = a[j] + a[k]
        r_diff = ((a[i] - 1.0) ** 2 - diff**2) * ((a[i] + 1.0) ** 2 - diff**2)
        r_sum = ((a[i] - 1.0) ** 2 - summ**2) * ((a[i] + 1.0) ** 2 - summ**2)
        root_diff = _clamped_sqrt(r_diff)
        root_sum = _clamped_sqrt(r_sum)
        denom = 4.0 * math.sqrt(a[j] * a[k])
        g_plus = (root_diff + root_sum) / denom
        g_minus = (root_diff - root_sum) / denom
        sigma[2 * j, 2 * k] = sigma[2 * k, 2 * j] = g_plus
        sigma[2 * j + 1, 2 * k + 1] = sigma[2 * k + 1, 2 * j + 1] = g_minus
    return assert_valid_cm(sigma, "pure standard form")


def symmetric_pure(a: float) -> np.ndarray:
    """Fully symmetric pure state with all local invariants equal to ``a``."""
    if a < 1.0 - TRIANGLE_TOL:
        raise DomainError(f"symmetric_pure requires a >= 1, got {a!r}")
    return build_pure_standard_form((a, a, a))


def scaled_symmetric_mixed(a: float, mu: float) -> np.ndarray:
    """Fully symmetric mixed state: the symmetric pure CM scaled by mu^(-1/3).

    The global purity of the result is exactly ``mu``.
    """
    if not 0.0 < mu <= 1.0:
        raise DomainError(f"purity must lie in (0, 1], got {mu!r}")
    return mu ** (-1.0 / 3.0) * symmetric_pure(a)


def purity(sigma: np.ndarray) -> float:
    """Purity tr(rho^2) = (det sigma)^(-1/2)."""
    sign, logdet = np.linalg.slogdet(np.asarray(sigma, dtype=float))
    if sign <= 0:
        raise InvalidCovarianceMatrix("determinant not positive")
    return math.exp(-0.5 * logdet)


def _mode_indices(sigma: np.ndarray, modes: Iterable[int]) -> list[int]:
    n = mode_count(sigma)
    modes = sorted(set(int(m) for m in modes))
    if not modes:
        raise DomainError("mode subset must be nonempty")
    if modes[0] < 1 or modes[-1] > n:
        raise DomainError(f"mode indices {modes} out of range for a {n}-mode state")
    return modes


def reduce_modes(sigma: np.ndarray, modes: Iterable[int]) -> np.ndarray:
    """Marginal covariance matrix of the selected (1-based) modes."""
    sigma = np.asarray(sigma, dtype=float)
    sel = _mode_indices(sigma, modes)
    rows = [r for m in sel for r in (2 * (m - 1), 2 * (m - 1) + 1)]
    return sigma[np.ix_(rows, rows)].copy()


def symplectic_eigenvalues(sigma: np.ndarray) -> np.ndarray:
    """Symplectic spectrum: moduli of the eigenvalues of i*Omega*sigma.

    Eigenvalues come in +/- pairs; the deduplicated n values are returned in
    descending order.  Physical states have every value >= 1.
    """
    sigma = np.asarray(sigma, dtype=float)
    n = mode_count(sigma)
    ev = np.linalg.eigvals(symplectic_form(n) @ sigma)
    mags = np.sort(np.abs(ev.imag))[::-1]
    pairs = mags.reshape(n, 2)
    spread = np.abs(pairs[:, 0] - pairs[:, 1])
    if np.any(spread > _PAIRING_TOL * (1.0 + pairs[:, 0])):
        raise InvalidCovarianceMatrix(
            f"symplectic eigenvalues do not pair up (spread {spread.max():.3e})"
        )
    return pairs.mean(axis=1)


def partial_transpose(sigma: np.ndarray, modes: Iterable[int]) -> np.ndarray:
    """Flip the momentum sign of the selected modes (Lambda sigma Lambda).

    The output is symmetric but may violate the uncertainty relation; that is
    precisely the entanglement signal used by :func:`is_ppt`.
    """
    sigma = np.asarray(sigma, dtype=float)
    sel = _mode_indices(sigma, modes)
    signs = np.ones(sigma.shape[0])
    for m in sel:
        signs[2 * (m - 1) + 1] = -1.0
    return sigma * signs[:, None] * signs[None, :]


def is_ppt(sigma: np.ndarray, modes: Iterable[int]) -> tuple[bool, float]:
    """PPT test across the bipartition (modes | rest).

    Returns ``(ppt, nu_min)`` where ``nu_min`` is the smallest symplectic
    eigenvalue of the partial transpose.  ``nu_min < 1`` certifies
    entanglement across the cut.
    """
    nu_min = float(np.min(symplectic_eigenvalues(partial_transpose(sigma, modes))))
    return nu_min >= 1.0 - BONA_FIDE_TOL, nu_min


def z_parameter(a: float) -> float:
    """Inverse squeezing parameter z = sqrt(12 a^2 - 3 f(a) - 8) / 2.

    Decreases from 1 at a = 1 towards 0 as a grows; used as the state-family
    coordinate of the symmetric-mixed classification diagram.
    """
    from .svetlichny import f_of_a

    if a < 1.0:
        raise DomainError(f"z_parameter requires a >= 1, got {a!r}")
    radicand = 12.0 * a * a - 3.0 * f_of_a(a) - 8.0
    if radicand < 0.0:
        raise DomainError(f"z_parameter radicand negative at a={a!r}")
    return 0.5 * math.sqrt(radicand)


def save_state_file(path, sigma: np.ndarray) -> None:
    """Write a CM as JSON: {"modes": n, "sigma": [row-major entries]}."""
    sigma = np.asarray(sigma, dtype=float)
    n = mode_count(sigma)
    payload = {"modes": n, "sigma": [float(x) for x in sigma.reshape(-1)]}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh)
        fh.write("\n")


def load_state_file(path) -> np.ndarray:
    """Read and validate a CM written by :func:`save_state_file`."""
    with open(path, "r", encoding="utf-8") as fh:
        payload = json.load(fh)
    try:
        n = int(payload["modes"])
        entries = payload["sigma"]
    except (KeyError, TypeError) as exc:
        raise InvalidCovarianceMatrix(f"malformed state file {path}") from exc
    if len(entries) != (2 * n) ** 2:
        raise InvalidCovarianceMatrix(
            f"state file {path}: expected {(2 * n) ** 2} entries, got {len(entries)}"
        )
    sigma = np.asarray(entries, dtype=float).reshape(2 * n, 2 * n)
    return assert_valid_cm(sigma, f"state file {path}")
