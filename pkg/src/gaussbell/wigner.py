"""Gaussian Wigner distribution and displaced-parity correlators.

The expectation value of a product of displaced-parity measurements over a
mode subset equals pi^k times the Wigner function of the reduced state at the
displacement point, which for our normalization is

    <prod_j P_j(xi_j)> = exp(-xi^T sigma_red^{-1} xi) / sqrt(det sigma_red).
"""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DimensionMismatch
from .states import reduce_modes


class GaussianKernel:
    """Cholesky-backed evaluator of exp(-xi^T sigma^{-1} xi) / sqrt(det sigma).

    One instance factors its covariance matrix once and is then reused across
    many evaluation points (the Bell-functional optimizers call this in a hot
    loop).  Instances are immutable and safe to share between threads.
    """

    def __init__(self, sigma: np.ndarray):
        sigma = np.asarray(sigma, dtype=float)
        self.dim = sigma.shape[0]
        self.n_modes = self.dim // 2
        self._chol = np.linalg.cholesky(sigma)
        self.sqrt_det = float(np.prod(np.diagonal(self._chol)))

    def quad_form(self, xi: np.ndarray) -> float:
        """xi^T sigma^{-1} xi for a single point."""
        y = solve_triangular(self._chol, xi, lower=True, check_finite=False)
        return float(y @ y)

    def parity(self, xi: np.ndarray) -> float:
        return math.exp(-self.quad_form(xi)) / self.sqrt_det

    def parity_batch(self, points: np.ndarray) -> np.ndarray:
        """Parity correlators for an (m, dim) array of points."""
        y = solve_triangular(self._chol, points.T, lower=True, check_finite=False)
        quad = np.einsum("ij,ij->j", y, y)
        return np.exp(-quad) / self.sqrt_det

    def wigner(self, xi: np.ndarray) -> float:
        return self.parity(xi) / math.pi**self.n_modes


def _as_point(xi, dim: int) -> np.ndarray:
    xi = np.asarray(xi, dtype=float).reshape(-1)
    if xi.shape[0] != dim:
        raise DimensionMismatch(f"phase-space point has {xi.shape[0]} coordinates, expected {dim}")
    return xi


def wigner_value(sigma: np.ndarray, xi) -> float:
    """Wigner distribution of the state at phase-space point ``xi``.

    ``xi`` is a flat vector (q1, p1, ..., qn, pn) matching the mode count of
    ``sigma``.  Always strictly positive for Gaussian states.
    """
    sigma = np.asarray(sigma, dtype=float)
    kernel = GaussianKernel(sigma)
    return kernel.wigner(_as_point(xi, kernel.dim))


def parity_correlator(sigma: np.ndarray, modes: Iterable[int], points) -> float:
    """Displaced-parity correlator over a mode subset.

    ``points`` holds one (q, p) pair per selected mode, either flat or as a
    (k, 2) array, ordered by ascending mode index.  The value lies in
    (0, purity(reduced state)], with the maximum at the origin.
    """
    reduced = reduce_modes(sigma, modes)
    kernel = GaussianKernel(reduced)
    return kernel.parity(_as_point(points, kernel.dim))
