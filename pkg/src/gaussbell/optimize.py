"""Multistart derivative-free maximizer shared by the Bell-functional modules.

A plain Nelder-Mead simplex ascent (reflection/expansion/contraction/shrink
with the standard coefficients 1, 2, 0.5, 0.5) run from several start points:
deterministic starts supplied by the caller first, then ``starts`` random
points drawn uniformly from the start box.  Each random start gets its own
counter-seeded generator, so results do not depend on execution order and the
whole search is reproducible for a fixed seed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError

_INITIAL_EDGE = 0.25


@dataclass(frozen=True)
class OptimizerOptions:
    starts: int = 16
    box: tuple[float, float] = (-1.5, 1.5)
    f_tol: float = 1e-12
    max_evals_per_start: int = 2000
    seed: int = 0

    def __post_init__(self):
        if self.starts < 1:
            raise DomainError("starts must be >= 1")
        if not self.box[0] < self.box[1]:
            raise DomainError("start box must be a nonempty interval")
        if self.f_tol <= 0:
            raise DomainError("f_tol must be positive")


@dataclass(frozen=True)
class MultistartResult:
    value: float
    point: tuple[float, ...]
    evaluations: int
    converged: bool


def _simplex_ascent(f, x0, f_tol, max_evals):
    """One Nelder-Mead ascent; restarts a collapsed simplex once.

    Returns (best_value, best_point, evaluations, converged) where converged
    means the final phase terminated on the function-spread tolerance rather
    than the evaluation budget.  The incumbent is the best point ever
    evaluated, so it is monotone across iterations.
    """
    n = len(x0)
    evals = 0
    best_x = list(x0)
    best_v = f(tuple(best_x))
    evals += 1

    def run_phase(center, budget):
        nonlocal best_x, best_v, evals
        # simplex: center plus one vertex per coordinate direction
        sim = [list(center)]
        vals = [f(tuple(center))]
        evals += 1
        for i in range(n):
            v = list(center)
            v[i] += _INITIAL_EDGE
            sim.append(v)
            vals.append(f(tuple(v)))
            evals += 1
        for v, x in zip(vals, sim):
            if v > best_v:
                best_v, best_x = v, list(x)
        used = n + 1
        while used < budget:
            order = sorted(range(n + 1), key=lambda i: -vals[i])
            sim = [sim[i] for i in order]
            vals = [vals[i] for i in order]
            if vals[0] - vals[-1] <= f_tol:
                return True
            centroid = [sum(sim[i][d] for i in range(n)) / n for d in range(n)]
            worst = sim[-1]

            def ray(t):
                return tuple(c + t * (c - w) for c, w in zip(centroid, worst))

            def probe(x):
                nonlocal best_v, best_x, evals, used
                v = f(x)
                evals += 1
                used += 1
                if v > best_v:
                    best_v, best_x = v, list(x)
                return v

            xr = ray(1.0)
            vr = probe(xr)
            if vr > vals[0]:
                xe = ray(2.0)
                ve = probe(xe)
                if ve > vr:
                    sim[-1], vals[-1] = list(xe), ve
                else:
                    sim[-1], vals[-1] = list(xr), vr
            elif vr > vals[-2]:
                sim[-1], vals[-1] = list(xr), vr
            else:
                if vr > vals[-1]:
                    xc = ray(0.5)  # outside contraction
                    vc = probe(xc)
                    accept = vc >= vr
                else:
                    xc = ray(-0.5)  # inside contraction
                    vc = probe(xc)
                    accept = vc > vals[-1]
                if accept:
                    sim[-1], vals[-1] = list(xc), vc
                else:
                    for i in range(1, n + 1):
                        sim[i] = [b + 0.5 * (s - b) for s, b in zip(sim[i], sim[0])]
                        vals[i] = probe(tuple(sim[i]))
        return False

    converged = run_phase(best_x, max_evals - evals)
    if converged and evals < max_evals:
        # one fresh simplex around the incumbent before declaring stagnation
        converged = run_phase(best_x, max_evals - evals)
    return best_v, tuple(best_x), evals, converged


def maximize(
    f: Callable[[Sequence[float]], float],
    n: int,
    opts: OptimizerOptions | None = None,
    extra_starts: Sequence[Sequence[float]] = (),
) -> MultistartResult:
    """Maximize ``f`` over R^n by multistart simplex ascent.

    ``extra_starts`` are deterministic start points taking indices before the
    random ones.  The winner is selected by (value, start index), so the
    result is independent of any parallel execution order.
    """
    opts = opts or OptimizerOptions()
    starts: list[tuple[float, ...]] = []
    for p in extra_starts:
        p = tuple(float(x) for x in p)
        if len(p) != n:
            raise DomainError(f"extra start of dimension {len(p)}, expected {n}")
        starts.append(p)
    lo, hi = opts.box
    for i in range(opts.starts):
        rng = np.random.default_rng((opts.seed, i))
        starts.append(tuple(rng.uniform(lo, hi, size=n)))

    best = None
    total_evals = 0
    for idx, x0 in enumerate(starts):
        v, x, evals, conv = _simplex_ascent(f, x0, opts.f_tol, opts.max_evals_per_start)
        total_evals += evals
        if best is None or v > best[0]:
            best = (v, x, conv, idx)
    value, point, converged, _ = best
    return MultistartResult(value=value, point=point, evaluations=total_evals, converged=converged)
