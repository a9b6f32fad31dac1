import itertools
import math

import numpy as np
import pytest

from gaussbell import (
    DomainError,
    ENTANGLEMENT_THRESHOLD,
    SamplerConfig,
    build_pure_standard_form,
    classify_symmetric_mixed,
    is_ppt,
    pure_params_at,
    reduce_modes,
    renyi2_entropy,
    symmetric_a_for_entanglement,
    symmetric_pure,
    tripartite_renyi2_pure,
    tripartite_renyi2_symmetric,
    two_mode_renyi2,
    vacuum,
)

ESYM_15 = 0.22519160881886015  # mpmath, 30 digits
ESYM_2 = 0.46354583321510116
E12_2 = 0.11480067367242207  # two-mode term of the symmetric a=2 state


def test_renyi2_entropy_examples():
    assert renyi2_entropy(vacuum()) == 0.0
    c = 1.7
    assert renyi2_entropy(c * np.eye(6)) == pytest.approx(3 * math.log(c), rel=1e-12)
    assert renyi2_entropy(reduce_modes(symmetric_pure(2.0), (1,))) == pytest.approx(
        math.log(2.0), rel=1e-12
    )


def test_symmetric_formula_values():
    assert tripartite_renyi2_symmetric(1.0) == 0.0
    assert tripartite_renyi2_symmetric(1.5) == pytest.approx(ESYM_15, abs=1e-14)
    assert tripartite_renyi2_symmetric(2.0) == pytest.approx(ESYM_2, abs=1e-14)
    assert tripartite_renyi2_symmetric(100.0) > 4.0
    with pytest.raises(DomainError):
        tripartite_renyi2_symmetric(0.5)


def test_symmetric_inversion():
    for a in (1.0, 1.3, 2.0, 3.5, 5.0):
        e = tripartite_renyi2_symmetric(a)
        assert symmetric_a_for_entanglement(e) == pytest.approx(a, abs=1e-9)
    with pytest.raises(DomainError):
        symmetric_a_for_entanglement(-0.1)


def test_threshold_constant():
    assert ENTANGLEMENT_THRESHOLD == pytest.approx(0.084949518397698736, abs=1e-16)


def test_two_mode_renyi2_symmetric_reduction():
    sig4 = reduce_modes(symmetric_pure(2.0), (1, 2))
    assert two_mode_renyi2(sig4) == pytest.approx(E12_2, abs=1e-12)


def test_two_mode_renyi2_zero_iff_ppt():
    assert two_mode_renyi2(reduce_modes(vacuum(), (1, 2))) == 0.0
    sig4 = reduce_modes(symmetric_pure(1.5), (1, 2))
    assert not is_ppt(sig4, (2,))[0]
    assert two_mode_renyi2(sig4) > 0.0


def test_two_mode_renyi2_input_checks():
    with pytest.raises(DomainError):
        two_mode_renyi2(np.eye(6))
    skewed = reduce_modes(symmetric_pure(2.0), (1, 2))
    skewed[0, 1] = skewed[1, 0] = 0.2  # q-p cross correlation
    with pytest.raises(DomainError):
        two_mode_renyi2(skewed)


def _boundary_family_oracle(sig4, n_theta=240, n_s=240):
    """Independent dense scan of both one-constraint boundary families.

    Any convex-roof optimizer must lie on {det(X - Y) = 0} or
    {det(Y - P^{-1}) = 0}; scan both two-parameter families and keep the
    feasible minimum of Y11 Y22 / det Y.
    """
    X = sig4[np.ix_((0, 2), (0, 2))]
    P = sig4[np.ix_((1, 3), (1, 3))]
    Pinv = np.linalg.inv(P)

    def f(Y):
        det = Y[0, 0] * Y[1, 1] - Y[0, 1] ** 2
        return Y[0, 0] * Y[1, 1] / det if det > 0 else math.inf

    best = min(f(X), f(Pinv))
    for anchor, other, sign in ((X, Pinv, -1.0), (Pinv, X, 1.0)):
        # Y = anchor + sign*s*uu^T stays on the rank-one boundary of `anchor`
        gap = (other - anchor) * sign  # PSD when feasibility is possible
        for theta in np.linspace(0.0, math.pi, n_theta, endpoint=False):
            u = np.array([math.cos(theta), math.sin(theta)])
            uu = np.outer(u, u)
            # largest s keeping the other constraint satisfiable
            for s in np.linspace(0.0, float(np.trace(gap)), n_s):
                Y = anchor + sign * s * uu
                if np.linalg.eigvalsh((X - Y) if sign > 0 else (Y - Pinv)).min() < -1e-12:
                    break
                best = min(best, f(Y))
    return 0.5 * math.log(max(best, 1.0))


@pytest.mark.parametrize("index", range(8))
def test_two_mode_renyi2_against_boundary_scan(index):
    cfg = SamplerConfig(seed=31, count=8)
    params = pure_params_at(cfg, index)
    sigma = build_pure_standard_form(params)
    pair = ((1, 2), (1, 3), (2, 3))[index % 3]
    sig4 = reduce_modes(sigma, pair)
    value = two_mode_renyi2(sig4)
    oracle = _boundary_family_oracle(sig4)
    # the implementation refines beyond the scan resolution
    assert value <= oracle + 1e-9
    assert oracle - value < 5e-3


def test_residual_symmetric_identity_gate():
    for a in np.arange(1.0, 5.0 + 1e-9, 0.25):
        assert tripartite_renyi2_pure((a, a, a)) == pytest.approx(
            tripartite_renyi2_symmetric(float(a)), abs=1e-9
        )


def test_residual_vacuum_and_monogamy():
    assert tripartite_renyi2_pure((1, 1, 1)) == 0.0
    cfg = SamplerConfig(seed=32, count=300)
    for i in range(cfg.count):
        params = pure_params_at(cfg, i)
        assert tripartite_renyi2_pure(params) >= 0.0  # raises if monogamy fails


def test_residual_permutation_invariance():
    cfg = SamplerConfig(seed=33, count=40)
    for i in range(cfg.count):
        params = pure_params_at(cfg, i)
        values = [tripartite_renyi2_pure(p) for p in itertools.permutations(params)]
        assert max(values) - min(values) < 1e-9


def test_residual_propagates_triangle_violation():
    from gaussbell import TriangleViolation

    with pytest.raises(TriangleViolation):
        tripartite_renyi2_pure((2.0, 1.5, 1.2))


def test_symmetric_reductions_npt_low_range():
    # pairwise entanglement survives in the reductions at low squeezing
    for a in (1.05, 1.2, 1.5):
        sig4 = reduce_modes(symmetric_pure(a), (1, 2))
        ppt, nu = is_ppt(sig4, (2,))
        assert not ppt and nu < 1.0


def test_classify_vacuum():
    c = classify_symmetric_mixed(1.0, 1.0)
    assert not c.fully_inseparable and not c.promiscuous and not c.svetlichny_nonlocal
    assert c.min_nu_cut >= 1.0 - 1e-9
    assert c.s_max == pytest.approx(4.0, abs=1e-9)


def test_classify_pure_a3():
    c = classify_symmetric_mixed(3.0, 1.0)
    assert c.fully_inseparable and c.svetlichny_nonlocal
    assert c.s_max > 4.0


def test_classify_low_purity_never_nonlocal():
    c = classify_symmetric_mixed(3.0, 0.5)
    assert c.fully_inseparable
    assert not c.svetlichny_nonlocal
    assert c.s_max <= 4.0 + 1e-9


def test_classify_flag_nesting():
    for a in (1.0, 1.5, 2.5, 4.0):
        for mu in (0.6, 0.85, 1.0):
            c = classify_symmetric_mixed(a, mu)
            if c.svetlichny_nonlocal:
                assert c.fully_inseparable
            if c.promiscuous:
                assert c.fully_inseparable
