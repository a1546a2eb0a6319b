"""Packing, dimension estimates, fading and the annulus machinery."""

import math

import numpy as np
import pytest
from scipy.special import zeta as scipy_zeta

from decayspace import (
    DecaySpace,
    assouad_estimate,
    ball,
    compute_zeta,
    fading_bound,
    fading_parameter,
    gen_euclidean,
    gen_star,
    gen_welzl,
    guard_set,
    independence_at,
    independence_dimension,
    packing_number,
    quasi_distances,
    random_points,
    two_half_ball_cover,
    zeta_hat,
)


def uniform_space(n):
    return DecaySpace(np.ones((n, n)) - np.eye(n))


def line_space(n):
    # integer points on a line under alpha = 1, so decays are |i - j|
    pts = np.array([[float(i), 0.0] for i in range(n)])
    return gen_euclidean(pts, 1.0)


def test_ball_is_strict():
    sp = uniform_space(4)
    # the center sits at decay zero, the unit shell is excluded strictly
    assert ball(sp, 0, 1.0) == (0,)
    assert ball(sp, 0, 1.0 + 1e-9) == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        ball(sp, 0, 0.0)
    with pytest.raises(ValueError):
        ball(sp, 9, 1.0)


def test_packing_number_line():
    sp = line_space(5)
    count, exact, members = packing_number(sp, range(5), 1.0)
    assert (count, exact) == (2, True)
    assert members == (0, 3)  # gaps must strictly exceed 2
    tiny_count, _, _ = packing_number(sp, range(5), 1e-9)
    assert tiny_count == 5
    single = packing_number(sp, [3], 5.0)
    assert single == (1, True, (3,))


def test_packing_number_monotone_in_scale():
    sp = line_space(9)
    counts = [packing_number(sp, range(9), t)[0] for t in (0.01, 0.5, 1.0, 2.0, 4.0)]
    assert counts == sorted(counts, reverse=True)


def test_packing_number_greedy_fallback():
    sp = line_space(5)
    count, exact, members = packing_number(sp, range(5), 1.0, exact_limit=2)
    assert not exact
    assert count == 2 and members == (0, 3)  # greedy by index finds the same pair


def test_packing_number_rejects_bad_inputs():
    sp = line_space(3)
    with pytest.raises(ValueError):
        packing_number(sp, [], 1.0)
    with pytest.raises(ValueError):
        packing_number(sp, [0, 1], 0.0)


def test_assouad_degenerate_spaces():
    two = DecaySpace(np.array([[0.0, 1.0], [1.0, 0.0]]))
    est = assouad_estimate(two)
    assert est.assouad == 0.0
    assert all(g == 1 for _, g in est.samples)
    fitted = assouad_estimate(two, C=None)
    assert fitted.assouad == 0.0 and fitted.C == 1.0

    # every ball in a uniform space is a single point or everything,
    # and everything packs to one node at any finer scale
    est16 = assouad_estimate(uniform_space(16), exact_limit=16)
    assert est16.assouad == 0.0 and est16.exact


def test_assouad_fitted_frozen_cloud():
    sp = gen_euclidean(random_points(20, 42), 3.0)
    est = assouad_estimate(sp, C=None)
    assert est.exact
    assert est.samples == [(1.5, 3), (2.0, 3), (3.0, 4), (4.0, 4), (8.0, 5), (16.0, 6)]
    assert est.assouad == pytest.approx(0.305027836146, abs=1e-9)
    assert est.C == pytest.approx(2.62826051674, abs=1e-9)


def test_assouad_literal_mode_matches_formula():
    sp = gen_euclidean(random_points(20, 42), 3.0)
    est = assouad_estimate(sp, C=1.0)
    want = max(math.log(g) / math.log(q) for q, g in est.samples)
    assert est.assouad == want
    assert est.C == 1.0


def test_assouad_rejects_bad_inputs():
    sp = line_space(3)
    with pytest.raises(ValueError):
        assouad_estimate(sp, C=0.0)
    with pytest.raises(ValueError):
        assouad_estimate(sp, q_grid=(1.0, 2.0))
    with pytest.raises(ValueError):
        assouad_estimate(DecaySpace(np.empty((0, 0)), mode="link-gain"))


def test_fading_two_node_and_star():
    two = DecaySpace(np.array([[0.0, 5.0], [5.0, 0.0]]))
    assert fading_parameter(two, 1.0).gamma == 0.2
    beyond = fading_parameter(two, 6.0)
    assert beyond.gamma == 0.0 and beyond.witness_set == ()

    star = gen_star(4, 1.0)
    rep = fading_parameter(star, 1.0)
    assert rep.gamma == 1.25  # the hub hears the stray plus 4 leaves
    assert rep.per_node[0] == pytest.approx(1.0 + 4.0 / 17.0, abs=1e-12)
    assert rep.witness_set == (0, 2, 3, 4, 5)
    assert rep.exact


def test_fading_quasi_knob_at_unit_exponent():
    # a metric space rescaled at zeta = 1 keeps the same separations
    star = gen_star(4, 1.0)
    quasi = quasi_distances(star, 1.0, check=False)
    plain = fading_parameter(star, 1.0)
    knob = fading_parameter(star, 1.0, quasi=quasi)
    assert knob.gamma == plain.gamma
    assert knob.per_node == plain.per_node


def test_fading_greedy_fallback_flagged():
    rep = fading_parameter(uniform_space(30), 1.0, exact_limit=5)
    assert not rep.exact
    assert rep.gamma == 29.0  # conflict-free candidates, greedy takes all


def test_fading_rejects_bad_inputs():
    two = DecaySpace(np.array([[0.0, 5.0], [5.0, 0.0]]))
    with pytest.raises(ValueError):
        fading_parameter(two, 0.0)
    with pytest.raises(ValueError):
        fading_parameter(DecaySpace(np.empty((0, 0)), mode="link-gain"), 1.0)


def test_zeta_hat_against_scipy():
    for s in (1.1, 1.5, 2.0, 3.0, 7.5):
        assert abs(zeta_hat(s) - scipy_zeta(s)) <= 1e-9
    assert abs(zeta_hat(2.0) - math.pi ** 2 / 6.0) <= 1e-9
    with pytest.raises(ValueError):
        zeta_hat(1.0)
    with pytest.raises(ValueError):
        zeta_hat(2.0, tol=0.0)


def test_fading_bound_closed_forms():
    assert abs(fading_bound(1.0, 0.5) - 4.5605) <= 1e-3
    assert abs(fading_bound(1.0, 0.0) - 2.0 * (math.pi ** 2 / 6.0 - 1.0)) <= 1e-9
    for C, A in ((1.0, 0.5), (3.0, 0.25), (0.5, 0.9)):
        want = C * 2.0 ** (A + 1.0) * (scipy_zeta(2.0 - A) - 1.0)
        assert abs(fading_bound(C, A) - want) <= 1e-9
    with pytest.raises(ValueError):
        fading_bound(1.0, 1.0)
    with pytest.raises(ValueError):
        fading_bound(0.0, 0.5)


def test_fading_under_growth_bound_small_cloud():
    sp = gen_euclidean(random_points(20, 42), 3.0)
    est = assouad_estimate(sp, C=None)
    bound = fading_bound(est.C, est.assouad)
    for r in (0.05, 0.2, 1.0):
        rep = fading_parameter(sp, r, exact_limit=20)
        assert rep.exact
        assert rep.gamma <= bound + 1e-9


def test_independence_welzl_chain():
    for n in (4, 6):
        sp = gen_welzl(n)
        z = compute_zeta(sp)[1]
        quasi = quasi_distances(sp, z)
        size, members, exact = independence_at(sp, quasi, 0)
        assert size == n + 1 and exact
        assert members == tuple(range(1, n + 2))


def test_independence_uniform_is_one():
    sp = uniform_space(10)
    quasi = quasi_distances(sp, 1.0)
    dim, center, members, exact = independence_dimension(sp, quasi)
    assert dim == 1 and center == 0 and exact
    single = DecaySpace(np.zeros((1, 1)))
    assert independence_at(single, quasi_distances(single, 1.0), 0) == (0, (), True)
    with pytest.raises(ValueError):
        independence_at(sp, quasi, 99)


def test_guard_sets_cover():
    sp = gen_euclidean(random_points(20, 5), 3.0)
    z = compute_zeta(sp)[1]
    quasi = quasi_distances(sp, z)
    d = quasi.d
    for x in range(sp.n):
        guards = guard_set(sp, quasi, x)
        assert 1 <= len(guards) <= 6
        assert x not in guards
        for zn in range(sp.n):
            if zn == x:
                continue
            assert any(d[zn, y] <= d[zn, x] for y in guards)


def test_guard_set_uniform_needs_one():
    sp = uniform_space(8)
    quasi = quasi_distances(sp, 1.0)
    assert len(guard_set(sp, quasi, 0)) == 1
    with pytest.raises(ValueError):
        guard_set(sp, quasi, 99)


def test_two_half_ball_cover():
    assert two_half_ball_cover(uniform_space(2), 0, 1.5) == (True, (0, 1))
    assert two_half_ball_cover(uniform_space(1), 0, 1.0) == (True, (0, 0))
    lone = DecaySpace(np.array([[2.0]]), mode="link-gain")
    assert two_half_ball_cover(lone, 0, 1.0) == (True, None)  # empty ball
    # three-plus mutually far nodes cannot fit into two half-balls
    assert two_half_ball_cover(uniform_space(4), 0, 1.1) == (False, None)
    for n in (4, 5):
        sp = gen_welzl(n)
        for i in range(1, n + 1):
            assert two_half_ball_cover(sp, 0, 2.0 ** i)[0]
