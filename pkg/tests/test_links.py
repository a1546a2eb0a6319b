"""Affectance, feasibility and link geometry on hand-checkable systems."""

import numpy as np
import pytest

from decayspace import (
    DecaySpace,
    LinkSystem,
    PowerAssignment,
    SinrParams,
    affectance,
    affectance_matrix,
    aggregate_affectance,
    drowned_links,
    gen_equidecay_graph,
    gen_euclidean,
    gen_star,
    interference_at,
    is_feasible,
    is_monotone_power,
    link_distance,
    link_distance_matrix,
    pairwise_power_infeasible,
    quasi_distances,
    random_link_system,
    sinr_values,
)


def pair_system(f01=4.0, f10=2.0, beta=1.0, noise=0.0, power=None):
    f = np.array([[1.0, f01], [f10, 1.0]])
    return LinkSystem(
        DecaySpace(f, mode="link-gain"),
        params=SinrParams(beta, noise),
        power=power,
    )


def test_affectance_closed_form():
    sys_ = pair_system()
    assert affectance(sys_, 0, 1) == 0.25  # own decay 1 over cross decay 4
    assert affectance(sys_, 1, 0) == 0.5
    assert affectance(sys_, 0, 0) == 0.0


def test_affectance_noise_margin():
    # c = beta / (1 - beta*N*f_vv/P) doubles at half margin
    sys_ = pair_system(noise=0.5)
    assert affectance(sys_, 0, 1) == 0.5
    assert affectance(sys_, 1, 0) == 1.0


def test_affectance_explicit_powers():
    sys_ = pair_system(power=PowerAssignment.explicit([2.0, 1.0]))
    assert affectance(sys_, 0, 1) == 0.5
    assert affectance(sys_, 1, 0) == 0.25


def test_affectance_cap_and_raw():
    sys_ = pair_system(f01=0.5)
    assert affectance(sys_, 0, 1) == 1.0
    raw = affectance_matrix(sys_, capped=False)
    assert raw[0, 1] == 2.0
    assert np.all(affectance_matrix(sys_) <= raw)


def test_drowned_links():
    f = np.array([[1.0, 10.0], [10.0, 5.0]])
    sys_ = LinkSystem(DecaySpace(f, mode="link-gain"), params=SinrParams(1.0, 0.4))
    assert drowned_links(sys_) == (1,)
    with pytest.raises(ValueError):
        affectance(sys_, 0, 1)  # onto a drowned link
    affectance(sys_, 1, 0)  # from one is still defined
    assert np.isnan(affectance_matrix(sys_)[0, 1])
    assert np.isfinite(affectance_matrix(sys_)[1, 0])
    assert is_feasible(sys_, [1]) == (False, 1)
    assert is_feasible(sys_, [0])[0]


def test_feasibility_levels():
    sys_ = gen_equidecay_graph(3, [(0, 1)])
    ok, wit = is_feasible(sys_, [0, 1])
    assert not ok and wit == 0  # adjacent pair, raw affectance 2 each way
    assert is_feasible(sys_, [0, 2])[0]
    assert is_feasible(sys_, [0, 2], K=3.0)[0]  # in-sums exactly 1/3
    assert not is_feasible(sys_, [0, 2], K=3.5)[0]
    with pytest.raises(ValueError):
        is_feasible(sys_, [])
    with pytest.raises(ValueError):
        is_feasible(sys_, [0, 0])
    with pytest.raises(ValueError):
        is_feasible(sys_, [0, 2], K=0.0)


def test_sinr_matches_the_affectance_route():
    # the threshold test and direct SINR evaluation must agree away
    # from the exact boundary
    compared = 0
    for k in range(30):
        sys_ = random_link_system(
            8, 500 + k, beta=1.0 + 0.3 * (k % 3), noise=0.01 * (k % 2), alpha=2.2
        )
        rng = np.random.default_rng(k)
        S = sorted(int(v) for v in rng.choice(8, size=4, replace=False))
        ok, _ = is_feasible(sys_, S)
        raw = affectance_matrix(sys_, capped=False)
        sums = raw[np.ix_(S, S)].sum(axis=0)
        if np.any(np.abs(sums - 1.0) <= 1e-9):
            continue  # too close to the threshold to compare routes
        members, sinr = sinr_values(sys_, S)
        assert members == S
        assert ok == bool(np.all(sinr >= sys_.params.beta))
        compared += 1
    assert compared >= 25


def test_link_distance_takes_closest_endpoints():
    pts = np.array([[0.0, 0.0], [3.0, 0.0], [10.0, 0.0], [11.0, 0.0]])
    sys_ = LinkSystem(gen_euclidean(pts, 1.0), links=[(0, 1), (2, 3)])
    quasi = quasi_distances(sys_.space, 1.0)
    assert link_distance(sys_, quasi, 0, 1) == 7.0  # receiver 1 to sender 2
    assert link_distance(sys_, quasi, 0, 0) == 0.0


def test_link_distance_matrix_matches_scalar():
    sys_ = random_link_system(7, 99, alpha=2.0)
    quasi = quasi_distances(sys_.space, 2.0)
    M = link_distance_matrix(sys_, quasi)
    for v in range(7):
        for w in range(7):
            assert M[v, w] == link_distance(sys_, quasi, v, w)


def test_link_distance_link_gain_mode():
    sys_ = pair_system()
    quasi = quasi_distances(sys_.space, 1.0, check=False)
    assert link_distance(sys_, quasi, 0, 1) == 2.0  # min of the two cross decays
    M = link_distance_matrix(sys_, quasi)
    assert M[0, 1] == M[1, 0] == 2.0 and M[0, 0] == 0.0


def test_aggregate_affectance_directions():
    sys_ = pair_system()
    assert aggregate_affectance(sys_, [0, 1], 0, "in") == 0.5
    assert aggregate_affectance(sys_, [0, 1], 0, "out") == 0.25
    assert aggregate_affectance(sys_, [], 0) == 0.0
    with pytest.raises(ValueError):
        aggregate_affectance(sys_, [0], 1, "sideways")


def test_monotone_power_splits_power_laws():
    f = np.array([[1.0, 50.0], [50.0, 4.0]])
    space = DecaySpace(f, mode="link-gain")
    squared = LinkSystem(space, power=PowerAssignment.explicit([1.0, 16.0]))
    ok, pair = is_monotone_power(squared)
    assert not ok and pair == (0, 1)  # received strength grows with length
    root = LinkSystem(space, power=PowerAssignment.explicit([1.0, 2.0]))
    assert is_monotone_power(root) == (True, None)
    assert is_monotone_power(LinkSystem(space)) == (True, None)
    decreasing = LinkSystem(space, power=PowerAssignment.explicit([2.0, 1.0]))
    assert is_monotone_power(decreasing) == (False, (0, 1))


def test_pairwise_power_certificate():
    sys_ = gen_equidecay_graph(4, [(0, 1)])
    assert pairwise_power_infeasible(sys_, 0, 1)
    assert not pairwise_power_infeasible(sys_, 0, 2)
    with pytest.raises(ValueError):
        pairwise_power_infeasible(sys_, 1, 1)


def test_interference_at_star():
    star = gen_star(16, 1.0)
    sys_ = LinkSystem(star, links=[(0, 1)], params=SinrParams())
    leaves = list(range(2, 18))
    assert abs(interference_at(sys_, leaves, 0) - 16.0 / 257.0) <= 1e-12
    assert interference_at(sys_, [], 0) == 0.0


def test_interference_at_rejects_bad_calls():
    star = gen_star(4, 1.0)
    sys_ = LinkSystem(star, links=[(0, 1)], params=SinrParams())
    with pytest.raises(ValueError):
        interference_at(sys_, [0, 2], 0)  # target among the senders
    with pytest.raises(ValueError):
        interference_at(sys_, [2], 99)
    with pytest.raises(ValueError):
        interference_at(sys_, [99], 0)
    lg = pair_system()
    with pytest.raises(ValueError):
        interference_at(lg, [0], 1)
    explicit = LinkSystem(
        star, links=[(0, 1)], power=PowerAssignment.explicit([1.0])
    )
    with pytest.raises(ValueError):
        interference_at(explicit, [2], 0)


def test_system_constructor_checks():
    space = gen_euclidean(np.array([[0.0, 0.0], [1.0, 0.0]]), 2.0)
    with pytest.raises(ValueError):
        LinkSystem(space)  # node-space needs links
    with pytest.raises(ValueError):
        LinkSystem(space, links=[(0, 0)])
    with pytest.raises(ValueError):
        LinkSystem(space, links=[(0, 5)])
    lg = DecaySpace(np.array([[1.0]]), mode="link-gain")
    with pytest.raises(ValueError):
        LinkSystem(lg, links=[(0, 0)])  # link-gain brings its own links
    sys_ = LinkSystem(space, links=[(0, 1), (1, 0)])
    assert sys_.n_links == 2
    assert list(sys_.order()) == [0, 1]  # equal own decays, ties by index


def test_order_sorts_by_own_decay():
    f = np.diag([2.0, 1.0, 2.0]) + np.ones((3, 3)) - np.eye(3)
    sys_ = LinkSystem(DecaySpace(f, mode="link-gain"))
    assert list(sys_.order()) == [1, 0, 2]


def test_power_and_param_validation():
    with pytest.raises(ValueError):
        PowerAssignment.uniform(0.0)
    with pytest.raises(ValueError):
        PowerAssignment.explicit([1.0, -1.0])
    with pytest.raises(ValueError):
        PowerAssignment("weird", 1.0)
    with pytest.raises(ValueError):
        pair_system(power=PowerAssignment.explicit([1.0, 2.0, 3.0]))
    with pytest.raises(ValueError):
        SinrParams(beta=0.5)
    with pytest.raises(ValueError):
        SinrParams(noise=-1.0)
