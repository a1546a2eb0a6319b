## Select a large feasible link set with uniform power, then compare
## against the exact optimum on a small instance.
##
## Run: python3 demos/capacity_walkthrough.py

import numpy as np

from decayspace import (
    LinkSystem,
    affectance_matrix,
    capacity_oracle,
    capacity_uniform,
    compute_zeta,
    gen_euclidean,
    is_feasible,
    random_link_system,
)


def hand_instance():
    # two short links sitting close together, one short link nearby,
    # and a third pair parked far away
    pts = np.array([[0.0, 0.0], [1.0, 0.0],
                    [0.0, 0.5], [1.0, 0.5],
                    [100.0, 0.0], [101.0, 0.0]])
    sp = gen_euclidean(pts, 2.0)
    return LinkSystem(sp, links=[(0, 1), (2, 3), (4, 5)])


def main():
    sys_ = hand_instance()
    print("three links, pairwise affectances (capped at 1):")
    print(np.round(affectance_matrix(sys_), 4))

    res = capacity_uniform(sys_, zeta=2.0)
    print("selected by the greedy pass:", res.selected)
    print("intermediate half-separated set:", res.intermediate)
    print("skipped in the thinning step:", res.skipped)
    ok, witness = is_feasible(sys_, res.selected)
    print("selected set feasible: %s (tightest member: link %d)" % (ok, witness))

    opt, opt_set = capacity_oracle(sys_)
    print("exact optimum: %d links, set %s" % (opt, opt_set))
    print("approximation ratio on this instance: %.2f" % (opt / len(res.selected)))
    # all three links coexist, but links 0 and 1 clash pairwise after the
    # separation filter, so the greedy pass keeps one of them plus the far pair

    print()
    print("== a random instance ==")
    sys2 = random_link_system(14, seed=9, alpha=3.0)
    zr, z, w = compute_zeta(sys2.space)
    print("14 links in a box, metricity exponent %.3f" % z)

    res2 = capacity_uniform(sys2, zeta=z)
    opt2, opt_set2 = capacity_oracle(sys2)
    print("greedy: %d links %s" % (len(res2.selected), res2.selected))
    print("oracle: %d links %s" % (opt2, opt_set2))
    print("feasible:", is_feasible(sys2, res2.selected)[0])
    print("ratio: %.3f" % (opt2 / max(1, len(res2.selected))))

    print()
    print("ratios across 30 seeds:")
    ratios = []
    for k in range(30):
        s = random_link_system(12, seed=100 + k, alpha=3.0)
        zz = compute_zeta(s.space)[1]
        r = capacity_uniform(s, zeta=zz)
        o, _ = capacity_oracle(s)
        ratios.append(o / max(1, len(r.selected)))
    print("worst %.3f   mean %.3f" % (max(ratios), float(np.mean(ratios))))


if __name__ == "__main__":
    main()
