"""Split a feasible link set into a few classes with stronger guarantees.

Two flavors:
  * signal strengthening: each class is K-feasible for a larger K,
    so every link in it clears the SINR threshold with margin
  * separation strengthening: each class is pairwise eta-separated
    in the repaired quasi-metric

Run: python3 demos/partition_rounds.py
"""

import math

from decayspace import (
    capacity_uniform,
    check_separation_set,
    compute_zeta,
    gen_equidecay_graph,
    is_feasible,
    quasi_distances,
    random_graph,
    random_link_system,
    separation_strengthen,
    signal_strengthen,
)


def main():
    print("== signal strengthening on a conflict graph ==")
    n, edges = random_graph(9, 0.25, seed=4)
    sys_ = gen_equidecay_graph(n, edges)
    print("%d links, conflict edges %s" % (n, edges))

    sel = capacity_uniform(sys_, zeta=1.0).selected
    print("feasible set from the capacity pass:", sel)

    part = signal_strengthen(sys_, sel, p=1.0, q=3.0)
    print("asking for 3-feasibility, guaranteed class budget %d" % part.bound)
    print("got %d classes: %s" % (len(part.classes), part.classes))
    for cls in part.classes:
        ok, _ = is_feasible(sys_, cls, K=3.0)
        print("  class %s 3-feasible: %s" % (cls, ok))
    print("certificate:", part.certificate)

    # with no conflicts every link coexists, but only barely: each of the
    # nine members absorbs 8/9 of its budget, so tripling the requirement
    # actually forces a split
    sys_open = gen_equidecay_graph(9, [])
    everyone = list(range(9))
    print()
    print("no-conflict system, all %d links feasible: %s"
          % (len(everyone), is_feasible(sys_open, everyone)[0]))
    part_open = signal_strengthen(sys_open, everyone, p=1.0, q=3.0)
    print("3-feasibility now takes %d classes: %s"
          % (len(part_open.classes), part_open.classes))
    for cls in part_open.classes:
        ok, _ = is_feasible(sys_open, cls, K=3.0)
        assert ok

    # the class budget for signal strengthening is a ceiling squared
    print()
    print("signal class budget as the upgrade factor grows:")
    for q_ in (1.5, 3.0, 8.0, 20.0):
        m = math.ceil(2.0 * q_ / 1.0)
        print("  q = %4.1f -> bound %d (= %d^2)" % (q_, m * m, m))

    print()
    print("== separation strengthening in a geometric system ==")
    sys2 = random_link_system(12, seed=21, alpha=3.0)
    z = compute_zeta(sys2.space)[1]
    quasi = quasi_distances(sys2.space, z)
    X = capacity_uniform(sys2, zeta=z, quasi=quasi).intermediate
    tau = z / 2.0
    print("intermediate set of the capacity pass:", X)
    print("it is already %.2f-separated; upgrading the separation:" % tau)

    for eta in (tau, 2 * z, 6 * z):
        part2 = separation_strengthen(sys2, quasi, X, tau=tau, eta=eta)
        checked = all(check_separation_set(sys2, quasi, cls, eta)
                      for cls in part2.classes)
        print("  eta = %5.1f: %d classes (budget %d), all re-checked: %s"
              % (eta, len(part2.classes), part2.bound, checked))
    print("last certificate:", part2.certificate)


if __name__ == "__main__":
    main()
