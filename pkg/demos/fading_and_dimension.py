## Interference from far-away nodes, summed against a growth bound.
##
## The story: if balls in the decay space do not grow too fast (bounded
## dimension), then total interference at any listener from an
## r-separated set of senders is bounded by a constant depending only
## on the growth, not on how many senders there are.
##
## Run: python3 demos/fading_and_dimension.py

import numpy as np

from decayspace import (
    DecaySpace,
    assouad_estimate,
    ball,
    fading_bound,
    fading_parameter,
    gen_euclidean,
    gen_star,
    independence_dimension,
    packing_number,
    random_points,
    zeta_hat,
)


def main():
    pts = random_points(48, seed=11)
    sp = gen_euclidean(pts, 3.0)
    print("48 random points in the unit square, cubic decay")

    b = ball(sp, 0, 0.01)
    print("ball around node 0 at radius 0.01 holds %d nodes" % len(b))
    cnt, exact, members = packing_number(sp, b, 0.001)
    print("it packs %d nodes at mutual decay > 0.002 (exact: %s)" % (cnt, exact))

    est = assouad_estimate(sp, C=None, exact_limit=48)
    print("fitted growth: dimension %.4f with constant C = %.4f"
          % (est.assouad, est.C))
    print("  per-scale packing maxima:", est.samples)
    ## euclidean dimension 2 seen through alpha=3 decay is 2/3 in the limit;
    ## a 48-point cloud under-fills the square, so the fit lands below that
    print("  (asymptotic value for a filled plane would be %.3f)" % (2 / 3.0))

    bound = fading_bound(est.C, est.assouad)
    print("interference ceiling for separated senders: %.4f" % bound)
    for r in (0.05, 0.2, 1.0):
        rep = fading_parameter(sp, r, exact_limit=48)
        print("  r = %.2f: worst r-weighted interference %.4f <= %.4f "
              "(worst sender set has %d nodes)"
              % (r, rep.gamma, bound, len(rep.witness_set)))

    print()
    print("== the star shows the bound is about geometry, not size ==")
    star = gen_star(4, 1.0)
    rep = fading_parameter(star, 1.0)
    print("hub plus 4 leaves plus a stray: gamma = %.4f" % rep.gamma)
    print("per listener:", {k: round(v, 4) for k, v in rep.per_node.items()})

    print()
    print("== tail sums behind the ceiling ==")
    print("zeta_hat(2) = %.12f   (pi^2/6 = %.12f)" % (zeta_hat(2.0), np.pi ** 2 / 6))
    print("fading_bound(1, 0)   = %.6f" % fading_bound(1.0, 0.0))
    print("fading_bound(1, 0.5) = %.6f" % fading_bound(1.0, 0.5))
    print("the ceiling blows up as the dimension approaches 1:")
    for A in (0.9, 0.99, 0.999):
        print("  A = %.3f: %12.2f" % (A, fading_bound(1.0, A)))

    print()
    print("== an intrinsic dimension witness ==")
    from decayspace import compute_zeta, gen_welzl, quasi_distances

    uni = DecaySpace(np.ones((12, 12)) - np.eye(12))
    dim, center, members, exact = independence_dimension(uni, quasi_distances(uni, 1.0))
    print("12 mutually equidistant nodes: independence dimension %d" % dim)
    print("  (any two candidates sit as close to each other as to the")
    print("   center, so they shadow one another and only one survives)")

    quasi = quasi_distances(sp, compute_zeta(sp)[1])
    dim2, center2, members2, _ = independence_dimension(sp, quasi)
    print("the point cloud: independence dimension %d at center %d, set %s"
          % (dim2, center2, members2))

    # the anchored doubling construction drives independence as high
    # as you like while every pairwise distance stays finite
    wz = gen_welzl(8)
    qd = quasi_distances(wz, compute_zeta(wz)[1])
    dim3, center3, members3, _ = independence_dimension(wz, qd)
    print("anchored doubling chain on 9 nodes: independence dimension %d "
          "around node %d (%s)" % (dim3, center3, wz.labels[center3]))


if __name__ == "__main__":
    main()
