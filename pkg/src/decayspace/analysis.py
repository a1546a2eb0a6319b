"""Packing, dimension and fading diagnostics for decay spaces.

Conventions. The ball around a node y at radius t collects the nodes
whose decay toward y is strictly below t. A t-packing of a node set
keeps every pairwise decay strictly above 2t, in both directions when
the matrix is asymmetric. Node-set separation at level r, used by the
fading parameter, is the non-strict mutual bound
min(f(x,y), f(y,x)) >= r.

The fading parameter gamma(r) measures the worst normalized
interference any node can receive from an r-separated sender set that
also keeps its distance from the listener. It is finite whenever ball
packings grow polynomially with degree below 1, and fading_bound turns
a packing-growth estimate (assouad_estimate) into an explicit ceiling
on gamma.
"""

import math

import numpy as np
from dataclasses import dataclass

from .search import max_independent_set, max_weight_independent_set


def ball(space, y, t):
    """Nodes whose decay toward y is strictly below t."""
    if not (t > 0):
        raise ValueError("radius must be positive")
    y = int(y)
    if not (0 <= y < space.n):
        raise ValueError("center out of range")
    return tuple(int(i) for i in np.where(space.f[:, y] < t)[0])


def packing_number(space, body, t, exact_limit=24):
    """Largest packing of the body at scale t.

    A packing keeps min(f(a,b), f(b,a)) > 2t for every pair of chosen
    nodes. Exact up to exact_limit body nodes, greedy beyond (then a
    lower bound). Returns (count, exact, members).
    """
    body = sorted(set(int(i) for i in body))
    if not body:
        raise ValueError("cannot pack an empty body")
    if not (t > 0):
        raise ValueError("scale must be positive")
    sub = space.f[np.ix_(body, body)]
    close = np.minimum(sub, sub.T) <= 2.0 * t
    np.fill_diagonal(close, False)
    members, exact = max_independent_set(close, exact_limit)
    chosen = tuple(body[i] for i in members)
    return len(chosen), exact, chosen


@dataclass
class DimensionEstimate:
    assouad: float
    C: float
    samples: list
    r_grid: tuple
    exact: bool


def assouad_estimate(space, C=1.0, q_grid=(1.5, 2.0, 3.0, 4.0, 8.0, 16.0), exact_limit=24):
    """Packing-growth exponent of decay balls.

    g(q) is the largest packing count of any ball at scale radius/q:
    for each center x the radius sweep visits the distinct incoming
    decay values r of that column, and the ball {y : f(y,x) < r} is
    packed at scale r/q (members pairwise above 2r/q in the weaker
    decay direction).

    With a numeric C the estimate is the largest log_q(g(q)/C) over
    the grid. With C=None the model g(q) = C * q^A is fitted by least
    squares on the log-log grid samples and the fitted pair is
    returned; the fit discounts the scale-free multiplicity that a
    fixed C cannot absorb, so it is the variant to use when the
    estimate feeds capacity or interference bounds. Greedy packings
    past exact_limit make counts lower bounds; exact reports whether
    every packing was exact.
    """
    if C is not None and not (C > 0):
        raise ValueError("C must be positive")
    if space.n < 1:
        raise ValueError("empty space")
    for q in q_grid:
        if not (q > 1):
            raise ValueError("every q must exceed 1")
    f = space.f
    n = space.n
    g = {float(q): 1 for q in q_grid}
    all_exact = True
    radii = set()
    for x in range(n):
        col = f[:, x]
        for d in np.unique(col):
            d = float(d)
            if d <= 0:
                continue
            radii.add(d)
            body = [int(i) for i in np.nonzero(col < d)[0]]
            if not body:
                continue
            for q in q_grid:
                q = float(q)
                if len(body) <= g[q]:
                    continue
                count, exact, _ = packing_number(space, body, d / q, exact_limit)
                all_exact = all_exact and exact
                if count > g[q]:
                    g[q] = count
    samples = [(float(q), int(g[float(q)])) for q in q_grid]
    if C is None:
        lq = np.log([q for q, _ in samples])
        lg = np.log([gq for _, gq in samples])
        if len(samples) >= 2 and np.ptp(lq) > 0:
            slope, intercept = np.polyfit(lq, lg, 1)
        else:
            slope, intercept = 0.0, float(lg.max(initial=0.0))
        estimate = max(0.0, float(slope))
        C_out = max(1.0, float(math.exp(intercept)))
    else:
        estimate = max(math.log(gq / C) / math.log(q) for q, gq in samples)
        C_out = float(C)
    return DimensionEstimate(
        assouad=float(estimate),
        C=C_out,
        samples=samples,
        r_grid=tuple(sorted(radii)),
        exact=all_exact,
    )


@dataclass
class FadingReport:
    r: float
    gamma: float
    per_node: dict
    witness_set: tuple
    exact: bool


def fading_parameter(space, r, exact_limit=24, quasi=None):
    """Worst normalized interference from r-separated senders.

    For a listening node z, an admissible sender set keeps every
    pairwise decay among senders, and between each sender and z, at
    least r in both directions. gamma_z(r) is r times the largest
    achievable sum of 1/f(y, z) over admissible sets, and the
    parameter is the worst node. Empty admissible sets give 0, which
    happens as soon as r exceeds every decay exchange around z.

    Passing a QuasiMetric as quasi switches the separation tests to
    quasi-distance units while the interference weights stay 1/f; this
    is a sensitivity knob, not the primary definition. Weighted search
    is exact up to exact_limit candidate senders, greedy beyond (a
    lower bound, flagged).
    """
    if not (r > 0):
        raise ValueError("r must be positive")
    if space.n < 1:
        raise ValueError("empty space")
    M = space.f if quasi is None else quasi.d
    n = space.n
    sep = np.minimum(M, M.T)
    f = space.f
    per_node = {}
    witnesses = {}
    all_exact = True
    for z in range(n):
        cand = [y for y in range(n) if y != z and sep[y, z] >= r]
        if not cand:
            per_node[z] = 0.0
            witnesses[z] = ()
            continue
        weights = 1.0 / f[cand, z]
        clash = sep[np.ix_(cand, cand)] < r
        np.fill_diagonal(clash, False)
        members, value, exact = max_weight_independent_set(weights, clash, exact_limit)
        all_exact = all_exact and exact
        per_node[z] = float(r * value)
        witnesses[z] = tuple(cand[i] for i in members)
    gamma = max(per_node.values())
    z_star = min(z for z, v in per_node.items() if v == gamma)
    return FadingReport(
        r=float(r),
        gamma=float(gamma),
        per_node=per_node,
        witness_set=witnesses[z_star],
        exact=all_exact,
    )


def zeta_hat(s, tol=1e-9):
    """Riemann zeta for real s > 1, by Euler-Maclaurin.

    Partial sum to M terms plus the tail corrections
    M**(1-s)/(s-1) - M**(-s)/2 + s*M**(-s-1)/12; M doubles until the
    next correction term bounds the error below tol.
    """
    s = float(s)
    if not (s > 1):
        raise ValueError("zeta_hat needs s > 1")
    if not (tol > 0):
        raise ValueError("tol must be positive")
    M = 32
    while s * (s + 1) * (s + 2) * M ** (-s - 3) / 720.0 > tol / 2.0:
        M *= 2
    k = np.arange(1, M + 1, dtype=float)
    partial = float(np.sum(k ** (-s)))
    tail = M ** (1.0 - s) / (s - 1.0) - 0.5 * M ** (-s) + s * M ** (-s - 1.0) / 12.0
    return partial + tail


def fading_bound(C, A):
    """Ceiling on the fading parameter from packing growth.

    With ball packings bounded by C * q**A for A < 1, every gamma(r)
    stays at most C * 2**(A+1) * (zeta_hat(2 - A) - 1). Raises for
    A >= 1, where the underlying series diverges.
    """
    if not (C > 0):
        raise ValueError("C must be positive")
    A = float(A)
    if A >= 1:
        raise ValueError("bound diverges for growth degree A >= 1")
    return float(C * 2.0 ** (A + 1.0) * (zeta_hat(2.0 - A) - 1.0))


def independence_at(space, quasi, x, exact_limit=24):
    """Largest node set independent with respect to the center x.

    Independence: every two members are mutually farther from each
    other than either is from x, strictly, in quasi-distance. Returns
    (size, members, exact).
    """
    x = int(x)
    if not (0 <= x < space.n):
        raise ValueError("center out of range")
    d = quasi.d
    cand = [z for z in range(space.n) if z != x]
    if not cand:
        return 0, (), True
    mutual = np.minimum(d, d.T)
    to_center = d[cand, x]
    pairmax = np.maximum.outer(to_center, to_center)
    clash = mutual[np.ix_(cand, cand)] <= pairmax
    np.fill_diagonal(clash, False)
    members, exact = max_independent_set(clash, exact_limit)
    chosen = tuple(cand[i] for i in members)
    return len(chosen), chosen, exact


def independence_dimension(space, quasi, exact_limit=24):
    """Largest center-independence count over all centers.

    Returns (dim, center, members, exact); ties go to the lowest
    center index.
    """
    if space.n < 1:
        raise ValueError("empty space")
    best = (-1, None, (), True)
    all_exact = True
    for x in range(space.n):
        size, members, exact = independence_at(space, quasi, x, exact_limit)
        all_exact = all_exact and exact
        if size > best[0]:
            best = (size, x, members, exact)
    return best[0], best[1], best[2], all_exact


def guard_set(space, quasi, x):
    """Small set of guards for the center x.

    A guard set G covers every other node z: some y in G has
    d(z, y) <= d(z, x). Greedy max-coverage (ties to the lowest node
    index) followed by a redundancy-pruning pass; the result is valid
    but not guaranteed minimum. Every node covers itself whenever the
    quasi-metric has a zero diagonal, so the greedy pass terminates on
    node-space inputs.
    """
    x = int(x)
    if not (0 <= x < space.n):
        raise ValueError("center out of range")
    d = quasi.d
    others = [z for z in range(space.n) if z != x]
    if not others:
        return ()
    oth = np.array(others)
    # covers[i, j]: guard others[j] protects node others[i]
    covers = d[np.ix_(others, others)] <= d[oth, x][:, None]
    uncovered = np.ones(len(others), dtype=bool)
    guards = []
    while uncovered.any():
        gain = covers[uncovered].sum(axis=0)
        j = int(np.argmax(gain))
        if gain[j] == 0:
            raise ValueError("node %d cannot be guarded" % int(oth[uncovered][0]))
        guards.append(j)
        uncovered &= ~covers[:, j]
    kept = list(guards)
    for j in sorted(kept):
        rest = [k for k in kept if k != j]
        if rest and covers[:, rest].any(axis=1).all():
            kept = rest
    return tuple(sorted(int(oth[j]) for j in kept))


def two_half_ball_cover(space, y, t):
    """Whether the t-ball around y fits in two balls of radius t/2.

    Candidate centers range over all nodes. Returns (ok, centers)
    with a lexicographically least pair when a cover exists.
    """
    members = ball(space, y, t)
    if not members:
        return True, None
    half = space.f[np.ix_(members, range(space.n))] < t / 2.0
    for c1 in range(space.n):
        rest = ~half[:, c1]
        if not rest.any():
            return True, (c1, c1)
        second = np.where(half[rest].all(axis=0))[0]
        if second.size:
            return True, (c1, int(second[0]))
    return False, None
