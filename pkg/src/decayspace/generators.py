"""Construction families: geometric clouds and adversarial spaces.

Each generator returns a DecaySpace, or a LinkSystem when the
construction carries links. All outputs pass validate_space. The
random helpers take integer seeds and are reproducible.
"""

import numpy as np

from .spaces import DecaySpace, LINK_GAIN, NODE_SPACE
from .links import LinkSystem, PowerAssignment, SinrParams


def random_points(n, seed, plant_collinear=False):
    """Uniform points in the unit square, reproducible by seed.

    plant_collinear overwrites the last three points with an exactly
    collinear, evenly spaced triple on a dyadic grid, so that the
    middle point splits the long distance without floating point
    error. Points are deduplicated by resampling.
    """
    if n < 1:
        raise ValueError("need at least one point")
    if plant_collinear and n < 3:
        raise ValueError("planting a collinear triple needs n >= 3")
    attempt = 0
    while True:
        rng = np.random.default_rng(seed + 7919 * attempt)
        pts = rng.uniform(0.0, 1.0, size=(n, 2))
        if plant_collinear:
            grid = 2.0 ** -16
            base = np.floor(pts[-3] * 2 ** 16) * grid
            step = rng.integers(1, 129, size=2) * grid
            pts[-3] = base
            pts[-2] = base + step
            pts[-1] = base + 2.0 * step
        if len({(p[0], p[1]) for p in pts}) == n:
            return pts
        attempt += 1


def gen_euclidean(points, alpha):
    """Planar points under geometric path loss: f = distance**alpha."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise ValueError("points must be a non-empty 2d array")
    if not (alpha >= 1):
        raise ValueError("alpha must be at least 1")
    diff = pts[:, None, :] - pts[None, :, :]
    dist = np.sqrt((diff ** 2).sum(axis=-1))
    return DecaySpace(dist ** alpha, mode=NODE_SPACE)


def gen_threepoint(q):
    """Three nodes with pairwise decays 1, q and 2q.

    The stress case for additive triangle repair: as q grows the
    exponent needed to fix the triangle inequality grows without
    bound, while the multiplicative defect stays below 2.
    """
    if not (q > 1):
        raise ValueError("q must exceed 1")
    q = float(q)
    f = np.array([
        [0.0, 1.0, 2.0 * q],
        [1.0, 0.0, q],
        [2.0 * q, q, 0.0],
    ])
    return DecaySpace(f, mode=NODE_SPACE)


def gen_star(k, r):
    """Star with k leaves, a hub, and a stray node near the hub.

    Shortest-path distances: hub to leaf k**2, leaf to leaf 2*k**2,
    stray to hub r, stray to leaf r + k**2. Node 0 is the stray, node
    1 the hub, nodes 2..k+1 the leaves. The interesting regime is
    r much smaller than k**2: the stray hears all k leaves at decay
    just above k**2 each.
    """
    if k < 1:
        raise ValueError("need at least one leaf")
    if not (r > 0):
        raise ValueError("r must be positive")
    n = k + 2
    f = np.zeros((n, n))
    k2 = float(k) ** 2
    f[0, 1] = f[1, 0] = r
    for leaf in range(2, n):
        f[1, leaf] = f[leaf, 1] = k2
        f[0, leaf] = f[leaf, 0] = r + k2
        for other in range(2, leaf):
            f[leaf, other] = f[other, leaf] = 2.0 * k2
    labels = ["stray", "hub"] + ["leaf%d" % i for i in range(k)]
    return DecaySpace(f, mode=NODE_SPACE, labels=labels)


def gen_welzl(n, eps=1e-6):
    """Doubling-scale chain where one node nearly touches every scale.

    Nodes: an anchor (index 0) and a chain v_0..v_n (indices 1..n+1).
    Chain distances d(v_j, v_i) = 2**i for j < i; the anchor sits at
    2**i - eps from each v_i. Symmetric. Every chain node is then
    independent with respect to the anchor, so center independence
    reaches n + 1 while ball packings stay modest.
    """
    if n < 1:
        raise ValueError("need a chain of at least two nodes")
    if not (0 < eps < 1):
        raise ValueError("eps must be in (0, 1)")
    m = n + 2
    f = np.zeros((m, m))
    for i in range(0, n + 1):
        f[0, 1 + i] = f[1 + i, 0] = 2.0 ** i - eps
        for j in range(0, i):
            f[1 + j, 1 + i] = f[1 + i, 1 + j] = 2.0 ** i
    labels = ["anchor"] + ["v%d" % i for i in range(n + 1)]
    return DecaySpace(f, mode=NODE_SPACE, labels=labels)


def gen_equidecay_graph(n_vertices, edges, far_decay=None):
    """Unit links whose mutual decays encode a graph.

    Link i stands for vertex i. Own decays are 1; the cross decay is
    1/2 between adjacent vertices and far_decay (default: the vertex
    count) between non-adjacent ones, in both directions. With beta=1,
    no noise and uniform power, a link set is feasible exactly when it
    is independent in the graph, and adjacent pairs are infeasible
    under every power assignment.
    """
    n = int(n_vertices)
    if n < 1:
        raise ValueError("need at least one vertex")
    far = float(far_decay) if far_decay is not None else float(n)
    if not (far > 1):
        raise ValueError("far decay must exceed 1")
    f = np.full((n, n), far)
    np.fill_diagonal(f, 1.0)
    for i, j in edges:
        i, j = int(i), int(j)
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ValueError("bad edge (%d, %d)" % (i, j))
        f[i, j] = f[j, i] = 0.5
    space = DecaySpace(f, mode=LINK_GAIN)
    return LinkSystem(
        space,
        params=SinrParams(beta=1.0, noise=0.0),
        power=PowerAssignment.uniform(1.0),
    )


def gen_twoline(n_vertices, edges, alpha, delta=0.25):
    """Two parallel rows of nodes whose crossings encode a graph.

    Senders sit at indices 0..n-1, receivers at n..2n-1, link i being
    (i, n+i). With a = alpha - 1: within-row decay |i-j|**a, own-link
    cross decay n**a, adjacent-pair cross decay n**a - delta, and
    non-adjacent cross decay n**(a+1), all symmetric. Under uniform
    power (beta=1, no noise) a link set is feasible exactly when it is
    independent, and adjacent pairs stay infeasible under every power
    assignment since n**(2a) > (n**a - delta)**2.
    """
    n = int(n_vertices)
    if n < 2:
        raise ValueError("need at least two vertices")
    if not (alpha > 1):
        raise ValueError("alpha must exceed 1")
    if not (0 < delta < 0.5):
        raise ValueError("delta must lie in (0, 1/2)")
    a = float(alpha) - 1.0
    na = float(n) ** a
    f = np.zeros((2 * n, 2 * n))
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            within = float(abs(i - j)) ** a
            f[i, j] = within
            f[n + i, n + j] = within
    adj = set()
    for i, j in edges:
        i, j = int(i), int(j)
        if i == j or not (0 <= i < n and 0 <= j < n):
            raise ValueError("bad edge (%d, %d)" % (i, j))
        adj.add((min(i, j), max(i, j)))
    for i in range(n):
        for j in range(n):
            if i == j:
                cross = na
            elif (min(i, j), max(i, j)) in adj:
                cross = na - delta
            else:
                cross = na * n
            f[i, n + j] = cross
            f[n + j, i] = cross
    space = DecaySpace(f, mode=NODE_SPACE)
    links = [(i, n + i) for i in range(n)]
    return LinkSystem(
        space,
        links=links,
        params=SinrParams(beta=1.0, noise=0.0),
        power=PowerAssignment.uniform(1.0),
    )


def random_graph(n, p, seed):
    """Erdos-Renyi style edge list, reproducible by seed."""
    if n < 1:
        raise ValueError("need at least one vertex")
    if not (0 <= p <= 1):
        raise ValueError("p must lie in [0, 1]")
    rng = np.random.default_rng(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                edges.append((i, j))
    return n, edges


def random_link_system(n_links, seed, beta=1.0, noise=0.0, alpha=2.5, box=4.0):
    """Random planar sender-receiver pairs under geometric path loss.

    Senders land uniformly in a box of the given side; each receiver
    sits at its sender plus a short random offset. Powers are uniform.
    The box side tunes interference density.
    """
    if n_links < 1:
        raise ValueError("need at least one link")
    rng = np.random.default_rng(seed)
    while True:
        senders = rng.uniform(0.0, box, size=(n_links, 2))
        offsets = rng.uniform(-1.0, 1.0, size=(n_links, 2))
        norms = np.sqrt((offsets ** 2).sum(axis=1))
        lengths = rng.uniform(0.1, 0.8, size=n_links)
        receivers = senders + offsets * (lengths / norms)[:, None]
        pts = np.vstack([senders, receivers])
        if len({(p[0], p[1]) for p in pts}) == 2 * n_links and np.all(norms > 0):
            break
        seed += 7919
        rng = np.random.default_rng(seed)
    space = gen_euclidean(pts, alpha)
    links = [(i, n_links + i) for i in range(n_links)]
    return LinkSystem(
        space,
        links=links,
        params=SinrParams(beta=beta, noise=noise),
        power=PowerAssignment.uniform(1.0),
    )
