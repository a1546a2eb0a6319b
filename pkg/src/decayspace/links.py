"""Links, power assignments, affectance and SINR feasibility.

A link is a sender-receiver pair over a decay space. Interference
between links is summarized by affectance: the disturbance link w
inflicts on link v, normalized by v's signal headroom and capped at
one. With the noise multiplier c_v = beta / (1 - beta*N*f_vv/P_v),

    a_w(v) = min(1, c_v * (P_w / P_v) * (f_vv / f_wv)),    a_v(v) = 0,

where f_wv is the decay from w's sender to v's receiver. A link set S
is feasible when every member decodes against the interference of the
rest, i.e. the SINR threshold test

    P_v / f_vv >= beta * (N + sum over w in S, w != v, of P_w / f_wv)

holds for all v in S. That inequality is algebraically the statement
that v's UNCAPPED in-affectance sum stays at most 1, and K-feasibility
tightens the budget to 1/K. Feasibility tests therefore use uncapped
sums; reported affectances and aggregates keep the capped definition
above. A link whose received signal cannot clear the noise floor even
alone (P_v/f_vv <= beta*N) is called drowned; asking for affectance
onto a drowned link is an error, and any set containing one is
infeasible.
"""

import numpy as np

from .spaces import NODE_SPACE, LINK_GAIN


class SinrParams:
    """SINR threshold beta >= 1 and ambient noise N >= 0."""

    def __init__(self, beta=1.0, noise=0.0):
        beta = float(beta)
        noise = float(noise)
        if beta < 1:
            raise ValueError("beta must be at least 1")
        if noise < 0:
            raise ValueError("noise must be non-negative")
        self.beta = beta
        self.noise = noise

    def __repr__(self):
        return "SinrParams(beta=%g, noise=%g)" % (self.beta, self.noise)


class PowerAssignment:
    """Transmit powers, either one shared level or one per link."""

    def __init__(self, kind, value):
        if kind not in ("uniform", "explicit"):
            raise ValueError("kind must be 'uniform' or 'explicit'")
        self.kind = kind
        self.value = value

    @classmethod
    def uniform(cls, level=1.0):
        level = float(level)
        if level <= 0:
            raise ValueError("power level must be positive")
        return cls("uniform", level)

    @classmethod
    def explicit(cls, powers):
        powers = np.array(powers, dtype=float)
        if powers.ndim != 1:
            raise ValueError("explicit powers must be a vector")
        if np.any(powers <= 0):
            raise ValueError("powers must be positive")
        return cls("explicit", powers)

    def vector(self, n_links):
        if self.kind == "uniform":
            return np.full(n_links, self.value)
        if len(self.value) != n_links:
            raise ValueError(
                "expected %d powers, got %d" % (n_links, len(self.value))
            )
        return self.value.copy()


class LinkSystem:
    """Links over a decay space, with SINR parameters and powers.

    In node-space mode, links are (sender, receiver) index pairs into
    the space and the cross decay from w to v is f(s_w, r_v). In
    link-gain mode the space's matrix already is that table, entry
    [w][v] being the decay from w's sender to v's receiver with
    own-link decays on the diagonal; links stays None and link i is
    row/column i.

    Scheduling code orders links by non-decreasing own decay, ties
    broken by index; order() returns that permutation.
    """

    def __init__(self, space, links=None, params=None, power=None):
        self.space = space
        self.params = params if params is not None else SinrParams()
        self.power = power if power is not None else PowerAssignment.uniform(1.0)
        if space.mode == LINK_GAIN:
            if links is not None:
                raise ValueError("link-gain systems take their links from the matrix")
            self.links = None
            self._nl = space.n
        else:
            if links is None:
                raise ValueError("node-space systems need an explicit link list")
            clean = []
            for k, (s, r) in enumerate(links):
                s, r = int(s), int(r)
                if not (0 <= s < space.n and 0 <= r < space.n):
                    raise ValueError("link %d endpoint out of range" % k)
                if s == r:
                    raise ValueError("link %d has sender equal to receiver" % k)
                clean.append((s, r))
            self.links = clean
            self._nl = len(clean)
        self._P = self.power.vector(self._nl)
        own = self.own_decays()
        bad = np.where(own <= 0)[0]
        if bad.size:
            raise ValueError("own decay of link %d is not positive" % int(bad[0]))
        self._cross = None
        self._aff = {}

    @property
    def n_links(self):
        return self._nl

    def powers(self):
        return self._P

    def own_decays(self):
        if self.space.mode == LINK_GAIN:
            return np.diag(self.space.f).copy()
        if not self.links:
            return np.empty(0)
        s = np.fromiter((l[0] for l in self.links), dtype=int)
        r = np.fromiter((l[1] for l in self.links), dtype=int)
        return self.space.f[s, r]

    def cross_decays(self):
        """Matrix F with F[w][v] the decay from w's sender to v's receiver."""
        if self._cross is None:
            if self.space.mode == LINK_GAIN:
                self._cross = self.space.f.copy()
            elif not self.links:
                self._cross = np.empty((0, 0))
            else:
                s = [l[0] for l in self.links]
                r = [l[1] for l in self.links]
                self._cross = self.space.f[np.ix_(s, r)]
        return self._cross

    def order(self):
        """Link indices sorted by (own decay, index)."""
        own = self.own_decays()
        return np.lexsort((np.arange(self._nl), own))

    def link_length(self, quasi, v):
        """Own quasi-distance of link v under the given quasi-metric."""
        if self.space.mode == LINK_GAIN:
            return float(quasi.d[v, v])
        s, r = self.links[v]
        return float(quasi.d[s, r])

    def link_lengths(self, quasi):
        if self.space.mode == LINK_GAIN:
            return np.diag(quasi.d).copy()
        if not self.links:
            return np.empty(0)
        s = [l[0] for l in self.links]
        r = [l[1] for l in self.links]
        return quasi.d[s, r]

    def __repr__(self):
        return "LinkSystem(n_links=%d, %r, power=%s)" % (
            self._nl,
            self.params,
            self.power.kind,
        )


def _noise_margin(sys):
    # 1 - beta*N*f_vv/P_v per link; nonpositive means the link cannot
    # decode even without interference
    own = sys.own_decays()
    return 1.0 - sys.params.beta * sys.params.noise * own / sys.powers()


def drowned_links(sys):
    """Indices of links whose signal cannot clear the noise floor alone."""
    return tuple(int(v) for v in np.where(_noise_margin(sys) <= 0)[0])


def affectance_matrix(sys, capped=True):
    """Full pairwise affectance table A[w][v] = a_w(v), zero diagonal.

    Columns of drowned links hold NaN. capped=False returns the raw
    ratios that feasibility tests sum.
    """
    key = bool(capped)
    if key in sys._aff:
        return sys._aff[key]
    n = sys.n_links
    if n == 0:
        sys._aff[key] = np.empty((0, 0))
        return sys._aff[key]
    margin = _noise_margin(sys)
    with np.errstate(divide="ignore"):
        c = sys.params.beta / margin
    c[margin <= 0] = np.nan
    P = sys.powers()
    own = sys.own_decays()
    F = sys.cross_decays()
    with np.errstate(divide="ignore"):
        raw = c[None, :] * (P[:, None] / P[None, :]) * (own[None, :] / F)
    np.fill_diagonal(raw, 0.0)
    out = np.minimum(raw, 1.0) if capped else raw
    sys._aff[key] = out
    return out


def _check_index(sys, v):
    if not (0 <= v < sys.n_links):
        raise ValueError("link index %d out of range" % v)


def _check_not_drowned(sys, v):
    if _noise_margin(sys)[v] <= 0:
        raise ValueError("link %d is drowned by noise" % v)


def affectance(sys, w, v):
    """a_w(v): the capped disturbance of link w on link v."""
    _check_index(sys, w)
    _check_index(sys, v)
    if w == v:
        return 0.0
    _check_not_drowned(sys, v)
    return float(affectance_matrix(sys)[w, v])


def _index_list(S):
    out = sorted(int(v) for v in S)
    for a, b in zip(out, out[1:]):
        if a == b:
            raise ValueError("duplicate link index %d" % a)
    return out


def aggregate_affectance(sys, S, v, direction="in"):
    """Capped affectance between link v and the set S.

    direction "in" gives a_S(v), the total S inflicts on v; "out"
    gives a_v(S). Self terms vanish, so v may be a member of S.
    """
    S = _index_list(S)
    for w in S:
        _check_index(sys, w)
    _check_index(sys, v)
    if direction not in ("in", "out"):
        raise ValueError("direction must be 'in' or 'out'")
    if direction == "in":
        _check_not_drowned(sys, v)
    else:
        for w in S:
            if w != v:
                _check_not_drowned(sys, w)
    if not S:
        return 0.0
    A = affectance_matrix(sys)
    if direction == "in":
        return float(A[S, v].sum())
    return float(A[v, S].sum())


def is_feasible(sys, S, K=1.0):
    """SINR feasibility of the link set S, strengthened by K.

    K-feasible means every member's uncapped in-affectance sum is at
    most 1/K; at K = 1 this is exactly the SINR threshold test.
    Returns (ok, witness) where the witness is the member with the
    largest in-affectance sum, or the lowest-index drowned member when
    noise alone defeats a link. K above 1 tightens the test, K in
    (0, 1) relaxes it.
    """
    S = _index_list(S)
    if not S:
        raise ValueError("feasibility of the empty set is undefined")
    for v in S:
        _check_index(sys, v)
    if not (K > 0):
        raise ValueError("K must be positive")
    margin = _noise_margin(sys)
    for v in S:
        if margin[v] <= 0:
            return False, v
    raw = affectance_matrix(sys, capped=False)
    sums = raw[np.ix_(S, S)].sum(axis=0)
    witness = S[int(np.argmax(sums))]
    return bool(np.all(sums <= 1.0 / K)), witness


def sinr_values(sys, S):
    """Per-member SINR of the set S, in increasing index order.

    Evaluated directly from decays and powers, independent of the
    affectance rewriting: signal over noise plus the sum of received
    interfering powers. Returns (members, sinr_array).
    """
    S = _index_list(S)
    if not S:
        raise ValueError("need at least one link")
    F = sys.cross_decays()
    P = sys.powers()
    own = sys.own_decays()
    idx = np.array(S)
    sub = F[np.ix_(S, S)]
    with np.errstate(divide="ignore"):
        received = P[idx][:, None] / sub
    signal = P[idx] / own[idx]
    interference = received.sum(axis=0) - np.diag(received)
    with np.errstate(divide="ignore", invalid="ignore"):
        sinr = signal / (sys.params.noise + interference)
    # 0/0 only when a zero cross decay floods a link; call that 0
    sinr = np.where(np.isnan(sinr), 0.0, sinr)
    return S, sinr


def link_distance(sys, quasi, v, w):
    """Quasi-distance between links: the closest endpoint pair.

    Node-space systems take the minimum over the four sender/receiver
    combinations. Link-gain systems only carry the two cross terms, so
    the distance falls back to min(d[v][w], d[w][v]). Either way the
    distance of a link to itself is 0.
    """
    _check_index(sys, v)
    _check_index(sys, w)
    if v == w:
        return 0.0
    d = quasi.d
    if sys.space.mode == LINK_GAIN:
        return float(min(d[v, w], d[w, v]))
    sv, rv = sys.links[v]
    sw, rw = sys.links[w]
    return float(min(d[sv, rw], d[sw, rv], d[sv, sw], d[rv, rw]))


def link_distance_matrix(sys, quasi):
    """All pairwise link distances at once, zero diagonal."""
    n = sys.n_links
    if n == 0:
        return np.empty((0, 0))
    d = quasi.d
    if sys.space.mode == LINK_GAIN:
        out = np.minimum(d, d.T).copy()
    else:
        s = [l[0] for l in sys.links]
        r = [l[1] for l in sys.links]
        sr = d[np.ix_(s, r)]
        out = np.minimum.reduce([
            sr,
            sr.T,
            d[np.ix_(s, s)],
            d[np.ix_(r, r)],
        ])
    np.fill_diagonal(out, 0.0)
    return out


def check_separation(sys, quasi, v, L, eta):
    """True when link v is eta-separated from every link in L.

    Separation means link_distance(v, w) >= eta * (v's own length).
    Empty L is vacuously separated; v itself should not appear in L
    since its self-distance is zero.
    """
    L = _index_list(L)
    if not L:
        return True
    own = sys.link_length(quasi, v)
    for w in L:
        if link_distance(sys, quasi, v, w) < eta * own:
            return False
    return True


def _separation_violation(sys, quasi, L, eta):
    # first (lexicographic) ordered pair violating mutual separation
    L = _index_list(L)
    lengths = {v: sys.link_length(quasi, v) for v in L}
    for v in L:
        for w in L:
            if w == v:
                continue
            if link_distance(sys, quasi, v, w) < eta * lengths[v]:
                return (v, w)
    return None


def check_separation_set(sys, quasi, L, eta):
    """True when every link in L is eta-separated from all the others."""
    return _separation_violation(sys, quasi, L, eta) is None


def is_monotone_power(sys):
    """Whether powers grow and received strengths shrink with length.

    The order is by (own decay, index). Monotone means a later link
    never has smaller power and never has larger received strength
    P/f_own than an earlier one. Both conditions are transitive, so
    checking consecutive pairs covers every ordered pair. Returns
    (ok, pair) with the first offending (shorter, longer) pair, else
    (True, None).
    """
    order = sys.order()
    P = sys.powers()
    own = sys.own_decays()
    for a, b in zip(order, order[1:]):
        a, b = int(a), int(b)
        if P[b] < P[a]:
            return False, (a, b)
        # compare P[b]/own[b] <= P[a]/own[a] without dividing
        if P[b] * own[a] > P[a] * own[b]:
            return False, (a, b)
    return True, None


def pairwise_power_infeasible(sys, v, w):
    """Certificate that no power assignment makes {v, w} feasible.

    Tests beta^2 * f_vv * f_ww > f_vw * f_wv strictly. Exact for zero
    ambient noise; with noise it stays a sufficient certificate.
    """
    _check_index(sys, v)
    _check_index(sys, w)
    if v == w:
        raise ValueError("need two distinct links")
    own = sys.own_decays()
    F = sys.cross_decays()
    beta = sys.params.beta
    return bool(beta * beta * own[v] * own[w] > F[v, w] * F[w, v])


def interference_at(sys, senders, target):
    """Total received power at a node from a set of sender nodes.

    Node-space systems under uniform power only; senders and target
    are node indices, not links. The sum is P / f(y, target) over the
    senders y. Empty sender sets contribute 0.
    """
    if sys.space.mode != NODE_SPACE:
        raise ValueError("interference_at needs a node-space system")
    if sys.power.kind != "uniform":
        raise ValueError("interference_at is defined for uniform power")
    target = int(target)
    if not (0 <= target < sys.space.n):
        raise ValueError("target node out of range")
    senders = sorted(int(y) for y in senders)
    if target in senders:
        raise ValueError("target cannot be one of the senders")
    if not senders:
        return 0.0
    for y in senders:
        if not (0 <= y < sys.space.n):
            raise ValueError("sender node %d out of range" % y)
    col = sys.space.f[senders, target]
    with np.errstate(divide="ignore"):
        terms = sys.power.value / col
    return float(terms.sum())
