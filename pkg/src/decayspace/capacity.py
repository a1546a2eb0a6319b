"""Capacity scheduling, partition lemmas and their exact oracle.

capacity_uniform is a one-pass greedy scheduler for uniform power: it
scans links from shortest to longest, keeps a working set X of links
that stay mutually separated and exchange little affectance, then
drops the overloaded members. The output is feasible by construction
and loses at most half of X.

The partition helpers split a feasible or separated set into a
bounded number of classes with a stronger property each: higher
feasibility margin (signal_strengthen) or wider separation
(separation_strengthen). amicable_subset chains them to find a large
subset whose members stay lightly loaded even from outside.

capacity_oracle enumerates subsets exhaustively and is the ground
truth for small systems.
"""

import itertools
import math

import numpy as np
from dataclasses import dataclass

from .spaces import NODE_SPACE, quasi_distances
from .links import (
    affectance_matrix,
    drowned_links,
    is_feasible,
    link_distance_matrix,
    _index_list,
    _noise_margin,
    _separation_violation,
    check_separation_set,
)


@dataclass
class CapacityResult:
    selected: tuple
    intermediate: tuple
    opt: object = None
    ratio: object = None
    skipped: tuple = ()


@dataclass
class Partition:
    classes: tuple
    certificate: dict
    bound: int

    def members(self):
        out = []
        for cls in self.classes:
            out.extend(cls)
        return tuple(sorted(out))


def _default_quasi(sys, zeta):
    if sys.space.mode == NODE_SPACE:
        return quasi_distances(sys.space, zeta)
    # cross-link tables are not triangle-consistent in general; the
    # rescaling is still the right length scale for separation tests
    return quasi_distances(sys.space, zeta, check=False)


def capacity_uniform(sys, zeta, quasi=None):
    """One-pass greedy capacity under uniform power.

    Links are scanned by non-decreasing own decay (ties by index). A
    link v joins the working set X when it is zeta/2-separated from X
    (link distance at least zeta/2 times v's own length) and its
    affectance exchange with X, capped in both directions, is at most
    1/2. The result keeps the members of X whose capped in-affectance
    within X is at most 1; at least half of X survives, and the
    survivors are feasible. Links drowned by noise are skipped and
    reported in the result.

    Returns a CapacityResult; opt and ratio stay None until filled in
    against capacity_oracle by the caller.
    """
    if sys.power.kind != "uniform":
        raise ValueError("capacity_uniform is defined for uniform power")
    if not (zeta >= 1) or not math.isfinite(zeta):
        raise ValueError("zeta must be finite and at least 1")
    if quasi is None:
        quasi = _default_quasi(sys, zeta)
    skipped = drowned_links(sys)
    dead = set(skipped)
    A = affectance_matrix(sys)
    LD = link_distance_matrix(sys, quasi)
    lengths = sys.link_lengths(quasi)
    X = []
    for v in sys.order():
        v = int(v)
        if v in dead:
            continue
        if X:
            if not np.all(LD[v, X] >= (zeta / 2.0) * lengths[v]):
                continue
            if A[v, X].sum() + A[X, v].sum() > 0.5:
                continue
        X.append(v)
    if X:
        Xa = np.array(X)
        S = [v for v in X if A[Xa, v].sum() <= 1.0]
    else:
        S = []
    return CapacityResult(
        selected=tuple(sorted(S)),
        intermediate=tuple(sorted(X)),
        skipped=skipped,
    )


def capacity_oracle(sys, max_n=20):
    """Exhaustive maximum feasible subset, for small systems.

    Enumerates subsets in decreasing size, lexicographic within a
    size, so the first feasible subset found is the lexicographically
    least maximizer. Subsets containing a pair whose one-on-one
    uncapped affectance already exceeds 1 are pruned. Worst case is
    2**n subset checks; max_n caps n. Returns (size, members).
    """
    n = sys.n_links
    if n == 0:
        return 0, ()
    if n > max_n:
        raise ValueError(
            "%d links exceed max_n=%d; sample the system down or raise the cap"
            % (n, max_n)
        )
    margin = _noise_margin(sys)
    candidates = [v for v in range(n) if margin[v] > 0]
    if not candidates:
        return 0, ()
    raw = affectance_matrix(sys, capped=False)
    pairbad = raw > 1.0
    pairbad = pairbad | pairbad.T
    np.fill_diagonal(pairbad, False)
    for k in range(len(candidates), 0, -1):
        for combo in itertools.combinations(candidates, k):
            ix = np.ix_(combo, combo)
            if pairbad[ix].any():
                continue
            if np.all(raw[ix].sum(axis=0) <= 1.0):
                return k, tuple(combo)
    return 0, ()


def _first_fit_partition_error(S, p, q):
    raise RuntimeError(
        "first-fit exceeded its class bound on %r with p=%g, q=%g; "
        "this contradicts the pigeonhole guarantee, please report" % (S, p, q)
    )


def signal_strengthen(sys, S, p, q):
    """Split a p-feasible set into at most ceil(2q/p)**2 q-feasible classes.

    Two first-fit passes with m = ceil(2q/p) classes each. The first
    walks links from longest to shortest and admits a link to the
    first class whose current members (all at least as long) load it
    with at most 1/(2q) of uncapped in-affectance. The second walks
    each class in exactly the reversed order and bounds the load from
    the other side the same way. Every pair of classmates is ordered
    by one of the two passes, so each final member carries classwise
    in-affectance at most 1/q, i.e. every class is q-feasible. A class
    always accepts: m simultaneous rejections would certify in-affectance
    above m/(2q) >= 1/p, contradicting p-feasibility. Input that is
    already q-feasible returns a single class.
    """
    S = _index_list(S)
    if not S:
        raise ValueError("cannot partition an empty set")
    if not (p > 0 and q > 0):
        raise ValueError("p and q must be positive")
    if q < p:
        raise ValueError("q must be at least p")
    ok, wit = is_feasible(sys, S, K=p)
    if not ok:
        raise ValueError("input set is not %g-feasible (worst link %d)" % (p, wit))
    m = math.ceil(2.0 * q / p)
    bound = m * m
    certificate = {"kind": "feasibility", "level": float(q)}
    if is_feasible(sys, S, K=q)[0]:
        return Partition(classes=(tuple(S),), certificate=certificate, bound=bound)
    raw = affectance_matrix(sys, capped=False)
    limit = 1.0 / (2.0 * q)
    own = sys.own_decays()
    longest_first = sorted(S, key=lambda v: (-own[v], v))
    classes = [[] for _ in range(m)]
    for v in longest_first:
        for cls in classes:
            if raw[cls, v].sum() <= limit:
                cls.append(v)
                break
        else:
            _first_fit_partition_error(S, p, q)
    final = []
    for cls in classes:
        if not cls:
            continue
        subs = [[] for _ in range(m)]
        for v in reversed(cls):
            for sub in subs:
                if raw[sub, v].sum() <= limit:
                    sub.append(v)
                    break
            else:
                _first_fit_partition_error(S, p, q)
        final.extend(tuple(sorted(sub)) for sub in subs if sub)
    for cls in final:
        if not is_feasible(sys, cls, K=q)[0]:
            _first_fit_partition_error(S, p, q)
    return Partition(classes=tuple(final), certificate=certificate, bound=bound)


def separation_strengthen(sys, quasi, S, tau, eta):
    """Split a tau-separated set into eta-separated classes.

    Two links clash when their link distance is below eta times the
    longer one's length, so a clash-free class is mutually
    eta-separated. Ranking links from longest to shortest, the class
    count never exceeds one plus the largest number of shorter
    clashing links any member has (its forward degree); that bound is
    met by first-fit coloring from the shortest link upward, since
    each link only competes with the shorter clashers already colored.
    Classes are re-verified before returning.
    """
    S = _index_list(S)
    if not S:
        raise ValueError("cannot partition an empty set")
    if not (tau > 0):
        raise ValueError("tau must be positive")
    if not (eta >= tau):
        raise ValueError("eta must be at least tau")
    bad = _separation_violation(sys, quasi, S, tau)
    if bad is not None:
        raise ValueError(
            "input set is not %g-separated (links %d and %d)" % (tau, bad[0], bad[1])
        )
    certificate = {"kind": "separation", "level": float(eta)}
    if len(S) == 1:
        return Partition(classes=(tuple(S),), certificate=certificate, bound=1)
    LD = link_distance_matrix(sys, quasi)
    lengths = sys.link_lengths(quasi)
    k = len(S)
    sub_ld = LD[np.ix_(S, S)]
    pair_len = np.maximum.outer(lengths[S], lengths[S])
    clash = sub_ld < eta * pair_len
    np.fill_diagonal(clash, False)
    longest_first = sorted(range(k), key=lambda i: (-lengths[S[i]], S[i]))
    rank = {i: pos for pos, i in enumerate(longest_first)}
    fwd = [
        sum(1 for j in range(k) if clash[i, j] and rank[j] > rank[i])
        for i in range(k)
    ]
    bound = max(fwd) + 1
    color = {}
    for i in reversed(longest_first):
        used = {color[j] for j in range(k) if clash[i, j] and j in color}
        c = 0
        while c in used:
            c += 1
        color[i] = c
    n_colors = max(color.values()) + 1
    classes = []
    for c in range(n_colors):
        cls = tuple(sorted(S[i] for i in range(k) if color[i] == c))
        if cls:
            classes.append(cls)
    if len(classes) > bound:
        raise RuntimeError("coloring exceeded its degeneracy bound, please report")
    for cls in classes:
        if not check_separation_set(sys, quasi, cls, eta):
            raise RuntimeError("a color class failed its separation level, please report")
    return Partition(classes=tuple(classes), certificate=certificate, bound=bound)


def check_onezetasep(sys, quasi, zeta, S):
    """Separation consequence of strong feasibility, as a testable claim.

    Under uniform power, a set that is e^2/beta-feasible must be
    1/zeta-separated. Returns ("ok", None) when the conclusion holds,
    ("violation", (v, w)) with a counterexample pair when it fails,
    and ("inapplicable", None) when the hypothesis does not hold for S.
    """
    if sys.power.kind != "uniform":
        raise ValueError("defined for uniform power")
    if not (zeta >= 1):
        raise ValueError("zeta must be at least 1")
    S = _index_list(S)
    if len(S) <= 1:
        return ("ok", None)
    K = math.e ** 2 / sys.params.beta
    if not is_feasible(sys, S, K=K)[0]:
        return ("inapplicable", None)
    pair = _separation_violation(sys, quasi, S, 1.0 / zeta)
    if pair is None:
        return ("ok", None)
    return ("violation", pair)


def amicable_subset(sys, quasi, zeta, S):
    """Large subset of a feasible set that stays lightly loaded.

    Pipeline: strengthen feasibility to level e^2/beta and keep the
    largest class; strengthen its separation from 1/zeta to zeta and
    keep the largest class Shat; finally keep the members of Shat
    whose capped out-affectance onto Shat is at most 2. Markov's
    inequality guarantees at least half of Shat survives. Returns
    (members, diagnostics) where diagnostics records stage sizes, the
    shrink factor and the worst capped out-affectance any link of the
    whole system puts on the result.
    """
    if sys.power.kind != "uniform":
        raise ValueError("defined for uniform power")
    if not (zeta >= 1) or not math.isfinite(zeta):
        raise ValueError("zeta must be finite and at least 1")
    S = _index_list(S)
    if not S:
        raise ValueError("need a non-empty feasible set")
    ok, wit = is_feasible(sys, S)
    if not ok:
        raise ValueError("input set is infeasible (worst link %d)" % wit)
    q_target = math.e ** 2 / sys.params.beta
    if q_target > 1.0:
        part1 = signal_strengthen(sys, S, p=1.0, q=q_target)
        stage1 = max(part1.classes, key=len)
        n_classes1 = len(part1.classes)
    else:
        # beta so large that plain feasibility already implies the
        # strengthened level; keep the whole set
        stage1 = tuple(S)
        n_classes1 = 1
    part2 = separation_strengthen(sys, quasi, stage1, tau=1.0 / zeta, eta=zeta)
    shat = max(part2.classes, key=len)
    n_classes2 = len(part2.classes)
    A = affectance_matrix(sys)
    shat_arr = np.array(shat)
    out_load = A[shat_arr][:, shat_arr].sum(axis=1)
    result = tuple(v for v, load in zip(shat, out_load) if load <= 2.0)
    if 2 * len(result) < len(shat):
        raise RuntimeError("survivor count fell below half, please report")
    if result:
        res_arr = np.array(result)
        worst_out = float(A[:, res_arr].sum(axis=1).max())
    else:
        worst_out = 0.0
    diagnostics = {
        "input_size": len(S),
        "stage1_size": len(stage1),
        "stage1_classes": n_classes1,
        "stage2_size": len(shat),
        "stage2_classes": n_classes2,
        "output_size": len(result),
        "shrink": float(len(S)) / len(result) if result else float("inf"),
        "max_out_affectance": worst_out,
    }
    return result, diagnostics
