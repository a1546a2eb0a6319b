"""Small exact combinatorial searches shared by the diagnostics.

Branch-and-bound maximum independent set over bitmask adjacency, a
weighted variant, and greedy fallbacks past the exact size cutoff.
Witnesses are deterministic: the search branches include-first on the
lowest available vertex and only replaces the incumbent on a strict
improvement, so the reported optimum is the lexicographically least
one. Greedy results are lower bounds and are flagged as inexact by
the callers.
"""

import numpy as np


def _neighbor_masks(conflict):
    n = conflict.shape[0]
    masks = []
    for i in range(n):
        m = 0
        for j in np.nonzero(conflict[i])[0]:
            if j != i:
                m |= 1 << int(j)
        masks.append(m)
    return masks


def _mask_members(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _greedy_independent(conflict):
    n = conflict.shape[0]
    chosen = []
    for v in range(n):
        if not any(conflict[v, u] for u in chosen):
            chosen.append(v)
    return tuple(chosen)


def max_independent_set(conflict, exact_limit=24):
    """Largest conflict-free vertex set.

    conflict is a boolean adjacency matrix (diagonal ignored). Exact
    branch and bound up to exact_limit vertices, greedy first-fit by
    index beyond that. Returns (members, exact).
    """
    conflict = np.asarray(conflict, dtype=bool)
    n = conflict.shape[0]
    if n == 0:
        return (), True
    if n > exact_limit:
        return _greedy_independent(conflict), False
    masks = _neighbor_masks(conflict)
    best_size = 0
    best_mask = 0

    def dfs(avail, cur_mask, cur_size):
        nonlocal best_size, best_mask
        if avail == 0:
            if cur_size > best_size:
                best_size = cur_size
                best_mask = cur_mask
            return
        if cur_size + avail.bit_count() <= best_size:
            return
        v = (avail & -avail).bit_length() - 1
        bit = 1 << v
        dfs(avail & ~(bit | masks[v]), cur_mask | bit, cur_size + 1)
        dfs(avail & ~bit, cur_mask, cur_size)

    dfs((1 << n) - 1, 0, 0)
    return _mask_members(best_mask), True


def max_weight_independent_set(weights, conflict, exact_limit=24):
    """Heaviest conflict-free vertex set under positive weights.

    Returns (members, total_weight, exact). Exact branch and bound up
    to exact_limit vertices; beyond that a greedy pass in decreasing
    weight order (ties by index), which is a lower bound.
    """
    weights = np.asarray(weights, dtype=float)
    conflict = np.asarray(conflict, dtype=bool)
    n = conflict.shape[0]
    if n == 0:
        return (), 0.0, True
    if np.any(weights < 0):
        raise ValueError("weights must be non-negative")
    if n > exact_limit:
        order = sorted(range(n), key=lambda v: (-weights[v], v))
        chosen = []
        for v in order:
            if not any(conflict[v, u] for u in chosen):
                chosen.append(v)
        chosen = tuple(sorted(chosen))
        return chosen, float(weights[list(chosen)].sum()), False
    masks = _neighbor_masks(conflict)
    best_val = 0.0
    best_mask = 0

    def remaining_weight(avail):
        total = 0.0
        while avail:
            v = (avail & -avail).bit_length() - 1
            total += weights[v]
            avail &= avail - 1
        return total

    def dfs(avail, cur_mask, cur_val):
        nonlocal best_val, best_mask
        if avail == 0:
            if cur_val > best_val:
                best_val = cur_val
                best_mask = cur_mask
            return
        if cur_val + remaining_weight(avail) <= best_val:
            return
        v = (avail & -avail).bit_length() - 1
        bit = 1 << v
        dfs(avail & ~(bit | masks[v]), cur_mask | bit, cur_val + weights[v])
        dfs(avail & ~bit, cur_mask, cur_val)

    dfs((1 << n) - 1, 0, 0.0)
    members = _mask_members(best_mask)
    return members, float(best_val), True
