"""Compiled searches.

The two exhaustive ones are plain iterative depth-first searches over 64-bit
masks, so they are limited to small instances (at most 62 positions / group
elements).  ``orthomorphism_walk`` is a seeded local search for large groups.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _lowest_bit(x):
    i = 0
    while not (x >> i) & 1:
        i += 1
    return i


@njit(cache=True)
def langford_count(k, a, b, limit, budget):
    """Count k-extended Langford sequences (order a, defect b), up to ``limit``.

    The leftmost empty position must hold the smaller entry of some pair,
    so branching is over the unused gap placed there.  Returns
    (count, nodes, s) where s holds the first sequence found (1-based).
    Nodes == -1 signals the budget was exhausted.
    """
    n = 2 * a + 1
    s = np.zeros(a + 1, np.int64)
    first = np.zeros(a + 1, np.int64)
    if a == 0:
        return (1 if k == 1 else 0), 0, first
    full = ((1 << (n + 1)) - 1) ^ 1
    occ = np.int64(1) << k
    used = np.int64(0)
    stack_p = np.zeros(a + 1, np.int64)
    stack_i = np.zeros(a + 1, np.int64)
    count = 0
    nodes = 0
    depth = 0
    stack_p[0] = _lowest_bit(~occ & full)
    stack_i[0] = 1
    while depth >= 0:
        p = stack_p[depth]
        i = stack_i[depth]
        q = 0
        placed = False
        while i <= a:
            if not (used >> i) & 1:
                q = p + i + b - 1
                if q > n:
                    break
                if not (occ >> q) & 1:
                    placed = True
                    break
            i += 1
        if placed:
            nodes += 1
            if nodes > budget:
                return count, -1, first
            stack_i[depth] = i + 1
            occ |= (np.int64(1) << p) | (np.int64(1) << q)
            used |= np.int64(1) << i
            s[i] = p
            if depth + 1 == a:
                if count == 0:
                    first[:] = s
                count += 1
                occ ^= (np.int64(1) << p) | (np.int64(1) << q)
                used ^= np.int64(1) << i
                if count >= limit:
                    return count, nodes, first
            else:
                depth += 1
                stack_p[depth] = _lowest_bit(~occ & full)
                stack_i[depth] = 1
        else:
            depth -= 1
            if depth >= 0:
                pi = stack_i[depth] - 1
                pp = stack_p[depth]
                occ ^= (np.int64(1) << pp) | (np.int64(1) << (pp + pi + b - 1))
                used ^= np.int64(1) << pi
    return count, nodes, first


@njit(cache=True)
def orthomorphism_search(add, neg, budget):
    """Find phi with phi(0)=0, phi and phi - id both bijective.

    ``add`` is the Cayley table of the group on indices 0..n-1 (0 = zero).
    Returns (found, nodes, phi); nodes == -1 means the budget ran out.
    """
    n = add.shape[0]
    phi = np.zeros(n, np.int64)
    if n == 1:
        return True, 0, phi
    used_val = np.int64(1)
    used_diff = np.int64(1)
    nxt = np.zeros(n, np.int64)
    x = 1
    nxt[1] = 1
    nodes = 0
    while x >= 1:
        y = nxt[x]
        placed = False
        while y < n:
            if not (used_val >> y) & 1:
                d = add[y, neg[x]]
                if not (used_diff >> d) & 1:
                    placed = True
                    break
            y += 1
        if placed:
            nodes += 1
            if nodes > budget:
                return False, -1, phi
            phi[x] = y
            nxt[x] = y + 1
            used_val |= np.int64(1) << y
            used_diff |= np.int64(1) << add[y, neg[x]]
            if x == n - 1:
                return True, nodes, phi
            x += 1
            nxt[x] = 1
        else:
            x -= 1
            if x >= 1:
                py = phi[x]
                used_val ^= np.int64(1) << py
                used_diff ^= np.int64(1) << add[py, neg[x]]
    return False, nodes, phi


@njit(cache=True)
def orthomorphism_walk(add, neg, seed, max_steps):
    """Random walk towards phi with phi(0)=0, phi and phi - id bijective.

    Each step hands a missing difference to an element whose difference is
    repeated, swapping images with whichever element held the needed value.
    The number of repeats never increases.  Returns (found, steps, phi).
    """
    np.random.seed(seed)
    n = add.shape[0]
    phi = np.arange(n)
    for i in range(n - 1, 1, -1):
        j = 1 + np.random.randint(i)
        phi[i], phi[j] = phi[j], phi[i]
    inv = np.zeros(n, np.int64)
    cnt = np.zeros(n, np.int64)
    for x in range(n):
        inv[phi[x]] = x
        cnt[add[phi[x], neg[x]]] += 1
    excess = 0
    for d in range(n):
        if cnt[d] > 1:
            excess += cnt[d] - 1
    for step in range(max_steps):
        if excess == 0:
            return True, step, phi
        x1 = 1 + np.random.randint(n - 1)
        while cnt[add[phi[x1], neg[x1]]] < 2:
            x1 = 1 + np.random.randint(n - 1)
        d = np.random.randint(n)
        while cnt[d] > 0:
            d = np.random.randint(n)
        y = add[d, x1]
        x2 = inv[y]
        if x2 == 0:
            continue
        a1 = add[phi[x1], neg[x1]]
        a2 = add[phi[x2], neg[x2]]
        b2 = add[phi[x1], neg[x2]]
        cnt[a1] -= 1
        cnt[a2] -= 1
        cnt[d] += 1
        cnt[b2] += 1
        excess += -1 + (-1 if cnt[a2] >= 1 else 0) + (1 if cnt[b2] >= 2 else 0)
        py = phi[x1]
        phi[x1] = y
        phi[x2] = py
        inv[y] = x1
        inv[py] = x2
    return excess == 0, max_steps, phi
