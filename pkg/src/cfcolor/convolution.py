"""Subset convolution over the integer ring and the max-sum semiring.

Set functions on a ground set of size n are lists of length 2**n indexed by
bitmask.  In the max-sum versions ``NEG_INF`` stands for minus infinity.
"""

from __future__ import annotations

NEG_INF = float("-inf")
MAX_GROUND = 30


def _check(f, g, n):
    if n > MAX_GROUND:
        raise ValueError(f"ground set of size {n} exceeds {MAX_GROUND}")
    if len(f) != 1 << n or len(g) != 1 << n:
        raise ValueError("set functions must have length 2**n")


def _ranked_zeta(f, n):
    size = 1 << n
    pop = [bin(s).count("1") for s in range(size)]
    ranked = [[0] * size for _ in range(n + 1)]
    for s in range(size):
        ranked[pop[s]][s] = f[s]
    for layer in ranked:
        for i in range(n):
            bit = 1 << i
            for s in range(size):
                if s & bit:
                    layer[s] += layer[s ^ bit]
    return ranked, pop


def subset_convolution_ring(f, g, n):
    """h(Y) = sum over disjoint A, B with A | B = Y of f(A) * g(B), in O(2^n n^2) operations."""
    _check(f, g, n)
    size = 1 << n
    fz, pop = _ranked_zeta(f, n)
    gz, _ = _ranked_zeta(g, n)
    out = [0] * size
    for k in range(n + 1):
        layer = [sum(fz[i][s] * gz[k - i][s] for i in range(k + 1)) for s in range(size)]
        # Moebius inversion
        for i in range(n):
            bit = 1 << i
            for s in range(size):
                if s & bit:
                    layer[s] -= layer[s ^ bit]
        for s in range(size):
            if pop[s] == k:
                out[s] = layer[s]
    return out


def naive_subset_convolution_ring(f, g, n):
    out = [0] * (1 << n)
    for y in range(1 << n):
        a = y
        while True:
            out[y] += f[a] * g[y ^ a]
            if a == 0:
                break
            a = (a - 1) & y
    return out


def subset_convolution_maxsum(f, g, n):
    """h(Y) = max over disjoint A, B with A | B = Y of f(A) + g(B).

    Values are integers or ``NEG_INF``.  The max-sum problem is embedded in
    the ring version by mapping a value x to base**(x - min), with the base
    exceeding the number of summands, so the leading base-digit of each ring
    result encodes the maximum.
    """
    _check(f, g, n)
    lo_f = min((x for x in f if x != NEG_INF), default=None)
    lo_g = min((x for x in g if x != NEG_INF), default=None)
    if lo_f is None or lo_g is None:
        return [NEG_INF] * (1 << n)
    base = (1 << n) + 1
    fe = [0 if x == NEG_INF else base ** int(x - lo_f) for x in f]
    ge = [0 if x == NEG_INF else base ** int(x - lo_g) for x in g]
    ring = subset_convolution_ring(fe, ge, n)
    return [NEG_INF if r == 0 else _ilog(r, base) + lo_f + lo_g for r in ring]


def _ilog(r, base):
    """Largest e with base**e <= r, for r >= 1."""
    e = max(0, (r.bit_length() - 1) // base.bit_length())
    power = base**e
    while power * base <= r:
        power *= base
        e += 1
    return e


def naive_subset_convolution_maxsum(f, g, n):
    out = [NEG_INF] * (1 << n)
    for y in range(1 << n):
        a = y
        while True:
            out[y] = max(out[y], f[a] + g[y ^ a])
            if a == 0:
                break
            a = (a - 1) & y
    return out
