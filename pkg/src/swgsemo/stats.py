"""Sample summaries and the two-sided Mann-Whitney U test.

Small samples (either side below 8) get an exact permutation p-value computed
by counting rank-sum arrangements; larger samples use the normal approximation
with tie correction and continuity correction.
"""

from __future__ import annotations

import math
from itertools import groupby

# below this smaller-sample size the exact distribution is enumerated
NORMAL_APPROX_MIN = 8


def summarize(sample) -> tuple[float, float]:
    """Arithmetic mean and sample standard deviation (k-1 denominator; 0 for k=1)."""
    values = [float(v) for v in sample]
    if not values:
        raise ValueError("empty sample")
    k = len(values)
    mean = math.fsum(values) / k
    if k == 1:
        return mean, 0.0
    var = math.fsum((v - mean) ** 2 for v in values) / (k - 1)
    return mean, math.sqrt(var)


def _midranks(pooled: list[float]) -> list[float]:
    order = sorted(range(len(pooled)), key=pooled.__getitem__)
    ranks = [0.0] * len(pooled)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        avg = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = avg
        i = j + 1
    return ranks


def _u_statistic(a: list[float], b: list[float]) -> tuple[float, list[float]]:
    pooled = a + b
    ranks = _midranks(pooled)
    n1 = len(a)
    r1 = math.fsum(ranks[:n1])
    u1 = r1 - n1 * (n1 + 1) / 2
    return u1, ranks


def _exact_p(a: list[float], b: list[float]) -> float:
    """Exact two-sided p by counting all C(n1+n2, n1) label assignments.

    Counting runs over doubled midranks (integers even under ties), binning
    arrangements by rank sum; U is a linear function of the rank sum, so this
    equals full enumeration.
    """
    u1, ranks = _u_statistic(a, b)
    n1 = len(a)
    doubled = [int(round(2 * r)) for r in ranks]
    total_sum = sum(doubled)
    # ways[k][s]: subsets of size k with doubled rank sum s
    ways = [[0] * (total_sum + 1) for _ in range(n1 + 1)]
    ways[0][0] = 1
    for d in doubled:
        for k in range(n1, 0, -1):
            row = ways[k]
            prev = ways[k - 1]
            for s in range(total_sum, d - 1, -1):
                if prev[s - d]:
                    row[s] += prev[s - d]
    du1 = int(round(2 * u1))
    offset = n1 * (n1 + 1)  # doubled U = doubled rank sum - n1(n1+1)
    c_le = 0
    c_ge = 0
    total = 0
    for s, w in enumerate(ways[n1]):
        if not w:
            continue
        total += w
        du = s - offset
        if du <= du1:
            c_le += w
        if du >= du1:
            c_ge += w
    return min(1.0, 2 * min(c_le, c_ge) / total)


def _normal_p(a: list[float], b: list[float]) -> float:
    u1, ranks = _u_statistic(a, b)
    n1, n2 = len(a), len(b)
    n = n1 + n2
    tie_term = 0.0
    for _, grp in groupby(sorted(a + b)):
        t = len(list(grp))
        tie_term += t**3 - t
    var = (n1 * n2 / 12) * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0:
        return 1.0  # every value tied: no evidence of a difference
    z = (abs(u1 - n1 * n2 / 2) - 0.5) / math.sqrt(var)
    if z < 0:
        z = 0.0
    return min(1.0, math.erfc(z / math.sqrt(2)))


def mann_whitney_u(a, b, method: str = "auto") -> float:
    """Two-sided Mann-Whitney U p-value for two independent samples.

    ``method`` is "auto" (exact when min(|a|, |b|) < 8, normal otherwise),
    "exact", or "normal". Symmetric in its arguments.
    """
    x = [float(v) for v in a]
    y = [float(v) for v in b]
    if not x or not y:
        raise ValueError("empty sample")
    if method == "auto":
        method = "exact" if min(len(x), len(y)) < NORMAL_APPROX_MIN else "normal"
    if method == "exact":
        return _exact_p(x, y)
    if method == "normal":
        return _normal_p(x, y)
    raise ValueError(f"unknown method: {method!r}")
