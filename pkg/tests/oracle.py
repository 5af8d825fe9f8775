"""Independent brute-force evaluator used to cross-check the valuation engine.

Deliberately written with plain Python loops over complex numbers,
recomputing windows, bins, probabilities and scores from scratch.  The three
elementary float operations with implementation-defined last-ulp rounding
(complex division, modulus, angle) go through numpy scalars so that both
sides round identically; everything built on top of them is independent.
"""

import math
from bisect import bisect_right

import numpy as np


def _divide(num, den):
    return complex(np.complex128(num) / np.complex128(den))


def _modulus(z):
    return float(np.abs(np.complex128(z)))


def _phase(z):
    return float(np.angle(np.complex128(z)))


def transform(values, conv_len, chain, proj):
    """Apply one operator to a list of complex numbers, returning real values."""
    out = list(values)
    if len(out) < conv_len:
        return []
    out = [sum(out[t : t + conv_len], 0j) for t in range(len(out) - conv_len + 1)]
    for step in reversed(chain):
        if len(out) < 2:
            return []
        if step == "D":
            out = [out[t] - out[t - 1] for t in range(1, len(out))]
        else:
            out = [
                _divide(out[t], out[t - 1]) if out[t - 1] != 0 else 0j
                for t in range(1, len(out))
            ]
    reals = []
    for z in out:
        if proj == "re":
            reals.append(z.real)
        elif proj == "im":
            reals.append(z.imag)
        elif proj == "mod":
            reals.append(_modulus(z))
        else:
            reals.append(_phase(z) if z != 0 else 0.0)
    return reals


def quantile_boundaries(values, k):
    vals = sorted(values)
    n = len(vals)
    bounds = []
    for j in range(1, k):
        b = vals[min(math.ceil(j * n / k), n - 1)]
        if b > vals[0] and (not bounds or b > bounds[-1]):
            bounds.append(b)
    return bounds


def probabilities(values, bounds):
    counts = [0] * (len(bounds) + 1)
    for v in values:
        counts[bisect_right(bounds, v)] += 1
    total = len(values)
    if total == 0:
        return [0.0] * len(counts)
    return [c / total for c in counts]


def interval_score(p_s, p_g, eps, mode):
    if mode == "indicator":
        return 1.0 if p_s > 0 else 0.0
    return math.log(max(p_s, eps) / max(p_g, eps))


def prolongation_value(special, general, ops, k, eps, mode, prolonged):
    """Mean interval score of ``prolonged`` under a model built from scratch.

    ``special``, ``general`` and ``prolonged`` are lists of complex numbers;
    ``ops`` is a list of (conv_len, chain, proj-string) tuples.
    """
    total = 0.0
    count = 0
    for conv_len, chain, proj in ops:
        min_len = conv_len + len(chain)
        s_vals = transform(special, conv_len, chain, proj)
        if not s_vals or min_len > len(prolonged):
            continue
        g_vals = transform(general, conv_len, chain, proj)
        bounds = quantile_boundaries(g_vals, k)
        p_g = probabilities(g_vals, bounds)
        p_s = probabilities(s_vals, bounds)
        if not any(p > 0 for p in p_s):
            continue
        window = prolonged[len(prolonged) - min_len :]
        v = transform(window, conv_len, chain, proj)[0]
        b = bisect_right(bounds, v)
        total += interval_score(p_s[b], p_g[b], eps, mode)
        count += 1
    if count == 0:
        raise ValueError("no operator applies")
    return total / count
