"""Slow, obviously-correct reference computations used as test oracles.

Nothing here imports the library: polynomials are plain dicts and
partitions are enumerated directly.
"""

from functools import lru_cache


def pmul(f, g, limit=None):
    out = {}
    for i, a in f.items():
        for j, b in g.items():
            if limit is None or i + j <= limit:
                out[i + j] = out.get(i + j, 0) + a * b
    return {k: v for k, v in out.items() if v}


def padd(f, g, c=1):
    out = dict(f)
    for k, v in g.items():
        out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def pshift(f, e):
    return {k + e: v for k, v in f.items()}


@lru_cache(maxsize=None)
def _binom(m, n):
    # Pascal: [m,n] = [m-1,n-1] + q^n [m-1,n]
    if n < 0 or m < n:
        return ()
    if n == 0 or n == m:
        return ((0, 1),)
    return tuple(sorted(padd(dict(_binom(m - 1, n - 1)), pshift(dict(_binom(m - 1, n)), n)).items()))


def binom(m, n, k=1):
    return {k * e: v for e, v in _binom(m, n)}


def inv_poch(k, length, limit):
    """1/(q^k; q^k)_length as a dict through ``limit`` (product of geometric series)."""
    out = {0: 1}
    for i in range(1, length + 1):
        step = k * i
        geo = {step * j: 1 for j in range(limit // step + 1)}
        out = pmul(out, geo, limit)
    return out


def partitions(n, parts):
    """All partitions of n into the allowed parts, as non-increasing tuples."""
    parts = sorted(set(p for p in parts if 1 <= p <= n), reverse=True)

    def go(rem, i):
        if rem == 0:
            yield ()
            return
        for j in range(i, len(parts)):
            p = parts[j]
            if p <= rem:
                for rest in go(rem - p, j):
                    yield (p,) + rest

    return list(go(n, 0))


def residue_counts(modulus, residues, limit):
    return [len(partitions(n, [p for p in range(1, n + 1) if (p % modulus or modulus) in residues]))
            for n in range(limit + 1)]


def double_sum(a, b, limit):
    """sum_{m,n} q^(m^2+3mn+3n^2+am+bn) / ((q)_m (q^3;q^3)_n) by brute force."""
    total = {}
    for n in range(0, limit + 10):
        for m in range(0, 2 * limit + 10):
            e = m * m + 3 * m * n + 3 * n * n + a * m + b * n
            if e > limit:
                continue
            term = pmul(inv_poch(1, m, limit - e), inv_poch(3, n, limit - e), limit - e)
            total = padd(total, pshift(term, e))
    return total


def gap_partitions(n, max_part, min_part, rule, min_part_once=False):
    """Partitions of n (parts increasing) with distance-2 gap 3 and the
    close-pair congruence, by filtering every partition of n."""
    out = []
    for p in partitions(n, range(min_part, (max_part if max_part is not None else n) + 1)):
        parts = tuple(sorted(p))
        if any(c - a < 3 for a, c in zip(parts, parts[2:])):
            continue
        if any(c - a <= 1 and (a + c) % 3 != rule for a, c in zip(parts, parts[1:])):
            continue
        if min_part_once and parts.count(min_part) > 1:
            continue
        out.append(parts)
    return out
