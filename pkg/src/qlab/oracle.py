"""Brute-force partition counts that reproduce the series coefficients.

Gap partitions are written with parts increasing, p1 <= p2 <= ... , and obey

* every part lies in [min_part, max_part];
* parts at distance two differ by at least ``distance2_gap``;
* two neighbours differing by at most 1 have sum congruent to
  ``close_pair_rule`` mod 3.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

MAX_N = 80


@dataclass(frozen=True)
class GapConditionSpec:
    variant: tuple[int, int]
    min_part: int
    close_pair_rule: int
    max_part: int | None = None
    distance2_gap: int = 3
    # the smallest part may appear at most this many times
    min_part_multiplicity: int | None = None
    # drop (2,2,5,5,...,N,N) when N = 2 mod 3; the plain finite S(1,1)
    # formula has no term for it (the starred reading does)
    exclude_pair_ladder: bool = False

    def __post_init__(self) -> None:
        if self.close_pair_rule not in (0, 1, 2):
            raise ValueError("close_pair_rule must be 0, 1 or 2")
        if self.min_part < 1:
            raise ValueError("parts are positive")
        if self.distance2_gap < 1:
            raise ValueError("distance2_gap must be positive")

    def bounded(self, max_part: int | None) -> "GapConditionSpec":
        return GapConditionSpec(self.variant, self.min_part, self.close_pair_rule, max_part,
                                self.distance2_gap, self.min_part_multiplicity,
                                self.exclude_pair_ladder)


# (a, b) -> (min_part, close_pair_rule)
_VARIANTS = {
    (0, -1): (1, 2),
    (0, 0): (1, 0),
    (1, 1): (2, 1),
    (1, 2): (2, 2),
    (2, 3): (3, 0),
    (2, 4): (3, 1),
    (3, 5): (4, 2),
    (3, 6): (4, 0),
    (1, 3): (2, 0),
    (0, 2): (1, 2),
}

VARIANTS = tuple(_VARIANTS)


def parse_variant(variant) -> tuple[int, int]:
    """Accept (a, b), "a,b" or "S(a,b)"."""
    if isinstance(variant, str):
        m = re.fullmatch(r"\s*(?:S\()?\s*(-?\d+)\s*,\s*(-?\d+)\s*\)?\s*", variant)
        if not m:
            raise ValueError(f"cannot read variant {variant!r}; expected e.g. S(0,-1)")
        variant = (int(m.group(1)), int(m.group(2)))
    pair = (int(variant[0]), int(variant[1]))
    if pair not in _VARIANTS:
        raise ValueError(f"unknown variant S{pair}; known: {VARIANTS}")
    return pair


def variant_spec(variant, max_part: int | None = None) -> GapConditionSpec:
    pair = parse_variant(variant)
    min_part, rule = _VARIANTS[pair]
    return GapConditionSpec(
        pair, min_part, rule, max_part,
        min_part_multiplicity=1 if pair == (0, 2) else None,
        exclude_pair_ladder=pair == (1, 1),
    )


def _ladder_weight(spec: GapConditionSpec) -> int | None:
    N = spec.max_part
    if not spec.exclude_pair_ladder or N is None or (N + 1) % 3:
        return None
    k = (N + 1) // 3
    return k * (3 * k + 1)


def is_gap_partition(spec: GapConditionSpec, parts: tuple[int, ...]) -> bool:
    """Check an increasing tuple against every condition of ``spec``."""
    if any(b < a for a, b in zip(parts, parts[1:])):
        return False
    if parts and parts[0] < spec.min_part:
        return False
    if parts and spec.max_part is not None and parts[-1] > spec.max_part:
        return False
    for a, b in zip(parts, parts[2:]):
        if b - a < spec.distance2_gap:
            return False
    for a, b in zip(parts, parts[1:]):
        if b - a <= 1 and (a + b) % 3 != spec.close_pair_rule:
            return False
    if spec.min_part_multiplicity is not None and parts.count(spec.min_part) > spec.min_part_multiplicity:
        return False
    if _ladder_weight(spec) is not None:
        k = (spec.max_part + 1) // 3
        if parts == tuple(p for j in range(1, k + 1) for p in (3 * j - 1, 3 * j - 1)):
            return False
    return True


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > MAX_N:
        raise ValueError(f"exhaustive enumeration is capped at n={MAX_N}")


def _next_parts(spec: GapConditionSpec, rem: int, prev2: int, prev1: int, low_count: int):
    top = rem if spec.max_part is None else min(rem, spec.max_part)
    lo = max(spec.min_part, prev1)
    if prev2:
        lo = max(lo, prev2 + spec.distance2_gap)
    for p in range(lo, top + 1):
        if prev1 and p - prev1 <= 1 and (p + prev1) % 3 != spec.close_pair_rule:
            continue
        c = low_count + (p == spec.min_part)
        if spec.min_part_multiplicity is not None and c > spec.min_part_multiplicity:
            continue
        yield p, c


def count_gap_partitions(spec: GapConditionSpec, n: int) -> int:
    _check_n(n)

    @lru_cache(maxsize=None)
    def go(rem: int, prev2: int, prev1: int, low_count: int) -> int:
        if rem == 0:
            return 1
        return sum(go(rem - p, prev1, p, c) for p, c in _next_parts(spec, rem, prev2, prev1, low_count))

    total = go(n, 0, 0, 0)
    if n == _ladder_weight(spec):
        total -= 1
    return total


def enumerate_gap_partitions(spec: GapConditionSpec, n: int) -> Iterator[tuple[int, ...]]:
    """All admissible partitions of n, parts increasing, in lexicographic order."""
    _check_n(n)
    ladder = _ladder_weight(spec)

    def go(rem, prev2, prev1, low_count, acc):
        if rem == 0:
            yield tuple(acc)
            return
        for p, c in _next_parts(spec, rem, prev2, prev1, low_count):
            acc.append(p)
            yield from go(rem - p, prev1, p, c, acc)
            acc.pop()

    for parts in go(n, 0, 0, 0, []):
        if n == ladder and not is_gap_partition(spec, parts):
            continue
        yield parts


def gap_series(spec: GapConditionSpec, order: int) -> list[int]:
    return [count_gap_partitions(spec, n) for n in range(order + 1)]


@dataclass(frozen=True)
class ResidueClassSpec:
    modulus: int
    residues: frozenset[int]

    def __init__(self, modulus: int, residues) -> None:
        res = frozenset(int(r) for r in residues)
        if modulus < 1:
            raise ValueError("modulus must be positive")
        if not res:
            raise ValueError("at least one residue is required")
        if any(not 1 <= r <= modulus for r in res):
            raise ValueError(f"residues must lie in 1..{modulus}")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "residues", res)

    def allows(self, part: int) -> bool:
        r = part % self.modulus
        return (r or self.modulus) in self.residues


def residue_series(spec: ResidueClassSpec, order: int) -> list[int]:
    """Counts of partitions of 0..order into allowed parts."""
    ways = [1] + [0] * order
    for p in range(1, order + 1):
        if spec.allows(p):
            for i in range(p, order + 1):
                ways[i] += ways[i - p]
    return ways


def count_residue_partitions(spec: ResidueClassSpec, n: int) -> int:
    if n < 0:
        raise ValueError("n must be non-negative")
    return residue_series(spec, n)[n]


# (a, b) -> (first pair, singleton offset); pairs advance by 3, singletons by 2
_MINIMAL = {
    (0, -1): ((1, 1), 1),
    (0, 0): ((1, 2), 1),
    (1, 1): ((2, 2), 2),
    (1, 2): ((2, 3), 2),
    (2, 3): ((3, 3), 3),
    (2, 4): ((3, 4), 3),
    (3, 5): ((4, 4), 4),
    (3, 6): ((4, 5), 4),
}


def minimal_configuration(variant, m: int, n: int) -> tuple[int, ...]:
    """Smallest partition with n pairs and m singletons, parts increasing."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    pair = parse_variant(variant)
    if pair not in _MINIMAL:
        raise ValueError(f"no minimal configuration is known for variant S{pair}")
    (p, p2), offset = _MINIMAL[pair]
    parts: list[int] = []
    for k in range(n):
        parts += [p + 3 * k, p2 + 3 * k]
    parts += [3 * n + offset + 2 * j for j in range(m)]
    return tuple(parts)
