"""q-Pochhammer symbols, infinite products and Gaussian binomial coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .ring import (
    INT,
    Coefficient,
    Eisenstein,
    TruncLaurentSeries,
    TruncationError,
    invert_unit,
    reflect_exponents,
    ring_of,
    substitute_power,
)


@dataclass(frozen=True)
class PochhammerSpec:
    """``(coeff * q**exponent; q**base_power)_length``; ``length=None`` is infinite."""

    coeff: Coefficient = 1
    exponent: int = 1
    base_power: int = 1
    length: int | None = None

    def __post_init__(self) -> None:
        if self.base_power < 1:
            raise ValueError("base power must be positive")
        if self.length is not None and self.length < 0:
            raise ValueError("length must be non-negative")
        if self.length is None and self.exponent < 1:
            raise ValueError(
                f"infinite product with argument exponent {self.exponent} does not converge")


@dataclass(frozen=True)
class BinomSpec:
    """Gaussian binomial ``[top, bottom]`` in base ``q**base_power``.

    With ``star`` set, ``[-1, 0]`` evaluates to 1 instead of 0.
    """

    top: int
    bottom: int
    base_power: int = 1
    star: bool = False


def _times_factor(vals: list, lo: int, c: Coefficient, t: int, limit: int | None):
    """Multiply the window ``vals`` (lowest exponent ``lo``) by ``1 - c*q**t``."""
    if t >= 0:
        hi = lo + len(vals) - 1 + t
        if limit is not None:
            hi = min(hi, limit)
        zero = vals[0] * 0
        out = vals[: hi - lo + 1] + [zero] * max(0, hi - lo + 1 - len(vals))
        for i in range(len(out) - 1, t - 1, -1):
            src = vals[i - t] if i - t < len(vals) else zero
            if src:
                out[i] = out[i] - c * src
        return out, lo
    # negative step: the window grows downwards
    zero = vals[0] * 0
    out = [zero] * (-t) + list(vals)
    new_lo = lo + t
    for i, v in enumerate(vals):
        if v:
            out[i] = out[i] - c * v
    if limit is not None:
        out = out[: max(limit - new_lo + 1, 0)]
    return out, new_lo


def pochhammer(spec: PochhammerSpec, order: int | None = None) -> TruncLaurentSeries:
    """Expand the product ``prod_{i<n} (1 - c q^(e + k i))``.

    Finite products are exact unless ``order`` is given; infinite ones need
    ``order`` and drop every factor whose exponent exceeds it.
    """
    ring = ring_of(spec.coeff)
    one: Coefficient = Eisenstein(1) if ring != INT else 1
    if spec.length is None:
        if order is None:
            raise TruncationError("an infinite product needs a truncation order")
        count = 0 if spec.exponent > order else (order - spec.exponent) // spec.base_power + 1
    else:
        count = spec.length
    vals, lo = [one], 0
    for i in range(count):
        t = spec.exponent + spec.base_power * i
        # exponents only grow from here on, so the window's low end is final
        if order is not None and t > 0 and lo + t > order:
            break
        vals, lo = _times_factor(vals, lo, spec.coeff, t, order)
    return TruncLaurentSeries(vals, lo, order, ring)


def qpoch(exponent: int, base_power: int = 1, length: int | None = None, order: int | None = None,
          coeff: Coefficient = 1) -> TruncLaurentSeries:
    return pochhammer(PochhammerSpec(coeff, exponent, base_power, length), order)


def _divide_factor(vals: list[int], t: int) -> None:
    # in place: vals <- vals / (1 - q^t), truncated to the window length
    for i in range(t, len(vals)):
        vals[i] += vals[i - t]


def _normalize_pairs(pairs: Iterable[Sequence]) -> list[tuple[Coefficient, int, int]]:
    out = []
    for p in pairs:
        if len(p) == 2:
            out.append((1, int(p[0]), int(p[1])))
        elif len(p) == 3:
            out.append((p[0], int(p[1]), int(p[2])))
        else:
            raise ValueError(f"product factor {p!r} must be (exponent, modulus) or (coeff, exponent, modulus)")
    return out


def product(pairs: Iterable[Sequence], order: int) -> TruncLaurentSeries:
    """``prod_j (c_j q^(e_j); q^(m_j))_inf`` through ``order``."""
    result = None
    for c, e, m in _normalize_pairs(pairs):
        f = pochhammer(PochhammerSpec(c, e, m, None), order)
        if result is None:
            result = f
        else:
            if result.ring != f.ring:
                result, f = result.promote(), f.promote()
            result = result * f
    if result is None:
        return TruncLaurentSeries.one(order=order)
    return result


def inv_product(pairs: Iterable[Sequence], order: int) -> TruncLaurentSeries:
    """``1 / prod_j (c_j q^(e_j); q^(m_j))_inf`` through ``order``.

    ``pairs`` holds ``(exponent, modulus)`` items, optionally prefixed by a
    unit coefficient.
    """
    norm = _normalize_pairs(pairs)
    for _, e, _m in norm:
        if e < 1:
            raise ValueError("product exponents must be at least 1")
    if all(c == 1 and not isinstance(c, Eisenstein) for c, _, _ in norm):
        # integer fast path: divide by each factor in turn
        vals = [0] * (order + 1)
        vals[0] = 1
        for _, e, m in norm:
            t = e
            while t <= order:
                _divide_factor(vals, t)
                t += m
        return TruncLaurentSeries(vals, 0, order, INT)
    return invert_unit(product(norm, order), order)


def inv_product_via_inverse(pairs: Iterable[Sequence], order: int) -> TruncLaurentSeries:
    """Same value as :func:`inv_product`, always through ``invert_unit``."""
    return invert_unit(product(pairs, order), order)


# ---------------------------------------------------------------------------
# Gaussian binomials


@lru_cache(maxsize=None)
def _gauss_exact(top: int, bottom: int) -> tuple[int, ...]:
    """Coefficients of [top, bottom]_q for 0 <= bottom <= top."""
    k = min(bottom, top - bottom)
    base = top - k
    vals = [1]
    # after step i the running value is [base + i, i]_q
    for i in range(1, k + 1):
        t = base + i
        vals = vals + [0] * (t - i)
        for j in range(len(vals) - 1, t - 1, -1):
            vals[j] -= vals[j - t]
        # exact division by 1 - q^i
        for j in range(i, len(vals)):
            vals[j] += vals[j - i]
        while vals and vals[-1] == 0:
            vals.pop()
    return tuple(vals)


@lru_cache(maxsize=None)
def _inverse_qfactorial(k: int, length: int) -> tuple[int, ...]:
    """1/(q;q)_k truncated to ``length`` coefficients."""
    if k == 0:
        return (1,) + (0,) * (length - 1)
    vals = list(_inverse_qfactorial(k - 1, length))
    _divide_factor(vals, k)
    return tuple(vals)


@lru_cache(maxsize=None)
def gauss_truncated(top: int, bottom: int, limit: int) -> tuple[int, ...]:
    """Coefficients of q^0..q^limit of [top, bottom]_q (zero binomial -> empty)."""
    if bottom < 0 or top < bottom or limit < 0:
        return ()
    k = min(bottom, top - bottom)
    if k * (top - k) <= 2 * limit:
        full = _gauss_exact(top, k)
        return full[: limit + 1]
    # [top, k] = prod_{i=1..k} (1 - q^(top-k+i)) / (q;q)_k; numerator factors
    # above the limit cannot contribute
    length = limit + 1
    vals = list(_inverse_qfactorial(min(k, limit), length))
    for i in range(1, k + 1):
        t = top - k + i
        if t > limit:
            break
        for j in range(length - 1, t - 1, -1):
            vals[j] -= vals[j - t]
    while vals and vals[-1] == 0:
        vals.pop()
    return tuple(vals)


def gauss_value_is_one(top: int, bottom: int, star: bool) -> bool:
    return star and top == -1 and bottom == 0


def gauss_binom(spec: BinomSpec, order: int | None = None) -> TruncLaurentSeries:
    """Gaussian binomial as an exact polynomial in ``q**base_power``.

    Zero when ``bottom < 0`` or ``top < bottom``; the starred convention
    turns ``[-1, 0]`` into 1.  With ``order`` the result is truncated.
    """
    if gauss_value_is_one(spec.top, spec.bottom, spec.star):
        return TruncLaurentSeries.one(order=order)
    if spec.bottom < 0 or spec.top < spec.bottom:
        return TruncLaurentSeries.zero(order=order)
    if order is None:
        vals = _gauss_exact(spec.top, spec.bottom)
    else:
        vals = gauss_truncated(spec.top, spec.bottom, order // spec.base_power)
    f = TruncLaurentSeries(vals, 0, None)
    f = substitute_power(f, spec.base_power)
    return f if order is None else f.truncate(order)


def binom(top: int, bottom: int, base_power: int = 1, star: bool = False) -> TruncLaurentSeries:
    return gauss_binom(BinomSpec(top, bottom, base_power, star))


def binom_recurrence_check(n: int, m: int, which: int) -> bool:
    """Check one of the two Pascal-type recurrences for [n, m]_q exactly.

    which=3:  [n,m] = [n-1,m] + q^(n-m) [n-1,m-1]
    which=4:  [n,m] = [n-1,m-1] + q^m [n-1,m]
    """
    if n < 1:
        raise ValueError("recurrences need n >= 1")
    lhs = binom(n, m)
    if which == 3:
        rhs = binom(n - 1, m) + binom(n - 1, m - 1).shift(n - m)
    elif which == 4:
        rhs = binom(n - 1, m - 1) + binom(n - 1, m).shift(m)
    else:
        raise ValueError("which must be 3 or 4")
    return lhs == rhs


def reflect_binom_law(n: int, m: int) -> bool:
    """[n+m, m] evaluated at 1/q equals q^(-nm) [n+m, m]."""
    f = binom(n + m, m)
    return reflect_exponents(f) == f.shift(-n * m)


def pochhammer_reflection_law(e: int, n: int) -> bool:
    """(a; 1/q)_n = (1/a; q)_n (-a)^n q^(-n(n-1)/2) for a = q^e."""
    # (a; 1/q)_n is the reflection of (q^-e; q)_n
    lhs = reflect_exponents(qpoch(-e, 1, n))
    sign = -1 if n % 2 else 1
    rhs = qpoch(-e, 1, n).shift(e * n - n * (n - 1) // 2).scale(sign)
    return lhs == rhs


def bracket_product(c: Sequence[int], order: int) -> TruncLaurentSeries:
    """<c1,c2,c3,c4> = (q^45;q^45)_inf / ((q^3;q^3)_inf prod_j (q^cj, q^(45-cj); q^45)_inf)."""
    if len(c) != 4:
        raise ValueError("a bracket needs four entries")
    for cj in c:
        if not 1 <= cj <= 44:
            raise ValueError(f"bracket entry {cj} outside 1..44")
    pairs = [(3, 3)]
    for cj in c:
        pairs += [(cj, 45), (45 - cj, 45)]
    return qpoch(45, 45, None, order) * inv_product(pairs, order)
