"""The double sums S(a,b;q), their named combinations and contiguous relations.

    S(a, b; q) = sum_{m,n >= 0} q^(m^2 + 3mn + 3n^2 + am + bn) / ((q;q)_m (q^3;q^3)_n)
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .qkit import inv_product, product
from .report import VerificationReport, compare_series
from .ring import OMEGA, OMEGA2, Eisenstein, TruncLaurentSeries, q

DEFAULT_ORDER = 500

BOX = range(0, 3)


@dataclass(frozen=True, order=True)
class SumSpec:
    a: int
    b: int

    def __str__(self) -> str:
        return f"S({self.a},{self.b})"


def _as_spec(spec) -> SumSpec:
    if isinstance(spec, SumSpec):
        return spec
    a, b = spec
    return SumSpec(int(a), int(b))


def _exponent(a: int, b: int, m: int, n: int) -> int:
    return m * m + 3 * m * n + 3 * n * n + a * m + b * n


def contributing_terms(a: int, b: int, order: int) -> list[tuple[int, int, int]]:
    """All (m, n, exponent) with exponent <= order.

    Each row n is convex in m, and the row minimum is bounded below by
    0.75 n^2 + (b - 1.5a) n - a^2/4, which is convex in n; both loops stop
    once they are past the vertex and above ``order``.
    """
    out = []
    n_vertex = max(0.0, (1.5 * a - b) / 1.5)
    n = 0
    while True:
        lower = 0.75 * n * n + (b - 1.5 * a) * n - a * a / 4
        if n > n_vertex and lower > order:
            break
        c = 3 * n + a
        m_vertex = max(0.0, -c / 2)
        m = 0
        while True:
            e = _exponent(a, b, m, n)
            if m > m_vertex and e > order:
                break
            if e <= order:
                out.append((m, n, e))
            m += 1
        n += 1
    return out


_S_CACHE: dict[tuple[int, int], TruncLaurentSeries] = {}
_S_LOCK = threading.Lock()


def _compute_s(a: int, b: int, order: int) -> TruncLaurentSeries:
    terms = contributing_terms(a, b, order)
    if not terms:
        return TruncLaurentSeries.zero(order=order)
    e_min = min(e for _, _, e in terms)
    length = order - e_min + 1
    m_max = max(m for m, _, _ in terms)
    # 1/(q;q)_m on the window, shared by all rows
    inv_fact = [[1] + [0] * (length - 1)]
    for m in range(1, m_max + 1):
        row = list(inv_fact[-1])
        for i in range(m, length):
            row[i] += row[i - m]
        inv_fact.append(row)
    by_row: dict[int, list[tuple[int, int]]] = {}
    for m, n, e in terms:
        by_row.setdefault(n, []).append((m, e))
    total = [0] * length
    for n in sorted(by_row):
        inner = [0] * length
        for m, e in by_row[n]:
            off = e - e_min
            src = inv_fact[m]
            for i in range(length - off):
                v = src[i]
                if v:
                    inner[off + i] += v
        for k in range(1, n + 1):
            step = 3 * k
            for i in range(step, length):
                inner[i] += inner[i - step]
        for i, v in enumerate(inner):
            total[i] += v
    return TruncLaurentSeries(total, e_min, order)


def S_series(spec, order: int = DEFAULT_ORDER) -> TruncLaurentSeries:
    """S(a,b;q) through ``order``; results are cached per (a, b)."""
    s = _as_spec(spec)
    key = (s.a, s.b)
    with _S_LOCK:
        hit = _S_CACHE.get(key)
    if hit is not None and hit.order >= order:
        return hit.truncate(order) if hit.order > order else hit
    value = _compute_s(s.a, s.b, order)
    with _S_LOCK:
        prev = _S_CACHE.get(key)
        if prev is None or prev.order < order:
            _S_CACHE[key] = value
    return value


def S(a: int, b: int, order: int = DEFAULT_ORDER) -> TruncLaurentSeries:
    return S_series(SumSpec(a, b), order)


# ---------------------------------------------------------------------------
# named combinations

KR_SUMS = {1: (0, 0), 2: (1, 3), 3: (2, 3), 4: (1, 2)}
KR_RESIDUES = {
    1: (1, 3, 6, 8),
    2: (2, 3, 6, 7),
    3: (3, 4, 5, 6),
    4: (2, 3, 5, 8),
    5: (1, 4, 6, 7),
}


def kr_combo(i: int, order: int = DEFAULT_ORDER) -> TruncLaurentSeries:
    """Sum side of the i-th modulus-9 identity written through S(a,b)."""
    if i in KR_SUMS:
        return S(*KR_SUMS[i], order)
    if i == 5:
        s24 = S(2, 4, order)
        return s24 + s24.shift(1) + S(3, 7, order).shift(2)
    raise ValueError("KR index must be 1..5")


def kr_product(i: int, order: int = DEFAULT_ORDER) -> TruncLaurentSeries:
    return inv_product([(r, 9) for r in KR_RESIDUES[i]], order)


def _conj_scalar(c: Eisenstein, conjugated: bool) -> Eisenstein:
    return c.conj() if conjugated else c


def hickerson_combo(which: int, conjugated: bool = False, order: int = DEFAULT_ORDER) -> TruncLaurentSeries:
    """S(1,1) - w q S(2,4)  (which=1)  or  S(0,-1) + w^2 S(0,2)  (which=2)."""
    if which == 1:
        head, tail, c, shift = (1, 1), (2, 4), -OMEGA, 1
    elif which == 2:
        head, tail, c, shift = (0, -1), (0, 2), OMEGA2, 0
    else:
        raise ValueError("which must be 1 or 2")
    c = _conj_scalar(c, conjugated)
    return S(*head, order).promote() + S(*tail, order).promote().shift(shift).scale(c)


# sign of the prefactor in the second product: the printed +w does not match
# the constant term 1 + w^2 = -w of the sum side
HICKERSON2_PREFACTOR = {"corrected": -OMEGA, "printed": OMEGA}


def hickerson_product(which: int, conjugated: bool = False, order: int = DEFAULT_ORDER,
                      reading: str = "corrected") -> TruncLaurentSeries:
    w, w2 = _conj_scalar(OMEGA, conjugated), _conj_scalar(OMEGA2, conjugated)
    if which == 1:
        num = product([(6, 9), (w, 1, 3), (w2, 3, 3)], order)
        return num * inv_product([(2, 3)], order).promote()
    if which == 2:
        unit = _conj_scalar(HICKERSON2_PREFACTOR[reading], conjugated)
        num = product([(3, 9), (w2, 2, 3), (w, 3, 3)], order)
        return (num * inv_product([(1, 3)], order).promote()).scale(unit)
    raise ValueError("which must be 1 or 2")


# ---------------------------------------------------------------------------
# contiguous relations


def relation_A_rhs(a: int, b: int, order: int) -> TruncLaurentSeries:
    """q^(1-a) (S(a-2,b-3) - S(a-1,b-3))."""
    inner = order + max(0, a - 1)
    return (S(a - 2, b - 3, inner) - S(a - 1, b - 3, inner)).shift(1 - a)


def relation_B_rhs(a: int, b: int, order: int) -> TruncLaurentSeries:
    """q^(3-b) (S(a-3,b-6) - S(a-3,b-3))."""
    inner = order + max(0, b - 3)
    return (S(a - 3, b - 6, inner) - S(a - 3, b - 3, inner)).shift(3 - b)


def relation_A_check(a: int, b: int, order: int = 200) -> VerificationReport:
    return compare_series(f"relation_A({a},{b})", S(a, b, order), relation_A_rhs(a, b, order), order)


def relation_B_check(a: int, b: int, order: int = 200) -> VerificationReport:
    return compare_series(f"relation_B({a},{b})", S(a, b, order), relation_B_rhs(a, b, order), order)


# ---------------------------------------------------------------------------
# reduction to the 3x3 basis

Key = tuple[int, int]
Combination = dict[Key, TruncLaurentSeries]


class ReductionFailedError(RuntimeError):
    def __init__(self, message: str, partial: Combination) -> None:
        super().__init__(message)
        self.partial = partial


class CertificateError(RuntimeError):
    """A rewrite produced a combination that does not match numerically."""


def oriented_rewrites(key: Key) -> list[Combination]:
    """Every way relations (A) and (B) express S(key) through two other sums."""
    x, y = key
    mono = q
    return [
        # (A) solved for each participant
        {(x - 2, y - 3): mono(1 - x), (x - 1, y - 3): -mono(1 - x)},
        {(x + 2, y + 3): mono(x + 1), (x + 1, y): mono(0)},
        {(x - 1, y): mono(0), (x + 1, y + 3): -mono(x)},
        # (B) solved for each participant
        {(x - 3, y - 6): mono(3 - y), (x - 3, y - 3): -mono(3 - y)},
        {(x + 3, y + 6): mono(y + 3), (x, y + 3): mono(0)},
        {(x, y - 3): mono(0), (x + 3, y + 3): -mono(y)},
    ]


def _down(key: Key) -> Combination:
    return oriented_rewrites(key)[0]


def _up(key: Key) -> Combination:
    return oriented_rewrites(key)[4]


def _substitute(combo: Combination, key: Key, rewrite: Combination) -> None:
    coef = combo.pop(key)
    for k, c in rewrite.items():
        new = combo.get(k, TruncLaurentSeries.zero()) + coef * c
        if new.is_zero():
            combo.pop(k, None)
        else:
            combo[k] = new


def _lower_to_row0(combo: Combination) -> Combination:
    combo = dict(combo)
    while True:
        high = [k for k in combo if k[1] > 2]
        if not high:
            return combo
        k = max(high, key=lambda t: (t[1], t[0]))
        _substitute(combo, k, _down(k))


def row_relation(x: int, r: int) -> Combination:
    """A vanishing combination of S(x-5..x-2, r) obtained by expanding
    S(x, r+6) once through (A) and once through (B)."""
    top = (x, r + 6)
    via_a = _lower_to_row0({top: q(0)})
    via_b = _lower_to_row0(oriented_rewrites(top)[3])
    rel = dict(via_a)
    for k, c in via_b.items():
        new = rel.get(k, TruncLaurentSeries.zero()) - c
        if new.is_zero():
            rel.pop(k, None)
        else:
            rel[k] = new
    return rel


def _solve_for(rel: Combination, key: Key) -> Combination:
    lead = rel[key]
    if len(lead.coeffs) != 1 or lead.coeffs[0] not in (1, -1):
        raise ReductionFailedError(f"coefficient of S{key} is not a unit monomial: {lead}", rel)
    inv = q(-lead.min_exp, -lead.coeffs[0])
    return {k: c * inv for k, c in rel.items() if k != key}


@dataclass
class BasisCombination:
    """S(source) = sum_k terms[k] * S(k) with (a,b) keys inside the 3x3 box."""

    source: SumSpec
    terms: Combination
    steps: int
    certified_order: int | None = None
    certificate: VerificationReport | None = field(default=None, repr=False)

    def evaluate(self, order: int) -> TruncLaurentSeries:
        total = TruncLaurentSeries.zero(order=order)
        for (a, b), c in sorted(self.terms.items()):
            lift = order - c.min_exp if c.coeffs else order
            total = total + c * S(a, b, max(order, lift))
        return total.truncate(order)

    def __str__(self) -> str:
        if not self.terms:
            return f"{self.source} = 0"
        parts = [f"({c})*S({a},{b})" for (a, b), c in sorted(self.terms.items())]
        return f"{self.source} = " + " + ".join(parts)


def reduce_to_basis(spec, step_budget: int = 10_000, order: int = 200) -> BasisCombination:
    """Rewrite S(a,b) over the nine sums with 0 <= a,b <= 2 and certify numerically.

    Relations (A) and (B) keep b mod 3 fixed, so each residue class reduces
    on its own: negative rows are raised with (B), rows above 2 are lowered
    with (A), and inside row 0 the four-term relation from :func:`row_relation`
    moves a into 0..2.  Every rewrite counts against ``step_budget``.
    """
    if step_budget < 1:
        raise ValueError("step budget must be positive")
    src = _as_spec(spec)
    combo: Combination = {(src.a, src.b): q(0)}
    steps = 0

    def spend(partial: Combination) -> None:
        nonlocal steps
        steps += 1
        if steps > step_budget:
            raise ReductionFailedError(f"{src}: step budget {step_budget} exhausted", dict(partial))

    while True:
        low = [k for k in combo if k[1] < 0]
        if not low:
            break
        k = min(low, key=lambda t: (t[1], t[0]))
        spend(combo)
        _substitute(combo, k, _up(k))
    while True:
        high = [k for k in combo if k[1] > 2]
        if not high:
            break
        k = max(high, key=lambda t: (t[1], t[0]))
        spend(combo)
        _substitute(combo, k, _down(k))
    while True:
        right = [k for k in combo if k[0] > 2]
        left = [k for k in combo if k[0] < 0]
        if right:
            k = max(right)
            rel = row_relation(k[0] + 2, k[1])
        elif left:
            k = min(left)
            rel = row_relation(k[0] + 5, k[1])
        else:
            break
        spend(combo)
        _substitute(combo, k, _solve_for(rel, k))

    result = BasisCombination(src, combo, steps)
    cert = compare_series(f"reduce{src}", S(src.a, src.b, order), result.evaluate(order), order)
    if not cert.agrees:
        raise CertificateError(f"{src}: numeric certificate failed: {cert.summary()}")
    result.certified_order = order
    result.certificate = cert
    return result


def rewrite_holds(key: Key, rewrite: Combination, order: int) -> bool:
    """Numeric check of one rewrite S(key) = sum c_k S(k) through ``order``."""
    combo = BasisCombination(_as_spec(key), rewrite, 0)
    return compare_series("rewrite", S(*key, order), combo.evaluate(order), order).agrees


def lowest_exponent(a: int, b: int) -> int:
    """Smallest exponent m^2+3mn+3n^2+am+bn over m, n >= 0."""
    # the (0,0) term has exponent 0, so the minimum never exceeds it
    return min(e for _, _, e in contributing_terms(a, b, 0))
