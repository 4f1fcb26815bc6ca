"""Finite (largest part <= N) versions of S(a,b), their reflections q -> 1/q,
and the limit series the normalized reflections converge to.

Every finite version is a sum of summands

    q^E * extra(q) * [top1, m]_q * [top2, n]_{q^3}

with palindromic factors, so reflecting a summand is a pure shift by its
total degree.  That is the route used here; the limit double sums are an
independent second route and the two are compared coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .qkit import bracket_product, gauss_truncated, inv_product, _gauss_exact
from .ring import TruncLaurentSeries, convolve

# (a, b) -> (N, m, n) -> (top1, top2); star and delta handled by FiniteSpec
_FORMULAS: dict[tuple[int, int], Callable[[int, int, int, bool], tuple[int, int]]] = {
    (0, -1): lambda N, m, n, d: (N + 1 - 3 * n - m, 2 * (N + 2) // 3 - m - n),
    (0, 0): lambda N, m, n, d: (N + 1 - 3 * n - m, 2 * N // 3 + 1 - m - n),
    (1, 1): lambda N, m, n, d: (N - 3 * n - m, 2 * (N + 1) // 3 - m - n),
    (1, 2): lambda N, m, n, d: (N - 3 * n - m, 2 * (N - 1) // 3 + 1 - m - n),
    (2, 3): lambda N, m, n, d: (N - 3 * n - m - 1, 2 * N // 3 - m - n),
    (2, 4): lambda N, m, n, d: (N - 3 * n - m - 1, 2 * (N - 1) // 3 + _delta(N, d) - m - n),
    (3, 5): lambda N, m, n, d: (N - 3 * n - m - 2, 2 * (N - 1) // 3 - m - n),
    (3, 6): lambda N, m, n, d: (N - 3 * n - m - 2, 2 * N // 3 - 1 - m - n),
    (1, 3): lambda N, m, n, d: (N - m - 3 * n, 2 * N // 3 - m - n),
    (0, 2): lambda N, m, n, d: (N + 1 - m - 3 * n, 2 * (N - 1) // 3 + 1 - m - n),
}

SUPPORTED_PAIRS = tuple(_FORMULAS)

# pairs whose first binomial can reach [-1, 0]
STAR_PAIRS = ((2, 3), (0, -1), (1, 1), (3, 5))

# KR index -> finite pair; KR5 has its own two-part sum
KR_FINITE = {1: (0, 0), 2: (1, 3), 3: (2, 3), 4: (1, 2)}


def _delta(N: int, enabled: bool) -> int:
    return 1 if enabled and (N - 2) % 3 == 0 else 0


class UnsupportedFiniteVersionError(ValueError):
    """No finite version is known for this (a, b)."""


class NormalizationError(ArithmeticError):
    """A normalization rule left negative exponents after reflection."""


@dataclass(frozen=True)
class FiniteSpec:
    """S(a, b; q, N).

    ``star`` reads [-1, 0] as 1 in the first binomial.  It is on by default
    for (2,3) and optional for (0,-1), (1,1) and (3,5), where it adds the one
    partition per weight class that the plain formula misses for some N mod 3.
    The reflected limits are built on the plain formula, so it stays off
    there by default.  ``delta`` adds the 3 | N-2 correction (only for (2,4),
    on by default).  ``empty_partition`` makes the (m,n)=(0,0) summand 1
    when the formula's binomials vanish there, so that the constant term is
    always 1; switch it off to get the formulas exactly as written.
    """

    a: int
    b: int
    N: int
    star: bool | None = None
    delta: bool | None = None
    empty_partition: bool = True

    def __post_init__(self) -> None:
        pair = (self.a, self.b)
        if pair not in _FORMULAS:
            raise UnsupportedFiniteVersionError(
                f"no finite version for S{pair}; supported pairs are {SUPPORTED_PAIRS}. "
                "Use reduce_to_basis to express it through supported sums.")
        if self.N < 0:
            raise ValueError("N must be non-negative")
        star = pair == (2, 3) if self.star is None else self.star
        delta = pair == (2, 4) if self.delta is None else self.delta
        if star and pair not in STAR_PAIRS:
            raise ValueError(f"the starred binomial convention only applies to {STAR_PAIRS}")
        if delta and pair != (2, 4):
            raise ValueError("the 3 | N-2 correction only applies to (2,4)")
        object.__setattr__(self, "star", star)
        object.__setattr__(self, "delta", delta)


@dataclass(frozen=True)
class Summand:
    """q^exponent * extra(q) * [top1, m]_q * [top2, n]_{q^3}."""

    exponent: int
    top1: int
    m: int
    top2: int
    n: int
    star: bool = False
    extra: tuple[int, ...] = (1,)

    def vanishes(self) -> bool:
        first_one = self.star and self.top1 == -1 and self.m == 0
        if not first_one and (self.m < 0 or self.top1 < self.m):
            return True
        return self.n < 0 or self.top2 < self.n

    def degree(self) -> int:
        """Degree span of the polynomial factors (they are palindromic)."""
        d1 = 0 if self.top1 < self.m else self.m * (self.top1 - self.m)
        return len(self.extra) - 1 + d1 + 3 * self.n * (self.top2 - self.n)

    def coefficients(self, limit: int | None = None) -> list[int]:
        """Coefficients of extra * binomials from q^0, optionally up to q^limit."""
        if self.top1 < self.m:
            b1: tuple[int, ...] = (1,)
        elif limit is None:
            b1 = _gauss_exact(self.top1, self.m)
        else:
            b1 = gauss_truncated(self.top1, self.m, limit)
        if limit is None:
            raw2 = _gauss_exact(self.top2, self.n)
        else:
            raw2 = gauss_truncated(self.top2, self.n, limit // 3)
        b2 = [0] * (3 * (len(raw2) - 1) + 1)
        for i, c in enumerate(raw2):
            b2[3 * i] = c
        size = len(self.extra) + len(b1) + len(b2) - 2
        if limit is not None:
            size = min(size, limit + 1)
        out = convolve(convolve(list(self.extra), list(b1), size), b2, size)
        return out


def finite_summands(spec: FiniteSpec) -> Iterator[Summand]:
    a, b, N = spec.a, spec.b, spec.N
    formula = _FORMULAS[(a, b)]
    seen_any = False
    for n in range(0, N // 3 + 2):
        for m in range(0, N + 2):
            top1, top2 = formula(N, m, n, spec.delta)
            s = Summand(m * m + 3 * m * n + 3 * n * n + a * m + b * n, top1, m, top2, n, spec.star)
            if s.vanishes():
                continue
            seen_any = seen_any or (m, n) == (0, 0)
            yield s
    if spec.empty_partition and not seen_any:
        yield Summand(0, 0, 0, 0, 0)


def kr5_summands(N: int, empty_partition: bool = True) -> Iterator[Summand]:
    if N < 0:
        raise ValueError("N must be non-negative")
    fl = 2 * (N - 2) // 3
    d = _delta(N, True)
    seen_any = False
    for n in range(0, N // 3 + 2):
        for m in range(0, N + 2):
            q2 = m * m + 3 * m * n + 3 * n * n
            first = Summand(q2 + 2 * m + 4 * n, N - m - 3 * n - 1, m, fl - m - n + 1, n, extra=(1, 1))
            second = Summand(q2 + 3 * m + 7 * n + 2, N - m - 3 * n - 2, m, fl - m - n + d, n)
            for s in (first, second):
                if not s.vanishes():
                    seen_any = seen_any or (m, n) == (0, 0)
                    yield s
    if empty_partition and not seen_any:
        yield Summand(0, 0, 0, 0, 0)


def _accumulate(terms: Iterator[tuple[int, list[int]]], order: int | None) -> TruncLaurentSeries:
    acc: list[int] = []
    for low, coeffs in terms:
        need = low + len(coeffs)
        if len(acc) < need:
            acc.extend([0] * (need - len(acc)))
        for i, c in enumerate(coeffs):
            acc[low + i] += c
    return TruncLaurentSeries(acc, 0, order)


def _sum_summands(summands: Iterator[Summand], order: int | None) -> TruncLaurentSeries:
    def gen():
        for s in summands:
            if order is not None and s.exponent > order:
                continue
            yield s.exponent, s.coefficients(None if order is None else order - s.exponent)
    return _accumulate(gen(), order)


def S_finite(spec: FiniteSpec, order: int | None = None) -> TruncLaurentSeries:
    """The exact polynomial S(a,b;q,N), or its truncation through ``order``."""
    return _sum_summands(finite_summands(spec), order)


def kr5_finite(N: int, order: int | None = None, empty_partition: bool = True) -> TruncLaurentSeries:
    return _sum_summands(kr5_summands(N, empty_partition), order)


def kr_finite(i: int, N: int, order: int | None = None) -> TruncLaurentSeries:
    if i == 5:
        return kr5_finite(N, order)
    return S_finite(FiniteSpec(*KR_FINITE[i], N), order)


# ---------------------------------------------------------------------------
# reflection


@dataclass(frozen=True)
class NormalizationRule:
    """Exponent c2*M^2 + c1*M + c0 multiplying the reflected polynomial."""

    c2: int
    c1: int
    c0: int
    label: str = ""

    def __call__(self, M: int) -> int:
        return self.c2 * M * M + self.c1 * M + self.c0

    def __str__(self) -> str:
        return self.label or f"{self.c2}M^2+{self.c1}M+{self.c0}"


_FG = (NormalizationRule(3, 1, 0, "M(3M+1)"), NormalizationRule(3, 4, 1, "(M+1)(3M+1)"),
       NormalizationRule(3, 7, 2, "(M+2)(3M+1)"))
_FG_STAR = (NormalizationRule(3, 2, 0, "M(3M+2)"), NormalizationRule(3, 5, 2, "(M+1)(3M+2)"),
            NormalizationRule(3, 5, 2, "(M+1)(3M+2)"))
_RK4 = (NormalizationRule(3, 2, 0, "M(3M+2)"), NormalizationRule(3, 5, 0, "M(3M+5)"),
        NormalizationRule(3, 5, 2, "(M+1)(3M+2)"))
_RK1 = (NormalizationRule(3, 3, 0, "3M(M+1)"), NormalizationRule(3, 3, 1, "3M(M+1)+1"),
        NormalizationRule(3, 6, 3, "3(M+1)^2"))

DEFAULT_RULES: dict[tuple[int, int], tuple[NormalizationRule, ...]] = {
    (1, 1): _FG, (2, 4): _FG,
    (0, -1): _FG_STAR, (0, 2): _FG_STAR,
    (1, 2): _RK4,
    (0, 0): _RK1,
}

Source = Union[tuple[int, int], FiniteSpec, str]


def _source_summands(source: Source, N: int) -> tuple[Iterator[Summand], tuple[int, int] | None]:
    if source == "kr5" or source == 5:
        return kr5_summands(N), None
    if isinstance(source, int):
        source = KR_FINITE[source]
    if isinstance(source, FiniteSpec):
        spec = FiniteSpec(source.a, source.b, N, source.star, source.delta, source.empty_partition)
    else:
        spec = FiniteSpec(source[0], source[1], N)
    return finite_summands(spec), (spec.a, spec.b)


def reflect_finite(source: Source, M: int, r: int, rule: NormalizationRule | None = None,
                   order: int | None = None) -> TruncLaurentSeries:
    """q^rule(M) * S(a,b; 1/q, 3M+r), exact or through ``order``.

    ``source`` is an (a, b) pair, a FiniteSpec (its N is replaced), a KR
    index 1..4, or "kr5".  Without ``rule`` the default rule for the pair is
    used where one exists.
    """
    if r not in (0, 1, 2):
        raise ValueError("residue must be 0, 1 or 2")
    if M < 0:
        raise ValueError("M must be non-negative")
    N = 3 * M + r
    summands, pair = _source_summands(source, N)
    if rule is None:
        if pair not in DEFAULT_RULES:
            raise ValueError(f"no default normalization for {source!r}; pass a rule")
        rule = DEFAULT_RULES[pair][r]
    shift = rule(M)

    def gen():
        for s in summands:
            low = shift - s.exponent - s.degree()
            if low < 0:
                raise NormalizationError(
                    f"rule {rule} leaves exponent {low} at (m,n)=({s.m},{s.n}), M={M}, r={r}")
            if order is not None and low > order:
                continue
            yield low, s.coefficients(None if order is None else order - low)

    return _accumulate(gen(), order)


# ---------------------------------------------------------------------------
# limits


@dataclass(frozen=True)
class LimitSum:
    """sum_{a,b>=0} q^(a^2-3ab+3b^2+alpha*a+beta*b+gamma) [3b+a_coeff*a+c, a]_q / (q^3;q^3)_b."""

    alpha: int
    beta: int
    gamma: int
    c: int
    a_coeff: int = -1


def limit_double_sum(form: LimitSum, order: int) -> TruncLaurentSeries:
    acc = [0] * (order + 1)
    slope = abs(form.beta) + 3 * abs(form.alpha)
    const = abs(form.gamma) + abs(form.alpha) * (abs(form.c) + 1)
    b = 0
    # the quadratic form is at least 0.75 b^2 and a <= 3b + |c|
    while 0.75 * b * b - slope * b - const <= order:
        row = [0] * (order + 1)
        top_const = 3 * b + form.c
        # [top, a] vanishes once a exceeds top
        a_max = top_const // 2 if form.a_coeff == -1 else top_const
        for a in range(0, a_max + 1):
            top = top_const + form.a_coeff * a
            e = a * a - 3 * a * b + 3 * b * b + form.alpha * a + form.beta * b + form.gamma
            if e < 0:
                raise NormalizationError(f"limit term at (a,b)=({a},{b}) has exponent {e}")
            if e <= order:
                for i, v in enumerate(gauss_truncated(top, a, order - e)):
                    row[e + i] += v
        if any(row):
            for k in range(1, b + 1):
                step = 3 * k
                for i in range(step, order + 1):
                    row[i] += row[i - step]
            for i, v in enumerate(row):
                acc[i] += v
        b += 1
    return TruncLaurentSeries(acc, 0, order)


LIMIT_FORMS: dict[tuple[str, int], LimitSum] = {
    ("F", 0): LimitSum(1, -1, 0, 0), ("F", 1): LimitSum(1, -1, 0, -1), ("F", 2): LimitSum(1, -1, -2, -2),
    ("G", 0): LimitSum(0, 2, 1, 1), ("G", 1): LimitSum(0, 2, 1, 0), ("G", 2): LimitSum(0, 2, -1, -1),
    ("F*", 0): LimitSum(1, -2, 0, -1), ("F*", 1): LimitSum(1, -2, 0, -2), ("F*", 2): LimitSum(1, -2, 0, 0),
    ("G*", 0): LimitSum(-2, 4, 1, 2), ("G*", 1): LimitSum(-2, 4, 1, 1), ("G*", 2): LimitSum(-2, 4, 1, 3),
    ("RK1", 0): LimitSum(0, 0, -1, -1), ("RK1", 1): LimitSum(0, 0, 0, 1), ("RK1", 2): LimitSum(0, 0, 0, 0),
}

# binomial top written 3b-2 with no dependence on a
RK1_LITERAL = LimitSum(0, 0, -1, -2, a_coeff=0)

FAMILY_SOURCE = {"F": (1, 1), "G": (2, 4), "F*": (0, -1), "G*": (0, 2), "RK4": (1, 2), "RK1": (0, 0)}
_ALIASES = {"Fstar": "F*", "Gstar": "G*"}

RK4_RESIDUES = {
    0: (3, 9, 12, 21, 30, 36, 39),
    1: (3, 12, 18, 21, 27, 30, 39),
}


@dataclass(frozen=True)
class LimitFamily:
    """One limit series: family F, G, F*, G* (the twelve reflected limits),
    or RK1 / RK4, at residue r.  ``reading`` only matters for RK1 r=0."""

    family: str
    residue: int
    reading: str = "corrected"

    def __post_init__(self) -> None:
        fam = _ALIASES.get(self.family, self.family)
        if fam not in FAMILY_SOURCE:
            raise ValueError(f"unknown family {self.family!r}")
        if self.residue not in (0, 1, 2):
            raise ValueError("residue must be 0, 1 or 2")
        if self.reading not in ("corrected", "printed"):
            raise ValueError("reading must be 'corrected' or 'printed'")
        object.__setattr__(self, "family", fam)

    @property
    def source(self) -> tuple[int, int]:
        return FAMILY_SOURCE[self.family]

    def __str__(self) -> str:
        return f"{self.family}{self.residue}"


LIMIT_FAMILIES = tuple(LimitFamily(f, r) for f in ("F", "G", "F*", "G*") for r in range(3))
RK4_FAMILIES = tuple(LimitFamily("RK4", r) for r in range(3))


def rk4_limit(r: int, order: int) -> TruncLaurentSeries:
    if r == 2:
        return rk4_limit(0, order) + rk4_limit(1, order).shift(2).truncate(order)
    return inv_product([(2, 3)] + [(c, 45) for c in RK4_RESIDUES[r]], order)


# RK1 limits at residues 0 and 2 as bracket combinations, two forms each:
# lists of (sign, shift, bracket)
RK1_BRACKETS: dict[tuple[int, int], tuple[tuple[int, int, tuple[int, int, int, int]], ...]] = {
    (0, 0): ((1, 0, (2, 8, 11, 20)), (1, 3, (2, 14, 20, 22)), (-1, 8, (17, 19, 20, 22))),
    (0, 1): ((1, 0, (1, 8, 13, 20)), (-1, 1, (4, 7, 13, 20)), (1, 5, (7, 16, 17, 20))),
    (2, 0): ((1, 0, (1, 7, 11, 20)), (1, 6, (11, 13, 14, 20)), (-1, 6, (8, 14, 19, 20))),
    (2, 1): ((1, 0, (1, 4, 17, 20)), (-1, 4, (2, 16, 19, 20)), (-1, 5, (4, 16, 20, 22))),
}


def rk1_bracket_combo(r: int, form: int, order: int) -> TruncLaurentSeries:
    total = TruncLaurentSeries.zero(order=order)
    for sign, shift, c in RK1_BRACKETS[(r, form)]:
        total = total + bracket_product(c, order).shift(shift).scale(sign)
    return total.truncate(order)


def limit_series(fam: LimitFamily, order: int) -> TruncLaurentSeries:
    """The limit of the normalized reflections of ``fam`` through ``order``."""
    if fam.family == "RK4":
        return rk4_limit(fam.residue, order)
    if fam.family == "RK1" and fam.residue == 0 and fam.reading == "printed":
        return limit_double_sum(RK1_LITERAL, order)
    return limit_double_sum(LIMIT_FORMS[(fam.family, fam.residue)], order)


def default_cap(M: int) -> int:
    return 4 * M + 20


def stabilization_order(fam: LimitFamily, M: int, rule: NormalizationRule | None = None,
                        cap: int | None = None) -> int:
    """Number of leading coefficients on which the normalized reflection at M
    agrees with the limit series, looked at up to ``cap`` (so at most cap+1)."""
    if M < 1:
        raise ValueError("M must be at least 1")
    cap = default_cap(M) if cap is None else cap
    poly = reflect_finite(fam.source, M, fam.residue, rule, order=cap)
    bad = poly.first_mismatch(limit_series(fam, cap), cap)
    return cap + 1 if bad is None else bad
