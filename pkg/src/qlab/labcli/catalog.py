"""Identity catalog: small expression recipes over named series."""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Callable, Union

from ..finite import (
    RK1_LITERAL,
    LimitFamily,
    limit_double_sum,
    limit_series,
    reflect_finite,
    rk1_bracket_combo,
    rk4_limit,
)
from ..qkit import binom, bracket_product, inv_product, product
from ..ring import EISENSTEIN, INT, OMEGA, OMEGA2, Eisenstein, TruncLaurentSeries
from ..sums import S, hickerson_combo, hickerson_product, kr_combo, kr_product

Coeff = Union[int, Eisenstein]

PROVED = "proved"
CONJECTURAL = "conjectural"
# evaluated and reported, never counted towards the exit code
DIAGNOSTIC = "diagnostic"


# ---------------------------------------------------------------------------
# expressions


class Expr:
    def evaluate(self, order: int) -> TruncLaurentSeries:
        raise NotImplementedError

    def __add__(self, other: "Expr") -> "Expr":
        return Sum((self, other))

    def __mul__(self, other: "Expr") -> "Expr":
        return Prod((self, other))


def _same_ring(f: TruncLaurentSeries, g: TruncLaurentSeries):
    if f.ring != g.ring:
        return f.promote(), g.promote()
    return f, g


@dataclass(frozen=True)
class Named(Expr):
    name: str

    def evaluate(self, order: int) -> TruncLaurentSeries:
        return named_series(self.name, order)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Const(Expr):
    coeff: Coeff = 1
    shift: int = 0

    def evaluate(self, order: int) -> TruncLaurentSeries:
        return TruncLaurentSeries.monomial(self.coeff, self.shift)

    def __str__(self) -> str:
        return f"{self.coeff}*q^{self.shift}" if self.shift else str(self.coeff)


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def evaluate(self, order: int) -> TruncLaurentSeries:
        total = TruncLaurentSeries.zero(order=order)
        for t in self.terms:
            total, v = _same_ring(total, t.evaluate(order))
            total = total + v
        return total

    def __str__(self) -> str:
        return " + ".join(str(t) for t in self.terms)


@dataclass(frozen=True)
class Prod(Expr):
    factors: tuple[Expr, ...]

    def evaluate(self, order: int) -> TruncLaurentSeries:
        result = None
        for f in self.factors:
            v = f.evaluate(order)
            if result is None:
                result = v
            else:
                result, v = _same_ring(result, v)
                result = result * v
        return result

    def __str__(self) -> str:
        return " * ".join(f"({f})" for f in self.factors)


@dataclass(frozen=True)
class Scaled(Expr):
    """coeff * q^shift * inner."""

    inner: Expr
    coeff: Coeff = 1
    shift: int = 0

    def evaluate(self, order: int) -> TruncLaurentSeries:
        v = self.inner.evaluate(order - self.shift).shift(self.shift)
        if isinstance(self.coeff, Eisenstein):
            v = v.promote()
        return v.scale(self.coeff)

    def __str__(self) -> str:
        head = "" if self.coeff == 1 else f"({self.coeff})"
        if self.shift:
            head += f"q^{self.shift}"
        return f"{head}*({self.inner})" if head else str(self.inner)


Factor = tuple  # (exponent, modulus) or (coeff, exponent, modulus)


@dataclass(frozen=True)
class InfProduct(Expr):
    """prod(num) / prod(den) of infinite q-Pochhammer symbols."""

    num: tuple[Factor, ...] = ()
    den: tuple[Factor, ...] = ()

    def evaluate(self, order: int) -> TruncLaurentSeries:
        top = product(self.num, order)
        bottom = inv_product(self.den, order)
        top, bottom = _same_ring(top, bottom)
        return top * bottom

    def __str__(self) -> str:
        def fmt(fs):
            return ",".join(f"{f[0]}q^{f[1]}/{f[2]}" if len(f) == 3 else f"q^{f[0]}/{f[1]}" for f in fs)
        return f"[{fmt(self.num)}]/[{fmt(self.den)}]"


def reflection_depth(order: int) -> int:
    """M large enough that the reflected prefix is stable past ``order``.

    Prefixes measured for every family stabilize at no less than 3M - 1.
    """
    return max(40, order // 3 + 8)


@dataclass(frozen=True)
class Reflected(Expr):
    """Normalized reflection of a finite family at M = reflection_depth(order)."""

    family: str
    residue: int

    def evaluate(self, order: int) -> TruncLaurentSeries:
        fam = LimitFamily(self.family, self.residue)
        return reflect_finite(fam.source, reflection_depth(order), self.residue, order=order)

    def __str__(self) -> str:
        return f"reflect[{self.family}{self.residue}](M)"


# ---------------------------------------------------------------------------
# named series


def single_sum(quad: int, lin: int, den_mult: int, den_add: int, order: int) -> TruncLaurentSeries:
    """sum_n q^(quad*n^2 + lin*n) / (q;q)_(den_mult*n + den_add)."""
    vals = [0] * (order + 1)
    inv = [1] + [0] * order  # 1/(q;q)_k, grown in place
    k = 0
    n = 0
    while quad * n * n + lin * n <= order:
        target = den_mult * n + den_add
        while k < target:
            k += 1
            for i in range(k, order + 1):
                inv[i] += inv[i - k]
        e = quad * n * n + lin * n
        for i in range(order + 1 - e):
            vals[e + i] += inv[i]
        n += 1
    return TruncLaurentSeries(vals, 0, order)


def schur_sum(N: int, which: int) -> TruncLaurentSeries:
    lin = 0 if which == 1 else 1
    total = TruncLaurentSeries.zero()
    for j in range(0, N // 2 + 1):
        total = total + binom(N - j, j).shift(j * j + lin * j)
    return total


def schur_alternating(N: int, which: int) -> TruncLaurentSeries:
    total = TruncLaurentSeries.zero()
    bound = N // 5 + 2
    for lam in range(-bound, bound + 1):
        sign = -1 if lam % 2 else 1
        if which == 1:
            e, b = lam * (5 * lam + 1) // 2, binom(N, (N - 5 * lam) // 2)
        else:
            e, b = lam * (5 * lam - 3) // 2, binom(N + 1, (N + 1 - 5 * lam) // 2 + 1)
        total = total + b.shift(e).scale(sign)
    return total


_S_NAME = re.compile(r"S\((-?\d+),(-?\d+)\)")
_LIMIT_NAME = re.compile(r"([FG])(\*?)([012])(\*?)")
_KR_NAME = re.compile(r"KR([1-5])")
_KR_PRODUCT_NAME = re.compile(r"KR([1-5])_product")
_RK_NAME = re.compile(r"RK([14])_([012])(_printed)?")
_BRACKET_NAME = re.compile(r"bracket:(\d+),(\d+),(\d+),(\d+)")
_RK1_BRACKETS = re.compile(r"RK1_brackets_([02])([ab])")

_FIXED: dict[str, Callable[[int], TruncLaurentSeries]] = {
    "RR1_sum": lambda P: single_sum(1, 0, 1, 0, P),
    "RR2_sum": lambda P: single_sum(1, 1, 1, 0, P),
    "RR1_product": lambda P: inv_product([(1, 5), (4, 5)], P),
    "RR2_product": lambda P: inv_product([(2, 5), (3, 5)], P),
    "RRIV1_sum": lambda P: single_sum(1, 0, 2, 0, P),
    "RRIV2_sum": lambda P: single_sum(1, 1, 2, 1, P),
    "RRIV1_product": lambda P: inv_product([(1, 2), (4, 20), (16, 20)], P),
    "RRIV2_product": lambda P: inv_product(
        [(1, 10), (2, 10), (8, 10), (9, 10), (5, 20), (6, 20), (14, 20), (15, 20)], P),
    "KR5_simplified": lambda P: S(2, 4, P).shift(1) + S(1, 4, P),
}


def _hick(which: int, conj: bool, side: str, reading: str = "corrected"):
    if side == "lhs":
        return lambda P: hickerson_combo(which, conj, P)
    return lambda P: hickerson_product(which, conj, P, reading)


for _w in (1, 2):
    for _c in (False, True):
        _tag = f"H{_w}{'_conj' if _c else ''}"
        _FIXED[f"{_tag}_sum"] = _hick(_w, _c, "lhs")
        _FIXED[f"{_tag}_product"] = _hick(_w, _c, "rhs")
_FIXED["H2_product_printed"] = _hick(2, False, "rhs", "printed")


@lru_cache(maxsize=256)
def named_series(name: str, order: int) -> TruncLaurentSeries:
    """Evaluate a series by name; see :func:`series_names` for the forms."""
    name = name.replace(" ", "")
    if name in _FIXED:
        return _FIXED[name](order)
    if m := _S_NAME.fullmatch(name):
        return S(int(m.group(1)), int(m.group(2)), order)
    if m := _KR_PRODUCT_NAME.fullmatch(name):
        return kr_product(int(m.group(1)), order)
    if m := _KR_NAME.fullmatch(name):
        return kr_combo(int(m.group(1)), order)
    if m := _LIMIT_NAME.fullmatch(name):
        star = "*" if m.group(2) or m.group(4) else ""
        return limit_series(LimitFamily(m.group(1) + star, int(m.group(3))), order)
    if m := _RK_NAME.fullmatch(name):
        kind, r, printed = int(m.group(1)), int(m.group(2)), bool(m.group(3))
        if kind == 4:
            if printed:
                raise KeyError(name)
            return rk4_limit(r, order)
        if printed:
            if r != 0:
                raise KeyError(name)
            return limit_double_sum(RK1_LITERAL, order)
        return limit_series(LimitFamily("RK1", r), order)
    if m := _RK1_BRACKETS.fullmatch(name):
        return rk1_bracket_combo(int(m.group(1)), 0 if m.group(2) == "a" else 1, order)
    if m := _BRACKET_NAME.fullmatch(name):
        return bracket_product(tuple(int(g) for g in m.groups()), order)
    raise KeyError(f"unknown series {name!r}")


def series_names() -> list[str]:
    return sorted(_FIXED) + ["S(a,b)", "KR1..KR5", "KR1_product..KR5_product", "F0..F2, G0..G2, F0*..G2*",
                             "RK1_0..RK1_2", "RK1_0_printed", "RK4_0..RK4_2", "RK1_brackets_{0,2}{a,b}",
                             "bracket:c1,c2,c3,c4"]


# ---------------------------------------------------------------------------
# entries


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    status: str
    lhs: Expr
    rhs: Expr
    ring: str = INT
    default_order: int = 200
    description: str = ""
    reading: str | None = None
    # exact polynomial identities checked for every N in the range
    sweep: range | None = None
    sweep_sides: tuple[Callable[[int], TruncLaurentSeries], Callable[[int], TruncLaurentSeries]] | None = \
        field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.status not in (PROVED, CONJECTURAL, DIAGNOSTIC):
            raise ValueError(f"bad status {self.status!r}")
        if self.ring not in (INT, EISENSTEIN):
            raise ValueError(f"bad ring {self.ring!r}")

    def perturbed(self, exponent: int, coeff: Coeff = 1) -> "IdentityEntry":
        """Copy with ``coeff * q^exponent`` added to the right side."""
        return replace(self, id=f"{self.id}+q^{exponent}", rhs=Sum((self.rhs, Const(coeff, exponent))))


def _conj(c: Coeff, on: bool) -> Coeff:
    return c.conj() if on and isinstance(c, Eisenstein) else c


def _conj_factors(fs, on: bool):
    return tuple((_conj(f[0], on), f[1], f[2]) if len(f) == 3 else f for f in fs)


def _conjecture_products(on: bool) -> tuple[Expr, Expr]:
    w, w2 = _conj(OMEGA, on), _conj(OMEGA2, on)
    one = InfProduct(
        num=((15, 45), (w, 3, 3)) + tuple((w2, e, 15) for e in (1, 2, 4, 8, 10)),
        den=((5, 15), (11, 15), (14, 15), (3, 45), (12, 45), (18, 45), (27, 45)),
    )
    two = InfProduct(
        num=((30, 45), (w2, 3, 3)) + tuple((w, e, 15) for e in (5, 7, 11, 13, 14)),
        den=((1, 15), (4, 15), (10, 15), (18, 45), (27, 45), (33, 45), (42, 45)),
    )
    return Scaled(one, -w), Scaled(two, -w)


def omega_product(a: int, b: int) -> InfProduct:
    """1/(q, q^2, w q^a, w^2 q^b; q^3)_inf."""
    return InfProduct(den=((1, 3), (2, 3), (OMEGA, a, 3), (OMEGA2, b, 3)))


OMEGA_PRODUCT_PAIRS = tuple((a, b) for a in (1, 2, 3) for b in (1, 2, 3) if a + b not in (3, 6))

KR_TEXT = {1: "1,3,6,8", 2: "2,3,6,7", 3: "3,4,5,6", 4: "2,3,5,8", 5: "1,4,6,7"}
KR_SUM_TEXT = {1: "S(0,0)", 2: "S(1,3)", 3: "S(2,3)", 4: "S(1,2)", 5: "(1+q)S(2,4) + q^2 S(3,7)"}


def _build() -> tuple[IdentityEntry, ...]:
    E = IdentityEntry
    out: list[IdentityEntry] = []

    out += [
        E("rr1", PROVED, Named("RR1_sum"), Named("RR1_product"), default_order=400,
          description="Rogers-Ramanujan: sum q^(n^2)/(q)_n = 1/(q,q^4;q^5)"),
        E("rr2", PROVED, Named("RR2_sum"), Named("RR2_product"), default_order=400,
          description="Rogers-Ramanujan: sum q^(n^2+n)/(q)_n = 1/(q^2,q^3;q^5)"),
        E("rr_iv_1", PROVED, Named("RRIV1_sum"), Named("RRIV1_product"), default_order=400,
          description="sum q^(n^2)/(q)_2n = 1/((q;q^2)(q^4,q^16;q^20))"),
        E("rr_iv_2", PROVED, Named("RRIV2_sum"), Named("RRIV2_product"), default_order=400,
          description="sum q^(n^2+n)/(q)_(2n+1) = 1/((q,q^2,q^8,q^9;q^10)(q^5,q^6,q^14,q^15;q^20))"),
    ]
    for which in (1, 2):
        out.append(E(
            f"schur_poly_{which}", PROVED, Named(f"schur_{which}_sum"), Named(f"schur_{which}_alternating"),
            default_order=40, sweep=range(0, 41),
            sweep_sides=(lambda N, w=which: schur_sum(N, w), lambda N, w=which: schur_alternating(N, w)),
            description=("sum_j q^(j^2" + ("" if which == 1 else "+j") +
                         ")[N-j,j] equals its alternating bracket sum, exactly for each N"),
        ))
    for i in range(1, 6):
        out.append(E(f"kr{i}", CONJECTURAL, Named(f"KR{i}"), Named(f"KR{i}_product"), default_order=400,
                     description=f"Kanade-Russell KR{i}: {KR_SUM_TEXT[i]} = 1/(q^{{{KR_TEXT[i]}}};q^9)"))
    out.append(E("kr5_simplified", PROVED, Named("KR5"), Named("KR5_simplified"), default_order=200,
                 description="(1+q)S(2,4) + q^2 S(3,7) = q S(2,4) + S(1,4)"))

    hick_text = {1: "S(1,1) - w q S(2,4)", 2: "S(0,-1) + w^2 S(0,2)"}
    for which in (1, 2):
        for conj in (False, True):
            tag = f"H{which}{'_conj' if conj else ''}"
            out.append(E(f"hick{which}{'_conj' if conj else ''}", CONJECTURAL, Named(f"{tag}_sum"),
                         Named(f"{tag}_product"), ring=EISENSTEIN, default_order=300,
                         reading="corrected" if which == 2 else None,
                         description=f"{hick_text[which]}{' (w -> w^2)' if conj else ''} as a product"))
    out.append(E("hick2_printed", DIAGNOSTIC, Named("H2_sum"), Named("H2_product_printed"), ring=EISENSTEIN,
                 default_order=300, reading="printed",
                 description="second Hickerson product with prefactor +w as printed"))

    h2_core = InfProduct(num=((3, 9), (OMEGA2, 2, 3), (OMEGA, 3, 3)), den=((1, 3),))
    h2c_core = InfProduct(num=((3, 9), (OMEGA, 2, 3), (OMEGA2, 3, 3)), den=((1, 3),))
    omega_products = [
        ("referee_h1", Named("H1_product"), (3, 1)),
        ("referee_h1_conj", Named("H1_conj_product"), (1, 3)),
        ("referee_h2", h2_core, (2, 3)),
        ("referee_h2_conj", h2c_core, (3, 2)),
        ("referee_i4", Named("KR4_product"), (1, 1)),
        ("referee_i4a", Named("KR5_product"), (2, 2)),
    ]
    for rid, target, (a, b) in omega_products:
        out.append(E(rid, PROVED, target, omega_product(a, b), ring=EISENSTEIN, default_order=200,
                     description=f"product written as 1/(q,q^2,w q^{a},w^2 q^{b};q^3)"))

    out += [
        E("prop42_lift_1", PROVED, Named("S(1,3)"), Sum((Named("S(2,3)"), Scaled(Named("S(3,6)"), 1, 2))),
          description="S(1,3) = S(2,3) + q^2 S(3,6)"),
        E("prop42_lift_2", PROVED, Named("S(0,2)"), Sum((Named("S(0,-1)"), Scaled(Named("S(3,5)"), -1, 2))),
          description="S(0,2) = S(0,-1) - q^2 S(3,5)"),
    ]

    out += [
        E("thm_stats_1", PROVED, Named("F0"), Sum((Named("F1"), Scaled(Named("F2"), 1, 2), Const(1))),
          default_order=500, description="F0 = F1 + q^2 F2 + 1"),
        E("thm_stats_2", PROVED, Named("G0"), Sum((Named("G1"), Scaled(Named("G2"), 1, 2))),
          default_order=500, description="G0 = G1 + q^2 G2"),
        E("thm_stats_3", PROVED, Named("F2*"), Sum((Named("F0*"), Named("F1*"), Const(1))),
          default_order=500, description="F2* = F0* + F1* + 1"),
        E("thm_stats_4", PROVED, Named("G2*"), Sum((Named("G0*"), Named("G1*"))),
          default_order=500, description="G2* = G0* + G1*"),
    ]

    for conj in (False, True):
        suffix = "_conj" if conj else ""
        w, w2 = _conj(OMEGA, conj), _conj(OMEGA2, conj)
        p1, p2 = _conjecture_products(conj)
        out.append(E(f"conj1{suffix}", CONJECTURAL, Sum((Named("F1"), Scaled(Named("G1"), -w, -1))), p1,
                     ring=EISENSTEIN, default_order=300,
                     description=f"F1 - {w} q^-1 G1 as a modulus-45 product"))
        out.append(E(f"conj2{suffix}", CONJECTURAL, Sum((Named("F0*"), Scaled(Named("G0*"), w2))), p2,
                     ring=EISENSTEIN, default_order=300,
                     description=f"F0* + {w2} G0* as a modulus-45 product"))

    out += [
        E("warnaar_rk4_0", CONJECTURAL, Reflected("RK4", 0), Named("RK4_0"), default_order=100,
          description="reflected KR4 at 3M tends to 1/((q^2;q^3)(q^3,9,12,21,30,36,39;q^45))"),
        E("warnaar_rk4_1", CONJECTURAL, Reflected("RK4", 1), Named("RK4_1"), default_order=100,
          description="reflected KR4 at 3M+1 tends to 1/((q^2;q^3)(q^3,12,18,21,27,30,39;q^45))"),
        E("warnaar_rk4_2", CONJECTURAL, Reflected("RK4", 2),
          Sum((Reflected("RK4", 0), Scaled(Reflected("RK4", 1), 1, 2))), default_order=100,
          description="RK4 limits: 3inf+2 = 3inf + q^2 (3inf+1)"),
        E("warnaar_rk4_2_product", CONJECTURAL, Reflected("RK4", 2), Named("RK4_2"), default_order=100,
          description="reflected KR4 at 3M+2 against the product form of the relation"),
    ]
    for r in (0, 2):
        for form in ("a", "b"):
            out.append(E(f"rk1_bracket_{r}{'' if form == 'a' else 'b'}", CONJECTURAL, Named(f"RK1_{r}"),
                         Named(f"RK1_brackets_{r}{form}"), default_order=200,
                         reading="corrected" if r == 0 else None,
                         description=f"RK1 limit at 3inf+{r} as modulus-45 brackets, form {form}"))
    out.append(E("rk1_bracket_0_printed", DIAGNOSTIC, Named("RK1_0_printed"), Named("RK1_brackets_0a"),
                 default_order=200, reading="printed",
                 description="RK1 limit at 3inf with binomial top 3b-2 as printed"))
    out.append(E("rk1_linear", PROVED, Named("RK1_1"), Sum((Scaled(Named("RK1_0"), 1, 1), Named("RK1_2"))),
                 default_order=300, reading="corrected",
                 description="RK1 limits: 3inf+1 = q (3inf) + (3inf+2)"))

    fam_text = {"F": "S(1,1)", "G": "S(2,4)", "F*": "S(0,-1)", "G*": "S(0,2)", "RK1": "S(0,0)"}
    for fam in ("F", "G", "F*", "G*", "RK1"):
        for r in range(3):
            name = f"RK1_{r}" if fam == "RK1" else f"{fam[0]}{r}{fam[1:]}"
            out.append(E(f"limit_{fam.replace('*', 'star')}{r}", PROVED, Reflected(fam, r), Named(name),
                         default_order=100, reading="corrected" if (fam, r) == ("RK1", 0) else None,
                         description=f"normalized reflection of {fam_text[fam]} at 3M+{r} tends to its double sum"))
    out.append(E("limit_RK10_printed", DIAGNOSTIC, Reflected("RK1", 0), Named("RK1_0_printed"), default_order=100,
                 reading="printed", description="normalized reflection of S(0,0) at 3M against the printed sum"))
    return tuple(out)


_FIXED["schur_1_sum"] = lambda P: schur_sum(min(P, 40), 1)
_FIXED["schur_2_sum"] = lambda P: schur_sum(min(P, 40), 2)
_FIXED["schur_1_alternating"] = lambda P: schur_alternating(min(P, 40), 1)
_FIXED["schur_2_alternating"] = lambda P: schur_alternating(min(P, 40), 2)

_CATALOG = _build()
_BY_ID = {e.id: e for e in _CATALOG}
if len(_BY_ID) != len(_CATALOG):
    raise RuntimeError("duplicate catalog ids")


def catalog() -> tuple[IdentityEntry, ...]:
    return _CATALOG


def lookup(entry_id: str) -> IdentityEntry:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise KeyError(f"unknown identity {entry_id!r}") from None
