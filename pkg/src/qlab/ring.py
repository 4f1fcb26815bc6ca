"""Exact coefficient rings and truncated Laurent series.

Two coefficient rings are supported: the integers (plain Python ``int``) and
the Eisenstein integers ``Z[w]`` with ``w**2 = -1 - w``.  A series carries
its own truncation order; ``order=None`` marks an exact Laurent polynomial.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Union

INT = "Z"
EISENSTEIN = "Z[w]"

# Below this operand length schoolbook convolution beats Kronecker packing.
_KRONECKER_MIN = 24


class RingMismatchError(TypeError):
    """Operands live in different coefficient rings."""


class NotInvertibleError(ArithmeticError):
    """The series has no inverse in the power-series ring."""


class TruncationError(ValueError):
    """A request touched exponents beyond the guaranteed order."""


class Eisenstein:
    """The Eisenstein integer ``a + b*w`` where ``w`` is a primitive cube root of unity."""

    __slots__ = ("a", "b")

    def __init__(self, a: int = 0, b: int = 0) -> None:
        self.a = int(a)
        self.b = int(b)

    @staticmethod
    def coerce(x: Union[int, "Eisenstein"]) -> "Eisenstein":
        if isinstance(x, Eisenstein):
            return x
        if isinstance(x, int):
            return Eisenstein(x, 0)
        raise TypeError(f"cannot treat {x!r} as an Eisenstein integer")

    def __add__(self, other):
        if isinstance(other, Eisenstein):
            return Eisenstein(self.a + other.a, self.b + other.b)
        if isinstance(other, int):
            return Eisenstein(self.a + other, self.b)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "Eisenstein":
        return Eisenstein(-self.a, -self.b)

    def __sub__(self, other):
        if isinstance(other, Eisenstein):
            return Eisenstein(self.a - other.a, self.b - other.b)
        if isinstance(other, int):
            return Eisenstein(self.a - other, self.b)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return Eisenstein(other - self.a, -self.b)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Eisenstein):
            # (a + bw)(c + dw) = (ac - bd) + (ad + bc - bd)w
            a, b, c, d = self.a, self.b, other.a, other.b
            bd = b * d
            return Eisenstein(a * c - bd, a * d + b * c - bd)
        if isinstance(other, int):
            return Eisenstein(self.a * other, self.b * other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Eisenstein":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Eisenstein(1, 0), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Eisenstein):
            return self.a == other.a and self.b == other.b
        if isinstance(other, int):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.a) if self.b == 0 else hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a or self.b)

    def conj(self) -> "Eisenstein":
        """Image under w -> w**2, i.e. complex conjugation."""
        return Eisenstein(self.a - self.b, -self.b)

    def norm(self) -> int:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def is_unit(self) -> bool:
        return self.norm() == 1

    def inverse(self) -> "Eisenstein":
        if not self.is_unit():
            raise NotInvertibleError(f"{self} is not a unit of Z[w]")
        return self.conj()

    def __repr__(self) -> str:
        return f"Eisenstein({self.a}, {self.b})"

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{_coef_prefix(self.b)}w"
        sign = "+" if self.b > 0 else "-"
        return f"({self.a} {sign} {_coef_prefix(abs(self.b))}w)"


def _coef_prefix(c: int) -> str:
    return {1: "", -1: "-"}.get(c, str(c))


OMEGA = Eisenstein(0, 1)
OMEGA2 = Eisenstein(-1, -1)
EISENSTEIN_UNITS = tuple(s * u for s in (1, -1) for u in (Eisenstein(1, 0), OMEGA, OMEGA2))

Coefficient = Union[int, Eisenstein]


def ring_of(c: Coefficient) -> str:
    return EISENSTEIN if isinstance(c, Eisenstein) else INT


def _unit_inverse(c: Coefficient) -> Coefficient:
    if isinstance(c, Eisenstein):
        return c.inverse()
    if c in (1, -1):
        return c
    raise NotInvertibleError(f"{c} is not a unit of Z")


# ---------------------------------------------------------------------------
# integer convolution


def _schoolbook(a: list[int], b: list[int], size: int) -> list[int]:
    out = [0] * size
    for i, x in enumerate(a):
        if not x or i >= size:
            continue
        lim = min(len(b), size - i)
        for j in range(lim):
            y = b[j]
            if y:
                out[i + j] += x * y
    return out


def _pack(vals: list[int], nbytes: int) -> int:
    width = 8 * nbytes
    mod = 1 << width
    body = b"".join((v % mod).to_bytes(nbytes, "little") for v in vals)
    packed = int.from_bytes(body, "little")
    if any(v < 0 for v in vals):
        one = (1).to_bytes(nbytes, "little")
        zero = bytes(nbytes)
        borrow = b"".join(one if v < 0 else zero for v in vals)
        packed -= int.from_bytes(borrow, "little") << width
    return packed


def kronecker_convolve(a: list[int], b: list[int], size: int) -> list[int]:
    """First ``size`` coefficients of ``a*b`` via one big-integer product."""
    a = a[:size]
    b = b[:size]
    if not a or not b:
        return [0] * size
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    if ma == 0 or mb == 0:
        return [0] * size
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    width = 8 * nbytes
    full = len(a) + len(b) - 1
    half = 1 << (width - 1)
    # offset every digit by +half so that the signed digits unpack without borrows
    offset = int.from_bytes((half.to_bytes(nbytes, "little")) * full, "little")
    prod = _pack(a, nbytes) * _pack(b, nbytes) + offset
    raw = prod.to_bytes(nbytes * full + 1, "little")
    n = min(size, full)
    out = [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half for i in range(n)
    ]
    out.extend([0] * (size - n))
    return out


def convolve(a: list[int], b: list[int], size: int) -> list[int]:
    """Truncated integer convolution, dispatching on operand size."""
    if min(len(a), len(b), size) < _KRONECKER_MIN:
        return _schoolbook(a, b, size)
    return kronecker_convolve(a, b, size)


def _split(vals: Iterable[Coefficient]) -> tuple[list[int], list[int]]:
    re, om = [], []
    for c in vals:
        if isinstance(c, Eisenstein):
            re.append(c.a)
            om.append(c.b)
        else:
            re.append(c)
            om.append(0)
    return re, om


def _eisenstein_convolve(a: list, b: list, size: int) -> list[Eisenstein]:
    ar, ab = _split(a)
    br, bb = _split(b)
    ac = convolve(ar, br, size)
    bd = convolve(ab, bb, size)
    cross = convolve([x + y for x, y in zip(ar, ab)], [x + y for x, y in zip(br, bb)], size)
    return [Eisenstein(p - s, c - p - 2 * s) for p, s, c in zip(ac, bd, cross)]


# ---------------------------------------------------------------------------
# series


def _min_order(p: int | None, r: int | None) -> int | None:
    if p is None:
        return r
    if r is None:
        return p
    return min(p, r)


class TruncLaurentSeries:
    """A Laurent series known exactly through exponent ``order``.

    ``coeffs[i]`` is the coefficient of ``q**(min_exp + i)``.  Stored windows
    are normalised (no zero at either end, nothing above ``order``), so
    structural equality is mathematical equality.  ``order=None`` means the
    value is an exact Laurent polynomial.
    """

    __slots__ = ("ring", "min_exp", "coeffs", "order")

    def __init__(
        self,
        coeffs: Iterable[Coefficient] = (),
        min_exp: int = 0,
        order: int | None = None,
        ring: str | None = None,
    ) -> None:
        vals = list(coeffs)
        if ring is None:
            ring = EISENSTEIN if any(isinstance(c, Eisenstein) for c in vals) else INT
        if ring == INT:
            if any(isinstance(c, Eisenstein) for c in vals):
                raise RingMismatchError("Eisenstein coefficient in an integer series")
        elif ring == EISENSTEIN:
            vals = [Eisenstein.coerce(c) for c in vals]
        else:
            raise ValueError(f"unknown ring {ring!r}")
        if order is not None and vals:
            keep = order - min_exp + 1
            vals = vals[: max(keep, 0)]
        lo = 0
        while lo < len(vals) and not vals[lo]:
            lo += 1
        hi = len(vals)
        while hi > lo and not vals[hi - 1]:
            hi -= 1
        self.ring = ring
        self.min_exp = min_exp + lo if hi > lo else 0
        self.coeffs = tuple(vals[lo:hi])
        self.order = order

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_dict(cls, terms: Mapping[int, Coefficient], order: int | None = None,
                  ring: str | None = None) -> "TruncLaurentSeries":
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls((), 0, order, ring or INT)
        lo, hi = min(terms), max(terms)
        zero = Eisenstein() if ring == EISENSTEIN else 0
        return cls((terms.get(e, zero) for e in range(lo, hi + 1)), lo, order, ring)

    @classmethod
    def monomial(cls, coeff: Coefficient = 1, exp: int = 0, order: int | None = None,
                 ring: str | None = None) -> "TruncLaurentSeries":
        return cls((coeff,), exp, order, ring)

    @classmethod
    def zero(cls, ring: str = INT, order: int | None = None) -> "TruncLaurentSeries":
        return cls((), 0, order, ring)

    @classmethod
    def one(cls, ring: str = INT, order: int | None = None) -> "TruncLaurentSeries":
        return cls((1,), 0, order, ring)

    # -- inspection ---------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.order is None

    @property
    def max_exp(self) -> int | None:
        """Largest exponent with a nonzero stored coefficient."""
        return self.min_exp + len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def valuation(self) -> float | int:
        """Exponent of the lowest nonzero term; ``order + 1`` for a truncated zero."""
        if self.coeffs:
            return self.min_exp
        return float("inf") if self.order is None else self.order + 1

    def _zero(self) -> Coefficient:
        return Eisenstein() if self.ring == EISENSTEIN else 0

    def __getitem__(self, exp: int) -> Coefficient:
        if self.order is not None and exp > self.order:
            raise TruncationError(f"coefficient of q^{exp} is beyond order {self.order}")
        i = exp - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self._zero()

    def window(self, lo: int, hi: int) -> list[Coefficient]:
        """Coefficients for exponents ``lo..hi`` inclusive."""
        if self.order is not None and hi > self.order:
            raise TruncationError(f"window up to q^{hi} exceeds order {self.order}")
        z = self._zero()
        out = []
        for e in range(lo, hi + 1):
            i = e - self.min_exp
            out.append(self.coeffs[i] if 0 <= i < len(self.coeffs) else z)
        return out

    def terms(self) -> dict[int, Coefficient]:
        return {self.min_exp + i: c for i, c in enumerate(self.coeffs) if c}

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncLaurentSeries):
            return NotImplemented
        return (self.ring == other.ring and self.order == other.order
                and self.min_exp == other.min_exp and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.ring, self.order, self.min_exp, self.coeffs))

    def __repr__(self) -> str:
        return (f"TruncLaurentSeries({list(self.coeffs)!r}, min_exp={self.min_exp}, "
                f"order={self.order}, ring={self.ring!r})")

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms().items():
            if e == 0:
                parts.append(str(c))
                continue
            mono = "q" if e == 1 else f"q^{e}"
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        body = " + ".join(parts) if parts else "0"
        body = body.replace("+ -", "- ")
        if self.order is not None:
            body += f" + O(q^{self.order + 1})"
        return body

    # -- ring plumbing ------------------------------------------------------

    def _check_ring(self, other: "TruncLaurentSeries") -> None:
        if self.ring != other.ring:
            raise RingMismatchError(
                f"cannot combine a {self.ring} series with a {other.ring} series; promote first")

    def promote(self) -> "TruncLaurentSeries":
        """Embed an integer series into the Eisenstein ring."""
        if self.ring == EISENSTEIN:
            return self
        return TruncLaurentSeries(self.coeffs, self.min_exp, self.order, EISENSTEIN)

    def truncate(self, order: int) -> "TruncLaurentSeries":
        return TruncLaurentSeries(self.coeffs, self.min_exp, _min_order(self.order, order), self.ring)

    def shift(self, exp: int) -> "TruncLaurentSeries":
        """Multiply by ``q**exp``."""
        order = None if self.order is None else self.order + exp
        return TruncLaurentSeries(self.coeffs, self.min_exp + exp, order, self.ring)

    def scale(self, c: Coefficient) -> "TruncLaurentSeries":
        if isinstance(c, Eisenstein) and self.ring != EISENSTEIN:
            raise RingMismatchError("Eisenstein scalar on an integer series; promote first")
        return TruncLaurentSeries([c * x for x in self.coeffs], self.min_exp, self.order, self.ring)

    # -- arithmetic ---------------------------------------------------------

    def __neg__(self) -> "TruncLaurentSeries":
        return TruncLaurentSeries([-x for x in self.coeffs], self.min_exp, self.order, self.ring)

    def __add__(self, other):
        if isinstance(other, (int, Eisenstein)):
            other = TruncLaurentSeries.monomial(other, 0, None, self.ring if isinstance(other, int) else None)
        if not isinstance(other, TruncLaurentSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, (int, Eisenstein)):
            return self + (-other)
        if not isinstance(other, TruncLaurentSeries):
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Eisenstein)):
            return self.scale(other)
        if not isinstance(other, TruncLaurentSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def conjugate(self) -> "TruncLaurentSeries":
        return conjugate_series(self)

    def reflect(self) -> "TruncLaurentSeries":
        return reflect_exponents(self)

    def substitute(self, k: int) -> "TruncLaurentSeries":
        return substitute_power(self, k)

    def invert(self, order: int | None = None) -> "TruncLaurentSeries":
        return invert_unit(self, order)

    def first_mismatch(self, other: "TruncLaurentSeries", upto: int | None = None) -> int | None:
        """Lowest exponent at which the two series differ, looking no further than the
        smaller of both orders and ``upto``.  ``None`` means agreement on that window."""
        self._check_ring(other)
        limit = _min_order(_min_order(self.order, other.order), upto)
        tops = [s.max_exp for s in (self, other) if s.coeffs]
        bottoms = [s.min_exp for s in (self, other) if s.coeffs]
        if not tops:
            return None
        lo, hi = min(bottoms), max(tops)
        if limit is not None:
            hi = min(hi, limit)
        for e in range(lo, hi + 1):
            if self[e] != other[e]:
                return e
        return None


def add(f: TruncLaurentSeries, g: TruncLaurentSeries) -> TruncLaurentSeries:
    """Coefficient-wise sum; the order is the smaller of the operand orders."""
    f._check_ring(g)
    order = _min_order(f.order, g.order)
    if not f.coeffs:
        return TruncLaurentSeries(g.coeffs, g.min_exp, order, g.ring)
    if not g.coeffs:
        return TruncLaurentSeries(f.coeffs, f.min_exp, order, f.ring)
    lo = min(f.min_exp, g.min_exp)
    hi = max(f.max_exp, g.max_exp)
    if order is not None:
        hi = min(hi, order)
    if hi < lo:
        return TruncLaurentSeries.zero(f.ring, order)
    out = [f._zero()] * (hi - lo + 1)
    for s in (f, g):
        base = s.min_exp - lo
        for i, c in enumerate(s.coeffs):
            if base + i > hi - lo:
                break
            out[base + i] = out[base + i] + c
    return TruncLaurentSeries(out, lo, order, f.ring)


def mul(f: TruncLaurentSeries, g: TruncLaurentSeries) -> TruncLaurentSeries:
    """Cauchy product, exact up to min(f.order + val(g), g.order + val(f))."""
    f._check_ring(g)
    cands = []
    if f.order is not None:
        cands.append(f.order + g.valuation())
    if g.order is not None:
        cands.append(g.order + f.valuation())
    order = None
    if cands:
        m = min(cands)
        order = None if m == float("inf") else int(m)
    if not f.coeffs or not g.coeffs:
        return TruncLaurentSeries.zero(f.ring, order)
    lo = f.min_exp + g.min_exp
    size = len(f.coeffs) + len(g.coeffs) - 1
    if order is not None:
        size = min(size, order - lo + 1)
    if size <= 0:
        return TruncLaurentSeries.zero(f.ring, order)
    if f.ring == INT:
        out = convolve(list(f.coeffs), list(g.coeffs), size)
    else:
        out = _eisenstein_convolve(list(f.coeffs), list(g.coeffs), size)
    return TruncLaurentSeries(out, lo, order, f.ring)


def invert_unit(f: TruncLaurentSeries, order: int | None = None) -> TruncLaurentSeries:
    """Power-series inverse through ``order`` (defaults to ``f.order``).

    Uses g_0 = 1/f_0 and g_n = -(1/f_0) * sum_{k=1..n} f_k g_{n-k}; only
    the nonzero ``f_k`` are visited.
    """
    order = _min_order(f.order, order)
    if order is None:
        raise TruncationError("inverting an exact polynomial needs an explicit order")
    if not f.coeffs:
        raise NotInvertibleError("zero series")
    if f.min_exp != 0:
        raise NotInvertibleError(f"lowest exponent is {f.min_exp}; shift to exponent 0 first")
    inv0 = _unit_inverse(f.coeffs[0])
    support = [(k, c) for k, c in enumerate(f.coeffs) if k and c and k <= order]
    g = [f._zero()] * (order + 1)
    g[0] = inv0
    negate_unit = -inv0
    for n in range(1, order + 1):
        acc = f._zero()
        for k, c in support:
            if k > n:
                break
            acc = acc + c * g[n - k]
        if acc:
            g[n] = negate_unit * acc
    return TruncLaurentSeries(g, 0, order, f.ring)


def reflect_exponents(f: TruncLaurentSeries) -> TruncLaurentSeries:
    """q -> 1/q on a Laurent polynomial."""
    if f.order is not None:
        raise TruncationError("cannot reflect a truncated series: terms above the order are unknown")
    if not f.coeffs:
        return f
    return TruncLaurentSeries(reversed(f.coeffs), -f.max_exp, None, f.ring)


def conjugate_series(f: TruncLaurentSeries) -> TruncLaurentSeries:
    """Apply w -> w**2 to every coefficient (identity on integer series)."""
    if f.ring == INT:
        return f
    return TruncLaurentSeries([c.conj() for c in f.coeffs], f.min_exp, f.order, f.ring)


def substitute_power(f: TruncLaurentSeries, k: int) -> TruncLaurentSeries:
    """q -> q**k."""
    if k < 1:
        raise ValueError("substitution power must be positive")
    if k == 1:
        return f
    order = None if f.order is None else k * f.order
    if not f.coeffs:
        return TruncLaurentSeries.zero(f.ring, order)
    z = f._zero()
    out = [z] * (k * (len(f.coeffs) - 1) + 1)
    out[::k] = f.coeffs
    return TruncLaurentSeries(out, k * f.min_exp, order, f.ring)


def q(exp: int = 1, coeff: Coefficient = 1) -> TruncLaurentSeries:
    """The exact monomial ``coeff * q**exp``."""
    return TruncLaurentSeries.monomial(coeff, exp)
