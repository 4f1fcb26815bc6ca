"""Verification outcomes and their JSON form."""

from __future__ import annotations

from dataclasses import dataclass

from .ring import Coefficient, Eisenstein, TruncLaurentSeries


def coeff_to_json(c: Coefficient):
    """Integers become decimal strings; Eisenstein integers ``{re_a, omega_b}`` strings."""
    if isinstance(c, Eisenstein):
        return {"re_a": str(c.a), "omega_b": str(c.b)}
    return str(c)


@dataclass(frozen=True)
class Mismatch:
    exponent: int
    lhs: Coefficient
    rhs: Coefficient

    def to_json(self) -> dict:
        return {"exponent": self.exponent, "lhs": coeff_to_json(self.lhs), "rhs": coeff_to_json(self.rhs)}


@dataclass(frozen=True)
class VerificationReport:
    id: str
    requested_order: int
    agreement_order: int
    first_mismatch: Mismatch | None = None
    reading: str | None = None
    elapsed_ms: float | None = None
    status: str | None = None

    def __post_init__(self) -> None:
        if self.agreement_order > self.requested_order:
            raise ValueError("agreement cannot exceed the requested order")
        if (self.first_mismatch is not None) != (self.agreement_order < self.requested_order):
            raise ValueError("a mismatch is reported exactly when agreement falls short")

    @property
    def agrees(self) -> bool:
        return self.first_mismatch is None

    def payload(self) -> dict:
        """Deterministic part of the report (no timing)."""
        return {
            "id": self.id,
            "requested_order": self.requested_order,
            "agreement_order": self.agreement_order,
            "first_mismatch": None if self.first_mismatch is None else self.first_mismatch.to_json(),
            "reading": self.reading,
        }

    def to_json(self, timing: bool = True) -> dict:
        out = self.payload()
        out["elapsed_ms"] = None if not timing or self.elapsed_ms is None else round(self.elapsed_ms, 3)
        return out

    def summary(self) -> str:
        verdict = "ok" if self.agrees else "MISMATCH"
        line = f"{self.id:<28} {verdict:<8} agreement {self.agreement_order}/{self.requested_order}"
        if self.first_mismatch is not None:
            m = self.first_mismatch
            line += f"  first mismatch q^{m.exponent}: {m.lhs} vs {m.rhs}"
        if self.reading:
            line += f"  [{self.reading}]"
        return line


class InsufficientOrderError(RuntimeError):
    """An evaluated side came back with a lower order than the comparison needs."""


def compare_series(id: str, lhs: TruncLaurentSeries, rhs: TruncLaurentSeries, order: int,
                   reading: str | None = None, elapsed_ms: float | None = None,
                   status: str | None = None) -> VerificationReport:
    """Compare two series through ``order``; both must be known that far."""
    if lhs.ring != rhs.ring:
        lhs, rhs = lhs.promote(), rhs.promote()
    for side, s in (("lhs", lhs), ("rhs", rhs)):
        if s.order is not None and s.order < order:
            raise InsufficientOrderError(f"{id}: {side} known only through q^{s.order}, need q^{order}")
    bad = lhs.first_mismatch(rhs, order)
    if bad is None:
        return VerificationReport(id, order, order, None, reading, elapsed_ms, status)
    mm = Mismatch(bad, lhs[bad], rhs[bad])
    return VerificationReport(id, order, min(bad, order + 1) - 1, mm, reading, elapsed_ms, status)


def compare_exact(id: str, lhs: TruncLaurentSeries, rhs: TruncLaurentSeries, order: int,
                  reading: str | None = None) -> VerificationReport:
    """Full equality of two exact Laurent polynomials.

    A difference above ``order`` is still reported; agreement is then capped
    at ``order - 1``.
    """
    if lhs.ring != rhs.ring:
        lhs, rhs = lhs.promote(), rhs.promote()
    bad = lhs.first_mismatch(rhs)
    if bad is None:
        return VerificationReport(id, order, order, None, reading)
    return VerificationReport(id, order, min(bad, order) - 1, Mismatch(bad, lhs[bad], rhs[bad]), reading)
