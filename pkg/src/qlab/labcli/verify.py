"""Evaluate catalog entries and turn the outcomes into reports and exit codes."""

from __future__ import annotations

import time
from typing import Iterable

from ..report import Mismatch, VerificationReport, compare_exact, compare_series
from ..ring import OMEGA, OMEGA2, TruncLaurentSeries
from .catalog import (
    CONJECTURAL,
    DIAGNOSTIC,
    PROVED,
    OMEGA_PRODUCT_PAIRS,
    IdentityEntry,
    Reflected,
    catalog,
    lookup,
    reflection_depth,
    omega_product,
)

EXIT_OK = 0
EXIT_PROVED_MISMATCH = 2
EXIT_CONJECTURE_MISMATCH = 3
EXIT_USAGE = 4

FILTERS = ("proved", "conjectural", "all")


class EvaluationError(RuntimeError):
    """A recipe failed to evaluate; the message names the entry and side."""


def _uses_reflection(expr) -> bool:
    if isinstance(expr, Reflected):
        return True
    for attr in ("terms", "factors"):
        if hasattr(expr, attr):
            return any(_uses_reflection(e) for e in getattr(expr, attr))
    inner = getattr(expr, "inner", None)
    return inner is not None and _uses_reflection(inner)


def _reading(entry: IdentityEntry, order: int) -> str | None:
    parts = [entry.reading] if entry.reading else []
    if _uses_reflection(entry.lhs) or _uses_reflection(entry.rhs):
        parts.append(f"M={reflection_depth(order)}")
    return "; ".join(parts) or None


def _verify_sweep(entry: IdentityEntry, order: int) -> VerificationReport:
    left, right = entry.sweep_sides
    worst: VerificationReport | None = None
    for N in entry.sweep:
        rep = compare_exact(entry.id, left(N), right(N), order, reading=f"N={N}")
        if not rep.agrees and (worst is None or rep.agreement_order < worst.agreement_order):
            worst = rep
    if worst is not None:
        return worst
    return VerificationReport(entry.id, order, order, None, f"exact, N={entry.sweep.start}..{entry.sweep.stop - 1}")


def verify_entry(entry: IdentityEntry, order: int | None = None) -> VerificationReport:
    order = entry.default_order if order is None else order
    if order < 0:
        raise ValueError("order must be non-negative")
    start = time.perf_counter()
    if entry.sweep is not None:
        rep = _verify_sweep(entry, order)
    else:
        sides = []
        for side, expr in (("lhs", entry.lhs), ("rhs", entry.rhs)):
            try:
                sides.append(expr.evaluate(order))
            except Exception as exc:
                raise EvaluationError(f"{entry.id}: evaluating {side} = {expr} failed: {exc}") from exc
        rep = compare_series(entry.id, sides[0], sides[1], order, _reading(entry, order))
    elapsed = (time.perf_counter() - start) * 1000
    return VerificationReport(rep.id, rep.requested_order, rep.agreement_order, rep.first_mismatch,
                              rep.reading, elapsed, entry.status)


def verify(entry_id: str, order: int | None = None) -> VerificationReport:
    return verify_entry(lookup(entry_id), order)


def exit_code(reports: Iterable[VerificationReport]) -> int:
    """2 if a proved identity failed, else 3 if a conjecture failed, else 0."""
    proved_bad = conj_bad = False
    for r in reports:
        if r.agrees or r.status == DIAGNOSTIC:
            continue
        if r.status == PROVED:
            proved_bad = True
        elif r.status == CONJECTURAL:
            conj_bad = True
    if proved_bad:
        return EXIT_PROVED_MISMATCH
    if conj_bad:
        return EXIT_CONJECTURE_MISMATCH
    return EXIT_OK


def select(entries: Iterable[IdentityEntry], filter: str) -> list[IdentityEntry]:
    if filter not in FILTERS:
        raise ValueError(f"filter must be one of {FILTERS}")
    if filter == "all":
        return list(entries)
    # diagnostic readings travel with the conjectures they qualify
    wanted = {PROVED} if filter == "proved" else {CONJECTURAL, DIAGNOSTIC}
    return [e for e in entries if e.status in wanted]


def run_all(order: int | None = None, filter: str = "all",
            entries: Iterable[IdentityEntry] | None = None) -> tuple[list[VerificationReport], int]:
    """Verify every selected entry, in catalog order.

    ``order=None`` uses each entry's default order.
    """
    chosen = select(catalog() if entries is None else entries, filter)
    reports = [verify_entry(e, order) for e in chosen]
    return reports, exit_code(reports)


def product_match_search(target: TruncLaurentSeries, order: int = 100) -> list[tuple[int, int]]:
    """Exponents (a, b) for which 1/(q, q^2, w q^a, w^2 q^b; q^3) equals ``target``
    through ``order``; a and b range over 1..3 with a + b not 3 or 6."""
    if target.order is not None and target.order < order:
        raise ValueError(f"target known only through q^{target.order}")
    target = target.promote()
    hits = []
    for a, b in OMEGA_PRODUCT_PAIRS:
        if omega_product(a, b).evaluate(order).first_mismatch(target, order) is None:
            hits.append((a, b))
    return hits


__all__ = [
    "EXIT_OK", "EXIT_PROVED_MISMATCH", "EXIT_CONJECTURE_MISMATCH", "EXIT_USAGE", "FILTERS",
    "EvaluationError", "Mismatch", "exit_code", "product_match_search", "run_all", "select",
    "verify", "verify_entry", "OMEGA", "OMEGA2",
]
