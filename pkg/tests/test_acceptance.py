"""The twelve acceptance criteria, each printing one PASS/FAIL line."""

import time

import pytest

import test_properties
from qlab.finite import (
    SUPPORTED_PAIRS,
    FiniteSpec,
    LimitFamily,
    S_finite,
    limit_series,
    reflect_finite,
    rk1_bracket_combo,
    rk4_limit,
    stabilization_order,
)
from qlab.labcli.verify import EXIT_OK, exit_code, verify
from qlab.oracle import ResidueClassSpec, gap_series, residue_series, variant_spec
from qlab.sums import S, kr_product, reduce_to_basis, relation_A_check, relation_B_check


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail, elapsed=None, limit=None):
        timing = "" if elapsed is None else f" in {elapsed:.2f}s" + ("" if limit is None else f" (limit {limit}s)")
        with capsys.disabled():
            print(f"\ncriterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}{timing}")
        return ok
    return emit


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def _ids_agree(ids, order):
    reps = [verify(i, order) for i in ids]
    return all(r.agrees and r.agreement_order == order for r in reps), reps


def test_01_schur_polynomials(report):
    with Timer() as t:
        ok, reps = _ids_agree(["schur_poly_1", "schur_poly_2"], 400)
    ok = ok and all("N=0..40" in r.reading for r in reps)
    assert report(1, ok and t.elapsed < 5, "two polynomial identities exact for N = 0..40", t.elapsed, 5)


def test_02_rogers_ramanujan(report):
    with Timer() as t:
        ok, _ = _ids_agree(["rr1", "rr2", "rr_iv_1", "rr_iv_2"], 400)
    assert report(2, ok and t.elapsed < 5, "four sum = product identities through q^400", t.elapsed, 5)


def test_03_kanade_russell(report):
    with Timer() as t:
        ok, _ = _ids_agree([f"kr{i}" for i in range(1, 6)], 400)
    assert report(3, ok and t.elapsed < 20, "KR1..KR5 through q^400", t.elapsed, 20)


def test_04_contiguous_relations(report):
    with Timer() as t:
        bad = [(a, b) for a in range(-3, 10) for b in range(-3, 10)
               if not (relation_A_check(a, b, 200).agrees and relation_B_check(a, b, 200).agrees)]
    assert report(4, not bad and t.elapsed < 30, f"both relations on 169 pairs through q^200, failures {bad}",
                  t.elapsed, 30)


def test_05_reduction(report):
    failures = []
    for a in range(0, 5):
        for b in range(0, 7):
            combo = reduce_to_basis((a, b), order=200)
            if not (combo.certificate.agrees and combo.certified_order == 200):
                failures.append((a, b))
            if any(not (0 <= x <= 2 and 0 <= y <= 2) for x, y in combo.terms):
                failures.append((a, b))
    assert report(5, not failures, f"35 reductions certified at q^200, failures {failures}")


def test_06_hickerson(report):
    with Timer() as t:
        ok, _ = _ids_agree(["hick1", "hick1_conj", "hick2", "hick2_conj"], 300)
    assert report(6, ok and t.elapsed < 10, "four Z[w] identities through q^300", t.elapsed, 10)


def test_07_limit_relations(report):
    with Timer() as t:
        ok, _ = _ids_agree([f"thm_stats_{i}" for i in range(1, 5)], 500)
    assert report(7, ok and t.elapsed < 10, "four limit relations through q^500", t.elapsed, 10)


def test_08_conjectures(report):
    ok, reps = _ids_agree(["conj1", "conj2", "conj1_conj", "conj2_conj"], 300)
    code = exit_code(reps)
    assert report(8, ok and code == EXIT_OK and all(r.status == "conjectural" for r in reps),
                  f"four conjectures through q^300, exit code {code}")


def test_09_reflected_limits(report):
    P, M = 200, 40
    measured = {}
    for r in range(3):
        measured[f"RK4_{r}"] = stabilization_order(LimitFamily("RK4", r), M, cap=P)
    for r in (0, 2):
        poly = reflect_finite((0, 0), M, r, order=P)
        for form in (0, 1):
            bad = poly.first_mismatch(rk1_bracket_combo(r, form, P), P)
            measured[f"RK1_{r}/{form}"] = P + 1 if bad is None else bad
    linear = (rk4_limit(2, 300) == (rk4_limit(0, 300) + rk4_limit(1, 300).shift(2)).truncate(300))
    rk1 = [limit_series(LimitFamily("RK1", r), 300) for r in range(3)]
    linear = linear and rk1[1] == (rk1[0].shift(1) + rk1[2]).truncate(300)
    ok = min(measured.values()) >= 100 and linear
    assert report(9, ok, f"M=40 stabilization {measured}; linear relations at q^300: {linear}")


def test_10_oracle_equivalence(report):
    bad = []
    with Timer() as t:
        for pair in SUPPORTED_PAIRS:
            for N in (5, 8, 12):
                if gap_series(variant_spec(pair, N), 40) != S_finite(FiniteSpec(*pair, N), 40).window(0, 40):
                    bad.append((pair, N))
        residues = {1: {1, 3, 6, 8}, 2: {2, 3, 6, 7}, 3: {3, 4, 5, 6}, 4: {2, 3, 5, 8}, 5: {1, 4, 6, 7}}
        for i, res in residues.items():
            if residue_series(ResidueClassSpec(9, res), 60) != kr_product(i, 60).window(0, 60):
                bad.append(f"KR{i}")
    assert report(10, not bad and t.elapsed <= 60, f"30 gap series and 5 residue series, failures {bad}",
                  t.elapsed, 60)


def test_11_prefix(report):
    bad = [(pair, N) for pair in SUPPORTED_PAIRS for N in range(31)
           if S_finite(FiniteSpec(*pair, N)).first_mismatch(S(*pair, N), N) is not None]
    assert report(11, not bad, f"ten finite versions agree with the series through q^N for N <= 30, failures {bad}")


PROPERTY_SUITES = [
    test_properties.test_integer_ring_axioms,
    test_properties.test_eisenstein_ring_axioms,
    test_properties.test_eisenstein_numbers,
    test_properties.test_conjugation_is_a_ring_homomorphism,
    test_properties.test_exponent_reflection_is_multiplicative,
    test_properties.test_binomial_symmetry_degree_positivity,
    test_properties.test_binomial_recurrences,
    test_properties.test_binomial_matches_pascal,
    test_properties.test_binomial_reflection_law,
    test_properties.test_pochhammer_reflection_law,
]


def test_12_property_suites(report):
    assert test_properties.CASES.max_examples == 1000
    failed = []
    for suite in PROPERTY_SUITES:
        try:
            suite()
        except Exception as exc:  # report, then fail below
            failed.append(f"{suite.__name__}: {type(exc).__name__}")
    assert report(12, not failed, f"{len(PROPERTY_SUITES)} suites x 1000 cases, failures {failed}")
