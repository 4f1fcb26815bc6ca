import json

import pytest

from qlab.labcli.catalog import (
    CONJECTURAL,
    DIAGNOSTIC,
    PROVED,
    Const,
    IdentityEntry,
    InfProduct,
    Named,
    Prod,
    Scaled,
    Sum,
    catalog,
    lookup,
    named_series,
    reflection_depth,
    schur_alternating,
    schur_sum,
)
from qlab.labcli.verify import (
    EXIT_CONJECTURE_MISMATCH,
    EXIT_OK,
    EXIT_PROVED_MISMATCH,
    EvaluationError,
    exit_code,
    product_match_search,
    run_all,
    select,
    verify,
    verify_entry,
)
from qlab.qkit import inv_product
from qlab.ring import OMEGA, TruncLaurentSeries as T, conjugate_series
from qlab.sums import S
from naive import partitions


class TestCatalogContents:
    def test_size_and_unique_ids(self):
        ids = [e.id for e in catalog()]
        assert len(ids) >= 28
        assert len(set(ids)) == len(ids)

    def test_statuses(self):
        assert {e.status for e in catalog()} == {PROVED, CONJECTURAL, DIAGNOSTIC}
        for i in range(1, 6):
            assert lookup(f"kr{i}").status == CONJECTURAL
        assert lookup("thm_stats_1").status == PROVED
        assert lookup("hick2_printed").status == DIAGNOSTIC

    def test_unknown_id(self):
        with pytest.raises(KeyError, match="unknown identity"):
            lookup("no_such_thing")

    def test_bad_entry_fields(self):
        with pytest.raises(ValueError):
            IdentityEntry("x", "maybe", Const(1), Const(1))
        with pytest.raises(ValueError):
            IdentityEntry("x", PROVED, Const(1), Const(1), ring="Q")


class TestExpressions:
    def test_named_series(self):
        assert named_series("S(2,4)", 30) == S(2, 4, 30)
        assert named_series("KR1_product", 30) == inv_product([(1, 9), (3, 9), (6, 9), (8, 9)], 30)
        with pytest.raises(KeyError):
            named_series("S(2,4", 10)

    def test_limit_name_variants(self):
        assert named_series("G2*", 40) == named_series("G*2", 40)

    def test_expression_arithmetic(self):
        e = Sum((Named("S(0,0)"), Scaled(Named("S(1,1)"), -1, 2), Const(3, 1)))
        want = S(0, 0, 40) - S(1, 1, 38).shift(2) + T([3], 1)
        assert e.evaluate(40) == want.truncate(40)
        shifted = Prod((Named("S(0,0)"), Const(1, 1))).evaluate(20)
        assert shifted.first_mismatch(S(0, 0, 19).shift(1), 20) is None
        assert InfProduct((), ((1, 1),)).evaluate(6).window(0, 6) == [len(partitions(n, range(1, n + 1))) for n in range(7)]

    def test_reflection_depth_covers_order(self):
        for order in (0, 50, 100, 300, 500):
            assert 3 * reflection_depth(order) - 1 >= order

    @pytest.mark.parametrize("which", [1, 2])
    def test_schur_sides_small_n(self, which):
        for N in range(0, 8):
            assert schur_sum(N, which) == schur_alternating(N, which)
        assert schur_sum(0, 1) == T([1])


class TestVerification:
    def test_proved_headline_at_500(self):
        rep = verify("thm_stats_1", 500)
        assert rep.agrees and rep.agreement_order == 500 and rep.status == PROVED

    def test_kr1_at_400(self):
        rep = verify("kr1", 400)
        assert rep.agrees and rep.first_mismatch is None

    def test_negative_control(self):
        rep = verify_entry(lookup("kr1").perturbed(5), 100)
        assert not rep.agrees
        assert rep.first_mismatch.exponent == 5
        assert rep.agreement_order == 4

    def test_negative_control_exit_codes(self):
        assert run_all(60, entries=[lookup("rr1").perturbed(7)])[1] == EXIT_PROVED_MISMATCH
        assert run_all(60, entries=[lookup("kr2").perturbed(7)])[1] == EXIT_CONJECTURE_MISMATCH
        assert run_all(60, entries=[lookup("hick2_printed").perturbed(7)])[1] == EXIT_OK
        both = [lookup("kr2").perturbed(3), lookup("rr2").perturbed(9)]
        assert run_all(60, entries=both)[1] == EXIT_PROVED_MISMATCH

    def test_exact_sweep_perturbation(self):
        entry = lookup("schur_poly_1")
        bad = IdentityEntry("schur_bad", PROVED, entry.lhs, entry.rhs, sweep=range(0, 5),
                            sweep_sides=(entry.sweep_sides[0], lambda N: entry.sweep_sides[1](N) + T([1], 3 + N)))
        rep = verify_entry(bad, 40)
        assert rep.first_mismatch.exponent == 3
        assert exit_code([rep]) == EXIT_PROVED_MISMATCH

    def test_conjugation_symmetry(self):
        for base in ("hick1", "hick2", "conj1", "conj2"):
            entry, twin = lookup(base), lookup(base + "_conj")
            assert conjugate_series(entry.lhs.evaluate(80).promote()) == twin.lhs.evaluate(80).promote()
            assert conjugate_series(entry.rhs.evaluate(80).promote()) == twin.rhs.evaluate(80).promote()

    def test_diagnostic_readings_fail(self):
        assert verify("hick2_printed", 30).first_mismatch.exponent == 0
        assert not verify("rk1_bracket_0_printed", 50).agrees
        assert verify("limit_RK10_printed", 20).first_mismatch.exponent == 2

    def test_json_is_deterministic(self):
        a = verify("hick1", 100)
        b = verify("hick1", 100)
        assert a.payload() == b.payload()
        assert json.dumps(a.to_json(timing=False), sort_keys=True) == json.dumps(b.to_json(timing=False), sort_keys=True)
        assert a.to_json()["elapsed_ms"] is not None

    def test_json_coefficients_are_strings(self):
        rep = verify_entry(lookup("hick1").perturbed(4, OMEGA), 30)
        mm = rep.to_json()["first_mismatch"]
        assert mm["exponent"] == 4
        assert set(mm["lhs"]) == {"re_a", "omega_b"}
        assert isinstance(mm["lhs"]["re_a"], str)

    def test_evaluation_error_names_entry(self):
        entry = IdentityEntry("broken", PROVED, Named("S(1)"), Const(1))
        with pytest.raises(EvaluationError, match="broken"):
            verify_entry(entry, 10)

    def test_negative_order(self):
        with pytest.raises(ValueError):
            verify("kr1", -1)


class TestRuns:
    def test_filters(self):
        proved = select(catalog(), "proved")
        conj = select(catalog(), "conjectural")
        assert len(proved) + len(conj) == len(catalog())
        assert all(e.status == PROVED for e in proved)
        with pytest.raises(ValueError):
            select(catalog(), "some")

    def test_proved_at_300(self):
        reports, code = run_all(300, "proved")
        assert code == EXIT_OK, [r.summary() for r in reports if not r.agrees]

    def test_everything_at_50(self):
        reports, code = run_all(50, "all")
        assert code == EXIT_OK
        assert len(reports) == len(catalog())
        assert [r.id for r in reports] == [e.id for e in catalog()]


class TestProductSearch:
    def test_hickerson_products_found(self):
        assert product_match_search(named_series("H1_product", 100)) == [(3, 1)]
        assert product_match_search(named_series("KR4_product", 100)) == [(1, 1)]

    def test_unrelated_series_finds_nothing(self):
        assert product_match_search(inv_product([(1, 1)], 100)) == []

    def test_short_target_refused(self):
        with pytest.raises(ValueError):
            product_match_search(inv_product([(1, 1)], 10), 100)
