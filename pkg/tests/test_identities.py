"""Catalog of convolution identities: oracle sums vs closed forms."""

from fractions import Fraction

import pytest

from catconv.exactnum import binomial, catalan
from catconv.identities import (
    ARITY,
    CHI_BEARING,
    INTEGER_VALUED,
    DomainError,
    IdentityId,
    IdentityParams,
    VALIDATED_SPECIALIZATIONS,
    cor2_rhs_corrected,
    dictionary_check,
    lhs_value,
    rhs_value,
    specialization_check,
    specialization_findings,
    validate,
    verify_case,
    verify_grid,
)

F = Fraction


class TestKnownValues:
    def test_thm_a_direct_sum(self):
        # C0 C2 - 2 C1 C1 + C2 C0 = 2 - 2 + 2
        assert lhs_value(IdentityId.THM_A, IdentityParams(n=2, lam=0)) == 2

    @pytest.mark.parametrize("lam", [0, 1, 5, 9])
    def test_thm_a_odd_index_vanishes(self, lam):
        assert lhs_value(IdentityId.THM_A, IdentityParams(n=1, lam=lam)) == 0

    def test_thm_b_small_case(self):
        p = IdentityParams(n=2, lam=1)
        assert lhs_value(IdentityId.THM_B, p) == 20 - 24 + 10
        assert rhs_value(IdentityId.THM_B, p) == 6

    def test_thm_c_small_case(self):
        p = IdentityParams(n=2, lam=0)
        assert lhs_value(IdentityId.THM_C, p) == 6 - 8 + 6
        assert rhs_value(IdentityId.THM_C, p) == 4

    def test_thm_e_small_case(self):
        p = IdentityParams(n=2, lam=1, mu=0)
        assert lhs_value(IdentityId.THM_E, p) == 3

    def test_prop_a_small_case(self):
        p = IdentityParams(n=2, a=1, c=3)
        assert lhs_value(IdentityId.PROP_A, p) == F(1, 6) - F(2, 9) + F(1, 6)
        assert rhs_value(IdentityId.PROP_A, p) == F(1, 9)

    def test_prop_b_small_case(self):
        p = IdentityParams(n=2, a=F(1, 2), c=1)
        assert lhs_value(IdentityId.PROP_B, p) == F(1, 3) - F(1, 2) + F(3, 8)
        assert rhs_value(IdentityId.PROP_B, p) == F(5, 24)

    def test_prop_c_small_case(self):
        p = IdentityParams(n=1, a=1, c=2)
        assert lhs_value(IdentityId.PROP_C, p) == F(1, 2)
        assert rhs_value(IdentityId.PROP_C, p) == F(1, 2)

    def test_recurrence_case(self):
        p = IdentityParams(n=3)
        report = verify_case(IdentityId.RECURRENCE, p)
        assert report.ok
        assert lhs_value(IdentityId.RECURRENCE, p) == 14

    def test_touchard_case(self):
        p = IdentityParams(n=4)
        assert verify_case(IdentityId.TOUCHARD, p).ok
        assert lhs_value(IdentityId.TOUCHARD, p) == catalan(5)


class TestGrids:
    def test_thm_a_full_grid(self):
        report = verify_grid(IdentityId.THM_A, (0, 40), (0, 10))
        assert report.ok
        assert report.cases_run == 41 * 11
        assert report.skipped == 0

    def test_cor_3_grid(self):
        report = verify_grid(IdentityId.COR_3, (0, 30), (0, 8))
        assert report.ok

    @pytest.mark.parametrize(
        "ident",
        [IdentityId.RECURRENCE, IdentityId.TOUCHARD,
         IdentityId.MIKIC1, IdentityId.MIKIC2],
    )
    def test_single_parameter_identities(self, ident):
        report = verify_grid(ident, (0, 120))
        assert report.ok
        assert report.cases_run == 121

    def test_mikic_matches_lam_zero_theorems(self):
        for n in range(101):
            base = IdentityParams(n=n)
            lifted = IdentityParams(n=n, lam=0)
            assert lhs_value(IdentityId.MIKIC1, base) == lhs_value(
                IdentityId.THM_A, lifted
            )
            assert lhs_value(IdentityId.MIKIC2, base) == lhs_value(
                IdentityId.THM_B, lifted
            )

    def test_rational_grids_for_propositions(self):
        grid = [F(1, 2), F(3, 2), F(2), F(7, 3)]
        for ident in (IdentityId.PROP_A, IdentityId.PROP_B, IdentityId.PROP_C):
            report = verify_grid(ident, (0, 20), rational_grid=grid)
            assert report.ok, (ident, report.failures[:2])
            assert report.cases_run > 0

    def test_separate_a_and_c_grids(self):
        report = verify_grid(
            IdentityId.PROP_A,
            (0, 10),
            a_grid=[F(1, 2), F(1)],
            c_grid=[F(5, 2)],
        )
        assert report.ok
        assert report.cases_run == 11 * 2 * 1

    def test_parallel_grid_matches_serial(self):
        serial = verify_grid(IdentityId.THM_A, (0, 12), (0, 8), jobs=1)
        parallel = verify_grid(IdentityId.THM_A, (0, 12), (0, 8), jobs=2)
        assert serial.cases_run == parallel.cases_run
        assert serial.skipped == parallel.skipped
        assert parallel.ok

    def test_domain_violations_counted_as_skips(self):
        # thm-d is undefined at n=0 with lam > 0
        report = verify_grid(IdentityId.THM_D, (0, 5), (0, 2))
        assert report.ok
        assert report.skipped == 2


class TestStructuralInvariants:
    @pytest.mark.parametrize("ident", CHI_BEARING)
    def test_odd_index_sums_vanish(self, ident):
        for n in (1, 3, 5, 7, 9):
            if ARITY[ident] == ("n", "lam"):
                points = [IdentityParams(n=n, lam=l) for l in range(5)]
            elif ARITY[ident] == ("n", "lam", "mu"):
                points = [
                    IdentityParams(n=n, lam=l, mu=m)
                    for l in range(3) for m in range(3)
                ]
            else:
                points = [
                    IdentityParams(n=n, a=a, c=c)
                    for a in (F(1, 2), F(4, 3))
                    for c in (F(3, 2), F(5, 2))
                ]
            for p in points:
                try:
                    validate(ident, p)
                except DomainError:
                    continue
                assert lhs_value(ident, p) == 0, (ident, p)

    @pytest.mark.parametrize("ident", INTEGER_VALUED)
    def test_integer_valued_theorems(self, ident):
        for n in range(13):
            for lam in range(6):
                p = IdentityParams(n=n, lam=lam)
                try:
                    validate(ident, p)
                except DomainError:
                    continue
                assert lhs_value(ident, p).denominator == 1, (ident, p)

    def test_dictionary_conversions(self):
        report = dictionary_check()
        assert report.ok
        assert report.cases_run == 41 * 13 * 4

    def test_arity_covers_every_identity(self):
        assert set(ARITY) == set(IdentityId)


class TestCor2Discrepancy:
    def test_n_zero_matches_as_printed(self):
        assert verify_case(IdentityId.COR_2, IdentityParams(n=0, lam=0)).ok

    def test_flagged_not_failed(self):
        report = verify_case(IdentityId.COR_2, IdentityParams(n=1, lam=0))
        assert not report.failures
        assert len(report.flagged) == 1
        record = report.flagged[0]
        assert record.lhs == F(2, 3)
        assert record.rhs == F(1)
        assert "corrected central binomial" in record.note

    def test_second_witness_point(self):
        report = verify_case(IdentityId.COR_2, IdentityParams(n=2, lam=0))
        assert not report.failures
        assert report.flagged[0].lhs == F(-2, 15)
        assert report.flagged[0].rhs == F(-2, 9)

    def test_corrected_form_matches_oracle_everywhere(self):
        for n in range(25):
            for lam in range(6):
                p = IdentityParams(n=n, lam=lam)
                assert lhs_value(IdentityId.COR_2, p) == cor2_rhs_corrected(p)

    def test_corrected_and_printed_differ_by_single_binomial(self):
        # The two shells differ only in the central binomial's row index.
        for n in (1, 2, 5, 8):
            for lam in (0, 1, 3):
                p = IdentityParams(n=n, lam=lam)
                printed = rhs_value(IdentityId.COR_2, p)
                corrected = cor2_rhs_corrected(p)
                if printed == 0:
                    assert corrected == 0
                    continue
                ratio = printed / corrected
                expected = F(
                    binomial(1 + 2 * lam + 2 * n, lam + n),
                    binomial(2 * lam + 2 * n, lam + n),
                )
                assert ratio == expected

    def test_grid_reports_flags_without_failures(self):
        report = verify_grid(IdentityId.COR_2, (0, 20), (0, 5))
        assert report.ok
        assert report.flagged
        assert not report.failures


class TestDomainValidation:
    def test_thm_d_rejects_n_zero_with_positive_lam(self):
        with pytest.raises(DomainError):
            validate(IdentityId.THM_D, IdentityParams(n=0, lam=1))
        # lam = 0 stays in the domain
        validate(IdentityId.THM_D, IdentityParams(n=0, lam=0))

    def test_prop_c_rejects_c_one(self):
        with pytest.raises(DomainError):
            validate(IdentityId.PROP_C, IdentityParams(n=2, a=F(1, 2), c=1))

    def test_prop_a_rejects_nonpositive_integer_c_within_range(self):
        with pytest.raises(DomainError):
            validate(IdentityId.PROP_A, IdentityParams(n=3, a=F(1, 2), c=-2))
        # same c is fine when n stays below the zero hit
        validate(IdentityId.PROP_A, IdentityParams(n=2, a=F(1, 2), c=-2))

    def test_prop_b_rejects_half_integer_hits(self):
        with pytest.raises(DomainError):
            validate(
                IdentityId.PROP_B,
                IdentityParams(n=4, a=F(-1, 2), c=F(1, 2)),
            )

    def test_missing_parameter_is_a_domain_error(self):
        with pytest.raises(DomainError):
            validate(IdentityId.THM_A, IdentityParams(n=2))

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            validate(IdentityId.RECURRENCE, IdentityParams(n=-1))


class TestSpecializations:
    @pytest.mark.parametrize("theorem", sorted(VALIDATED_SPECIALIZATIONS,
                                               key=lambda i: i.value))
    def test_theorem_is_rescaled_proposition(self, theorem):
        report = specialization_check(theorem, n_max=12, lam_max=5, mu_max=4)
        assert report.ok, report.failures[:2]
        assert report.cases_run > 0

    def test_findings_flag_exactly_the_two_bad_rows(self):
        report = specialization_findings()
        assert not report.failures
        flagged = {dict(r.params)["theorem"]: r for r in report.flagged}
        assert set(flagged) == {"thm-d", "thm-e"}

    def test_thm_e_finding_carries_witness(self):
        report = specialization_findings()
        record = next(
            r for r in report.flagged if dict(r.params)["theorem"] == "thm-e"
        )
        params = dict(record.params)
        assert params["stated_c"] == "2+mu"
        assert params["validated_c"] == "1/2+mu"
        # witness point where the stated substitution gives the wrong value
        assert record.lhs == F(4)
        assert record.rhs == F(14, 5)

    def test_thm_d_finding_explains_domain_exit(self):
        report = specialization_findings()
        record = next(
            r for r in report.flagged if dict(r.params)["theorem"] == "thm-d"
        )
        assert record.lhs is None
        assert "parameter the theorem does not have" in record.note
