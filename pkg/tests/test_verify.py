import pytest

from oockit.construct import equi_2mod4, explicit_code, g_regular_4g
from oockit.core import Code, CodeParams, make_codeword
from oockit.verify import (
    MAX_WITNESSES,
    composition_census,
    composition_inequalities,
    matrix_correlation,
    matrix_verdicts,
    parity_census,
    parity_inequalities,
    structural_facts,
    verify_code,
)


def cw(*cells):
    return make_codeword(cells)


def one_row_code(m, slot_sets, lambda_a=2):
    return Code(
        CodeParams(1, m, 3, lambda_a, 1),
        [cw(*((0, s) for s in slots)) for slots in slot_sets],
    )


class TestVerifyCode:
    def test_explicit_three_row_code_passes(self):
        report = verify_code(explicit_code("3x8").code)
        assert report.passed and report.max_auto_multiplicity == 2

    def test_cross_violation_on_shared_pure_difference(self):
        code = one_row_code(9, [(0, 3, 6), (0, 2, 5)])
        report = verify_code(code)
        assert not report.cross_ok
        assert any(
            w.kind == "cross" and w.codewords == (0, 1) and w.difference in (3, 6)
            for w in report.witnesses
        )

    def test_auto_violation_on_third_period_triple(self):
        report = verify_code(one_row_code(9, [(0, 3, 6)]))
        assert not report.auto_ok
        assert report.max_auto_multiplicity == 3
        assert report.cross_ok

    def test_auto_multiplicity_sums_across_rows(self):
        # difference 1 appears once in row 0 and once in row 1; the shifted
        # matrix overlaps in two cells, so the multiplicities must sum
        code = Code(
            CodeParams(2, 8, 4, 1, 1),
            [cw((0, 0), (0, 1), (1, 0), (1, 1))],
        )
        report = verify_code(code)
        assert report.max_auto_multiplicity == 2
        assert not report.auto_ok
        assert matrix_verdicts(code)[0] is False

    def test_duplicate_codewords_collide(self):
        code = one_row_code(8, [(0, 1, 3), (0, 1, 3)])
        report = verify_code(code)
        assert not report.cross_ok

    def test_witness_list_truncates(self):
        code = one_row_code(40, [(0, 1, 3)] * 30)
        report = verify_code(code)
        assert len(report.witnesses) <= MAX_WITNESSES
        assert report.violation_count >= 3 * (30 * 29 // 2)

    def test_empty_code(self):
        report = verify_code(Code(CodeParams(1, 8), []))
        assert report.passed and report.max_auto_multiplicity == 0


class TestMatrixCorrelation:
    def test_zero_shift_self_is_weight(self):
        a = cw((0, 0), (0, 1), (0, 2))
        assert matrix_correlation(a, a, 0, CodeParams(1, 8)) == 3

    def test_disjoint_rows_never_overlap(self):
        a = cw((0, 0), (0, 1), (0, 2))
        b = cw((1, 0), (1, 1), (1, 2))
        assert all(matrix_correlation(a, b, r, CodeParams(2, 8)) == 0 for r in range(8))

    def test_shifted_interval_overlap(self):
        a = cw((0, 0), (0, 1), (0, 2))
        assert matrix_correlation(a, a, 1, CodeParams(1, 8)) == 2

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            matrix_correlation(cw((0, 9),), cw((0, 0),), 0, CodeParams(1, 8))

    def test_matrix_verdicts_agree_on_examples(self):
        good = explicit_code("3x8").code
        assert matrix_verdicts(good) == (True, True)
        bad = one_row_code(9, [(0, 3, 6), (0, 2, 5)])
        assert matrix_verdicts(bad) == (False, False)


class TestCompositionCensus:
    def test_explicit_three_row_split(self):
        c = composition_census(explicit_code("3x8").code)
        assert (c.alpha, c.beta, c.gamma) == (3, 6, 4)
        assert (c.alpha3, c.beta1, c.beta2) == (3, 0, 6)

    def test_empty_code(self):
        c = composition_census(Code(CodeParams(3, 8), []))
        assert (c.alpha, c.beta, c.gamma) == (0, 0, 0)

    def test_single_transversal(self):
        c = composition_census(Code(CodeParams(3, 8), [cw((0, 0), (1, 1), (2, 3))]))
        assert (c.alpha, c.beta, c.gamma) == (0, 0, 1)

    def test_bucket_sums(self):
        c = composition_census(explicit_code("3x52").code)
        assert c.alpha2 + c.alpha3 + c.alpha4 + c.alpha5 + c.alpha6 == c.alpha
        assert c.beta1 + c.beta2 == c.beta
        assert c.alpha + c.beta + c.gamma == 88


class TestParityCensus:
    def test_explicit_one_row_code_breakdown(self):
        code = explicit_code("1d48").code
        pc = parity_census(code)
        assert pc.total() == 10
        assert (pc.c_o, pc.c_e, pc.c_d) == (6, 0, 1)
        assert (pc.n_oe, pc.n_od, pc.n_e, pc.n_d) == (0, 3, 0, 0)

    def test_single_progression(self):
        pc = parity_census(one_row_code(8, [(0, 1, 2)]))
        assert (pc.c_o, pc.total()) == (1, 1)

    def test_two_odd_one_doubly_even_pair(self):
        # halved sets {1,16,17} and {4,5,9}: two odds plus a doubly even each
        pc = parity_census(one_row_code(48, [(0, 1, 17), (0, 5, 9)]))
        assert pc.n_od == 2 and pc.total() == 2

    def test_rejects_bad_modulus(self):
        with pytest.raises(ValueError):
            parity_census(one_row_code(6, [(0, 1, 2)]))


class TestStructuralFacts:
    def test_leave_of_smallest_2mod4_family(self):
        facts = structural_facts(equi_2mod4(6).code)
        assert facts.difference_leave == {3}
        assert facts.is_equi_difference and not facts.is_tight_cac

    def test_regular_subgroups_of_4g_family(self):
        facts = structural_facts(g_regular_4g(2).code)
        assert facts.difference_leave == {1, 4, 7}
        assert facts.regular_subgroups == {1, 2}

    def test_tight_on_five(self):
        facts = structural_facts(one_row_code(5, [(0, 1, 2)]))
        assert facts.difference_leave == frozenset()
        assert facts.is_tight_cac

    def test_leave_and_support_partition_nonzero_residues(self):
        code = equi_2mod4(18).code
        facts = structural_facts(code)
        support = set()
        for w in code.codewords:
            slots = [s for _, s in w]
            support |= {(x - y) % 18 for x in slots for y in slots if x != y}
        assert facts.difference_leave | support == set(range(1, 18))
        assert not facts.difference_leave & support

    def test_needs_one_row(self):
        with pytest.raises(ValueError):
            structural_facts(explicit_code("3x8").code)


class TestCensusInequalities:
    def test_composition_bounds_on_examples(self):
        for code_id in ("3x8", "3x20", "3x32", "3x52", "3x4", "1d48"):
            code = explicit_code(code_id).code
            for name, (lhs, rhs) in composition_inequalities(code).items():
                assert lhs <= rhs, (code_id, name)

    def test_parity_bounds_on_one_row_code(self):
        code = explicit_code("1d48").code
        bounds = parity_inequalities(code)
        assert bounds["odd_capacity"] == (12, 12)
        assert bounds["singly_even_capacity"] == (6, 6)
        assert bounds["doubly_even_capacity"] == (5, 6)
