"""Torsion, infinite-order, ping-pong, free-action, and padded certificates."""

import pytest

import operad_groups as og
from helpers import CUBE1, CUBE2, PLANAR2, TREE2, TREE3


class TestTorsionElements:
    def test_involution(self):
        g1 = og.make_gamma1(TREE2)
        assert og.format_span(g1) == "(. .) | p[1,0] ; (. .)"
        assert og.sp_order(g1, 8) == 2
        assert og.sp_order(og.make_gamma1(TREE3), 8) == 2
        assert og.sp_order(og.make_gamma1(CUBE2), 8) == 2

    def test_three_cycle(self):
        g2 = og.make_gamma2(TREE2)
        assert og.format_span(g2) == "((. .) .) | p[2,0,1] ; ((. .) .)"
        assert og.sp_order(g2, 8) == 3
        assert og.sp_order(og.make_gamma2(TREE3), 8) == 3
        assert og.sp_order(og.make_gamma2(CUBE2), 8) == 3

    def test_requires_the_symmetric_flavor(self):
        with pytest.raises(ValueError):
            og.make_gamma1(PLANAR2)
        with pytest.raises(ValueError):
            og.make_gamma2(PLANAR2)


class TestInfiniteOrder:
    def test_shift_element(self):
        g = og.make_infinite_element(TREE2)
        assert og.format_span(g) == "((. .) .) | (. (. .))"
        assert og.sp_order(g, 16) is None

    def test_powers_report(self):
        report = og.infinite_order_check(TREE2, 8)
        assert report.ok
        assert len(report.rows) == 8
        report_cube = og.infinite_order_check(CUBE1, 8)
        assert report_cube.ok

    def test_reports_are_reproducible(self):
        assert og.infinite_order_check(TREE2, 6).rows == og.infinite_order_check(
            TREE2, 6
        ).rows


class TestPingPong:
    def test_ball_pair(self):
        B1, B2 = og.pingpong_balls(TREE2)
        assert str(B1.rep) == "(. .) @ m[0:- 1:a]"
        assert str(B2.rep) == "(. .) @ m[0:a 1:-]"

    def test_moving_the_left_ball_right(self):
        g1 = og.make_gamma1(TREE2)
        B1, B2 = og.pingpong_balls(TREE2)
        assert og.sp_class_eq(og.act(g1, B2), B1)

    def test_check_at_small_depth(self):
        report = og.pingpong_check(TREE2, 2)
        assert report.ok
        assert len(report.rows) == 9
        assert all(row["ok"] for row in report.rows)

    def test_rows_name_their_instances(self):
        report = og.pingpong_check(TREE2, 1)
        instances = {row["instance"] for row in report.rows}
        assert any("g1" in name for name in instances)
        assert any("g2" in name for name in instances)


class TestAlternatingWords:
    def test_specific_short_words(self):
        g1, g2 = og.make_gamma1(TREE2), og.make_gamma2(TREE2)
        assert not og.sp_is_identity(og.sp_mul(g1, g2))
        assert not og.sp_is_identity(og.sp_mul(g2, g1))
        assert not og.sp_is_identity(
            og.sp_mul(og.sp_mul(g1, g2), og.sp_mul(g1, og.sp_pow(g2, 2)))
        )

    def test_check_up_to_length_four(self):
        report = og.alternating_words_nontrivial(TREE2, 4)
        assert report.ok
        assert len(report.rows) == 21

    def test_reproducible(self):
        a = og.alternating_words_nontrivial(TREE2, 3)
        b = og.alternating_words_nontrivial(TREE2, 3)
        assert a.rows == b.rows


class TestFreeAction:
    def test_a_swap_never_fixes_an_arrow(self):
        # the permutation shuffles codomain coordinates, so the arrow needs
        # a codomain of length at least two
        arrow = og.Arrow.from_forest(
            TREE2, (og.op_generator(TREE2), og.op_identity(TREE2))
        )
        swap = og.Permutation((1, 0))
        moved = og.compose(arrow, og.perm_arrow(TREE2, swap))
        assert not og.arrow_eq(moved, arrow)

    def test_exhaustive_small_report(self):
        report = og.free_action_check(TREE2, 3, 2)
        assert report.ok
        assert len(report.rows) == 73

    def test_reproducible(self):
        assert (
            og.free_action_check(TREE2, 3, 2, seed=5).rows
            == og.free_action_check(TREE2, 3, 2, seed=5).rows
        )


class TestSigmaSpans:
    def test_identity_permutation_gives_the_identity_span(self):
        arrow = og.Arrow.from_forest(
            TREE2, (og.op_generator(TREE2), og.op_identity(TREE2))
        )
        assert og.sigma_span_check(arrow, og.Permutation((0, 1)))

    def test_nontrivial_permutation_gives_a_nontrivial_span(self):
        arrow = og.Arrow.from_forest(
            TREE2, (og.op_generator(TREE2), og.op_identity(TREE2))
        )
        assert not og.sigma_span_check(arrow, og.Permutation((1, 0)))

    def test_degree_must_match_the_codomain(self):
        arrow = og.Arrow.from_forest(
            TREE2, (og.op_generator(TREE2), og.op_identity(TREE2))
        )
        with pytest.raises(og.SizeMismatchError):
            og.sigma_span_check(arrow, og.Permutation((0, 1, 2)))

    def test_exhaustive_small_report(self):
        report = og.sigma_span_report(TREE2, 3, 2)
        assert report.ok
        assert len(report.rows) == 73

    def test_cube_report(self):
        assert og.sigma_span_report(CUBE2, 2, 1).ok


class TestPaddedCertificates:
    def test_torsion_orders_survive_padding(self):
        assert og.sp_order(og.make_padded_gamma1(TREE2), 8) == 2
        assert og.sp_order(og.make_padded_gamma2(TREE2), 8) == 3

    def test_infinite_order_survives_padding(self):
        g = og.make_padded_infinite(TREE2)
        assert og.sp_order(g, 16) is None

    def test_full_check(self):
        for config in (TREE2, CUBE1):
            report = og.padded_certificates_check(config, 8)
            assert report.ok
            assert len(report.rows) == 24

    def test_padded_elements_differ_from_the_plain_ones(self):
        assert not og.sp_eq(
            og.make_padded_gamma1(TREE2), og.sp_identity(TREE2, 1)
        )
        plain = og.make_gamma1(TREE2)
        padded = og.make_padded_gamma1(TREE2)
        assert not og.sp_eq(plain, padded)
