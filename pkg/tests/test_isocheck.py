import pytest

from soficshift import (build_cover, corrupt_cover, verify_all,
                        verify_ck_relations, verify_edge_sum_hypotheses,
                        verify_round_trips)
from soficshift.isocheck import CORRUPTION_KINDS, FAMILY_ORDER
from conftest import make_full, random_corpus

# for every check family, a corruption that must trip it
NEGATIVE_CONTROLS = {
    "word_path_equivalence": "reassign-range",
    "shifted_cylinder_classes": "drop-edge",
    "word_range_projections": "drop-edge",
    "class_edge_splitting": "reassign-range",
    "conjugation_locality": "duplicate-label",
    "range_projection_orthogonality": "duplicate-label",
    "edge_support_sums": "reassign-range",
    "range_projection_partition": "drop-edge",
    "left_resolving": "duplicate-label",
    "edge_label_cover": "drop-letter",
    "labeled_path_ranges": "drop-edge",
    "path_concatenation": "duplicate-label",
    "letter_roundtrip": "drop-edge",
    "edge_roundtrip": "duplicate-label",
    "projection_word_formulas": "reassign-range",
}


class TestHonestCovers:
    def test_corpus_passes_everything(self, corpus_covers):
        for name, cover in corpus_covers:
            report = verify_all(cover, max_len=8)
            assert report.all_passed, (name, report.render())
            assert len(report.results) == len(FAMILY_ORDER)

    def test_family_order_is_stable(self, even_cover):
        report = verify_all(even_cover, max_len=6)
        assert tuple(r.name for r in report.results) == FAMILY_ORDER

    def test_deterministic_reports(self, even_cover):
        a = verify_all(even_cover, max_len=7).render()
        b = verify_all(even_cover, max_len=7).render()
        assert a == b

    def test_even_ck_counts(self, even_cover):
        results = {r.name: r for r in verify_ck_relations(even_cover)}
        # 5 edges: 10 orthogonality pairs and 5 support sums
        assert results["range_projection_orthogonality"].checked == 10
        assert results["edge_support_sums"].checked == 5
        assert all(r.passed for r in results.values())

    def test_full_two_shift_partition_degenerates(self):
        cover = build_cover(make_full(2))
        results = {r.name: r for r in verify_ck_relations(cover)}
        assert results["range_projection_partition"].passed
        report = verify_all(cover, max_len=8)
        assert report.all_passed

    def test_edge_sum_and_round_trip_entrypoints(self, golden_cover):
        es = verify_edge_sum_hypotheses(golden_cover, max_len=8)
        assert [r.name for r in es] == [
            "left_resolving", "edge_label_cover", "labeled_path_ranges",
            "path_concatenation"]
        assert all(r.passed for r in es)
        rt = verify_round_trips(golden_cover)
        assert [r.name for r in rt] == ["letter_roundtrip",
                                        "edge_roundtrip"]
        assert all(r.passed for r in rt)

    def test_random_presentations_pass(self):
        for g in random_corpus(12, seed=301):
            report = verify_all(build_cover(g), max_len=6)
            assert report.all_passed, report.render()


class TestNegativeControls:
    def test_every_family_has_a_failing_control(self, even_cover):
        assert set(NEGATIVE_CONTROLS) == set(FAMILY_ORDER)
        failures_by_kind = {}
        for kind in CORRUPTION_KINDS:
            bad = corrupt_cover(even_cover, kind)
            report = verify_all(bad, max_len=6)
            failures_by_kind[kind] = {r.name for r in report.results
                                      if not r.passed}
            assert failures_by_kind[kind], kind
        for family, kind in NEGATIVE_CONTROLS.items():
            assert family in failures_by_kind[kind], (family, kind)

    def test_range_reassignment_breaks_support_sums(self, even_cover):
        bad = corrupt_cover(even_cover, "reassign-range")
        results = {r.name: r for r in verify_ck_relations(bad)}
        failed = results["edge_support_sums"]
        assert not failed.passed
        assert failed.witness is not None

    def test_duplicate_label_names_the_vertex(self, even_cover):
        bad = corrupt_cover(even_cover, "duplicate-label")
        results = {r.name: r for r in
                   verify_edge_sum_hypotheses(bad, max_len=4)}
        failed = results["left_resolving"]
        assert not failed.passed
        assert "E" in failed.witness and "labeled" in failed.witness

    def test_dropped_edge_breaks_letter_round_trip(self, even_cover):
        bad = corrupt_cover(even_cover, "drop-edge")
        dropped = even_cover.edges[0]
        results = {r.name: r for r in verify_round_trips(bad)}
        failed = results["letter_roundtrip"]
        assert not failed.passed
        assert even_cover.alphabet.tokens[dropped.label] in failed.witness

    def test_witness_only_on_failure(self, even_cover):
        for result in verify_all(even_cover, max_len=5).results:
            assert result.witness is None

    def test_unknown_corruption_rejected(self, even_cover):
        with pytest.raises(ValueError):
            corrupt_cover(even_cover, "melt")


class TestReportRendering:
    def test_pass_and_summary_lines(self, even_cover):
        text = verify_all(even_cover, max_len=5).render()
        lines = text.splitlines()
        assert lines[-1] == f"families={len(FAMILY_ORDER)} failed=0"
        assert all(line.startswith("PASS ") for line in lines[:-1])

    def test_fail_lines_carry_witnesses(self, even_cover):
        bad = corrupt_cover(even_cover, "drop-edge")
        text = verify_all(bad, max_len=5).render()
        assert "FAIL" in text and "witness=" in text
        assert text.splitlines()[-1].startswith(
            f"families={len(FAMILY_ORDER)} failed=")
