import pytest

from soficshift import (Alphabet, EmptyShiftError, LabeledGraph,
                        language_equal_upto, make_right_resolving,
                        trim_essential)
from conftest import make_even, make_golden, random_corpus


class TestTrim:
    def test_essential_graph_unchanged(self):
        g = make_even()
        assert trim_essential(g) == g

    def test_sink_removed(self):
        g = make_even()
        a = g.alphabet
        with_sink = LabeledGraph(
            a, list(g.vertex_names) + ["sink"],
            list(g.edges) + [(0, 2, 0)])
        assert trim_essential(with_sink) == g

    def test_acyclic_chain_is_empty(self):
        a = Alphabet(["0"])
        chain = LabeledGraph(a, ["x", "y", "z"], [(0, 1, 0), (1, 2, 0)])
        with pytest.raises(EmptyShiftError):
            trim_essential(chain)

    def test_idempotent(self):
        for g in random_corpus(20, seed=101):
            once = trim_essential(g)
            assert trim_essential(once) == once


class TestDeterminize:
    def test_right_resolving_input_unchanged(self):
        g = make_even()
        assert make_right_resolving(g) == g

    def test_golden_mean_unchanged(self):
        g = make_golden()
        assert make_right_resolving(g) == g

    def test_parallel_label_paths_merge(self):
        # u has two a-successors; the subset construction folds the
        # whole graph into one state with a single a-loop
        a = Alphabet(["a"])
        g = LabeledGraph(a, ["u", "v"], [(0, 0, 0), (0, 1, 0), (1, 0, 0)])
        det = make_right_resolving(g)
        assert len(det.vertex_names) == 1
        assert len(det.edges) == 1
        assert det.is_right_resolving()

    def test_output_right_resolving(self):
        for g in random_corpus(30, seed=102):
            det = make_right_resolving(g)
            assert det.is_right_resolving()
            assert det.is_essential()

    def test_language_preserved_on_random_graphs(self):
        for g in random_corpus(50, seed=103):
            det = make_right_resolving(trim_essential(g))
            assert language_equal_upto(g, det, 8)


class TestLanguageCompare:
    def test_reflexive(self):
        g = make_even()
        assert language_equal_upto(g, g, 10)

    def test_even_vs_golden(self):
        assert not language_equal_upto(make_even(), make_golden(), 3)
