"""Shared corpus of shift presentations and prebuilt covers."""

import random

import pytest

from soficshift import (Alphabet, EmptyShiftError, LabeledGraph,
                        build_cover, parse_presentation, sft_to_graph,
                        trim_essential)

EVEN_TEXT = """\
# the even shift: between two 1's there is an even number of 0's
alphabet 0 1
vertex a
vertex b
edge a a 1
edge a b 0
edge b a 0
"""

GOLDEN_TEXT = """\
alphabet 0 1
forbid 1 1
"""

TWINS_TEXT = """\
# two disjoint copies of the even-shift presentation
alphabet 0 1
vertex a1
vertex b1
vertex a2
vertex b2
edge a1 a1 1
edge a1 b1 0
edge b1 a1 0
edge a2 a2 1
edge a2 b2 0
edge b2 a2 0
"""

CHAIN_TEXT = """\
# reducible: a-loop feeding a c-loop through one b edge
alphabet a b c
vertex p
vertex q
edge p p a
edge p q b
edge q q c
"""


def make_even():
    return parse_presentation(EVEN_TEXT)


def make_golden():
    return sft_to_graph(parse_presentation(GOLDEN_TEXT))


def make_full(n):
    """The one-vertex presentation of the full shift on n letters."""
    return LabeledGraph(Alphabet([str(i) for i in range(n)]), ["v"],
                        [(0, 0, a) for a in range(n)])


def make_full_sft(n):
    """The same full shift through the forbidden-word compiler."""
    return sft_to_graph(
        parse_presentation("alphabet " + " ".join(str(i) for i in range(n))))


def make_twins():
    return parse_presentation(TWINS_TEXT)


def make_chain():
    return parse_presentation(CHAIN_TEXT)


def corpus_graphs():
    """The named corpus: even shift, golden mean, full 1..4 shifts,
    and two reducible fixtures."""
    return [
        ("even", make_even()),
        ("golden", make_golden()),
        ("full1", make_full(1)),
        ("full2", make_full(2)),
        ("full3", make_full(3)),
        ("full4", make_full(4)),
        ("twins", make_twins()),
        ("chain", make_chain()),
    ]


def random_essential_graph(rng):
    """A random essential presentation with at most 4 vertices and 3
    letters."""
    while True:
        nv = rng.randint(1, 4)
        na = rng.randint(1, 3)
        density = rng.uniform(0.15, 0.4)
        edges = [(s, t, a)
                 for s in range(nv) for t in range(nv) for a in range(na)
                 if rng.random() < density]
        if not edges:
            continue
        try:
            return trim_essential(LabeledGraph(
                Alphabet([str(i) for i in range(na)]),
                [f"v{i}" for i in range(nv)], edges))
        except EmptyShiftError:
            continue


def random_corpus(count, seed):
    rng = random.Random(seed)
    return [random_essential_graph(rng) for _ in range(count)]


@pytest.fixture(scope="session")
def even_graph():
    return make_even()


@pytest.fixture(scope="session")
def golden_graph():
    return make_golden()


@pytest.fixture(scope="session")
def even_cover(even_graph):
    return build_cover(even_graph)


@pytest.fixture(scope="session")
def golden_cover(golden_graph):
    return build_cover(golden_graph)


@pytest.fixture(scope="session")
def corpus_covers():
    return [(name, build_cover(g)) for name, g in corpus_graphs()]
