"""Mechanical verification of the finite combinatorial identities
relating a shift's diagonal model to its cover's edge algebra.

Every check family compares two independently computed objects: a
"graph route" derived from the cover's edges and the clopen-set
engine, against a "relation route" derived from survivor sets and the
transition semigroup.  A correct cover passes every family; a
corrupted cover (edges dropped, ranges reassigned, labels duplicated)
is caught by the family whose identity it breaks, with a witness.

Reports are plain data; rendering is left to callers.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import diagonal
from .diagonal import ClopenSet
from .errors import AmbiguousLabelError
from .krieger import KriegerCover
from .shiftcore import EPSILON, Edge, Word

FAMILY_ORDER = (
    "word_path_equivalence",
    "shifted_cylinder_classes",
    "word_range_projections",
    "class_edge_splitting",
    "conjugation_locality",
    "range_projection_orthogonality",
    "edge_support_sums",
    "range_projection_partition",
    "left_resolving",
    "edge_label_cover",
    "labeled_path_ranges",
    "path_concatenation",
    "letter_roundtrip",
    "edge_roundtrip",
    "projection_word_formulas",
)

CLOPEN_WORD_CAP = 5

CORRUPTION_KINDS = ("reassign-range", "drop-edge", "duplicate-label",
                    "drop-letter")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    checked: int
    witness: str | None = None

    def render(self) -> str:
        line = f"{'PASS' if self.passed else 'FAIL'} {self.name} " \
               f"checked={self.checked}"
        if self.witness is not None:
            line += f" witness={self.witness}"
        return line


@dataclass(frozen=True)
class Report:
    results: tuple[CheckResult, ...]

    @property
    def failed(self) -> int:
        return sum(1 for r in self.results if not r.passed)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0

    def render(self) -> str:
        lines = [r.render() for r in self.results]
        lines.append(f"families={len(self.results)} failed={self.failed}")
        return "\n".join(lines)


class _Recorder:
    """Accumulates per-family counts and first witnesses."""

    def __init__(self):
        self.checked: dict[str, int] = {}
        self.witness: dict[str, str] = {}

    def count(self, family: str, n: int = 1) -> None:
        self.checked[family] = self.checked.get(family, 0) + n

    def fail(self, family: str, witness: str) -> None:
        self.witness.setdefault(family, witness)

    def result(self, family: str) -> CheckResult:
        w = self.witness.get(family)
        return CheckResult(family, w is None,
                           self.checked.get(family, 0), w)


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _word_str(cover: KriegerCover, word: Word) -> str:
    return cover.alphabet.render(word)


def _scan_words(cover: KriegerCover, max_len: int,
                clopen_len: int) -> _Recorder:
    """One pass over all admissible words up to ``max_len`` computing
    the word-indexed families.

    Per word the relation route keeps the backward preimage of every
    realized survivor set, extended one letter at a time through the
    prepend map; the graph route keeps the unique backward path data
    and the forward path ends on the cover.
    """
    rec = _Recorder()
    m = cover.class_count
    block_of_mask = {_mask(c): i for c, i in cover.block_of.items()}
    class_masks = [
        _mask(min(block, key=lambda c: (len(c), tuple(sorted(c)))))
        for block in cover.class_sets]
    realized_masks = list(block_of_mask)
    pre_mask = {(a, _mask(c)): _mask(p)
                for (a, c), p in cover.pre_map.items()}
    in_edges_by_label: dict[int, list[Edge]] = {}
    for e in cover.edges:
        in_edges_by_label.setdefault(e.label, []).append(e)
    letters = list(cover.alphabet)
    all_classes = frozenset(range(m))

    # frontier state per word: (P, back, fwd) where P maps realized
    # mask -> preimage mask, back maps end class -> source class of
    # the unique path, fwd is the set of forward path ends
    start = ({mm: mm for mm in realized_masks},
             {i: i for i in range(m)}, all_classes)
    frontier: dict[Word, tuple] = {EPSILON: start}
    rels: dict[Word, frozenset] = {
        EPSILON: frozenset((i, i) for i in range(m))}

    for _ in range(max_len):
        nxt: dict[Word, tuple] = {}
        for word, (P, back, fwd) in frontier.items():
            for a in letters:
                w = word + (a,)
                P2 = {mm: (P[pre_mask[(a, mm)]]
                           if (a, mm) in pre_mask else 0)
                      for mm in realized_masks}
                back2: dict[int, int] = {}
                ambiguous = None
                for e in in_edges_by_label.get(a, ()):
                    if e.src in back:
                        if e.dst in back2:
                            ambiguous = e.dst
                            back2[e.dst] = min(back2[e.dst], back[e.src])
                        else:
                            back2[e.dst] = back[e.src]
                fwd2 = frozenset(e.dst for e in in_edges_by_label.get(a, ())
                                 if e.src in fwd)
                a_set = frozenset(i for i in range(m)
                                  if P2[class_masks[i]])
                b_set = frozenset(back2)
                if not a_set and not b_set:
                    continue

                ws = _word_str(cover, w)
                if ambiguous is not None:
                    msg = (f"two paths labeled {ws} end at "
                           f"E{ambiguous + 1}")
                    rec.fail("word_path_equivalence", msg)
                    rec.fail("path_concatenation", msg)

                # word_path_equivalence: existence and source class of
                # the unique path against the iterated prepend
                rec.count("word_path_equivalence", m)
                for i in range(m):
                    amask = P2[class_masks[i]]
                    if bool(amask) != (i in back2):
                        rec.fail(
                            "word_path_equivalence",
                            f"word {ws}, class E{i + 1}: path "
                            f"{'missing' if amask else 'spurious'}")
                    elif amask:
                        blk = block_of_mask.get(amask)
                        if blk != back2[i]:
                            got = ("not realized" if blk is None
                                   else f"E{blk + 1}")
                            rec.fail(
                                "word_path_equivalence",
                                f"word {ws} into E{i + 1}: path source "
                                f"E{back2[i] + 1}, prepend lands in {got}")

                # shifted_cylinder_classes: the classes the word can
                # precede, by paths and by relation ranges
                rec.count("shifted_cylinder_classes")
                if b_set != a_set:
                    rec.fail(
                        "shifted_cylinder_classes",
                        f"word {ws}: path classes "
                        f"{sorted(x + 1 for x in b_set)} != relation "
                        f"classes {sorted(x + 1 for x in a_set)}")

                # labeled_path_ranges: forward path ends against the
                # relation route
                rec.count("labeled_path_ranges")
                if fwd2 != a_set:
                    rec.fail(
                        "labeled_path_ranges",
                        f"word {ws}: forward ends "
                        f"{sorted(x + 1 for x in fwd2)} != relation "
                        f"classes {sorted(x + 1 for x in a_set)}")

                # path_concatenation: the source/end relation of the
                # word factors through its first letter
                rel = frozenset((src, end) for end, src in back2.items())
                rels[w] = rel
                if len(w) > 1:
                    rec.count("path_concatenation")
                    head = rels.get(w[:1], frozenset())
                    tail = rels.get(w[1:], frozenset())
                    composed = frozenset(
                        (s, c) for s, mid in head for mid2, c in tail
                        if mid == mid2)
                    if rel != composed:
                        rec.fail(
                            "path_concatenation",
                            f"word {ws}: path relation differs from "
                            f"first-letter composition")

                # word_range_projections: clopen post image against
                # the relation-route class sum
                if len(w) <= clopen_len:
                    rec.count("word_range_projections")
                    try:
                        lhs = diagonal.post_image(cover, w)
                        rhs = ClopenSet(cover, 0,
                                        [(EPSILON, i) for i in a_set],
                                        validate=False)
                        if lhs != rhs:
                            rec.fail(
                                "word_range_projections",
                                f"word {ws}: {lhs.render()} != "
                                f"{rhs.render()}")
                    except AmbiguousLabelError as exc:
                        rec.fail("word_range_projections",
                                 f"word {ws}: {exc}")

                nxt[w] = (P2, back2, fwd2)
        frontier = nxt
    for fam in ("word_path_equivalence", "shifted_cylinder_classes",
                "labeled_path_ranges", "path_concatenation",
                "word_range_projections"):
        rec.count(fam, 0)
    return rec


def _derived_splits(cover: KriegerCover) -> list[set[tuple[int, int]]]:
    """Per class, the (letter, target class) split derived from the
    survivor-set prepend map, independent of the cover's edges."""
    reps = [min(block, key=lambda c: (len(c), tuple(sorted(c))))
            for block in cover.class_sets]
    splits: list[set[tuple[int, int]]] = [set() for _ in cover.class_sets]
    for i, rep in enumerate(reps):
        for a in cover.alphabet:
            p = cover.pre_map.get((a, rep))
            if p is not None:
                k = cover.block_of.get(p)
                if k is not None:
                    splits[k].add((a, i))
    return splits


def _split_str(cover, split) -> str:
    return "{" + ", ".join(
        f"{cover.alphabet.tokens[a]}->E{i + 1}"
        for a, i in sorted(split)) + "}"


def _check_class_splitting(cover: KriegerCover, rec: _Recorder) -> None:
    derived = _derived_splits(cover)
    for i in range(cover.class_count):
        rec.count("class_edge_splitting")
        cover_split = {(e.label, e.dst) for e in cover.out_edges(i)}
        if cover_split != derived[i]:
            rec.fail(
                "class_edge_splitting",
                f"class E{i + 1}: cover split "
                f"{_split_str(cover, cover_split)} != derived split "
                f"{_split_str(cover, derived[i])}")
            continue
        try:
            lhs = diagonal.class_projection(cover, i)
            rhs = diagonal.empty_set(cover)
            for e in cover.out_edges(i):
                rhs = rhs.union(diagonal.conj_by_letter(
                    cover, e.label,
                    diagonal.class_projection(cover, e.dst)))
            if lhs != rhs:
                rec.fail("class_edge_splitting",
                         f"class E{i + 1}: {lhs.render()} != "
                         f"{rhs.render()}")
        except AmbiguousLabelError as exc:
            rec.fail("class_edge_splitting", f"class E{i + 1}: {exc}")


def _check_conjugation(cover: KriegerCover, rec: _Recorder,
                       max_len: int) -> None:
    from .shiftcore import words_of_length

    cap = min(max_len, CLOPEN_WORD_CAP)
    words = [EPSILON]
    for k in range(1, cap + 1):
        words.extend(sorted(words_of_length(cover.graph, k)))
    for nu in words:
        try:
            F = diagonal.post_image(cover, nu)
            lifted = diagonal.shift_preimage(cover, F)
            for a in cover.alphabet:
                rec.count("conjugation_locality")
                lhs = diagonal.conj_by_letter(cover, a, F)
                rhs = diagonal.cylinder(cover, (a,)).intersect(lifted)
                if lhs != rhs:
                    rec.fail(
                        "conjugation_locality",
                        f"letter {cover.alphabet.tokens[a]}, word "
                        f"{_word_str(cover, nu)}: {lhs.render()} != "
                        f"{rhs.render()}")
        except AmbiguousLabelError as exc:
            rec.fail("conjugation_locality",
                     f"word {_word_str(cover, nu)}: {exc}")


def _check_ck(cover: KriegerCover, rec: _Recorder) -> None:
    edges = cover.edges
    tok = cover.alphabet.tokens

    def edge_str(e: Edge) -> str:
        return f"E{e.src + 1}--{tok[e.label]}-->E{e.dst + 1}"

    # range_projection_orthogonality: distinct edges have disjoint
    # mapped range projections
    images = []
    for e in edges:
        try:
            images.append(diagonal.conj_by_letter(
                cover, e.label, diagonal.class_projection(cover, e.dst)))
        except AmbiguousLabelError as exc:
            rec.fail("range_projection_orthogonality", str(exc))
            images.append(None)
    for i in range(len(edges)):
        for j in range(i + 1, len(edges)):
            rec.count("range_projection_orthogonality")
            if (edges[i].label, edges[i].dst) == (edges[j].label,
                                                  edges[j].dst):
                rec.fail(
                    "range_projection_orthogonality",
                    f"{edge_str(edges[i])} and {edge_str(edges[j])} "
                    f"share label and range")
                continue
            if images[i] is None or images[j] is None:
                continue
            meet = images[i].intersect(images[j])
            if not meet.is_empty():
                rec.fail(
                    "range_projection_orthogonality",
                    f"{edge_str(edges[i])} and {edge_str(edges[j])} "
                    f"overlap on {meet.render()}")

    # edge_support_sums: the support projection of each mapped
    # generator equals the sum over the edges its range emits
    derived = _derived_splits(cover)
    for e in edges:
        rec.count("edge_support_sums")
        i = e.dst
        cover_split = {(f.label, f.dst) for f in cover.out_edges(i)}
        if cover_split != derived[i]:
            rec.fail(
                "edge_support_sums",
                f"edge {edge_str(e)}: class E{i + 1} cover split "
                f"{_split_str(cover, cover_split)} != derived split "
                f"{_split_str(cover, derived[i])}")
            continue
        try:
            lhs = diagonal.class_projection(cover, i)
            rhs = diagonal.empty_set(cover)
            for f in cover.out_edges(i):
                rhs = rhs.union(diagonal.conj_by_letter(
                    cover, f.label,
                    diagonal.class_projection(cover, f.dst)))
            if lhs != rhs:
                rec.fail("edge_support_sums",
                         f"edge {edge_str(e)}: {lhs.render()} != "
                         f"{rhs.render()}")
        except AmbiguousLabelError as exc:
            rec.fail("edge_support_sums", f"edge {edge_str(e)}: {exc}")

    # range_projection_partition: the mapped range projections tile
    # the whole space; grounded against the prepend-derived cells
    rec.count("range_projection_partition")
    cover_cells = {(e.label, e.dst) for e in edges}
    derived_cells = set()
    for i, split in enumerate(derived):
        derived_cells |= split
    if cover_cells != derived_cells:
        rec.fail(
            "range_projection_partition",
            f"depth-1 cells from edges {_split_str(cover, cover_cells)} "
            f"!= derived cells {_split_str(cover, derived_cells)}")
    else:
        try:
            total = diagonal.empty_set(cover)
            for img in images:
                if img is not None:
                    total = total.union(img)
            if total != diagonal.full_space(cover):
                rec.fail("range_projection_partition",
                         f"union of range projections is "
                         f"{total.render()}, not the whole space")
        except AmbiguousLabelError as exc:
            rec.fail("range_projection_partition", str(exc))


def _check_edge_sum_structural(cover: KriegerCover, rec: _Recorder) -> None:
    # left_resolving: no two edges with one label into one vertex
    seen: dict[tuple[int, int], Edge] = {}
    for e in cover.edges:
        rec.count("left_resolving")
        key = (e.dst, e.label)
        if key in seen:
            rec.fail(
                "left_resolving",
                f"class E{e.dst + 1} has two incoming edges labeled "
                f"{cover.alphabet.tokens[e.label]}")
        seen[key] = e

    # edge_label_cover: cover letters match the letters that can be
    # prepended to some class, and the labeled edge sets tile the
    # edge set
    rec.count("edge_label_cover")
    used_b = {e.label for e in cover.edges}
    used_a = {a for (a, _c) in cover.pre_map}
    if used_b != used_a:
        names = cover.alphabet.tokens
        rec.fail(
            "edge_label_cover",
            f"cover uses letters {sorted(names[a] for a in used_b)}, "
            f"prepend map uses {sorted(names[a] for a in used_a)}")
    tiled = [e for a in cover.alphabet for e in cover.edges
             if e.label == a]
    rec.count("edge_label_cover")
    if sorted(tiled, key=lambda e: (e.src, e.dst, e.label)) != \
            list(cover.edges):
        rec.fail("edge_label_cover",
                 "labeled edge sets do not tile the edge set")


def _check_round_trips(cover: KriegerCover, rec: _Recorder) -> None:
    # letter_roundtrip: ranges of the edges carrying each letter equal
    # the classes the letter can be prepended to
    class_of_letter_a: dict[int, set[int]] = {}
    for (a, c), _p in cover.pre_map.items():
        k = cover.block_of.get(c)
        if k is not None:
            class_of_letter_a.setdefault(a, set()).add(k)
    for a in cover.alphabet:
        rec.count("letter_roundtrip")
        b_side = {e.dst for e in cover.edges if e.label == a}
        a_side = class_of_letter_a.get(a, set())
        if b_side != a_side:
            rec.fail(
                "letter_roundtrip",
                f"letter {cover.alphabet.tokens[a]}: edge ranges "
                f"{sorted(x + 1 for x in b_side)} != prependable "
                f"classes {sorted(x + 1 for x in a_side)}")
    rec.count("letter_roundtrip")
    total = diagonal.empty_set(cover)
    for i in range(cover.class_count):
        total = total.union(diagonal.class_projection(cover, i))
    if total != diagonal.full_space(cover):
        rec.fail("letter_roundtrip",
                 "class projections do not sum to the whole space")

    # edge_roundtrip: an edge is recovered from its label and range
    for e in cover.edges:
        rec.count("edge_roundtrip")
        twins = [f for f in cover.edges
                 if f != e and f.label == e.label and f.dst == e.dst]
        if twins:
            rec.fail(
                "edge_roundtrip",
                f"edges into E{e.dst + 1} labeled "
                f"{cover.alphabet.tokens[e.label]} are not unique")


def _check_projection_formulas(cover: KriegerCover, rec: _Recorder) -> None:
    for i in range(cover.class_count):
        rec.count("projection_word_formulas")
        try:
            pos, neg = diagonal.express_class_projection(cover, i)
            value = diagonal.evaluate_projection_formula(cover, pos, neg)
            if value != diagonal.class_projection(cover, i):
                rec.fail(
                    "projection_word_formulas",
                    f"class E{i + 1}: formula evaluates to "
                    f"{value.render()}")
        except AmbiguousLabelError as exc:
            rec.fail("projection_word_formulas", f"class E{i + 1}: {exc}")


def _results(rec: _Recorder, names) -> tuple[CheckResult, ...]:
    return tuple(rec.result(n) for n in names)


def verify_ck_relations(cover: KriegerCover) -> tuple[CheckResult, ...]:
    """Check the edge-algebra relations of the mapped generators:
    pairwise orthogonality of range projections, the support sums over
    same-source edges, and the partition of the whole space."""
    rec = _Recorder()
    _check_ck(cover, rec)
    return _results(rec, ("range_projection_orthogonality",
                          "edge_support_sums",
                          "range_projection_partition"))


def verify_edge_sum_hypotheses(cover: KriegerCover,
                          max_len: int = 8) -> tuple[CheckResult, ...]:
    """Check the combinatorial facts behind mapping the shift algebra
    onto the edge algebra: left-resolving labels, label tiling, path
    end sets per word, and path concatenation."""
    rec = _scan_words(cover, max_len, clopen_len=0)
    _check_edge_sum_structural(cover, rec)
    return _results(rec, ("left_resolving", "edge_label_cover",
                          "labeled_path_ranges", "path_concatenation"))


def verify_round_trips(cover: KriegerCover) -> tuple[CheckResult, ...]:
    """Check the two composite maps letter -> edges -> letter and
    edge -> letter and range -> edge act as the identity."""
    rec = _Recorder()
    _check_round_trips(cover, rec)
    return _results(rec, ("letter_roundtrip", "edge_roundtrip"))


def verify_all(cover: KriegerCover, max_len: int = 8) -> Report:
    """Run every check family and aggregate the outcomes.

    Word-indexed families run over all admissible words up to
    ``max_len``; families that go through the clopen engine cap the
    word length at 5 to stay inside desk-scale budgets.
    """
    rec = _scan_words(cover, max_len, clopen_len=min(max_len,
                                                     CLOPEN_WORD_CAP))
    _check_class_splitting(cover, rec)
    _check_conjugation(cover, rec, max_len)
    _check_ck(cover, rec)
    _check_edge_sum_structural(cover, rec)
    _check_round_trips(cover, rec)
    _check_projection_formulas(cover, rec)
    return Report(_results(rec, FAMILY_ORDER))


def corrupt_cover(cover: KriegerCover, kind: str) -> KriegerCover:
    """Deliberately damage a cover's edge set; testing hook.

    Kinds: ``reassign-range`` moves one edge's range to another class,
    ``drop-edge`` removes the first edge, ``duplicate-label`` adds a
    second edge with an existing (label, range) pair, ``drop-letter``
    removes every edge carrying the first used letter.
    """
    edges = list(cover.edges)
    if kind == "reassign-range":
        for idx, e in enumerate(edges):
            for new_dst in range(cover.class_count):
                cand = Edge(e.src, new_dst, e.label)
                if new_dst != e.dst and cand not in edges:
                    edges[idx] = cand
                    return cover.with_edges(edges)
        raise ValueError("no range reassignment available")
    if kind == "drop-edge":
        if len(edges) < 2:
            raise ValueError("not enough edges to drop one")
        return cover.with_edges(edges[1:])
    if kind == "duplicate-label":
        for e in edges:
            for new_src in range(cover.class_count):
                cand = Edge(new_src, e.dst, e.label)
                if new_src != e.src and cand not in edges:
                    edges.append(cand)
                    return cover.with_edges(edges)
        raise ValueError("no label duplication available")
    if kind == "drop-letter":
        label = edges[0].label
        remaining = [e for e in edges if e.label != label]
        if not remaining:
            raise ValueError("dropping the letter would empty the cover")
        return cover.with_edges(remaining)
    raise ValueError(f"unknown corruption kind {kind!r}")
