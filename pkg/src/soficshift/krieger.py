"""Survivor sets, the transition semigroup, past equivalence, and the
left Krieger cover with its edge matrix.

The central objects:

* the survivor set I(x) of a ray x, the vertices of a right-resolving
  essential presentation that emit x;
* the transition semigroup, the finite set of start/end relations of
  words, which decides every "can the word w precede the ray x"
  question at once;
* the past-equivalence partition of the realized survivor sets, whose
  blocks are the vertices of the left Krieger cover;
* the cover's edge matrix B, indexed by cover edges in canonical
  order, with B(e, f) = 1 exactly when the range of e is the source
  of f.

Everything is exact and finite; vertex sets are handled as bitmasks
internally and exposed as frozensets of vertex indices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .automata import make_right_resolving, trim_essential
from .errors import (AmbiguousLabelError, CoverInvariantError,
                     ResourceLimitError)
from .shiftcore import (EPSILON, Alphabet, Edge, LabeledGraph, Ray, Word,
                        require_essential)

DEFAULT_SEMIGROUP_CAP = 2 ** 20

_REPRESENTATIVE_SEARCH_CAP = 4


def _mask_to_set(mask: int) -> frozenset[int]:
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.append(v)
        mask &= mask - 1
    return frozenset(out)


def _set_to_mask(vertices: frozenset[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def _set_key(s: frozenset[int]) -> tuple:
    # canonical order on vertex sets: cardinality, then sorted indices
    return (len(s), tuple(sorted(s)))


class TransitionRelation:
    """The relation of a word w: start s is related to end t when some
    path labeled w runs from s to t.

    Stored as one successor bitmask per start vertex.  Relations
    compose left factor first: the relation of wa is the relation of w
    composed with the relation of a.
    """

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = tuple(rows)

    @classmethod
    def identity(cls, n: int) -> "TransitionRelation":
        return cls(1 << s for s in range(n))

    @classmethod
    def of_letter(cls, g: LabeledGraph, label: int) -> "TransitionRelation":
        return cls(g._succ[label])

    def compose(self, other: "TransitionRelation") -> "TransitionRelation":
        rows = []
        orows = other.rows
        for mask in self.rows:
            out = 0
            while mask:
                t = (mask & -mask).bit_length() - 1
                out |= orows[t]
                mask &= mask - 1
            rows.append(out)
        return TransitionRelation(rows)

    def domain_mask(self) -> int:
        out = 0
        for s, row in enumerate(self.rows):
            if row:
                out |= 1 << s
        return out

    def range_mask(self) -> int:
        out = 0
        for row in self.rows:
            out |= row
        return out

    def preimage(self, mask: int) -> int:
        """Starts with some related end inside ``mask``."""
        out = 0
        for s, row in enumerate(self.rows):
            if row & mask:
                out |= 1 << s
        return out

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((s, t)
                         for s, row in enumerate(self.rows)
                         for t in _mask_to_set(row))

    def __eq__(self, other) -> bool:
        return (isinstance(other, TransitionRelation)
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        return f"TransitionRelation({sorted(self.pairs())})"


class TransitionSemigroup:
    """Closure of the single-letter relations under right composition.

    Element 0 is the identity relation (the empty word).  Each element
    records a shortest witness word; ``step[i][a]`` is the index of
    element i composed with the letter a, giving the reachability
    graph used by the realized-set computation.
    """

    __slots__ = ("relations", "witnesses", "step", "generator", "depth",
                 "nonempty_depth")

    def __init__(self, g: LabeledGraph, max_elements: int):
        n = g.vertex_count
        letters = list(g.alphabet)
        ident = TransitionRelation.identity(n)
        relations = [ident]
        witnesses: list[Word] = [EPSILON]
        index = {ident.rows: 0}
        step: list[list[int]] = []
        queue = [0]
        while queue:
            i = queue.pop(0)
            row = []
            for a in letters:
                nxt = relations[i].compose(
                    TransitionRelation.of_letter(g, a))
                j = index.get(nxt.rows)
                if j is None:
                    if len(relations) >= max_elements:
                        raise ResourceLimitError(
                            f"transition semigroup exceeds "
                            f"{max_elements} elements")
                    j = len(relations)
                    index[nxt.rows] = j
                    relations.append(nxt)
                    witnesses.append(witnesses[i] + (a,))
                    queue.append(j)
                row.append(j)
            step.append(row)
        self.relations = tuple(relations)
        self.witnesses = tuple(witnesses)
        self.step = tuple(tuple(r) for r in step)
        self.generator = tuple(self.step[0][a] for a in letters)
        self.depth = tuple(len(w) for w in witnesses)

        # minimal nonempty word length per element (None if unreachable
        # by a nonempty word; only the identity can be affected)
        nd: list[int | None] = [None] * len(relations)
        frontier = []
        for j in self.generator:
            if nd[j] is None:
                nd[j] = 1
                frontier.append(j)
        while frontier:
            nxt_frontier = []
            for i in frontier:
                for j in self.step[i]:
                    if nd[j] is None:
                        nd[j] = nd[i] + 1
                        nxt_frontier.append(j)
            frontier = nxt_frontier
        self.nonempty_depth = tuple(nd)

    def __len__(self) -> int:
        return len(self.relations)

    def element_of_word(self, word: Word) -> TransitionRelation:
        i = 0
        for a in word:
            i = self.step[i][a]
        return self.relations[i]

    def index_of_word(self, word: Word) -> int:
        i = 0
        for a in word:
            i = self.step[i][a]
        return i


def transition_semigroup(g: LabeledGraph,
                         max_elements: int = DEFAULT_SEMIGROUP_CAP
                         ) -> TransitionSemigroup:
    """Compute the transition semigroup of a right-resolving essential
    presentation.

    Raises
    ------
    ResourceLimitError
        If the closure exceeds ``max_elements`` relations.
    """
    require_essential(g)
    return TransitionSemigroup(g, max_elements)


def _survivor_mask(g: LabeledGraph, ray: Ray) -> int:
    # greatest fixed point of C -> pre_v(C), then pulled back through u
    def pre_word(word: Word, mask: int) -> int:
        for a in reversed(word):
            mask = g.predecessors(a, mask)
            if not mask:
                return 0
        return mask

    cur = g.full_mask()
    while True:
        nxt = pre_word(ray.period, cur)
        if nxt == cur:
            break
        cur = nxt
    return pre_word(ray.preperiod, cur)


def survivor_set(g: LabeledGraph, ray: Ray) -> frozenset[int]:
    """The vertices of ``g`` that emit the ray u v v v ...

    Computed as the greatest fixed point of the period's backward
    predecessor map (downward iteration from the full vertex set),
    pulled back through the preperiod.  The empty set means the ray is
    not in the shift.

    Examples
    --------
    >>> from .shiftcore import parse_presentation
    >>> g = parse_presentation(
    ...     "alphabet 0 1\\nvertex a\\nvertex b\\n"
    ...     "edge a a 1\\nedge a b 0\\nedge b a 0\\n")
    >>> sorted(survivor_set(g, Ray((), (0,))))
    [0, 1]
    >>> sorted(survivor_set(g, Ray((1,), (0,))))
    [0]
    """
    require_essential(g)
    return _mask_to_set(_survivor_mask(g, ray))


def _realized_masks(g: LabeledGraph, sg: TransitionSemigroup) -> set[int]:
    # A domain is realized as a survivor set exactly when some element
    # with that domain can keep composing letters forever without the
    # domain shrinking, i.e. reaches a directed cycle inside the
    # subgraph of elements sharing its domain.  Iteratively discard
    # elements with no same-domain successor among the keepers; the
    # rest can walk forever.
    doms = [rel.domain_mask() for rel in sg.relations]
    alive = set(range(len(sg.relations)))
    changed = True
    while changed:
        changed = False
        for i in list(alive):
            if not any(sg.step[i][a] in alive and doms[sg.step[i][a]] == doms[i]
                       for a in range(len(g.alphabet))):
                alive.discard(i)
                changed = True
    return {doms[i] for i in alive if doms[i]}


def realized_survivor_sets(
    g: LabeledGraph,
    sg: TransitionSemigroup | None = None,
) -> tuple[frozenset[frozenset[int]],
           dict[tuple[int, frozenset[int]], frozenset[int]]]:
    """All survivor sets of rays of the shift, with the letter-prepend
    map.

    Returns the family { I(x) : x in the shift space } together with a
    map sending (letter j, survivor set C) to the survivor set of j x
    for x with I(x) = C; pairs whose prepend is empty (j y never in
    the shift) are absent from the map.

    Naively chaining vertex subsets backwards overgenerates, because a
    strict subset of a true survivor set can satisfy the chain
    condition; the computation therefore runs over the transition
    semigroup, where the domain of the relation of w is exactly the
    set of vertices emitting w, and keeps the domains that persist
    along some infinite extension.
    """
    require_essential(g)
    if sg is None:
        sg = transition_semigroup(g)
    masks = _realized_masks(g, sg)
    sets = frozenset(_mask_to_set(m) for m in masks)
    pre: dict[tuple[int, frozenset[int]], frozenset[int]] = {}
    for m in masks:
        c = _mask_to_set(m)
        for a in g.alphabet:
            p = g.predecessors(a, m)
            if p:
                pre[(a, c)] = _mask_to_set(p)
    return sets, pre


def past_partition(
    g: LabeledGraph,
    realized: frozenset[frozenset[int]],
    sg: TransitionSemigroup,
) -> list[frozenset[frozenset[int]]]:
    """Partition the realized survivor sets by past equivalence.

    Two survivor sets are equivalent when, for every semigroup
    element, the element's range meets one exactly when it meets the
    other; since every word's relation is a semigroup element, this
    equates the sets of words that can precede the corresponding rays
    at all lengths simultaneously.  Blocks are returned in canonical
    order of their minimal survivor set (cardinality, then sorted
    vertex indices).
    """
    ranges = [rel.range_mask() for rel in sg.relations]
    groups: dict[tuple[bool, ...], list[frozenset[int]]] = {}
    for c in realized:
        m = _set_to_mask(c)
        sig = tuple(bool(r & m) for r in ranges)
        groups.setdefault(sig, []).append(c)
    blocks = [frozenset(members) for members in groups.values()]
    blocks.sort(key=lambda b: min(_set_key(c) for c in b))
    return blocks


@dataclass(frozen=True)
class KriegerCover:
    """The left Krieger cover of a sofic shift.

    Vertices are the past-equivalence classes, numbered from 0 in
    canonical order; ``class_sets[i]`` holds the realized survivor
    sets carrying class i and ``representatives[i]`` one ultimately
    periodic ray in the class.  Edges are sorted by (source, range,
    label) and the graph is left-resolving: no two edges with the same
    label enter the same class.
    """

    graph: LabeledGraph
    class_sets: tuple[frozenset[frozenset[int]], ...]
    representatives: tuple[Ray, ...]
    edges: tuple[Edge, ...]
    semigroup: TransitionSemigroup
    block_of: dict[frozenset[int], int] = field(repr=False)
    pre_map: dict[tuple[int, frozenset[int]], frozenset[int]] = field(
        repr=False)

    @property
    def alphabet(self) -> Alphabet:
        return self.graph.alphabet

    @property
    def class_count(self) -> int:
        return len(self.class_sets)

    def class_of_ray(self, ray: Ray) -> int | None:
        """The class containing the ray, or None if it is not in the
        shift."""
        s = survivor_set(self.graph, ray)
        return self.block_of.get(s)

    def out_edges(self, i: int) -> list[Edge]:
        return [e for e in self.edges if e.src == i]

    def in_edges(self, i: int) -> list[Edge]:
        return [e for e in self.edges if e.dst == i]

    def is_left_resolving(self) -> bool:
        seen = set()
        for e in self.edges:
            key = (e.dst, e.label)
            if key in seen:
                return False
            seen.add(key)
        return True

    def with_edges(self, edges) -> "KriegerCover":
        """Copy with a replaced edge tuple, skipping validation.

        Testing hook for building deliberately corrupted covers; the
        verification checks are expected to flag the damage.
        """
        return KriegerCover(self.graph, self.class_sets,
                            self.representatives,
                            tuple(sorted(edges,
                                         key=lambda e: (e.src, e.dst,
                                                        e.label))),
                            self.semigroup, self.block_of, self.pre_map)


def _class_representative(g: LabeledGraph, sg: TransitionSemigroup,
                          block: frozenset[frozenset[int]]) -> Ray:
    # Deterministic choice: scan (preperiod, period) pairs ordered by
    # total length, then preperiod length, then lexicographically, up
    # to a small cap; fall back to a witness built from a cycle of the
    # semigroup's constant-domain reachability graph, which always
    # exists for a realized block.
    letters = list(g.alphabet)
    for total in range(1, _REPRESENTATIVE_SEARCH_CAP + 1):
        for lu in range(total):
            lv = total - lu
            for u in itertools.product(letters, repeat=lu):
                for v in itertools.product(letters, repeat=lv):
                    ray = Ray(u, v)
                    if _mask_to_set(_survivor_mask(g, ray)) in block:
                        return ray

    doms = [rel.domain_mask() for rel in sg.relations]
    alive = set(range(len(sg.relations)))
    changed = True
    while changed:
        changed = False
        for i in list(alive):
            if not any(sg.step[i][a] in alive and doms[sg.step[i][a]] == doms[i]
                       for a in letters):
                alive.discard(i)
                changed = True
    block_masks = {_set_to_mask(c) for c in block}
    for start in sorted(alive):
        if doms[start] not in block_masks:
            continue
        # deterministic forever-walk inside the constant-domain
        # subgraph; the first repeated element closes the period
        seen = {start: 0}
        seq: list[int] = []
        cur = start
        while True:
            a = next(b for b in letters
                     if sg.step[cur][b] in alive
                     and doms[sg.step[cur][b]] == doms[cur])
            seq.append(a)
            cur = sg.step[cur][a]
            if cur in seen:
                cut = seen[cur]
                u = sg.witnesses[start] + tuple(seq[:cut])
                v = tuple(seq[cut:])
                return Ray(u, v)
            seen[cur] = len(seq)
    raise CoverInvariantError("no representative ray found for a block")


def build_cover(g: LabeledGraph,
                max_semigroup: int = DEFAULT_SEMIGROUP_CAP) -> KriegerCover:
    """Construct the left Krieger cover of the shift presented by g.

    The input is conditioned internally (trimmed to its essential part
    and determinized forward).  Cover vertices are the blocks of the
    past partition; for each class i and each letter j that can be
    prepended to the class there is one edge labeled j from the class
    containing the prepended rays to i.

    Raises
    ------
    CoverInvariantError
        If prepend nonemptiness or the target block differs across
        members of one block; this cannot happen for a correct
        implementation and indicates a bug.
    """
    g = make_right_resolving(trim_essential(g))
    sg = transition_semigroup(g, max_semigroup)
    realized, pre = realized_survivor_sets(g, sg)
    blocks = past_partition(g, realized, sg)
    block_of = {c: i for i, block in enumerate(blocks) for c in block}

    edges: list[Edge] = []
    for i, block in enumerate(blocks):
        for a in g.alphabet:
            targets = set()
            nonempty = set()
            for c in block:
                p = pre.get((a, c))
                nonempty.add(p is not None)
                if p is not None:
                    k = block_of.get(p)
                    if k is None:
                        raise CoverInvariantError(
                            f"prepend of letter {a} left the realized sets")
                    targets.add(k)
            if len(nonempty) > 1 or len(targets) > 1:
                raise CoverInvariantError(
                    f"letter {a} acts inconsistently on class {i + 1}")
            if targets:
                edges.append(Edge(targets.pop(), i, a))

    reps = tuple(_class_representative(g, sg, block) for block in blocks)
    cover = KriegerCover(g, tuple(frozenset(b) for b in blocks), reps,
                         tuple(sorted(edges,
                                      key=lambda e: (e.src, e.dst, e.label))),
                         sg, block_of, pre)
    if not cover.is_left_resolving():
        raise CoverInvariantError("cover is not left-resolving")
    for i in range(cover.class_count):
        if not cover.out_edges(i) or not cover.in_edges(i):
            raise CoverInvariantError(f"class {i + 1} is stranded")
    return cover


def stabilization_level(cover: KriegerCover) -> int:
    """The smallest l at which length-(at most l) past data already
    separates the past-equivalence classes.

    Computed by bounded refinement: partition the realized survivor
    sets by agreement on semigroup elements with shortest witness at
    most l, and report the first l reproducing the full partition.
    """
    sg = cover.semigroup
    realized = [c for block in cover.class_sets for c in block]
    full = frozenset(frozenset(block) for block in cover.class_sets)
    by_depth = sorted(range(len(sg.relations)), key=lambda i: sg.depth[i])
    max_depth = max(sg.depth)
    for level in range(max_depth + 1):
        idxs = [i for i in by_depth if sg.depth[i] <= level]
        groups: dict[tuple[bool, ...], set[frozenset[int]]] = {}
        for c in realized:
            m = _set_to_mask(c)
            sig = tuple(bool(sg.relations[i].range_mask() & m) for i in idxs)
            groups.setdefault(sig, set()).add(c)
        if frozenset(frozenset(v) for v in groups.values()) == full:
            return level
    return max_depth


@dataclass(frozen=True)
class EdgeMatrix:
    """The 0/1 matrix over cover edges in canonical order."""

    entries: tuple[tuple[int, ...], ...]
    edges: tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def edge_matrix(cover: KriegerCover) -> EdgeMatrix:
    """B(e, f) = 1 iff the range of e is the source of f.

    Raises
    ------
    CoverInvariantError
        On a zero row or column, which a valid cover never produces.
    """
    es = cover.edges
    entries = tuple(tuple(1 if e.dst == f.src else 0 for f in es)
                    for e in es)
    for i, row in enumerate(entries):
        if not any(row):
            raise CoverInvariantError(f"zero row for edge {es[i]}")
    for j in range(len(es)):
        if not any(row[j] for row in entries):
            raise CoverInvariantError(f"zero column for edge {es[j]}")
    return EdgeMatrix(entries, es)


def unique_labeled_path(cover: KriegerCover, word: Word,
                        target: int) -> tuple[Edge, ...] | None:
    """The unique cover path labeled ``word`` ending at class
    ``target``, or None if there is none.

    Found by walking backward from the target; left-resolving
    uniqueness makes each backward step deterministic.

    Raises
    ------
    AmbiguousLabelError
        If two candidate edges share a label into one vertex, which
        only corrupted covers exhibit.
    """
    if not word:
        raise ValueError("word must be nonempty")
    path: list[Edge] = []
    cur = target
    for a in reversed(word):
        candidates = [e for e in cover.edges
                      if e.dst == cur and e.label == a]
        if len(candidates) > 1:
            raise AmbiguousLabelError(
                f"two edges labeled {a} into class {cur + 1}")
        if not candidates:
            return None
        path.append(candidates[0])
        cur = candidates[0].src
    return tuple(reversed(path))


def realized_survivor_sets_bruteforce(
        g: LabeledGraph, bound: int) -> frozenset[frozenset[int]]:
    """Survivor sets of all ultimately periodic rays u v v v ... with
    preperiod and period no longer than ``bound``.

    Words sharing a transition relation give rays with equal survivor
    sets, so the enumeration runs over semigroup elements reachable
    within ``bound`` letters instead of over the words themselves; the
    greatest-fixed-point computation per period is done directly on
    the relations, independently of the constant-domain cycle search
    used by :func:`realized_survivor_sets`.
    """
    require_essential(g)
    sg = transition_semigroup(g)
    n = g.vertex_count
    full = g.full_mask()
    prefix_idxs = [0] + [i for i in range(len(sg.relations))
                         if sg.nonempty_depth[i] is not None
                         and sg.nonempty_depth[i] <= bound]
    period_idxs = [i for i in range(len(sg.relations))
                   if sg.nonempty_depth[i] is not None
                   and sg.nonempty_depth[i] <= bound]
    out: set[int] = set()
    for pi in period_idxs:
        rel = sg.relations[pi]
        cur = full
        while True:
            nxt = rel.preimage(cur)
            if nxt == cur:
                break
            cur = nxt
        if not cur:
            continue
        for ui in prefix_idxs:
            m = sg.relations[ui].preimage(cur)
            if m:
                out.add(m)
    return frozenset(_mask_to_set(m) for m in out)


def cover_to_dot(cover: KriegerCover) -> str:
    """Graphviz DOT rendering: one node per class, one edge per cover
    edge with its label; deterministic ordering."""
    lines = ["digraph krieger_cover {"]
    for i in range(cover.class_count):
        lines.append(f'  "E{i + 1}";')
    for e in cover.edges:
        label = cover.alphabet.tokens[e.label]
        lines.append(f'  "E{e.src + 1}" -> "E{e.dst + 1}" '
                     f'[label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
