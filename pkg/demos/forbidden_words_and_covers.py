"""From forbidden words to a cover: the golden mean shift.

A shift of finite type is specified by the finite words it forbids.
The compiler builds the standard higher-block presentation, and the
rest of the pipeline applies unchanged.
"""

from soficshift import (build_cover, cover_to_dot, edge_matrix,
                        is_admissible, make_right_resolving,
                        parse_presentation, sft_to_graph, words_of_length)

# Forbid the factor 11: no two consecutive ones.
spec = parse_presentation("""
alphabet 0 1
forbid 1 1
""")
g = sft_to_graph(spec)
print("vertices:", g.vertex_names)
print("edges:", [(g.vertex_names[e.src], g.vertex_names[e.dst],
                  g.alphabet.tokens[e.label]) for e in g.edges])

# The compiled presentation is already deterministic, so conditioning
# leaves it alone.
assert make_right_resolving(g) == g

print("\nwords of length 3:",
      sorted(g.alphabet.render(w) for w in words_of_length(g, 3)))
print("is 0110 admissible?", is_admissible(g, g.alphabet.word("0110")))

# Two classes: rays that start with a 1 (only the '0' vertex emits
# those) and rays that start with a 0 (both vertices do).
cover = build_cover(g)
print("\nclasses:", cover.class_count)
for i, rep in enumerate(cover.representatives):
    print(f"  E{i + 1} contains {rep.render(cover.alphabet)}")
print("edge matrix:", edge_matrix(cover).as_lists())

# Graphviz output for inspection with dot -Tpng.
print("\n" + cover_to_dot(cover))
