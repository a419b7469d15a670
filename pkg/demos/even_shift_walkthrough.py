"""Walk through the whole pipeline on the even shift.

The even shift is the set of binary sequences in which any two 1's
are separated by an evenly long block of 0's.  It is the standard
first example of a sofic shift that is not a shift of finite type,
and its left Krieger cover is small enough to inspect by eye.
"""

from soficshift import (Ray, build_cover, class_projection, edge_matrix,
                        evaluate_projection_formula,
                        express_class_projection, k_groups,
                        parse_presentation, post_image,
                        stabilization_level, survivor_set)

# A two-vertex labeled graph presents the shift: vertex a may emit a 1
# and stay, or emit a 0 and move to b; b can only emit a 0 and return.
EVEN = parse_presentation("""
alphabet 0 1
vertex a
vertex b
edge a a 1
edge a b 0
edge b a 0
""")

print("presentation:", EVEN)

# Survivor sets: from which vertices can a given ray be emitted?
for ray in (Ray((), (0,)), Ray((1,), (0,)), Ray((0, 1), (0,))):
    s = survivor_set(EVEN, ray)
    print(f"survivor set of {ray.render(EVEN.alphabet)}:",
          sorted(EVEN.vertex_names[v] for v in s))

# The cover groups rays by which words may precede them.  Three
# classes appear: rays reached after an even block of 0's and a 1,
# after an odd block and a 1, and the all-zero ray.
cover = build_cover(EVEN)
print("\nnumber of past-equivalence classes:", cover.class_count)
for i, rep in enumerate(cover.representatives):
    print(f"  E{i + 1} contains {rep.render(cover.alphabet)}")
print("cover edges (source --label--> range):")
for e in cover.edges:
    print(f"  E{e.src + 1} --{cover.alphabet.tokens[e.label]}--> "
          f"E{e.dst + 1}")

# The edge matrix records which edges can follow which.
B = edge_matrix(cover)
print("\nedge matrix:")
for row in B.entries:
    print("  ", " ".join(map(str, row)))

print("\npast data stabilizes at word length:",
      stabilization_level(cover))

# Each class projection is a finite word formula: intersect the post
# images of the words in M with the complements of those in N.
print("\nclass projections as word formulas:")
for i in range(cover.class_count):
    pos, neg = express_class_projection(cover, i)
    fmt = lambda ws: "{" + ", ".join(cover.alphabet.render(w)
                                     for w in ws) + "}"
    value = evaluate_projection_formula(cover, pos, neg)
    assert value == class_projection(cover, i)
    print(f"  E{i + 1}: M = {fmt(pos)}, N = {fmt(neg)}")

# For instance the support of the word 10 is E2 + E3: prepending 10
# to a ray of E1 would create an odd 0-block between two 1's.
print("\npost image of '10':", post_image(cover, (1, 0)).render())

k0, k1 = k_groups(B)
print("\nK-groups of the edge algebra: K0 =", k0.render(),
      " K1 =", k1.render())
