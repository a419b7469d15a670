"""Exact integer linear algebra behind the K-group computations.

Everything runs over arbitrary-precision integers; the Smith normal
form returns the full unimodular transforms so every claim can be
checked by multiplication.
"""

from soficshift import (Alphabet, LabeledGraph, build_cover,
                        determinant, edge_matrix, k_groups,
                        smith_normal_form)
from soficshift.ktheory import matrix_multiply

# Smith normal form of a small sample matrix.
m = [[2, 4, 4],
     [-6, 6, 12],
     [10, 4, 16]]
u, d, v = smith_normal_form(m)
print("D =", d)
print("U M V == D:", matrix_multiply(matrix_multiply(u, m), v) == d)
print("det U =", determinant(u), " det V =", determinant(v))

# The full shift on n letters: one vertex, n loops.  Its edge matrix
# is the all-ones n x n matrix, and the cokernel of I minus its
# transpose is cyclic of order n - 1.
print("\nfull shifts:")
for n in range(2, 7):
    g = LabeledGraph(Alphabet([str(i) for i in range(n)]), ["v"],
                     [(0, 0, a) for a in range(n)])
    k0, k1 = k_groups(edge_matrix(build_cover(g)))
    print(f"  n = {n}: K0 = {k0.render()}, K1 = {k1.render()}")

# The even shift's five-edge cover has a rank-deficient matrix, so a
# free summand appears in both groups.
from soficshift import parse_presentation

even = parse_presentation("""
alphabet 0 1
vertex a
vertex b
edge a a 1
edge a b 0
edge b a 0
""")
b = edge_matrix(build_cover(even))
k0, k1 = k_groups(b)
print(f"\neven shift: K0 = {k0.render()}, K1 = {k1.render()}")
