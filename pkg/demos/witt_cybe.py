"""
Triangular structures on the Witt algebra
=========================================

Brackets, the classical Yang-Baxter equation, and the coboundary cobracket.
"""

from liedual import AlgebraKind, LieElement, bracket, cybe, witt_r, xy_r, BialgebraParams
from liedual import build_subalgebra_pair, coboundary_cobracket
from liedual.tensors import tensor2_from_terms

W, V = AlgebraKind.WITT, AlgebraKind.VIRASORO
x = lambda e, kind=W: LieElement.monomial(e, kind)

# [x^i, x^j] = (j - i) x^(i+j-1)
print("[x, x^2] =", bracket(W, x(1), x(2)))

# the Virasoro algebra adds a central term when the degrees cancel
print("[x^3, x^-1] in Vir =", bracket(V, x(3, V), x(-1, V)))

# x⊗x^n − x^n⊗x solves the CYBE for every n != 1
for n in (-3, 0, 2, 5):
    print(f"n = {n}: CYBE residual is zero:", not cybe(W, witt_r(W, n).underlying))

# a symmetric tensor does not
sym = tensor2_from_terms(W, [(1, 3, 1), (3, 1, 1)])
print("symmetric residual:", cybe(W, sym))

# the second family comes from a two-dimensional subalgebra [X, Y] = Y
p = BialgebraParams(3, 1, 2)
X, Y = build_subalgebra_pair(V, p)
print("X =", X)
print("Y =", Y)
print("[X, Y] == Y:", bracket(V, X, Y) == Y)
print("CYBE residual is zero:", not cybe(V, xy_r(V, p).underlying))

# δ(x^3) for r = x⊗x^2 − x^2⊗x
print("δ(x^3) =", coboundary_cobracket(W, witt_r(W, 2), x(3)))
