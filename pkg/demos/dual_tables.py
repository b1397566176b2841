"""
Dual brackets from closed forms and from pairings
=================================================

Every structure constant is computed twice and compared.
"""

from liedual import AlgebraKind, BialgebraParams, BracketSource, jacobi_check
from liedual.dual_bracket import cross_check, table_to_csv, format_finite

W = AlgebraKind.WITT

# closed-form table for r = x⊗x^2 − x^2⊗x, rebuilt from <ε^i⊗ε^j, x^m·r>
table, oracle, mismatches = cross_check(W, 2, (-3, 3))
print(len(table.entries), "entries,", len(mismatches), "mismatches")
print(table_to_csv(table).splitlines()[:6])

# the (X, Y) family with (n, ℓ, k) = (2, 1, 1)
p = BialgebraParams(2, 1, 1)
src = BracketSource(W, p)
print("[ε^1, ε^0] =", format_finite(src(1, 0)))
print("[ε^2, ε^3] =", format_finite(src(2, 3)))

# the bracket is a Lie bracket
print("Jacobi on [-3, 3]^3:",
      all(jacobi_check(src, i, j, l) for i in range(-3, 4) for j in range(-3, 4) for l in range(-3, 4)))

# flipping one sign in the table is caught by the oracle
print("case1-sign mutation:", len(cross_check(W, p, (-3, 3), "case1-sign")[2]), "mismatches")
