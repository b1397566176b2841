"""
Linearly recursive sequences as dual elements
=============================================

Membership, recurrence inference, generating functions and components.
"""

from liedual import Domain, DualElement, decompose_components, infer_recurrence, is_in_restricted_dual
from liedual import to_rational_function
from liedual.algebra import format_scalar as fmt

# Fibonacci as a functional on F[x]
fib = DualElement.recursive([1, 1], [0, 1], domain=Domain.POLY)
vals = fib.values(0, 11)
print("f_0..f_11 =", [int(v) for v in vals])
order, h = infer_recurrence(vals)
print("recurrence: order", order, "coefficients", [fmt(v) for v in h])

q = to_rational_function(fib)
print("generating function num/den (ascending):", [fmt(v) for v in q.num], [fmt(v) for v in q.den])

# on the Laurent ring the same rule runs backwards too
fib_l = DualElement.recursive([1, 1], [0, 1], domain=Domain.LAURENT)
print("f_-5..f_5 =", [int(v) for v in fib_l.values(-5, 5)])

# finitely supported functionals are not in the Laurent restricted dual
print("ε^3 in F[x, x^-1]°:", is_in_restricted_dual(DualElement.finite({3: 1}, Domain.LAURENT)))

# 2^n + 3·5^n splits into one component per root
g = DualElement.recursive([7, -10], [4, 17])
for c in decompose_components(g):
    print(f"root {fmt(c.root)}: poly {[fmt(v) for v in c.poly]}")

# x^2 − x − 1 has no rational roots
print(decompose_components(fib_l))
