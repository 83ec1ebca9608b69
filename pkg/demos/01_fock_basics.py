"""Monomials, inner products and the ladder operators in a small workspace.

Run with ``python demos/01_fock_basics.py``.
"""

from fractions import Fraction

from fockbench import (
    GaussianRational,
    Workspace,
    annihilate,
    create,
    inner,
    norm_sq,
    number,
    tensor_to_occupation,
)

ws = Workspace(d=2, n_max=4)
e1, e2 = ws.basis(0), ws.basis(1)

# monomials are unnormalized: ||e^alpha||^2 = prod alpha_i!
sq = ws.monomial((2, 0))
print("||e1^2||^2 =", norm_sq(sq))
print("<e1 e2 | e1 e2> =", inner(ws.monomial((1, 1)), ws.monomial((1, 1))))

# product vectors expand into occupation-number monomials
v = e1 + e2.scale(GaussianRational(0, 1))
prod = tensor_to_occupation([v, v])
print("(e1 + i e2)^2 =", prod)

# c raises the grade, a lowers it with a factor alpha_i
print("c(e1) e1^2 =", create(e1, sq))
print("a(e1) e1^2 =", annihilate(e1, sq))
print("N (e1^2 + e2/2) =", number(sq + ws.monomial((0, 1), Fraction(1, 2))))

# the inner product is antilinear in its first slot
i_e1 = ws.monomial((1, 0), GaussianRational(0, 1))
print("<i e1 | e1> =", inner(i_e1, ws.monomial((1, 0))))
