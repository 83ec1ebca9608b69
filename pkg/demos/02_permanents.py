"""Permanents: the exact kernels, the float kernel, and the Gram-matrix link
to inner products of symmetric products.
"""

import time
from fractions import Fraction

import numpy as np

from fockbench import Workspace, gram_inner, inner, permanent_naive, permanent_ryser, tensor_to_occupation

M = [[1, Fraction(1, 2), 0], [2, 1, Fraction(-1, 3)], [0, 1, 1]]
print("naive:", permanent_naive(M))
print("ryser:", permanent_ryser(M))

# all-ones n x n has permanent n!
print("perm(J_6) =", permanent_ryser([[1] * 6 for _ in range(6)]))

# <x1...xn | y1...yn> equals the permanent of the Gram matrix
ws = Workspace(3, 3)
xs = [ws.one_particle([1, 2, 0]), ws.one_particle([0, 1, 1])]
ys = [ws.one_particle([1, 0, 1]), ws.one_particle([Fraction(1, 2), 1, 0])]
print("via Fock inner product:", inner(tensor_to_occupation(xs), tensor_to_occupation(ys)))
print("via Gram permanent:    ", gram_inner(xs, ys))

A = np.random.default_rng(0).random((20, 20))
t0 = time.perf_counter()
value = permanent_ryser(A)
print(f"float Ryser, n=20: {value:.6e} in {time.perf_counter() - t0:.3f}s")
