"""Exact checks of the operator identities on random Gaussian-rational data."""

import random

from fockbench import (
    Workspace,
    ccr_report,
    check_adjoint,
    creator_bound_report,
    theorem2_identity_report,
)
from fockbench import sampling

rng = random.Random(2024)
ws = Workspace(3, 5)

v = sampling.one_particle(rng, ws)
psi = sampling.fock_vector(rng, ws, 5)
phi = sampling.fock_vector(rng, ws, 4)
print("adjoint:", check_adjoint(v, psi, phi).to_json())

w = sampling.one_particle(rng, ws)
print("commutator residual:", ccr_report(v, w, phi).residual)
print("energy identity:", theorem2_identity_report(psi).equal)

# ||c(u) phi||^2 <= (n+1)||phi||^2, tight only on powers of u
u = sampling.unit_vector(rng, ws)
for alpha in [(3, 0, 0), (2, 1, 0), (1, 1, 1)]:
    r = creator_bound_report(ws.basis(0), ws.monomial(alpha))
    print(alpha, r.lhs, "<=", r.rhs, r.flags)
homogeneous = sampling.fock_vector(rng, ws, grade=3)
print("random u, grade 3:", creator_bound_report(u, homogeneous).flags)
