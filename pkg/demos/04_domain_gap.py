"""A vector in every creator and annihilator domain but outside the domain of
N^(1/2).

Take Phi_n = lambda_n u_n^n / n! with orthonormal u_n and |lambda_n|^2 = (n-1)!/n.
Then ||Phi_n||^2 = 1/n^2 is summable while n ||Phi_n||^2 = 1/n is not.
"""

import math

from fockbench import (
    COUNTEREXAMPLE_LAMBDA_SQ,
    annihilate,
    counterexample_truncate,
    domain_report,
    grade_project,
    norm_sq,
    number_sqrt_norm_sq,
)

report = domain_report(COUNTEREXAMPLE_LAMBDA_SQ)
print("|lambda_n|^2 =", COUNTEREXAMPLE_LAMBDA_SQ)
print("||Phi_n||^2 ~", report.norm_spec, "->", report.in_fock.rule, report.in_fock.converges)
print("n||Phi_n||^2 ~", report.sqrtN_spec, "->", report.in_sqrtN_domain.rule,
      report.in_sqrtN_domain.converges)
print("annihilator constant K =", report.K)
for w in report.witnesses:
    print("  ", w)

# finite truncations show the same thing in an actual workspace
for d in (3, 6, 12):
    phi = counterexample_truncate(d)
    v = phi.workspace.one_particle([1.0] * d)
    grade_norms = [norm_sq(grade_project(phi, n)) for n in range(1, d + 1)]
    print(f"d={d:2d}  ||Phi||^2={norm_sq(phi):.6f}  (pi^2/6={math.pi ** 2 / 6:.6f})"
          f"  ||N^1/2 Phi||^2={number_sqrt_norm_sq(phi):.6f}"
          f"  ||a(v)Phi||^2={norm_sq(annihilate(v, phi)):.4f} <= {v.norm_sq():.0f}"
          f"  last grade={grade_norms[-1]:.3e}")
