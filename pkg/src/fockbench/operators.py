"""Creators, annihilators and the number operator on truncated Fock vectors.

General one-particle arguments act through linearity over the basis:
``c(e_i) e^alpha = e^(alpha + delta_i)`` and
``a(e_i) e^alpha = alpha_i e^(alpha - delta_i)``, with ``c`` linear and ``a``
antilinear in the one-particle vector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .fock import (
    FockVector,
    OneParticleVector,
    WorkspaceError,
    grade,
    grade_project,
    inner,
    norm_sq,
    tensor_to_occupation,
)
from .scalars import TAU, close, residual, scalar_to_json

__all__ = [
    "GradeOverflowError",
    "OperatorReport",
    "create",
    "annihilate",
    "number",
    "number_sqrt_norm_sq",
    "sum_create_annihilate",
    "commutator",
    "check_adjoint",
    "creator_bound_report",
    "theorem2_identity_report",
    "number_identity_report",
    "ccr_report",
]


class GradeOverflowError(WorkspaceError):
    """A creator would push a component past the workspace cutoff."""


@dataclass(frozen=True)
class OperatorReport:
    lhs: object
    rhs: object
    equal: bool
    residual: float
    flags: tuple[str, ...] = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "lhs": scalar_to_json(self.lhs),
            "rhs": scalar_to_json(self.rhs),
            "equal": self.equal,
            "residual": self.residual,
            "flags": list(self.flags),
        }


def _check_vector(v: OneParticleVector, phi: FockVector):
    if v.workspace.d != phi.workspace.d:
        raise WorkspaceError(f"one-particle d={v.workspace.d} vs Fock d={phi.workspace.d}")


def _accumulate(out: dict, alpha, c):
    s = out.get(alpha, 0) + c
    if s:
        out[alpha] = s
    else:
        out.pop(alpha, None)


def create(v: OneParticleVector, phi: FockVector) -> FockVector:
    """Multiplication by ``v``; raises every grade by one."""
    _check_vector(v, phi)
    ws = phi.workspace
    if phi.max_grade >= ws.n_max:
        raise GradeOverflowError(
            f"creator on grade {phi.max_grade} exceeds n_max={ws.n_max}"
        )
    coords = [ws.scalar(x) for x in v.coords]
    out: dict = {}
    for alpha, c in phi:
        for i, vi in enumerate(coords):
            if vi:
                beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                _accumulate(out, beta, vi * c)
    return FockVector._raw(ws, out)


def annihilate(v: OneParticleVector, phi: FockVector) -> FockVector:
    """Derivation with ``a(v) w = <v|w>``; kills the vacuum, lowers grades by one."""
    _check_vector(v, phi)
    ws = phi.workspace
    coords = [ws.scalar(x).conjugate() for x in v.coords]
    out: dict = {}
    for alpha, c in phi:
        for i, vi in enumerate(coords):
            if vi and alpha[i]:
                beta = alpha[:i] + (alpha[i] - 1,) + alpha[i + 1:]
                _accumulate(out, beta, vi * c * alpha[i])
    return FockVector._raw(ws, out)


def number(phi: FockVector) -> FockVector:
    return FockVector._raw(phi.workspace,
                           {a: c * grade(a) for a, c in phi if grade(a)})


def number_sqrt_norm_sq(phi: FockVector):
    """||N^(1/2) phi||^2 = sum_n n ||phi_n||^2."""
    total = sum((n * norm_sq(grade_project(phi, n)) for n in phi.grades()), Fraction(0))
    return total if phi.workspace.exact else float(total)


def sum_create_annihilate(phi: FockVector) -> FockVector:
    """sum_j c(e_j) a(e_j) phi over the orthonormal basis.

    The annihilator runs first, so no intermediate exceeds phi's top grade and
    no headroom above it is needed.
    """
    ws = phi.workspace
    total = ws.zero()
    for j in range(ws.d):
        e = ws.basis(j)
        total = total + create(e, annihilate(e, phi))
    return total


def commutator(v: OneParticleVector, w: OneParticleVector, phi: FockVector) -> FockVector:
    """a(v) c(w) phi - c(w) a(v) phi."""
    return annihilate(v, create(w, phi)) - create(w, annihilate(v, phi))


def _report(lhs, rhs, flags=(), tau=TAU) -> OperatorReport:
    return OperatorReport(lhs, rhs, close(lhs, rhs, tau), residual(lhs, rhs), tuple(flags))


def _vector_report(lhs: FockVector, rhs: FockVector, flags=(), tau=TAU) -> OperatorReport:
    diff = lhs - rhs
    if lhs.workspace.exact:
        equal = not diff
        res = 0.0 if equal else float(norm_sq(diff)) ** 0.5
    else:
        res = float(norm_sq(diff)) ** 0.5
        scale = max(1.0, float(norm_sq(lhs)) ** 0.5, float(norm_sq(rhs)) ** 0.5)
        equal = res <= tau * scale
    return OperatorReport(norm_sq(lhs), norm_sq(rhs), equal, res, tuple(flags))


def check_adjoint(v: OneParticleVector, psi: FockVector, phi: FockVector,
                  tau: float = TAU) -> OperatorReport:
    """Compare <psi|c(v) phi> with <a(v) psi|phi>."""
    lhs = inner(psi, create(v, phi))
    rhs = inner(annihilate(v, psi), phi)
    return _report(lhs, rhs, tau=tau)


def creator_bound_report(u: OneParticleVector, phi: FockVector,
                         tau: float = TAU) -> OperatorReport:
    """Check ||c(u) phi||^2 <= (n+1) ||phi||^2 for unit ``u`` and ``phi`` of grade n.

    ``equal`` records whether the inequality holds.  Flags name the case:
    ``"equality"`` or ``"strict"``, and ``"u-power"`` when ``phi`` is a
    multiple of ``u^n`` (detected through Cauchy-Schwarz against ``u^n``).
    A ``"mismatch"`` flag means the two detections disagree.
    """
    ws = phi.workspace
    if not phi.is_homogeneous():
        raise ValueError(f"phi must be homogeneous, has grades {phi.grades()}")
    u_sq = u.norm_sq()
    if ws.exact:
        if u_sq != 1:
            raise ValueError(f"u must be a unit vector, ||u||^2 = {u_sq}")
    elif abs(u_sq - 1) > tau:
        raise ValueError(f"u must be a unit vector, ||u||^2 = {u_sq}")
    n = max(phi.max_grade, 0)
    lhs = norm_sq(create(u, phi))
    rhs = (n + 1) * norm_sq(phi)

    u_power = tensor_to_occupation([u] * n, ws)
    overlap = inner(u_power, phi)
    overlap_sq = overlap.real * overlap.real + overlap.imag * overlap.imag
    cs_rhs = norm_sq(u_power) * norm_sq(phi)
    if ws.exact:
        holds = lhs <= rhs
        is_equal = lhs == rhs
        proportional = overlap_sq == cs_rhs
    else:
        slack = tau * max(1.0, rhs)
        holds = lhs <= rhs + slack
        is_equal = abs(lhs - rhs) <= slack
        proportional = abs(overlap_sq - cs_rhs) <= tau * max(1.0, cs_rhs)

    flags = ["equality" if is_equal else "strict"]
    if proportional:
        flags.append("u-power")
    if proportional != is_equal:
        flags.append("mismatch")
    return OperatorReport(lhs, rhs, holds, 0.0 if holds else float(lhs - rhs), tuple(flags))


def theorem2_identity_report(phi: FockVector, tau: float = TAU) -> OperatorReport:
    """Compare ||N^(1/2) phi||^2 with sum_j ||a(e_j) phi||^2."""
    ws = phi.workspace
    lhs = number_sqrt_norm_sq(phi)
    rhs = sum((norm_sq(annihilate(ws.basis(j), phi)) for j in range(ws.d)),
              Fraction(0) if ws.exact else 0.0)
    return _report(lhs, rhs, tau=tau)


def number_identity_report(phi: FockVector, tau: float = TAU) -> OperatorReport:
    """sum_j c(e_j) a(e_j) phi against N phi; lhs/rhs carry the squared norms."""
    return _vector_report(sum_create_annihilate(phi), number(phi), tau=tau)


def ccr_report(v: OneParticleVector, w: OneParticleVector, phi: FockVector,
               tau: float = TAU) -> OperatorReport:
    """[a(v), c(w)] phi against <v|w> phi; lhs/rhs carry the squared norms."""
    return _vector_report(commutator(v, w, phi), phi.scale(v.inner(w)), tau=tau)
