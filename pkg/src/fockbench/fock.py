"""Truncated symmetric algebra in the occupation-number (monomial) basis.

A Fock vector is a finite sparse map from occupation indices
``alpha = (alpha_1, ..., alpha_d)`` to scalars.  The key ``alpha`` stands for
the *unnormalized* monomial ``e_1^alpha_1 ... e_d^alpha_d``, whose squared norm
is ``prod(alpha_i!)``.  Keeping the unnormalized basis makes the creator a
literal multiplication; normalization only shows up in inner products.

Inner products are antilinear in the first argument and linear in the second.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .scalars import (
    EXACT,
    BACKENDS,
    abs_sq,
    scalar_from_json,
    to_backend,
)

__all__ = [
    "WorkspaceError",
    "Workspace",
    "FockVector",
    "OneParticleVector",
    "grade",
    "monomial_inner",
    "inner",
    "norm_sq",
    "grade_project",
    "tensor_to_occupation",
    "occupation_indices",
    "fock_to_json",
    "fock_from_json",
]


class WorkspaceError(ValueError):
    """Dimension, cutoff or backend mismatch between operands."""


def grade(alpha: Sequence[int]) -> int:
    return sum(alpha)


def occupation_indices(d: int, n: int) -> Iterator[tuple[int, ...]]:
    """All occupation indices of grade exactly ``n`` in ``d`` modes."""
    for combo in combinations_with_replacement(range(d), n):
        alpha = [0] * d
        for i in combo:
            alpha[i] += 1
        yield tuple(alpha)


@dataclass(frozen=True)
class Workspace:
    """Fixed one-particle dimension ``d``, grade cutoff ``n_max`` and backend."""

    d: int
    n_max: int
    backend: str = EXACT

    def __post_init__(self):
        if self.d < 1:
            raise WorkspaceError(f"d must be >= 1, got {self.d}")
        if self.n_max < 0:
            raise WorkspaceError(f"n_max must be >= 0, got {self.n_max}")
        if self.backend not in BACKENDS:
            raise WorkspaceError(f"unknown backend {self.backend!r}")

    @property
    def exact(self) -> bool:
        return self.backend == EXACT

    def scalar(self, x):
        return to_backend(x, self.backend)

    def zero(self) -> "FockVector":
        return FockVector(self, {})

    def vacuum(self) -> "FockVector":
        return FockVector(self, {(0,) * self.d: self.scalar(1)})

    def monomial(self, alpha: Sequence[int], coeff=1) -> "FockVector":
        return FockVector(self, {tuple(alpha): self.scalar(coeff)})

    def vector(self, terms: Mapping[Sequence[int], object]) -> "FockVector":
        return FockVector(self, {tuple(a): self.scalar(c) for a, c in terms.items()})

    def one_particle(self, coords: Sequence) -> "OneParticleVector":
        return OneParticleVector(self, tuple(self.scalar(c) for c in coords))

    def basis(self, i: int) -> "OneParticleVector":
        """The orthonormal basis vector e_{i+1} (``i`` is zero-based)."""
        if not 0 <= i < self.d:
            raise WorkspaceError(f"basis index {i} out of range for d={self.d}")
        return self.one_particle([1 if j == i else 0 for j in range(self.d)])

    def indices(self, max_grade: int | None = None) -> Iterator[tuple[int, ...]]:
        """Occupation indices of every grade up to ``max_grade`` (default n_max)."""
        top = self.n_max if max_grade is None else max_grade
        for n in range(top + 1):
            yield from occupation_indices(self.d, n)


class FockVector:
    """Immutable finite element of the truncated symmetric algebra."""

    __slots__ = ("workspace", "_terms")

    def __init__(self, workspace: Workspace, terms: Mapping[tuple[int, ...], object]):
        clean = {}
        for alpha, c in terms.items():
            alpha = tuple(alpha)
            if len(alpha) != workspace.d:
                raise WorkspaceError(
                    f"index {alpha} has length {len(alpha)}, workspace d={workspace.d}"
                )
            if any(a < 0 for a in alpha):
                raise WorkspaceError(f"negative occupation in {alpha}")
            if grade(alpha) > workspace.n_max:
                raise WorkspaceError(
                    f"index {alpha} has grade {grade(alpha)} > n_max={workspace.n_max}"
                )
            if c:
                clean[alpha] = c
        self.workspace = workspace
        self._terms = clean

    @classmethod
    def _raw(cls, workspace, terms):
        # trusted constructor: keys already validated, zeros already pruned
        obj = cls.__new__(cls)
        obj.workspace = workspace
        obj._terms = terms
        return obj

    @property
    def terms(self) -> Mapping[tuple[int, ...], object]:
        return MappingProxyType(self._terms)

    def __getitem__(self, alpha) -> object:
        return self._terms.get(tuple(alpha), self.workspace.scalar(0))

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def grades(self) -> list[int]:
        return sorted({grade(a) for a in self._terms})

    @property
    def max_grade(self) -> int:
        """Top grade present; -1 for the zero vector."""
        return max((grade(a) for a in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.grades()) <= 1

    def _check(self, other: "FockVector"):
        if not isinstance(other, FockVector):
            raise TypeError(f"expected FockVector, got {type(other).__name__}")
        if other.workspace != self.workspace:
            raise WorkspaceError(f"workspace mismatch: {self.workspace} vs {other.workspace}")

    def __add__(self, other: "FockVector") -> "FockVector":
        self._check(other)
        out = dict(self._terms)
        for alpha, c in other._terms.items():
            s = out.get(alpha, 0) + c
            if s:
                out[alpha] = s
            else:
                out.pop(alpha, None)
        return FockVector._raw(self.workspace, out)

    def __neg__(self) -> "FockVector":
        return FockVector._raw(self.workspace, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-other)

    def scale(self, a) -> "FockVector":
        a = self.workspace.scalar(a)
        if not a:
            return self.workspace.zero()
        return FockVector._raw(self.workspace, {k: a * c for k, c in self._terms.items()
                                                if a * c})

    def __mul__(self, a):
        if isinstance(a, FockVector):
            return NotImplemented
        return self.scale(a)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.workspace == other.workspace and self._terms == other._terms

    def __hash__(self):
        return hash((self.workspace, frozenset(self._terms.items())))

    def __repr__(self):
        if not self._terms:
            return f"FockVector(0; d={self.workspace.d})"
        parts = [f"{c}*{_monomial_str(a)}" for a, c in sorted(self._terms.items())]
        return f"FockVector({' + '.join(parts)}; d={self.workspace.d})"


def _monomial_str(alpha):
    factors = [f"e{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(alpha) if k]
    return "*".join(factors) or "1"


@dataclass(frozen=True)
class OneParticleVector:
    """Coordinates of ``v = sum_i coords[i] e_{i+1}`` over the orthonormal basis."""

    workspace: Workspace
    coords: tuple

    def __post_init__(self):
        if len(self.coords) != self.workspace.d:
            raise WorkspaceError(
                f"one-particle vector has {len(self.coords)} coords, d={self.workspace.d}"
            )

    def norm_sq(self):
        total = sum((abs_sq(c) for c in self.coords), Fraction(0))
        return total if self.workspace.exact else float(total)

    def inner(self, other: "OneParticleVector"):
        """<self|other>, antilinear in ``self``."""
        if other.workspace.d != self.workspace.d:
            raise WorkspaceError("one-particle dimension mismatch")
        return sum((x.conjugate() * y for x, y in zip(self.coords, other.coords)),
                   self.workspace.scalar(0))

    def __add__(self, other: "OneParticleVector") -> "OneParticleVector":
        return OneParticleVector(self.workspace,
                                 tuple(x + y for x, y in zip(self.coords, other.coords)))

    def scale(self, a) -> "OneParticleVector":
        a = self.workspace.scalar(a)
        return OneParticleVector(self.workspace, tuple(a * x for x in self.coords))


def monomial_inner(alpha: Sequence[int], beta: Sequence[int]) -> int:
    """<e^alpha|e^beta> = delta(alpha, beta) * prod(alpha_i!)."""
    if len(alpha) != len(beta):
        raise WorkspaceError(f"dimension mismatch: {len(alpha)} vs {len(beta)}")
    if tuple(alpha) != tuple(beta):
        return 0
    return math.prod(math.factorial(a) for a in alpha)


def inner(phi: FockVector, psi: FockVector):
    """Sesquilinear inner product <phi|psi>, antilinear in ``phi``."""
    phi._check(psi)
    small, large = (phi._terms, psi._terms)
    if len(small) > len(large):
        small, large = large, small
    total = phi.workspace.scalar(0)
    for alpha in small:
        if alpha in large:
            total += phi._terms[alpha].conjugate() * psi._terms[alpha] * monomial_inner(alpha, alpha)
    return total


def norm_sq(phi: FockVector):
    """||phi||^2 as an exact ``Fraction`` (exact backend) or ``float``."""
    total = sum((abs_sq(c) * monomial_inner(a, a) for a, c in phi._terms.items()), Fraction(0))
    return total if phi.workspace.exact else float(total)


def grade_project(phi: FockVector, n: int) -> FockVector:
    if n < 0:
        raise ValueError(f"grade must be >= 0, got {n}")
    return FockVector._raw(phi.workspace,
                           {a: c for a, c in phi._terms.items() if grade(a) == n})


def tensor_to_occupation(factors: Sequence[OneParticleVector],
                         workspace: Workspace | None = None) -> FockVector:
    """Expand the symmetric product ``x_1 x_2 ... x_n`` in the monomial basis.

    An empty list gives the vacuum; ``workspace`` is then required.
    """
    if workspace is None:
        if not factors:
            raise WorkspaceError("workspace required for an empty product")
        workspace = factors[0].workspace
    if len(factors) > workspace.n_max:
        raise WorkspaceError(f"{len(factors)} factors exceed n_max={workspace.n_max}")
    terms = {(0,) * workspace.d: workspace.scalar(1)}
    for x in factors:
        if x.workspace.d != workspace.d:
            raise WorkspaceError("factor dimension mismatch")
        out: dict = {}
        for alpha, c in terms.items():
            for i, xi in enumerate(x.coords):
                if not xi:
                    continue
                beta = alpha[:i] + (alpha[i] + 1,) + alpha[i + 1:]
                out[beta] = out.get(beta, 0) + xi * c
        terms = {a: c for a, c in out.items() if c}
    return FockVector._raw(workspace, terms)


def fock_to_json(phi: FockVector) -> dict:
    ws = phi.workspace
    terms = []
    for alpha, c in sorted(phi._terms.items()):
        if ws.exact:
            re = f"{c.re.numerator}/{c.re.denominator}"
            im = f"{c.im.numerator}/{c.im.denominator}"
        else:
            re, im = c.real, c.imag
        terms.append({"alpha": list(alpha), "re": re, "im": im})
    return {"d": ws.d, "n_max": ws.n_max, "backend": ws.backend, "terms": terms}


def fock_from_json(obj: dict | str) -> FockVector:
    if isinstance(obj, str):
        obj = json.loads(obj)
    ws = Workspace(int(obj["d"]), int(obj["n_max"]), obj.get("backend", EXACT))
    terms = {}
    for t in obj["terms"]:
        alpha = tuple(int(a) for a in t["alpha"])
        c = scalar_from_json({"re": t.get("re", 0), "im": t.get("im", 0)}, ws.backend)
        terms[alpha] = terms.get(alpha, 0) + c
    return FockVector(ws, terms)

