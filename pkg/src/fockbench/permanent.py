"""Matrix permanents: a literal permutation sum and Ryser's Gray-code kernel.

The permanent of the Gram matrix ``G[i][j] = <x_i|y_j>`` is the inner product
of the symmetric products ``x_1...x_n`` and ``y_1...y_n``.
"""

from __future__ import annotations

import json
import math
import os
from fractions import Fraction
from itertools import permutations
from numbers import Rational
from typing import Sequence

import numpy as np

from .fock import OneParticleVector, WorkspaceError
from .scalars import GaussianRational, scalar_from_json, scalar_to_json

__all__ = [
    "PermanentSizeError",
    "NAIVE_MAX_N",
    "RYSER_MAX_N",
    "ryser_max_n",
    "permanent_naive",
    "permanent_ryser",
    "gram_matrix",
    "gram_inner",
    "matrix_from_json",
    "matrix_to_json",
]

NAIVE_MAX_N = 10
RYSER_MAX_N = 30

# columns tabulated up front by the float kernel (2^10 subset row sums)
_BLOCK_BITS = 10


class PermanentSizeError(ValueError):
    pass


def ryser_max_n() -> int:
    """Ryser cutoff, overridable through ``FOCKBENCH_MAX_RYSER_N``."""
    env = os.environ.get("FOCKBENCH_MAX_RYSER_N")
    return int(env) if env else RYSER_MAX_N


def _as_rows(M) -> list[list]:
    if isinstance(M, np.ndarray):
        if M.ndim != 2 and M.size:
            raise ValueError(f"expected a 2-d array, got shape {M.shape}")
        rows = [list(r) for r in M] if M.size else []
    else:
        rows = [list(r) for r in M]
    n = len(rows)
    for r in rows:
        if len(r) != n:
            raise ValueError(f"matrix is not square: {n} rows, row of length {len(r)}")
    return rows


def _integer_parts(rows):
    """Clear denominators row by row: M[i][j] = (re[i][j] + i im[i][j]) / D_i.

    Returns integer matrices and the exact factor prod_i 1/D_i, or None when
    some entry is not an exact scalar.  The permanent is linear in each row,
    so perm(M) = factor * perm(re + i im).
    """
    re_rows, im_rows = [], []
    factor = Fraction(1)
    for row in rows:
        parts = []
        for x in row:
            if isinstance(x, GaussianRational):
                parts.append((x.re, x.im))
            elif isinstance(x, (int, Rational)) and not isinstance(x, bool):
                parts.append((Fraction(x), Fraction(0)))
            else:
                return None
        den = math.lcm(*(f.denominator for pair in parts for f in pair)) if parts else 1
        re_rows.append([int(a * den) for a, _ in parts])
        im_rows.append([int(b * den) for _, b in parts])
        factor /= den
    return re_rows, im_rows, factor


def _exact_result(rows, re, im, factor):
    if any(isinstance(x, GaussianRational) for r in rows for x in r):
        return GaussianRational(re * factor, im * factor)
    value = re * factor
    return value.numerator if value.denominator == 1 else value


def _naive_gaussian(re_rows, im_rows):
    n = len(re_rows)
    used = [False] * n

    # depth-first over permutations, sharing the product of the fixed prefix
    def walk(j, pr, pi):
        if j == n:
            return pr, pi
        sr = si = 0
        row_re, row_im = re_rows[j], im_rows[j]
        for col in range(n):
            if used[col]:
                continue
            a, b = row_re[col], row_im[col]
            if not (a or b):
                continue
            used[col] = True
            tr, ti = walk(j + 1, pr * a - pi * b, pr * b + pi * a)
            used[col] = False
            sr += tr
            si += ti
        return sr, si

    return walk(0, 1, 0)


def permanent_naive(M, max_n: int = NAIVE_MAX_N):
    """Sum over all n! permutations of prod_j M[j][p(j)].

    The empty matrix has permanent 1.  Exact input is summed exactly.
    """
    rows = _as_rows(M)
    n = len(rows)
    if n > max_n:
        raise PermanentSizeError(
            f"naive permanent refused for n={n} > {max_n} ({math.factorial(n)} permutations)"
        )
    parts = _integer_parts(rows)
    if parts is not None:
        re_rows, im_rows, factor = parts
        return _exact_result(rows, *_naive_gaussian(re_rows, im_rows), factor)
    total = 0
    for p in permutations(range(n)):
        term = 1
        for j in range(n):
            term = term * rows[j][p[j]]
        total = total + term
    return total


def _gray_flips(n: int):
    """Walk the reflected Gray code on n bits, yielding (column, added, subset size)."""
    state = 0
    for k in range(1, 1 << n):
        col = (k & -k).bit_length() - 1
        state ^= 1 << col
        yield col, bool(state >> col & 1), bin(state).count("1")


def _ryser_gaussian(re_rows, im_rows):
    n = len(re_rows)
    sum_re = [0] * n
    sum_im = [0] * n
    total_re = total_im = 0
    for col, added, size in _gray_flips(n):
        sign = 1 if added else -1
        for i in range(n):
            sum_re[i] += sign * re_rows[i][col]
            sum_im[i] += sign * im_rows[i][col]
        pr, pi = 1, 0
        for a, b in zip(sum_re, sum_im):
            pr, pi = pr * a - pi * b, pr * b + pi * a
        if size % 2 == n % 2:
            total_re += pr
            total_im += pi
        else:
            total_re -= pr
            total_im -= pi
    return total_re, total_im


def _subset_sums(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row sums over every column subset in Gray-code order, plus subset parities."""
    n_rows, k = A.shape
    sums = np.zeros((1 << k, n_rows), dtype=A.dtype)
    parity = np.zeros(1 << k, dtype=np.int8)
    cur = np.zeros(n_rows, dtype=A.dtype)
    for step, (col, added, size) in enumerate(_gray_flips(k), start=1):
        cur = cur + A[:, col] if added else cur - A[:, col]
        sums[step] = cur
        parity[step] = size & 1
    return sums, parity


def _ryser_float(A: np.ndarray):
    # Split the columns: the low block's 2^k subset row sums are tabulated
    # once, the high block is walked in Gray-code order and broadcast against it.
    n = A.shape[0]
    k = min(n, _BLOCK_BITS)
    low_sums, low_par = _subset_sums(A[:, :k])
    low_sign = np.where((low_par + n) % 2 == 0, 1.0, -1.0)
    high = A[:, k:]
    total = np.sum(low_sign * np.prod(low_sums, axis=1))
    cur = np.zeros(n, dtype=A.dtype)
    for col, added, size in _gray_flips(n - k):
        cur = cur + high[:, col] if added else cur - high[:, col]
        sign = low_sign if size % 2 == 0 else -low_sign
        total += np.sum(sign * np.prod(low_sums + cur, axis=1))
    return total.item()


def permanent_ryser(M, max_n: int | None = None):
    """Ryser inclusion-exclusion permanent with Gray-code column subsets.

    ``perm(M) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} M[i][j]``, with
    consecutive subsets differing in one column so each row sum is updated
    in O(1).  Exact scalars (ints, Fractions, Gaussian rationals) are summed
    exactly; float or complex input goes through a vectorized numpy kernel.
    """
    if max_n is None:
        max_n = ryser_max_n()
    rows = _as_rows(M)
    n = len(rows)
    if n > max_n:
        raise PermanentSizeError(f"Ryser permanent refused for n={n} > {max_n}")
    if n == 0:
        return 1
    parts = _integer_parts(rows)
    if parts is not None:
        re_rows, im_rows, factor = parts
        return _exact_result(rows, *_ryser_gaussian(re_rows, im_rows), factor)
    A = np.array([[complex(x) for x in r] for r in rows])
    if not A.imag.any():
        A = A.real.copy()
    return _ryser_float(A)


def gram_matrix(xs: Sequence[OneParticleVector], ys: Sequence[OneParticleVector]):
    if len(xs) != len(ys):
        raise WorkspaceError(f"length mismatch: {len(xs)} vs {len(ys)}")
    return [[x.inner(y) for y in ys] for x in xs]


def gram_inner(xs: Sequence[OneParticleVector], ys: Sequence[OneParticleVector],
               algorithm: str = "ryser"):
    """<x_1...x_n|y_1...y_n> as the permanent of the Gram matrix."""
    G = gram_matrix(xs, ys)
    if algorithm == "naive":
        value = permanent_naive(G)
    elif algorithm == "ryser":
        value = permanent_ryser(G)
    else:
        raise ValueError(f"unknown algorithm {algorithm!r}")
    return value


def matrix_from_json(obj) -> list[list]:
    """Parse ``{"n": int, "entries": [[scalar, ...], ...]}``.

    The matrix is exact unless some entry is a JSON float.
    """
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ValueError("matrix JSON must be an object with an 'entries' field")
    entries = obj["entries"]
    n = obj.get("n", len(entries))
    if not isinstance(n, int) or len(entries) != n or any(
            not isinstance(r, list) or len(r) != n for r in entries):
        raise ValueError(f"entries do not form an {n}x{n} matrix")

    def has_float(x):
        if isinstance(x, dict):
            return any(isinstance(v, float) for v in x.values())
        if isinstance(x, list):
            return any(isinstance(v, float) for v in x)
        return isinstance(x, float)

    backend = "float" if any(has_float(x) for r in entries for x in r) else "exact"
    return [[scalar_from_json(x, backend) for x in r] for r in entries]


def matrix_to_json(M) -> dict:
    rows = _as_rows(M)
    return {"n": len(rows), "entries": [[scalar_to_json(x) for x in r] for r in rows]}
