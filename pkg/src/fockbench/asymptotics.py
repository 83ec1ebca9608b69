"""Closed-form positive sequences ``C n^a b^n (n!)^k`` and their series.

Grade-norm series of infinite Fock vectors are described by such sequences.
The convergence of their sums is decided by a four-case rule, partial sums
and tail bounds give numerical evidence, and :func:`domain_report` packages
the Fock-norm / ``N^(1/2)``-domain / uniform-annihilator-bound verdicts for a
family ``Phi_n = lambda_n u_n^n / n!``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

from .fock import FockVector, Workspace, WorkspaceError
from .scalars import EXACT, FLOAT, scalar_to_json

__all__ = [
    "SeqSpec",
    "SeqSpecSyntaxError",
    "ConvergenceVerdict",
    "PartialSum",
    "DomainReport",
    "COUNTEREXAMPLE_LAMBDA_SQ",
    "EXACT_SUM_LIMIT",
    "parse_seq_spec",
    "render",
    "seq_scale",
    "classify",
    "partial_sum",
    "term_sup",
    "first_crossing",
    "domain_report",
    "counterexample_lambda",
    "counterexample_truncate",
]

# |lambda_n|^2 = (n-1)!/n, i.e. |lambda_n|^2/(n-1)! = 1/n
COUNTEREXAMPLE_LAMBDA_SQ = "fact(n)^1 * n^-2"

EXACT_SUM_LIMIT = 10_000

# log(DBL_MAX) with a little room
_LOG_FLOAT_MAX = 709.0


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError(f"SeqSpec fields must be exact, got float {x!r}")
    return Fraction(x)


@dataclass(frozen=True)
class SeqSpec:
    """Term ``t_n = C * n^a * b^n * (n!)^k`` for ``n >= start``."""

    C: Fraction = Fraction(1)
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(1)
    k: int = 0
    start: int = 1

    def __post_init__(self):
        object.__setattr__(self, "C", _frac(self.C))
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))
        if Fraction(self.k).denominator != 1:
            raise ValueError(f"factorial exponent must be an integer, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        if self.C <= 0:
            raise ValueError(f"coefficient must be positive, got {self.C}")
        if self.b <= 0:
            raise ValueError(f"geometric base must be positive, got {self.b}")
        if int(self.start) != self.start or self.start < 1:
            raise ValueError(f"start must be an integer >= 1, got {self.start}")

    def term(self, n: int) -> Fraction:
        """Exact term; only available when the power of n is an integer."""
        if self.a.denominator != 1:
            raise ValueError(f"t_n is irrational for non-integer exponent a={self.a}")
        return (self.C * Fraction(n) ** int(self.a) * self.b ** n
                * Fraction(math.factorial(n)) ** self.k)

    def log_term(self, n: int) -> float:
        return (math.log(self.C) + float(self.a) * math.log(n) + n * math.log(self.b)
                + self.k * math.lgamma(n + 1))

    def term_float(self, n: int) -> float:
        if self.k == 0 and self.b == 1:
            return float(self.C) * float(n) ** float(self.a)
        lt = self.log_term(n)
        if lt > _LOG_FLOAT_MAX:
            raise OverflowError(f"term at n={n} overflows a double (log t_n = {lt:.1f})")
        return math.exp(lt)

    def __str__(self):
        return render(self)


class SeqSpecSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.message = message
        self.text = text
        self.position = position

    def caret(self) -> str:
        return (f"syntax error at position {self.position}: {self.message}\n"
                f"  {self.text}\n  {' ' * self.position}^")


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z]+)|(?P<op>>=|[*/^(),+-]))")


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while True:
            while pos < len(text) and text[pos].isspace():
                pos += 1
            if pos == len(text):
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise SeqSpecSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def peek(self, offset=0):
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else ("end", "", len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def fail(self, expected: str):
        kind, value, pos = self.peek()
        found = "end of input" if kind == "end" else repr(value)
        raise SeqSpecSyntaxError(f"expected {expected}, found {found}", self.text, pos)

    def expect(self, value: str, expected: str | None = None):
        if self.peek()[1] != value or self.peek()[0] == "end":
            self.fail(expected or repr(value))
        return self.take()

    def rational(self) -> Fraction:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        if self.peek()[0] != "int":
            self.fail("a number")
        value = Fraction(int(self.take()[1]))
        if self.peek()[1] == "/" and self.peek(1)[0] == "int":
            self.take()
            _, den, pos = self.take()
            if int(den) == 0:
                raise SeqSpecSyntaxError("zero denominator", self.text, pos)
            value /= int(den)
        return sign * value

    def integer(self) -> int:
        _, _, pos = self.peek()
        value = self.rational()
        if value.denominator != 1:
            raise SeqSpecSyntaxError("factorial exponent must be an integer", self.text, pos)
        return int(value)


def parse_seq_spec(text: str) -> SeqSpec:
    """Parse a product of factors into a normalized :class:`SeqSpec`.

    Grammar (whitespace is insignificant)::

        spec   := factor ('*' factor)* [',' 'n' '>=' INT]
        factor := 'n^' rational | 'fact(n)^' integer | rational ['^n']
        rational := ['-'] INT ['/' INT]

    A bare rational is a coefficient; ``r^n`` is a geometric factor.
    Repeated factors of one kind are merged, so ``"2 * n^-1 * n^-1"``
    parses to ``C=2, a=-2``.
    """
    lx = _Lexer(text)
    C, a, b, k, start = Fraction(1), Fraction(0), Fraction(1), 0, 1
    if lx.peek()[0] == "end":
        lx.fail("a factor")
    while True:
        kind, value, pos = lx.peek()
        if kind == "word" and value == "n":
            lx.take()
            lx.expect("^")
            a += lx.rational()
        elif kind == "word" and value == "fact":
            lx.take()
            lx.expect("(")
            lx.expect("n")
            lx.expect(")")
            lx.expect("^")
            k += lx.integer()
        elif kind == "int" or (kind == "op" and value in "+-"):
            r = lx.rational()
            if lx.peek()[1] == "^":
                lx.take()
                lx.expect("n")
                if r <= 0:
                    raise SeqSpecSyntaxError("geometric base must be positive", text, pos)
                b *= r
            else:
                if r <= 0:
                    raise SeqSpecSyntaxError("coefficient must be positive", text, pos)
                C *= r
        else:
            lx.fail("a factor ('n^', 'fact(n)^' or a number)")
        if lx.peek()[1] == "*" and lx.peek()[0] == "op":
            lx.take()
            continue
        break
    if lx.peek()[1] == ",":
        lx.take()
        lx.expect("n")
        lx.expect(">=")
        if lx.peek()[0] != "int":
            lx.fail("an integer")
        _, value, pos = lx.take()
        start = int(value)
        if start < 1:
            raise SeqSpecSyntaxError("start must be >= 1", text, pos)
    if lx.peek()[0] != "end":
        lx.fail("'*' or end of input")
    return SeqSpec(C, a, b, k, start)


def render(spec: SeqSpec) -> str:
    """Canonical text for ``spec``; :func:`parse_seq_spec` inverts it."""
    parts = []
    if spec.a != 0:
        parts.append(f"n^{spec.a}")
    if spec.b != 1:
        parts.append(f"{spec.b}^n")
    if spec.k != 0:
        parts.append(f"fact(n)^{spec.k}")
    if spec.C != 1 or not parts:
        parts.insert(0, str(spec.C))
    text = " * ".join(parts)
    if spec.start != 1:
        text += f", n>={spec.start}"
    return text


def seq_scale(spec: SeqSpec, da=0, dk: int = 0) -> SeqSpec:
    """Multiply every term by ``n^da * (n!)^dk``."""
    return SeqSpec(spec.C, spec.a + _frac(da), spec.b, spec.k + dk, spec.start)


@dataclass(frozen=True)
class ConvergenceVerdict:
    converges: bool
    rule: str
    note: str

    def to_json(self) -> dict:
        return {"converges": self.converges, "rule": self.rule, "note": self.note}


def classify(spec: SeqSpec) -> ConvergenceVerdict:
    """Decide whether ``sum_n t_n`` converges.

    Factorial decay (k < 0) always wins and factorial growth (k > 0) always
    loses; otherwise the geometric base decides, and at b = 1 the p-series
    test does.
    """
    if spec.k < 0:
        return ConvergenceVerdict(True, "factorial-dominates",
                                  f"(n!)^{spec.k} decays faster than any n^a b^n")
    if spec.k > 0:
        return ConvergenceVerdict(False, "term-growth",
                                  f"(n!)^{spec.k} grows faster than any n^a b^n; terms -> inf")
    if spec.b < 1:
        return ConvergenceVerdict(True, "geometric", f"ratio -> {spec.b} < 1")
    if spec.b > 1:
        return ConvergenceVerdict(False, "geometric", f"ratio -> {spec.b} > 1")
    if spec.a < -1:
        return ConvergenceVerdict(True, "p-series", f"sum n^{spec.a} with p = {-spec.a} > 1")
    return ConvergenceVerdict(False, "p-series", f"sum n^{spec.a} with p = {-spec.a} <= 1")


class PartialSum(NamedTuple):
    value: object
    tail_bound: object


def _tail_bound(spec: SeqSpec, N: int, exact: bool):
    # integral test: sum_{n>N} C n^a <= C N^(a+1) / (-a-1)
    if not (spec.k == 0 and spec.b == 1 and spec.a < -1):
        return None
    p = -spec.a - 1
    if exact and spec.a.denominator == 1:
        return spec.C * Fraction(N) ** int(spec.a + 1) / p
    return float(spec.C) * float(N) ** float(spec.a + 1) / float(p)


def partial_sum(spec: SeqSpec, N: int, backend: str = FLOAT) -> PartialSum:
    """``sum_{n=start}^{N} t_n`` with an integral-test tail bound when one applies.

    On the exact backend terms are accumulated as rationals up to
    :data:`EXACT_SUM_LIMIT` (and only for integer ``a``); any remainder is
    added with compensated float summation and the result is a float.
    Float evaluation raises ``OverflowError`` once a term leaves double range.
    """
    if N < spec.start:
        raise ValueError(f"N={N} is below the first index {spec.start}")
    if backend not in (EXACT, FLOAT):
        raise ValueError(f"unknown backend {backend!r}")
    exact_top = spec.start - 1
    exact_part = Fraction(0)
    if backend == EXACT and spec.a.denominator == 1:
        exact_top = min(N, max(EXACT_SUM_LIMIT, spec.start - 1))
        t = spec.term(spec.start)
        for n in range(spec.start, exact_top + 1):
            exact_part += t
            # t_{n+1} = t_n ((n+1)/n)^a b (n+1)^k
            t = t * Fraction(n + 1, n) ** int(spec.a) * spec.b * Fraction(n + 1) ** spec.k
    if exact_top >= N:
        return PartialSum(exact_part, _tail_bound(spec, N, exact=True))
    rest = math.fsum(spec.term_float(n) for n in range(exact_top + 1, N + 1))
    return PartialSum(float(exact_part) + rest, _tail_bound(spec, N, exact=False))


def first_crossing(spec: SeqSpec, threshold: float, n_limit: int) -> int | None:
    """Smallest N <= n_limit whose partial sum exceeds ``threshold``."""
    total = 0.0
    comp = 0.0
    for n in range(spec.start, n_limit + 1):
        try:
            t = spec.term_float(n)
        except OverflowError:
            return n
        # Kahan step; the running value only has to resolve one threshold
        y = t - comp
        s = total + y
        comp = (s - total) - y
        total = s
        if total > threshold:
            return n
    return None


def _powered_term(spec: SeqSpec, n: int) -> Fraction:
    # t_n^q with q the denominator of a: exact even for fractional powers of n
    q = spec.a.denominator
    p = spec.a.numerator
    return (spec.C ** q * Fraction(n) ** p * spec.b ** (n * q)
            * Fraction(math.factorial(n)) ** (spec.k * q))


def _monotone_from(spec: SeqSpec) -> int | None:
    """An index from which the terms never increase, or None if they are unbounded."""
    a, b, k = spec.a, spec.b, spec.k
    if k > 0 or (k == 0 and (b > 1 or (b == 1 and a > 0))):
        return None
    if k == 0 and (a <= 0 or b == 1):
        # ratio ((n+1)/n)^a b <= 1 at every n
        return spec.start
    if k == 0:
        # b < 1 < ((n+1)/n)^a for small n; the ratio falls monotonically
        n = math.ceil(1.0 / (float(b) ** (-1.0 / float(a)) - 1.0)) + 1
        return max(spec.start, n)
    # k <= -1: ratio <= 2^max(a,0) * b / (n+1)
    n = math.ceil(2.0 ** max(float(a), 0.0) * float(b)) + 1
    return max(spec.start, n)


def term_sup(spec: SeqSpec, scan_limit: int = 1_000_000):
    """``(sup_n t_n, argmax)`` located exactly, or ``None`` when unbounded.

    The sup is a ``Fraction`` when ``a`` is an integer and a float otherwise
    (the maximizing index is still found by exact comparison).
    """
    n_stop = _monotone_from(spec)
    if n_stop is None:
        return None
    if n_stop - spec.start > scan_limit:
        raise ValueError(f"monotone tail starts at n={n_stop}, beyond scan limit")
    best_n = spec.start
    best = _powered_term(spec, best_n)
    for n in range(spec.start + 1, n_stop + 1):
        t = _powered_term(spec, n)
        if t > best:
            best, best_n = t, n
    if spec.a.denominator == 1:
        return spec.term(best_n), best_n
    return spec.term_float(best_n), best_n


@dataclass(frozen=True)
class DomainReport:
    """Verdicts for ``Phi = sum_n lambda_n u_n^n / n!`` with orthonormal ``u_n``.

    ``norm_spec`` describes ``||Phi_n||^2 = |lambda_n|^2 / n!`` and
    ``sqrtN_spec`` describes ``n ||Phi_n||^2 = |lambda_n|^2 / (n-1)!``, which is
    also the per-mode weight in ``||a(v) Phi||^2``.  ``K`` bounds that weight
    uniformly, so ``||a(v) Phi||^2 <= K ||v||^2`` for every ``v``.
    """

    lambda_sq_spec: SeqSpec
    norm_spec: SeqSpec
    sqrtN_spec: SeqSpec
    in_fock: ConvergenceVerdict
    in_sqrtN_domain: ConvergenceVerdict
    K: object
    K_attained_at: int | None
    witnesses: tuple = field(default_factory=tuple)

    def to_json(self) -> dict:
        return {
            "lambda_sq_spec": render(self.lambda_sq_spec),
            "norm_spec": render(self.norm_spec),
            "sqrtN_spec": render(self.sqrtN_spec),
            "in_fock": self.in_fock.to_json(),
            "in_sqrtN_domain": self.in_sqrtN_domain.to_json(),
            "K": None if self.K is None else scalar_to_json(self.K),
            "K_attained_at": self.K_attained_at,
            "witnesses": [dict(w) for w in self.witnesses],
        }


def _witness(series: str, spec: SeqSpec, verdict: ConvergenceVerdict, N: int,
             threshold: float) -> dict:
    w = {"series": series, "N": N}
    try:
        ps = partial_sum(spec, N, FLOAT)
    except OverflowError:
        w.update(sum=None, tail_bound=None, overflow=True)
        if not verdict.converges:
            w["exceeds_threshold"] = True
        return w
    w.update(sum=ps.value, tail_bound=ps.tail_bound)
    if not verdict.converges:
        w["exceeds_threshold"] = ps.value > threshold
    return w


def domain_report(lambda_sq_spec: SeqSpec | str,
                  N_values: Sequence[int] = (100, 10_000, 100_000),
                  divergence_threshold: float = 12) -> DomainReport:
    """Fock-space membership, ``N^(1/2)``-domain membership and the annihilator bound.

    Witness sums are float partial sums at each ``N``; divergent series also
    record whether the sum has passed ``divergence_threshold``.
    """
    if isinstance(lambda_sq_spec, str):
        lambda_sq_spec = parse_seq_spec(lambda_sq_spec)
    if list(N_values) != sorted(set(N_values)):
        raise ValueError(f"N values must be strictly increasing, got {list(N_values)}")
    norm_spec = seq_scale(lambda_sq_spec, 0, -1)
    sqrtN_spec = seq_scale(norm_spec, 1, 0)
    in_fock = classify(norm_spec)
    in_sqrtN = classify(sqrtN_spec)
    sup = term_sup(sqrtN_spec)
    K, K_at = (None, None) if sup is None else sup
    witnesses = []
    for N in N_values:
        if N < norm_spec.start:
            continue
        witnesses.append(_witness("norm", norm_spec, in_fock, N, divergence_threshold))
        witnesses.append(_witness("sqrtN", sqrtN_spec, in_sqrtN, N, divergence_threshold))
    return DomainReport(lambda_sq_spec, norm_spec, sqrtN_spec, in_fock, in_sqrtN,
                        K, K_at, tuple(witnesses))


def counterexample_lambda(n: int) -> float:
    """lambda_n = sqrt((n-1)!/n), so that |lambda_n|^2/(n-1)! = 1/n."""
    return math.sqrt(math.factorial(n - 1) / n)


def counterexample_truncate(d: int, n_max: int | None = None) -> FockVector:
    """Grades 1..d of ``Phi = sum_n lambda_n e_n^n / n!`` (float backend).

    Each grade ``n`` is the single monomial ``e_n^n``, so ``||Phi_n||^2 = 1/n^2``
    and ``||a(v) Phi||^2 = sum_n |v_n|^2 / n``.
    """
    if d < 1:
        raise WorkspaceError(f"d must be >= 1, got {d}")
    n_max = d if n_max is None else n_max
    if n_max < d:
        raise WorkspaceError(f"workspace n_max={n_max} too small for d={d}")
    ws = Workspace(d, n_max, FLOAT)
    terms = {}
    for n in range(1, d + 1):
        alpha = tuple(n if i == n - 1 else 0 for i in range(d))
        terms[alpha] = counterexample_lambda(n) / math.factorial(n)
    return ws.vector(terms)
