"""Gauss hypergeometric function F(a,b;c;x) on x in [0,1).

Evaluation strategy:

* x <= 0.75: the defining power series with the term-ratio recurrence
  t_{n+1} = t_n (a+n)(b+n) / ((c+n)(n+1)) x and compensated summation.
* x > 0.75, c = a+b (zero-balanced): the logarithmic connection series in
  powers of w = 1-x, whose n-th term couples w^n with (R_n - log w) where
  R_n = 2 psi(n+1) - psi(a+n) - psi(b+n).
* x > 0.75, c = a+b+1: the analogous one-step-shifted connection series,
  which stays accurate arbitrarily close to x=1 (the function is finite
  there).
* any other c - a - b: the direct series regardless of x, with an honest
  error estimate (slow convergence near 1 is reported, not hidden).

Identity checks that push x within 1e-10 of 1 should call
``hyp2f1_one_minus`` with w = 1-x formed in a cancellation-free way; the
value of the near-unit series depends on w only through log w and powers of
w, so an accurately supplied w preserves full precision where forming
1-x in binary64 would not.
"""

from __future__ import annotations

import enum
import math
import os
from dataclasses import dataclass

from .errors import DomainError
from .special_core import EULER_GAMMA, Params, _require_positive, digamma, log_gamma

__all__ = [
    "HypParams",
    "EvalResult",
    "Method",
    "SeriesCoefficients",
    "pochhammer",
    "hyp2f1",
    "hyp2f1_one_minus",
    "hyp2f1_derivative",
    "contiguous_check",
    "zero_balanced_asymptotic",
    "DEFAULT_MAX_TERMS",
    "MAX_TERMS_ENV",
]

SERIES_TOL = 1e-15
SWITCH_X = 0.75
DEFAULT_MAX_TERMS = 100_000
MAX_TERMS_ENV = "RCT_HYPER_MAX_TERMS"

# tolerance used to recognise c = a+b and c = a+b+1 from float parameters
_BALANCE_TOL = 1e-12

_EPS = 2.220446049250313e-16


class Method(str, enum.Enum):
    DIRECT_SERIES = "direct_series"
    LOG_CONNECTION = "log_connection"
    TERMINAL_LIMIT = "terminal_limit"


@dataclass(frozen=True)
class HypParams:
    """Parameter triple (a, b, c) with a, b, c > 0 (so c is never a pole)."""

    a: float
    b: float
    c: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", _require_positive("a", self.a))
        object.__setattr__(self, "b", _require_positive("b", self.b))
        object.__setattr__(self, "c", _require_positive("c", self.c))


@dataclass(frozen=True)
class EvalResult:
    """Function value with an absolute-error estimate and the path taken."""

    value: float
    abs_err_estimate: float
    method: Method


def _resolve_max_terms(max_terms: int | None) -> int:
    if max_terms is not None:
        n = int(max_terms)
        if n < 1:
            raise DomainError("max_terms must be >= 1")
        return n
    env = os.environ.get(MAX_TERMS_ENV)
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise DomainError(f"{MAX_TERMS_ENV} must be an integer, got {env!r}") from exc
        if n >= 1:
            return n
    return DEFAULT_MAX_TERMS


def pochhammer(a: float, n: int) -> float:
    """Shifted factorial (a,n) = a(a+1)...(a+n-1), with (a,0) = 1.

    Overflow saturates to inf under IEEE multiplication rules.
    """
    n = int(n)
    if n < 0:
        raise DomainError("pochhammer order n must be >= 0")
    out = 1.0
    for k in range(n):
        out *= a + k
    return out


class _NeumaierSum:
    """Compensated accumulator; ``total`` returns sum plus carried error."""

    __slots__ = ("s", "c")

    def __init__(self, value: float = 0.0) -> None:
        self.s = value
        self.c = 0.0

    def add(self, x: float) -> None:
        t = self.s + x
        if abs(self.s) >= abs(x):
            self.c += (self.s - t) + x
        else:
            self.c += (x - t) + self.s
        self.s = t

    def total(self) -> float:
        return self.s + self.c


def _direct_series(a: float, b: float, c: float, x: float, max_terms: int) -> EvalResult:
    if x == 0.0:
        return EvalResult(1.0, 0.0, Method.DIRECT_SERIES)
    acc = _NeumaierSum(1.0)
    t = 1.0
    n = 0
    small = 0
    ratio = 0.0
    abs_sum = 1.0
    while n < max_terms:
        ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x
        t *= ratio
        acc.add(t)
        abs_sum += abs(t)
        n += 1
        if abs(t) <= SERIES_TOL * abs(acc.s):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    value = acc.total()
    # geometric tail bound: ratios decrease towards x once n is large
    q = min(max(ratio, x), 1.0 - 1e-9) if ratio < 1.0 else None
    if q is not None:
        tail = abs(t) * q / (1.0 - q)
    else:
        tail = abs(t) * float(max_terms)
    err = tail + 4.0 * _EPS * abs_sum
    return EvalResult(value, err, Method.DIRECT_SERIES)


def _zero_balanced_near_unit(a: float, b: float, w: float, max_terms: int) -> EvalResult:
    """F(a,b;a+b;1-w) for 0 < w < 1 via the logarithmic connection series."""
    if not (0.0 < w < 1.0):
        raise DomainError(f"one_minus_x must be in (0,1) for c=a+b, got {w!r}")
    big_l = -math.log(w)
    rn = -digamma(a) - digamma(b) - 2.0 * EULER_GAMMA
    d = 1.0
    wp = 1.0
    acc = _NeumaierSum()
    abs_sum = 0.0
    n = 0
    small = 0
    while n < max_terms:
        u = d * wp * (rn + big_l)
        acc.add(u)
        abs_sum += abs(u)
        if n >= 1 and abs(u) <= SERIES_TOL * abs(acc.s):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        rn += 2.0 / (n + 1.0) - 1.0 / (a + n) - 1.0 / (b + n)
        d *= (a + n) * (b + n) / ((n + 1.0) * (n + 1.0))
        wp *= w
        n += 1
    inv_beta = math.exp(log_gamma(a + b) - log_gamma(a) - log_gamma(b))
    value = acc.total() * inv_beta
    tail = abs(d * wp * (abs(rn) + big_l)) / max(1.0 - w, 0.5)
    err = (tail + 6.0 * _EPS * abs_sum) * inv_beta
    return EvalResult(value, err, Method.LOG_CONNECTION)


def _unit_shift_near_unit(a: float, b: float, w: float, max_terms: int) -> EvalResult:
    """F(a,b;a+b+1;1-w) for 0 <= w < 1; finite at w=0."""
    if not (0.0 <= w < 1.0):
        raise DomainError(f"one_minus_x must be in [0,1) for c=a+b+1, got {w!r}")
    lg_c = log_gamma(a + b + 1.0)
    p_term = math.exp(lg_c - log_gamma(a + 1.0) - log_gamma(b + 1.0))
    if w < 1e-280:
        return EvalResult(p_term, 4.0 * _EPS * p_term, Method.TERMINAL_LIMIT)
    q_term = math.exp(lg_c - log_gamma(a) - log_gamma(b))
    log_w = math.log(w)
    # T_n = psi(n+1) + psi(n+2) - psi(a+n+1) - psi(b+n+1); psi(1)+psi(2) = 1-2*gamma
    tn = 1.0 - 2.0 * EULER_GAMMA - digamma(a + 1.0) - digamma(b + 1.0)
    cn = 1.0
    wp = 1.0
    acc = _NeumaierSum()
    abs_sum = 0.0
    n = 0
    small = 0
    while n < max_terms:
        u = cn * wp * (tn - log_w)
        acc.add(u)
        abs_sum += abs(u)
        if n >= 1 and abs(u) <= SERIES_TOL * abs(acc.s):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
        tn += 1.0 / (n + 1.0) + 1.0 / (n + 2.0) - 1.0 / (a + n + 1.0) - 1.0 / (b + n + 1.0)
        cn *= (a + 1.0 + n) * (b + 1.0 + n) / ((n + 1.0) * (n + 2.0))
        wp *= w
        n += 1
    value = p_term - q_term * w * acc.total()
    tail = abs(cn * wp * (abs(tn) + abs(log_w))) / max(1.0 - w, 0.5)
    err = q_term * w * (tail + 6.0 * _EPS * abs_sum) + 2.0 * _EPS * p_term
    return EvalResult(value, err, Method.LOG_CONNECTION)


def _near_unit(p: HypParams, w: float, max_terms: int) -> EvalResult:
    delta = p.c - p.a - p.b
    scale = max(1.0, abs(p.c))
    if abs(delta) <= _BALANCE_TOL * scale:
        return _zero_balanced_near_unit(p.a, p.b, w, max_terms)
    if abs(delta - 1.0) <= _BALANCE_TOL * scale:
        return _unit_shift_near_unit(p.a, p.b, w, max_terms)
    if w <= 0.0:
        raise DomainError("x must be < 1 unless c-a-b is 0 or 1")
    return _direct_series(p.a, p.b, p.c, 1.0 - w, max_terms)


def hyp2f1(p: HypParams, x: float, *, max_terms: int | None = None) -> EvalResult:
    """Evaluate F(a,b;c;x) for x in [0,1)."""
    x = float(x)
    if not (math.isfinite(x) and 0.0 <= x < 1.0):
        raise DomainError(f"x must lie in [0,1), got {x!r}")
    cap = _resolve_max_terms(max_terms)
    if x <= SWITCH_X:
        return _direct_series(p.a, p.b, p.c, x, cap)
    # x > 0.75 > 0.5, so 1-x is exact in binary64
    return _near_unit(p, 1.0 - x, cap)


def hyp2f1_one_minus(p: HypParams, one_minus_x: float, *, max_terms: int | None = None) -> EvalResult:
    """Evaluate F(a,b;c;1-w) given w = 1-x directly.

    Callers that know w in closed form (for instance as a cube of an exact
    quotient) should use this entry point when x is close to 1: the result
    then carries the full precision of w instead of the absolute-only
    precision of the rounded x.
    """
    w = float(one_minus_x)
    if 1.0 < w <= 1.0 + 1e-12:
        w = 1.0  # rational forms of 1-x may overshoot 1 by a few ulp
    if not (math.isfinite(w) and 0.0 <= w <= 1.0):
        raise DomainError(f"one_minus_x must lie in [0,1], got {w!r}")
    cap = _resolve_max_terms(max_terms)
    if w >= 1.0 - SWITCH_X:
        return _direct_series(p.a, p.b, p.c, 1.0 - w, cap)
    return _near_unit(p, w, cap)


def hyp2f1_derivative(p: HypParams, x: float, *, max_terms: int | None = None) -> EvalResult:
    """dF/dx = (ab/c) F(a+1,b+1;c+1;x)."""
    shifted = HypParams(p.a + 1.0, p.b + 1.0, p.c + 1.0)
    factor = p.a * p.b / p.c
    base = hyp2f1(shifted, x, max_terms=max_terms)
    return EvalResult(factor * base.value, abs(factor) * base.abs_err_estimate, base.method)


def contiguous_check(p: Params, x: float, *, max_terms: int | None = None) -> float:
    """Relative residual of (1-x) F(a+1,b+1;a+b+1;x) = F(a,b;a+b+1;x)."""
    x = float(x)
    if not (math.isfinite(x) and 0.0 < x < 1.0):
        raise DomainError(f"x must lie in (0,1), got {x!r}")
    lhs = (1.0 - x) * hyp2f1(HypParams(p.a + 1.0, p.b + 1.0, p.a + p.b + 1.0), x, max_terms=max_terms).value
    rhs = hyp2f1(HypParams(p.a, p.b, p.a + p.b + 1.0), x, max_terms=max_terms).value
    return abs(lhs - rhs) / rhs


def zero_balanced_asymptotic(p: Params, r: float) -> float:
    """Two-term blow-up approximation (R(a,b) - log(1-r)) / B(a,b) for r near 1."""
    r = float(r)
    if not (0.9 < r < 1.0):
        raise DomainError(f"r must lie in (0.9, 1), got {r!r}")
    rv = -digamma(p.a) - digamma(p.b) - 2.0 * EULER_GAMMA
    log_beta = log_gamma(p.a) + log_gamma(p.b) - log_gamma(p.a + p.b)
    return (rv - math.log(1.0 - r)) * math.exp(-log_beta)


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficient families of the quotient machinery for a parameter pair.

    a_seq:      A_n   = (a,n)(b,n) / ((a+b,n)   n!)
    a_star_seq: A*_n  = (1/3,n)(2/3,n) / (n!)^2
    b_seq:      B_n   = (a,n)(b,n) / ((a+b+1,n) n!)
    b_star_seq: B*_n  = (1/3,n)(2/3,n) / ((2,n) n!)

    All are generated by stable term-ratio recurrences; ``term_ratio`` is
    the generic x-weighted step used by the power series itself.
    """

    a: float
    b: float

    def term_ratio(self, c: float, n: int, x: float) -> float:
        return (self.a + n) * (self.b + n) / ((c + n) * (n + 1.0)) * x

    def _ratio_seq(self, c: float, n_max: int) -> list[float]:
        out = [1.0]
        t = 1.0
        for n in range(n_max):
            t *= (self.a + n) * (self.b + n) / ((c + n) * (n + 1.0))
            out.append(t)
        return out

    def a_seq(self, n_max: int) -> list[float]:
        return self._ratio_seq(self.a + self.b, n_max)

    def b_seq(self, n_max: int) -> list[float]:
        return self._ratio_seq(self.a + self.b + 1.0, n_max)

    @staticmethod
    def _star_seq(c: float, n_max: int) -> list[float]:
        out = [1.0]
        t = 1.0
        for n in range(n_max):
            t *= (1.0 / 3.0 + n) * (2.0 / 3.0 + n) / ((c + n) * (n + 1.0))
            out.append(t)
        return out

    def a_star_seq(self, n_max: int) -> list[float]:
        return self._star_seq(1.0, n_max)

    def b_star_seq(self, n_max: int) -> list[float]:
        return self._star_seq(2.0, n_max)
