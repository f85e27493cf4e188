"""Cubic and quadratic argument transformations and their identity checks.

The degree-3 transformation relates F(1/3,2/3;1;.) at r^3 and at
y(r) = 9r(1+r+r^2)/(1+2r)^3 = 1 - ((1-r)/(1+2r))^3; the degree-2 (Landen)
identities do the same for F(1/2,1/2;1;.).  Each ``verify_*`` function
evaluates both sides of one exact identity over a grid and returns the
worst relative residual, which is the numerical contract being tested.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .hypergeometric import HypParams, hyp2f1_one_minus

__all__ = [
    "CubicMap",
    "VerifyResult",
    "cbrt",
    "cubic_map",
    "cubic_forward",
    "uniform_grid",
    "verify_rct1",
    "verify_rct2",
    "verify_landen",
    "verify_differentiated_rct",
    "run_verification",
    "RCT_CONTRACT",
    "LANDEN_CONTRACT",
    "DRCT_CONTRACT",
    "VERIFY_CONTRACTS",
]

RCT_CONTRACT = 1e-10
LANDEN_CONTRACT = 1e-10
DRCT_CONTRACT = 1e-9

_F_STAR = HypParams(1.0 / 3.0, 2.0 / 3.0, 1.0)
_G_STAR = HypParams(1.0 / 3.0, 2.0 / 3.0, 2.0)
_K_HALF = HypParams(0.5, 0.5, 1.0)


def cbrt(x: float) -> float:
    """Real cube root for x >= 0, exact to 1 ulp (pow plus one Newton step)."""
    if x == 0.0:
        return 0.0
    if x < 0.0 or not math.isfinite(x):
        raise DomainError(f"cbrt expects a finite x >= 0, got {x!r}")
    s = x ** (1.0 / 3.0)
    return s - (s * s * s - x) / (3.0 * s * s)


def _check_open_unit(name: str, r: float) -> float:
    r = float(r)
    if not (math.isfinite(r) and 0.0 < r < 1.0):
        raise DomainError(f"{name} must lie in (0,1), got {r!r}")
    return r


@dataclass(frozen=True)
class CubicMap:
    """All argument maps of the cubic transformation at one r.

    one_minus_y and one_minus_z are carried explicitly because y and z
    approach 1 like (1-r)^3 and evaluating F there needs 1-argument to full
    relative precision.
    """

    r: float
    x_of_r: float
    y_of_r: float
    one_minus_y: float
    z_of_r: float
    one_minus_z: float


def _y_parts(r: float) -> tuple[float, float]:
    """(y(r), 1-y(r)) with the cancellation-safe branch choice."""
    q = (1.0 - r) / (1.0 + 2.0 * r)
    one_minus_y = q * q * q
    if r > 0.9:
        y = 1.0 - one_minus_y
    else:
        y = 9.0 * r * (1.0 + r + r * r) / (1.0 + 2.0 * r) ** 3
    return y, one_minus_y


def cubic_map(r: float) -> CubicMap:
    r = _check_open_unit("r", r)
    y, one_minus_y = _y_parts(r)
    s = cbrt(r)
    # 1-s = (1-r)/(1+s+s^2), full relative precision as r -> 1
    q = (1.0 - r) / ((1.0 + s + s * s) * (1.0 + 2.0 * s))
    one_minus_z = q * q * q
    z = 1.0 - one_minus_z if s > 0.9 else 9.0 * s * (1.0 + s + s * s) / (1.0 + 2.0 * s) ** 3
    return CubicMap(r=r, x_of_r=r ** 3, y_of_r=y, one_minus_y=one_minus_y,
                    z_of_r=z, one_minus_z=one_minus_z)


def cubic_forward(r: float) -> float:
    """y(r) = 9r(1+r+r^2)/(1+2r)^3, via 1-((1-r)/(1+2r))^3 when r > 0.9."""
    r = _check_open_unit("r", r)
    return _y_parts(r)[0]


def uniform_grid(n: int) -> list[float]:
    """{k/(n+1) : k = 1..n}, the canonical interior grid of size n."""
    n = int(n)
    if n < 2:
        raise DomainError("grid size must be >= 2")
    step = 1.0 / (n + 1)
    return [k * step for k in range(1, n + 1)]


@dataclass(frozen=True)
class VerifyResult:
    """Worst relative residual of an identity across a grid."""

    name: str
    max_residual: float
    worst_r: float
    n_points: int
    contract: float

    @property
    def within_contract(self) -> bool:
        return self.max_residual <= self.contract


def _collect(name: str, contract: float, grid: list[float], residual) -> VerifyResult:
    worst = -1.0
    worst_r = float("nan")
    count = 0
    for r in grid:
        r = _check_open_unit("grid point", r)
        res = residual(r)
        count += 1
        if res > worst:
            worst = res
            worst_r = r
    if count == 0:
        raise DomainError("grid must contain at least one point")
    return VerifyResult(name=name, max_residual=worst, worst_r=worst_r,
                        n_points=count, contract=contract)


def _f_star_one_minus(w: float) -> float:
    return hyp2f1_one_minus(_F_STAR, w).value


def _g_star_one_minus(w: float) -> float:
    return hyp2f1_one_minus(_G_STAR, w).value


def verify_rct1(r_grid: list[float]) -> VerifyResult:
    """Residuals of F*(y(r)) = (1+2r) F*(r^3)."""

    def residual(r: float) -> float:
        _, one_minus_y = _y_parts(r)
        lhs = _f_star_one_minus(one_minus_y)
        rhs = (1.0 + 2.0 * r) * _f_star_one_minus((1.0 - r) * (1.0 + r + r * r))
        return abs(lhs - rhs) / rhs

    return _collect("rct1", RCT_CONTRACT, list(r_grid), residual)


def verify_rct2(r_grid: list[float]) -> VerifyResult:
    """Residuals of F*(((1-r)/(1+2r))^3) = ((1+2r)/3) F*(1-r^3)."""

    def residual(r: float) -> float:
        y, _ = _y_parts(r)
        lhs = _f_star_one_minus(y)  # 1 - q^3 = y(r)
        rhs = (1.0 + 2.0 * r) / 3.0 * _f_star_one_minus(r ** 3)
        return abs(lhs - rhs) / rhs

    return _collect("rct2", RCT_CONTRACT, list(r_grid), residual)


def verify_landen(r_grid: list[float], which: int) -> VerifyResult:
    """Residuals of the degree-2 identities at (1/2,1/2;1).

    which=1: F(4r/(1+r)^2) = (1+r) F(r^2)
    which=2: F(((1-r)/(1+r))^2) = ((1+r)/2) F(1-r^2)
    """
    if which not in (1, 2):
        raise DomainError(f"which must be 1 or 2, got {which!r}")

    def residual1(r: float) -> float:
        q = (1.0 - r) / (1.0 + r)
        lhs = hyp2f1_one_minus(_K_HALF, q * q).value
        rhs = (1.0 + r) * hyp2f1_one_minus(_K_HALF, (1.0 - r) * (1.0 + r)).value
        return abs(lhs - rhs) / rhs

    def residual2(r: float) -> float:
        u = 4.0 * r / (1.0 + r) ** 2  # 1 - ((1-r)/(1+r))^2
        lhs = hyp2f1_one_minus(_K_HALF, u).value
        rhs = (1.0 + r) / 2.0 * hyp2f1_one_minus(_K_HALF, r * r).value
        return abs(lhs - rhs) / rhs

    name = f"landen{which}"
    return _collect(name, LANDEN_CONTRACT, list(r_grid),
                    residual1 if which == 1 else residual2)


def verify_differentiated_rct(r_grid: list[float]) -> VerifyResult:
    """Residuals of the derivative of the cubic transformation.

    With s = r^(1/3) and z = y(s):

        (2/3) G*(z)/(1+2s) = (2/3)(1-s) F*(r)
                             + (2/9) s^2 (1+2s)/(1+s+s^2) G*(r)

    The last factor is the stable form of s^2(1+2s)(1-s)/(1-r); note the
    (1-s) in the numerator, which the differentiation produces.
    """

    def residual(r: float) -> float:
        s = cbrt(r)
        one_minus_s = (1.0 - r) / (1.0 + s + s * s)
        q = one_minus_s / (1.0 + 2.0 * s)
        g_z = _g_star_one_minus(q * q * q)
        f_r = _f_star_one_minus(1.0 - r)
        g_r = _g_star_one_minus(1.0 - r)
        lhs = (2.0 / 3.0) * g_z / (1.0 + 2.0 * s)
        rhs = (2.0 / 3.0) * one_minus_s * f_r \
            + (2.0 / 9.0) * s * s * (1.0 + 2.0 * s) / (1.0 + s + s * s) * g_r
        return abs(lhs - rhs) / abs(rhs)

    return _collect("drct", DRCT_CONTRACT, list(r_grid), residual)


VERIFY_CONTRACTS = {
    "rct1": RCT_CONTRACT,
    "rct2": RCT_CONTRACT,
    "landen1": LANDEN_CONTRACT,
    "landen2": LANDEN_CONTRACT,
    "drct": DRCT_CONTRACT,
}


def run_verification(name: str, r_grid: list[float]) -> VerifyResult:
    """Dispatch one named identity check over a grid."""
    if name == "rct1":
        return verify_rct1(r_grid)
    if name == "rct2":
        return verify_rct2(r_grid)
    if name == "landen1":
        return verify_landen(r_grid, 1)
    if name == "landen2":
        return verify_landen(r_grid, 2)
    if name == "drct":
        return verify_differentiated_rct(r_grid)
    raise DomainError(f"unknown identity name {name!r}")
