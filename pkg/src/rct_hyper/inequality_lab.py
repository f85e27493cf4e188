"""Grid verification of the inequality and monotonicity claim catalog.

Claims are identified by the ids

    T2.1    one-sided comparison of F(y(r)) vs (1+2r) F(r^3), direction set
            by region (D1 vs D3); on D2/D4 the claim is that neither
            direction holds throughout, so the scanner hunts for both
            margin signs
    T2.2    the double bound 1 <= (1+2r)F(r^3)/F(y(r)) <= sqrt(3)B/(2pi)
            on D1, reversed on D3
    C2.3    the open two-sided envelope between (B*/B)F(r^3) and 3F(r^3)
    T2.4    0 <= (1+2r)F(r^3)-F(y(r)) <= 2(R-log27)/B on D5, mirrored on D6
    T2.5.1..T2.5.4   the same statements transported to x=(1-r)/(1+2r)
    L3.1f   monotonicity pattern of f(r)=F(r)/F*(r)
    L3.1g   monotonicity pattern of g(r)=G(r)/G*(r) on D5/D6
    L3.2J   monotonicity of J(r)=(1+2r^(1/3))F(r)-F(z(r)) on D5/D6

Margins are signed with negative meaning violation; a claim "holds" when
the worst margin stays above -tol.  All grids are evaluated point by point
with no shared state, so concurrent evaluation with ordered aggregation
would give identical results.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import DomainError, MixedTrendError, TurningPointNotFound
from .hypergeometric import HypParams, hyp2f1_one_minus
from .rct_transforms import cbrt
from .regions import RegionLabel, classify, defining_values
from .special_core import LN_27, Params, beta, r_constant

__all__ = [
    "CLAIM_IDS",
    "MARGIN_TOL",
    "ScanReport",
    "ScanRow",
    "TurningPoint",
    "Trend",
    "quotient_f",
    "quotient_g",
    "j_function",
    "default_grid",
    "dense_grid",
    "monotonicity_grid",
    "turning_scan_grid",
    "verify_theorem",
    "region_expectation",
    "find_turning_point",
    "sequence_trend",
    "trend_of_values",
    "coefficient_quotient",
    "sample_region",
    "linspace",
    "iter_scan",
]

MARGIN_TOL = 1e-9

CLAIM_IDS = (
    "T2.1", "T2.2", "C2.3", "T2.4",
    "T2.5.1", "T2.5.2", "T2.5.3", "T2.5.4",
    "L3.1f", "L3.1g", "L3.2J",
)

_F_STAR = HypParams(1.0 / 3.0, 2.0 / 3.0, 1.0)
_G_STAR = HypParams(1.0 / 3.0, 2.0 / 3.0, 2.0)

_BETA_STAR = 2.0 * math.sqrt(3.0) * math.pi / 3.0  # B(1/3,2/3)


class Trend:
    INCREASING = "increasing"
    DECREASING = "decreasing"
    UP_THEN_DOWN = "up_then_down"
    DOWN_THEN_UP = "down_then_up"
    CONSTANT = "constant"


@dataclass(frozen=True)
class ScanReport:
    """Outcome of one claim scanned over one grid at one parameter point.

    both_signs is set only for the T2.1 falsification hunt on D2/D4: True
    means margins of both signs were found (the "neither direction holds"
    situation), after a denser rescan if the first grid showed only one.
    """

    params: Params
    region: RegionLabel
    claim_id: str
    holds: bool
    worst_r: float
    worst_margin: float
    n_samples: int
    both_signs: bool | None = None


@dataclass(frozen=True)
class TurningPoint:
    r0: float
    bracket: tuple[float, float]
    kind: str  # "max" or "min"
    derivative_residual: float


@dataclass(frozen=True)
class ScanRow:
    a: float
    b: float
    report: ScanReport
    region_consistent: bool | None


# ---------------------------------------------------------------------------
# basic evaluations


def _zb(p: Params, one_minus: float) -> float:
    """F(a,b;a+b;1-w) for the zero-balanced pair of p."""
    return hyp2f1_one_minus(HypParams(p.a, p.b, p.a + p.b), one_minus).value


def _g_of(p: Params, one_minus: float) -> float:
    """F(a,b;a+b+1;1-w)."""
    return hyp2f1_one_minus(HypParams(p.a, p.b, p.a + p.b + 1.0), one_minus).value


def _check_r(r: float) -> float:
    r = float(r)
    if not (math.isfinite(r) and 0.0 < r < 1.0):
        raise DomainError(f"r must lie in (0,1), got {r!r}")
    return r


def quotient_f(p: Params, r: float) -> float:
    """f(r) = F(a,b;a+b;r) / F(1/3,2/3;1;r)."""
    r = _check_r(r)
    w = 1.0 - r
    return _zb(p, w) / hyp2f1_one_minus(_F_STAR, w).value


def quotient_g(p: Params, r: float) -> float:
    """g(r) = F(a,b;a+b+1;r) / F(1/3,2/3;2;r)."""
    r = _check_r(r)
    w = 1.0 - r
    return _g_of(p, w) / hyp2f1_one_minus(_G_STAR, w).value


def j_function(p: Params, r: float) -> float:
    """J(r) = (1+2s) F(r) - F(z) with s = r^(1/3), z = y(s)."""
    r = _check_r(r)
    s = cbrt(r)
    # 1-s = (1-r)/(1+s+s^2) keeps full relative precision as r -> 1
    one_minus_s = (1.0 - r) / (1.0 + s + s * s)
    q = one_minus_s / (1.0 + 2.0 * s)
    return (1.0 + 2.0 * s) * _zb(p, 1.0 - r) - _zb(p, q * q * q)


def _pair_y_x(p: Params, r: float) -> tuple[float, float]:
    """(F(y(r)), F(r^3)) with cancellation-safe arguments."""
    q = (1.0 - r) / (1.0 + 2.0 * r)
    f_y = _zb(p, q * q * q)
    f_x = _zb(p, (1.0 - r) * (1.0 + r + r * r))
    return f_y, f_x


# ---------------------------------------------------------------------------
# grids


def default_grid(nr: int = 200) -> list[float]:
    """{k/nr : k=1..nr-1} plus the near-unit ladder {1-10^-k : k=3..6}."""
    nr = int(nr)
    if nr < 2:
        raise DomainError("nr must be >= 2")
    pts = {k / nr for k in range(1, nr)}
    pts.update(1.0 - 10.0 ** (-k) for k in range(3, 7))
    return sorted(pts)


def dense_grid(n: int = 2000) -> list[float]:
    """Rescan grid: uniform core plus geometric ladders towards 0 and 1."""
    n_side = max(n // 10, 8)
    n_core = n - 2 * n_side
    pts = {k / (n_core + 1) for k in range(1, n_core + 1)}
    for k in range(n_side):
        e = 6.0 - 4.5 * k / (n_side - 1)  # exponents 6 .. 1.5
        pts.add(10.0 ** (-e))
        pts.add(1.0 - 10.0 ** (-e - 1.0))  # 1-10^-7 .. 1-10^-2.5
    return sorted(pts)


def monotonicity_grid(n: int = 200) -> list[float]:
    """n-point grid for empirical shape detection: geometric near both ends."""
    n_side = n // 5
    n_core = n - 2 * n_side
    pts = set()
    for k in range(n_side):
        e = 5.0 - 3.5 * k / (n_side - 1)  # 1e-5 .. ~0.03
        pts.add(10.0 ** (-e))
        pts.add(1.0 - 10.0 ** (-e - 1.0))
    for k in range(1, n_core + 1):
        pts.add(0.04 + (0.96 - 0.04) * k / (n_core + 1))
    return sorted(pts)


def turning_scan_grid(dense: bool = False) -> list[float]:
    k = 2000 if dense else 400
    pts = {i / k for i in range(1, k)}
    j_hi = 33 if dense else 25
    pts.update(10.0 ** (-j / 2.0) for j in range(4, 13))
    pts.update(1.0 - 10.0 ** (-j / 4.0) for j in range(9, j_hi))
    return sorted(pts)


def linspace(lo: float, hi: float, n: int) -> list[float]:
    n = int(n)
    if n < 1:
        raise DomainError("grid size must be >= 1")
    if n == 1:
        return [float(lo)]
    step = (hi - lo) / (n - 1)
    return [lo + i * step for i in range(n)]


# ---------------------------------------------------------------------------
# claim margins


def _t21_orientation(label: RegionLabel) -> float:
    # +1 tests F(y) <= (1+2r)F(r^3); -1 the reverse.  D2 points violate the
    # +1 direction at small r, D4 points the -1 direction, so those
    # orientations guarantee the expected holds=False rows.
    if label.in_d1 or label.in_d2:
        return 1.0
    return -1.0


def _margins_t21(p: Params, label: RegionLabel, grid: Sequence[float]) -> list[tuple[float, float]]:
    sign = _t21_orientation(label)
    out = []
    for r in grid:
        f_y, f_x = _pair_y_x(p, r)
        out.append((r, sign * ((1.0 + 2.0 * r) * f_x - f_y)))
    return out


def _margins_t22(p: Params, label: RegionLabel, grid: Sequence[float]) -> list[tuple[float, float]]:
    bound = math.sqrt(3.0) * beta(p) / (2.0 * math.pi)
    d3_form = label.in_d3 and not label.in_d1
    out = []
    for r in grid:
        f_y, f_x = _pair_y_x(p, r)
        ratio = (1.0 + 2.0 * r) * f_x / f_y
        if d3_form:
            m = min(ratio - bound, 1.0 - ratio)
        else:
            m = min(ratio - 1.0, bound - ratio)
        out.append((r, m))
    return out


def _margins_c23(p: Params, label: RegionLabel, grid: Sequence[float]) -> list[tuple[float, float]]:
    ratio_star = _BETA_STAR / beta(p)
    d3_form = label.in_d3 and not label.in_d1
    out = []
    for r in grid:
        f_y, f_x = _pair_y_x(p, r)
        if d3_form:
            m = min(f_y - f_x, 3.0 * ratio_star * f_x - f_y)
        else:
            m = min(f_y - ratio_star * f_x, 3.0 * f_x - f_y)
        out.append((r, m))
    return out


def _margins_t24(p: Params, label: RegionLabel, grid: Sequence[float]) -> list[tuple[float, float]]:
    gap = 2.0 * (r_constant(p) - LN_27) / beta(p)
    d6_form = label.in_d6 and not label.in_d5
    out = []
    for r in grid:
        f_y, f_x = _pair_y_x(p, r)
        jv = (1.0 + 2.0 * r) * f_x - f_y
        if d6_form:
            m = min(-jv, -gap + jv)  # 0 <= -J <= 2(log27-R)/B
        else:
            m = min(jv, gap - jv)
        out.append((r, m))
    return out


def _margins_t25(claim_id: str, p: Params, grid: Sequence[float]) -> list[tuple[float, float]]:
    bp = beta(p)
    bound = math.sqrt(3.0) * bp / (6.0 * math.pi)
    gap = 2.0 * (r_constant(p) - LN_27) / bp
    out = []
    for x in grid:
        one_plus = 1.0 + 2.0 * x
        f_w3 = _zb(p, 9.0 * x * (1.0 + x + x * x) / one_plus ** 3)  # 1-w^3 = y(x)
        f_1x3 = _zb(p, x ** 3)
        if claim_id == "T2.5.1":
            ratio = f_w3 / (one_plus * f_1x3)
            m = min(ratio - 1.0 / 3.0, bound - ratio)
        elif claim_id == "T2.5.2":
            ratio = f_w3 / (one_plus * f_1x3)
            m = min(ratio - bound, 1.0 / 3.0 - ratio)
        elif claim_id == "T2.5.3":
            excess = 3.0 * f_w3 - one_plus * f_1x3
            m = min(excess, one_plus * gap - excess)
        else:  # T2.5.4
            deficit = one_plus * f_1x3 - 3.0 * f_w3
            m = min(deficit, -one_plus * gap - deficit)
        out.append((x, m))
    return out


def _step_margins(grid: Sequence[float], values: Sequence[float], trend: str) -> list[tuple[float, float]]:
    """Per-step margins for a claimed shape; worst_r is the right endpoint."""
    steps = [(grid[i + 1], values[i + 1] - values[i]) for i in range(len(grid) - 1)]
    if trend == Trend.INCREASING:
        return [(r, d) for r, d in steps]
    if trend == Trend.DECREASING:
        return [(r, -d) for r, d in steps]
    diffs = [d for _, d in steps]
    if trend == Trend.UP_THEN_DOWN:
        split = max(range(len(values)), key=lambda i: values[i])
    else:  # DOWN_THEN_UP
        split = min(range(len(values)), key=lambda i: values[i])
    out = []
    for i, (r, d) in enumerate(steps):
        rising_leg = i < split
        if trend == Trend.UP_THEN_DOWN:
            out.append((r, d if rising_leg else -d))
        else:
            out.append((r, -d if rising_leg else d))
    return out


def _expected_shape(claim_id: str, label: RegionLabel) -> str:
    if claim_id == "L3.1f":
        if label.in_d1:
            return Trend.DECREASING
        if label.in_d3:
            return Trend.INCREASING
        if label.in_d2:
            return Trend.UP_THEN_DOWN
        return Trend.DOWN_THEN_UP
    if claim_id == "L3.1g":
        return Trend.DECREASING if (label.in_d5 or not label.in_d6) else Trend.INCREASING
    # L3.2J
    return Trend.INCREASING if (label.in_d5 or not label.in_d6) else Trend.DECREASING


def _margins_shape(claim_id: str, p: Params, label: RegionLabel,
                   grid: Sequence[float]) -> list[tuple[float, float]]:
    if claim_id == "L3.1f":
        values = [quotient_f(p, r) for r in grid]
    elif claim_id == "L3.1g":
        values = [quotient_g(p, r) for r in grid]
    else:
        values = [j_function(p, r) for r in grid]
    return _step_margins(grid, values, _expected_shape(claim_id, label))


def _claim_margins(claim_id: str, p: Params, label: RegionLabel,
                   grid: Sequence[float]) -> list[tuple[float, float]]:
    if claim_id == "T2.1":
        return _margins_t21(p, label, grid)
    if claim_id == "T2.2":
        return _margins_t22(p, label, grid)
    if claim_id == "C2.3":
        return _margins_c23(p, label, grid)
    if claim_id == "T2.4":
        return _margins_t24(p, label, grid)
    if claim_id.startswith("T2.5"):
        return _margins_t25(claim_id, p, grid)
    return _margins_shape(claim_id, p, label, grid)


def region_expectation(claim_id: str, label: RegionLabel) -> bool | None:
    """Expected holds-status on this region; None where the claim is silent."""
    if claim_id == "T2.1":
        if label.in_d1 or label.in_d3:
            return True
        return False
    if claim_id in ("T2.2", "C2.3"):
        return True if (label.in_d1 or label.in_d3) else None
    if claim_id == "T2.4":
        return True if (label.in_d5 or label.in_d6) else None
    if claim_id == "T2.5.1":
        return True if label.in_d1 else None
    if claim_id == "T2.5.2":
        return True if label.in_d3 else None
    if claim_id == "T2.5.3":
        return True if label.in_d5 else None
    if claim_id == "T2.5.4":
        return True if label.in_d6 else None
    if claim_id == "L3.1f":
        return True
    # L3.1g / L3.2J
    return True if (label.in_d5 or label.in_d6) else None


def _worst(margins: Iterable[tuple[float, float]]) -> tuple[float, float]:
    worst_r, worst_m = None, math.inf
    for r, m in margins:
        if m < worst_m:  # strict: ties keep the smaller r (grids are ascending)
            worst_r, worst_m = r, m
    if worst_r is None:
        raise DomainError("empty margin list")
    return worst_r, worst_m


def verify_theorem(claim_id: str, p: Params, r_grid: Sequence[float] | None = None,
                   tol: float = MARGIN_TOL) -> ScanReport:
    """Scan one claim over a grid and report the worst signed margin.

    For T2.1 on D2/D4 the report additionally hunts for margins of both
    signs (the falsification of both one-sided inequalities); if the first
    grid shows one sign only, a denser 2000-point grid with geometric tails
    is scanned before reporting.
    """
    if claim_id not in CLAIM_IDS:
        raise DomainError(f"unknown claim id {claim_id!r}")
    label = classify(p)
    grid = sorted(float(r) for r in r_grid) if r_grid is not None else default_grid()
    if not grid:
        raise DomainError("grid must not be empty")
    margins = _claim_margins(claim_id, p, label, grid)
    n_used = len(grid)
    both: bool | None = None
    if claim_id == "T2.1" and not (label.in_d1 or label.in_d3):
        both = any(m > tol for _, m in margins) and any(m < -tol for _, m in margins)
        if not both:
            extra = [r for r in dense_grid() if r not in set(grid)]
            margins = margins + _claim_margins(claim_id, p, label, extra)
            n_used += len(extra)
            both = any(m > tol for _, m in margins) and any(m < -tol for _, m in margins)
    worst_r, worst_m = _worst(margins)
    return ScanReport(params=p, region=label, claim_id=claim_id,
                      holds=worst_m >= -tol, worst_r=worst_r, worst_margin=worst_m,
                      n_samples=n_used, both_signs=both)


# ---------------------------------------------------------------------------
# turning points


def _fd_sign(quot: Callable[[float], float], r: float, h_cap: float = 1e-4) -> float:
    h = min(h_cap, 0.5 * r, 0.5 * (1.0 - r))
    return quot(r + h) - quot(r - h)


def find_turning_point(p: Params, which: str = "f", *,
                       grid: Sequence[float] | None = None,
                       values: Sequence[float] | None = None,
                       rescan: bool = True) -> TurningPoint:
    """Locate the interior extremum of f(r)=F/F* (or g) by derivative sign.

    Scans for an interior grid point strictly above (max) or below (min)
    both ends, then bisects the central-difference sign down to a bracket
    of width 1e-6.  When the first grid shows no extremum and rescan is
    on, one denser pass with deeper geometric tails is tried.  Raises
    TurningPointNotFound when the quotient is monotone at scan
    resolution, which is the expected outcome on D1/D3 for f and on
    D5/D6 for g.
    """
    if which == "f":
        quot: Callable[[float], float] = lambda r: quotient_f(p, r)
    elif which == "g":
        quot = lambda r: quotient_g(p, r)
    else:
        raise DomainError(f"which must be 'f' or 'g', got {which!r}")

    if values is not None and grid is None:
        raise DomainError("values requires the matching grid")

    if grid is None:
        scan = turning_scan_grid()
        vals = [quot(r) for r in scan]
    elif values is None:
        scan = sorted(float(r) for r in grid)
        vals = [quot(r) for r in scan]
    else:
        if len(values) != len(grid):
            raise DomainError("values and grid must have equal length")
        pairs = sorted(zip((float(r) for r in grid), values))
        scan = [r for r, _ in pairs]
        vals = [v for _, v in pairs]

    for attempt in range(2):
        cand = _interior_extremum(scan, vals)
        if cand is not None:
            kind, i = cand
            return _refine_extremum(quot, scan, vals, i, kind)
        if attempt == 0 and rescan:
            scan = turning_scan_grid(dense=True)
            vals = [quot(r) for r in scan]
        else:
            break
    raise TurningPointNotFound(
        f"no interior extremum of quotient_{which} at (a,b)=({p.a!r},{p.b!r}) "
        f"down to scan resolution; the quotient is monotone there")


def _interior_extremum(grid: Sequence[float], vals: Sequence[float]) -> tuple[str, int] | None:
    n = len(vals)
    if n < 3:
        return None
    noise = 1e-11 * max(1.0, max(abs(v) for v in vals))
    imax = max(range(n), key=lambda i: vals[i])
    imin = min(range(n), key=lambda i: vals[i])
    cands = []
    if 0 < imax < n - 1 and vals[imax] > max(vals[0], vals[-1]) + noise:
        cands.append(("max", imax, vals[imax] - max(vals[0], vals[-1])))
    if 0 < imin < n - 1 and vals[imin] < min(vals[0], vals[-1]) - noise:
        cands.append(("min", imin, min(vals[0], vals[-1]) - vals[imin]))
    if not cands:
        return None
    kind, i, _ = max(cands, key=lambda c: c[2])
    return kind, i


def _refine_extremum(quot: Callable[[float], float], grid: Sequence[float],
                     vals: Sequence[float], i: int, kind: str) -> TurningPoint:
    lo, hi = grid[i - 1], grid[i + 1]
    sign_lo = 1.0 if kind == "max" else -1.0  # discrete slope into the extremum
    while hi - lo > 1e-6:
        mid = 0.5 * (lo + hi)
        d = _fd_sign(quot, mid)
        if (d > 0.0) == (sign_lo > 0.0):
            lo = mid
        else:
            hi = mid
    r0 = 0.5 * (lo + hi)
    h = min(1e-4, 0.5 * r0, 0.5 * (1.0 - r0))
    residual = abs(quot(r0 + h) - quot(r0 - h)) / (2.0 * h)
    return TurningPoint(r0=r0, bracket=(lo, hi), kind=kind, derivative_residual=residual)


# ---------------------------------------------------------------------------
# sequence trends


def _collapse_moves(vals: Sequence[float], slack: float) -> list[int]:
    moves: list[int] = []
    for i in range(len(vals) - 1):
        d = vals[i + 1] - vals[i]
        if d > slack:
            s = 1
        elif d < -slack:
            s = -1
        else:
            continue
        if not moves or moves[-1] != s:
            moves.append(s)
    return moves


def _pattern(moves: list[int]) -> str:
    if not moves:
        return Trend.CONSTANT
    if moves == [1]:
        return Trend.INCREASING
    if moves == [-1]:
        return Trend.DECREASING
    if moves == [1, -1]:
        return Trend.UP_THEN_DOWN
    if moves == [-1, 1]:
        return Trend.DOWN_THEN_UP
    raise MixedTrendError(f"more than one trend reversal: move pattern {moves}")


def sequence_trend(seq: Sequence[float] | Callable[[int], float], n_max: int) -> str:
    """Classify seq(0..n_max) by strict comparisons into one of the five
    shapes; raises MixedTrendError beyond a single reversal."""
    n_max = int(n_max)
    if n_max < 2:
        raise DomainError("n_max must be >= 2")
    if callable(seq):
        vals = [float(seq(n)) for n in range(n_max + 1)]
    else:
        vals = [float(seq[n]) for n in range(n_max + 1)]
    return _pattern(_collapse_moves(vals, 0.0))


def trend_of_values(values: Sequence[float], slack: float = 0.0) -> str:
    """Shape of an observed value sequence, ignoring sub-slack wiggles."""
    return _pattern(_collapse_moves(list(values), slack))


def coefficient_quotient(p: Params, n_max: int, which: str = "f") -> list[float]:
    """A_n/A*_n (which='f') or B_n/B*_n (which='g') for n = 0..n_max."""
    n_max = int(n_max)
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    if which not in ("f", "g"):
        raise DomainError(f"which must be 'f' or 'g', got {which!r}")
    shift = 0.0 if which == "f" else 1.0
    out = [1.0]
    c = 1.0
    for n in range(n_max):
        # identical association on both sides keeps the quotient exactly
        # constant at the parameter point where the families coincide
        num = (1.0 + shift + n) * ((p.a + n) * (p.b + n))
        den = (p.a + p.b + shift + n) * ((1.0 / 3.0 + n) * (2.0 / 3.0 + n))
        c *= num / den
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# sampling and scanning


_REGION_BOXES = {
    "D1": (0.02, 3.0),
    "D2": (0.33, 0.68),
    "D3": (0.02, 3.0),
    "D4": (0.02, 3.0),
    "D5": (0.02, 0.98),
    "D6": (0.02, 3.0),
}


def _region_predicate(region: str, clearance: float) -> Callable[[Params], bool]:
    c = clearance

    def pred(p: Params) -> bool:
        u, h, t = defining_values(p)
        if region == "D1":
            return u <= -c and h <= -c
        if region == "D2":
            return u <= -c and h >= c
        if region == "D3":
            return u >= c and h >= c
        if region == "D4":
            return u >= c and h <= -c
        if region == "D5":
            return t <= -c and h <= -c
        return t >= c and h >= c

    return pred


def sample_region(region: str, n: int, *, seed: int, clearance: float = 1e-3,
                  box: tuple[float, float] | None = None) -> list[Params]:
    """n interior points of a region by seeded rejection sampling.

    clearance keeps every defining expression at least that far from zero,
    so samples are bounded away from the region boundaries (where the
    strict claims degenerate and finite grids cannot resolve them).
    """
    if region not in _REGION_BOXES:
        raise DomainError(f"unknown region {region!r}")
    lo, hi = box if box is not None else _REGION_BOXES[region]
    pred = _region_predicate(region, clearance)
    rng = random.Random(seed)
    out: list[Params] = []
    attempts = 0
    cap = 2_000_000 + 200_000 * n
    while len(out) < n:
        attempts += 1
        if attempts > cap:
            raise RuntimeError(f"rejection sampling for {region} did not finish "
                               f"in {cap} draws (box {lo}..{hi}, clearance {clearance})")
        p = Params(rng.uniform(lo, hi), rng.uniform(lo, hi))
        if pred(p):
            out.append(p)
    return out


def iter_scan(claim_id: str, a_values: Sequence[float], b_values: Sequence[float],
              r_grid: Sequence[float] | None = None, tol: float = MARGIN_TOL) -> Iterator[ScanRow]:
    """One ScanRow per (a,b), ordered lexicographically by grid index."""
    grid = sorted(float(r) for r in r_grid) if r_grid is not None else default_grid()
    for a in a_values:
        for b in b_values:
            p = Params(a, b)
            report = verify_theorem(claim_id, p, grid, tol=tol)
            expected = region_expectation(claim_id, report.region)
            consistent = None if expected is None else (report.holds == expected)
            yield ScanRow(a=p.a, b=p.b, report=report, region_consistent=consistent)
