"""Parameter-plane regions D1..D6 and the sign sequences that drive them.

The regions partition {a,b>0} by the signs of ab - 2/9 and
ab - (2/9)(a+b); D5 and D6 are the sub-regions (of D1 and D3 resp.) cut
out by a+b vs 1.  Membership uses the raw binary64 signs of those defining
expressions; an optional eps widens every boundary symmetrically so that
near-boundary points acquire both closures (useful in sweeps).

h_sequence / h_star_sequence are the affine-in-n quantities whose signs
decide whether the coefficient quotients A_n/A*_n and B_n/B*_n rise or
fall at step n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError
from .special_core import Params

__all__ = [
    "RegionLabel",
    "classify",
    "defining_values",
    "h_sequence",
    "h_star_sequence",
]

_TWO_NINTHS = 2.0 / 9.0


@dataclass(frozen=True)
class RegionLabel:
    """Membership flags; closed regions may overlap on shared boundaries."""

    in_d1: bool
    in_d2: bool
    in_d3: bool
    in_d4: bool
    in_d5: bool
    in_d6: bool
    is_equality_point: bool

    def labels(self) -> tuple[str, ...]:
        out = []
        for name, flag in (("D1", self.in_d1), ("D2", self.in_d2), ("D3", self.in_d3),
                           ("D4", self.in_d4), ("D5", self.in_d5), ("D6", self.in_d6)):
            if flag:
                out.append(name)
        return tuple(out)


def defining_values(p: Params) -> tuple[float, float, float]:
    """(ab - 2/9, ab - (2/9)(a+b), a+b - 1) as computed in binary64."""
    ab = p.a * p.b
    s = p.a + p.b
    return ab - _TWO_NINTHS, ab - _TWO_NINTHS * s, s - 1.0


def classify(p: Params, eps: float = 0.0) -> RegionLabel:
    """Region membership of (a, b).

    With eps=0 the comparisons are the exact float signs of the defining
    expressions.  At the two parameter points where both ab-2/9 and
    ab-(2/9)(a+b) vanish (the floats nearest 1/3 and 2/3 do land on exact
    zeros) the closed regions D1 and D3 both apply and the point is marked
    as the equality point.
    """
    eps = float(eps)
    if not (math.isfinite(eps) and eps >= 0.0):
        raise DomainError(f"eps must be a finite value >= 0, got {eps!r}")
    u, h, t = defining_values(p)
    return RegionLabel(
        in_d1=(u <= eps) and (h <= eps),
        in_d2=(u < eps) and (h > -eps),
        in_d3=(u >= -eps) and (h >= -eps),
        in_d4=(u > -eps) and (h < eps),
        in_d5=(t <= eps) and (h <= eps),
        in_d6=(t >= -eps) and (h >= -eps),
        is_equality_point=(u == 0.0) and (h == 0.0),
    )


def h_sequence(p: Params, n: int) -> float:
    """H_n = (ab - 2/9) n + ab - (2/9)(a+b)."""
    n = int(n)
    if n < 0:
        raise DomainError("n must be >= 0")
    ab = p.a * p.b
    return (ab - _TWO_NINTHS) * n + ab - _TWO_NINTHS * (p.a + p.b)


def h_star_sequence(p: Params, n: int) -> float:
    """H*_n = (a+b+ab - 11/9) n + (2/9)(9ab - a - b - 1)."""
    n = int(n)
    if n < 0:
        raise DomainError("n must be >= 0")
    ab = p.a * p.b
    s = p.a + p.b
    return (s + ab - 11.0 / 9.0) * n + _TWO_NINTHS * (9.0 * ab - s - 1.0)
