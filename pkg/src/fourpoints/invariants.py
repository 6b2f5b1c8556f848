"""The J-invariant, equivalence of 4-point sets and the branching of J."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy.polynomial.polynomial as P

from .errors import VerificationFailure
from .moebius import FourPoints, MoebiusMap, apply, as_four_points, cross_ratio
from .numerics import INF, RHO, SpherePoint, as_sphere_point, is_inf, solve_poly

__all__ = [
    "j_invariant",
    "j_of_points",
    "j_chain",
    "j_close",
    "j_derivative",
    "are_equivalent",
    "verify_branching",
    "BranchingEntry",
    "BranchingReport",
    "CRITICAL_POINTS",
]

# numerator and denominator of J in ascending coefficients
J_NUM = P.polypow([1.0, -1.0, 1.0], 3)
J_DEN = P.polymul([0.0, 0.0, 1.0], [1.0, -2.0, 1.0])


def j_invariant(lam) -> SpherePoint:
    """J(lam) = (lam**2 - lam + 1)**3 / (lam**2 (lam - 1)**2); inf at 0, 1, inf."""
    lam = as_sphere_point(lam)
    if is_inf(lam):
        return INF
    den = lam * lam * (lam - 1) ** 2
    if den == 0:
        return INF
    val = (lam * lam - lam + 1) ** 3 / den
    if not cmath.isfinite(val):
        return INF
    return val


def j_close(j1: SpherePoint, j2: SpherePoint, tol: float = 1e-8) -> bool:
    """Compare J values relative to (1 + |J|); inf only equals inf."""
    if is_inf(j1) or is_inf(j2):
        return is_inf(j1) and is_inf(j2)
    return abs(j1 - j2) <= tol * (1.0 + max(abs(j1), abs(j2)))


def j_of_points(pts) -> SpherePoint:
    pts = as_four_points(pts)
    return j_invariant(cross_ratio(*pts))


_CHAIN_FIRST = MoebiusMap(RHO, RHO**2, 1, RHO**2)


def _cube_plus_inverse(z: SpherePoint) -> SpherePoint:
    if is_inf(z) or z == 0:
        return INF
    z3 = z**3
    return z3 + 1 / z3


def _last_step(z: SpherePoint) -> SpherePoint:
    if is_inf(z):
        return 0j
    # the earlier steps reach 2 only up to rounding
    if abs(z - 2) <= 1e-14:
        return INF
    return -27 / (z - 2)


def j_chain(lam) -> SpherePoint:
    """J evaluated as the composition of (rho z + rho**2)/(z + rho**2), z**3 + 1/z**3 and -27/(z - 2)."""
    z = apply(_CHAIN_FIRST, lam)
    z = _cube_plus_inverse(z)
    return _last_step(z)


def are_equivalent(A, B, tol: float = 1e-8) -> bool:
    """True when A and B (cross ratios or 4-point sets) have the same J."""
    return j_close(_j_of(A), _j_of(B), tol)


def _j_of(x) -> SpherePoint:
    if isinstance(x, FourPoints) or (isinstance(x, (list, tuple)) and len(x) == 4):
        return j_of_points(x)
    return j_invariant(x)


def _rational_derivative(num, den):
    return P.polysub(P.polymul(P.polyder(num), den), P.polymul(num, P.polyder(den))), P.polymul(den, den)


def j_derivative(lam: complex, order: int = 1) -> complex:
    """order-th derivative of J at a finite non-pole point, from the exact rational form."""
    num, den = J_NUM, J_DEN
    for _ in range(order):
        num, den = _rational_derivative(num, den)
    return complex(P.polyval(lam, num) / P.polyval(lam, den))


# critical point -> (critical value, multiplicity)
CRITICAL_POINTS = (
    (0j, INF, 2),
    (1 + 0j, INF, 2),
    (INF, INF, 2),
    (2 + 0j, 27 / 4 + 0j, 2),
    (0.5 + 0j, 27 / 4 + 0j, 2),
    (-1 + 0j, 27 / 4 + 0j, 2),
    (-RHO, 0j, 3),
    (-(RHO**2), 0j, 3),
)


@dataclass
class BranchingEntry:
    point: SpherePoint
    value: SpherePoint
    multiplicity: int
    slope: float
    derivatives: tuple = ()
    ok: bool = False


@dataclass
class BranchingReport:
    entries: list = field(default_factory=list)
    fiber_sums: dict = field(default_factory=dict)
    degree_check: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return (
            all(e.ok for e in self.entries)
            and all(s == 6 for s in self.fiber_sums.values())
            and all(self.degree_check.values())
        )


def _local_difference(point, value, eps: float) -> float:
    """|g(c + eps u) - g(c)| in charts: w -> 1/w at inf for both point and value."""
    u = cmath.exp(0.3j)
    if is_inf(point):
        lam = 1 / (eps * u)
    else:
        lam = point + eps * u
    j = j_invariant(lam)
    if is_inf(value):
        return abs(1 / j)
    return abs(j - value)


def _multiplicity_slope(point, value) -> float:
    d3 = _local_difference(point, value, 1e-3)
    d4 = _local_difference(point, value, 1e-4)
    return math.log10(d3 / d4)


def _fiber_roots(value) -> list:
    """Solutions of J(lam) = value counted with multiplicity; inf fills the degree gap."""
    if is_inf(value):
        poly = J_DEN
    else:
        poly = P.polysub(J_NUM, value * J_DEN)
    poly = P.polytrim(poly, 0)
    roots = solve_poly(tuple(poly), tol=1e-9) if len(poly) > 1 else []
    return list(roots) + [INF] * (6 - len(roots))


def _label(v) -> str:
    if is_inf(v):
        return "inf"
    return f"{v.real:g}" if v.imag == 0 else f"{v:g}"


def verify_branching(tol: float = 1e-8) -> BranchingReport:
    """Check critical points, values and multiplicities of J.

    Raises VerificationFailure (carrying the report) if any check fails.
    """
    report = BranchingReport()
    for point, value, mult in CRITICAL_POINTS:
        slope = _multiplicity_slope(point, value)
        ok = abs(slope - mult) <= 0.1
        ok = ok and (
            is_inf(j_invariant(point)) if is_inf(value) else abs(j_invariant(point) - value) <= tol
        )
        derivs = ()
        if not is_inf(value):
            derivs = tuple(abs(j_derivative(point, n)) for n in range(1, mult + 1))
            # all derivatives below the multiplicity vanish, the next one does not
            ok = ok and all(d <= tol for d in derivs[:-1]) and derivs[-1] > tol
        report.entries.append(BranchingEntry(point, value, mult, slope, derivs, ok))
        key = _label(value)
        report.fiber_sums[key] = report.fiber_sums.get(key, 0) + mult

    for value in {_label(v): v for _, v, _ in CRITICAL_POINTS}.values():
        roots = _fiber_roots(value)
        expected = [(p, m) for p, v, m in CRITICAL_POINTS if _label(v) == _label(value)]
        good = True
        for p, m in expected:
            if is_inf(p):
                hits = sum(1 for r in roots if is_inf(r))
            else:
                hits = sum(1 for r in roots if not is_inf(r) and abs(r - p) <= 1e-4)
            good = good and hits == m
        report.degree_check[_label(value)] = good

    if not report.ok:
        bad = [e for e in report.entries if not e.ok]
        raise VerificationFailure(f"branching check failed: {bad or report.degree_check}", report)
    return report
