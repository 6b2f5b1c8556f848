"""Moebius maps, cross ratios and their orbits, 4-point canonical forms."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import DegenerateInput, DegenerateTriple, DomainError, PreconditionViolation
from .numerics import INF, SpherePoint, as_sphere_point, chordal_distance, is_inf

__all__ = [
    "MoebiusMap",
    "FourPoints",
    "CrossRatioOrbit",
    "ORBIT_SUBSTITUTIONS",
    "as_four_points",
    "map_from_triple",
    "map_between_triples",
    "apply",
    "cross_ratio",
    "cross_ratio_orbit",
    "canonicalize",
    "klein_involutions",
    "affine_reduction",
]

DISTINCT_TOL = 1e-10


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (a z + b) / (c z + d), stored scaled so the largest coefficient is 1."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        coeffs = [complex(x) for x in (self.a, self.b, self.c, self.d)]
        big = max(coeffs, key=abs)
        if big == 0:
            raise DegenerateInput("all Moebius coefficients vanish")
        a, b, c, d = (x / big for x in coeffs)
        if abs(a * d - b * c) <= 1e-12:
            raise DegenerateInput("Moebius determinant vanishes")
        for name, val in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, val)

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def affine(cls, a: complex, b: complex) -> "MoebiusMap":
        return cls(a, b, 0, 1)

    @property
    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def __call__(self, p) -> SpherePoint:
        return apply(self, p)

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        """Composition: (self @ other)(z) == self(other(z))."""
        return MoebiusMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    def is_affine(self, tol: float = 1e-12) -> bool:
        return abs(self.c) <= tol

    def isclose(self, other: "MoebiusMap", tol: float = 1e-9) -> bool:
        """Coefficient-level comparison up to a common scalar factor."""
        mine = (self.a, self.b, self.c, self.d)
        theirs = (other.a, other.b, other.c, other.d)
        # both are scaled so the max coefficient is 1; remove residual phase
        i = max(range(4), key=lambda j: abs(mine[j]))
        if abs(theirs[i]) == 0:
            return False
        f = mine[i] / theirs[i]
        return all(abs(x - f * y) <= tol for x, y in zip(mine, theirs))

    def is_identity(self, tol: float = 1e-9) -> bool:
        return self.isclose(MoebiusMap.identity(), tol)


def apply(m: MoebiusMap, p) -> SpherePoint:
    p = as_sphere_point(p)
    if is_inf(p):
        return INF if m.c == 0 else m.a / m.c
    num = m.a * p + m.b
    den = m.c * p + m.d
    # a pole, up to the rounding left by coefficient normalization
    if abs(den) <= 4e-16 * (abs(m.c * p) + abs(m.d)):
        return INF
    return num / den


def _check_distinct(points, exc=DegenerateInput):
    for (i, p), (j, q) in itertools.combinations(enumerate(points, 1), 2):
        if chordal_distance(p, q) <= DISTINCT_TOL:
            raise exc(f"points {i} and {j} coincide ({p}, {q})")


@dataclass(frozen=True)
class FourPoints:
    """Ordered quadruple of pairwise distinct points of the Riemann sphere."""

    p1: SpherePoint
    p2: SpherePoint
    p3: SpherePoint
    p4: SpherePoint

    def __post_init__(self):
        pts = [as_sphere_point(p) for p in (self.p1, self.p2, self.p3, self.p4)]
        _check_distinct(pts)
        for name, val in zip(("p1", "p2", "p3", "p4"), pts):
            object.__setattr__(self, name, val)

    def __iter__(self):
        return iter((self.p1, self.p2, self.p3, self.p4))

    def __getitem__(self, i):
        return tuple(self)[i]

    def __len__(self):
        return 4

    def mapped(self, m: MoebiusMap) -> "FourPoints":
        return FourPoints(*(apply(m, p) for p in self))

    def permuted(self, order) -> "FourPoints":
        pts = tuple(self)
        return FourPoints(*(pts[i] for i in order))

    def has_infinity(self) -> bool:
        return any(is_inf(p) for p in self)

    def finite(self) -> list[complex]:
        return [p for p in self if not is_inf(p)]


def as_four_points(pts) -> FourPoints:
    if isinstance(pts, FourPoints):
        return pts
    pts = list(pts)
    if len(pts) != 4:
        raise DegenerateInput(f"expected four points, got {len(pts)}")
    return FourPoints(*pts)


def map_from_triple(p, q, r) -> MoebiusMap:
    """The Moebius map sending p -> 0, q -> 1, r -> inf."""
    p, q, r = (as_sphere_point(x) for x in (p, q, r))
    _check_distinct((p, q, r), DegenerateTriple)
    if is_inf(p):
        return MoebiusMap(0, q - r, 1, -r)
    if is_inf(q):
        return MoebiusMap(1, -p, 1, -r)
    if is_inf(r):
        return MoebiusMap(1, -p, 0, q - p)
    return MoebiusMap(q - r, -p * (q - r), q - p, -r * (q - p))


def map_between_triples(src, dst) -> MoebiusMap:
    """The Moebius map sending src[i] -> dst[i] for i = 0, 1, 2."""
    return map_from_triple(*dst).inverse() @ map_from_triple(*src)


def cross_ratio(z1, z2, z3, z4) -> SpherePoint:
    """(z4 - z1)(z2 - z3) / ((z1 - z2)(z3 - z4)), with limits when a point is inf.

    Equals the image of z4 under the map sending (z1, z2, z3) to (0, 1, inf).
    """
    pts = [as_sphere_point(z) for z in (z1, z2, z3, z4)]
    _check_distinct(pts)
    z1, z2, z3, z4 = pts
    if is_inf(z1):
        return (z2 - z3) / (z4 - z3)
    if is_inf(z2):
        return (z4 - z1) / (z4 - z3)
    if is_inf(z3):
        return (z4 - z1) / (z2 - z1)
    if is_inf(z4):
        return (z3 - z2) / (z1 - z2)
    return (z4 - z1) * (z2 - z3) / ((z1 - z2) * (z3 - z4))


#: The six maps lambda -> equivalent cross ratio (the anharmonic group).
ORBIT_SUBSTITUTIONS = (
    lambda l: l,
    lambda l: 1 / l,
    lambda l: 1 - l,
    lambda l: 1 / (1 - l),
    lambda l: l / (l - 1),
    lambda l: (l - 1) / l,
)


@dataclass(frozen=True)
class CrossRatioOrbit:
    values: tuple

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def contains(self, z: complex, tol: float = 1e-8) -> bool:
        return any(abs(z - v) <= tol * max(1.0, abs(v)) for v in self.values)


def cross_ratio_orbit(lam, tol: float = 1e-9) -> CrossRatioOrbit:
    lam = as_sphere_point(lam)
    if is_inf(lam) or abs(lam) <= tol or abs(lam - 1) <= tol:
        raise DomainError(f"cross ratio orbit undefined at {lam}")
    values: list[complex] = []
    for f in ORBIT_SUBSTITUTIONS:
        v = f(lam)
        if not any(abs(v - u) <= tol * max(1.0, abs(v), abs(u)) for u in values):
            values.append(v)
    from .invariants import j_invariant, j_close  # local: invariants imports this module

    j0 = j_invariant(lam)
    for v in values:
        if not j_close(j_invariant(v), j0, 1e-9):
            raise ArithmeticError(f"J not constant on orbit of {lam}")
    return CrossRatioOrbit(tuple(values))


def canonicalize(pts) -> tuple[complex, MoebiusMap]:
    """Return (lam, m) with m(p1, p2, p3, p4) == (0, 1, inf, lam)."""
    pts = as_four_points(pts)
    m = map_from_triple(pts.p1, pts.p2, pts.p3)
    lam = cross_ratio(*pts)
    return lam, m


#: Index pairs of the double transpositions (12)(34), (13)(24), (14)(23).
DOUBLE_TRANSPOSITIONS = ((1, 0, 3, 2), (2, 3, 0, 1), (3, 2, 1, 0))


def klein_involutions(pts, tol: float = 1e-9) -> tuple[MoebiusMap, MoebiusMap, MoebiusMap]:
    """Maps realizing (12)(34), (13)(24), (14)(23) on the four points, in that order."""
    pts = as_four_points(pts)
    src = tuple(pts)
    out = []
    for perm in DOUBLE_TRANSPOSITIONS:
        m = map_between_triples(src[:3], tuple(src[i] for i in perm[:3]))
        for i, j in enumerate(perm):
            if chordal_distance(apply(m, src[i]), src[j]) > tol:
                raise ArithmeticError(f"involution {perm} misses point {i + 1}")
        out.append(m)
    return tuple(out)


def affine_reduction(A, B, tol: float = 1e-8) -> Optional[tuple[complex, complex]]:
    """Affine map z -> a z + b carrying the finite triple of A onto that of B.

    Both sets must contain inf. Returns None when the sets are not Moebius
    equivalent (decided by comparing J values).
    """
    from .invariants import j_close, j_of_points

    A = as_four_points(A)
    B = as_four_points(B)
    if not (A.has_infinity() and B.has_infinity()):
        raise PreconditionViolation("both point sets must contain inf")
    if not j_close(j_of_points(A), j_of_points(B), tol):
        return None
    fa, fb = A.finite(), B.finite()
    scale = max(1.0, *(abs(z) for z in fb))
    best = None
    for perm in itertools.permutations(fb):
        a = (perm[1] - perm[0]) / (fa[1] - fa[0])
        b = perm[0] - a * fa[0]
        err = abs(a * fa[2] + b - perm[2]) / scale
        if best is None or err < best[0]:
            best = (err, a, b)
    err, a, b = best
    if err > tol:
        raise ArithmeticError(f"equivalent sets but no affine match (residual {err:.3g})")
    return a, b
