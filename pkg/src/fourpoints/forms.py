"""Normal forms of elliptic curves and conversions through their branch points.

Every form is reduced to the 4-point set over which its x-projection ramifies;
two forms describe isomorphic curves exactly when those sets have equal J.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import ClassVar, Union

from .errors import (
    DegenerateAlpha,
    DegenerateInput,
    DomainError,
    InvariantViolation,
    NoValidRoot,
    VerificationFailure,
)
from .invariants import j_close, j_invariant, j_of_points
from .moebius import FourPoints, as_four_points, cross_ratio, cross_ratio_orbit
from .numerics import (
    INF,
    Polynomial,
    as_sphere_point,
    hesse_cubic,
    hesse_roots,
    is_inf,
    principal_sqrt,
    solve_poly,
)

__all__ = [
    "Weierstrass",
    "Legendre",
    "Jacobi",
    "Symmetric",
    "Edwards",
    "Hesse",
    "CurveForm",
    "FORM_KINDS",
    "branch_points",
    "weierstrass_from_points",
    "legendre_from_points",
    "symmetric_phi",
    "symmetric_parameter_from_lambda",
    "hesse_phi",
    "hesse_inversion_polynomial",
    "hesse_from_lambda",
    "convert",
    "is_isomorphic",
    "form_j",
]

FORM_TOL = 1e-10


def _near(z: complex, target: complex) -> bool:
    return abs(z - target) <= FORM_TOL * max(1.0, abs(target))


@dataclass(frozen=True)
class Weierstrass:
    """y**2 = 4x**3 - g2 x - g3."""

    g2: complex
    g3: complex
    kind: ClassVar[str] = "weierstrass"

    def __post_init__(self):
        g2, g3 = complex(self.g2), complex(self.g3)
        object.__setattr__(self, "g2", g2)
        object.__setattr__(self, "g3", g3)
        delta = g2**3 - 27 * g3**2
        if abs(delta) <= FORM_TOL * max(1.0, abs(g2) ** 3, 27 * abs(g3) ** 2):
            raise InvariantViolation(f"Weierstrass discriminant vanishes for g2={g2}, g3={g3}")

    @property
    def params(self):
        return (self.g2, self.g3)


@dataclass(frozen=True)
class Legendre:
    """y**2 = x (x - 1)(x - lam)."""

    lam: complex
    kind: ClassVar[str] = "legendre"

    def __post_init__(self):
        lam = complex(self.lam)
        object.__setattr__(self, "lam", lam)
        if _near(lam, 0) or _near(lam, 1):
            raise InvariantViolation(f"Legendre parameter must avoid 0 and 1, got {lam}")

    @property
    def params(self):
        return (self.lam,)


@dataclass(frozen=True)
class Jacobi:
    """y**2 = (x**2 - 1)(k**2 x**2 - 1)."""

    k: complex
    kind: ClassVar[str] = "jacobi"

    def __post_init__(self):
        k = complex(self.k)
        object.__setattr__(self, "k", k)
        if _near(k, 0) or _near(k * k, 1) or _near(k * k, -1):
            raise InvariantViolation(f"Jacobi parameter needs k != 0 and k**2 != +-1, got {k}")

    @property
    def params(self):
        return (self.k,)


@dataclass(frozen=True)
class Symmetric:
    """y**2 = (x**2 - a**2)(a**2 x**2 - 1), branch points {a, -1/a, -a, 1/a}."""

    a: complex
    kind: ClassVar[str] = "symmetric"

    def __post_init__(self):
        a = complex(self.a)
        object.__setattr__(self, "a", a)
        if _near(a, 0) or _near(a**4, 1):
            raise InvariantViolation(f"parameter needs a != 0 and a**4 != 1, got {a}")

    @property
    def params(self):
        return (self.a,)


@dataclass(frozen=True)
class Edwards(Symmetric):
    """x**2 + y**2 = a**2 + a**2 x**2 y**2; same branch points as Symmetric(a)."""

    kind: ClassVar[str] = "edwards"


@dataclass(frozen=True)
class Hesse:
    """x**3 + y**3 + 1 = 3k x y."""

    k: complex
    kind: ClassVar[str] = "hesse"

    def __post_init__(self):
        k = complex(self.k)
        object.__setattr__(self, "k", k)
        if _near(k**3, 1):
            raise InvariantViolation(f"Hesse parameter needs k**3 != 1, got {k}")

    @property
    def params(self):
        return (self.k,)


CurveForm = Union[Weierstrass, Legendre, Jacobi, Symmetric, Edwards, Hesse]

FORM_KINDS = {
    cls.kind: cls for cls in (Weierstrass, Legendre, Jacobi, Symmetric, Edwards, Hesse)
}


def _sorted_roots(roots):
    return sorted(roots, key=lambda z: (round(z.real, 12), round(z.imag, 12)))


def _hesse_cubic_roots(k: complex):
    try:
        return list(hesse_roots(k))
    except DegenerateAlpha:
        return solve_poly(hesse_cubic(k))


def branch_points(f: CurveForm) -> FourPoints:
    """Branch points of the x-projection in a fixed order.

    Weierstrass: the cubic's roots sorted by (re, im), then inf.
    Legendre: (0, 1, inf, lam), so their cross ratio is lam.
    Jacobi: (1, -1/k, -1, 1/k), the image of the symmetric set under z/a.
    Symmetric, Edwards: (a, -1/a, -a, 1/a).
    Hesse: the roots of z**3 - 3k z**2 + 4 sorted by (re, im), then -k.
    """
    try:
        if isinstance(f, Weierstrass):
            roots = solve_poly(Polynomial((-f.g3, -f.g2, 0, 4)))
            return FourPoints(*_sorted_roots(roots), INF)
        if isinstance(f, Legendre):
            return FourPoints(0, 1, INF, f.lam)
        if isinstance(f, Jacobi):
            return FourPoints(1, -1 / f.k, -1, 1 / f.k)
        if isinstance(f, Symmetric):
            return FourPoints(f.a, -1 / f.a, -f.a, 1 / f.a)
        if isinstance(f, Hesse):
            return FourPoints(*_sorted_roots(_hesse_cubic_roots(f.k)), -f.k)
    except DegenerateInput as exc:
        raise InvariantViolation(f"{f} has coincident branch points") from exc
    raise TypeError(f"not a curve form: {f!r}")


def form_j(f) -> complex:
    """J of the branch-point set of a form or of an explicit 4-point set."""
    if isinstance(f, (Weierstrass, Legendre, Jacobi, Symmetric, Hesse)):
        return j_of_points(branch_points(f))
    return j_of_points(f)


def weierstrass_from_points(z1, z2, z3) -> tuple[complex, complex]:
    """(g2, g3) with 4(x - e1)(x - e2)(x - e3) = 4x**3 - g2 x - g3, e_i = z_i - centroid."""
    zs = [complex(z) for z in (z1, z2, z3)]
    scale = max(1.0, *(abs(z) for z in zs))
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(zs[i] - zs[j]) <= 1e-12 * scale:
                raise DegenerateInput(f"repeated point {zs[i]}")
    c = sum(zs) / 3
    e1, e2, e3 = (z - c for z in zs)
    g2 = -4 * (e1 * e2 + e1 * e3 + e2 * e3)
    g3 = 4 * e1 * e2 * e3
    return g2, g3


def legendre_from_points(pts) -> complex:
    return cross_ratio(*as_four_points(pts))


def symmetric_phi(a) -> complex:
    """Cross ratio of (a, -1/a, -a, 1/a), equal to ((1 - a**2)/(1 + a**2))**2."""
    a2 = complex(a) ** 2
    return ((1 - a2) / (1 + a2)) ** 2


def symmetric_parameter_from_lambda(lam) -> complex:
    """Some a with symmetric_phi(a) == lam.

    s = sqrt(lam), a**2 = (1 - s)/(1 + s), a = sqrt(a**2), principal roots;
    the opposite sign of s is used if the first candidate has a**4 == 1.
    """
    lam = as_sphere_point(lam)
    if is_inf(lam) or _near(lam, 0) or _near(lam, 1):
        raise DomainError(f"symmetric parameter undefined for lambda = {lam}")
    s0 = principal_sqrt(lam)
    for s in (s0, -s0):
        a = principal_sqrt((1 - s) / (1 + s))
        if not (_near(a, 0) or _near(a**4, 1)):
            return a
    raise DomainError(f"no admissible symmetric parameter for lambda = {lam}")


def hesse_phi(k) -> complex:
    """27/4 * (k (k**3 + 8) / (4 (k**3 - 1)))**3, the J of the Hesse branch points."""
    k = complex(k)
    k3 = k**3
    if _near(k3, 1):
        raise DomainError("hesse_phi has poles at k**3 == 1")
    return 27 / 4 * (k * (k3 + 8) / (4 * (k3 - 1))) ** 3


def hesse_inversion_polynomial(j: complex) -> Polynomial:
    """27 (k (k**3 + 8))**3 - 256 j (k**3 - 1)**3, whose roots solve hesse_phi(k) == j."""
    j = complex(j)
    # 27 k**3 (k**3 + 8)**3 = 27 (k**12 + 24 k**9 + 192 k**6 + 512 k**3)
    # 256 j (k**3 - 1)**3 = 256 j (k**9 - 3 k**6 + 3 k**3 - 1)
    cs = [0j] * 13
    cs[12] = 27
    cs[9] = 27 * 24 - 256 * j
    cs[6] = 27 * 192 + 768 * j
    cs[3] = 27 * 512 - 768 * j
    cs[0] = 256 * j
    return Polynomial(tuple(cs))


def _newton_phi(k: complex, j: complex, steps: int = 3) -> complex:
    poly = hesse_inversion_polynomial(j)
    dpoly = poly.derivative()
    for _ in range(steps):
        d = dpoly(k)
        if d == 0:
            break
        cand = k - poly(k) / d
        if abs(poly(cand)) >= abs(poly(k)):
            break
        k = cand
    return k


def hesse_from_lambda(lam, tol: float = 1e-8) -> complex:
    """A Hesse parameter k with hesse_phi(k) == J(lam).

    Among the twelve roots of the inversion polynomial, those with
    |k**3 - 1| <= 1e-8 are dropped and the smallest |k| is returned
    (ties broken by the smaller argument).
    """
    lam = as_sphere_point(lam)
    if is_inf(lam) or _near(lam, 0) or _near(lam, 1):
        raise DomainError(f"Hesse parameter undefined for lambda = {lam}")
    j = j_invariant(lam)
    roots = solve_poly(hesse_inversion_polynomial(j))
    roots = [_newton_phi(k, j) for k in roots]
    valid = [k for k in roots if abs(k**3 - 1) > 1e-8]
    if not valid:
        raise NoValidRoot(f"every inversion root has k**3 == 1 for lambda = {lam}")
    k = min(valid, key=lambda z: (round(abs(z), 9), cmath.phase(z)))
    if not j_close(hesse_phi(k), j, tol):
        raise VerificationFailure(f"hesse_phi({k}) = {hesse_phi(k)} != J = {j}")
    if not j_close(j_of_points(branch_points(Hesse(k))), j, tol):
        raise VerificationFailure(f"Hesse({k}) branch points do not reproduce J = {j}")
    return k


def _lambda_of(f) -> complex:
    if isinstance(f, Legendre):
        return f.lam
    pts = branch_points(f) if not isinstance(f, FourPoints) else f
    return cross_ratio(*pts)


def _to_jacobi(lam: complex) -> Jacobi:
    # k**2 == -1 is excluded for Jacobi though its branch points are distinct;
    # the harmonic value lam = -1 lands there, so fall back to other orbit members
    last = None
    for cand in cross_ratio_orbit(lam):
        a = symmetric_parameter_from_lambda(cand)
        try:
            return Jacobi(a * a)
        except InvariantViolation as exc:
            last = exc
    raise last


def convert(f, target: str, tol: float = 1e-8) -> CurveForm:
    """Convert a curve form (or 4-point set) to the normal form named ``target``."""
    if target not in FORM_KINDS:
        raise DomainError(f"unknown form kind {target!r}; choose from {sorted(FORM_KINDS)}")
    if isinstance(f, (Symmetric, Edwards)) and target in ("symmetric", "edwards"):
        out = FORM_KINDS[target](f.a)
    elif isinstance(f, Symmetric) and target == "jacobi" and not _near(f.a**4, -1):
        out = Jacobi(f.a**2)
    else:
        lam = _lambda_of(f)
        if target == "legendre":
            out = Legendre(lam)
        elif target == "weierstrass":
            out = Weierstrass(*weierstrass_from_points(0, 1, lam))
        elif target == "jacobi":
            out = _to_jacobi(lam)
        elif target in ("symmetric", "edwards"):
            out = FORM_KINDS[target](symmetric_parameter_from_lambda(lam))
        else:
            out = Hesse(hesse_from_lambda(lam, tol))
    if not j_close(form_j(f), form_j(out), tol):
        raise VerificationFailure(f"conversion of {f} to {out} changed J")
    return out


def is_isomorphic(f1, f2, tol: float = 1e-8) -> bool:
    return j_close(form_j(f1), form_j(f2), tol)
