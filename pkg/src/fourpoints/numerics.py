"""Complex and Riemann-sphere arithmetic, polynomials and root solvers."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import (
    DegenerateAlpha,
    DomainError,
    NonConvergence,
    UnsupportedDegree,
)

__all__ = [
    "RHO",
    "INF",
    "SpherePoint",
    "is_inf",
    "as_sphere_point",
    "chordal_distance",
    "sphere_close",
    "principal_sqrt",
    "principal_cbrt",
    "Polynomial",
    "CardanoBranch",
    "solve_poly",
    "hesse_cubic",
    "hesse_roots",
    "discriminant",
    "DEFAULT_TOL",
]

DEFAULT_TOL = 1e-9

#: Primitive cube root of unity exp(2*pi*i/3).
RHO = complex(-0.5, math.sqrt(3.0) / 2.0)


class _Infinity:
    """The point at infinity of the Riemann sphere (singleton)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()

SpherePoint = Union[complex, _Infinity]


def is_inf(p) -> bool:
    return p is INF


def as_sphere_point(x) -> SpherePoint:
    """Coerce numbers to ``complex``; any infinite component becomes ``INF``."""
    if x is INF:
        return INF
    if isinstance(x, str):
        if x.strip().lower() in ("inf", "infinity", "oo"):
            return INF
        raise TypeError(f"cannot interpret {x!r} as a sphere point")
    z = complex(x)
    if cmath.isnan(z):
        raise DomainError("NaN is not a point of the Riemann sphere")
    if cmath.isinf(z):
        return INF
    return z


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal distance on the unit-diameter-2 sphere; always in [0, 2]."""
    if is_inf(p) and is_inf(q):
        return 0.0
    if is_inf(p):
        return 2.0 / math.sqrt(1.0 + abs(q) ** 2)
    if is_inf(q):
        return 2.0 / math.sqrt(1.0 + abs(p) ** 2)
    return 2.0 * abs(p - q) / math.sqrt((1.0 + abs(p) ** 2) * (1.0 + abs(q) ** 2))


def sphere_close(p: SpherePoint, q: SpherePoint, tol: float = 1e-10) -> bool:
    return chordal_distance(p, q) <= tol


def principal_sqrt(z: complex) -> complex:
    # cmath.sqrt already returns the root with argument in (-pi/2, pi/2]
    return cmath.sqrt(z)


def principal_cbrt(z: complex) -> complex:
    """Cube root with argument in (-pi/3, pi/3]."""
    if z == 0:
        return 0j
    return abs(z) ** (1.0 / 3.0) * cmath.exp(1j * cmath.phase(z) / 3.0)


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with complex coefficients in ascending degree order.

    Highest-degree zero coefficients are trimmed on construction, so the
    leading coefficient is nonzero unless the polynomial is the constant 0.
    """

    coeffs: tuple

    def __post_init__(self):
        cs = [complex(c) for c in self.coeffs]
        if not cs:
            raise ValueError("polynomial needs at least one coefficient")
        if not all(cmath.isfinite(c) for c in cs):
            raise DomainError("polynomial coefficients must be finite")
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @classmethod
    def from_descending(cls, coeffs: Iterable) -> "Polynomial":
        return cls(tuple(coeffs)[::-1])

    @classmethod
    def from_roots(cls, roots: Iterable, leading: complex = 1) -> "Polynomial":
        cs = [complex(leading)]
        for r in roots:
            nxt = [0j] * (len(cs) + 1)
            for i, c in enumerate(cs):
                nxt[i + 1] += c
                nxt[i] -= r * c
            cs = nxt
        return cls(tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> complex:
        return self.coeffs[-1]

    def __call__(self, z):
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def derivative(self) -> "Polynomial":
        if self.degree == 0:
            return Polynomial((0j,))
        return Polynomial(tuple(i * c for i, c in enumerate(self.coeffs) if i > 0))

    def scale(self) -> float:
        return max(abs(c) for c in self.coeffs)

    def relative_residual(self, z: complex) -> float:
        """|p(z)| normalized by coefficient size and by |z|**degree for |z| > 1."""
        growth = max(1.0, abs(z)) ** self.degree
        return abs(self(z)) / ((1.0 + self.scale()) * growth)


@dataclass(frozen=True)
class CardanoBranch:
    """Choice of square-root sign and cube-root index in the Cardano formula."""

    sqrt_branch: int = 1
    cbrt_branch: int = 0

    def __post_init__(self):
        if self.sqrt_branch not in (1, -1):
            raise ValueError("sqrt_branch must be +1 or -1")
        if self.cbrt_branch not in (0, 1, 2):
            raise ValueError("cbrt_branch must be 0, 1 or 2")

    @staticmethod
    def all():
        return tuple(CardanoBranch(s, c) for s in (1, -1) for c in (0, 1, 2))


def _initial_guesses(coeffs: np.ndarray, seed: int) -> np.ndarray:
    n = len(coeffs) - 1
    lead = coeffs[-1]
    center = -coeffs[-2] / (n * lead)
    # Fujiwara-style radius estimate around the origin
    radius = max(
        (abs(coeffs[i] / lead) ** (1.0 / (n - i)) for i in range(n)), default=1.0
    )
    radius = max(radius, 1e-3)
    rng = np.random.default_rng(seed)
    angles = 2 * np.pi * np.arange(n) / n + 0.4 + rng.uniform(-0.25, 0.25, n) * np.pi / n
    radii = radius * (1.0 + rng.uniform(-0.1, 0.1, n))
    return center + radii * np.exp(1j * angles)


def _aberth(coeffs: np.ndarray, max_iter: int, seed: int) -> np.ndarray:
    desc = coeffs[::-1]
    ddesc = np.polyder(desc)
    z = _initial_guesses(coeffs, seed)
    n = len(z)
    eye = np.eye(n, dtype=bool)
    for _ in range(max_iter):
        pz = np.polyval(desc, z)
        dpz = np.polyval(ddesc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(pz == 0, 0, pz / dpz)
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            inv = 1.0 / diff
            inv[eye] = 0.0
            s = inv.sum(axis=1)
            w = ratio / (1.0 - ratio * s)
        bad = ~np.isfinite(w)
        if bad.any():
            # stationary point of p or colliding iterates: nudge and retry
            w[bad] = -1e-3 * (1.0 + np.abs(z[bad]))
        z = z - w
        if np.all(np.abs(w) <= 2e-16 * np.maximum(1.0, np.abs(z))):
            break
    return z


def solve_poly(
    p: Polynomial | Sequence, tol: float = DEFAULT_TOL, max_iter: int = 1000, seed: int = 20240229
) -> list[complex]:
    """All roots of ``p`` with multiplicity, sorted by (real, imag).

    Simultaneous Aberth-Ehrlich iteration from perturbed points on a circle;
    the perturbation uses a fixed seed so output is reproducible. A root
    ``r`` is accepted when ``p.relative_residual(r) <= tol``.
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(tuple(p))
    if not tol > 0:
        raise ValueError("tol must be positive")
    n = p.degree
    if not 1 <= n <= 12:
        raise UnsupportedDegree(f"solve_poly supports degrees 1..12, got {n}")
    cs = np.array(p.coeffs, dtype=complex)
    zeros = 0
    while cs[0] == 0:
        cs = cs[1:]
        zeros += 1
    roots = [0j] * zeros
    m = len(cs) - 1
    if m == 1:
        roots.append(complex(-cs[0] / cs[1]))
    elif m >= 2:
        found = _aberth(cs, max_iter, seed)
        # two Newton steps on the original polynomial
        dp = p.derivative()
        with np.errstate(all="ignore"):
            for j, r in enumerate(found):
                for _ in range(2):
                    d = dp(r)
                    if d == 0 or not np.isfinite(d):
                        break
                    cand = r - p(r) / d
                    if np.isfinite(cand) and abs(p(cand)) <= abs(p(r)):
                        r = cand
                found[j] = r
        roots.extend(complex(r) for r in found)
    worst = max(p.relative_residual(r) for r in roots)
    if worst > tol:
        raise NonConvergence(f"residual {worst:.3g} exceeds tolerance {tol:.3g}")
    return sorted(roots, key=lambda r: (r.real, r.imag))


def hesse_cubic(k: complex) -> Polynomial:
    """z**3 - 3k z**2 + 4, whose roots together with -k are the Hesse branch points."""
    return Polynomial((4, 0, -3 * complex(k), 1))


def hesse_roots(
    k: complex, branch: CardanoBranch = CardanoBranch(), tol: float = DEFAULT_TOL
) -> tuple[complex, complex, complex]:
    """Roots of z**3 - 3k z**2 + 4 by the explicit Cardano-type formula.

    z_nu = k - rho**nu * alpha - rho**(-nu) * k**2 / alpha,  nu = 1, 2, 3
    with alpha**3 = 2 - k**3 + 2i*sqrt(k**3 - 1).
    """
    k = complex(k)
    k3 = k**3
    if abs(k3 - 1) <= 1e-10:
        raise DomainError("Hesse parameter requires k**3 != 1")
    s = branch.sqrt_branch * principal_sqrt(k3 - 1)
    plus = 2 - k3 + 2j * s
    minus = 2 - k3 - 2j * s
    # plus * minus == k**6; divide instead of subtracting when plus cancels
    if abs(plus) < abs(minus):
        plus = k3 * k3 / minus
    alpha = principal_cbrt(plus) * RHO**branch.cbrt_branch
    if abs(alpha) < 1e-8 * (1 + abs(k) ** 2):
        raise DegenerateAlpha(f"|alpha| = {abs(alpha):.3g} too small at k = {k}")
    k2 = k * k
    roots = tuple(k - RHO**nu * alpha - RHO ** (-nu) * k2 / alpha for nu in (1, 2, 3))
    cubic = hesse_cubic(k)
    worst = max(cubic.relative_residual(z) for z in roots)
    if worst > tol:
        raise NonConvergence(f"Cardano residual {worst:.3g} exceeds {tol:.3g} at k = {k}")
    return roots


def discriminant(p: Polynomial | Sequence) -> complex:
    """Discriminant normalized as ``a**2 * prod_{i<j} (r_i - r_j)**2``.

    For quadratics this is the usual b**2 - 4ac. For cubics it is the usual
    discriminant divided by a**2, so that 4x**3 - g2 x - g3 gives
    g2**3 - 27 g3**2 and z**3 - 3k z**2 + 4 gives 432 (k**3 - 1).
    """
    if not isinstance(p, Polynomial):
        p = Polynomial(tuple(p))
    if p.degree == 2:
        c, b, a = p.coeffs
        return b * b - 4 * a * c
    if p.degree == 3:
        d, c, b, a = p.coeffs
        full = 18 * a * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * a * c**3 - 27 * a * a * d * d
        return full / (a * a)
    raise UnsupportedDegree(f"discriminant supports degree 2 or 3, got {p.degree}")
