import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import match_multisets, rand_complex
from fourpoints.errors import DegenerateAlpha, DomainError, NonConvergence, UnsupportedDegree
from fourpoints.numerics import (
    INF,
    RHO,
    CardanoBranch,
    Polynomial,
    as_sphere_point,
    chordal_distance,
    discriminant,
    hesse_cubic,
    hesse_roots,
    principal_cbrt,
    solve_poly,
)

coord = st.floats(min_value=-5, max_value=5, allow_nan=False)


def test_rho_is_primitive_cube_root():
    assert abs(RHO**3 - 1) < 1e-15
    assert abs(1 + RHO + RHO**2) < 1e-15


def test_infinity_singleton_and_coercion():
    assert as_sphere_point(float("inf")) is INF
    assert as_sphere_point(complex(1, float("inf"))) is INF
    assert as_sphere_point("inf") is INF
    assert as_sphere_point(3) == 3 + 0j
    with pytest.raises(DomainError):
        as_sphere_point(float("nan"))


def test_chordal_distance():
    assert chordal_distance(INF, INF) == 0
    assert chordal_distance(0, INF) == pytest.approx(2.0)
    assert chordal_distance(1, -1) == pytest.approx(2.0)
    assert chordal_distance(1j, INF) == pytest.approx(math.sqrt(2))


def test_polynomial_trims_and_evaluates():
    p = Polynomial((1, 2, 3, 0, 0))
    assert p.degree == 2
    assert p(2) == 1 + 4 + 12
    assert Polynomial.from_roots([1, -1], 4).coeffs == (-4, 0, 4)


def test_solve_quadratic_pure_imaginary_pair():
    assert solve_poly([1, 0, 1]) == pytest.approx([-1j, 1j])


def test_solve_cube_roots_of_minus_four():
    roots = solve_poly([4, 0, 0, 1])
    assert len(roots) == 3
    for r in roots:
        assert abs(r) == pytest.approx(4 ** (1 / 3))
        assert abs(r**3 + 4) < 1e-12


def test_solve_depressed_cubic_g2_4_g3_0():
    # 4x^3 - 4x = 4x(x - 1)(x + 1)
    expanded = Polynomial.from_roots([0, 1, -1], 4)
    assert expanded.coeffs == (0, -4, 0, 4)
    assert solve_poly(expanded) == pytest.approx([-1, 0, 1], abs=1e-14)


def test_solve_degree_12_and_determinism(rng):
    roots = [rand_complex(rng, 3) for _ in range(12)]
    p = Polynomial.from_roots(roots, 2 - 1j)
    got = solve_poly(p)
    assert match_multisets(got, roots) < 1e-8
    assert solve_poly(p) == got


def test_solve_rejects_bad_degree():
    with pytest.raises(UnsupportedDegree):
        solve_poly([1])
    with pytest.raises(UnsupportedDegree):
        solve_poly([1] * 14)


def test_solve_raises_nonconvergence_on_tiny_budget():
    p = Polynomial.from_roots([1, 2, 3, 4, 5, 6, 7, 8], 1)
    with pytest.raises(NonConvergence):
        solve_poly(p, max_iter=1, tol=1e-14)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(coord, coord), min_size=1, max_size=12))
def test_solver_residual_property(pairs):
    p = Polynomial.from_roots([complex(a, b) for a, b in pairs], 1)
    for r in solve_poly(p):
        assert p.relative_residual(r) <= 1e-9


def test_principal_cbrt_range():
    for z in (-8, 8j, -1 - 1e-12j, 1):
        c = principal_cbrt(z)
        assert abs(c**3 - z) < 1e-12
        assert -math.pi / 3 < cmath.phase(c) <= math.pi / 3 + 1e-15


def test_hesse_roots_domain_error_on_cube_roots_of_unity():
    for k in (1, RHO, RHO**2):
        with pytest.raises(DomainError):
            hesse_roots(k)


def test_hesse_roots_degenerate_alpha_at_zero_and_fallback():
    with pytest.raises(DegenerateAlpha):
        hesse_roots(0)
    roots = solve_poly(hesse_cubic(0))
    for r in roots:
        assert abs(r**3 + 4) < 1e-12


def test_hesse_roots_other_sqrt_branch_is_regular_at_zero():
    roots = hesse_roots(0, CardanoBranch(-1, 0))
    assert match_multisets(roots, solve_poly([4, 0, 0, 1])) < 1e-12


def test_hesse_roots_sum_is_3k(rng):
    for _ in range(50):
        k = rand_complex(rng, 2)
        assert abs(sum(hesse_roots(k)) - 3 * k) < 1e-9 * (1 + abs(k))


def test_hesse_roots_branch_invariant(rng):
    for _ in range(100):
        k = rand_complex(rng, 2)
        sets = [hesse_roots(k, b) for b in CardanoBranch.all()]
        for s in sets[1:]:
            assert match_multisets(s, sets[0]) < 1e-8


def test_hesse_roots_small_k_is_accurate():
    # the naive alpha**3 loses all digits here
    k = 1e-3 + 2e-3j
    assert match_multisets(hesse_roots(k), solve_poly(hesse_cubic(k))) < 1e-11


def test_cardano_branch_validation():
    with pytest.raises(ValueError):
        CardanoBranch(0, 0)
    with pytest.raises(ValueError):
        CardanoBranch(1, 3)
    assert len(CardanoBranch.all()) == 6


def test_discriminant_examples():
    assert discriminant([-1, 0, 0, 4]) == pytest.approx(-27)  # g2 = 0, g3 = 1
    assert discriminant(hesse_cubic(2)) == pytest.approx(3024)
    assert discriminant([1, 0, 1]) == -4


def test_discriminant_matches_root_product(rng):
    for _ in range(20):
        roots = [rand_complex(rng) for _ in range(3)]
        a = rand_complex(rng) + 2
        prod = 1
        for i in range(3):
            for j in range(i + 1, 3):
                prod *= (roots[i] - roots[j]) ** 2
        got = discriminant(Polynomial.from_roots(roots, a))
        assert abs(got - a**2 * prod) <= 1e-10 * abs(a**2 * prod)


def test_discriminant_hesse_identity(rng):
    for _ in range(100):
        k = rand_complex(rng, 2)
        want = 432 * (k**3 - 1)
        assert abs(discriminant(hesse_cubic(k)) - want) <= 1e-10 * abs(want)


def test_discriminant_weierstrass_identity(rng):
    for _ in range(100):
        g2, g3 = rand_complex(rng), rand_complex(rng)
        want = g2**3 - 27 * g3**2
        got = discriminant([-g3, -g2, 0, 4])
        assert abs(got - want) <= 1e-12 * (1 + abs(g2) ** 3 + 27 * abs(g3) ** 2)


def test_discriminant_unsupported_degree():
    with pytest.raises(UnsupportedDegree):
        discriminant([1, 1, 1, 1, 1])
