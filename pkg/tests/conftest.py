import cmath

import numpy as np
import pytest

from fourpoints.checks import random_hesse_ks, random_lambdas


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def rel_err(a, b):
    return abs(a - b) / max(1.0, abs(b))


def rand_complex(rng, scale=1.0):
    return complex(rng.normal(scale=scale), rng.normal(scale=scale))


def sorted_roots(rs):
    return sorted((complex(r) for r in rs), key=lambda z: (round(z.real, 7), round(z.imag, 7)))


def match_multisets(xs, ys):
    """Largest distance after greedily pairing each x with its nearest unused y."""
    ys = list(ys)
    worst = 0.0
    for x in xs:
        j = min(range(len(ys)), key=lambda i: abs(ys[i] - x))
        worst = max(worst, abs(ys.pop(j) - x))
    return worst


def general_position_quadruple(rng, min_im=1e-3):
    from fourpoints.moebius import cross_ratio

    while True:
        z = [rand_complex(rng) for _ in range(4)]
        if min(abs(a - b) for i, a in enumerate(z) for b in z[i + 1:]) < 1e-3:
            continue
        if abs(cross_ratio(*z).imag) > min_im:
            return z


def random_moebius(rng):
    from fourpoints.moebius import MoebiusMap

    while True:
        a, b, c, d = (rand_complex(rng) for _ in range(4))
        if abs(a * d - b * c) > 0.1:
            return MoebiusMap(a, b, c, d)


__all__ = ["random_lambdas", "random_hesse_ks", "cmath"]
