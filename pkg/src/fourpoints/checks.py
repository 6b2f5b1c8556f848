"""Sampled self-checks behind ``fourpoints verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FourPointsError
from .forms import Hesse, branch_points, hesse_phi
from .invariants import j_chain, j_invariant, j_of_points, verify_branching
from .numerics import is_inf

__all__ = ["CheckItem", "random_lambdas", "random_hesse_ks", "check_branching", "check_chain", "check_hesse_phi"]


@dataclass
class CheckItem:
    name: str
    ok: bool
    detail: str = ""
    value: float = 0.0


def random_lambdas(n: int, rng: np.random.Generator, radius: float = 10.0, gap: float = 1e-3):
    """Uniform samples of the disk |lam| <= radius kept at least ``gap`` from 0 and 1."""
    out = []
    while len(out) < n:
        r = radius * np.sqrt(rng.uniform())
        lam = complex(r * np.exp(2j * np.pi * rng.uniform()))
        if abs(lam) >= gap and abs(lam - 1) >= gap:
            out.append(lam)
    return out


def random_hesse_ks(n: int, rng: np.random.Generator, radius: float = 5.0, gap: float = 1e-2):
    out = []
    while len(out) < n:
        r = radius * np.sqrt(rng.uniform())
        k = complex(r * np.exp(2j * np.pi * rng.uniform()))
        if abs(k**3 - 1) >= gap:
            out.append(k)
    return out


def _short(z) -> str:
    if is_inf(z):
        return "inf"
    z = complex(round(z.real, 12) + 0.0, round(z.imag, 12) + 0.0)
    return f"{z.real:.6g}" if z.imag == 0 else f"{z.real:.6g}{z.imag:+.6g}i"


def check_branching(tol: float = 1e-8) -> list[CheckItem]:
    from .errors import VerificationFailure

    try:
        report = verify_branching(tol)
    except VerificationFailure as exc:
        report = exc.report
    items = []
    for e in report.entries:
        items.append(
            CheckItem(
                f"critical point {_short(e.point)} -> {_short(e.value)}",
                e.ok,
                f"multiplicity {e.multiplicity}, measured slope {e.slope:.4f}",
                e.slope,
            )
        )
    for value, total in report.fiber_sums.items():
        full = report.degree_check.get(value, False)
        items.append(
            CheckItem(f"fiber over {value}", total == 6 and full, f"multiplicity sum {total}, fiber solve {'ok' if full else 'mismatch'}", total)
        )
    return items


def check_chain(samples: int = 1000, seed: int = 0, tol: float = 1e-9) -> list[CheckItem]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    bad = 0
    for lam in random_lambdas(samples, rng):
        j, jc = j_invariant(lam), j_chain(lam)
        if is_inf(j) or is_inf(jc):
            err = 0.0 if is_inf(j) and is_inf(jc) else float("inf")
        else:
            err = abs(jc - j) / (1 + abs(j))
        worst = max(worst, err)
        bad += err > tol
    return [
        CheckItem(
            "factorization chain equals J",
            bad == 0,
            f"{samples - bad}/{samples} samples within {tol:g}, max error {worst:.3g}",
            worst,
        )
    ]


def check_hesse_phi(samples: int = 200, seed: int = 0, tol: float = 1e-8) -> list[CheckItem]:
    rng = np.random.default_rng(seed)
    worst = 0.0
    bad = 0
    for k in random_hesse_ks(samples, rng):
        try:
            j = j_of_points(branch_points(Hesse(k)))
            phi = hesse_phi(k)
            err = abs(phi - j) / (1 + abs(phi))
        except FourPointsError:
            err = float("inf")
        worst = max(worst, err)
        bad += err > tol
    return [
        CheckItem(
            "closed form phi(k) equals J of Hesse branch points",
            bad == 0,
            f"{samples - bad}/{samples} samples within {tol:g}, max error {worst:.3g}",
            worst,
        )
    ]
