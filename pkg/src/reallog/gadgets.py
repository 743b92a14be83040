"""Executable proof gadgets: rotations, the unit-spectrum shear, the
negative-spectrum product, the rotated-submatrix discriminant analysis,
and the polynomial-density rank witness."""

from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import comb

import numpy as np

from . import linalg, membership
from .errors import (
    DegenerateAngle,
    DimensionMismatch,
    NonpositiveDeterminant,
    SampleBudgetExceeded,
)

#: The shear parameter is chosen so that trace(product) hits this value
#: exactly (any value below -2 certifies two distinct negative eigenvalues).
SHEAR_TRACE_TARGET = -3.0


@dataclass(frozen=True)
class TwoByTwoAnalysis:
    """Rotation-family data of a 2x2 submatrix [[a, b], [c, d]].

    ``trace(R(theta) M) = r0 cos(theta - phase)`` and the discriminant
    maximum over theta equals ``r0^2 - 4 det = (a-d)^2 + (b+c)^2``.
    """

    a: float
    b: float
    c: float
    d: float
    r0: float
    phase: float
    det: float
    max_discriminant: float


def rotation(theta):
    """2x2 rotation by theta: determinant 1, eigenvalues e^{+-i theta}."""
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def shear_b(theta):
    """Shear parameter with 2 cos(theta) + b sin(theta) = SHEAR_TRACE_TARGET."""
    s = np.sin(theta)
    if abs(s) < 1e-12:
        raise DegenerateAngle(f"sin(theta) vanishes at theta = {theta}")
    return (SHEAR_TRACE_TARGET - 2.0 * np.cos(theta)) / s


def shear_A_theta(theta):
    """Unit upper-triangular shear [[1, b], [0, 1]] with spectrum {1, 1},
    tuned so the product with R(theta) has trace below -2."""
    return np.array([[1.0, shear_b(theta)], [0.0, 1.0]])


def product_B_theta(theta):
    """A_theta R(theta): determinant 1, trace -3, hence two distinct
    negative real eigenvalues."""
    return shear_A_theta(theta) @ rotation(theta)


def embedded_witness(theta, n, m):
    """A_theta oplus I_{n-2}, the unit-spectrum embedding whose product
    with a leading-rotation block matrix leaves K*."""
    m = linalg.as_matrix(m)
    if n < 2:
        raise DimensionMismatch(f"embedding needs n >= 2, got {n}")
    if m.shape[0] != n:
        raise DimensionMismatch(f"block matrix is {m.shape}, embedding is {n}x{n}")
    out = np.eye(n)
    out[:2, :2] = shear_A_theta(theta)
    return out


def analyze_two_by_two(a, b, c, d):
    """Trace-amplitude / phase / discriminant data for [[a, b], [c, d]].

    Verifies the closed forms against rotated products on a coarse theta
    grid before returning.
    """
    a, b, c, d = float(a), float(b), float(c), float(d)
    det = a * d - b * c
    if det <= 0.0:
        raise NonpositiveDeterminant(f"ad - bc = {det:.6g} must be positive")
    r0 = np.hypot(a + d, b - c)
    phase = np.arctan2(b - c, a + d)
    max_disc = (a - d) ** 2 + (b + c) ** 2
    m = np.array([[a, b], [c, d]])
    scale = max(1.0, r0 * r0, abs(det))
    for theta in np.linspace(0.0, 2.0 * np.pi, 32, endpoint=False):
        prod = rotation(theta) @ m
        tr = prod[0, 0] + prod[1, 1]
        if abs(tr - r0 * np.cos(theta - phase)) > 1e-10 * scale:
            raise AssertionError("trace formula failed its spot check")
        dt = prod[0, 0] * prod[1, 1] - prod[0, 1] * prod[1, 0]
        if abs(dt - det) > 1e-10 * scale:
            raise AssertionError("determinant invariance failed its spot check")
    return TwoByTwoAnalysis(
        a=a, b=b, c=c, d=d, r0=float(r0), phase=float(phase), det=det,
        max_discriminant=float(max_disc),
    )


def discriminant_max_check(a, b, c, d, grid=10000):
    """Gap between the grid maximum of the rotated discriminant
    Delta(theta) = trace(R(theta) M)^2 - 4 det and its closed form
    (a-d)^2 + (b+c)^2.  The gap shrinks like grid^-2."""
    if grid < 100:
        raise ValueError(f"grid must be at least 100, got {grid}")
    ana = analyze_two_by_two(a, b, c, d)
    thetas = np.linspace(0.0, np.pi, int(grid), endpoint=False)
    cs, sn = np.cos(thetas), np.sin(thetas)
    # diagonal of R(theta) @ M evaluated directly across the grid
    tr = (ana.a * cs - ana.c * sn) + (ana.b * sn + ana.d * cs)
    disc = tr * tr - 4.0 * ana.det
    return float(abs(disc.max() - ana.max_discriminant))


def monomial_exponents(nvars, degree):
    """Exponent tuples of total degree <= degree, graded-lexicographic,
    constant term first."""
    out = []
    for total in range(degree + 1):
        batch = []
        for picks in combinations_with_replacement(range(nvars), total):
            e = [0] * nvars
            for p in picks:
                e[p] += 1
            batch.append(tuple(e))
        out.extend(sorted(batch, reverse=True))
    return out


class _AttemptBudget:
    def __init__(self, total):
        self.left = total

    def spend(self):
        self.left -= 1
        return self.left >= 0


def _sample_in_K(rng, n, tol, budget):
    while budget.spend():
        a = rng.standard_normal((n, n))
        if membership.in_K(a, tol).in_set:
            return a
    return None


def _sample_singular(rng, n):
    return rng.standard_normal((n, n - 1)) @ rng.standard_normal((n - 1, n))


def zariski_density_witness(n, degree, samples, seed, sampler="K", tol=None):
    """True when no nonzero polynomial of the given degree vanishes on the
    sampled subset: the monomial evaluation matrix has full column rank.

    ``sampler="K"`` rejection-samples from K; ``sampler="det0"`` draws from
    the determinant-zero variety (the control, which must come out False
    once the degree reaches n).
    """
    tol = linalg.DEFAULT_TOL if tol is None else tol
    exps = monomial_exponents(n * n, degree)
    ncols = comb(n * n + degree, degree)
    assert len(exps) == ncols
    if samples < 2 * ncols:
        raise ValueError(
            f"need at least {2 * ncols} samples for {ncols} monomials, got {samples}"
        )
    rng = np.random.default_rng(seed)
    rows = np.empty((samples, n * n))
    budget = _AttemptBudget(200 * samples)
    for i in range(samples):
        if sampler == "K":
            a = _sample_in_K(rng, n, tol, budget)
            if a is None:
                raise SampleBudgetExceeded(
                    f"rejection sampling from K stalled after {200 * samples} attempts"
                )
        elif sampler == "det0":
            a = _sample_singular(rng, n)
        else:
            raise ValueError(f"unknown sampler {sampler!r}")
        rows[i] = a.ravel()
    emat = np.empty((samples, ncols))
    for jc, e in enumerate(exps):
        col = np.ones(samples)
        for v, p in enumerate(e):
            if p:
                col = col * rows[:, v] ** p
        emat[:, jc] = col
    return linalg.numerical_rank(emat, tol) == ncols
