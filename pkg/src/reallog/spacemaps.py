"""Linear maps on n x n matrix space in column-stacked coordinates.

Convention: ``vec`` stacks columns, so the map A -> P A Q has the
Kronecker representation ``vec(P A Q) = (Q^T kron P) vec(A)``.
"""

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionMismatch, SingularMap, SingularMatrix


@dataclass(frozen=True)
class MatrixSpaceMap:
    """A linear operator on n x n matrices stored as its n^2 x n^2 action."""

    n: int
    big: np.ndarray


@dataclass(frozen=True)
class StandardForm:
    """The decomposition phi(A) = c P A P^{-1} (or with A^T).

    P is normalized: unit Frobenius norm, first nonzero entry in row-major
    order positive.
    """

    c: float
    p: np.ndarray
    transposed: bool


def normalize_conjugator(p):
    """Scale to unit Frobenius norm with a positive leading entry."""
    p = linalg.as_matrix(p)
    nrm = linalg.fro(p)
    if nrm == 0.0:
        raise SingularMatrix("zero matrix cannot be normalized")
    p = p / nrm
    flat = p.ravel()
    lead = np.flatnonzero(np.abs(flat) > 1e-12 * np.abs(flat).max())
    if lead.size and flat[lead[0]] < 0.0:
        p = -p
    return p


def make_standard_form(c, p, transposed, tol=None):
    """Validated, normalized StandardForm (c > 0, P invertible)."""
    c = float(c)
    if c <= 0.0:
        raise ValueError(f"scale must be positive, got {c}")
    p = linalg.as_matrix(p)
    if linalg.numerical_rank(p, tol) < p.shape[0]:
        raise SingularMatrix("conjugator is numerically singular")
    return StandardForm(c=c, p=normalize_conjugator(p), transposed=bool(transposed))


def vec(a):
    """Column-stacking: vec([[1,2],[3,4]]) = (1, 3, 2, 4)."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a.reshape(-1, order="F")


def unvec(v, n):
    v = np.asarray(v, dtype=np.float64).ravel()
    if v.size != n * n:
        raise DimensionMismatch(f"vector of length {v.size} is not {n}x{n}")
    return v.reshape((n, n), order="F")


def commutation_matrix(n):
    """K with K vec(A) = vec(A^T)."""
    k = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            k[j + i * n, i + j * n] = 1.0
    return k


def from_two_sided(p, q, transposed=False):
    """Map A -> P A Q (or P A^T Q)."""
    p = linalg.as_matrix(p)
    q = linalg.as_matrix(q)
    if p.shape != q.shape:
        raise DimensionMismatch(f"P is {p.shape}, Q is {q.shape}")
    n = p.shape[0]
    big = np.kron(q.T, p)
    if transposed:
        big = big @ commutation_matrix(n)
    return MatrixSpaceMap(n=n, big=big)


def from_standard(sf, tol=None):
    """Map realizing a StandardForm."""
    p_inv = linalg.invert(sf.p, tol)
    return from_two_sided(sf.c * sf.p, p_inv, sf.transposed)


def identity_map(n):
    return MatrixSpaceMap(n=n, big=np.eye(n * n))


def transpose_map(n):
    return MatrixSpaceMap(n=n, big=commutation_matrix(n))


def apply(m, a):
    a = linalg.as_matrix(a)
    if a.shape[0] != m.n:
        raise DimensionMismatch(f"map acts on {m.n}x{m.n}, got {a.shape}")
    return unvec(m.big @ vec(a), m.n)


def compose(m1, m2):
    """Composition m1 after m2: compose(m1, m2)(A) = m1(m2(A))."""
    if m1.n != m2.n:
        raise DimensionMismatch(f"maps act on different dimensions {m1.n}, {m2.n}")
    return MatrixSpaceMap(n=m1.n, big=m1.big @ m2.big)


def inverse(m, tol=None):
    if not is_bijective(m, tol):
        raise SingularMap("map is not bijective")
    return MatrixSpaceMap(n=m.n, big=linalg.invert(m.big, tol))


def is_bijective(m, tol=None):
    return linalg.numerical_rank(m.big, tol) == m.n * m.n


def basis_image(m, i, j):
    """phi(E_ij) read directly off the column of the big matrix."""
    return unvec(m.big[:, i + j * m.n], m.n)


# -- JSON wire formats ------------------------------------------------------


def matrix_to_dict(a):
    a = linalg.as_matrix(a)
    return {"n": int(a.shape[0]), "entries": [float(x) for x in a.ravel(order="C")]}


def matrix_from_dict(d):
    try:
        n = int(d["n"])
        entries = d["entries"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed matrix object: {exc}") from exc
    if n < 1 or len(entries) != n * n:
        raise ValueError(f"matrix object claims n={n} but has {len(entries)} entries")
    return np.asarray(entries, dtype=np.float64).reshape((n, n), order="C")


def map_to_dict(m):
    return {"n": int(m.n), "big": [float(x) for x in m.big.ravel(order="C")]}


def map_from_dict(d):
    try:
        n = int(d["n"])
        big = d["big"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed map object: {exc}") from exc
    if n < 1 or len(big) != n**4:
        raise ValueError(f"map object claims n={n} but has {len(big)} entries")
    return MatrixSpaceMap(
        n=n, big=np.asarray(big, dtype=np.float64).reshape((n * n, n * n), order="C")
    )
