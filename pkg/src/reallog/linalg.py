"""Dense real linear algebra: factorizations, eigenvalues via real Schur,
numerical rank, and the spectral matching distance."""

from dataclasses import dataclass, field
from itertools import count

import numpy as np

from . import backend
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    LengthMismatch,
    SingularMatrix,
)

#: Absolute tolerance floor used when the reference matrix is zero.
ZERO_MATRIX_ABS_TOL = 1e-14

#: Sweep budget factor for the shifted QR iteration.
MAX_QR_SWEEPS_PER_DIM = 40


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances shared across the package.

    All thresholds scale with the Frobenius norm of the matrix at hand;
    for the zero matrix an absolute floor of ``ZERO_MATRIX_ABS_TOL``
    applies instead.
    """

    eig_cluster: float = 1e-8
    rank_rel: float = 1e-10
    residual_rel: float = 1e-9
    imag_zero: float = 1e-8

    def __post_init__(self):
        for name in ("eig_cluster", "rank_rel", "residual_rel", "imag_zero"):
            v = getattr(self, name)
            if not (0.0 < v < 1.0):
                raise ValueError(f"{name} must lie in (0, 1), got {v}")


DEFAULT_TOL = Tolerances()


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalue multiset of a real matrix (algebraic multiplicity as
    repetition), plus the source norm for relative tolerances."""

    values: np.ndarray
    source_norm: float

    def __len__(self):
        return len(self.values)


@dataclass(frozen=True)
class SchurForm:
    """Real Schur factorization ``a = q_orth @ t_quasi @ q_orth.T``."""

    q_orth: np.ndarray
    t_quasi: np.ndarray


def as_matrix(a):
    """Validate and convert to a square float64 array with finite entries."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    return m


def fro(a):
    return float(np.linalg.norm(a, "fro"))


def scaled_tol(rel, norm):
    """Relative threshold, with the zero-matrix absolute floor."""
    return rel * norm if norm > 0.0 else ZERO_MATRIX_ABS_TOL


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


def real_schur(a, tol=None):
    """Real Schur form via Hessenberg reduction + Francis double-shift QR."""
    a = as_matrix(a)
    tol = _tol(tol)
    n = a.shape[0]
    t, q, info = backend.active().schur_full(
        a, tol.eig_cluster, MAX_QR_SWEEPS_PER_DIM * max(n, 1)
    )
    if info != 0:
        raise ConvergenceFailure(
            f"QR iteration did not converge within {MAX_QR_SWEEPS_PER_DIM * n} sweeps"
        )
    return SchurForm(q_orth=q, t_quasi=t)


def _eigs_from_quasi(t):
    """Eigenvalues read off the diagonal blocks of a quasi-triangular matrix."""
    n = t.shape[0]
    vals = []
    i = 0
    while i < n:
        if i + 1 < n and t[i + 1, i] != 0.0:
            tr = t[i, i] + t[i + 1, i + 1]
            det = t[i, i] * t[i + 1, i + 1] - t[i, i + 1] * t[i + 1, i]
            disc = tr * tr - 4.0 * det
            if disc < 0.0:
                im = 0.5 * np.sqrt(-disc)
                vals.append(complex(0.5 * tr, im))
                vals.append(complex(0.5 * tr, -im))
            else:  # split pass should prevent this; keep a real fallback
                sq = np.sqrt(disc)
                vals.append(complex(0.5 * (tr + sq), 0.0))
                vals.append(complex(0.5 * (tr - sq), 0.0))
            i += 2
        else:
            vals.append(complex(t[i, i], 0.0))
            i += 1
    return np.array(vals, dtype=np.complex128)


def eigenvalues(a, tol=None):
    """Spectrum of a real matrix, conjugate-symmetric by construction."""
    a = as_matrix(a)
    sf = real_schur(a, tol)
    vals = _eigs_from_quasi(sf.t_quasi)
    order = np.lexsort((vals.imag, vals.real))
    return Spectrum(values=vals[order], source_norm=fro(a))


def _rank_from_diag(d, rank_rel, ref):
    """Count pivot magnitudes above the threshold anchored at
    ``max(d[0], ref)``; ref = 0 gives the plain relative rule."""
    if d.size == 0:
        return 0
    anchor = max(float(d[0]), float(ref))
    thr = rank_rel * anchor if anchor > 0.0 else ZERO_MATRIX_ABS_TOL
    return int(np.count_nonzero(d > thr))


def rank_with_reference(a, ref, tol=None):
    """Numerical rank with an external scale anchor.

    A nonzero ``ref`` keeps noise-level matrices (e.g. A - mu I for A close
    to mu I) from being counted as full rank against their own noise.
    """
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionMismatch("expected a 2-d array")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    tol = _tol(tol)
    if m.size == 0:
        return 0
    _, r, _ = backend.active().cpqr(m)
    d = np.abs(np.diag(r[: min(m.shape), : min(m.shape)]))
    return _rank_from_diag(d, tol.rank_rel, ref)


def numerical_rank(a, tol=None):
    """Rank by column-pivoted QR: diagonal magnitudes above
    ``rank_rel`` times the largest one."""
    return rank_with_reference(a, 0.0, tol)


def range_null_bases(a, tol=None, ref=0.0):
    """Orthonormal bases (range of a, null space of a) via pivoted QR.

    The null-space basis comes from the QR of ``a.T`` (orthogonal
    complement of the row space); ``ref`` anchors the rank threshold.
    """
    m = np.asarray(a, dtype=np.float64)
    tol = _tol(tol)
    q, r, _ = backend.active().cpqr(m)
    k = min(m.shape)
    d = np.abs(np.diag(r[:k, :k]))
    rank = _rank_from_diag(d, tol.rank_rel, ref)
    qt, rt, _ = backend.active().cpqr(m.T)
    dt = np.abs(np.diag(rt[:k, :k]))
    rank_t = _rank_from_diag(dt, tol.rank_rel, ref)
    rank = max(rank, rank_t)  # consistent split between the two factorizations
    return q[:, :rank], qt[:, rank:]


def solve(a, b, tol=None):
    """Solve ``a @ x = b`` through the pivoted QR factorization."""
    a = as_matrix(a)
    tol = _tol(tol)
    n = a.shape[0]
    b = np.asarray(b, dtype=np.float64)
    vec_in = b.ndim == 1
    rhs = b.reshape(n, -1) if vec_in else b
    if rhs.shape[0] != n:
        raise DimensionMismatch("right-hand side rows do not match the matrix")
    q, r, piv = backend.active().cpqr(a)
    d = np.abs(np.diag(r))
    if d.size == 0 or d[0] <= 0.0 or np.count_nonzero(d > tol.rank_rel * d[0]) < n:
        raise SingularMatrix("matrix is numerically singular")
    y = q.T @ rhs
    x = np.zeros_like(y)
    for i in range(n - 1, -1, -1):
        x[i] = (y[i] - r[i, i + 1 :] @ x[i + 1 :]) / r[i, i]
    out = np.empty_like(x)
    out[piv] = x
    return out[:, 0] if vec_in else out


def invert(a, tol=None):
    """Matrix inverse; raises SingularMatrix below full numerical rank."""
    a = as_matrix(a)
    return solve(a, np.eye(a.shape[0]), tol)


def _bottleneck_exact_small(d):
    """Min over permutations of the max matched distance, bitmask DP."""
    n = d.shape[0]
    full = (1 << n) - 1
    best = np.full(1 << n, np.inf)
    best[0] = 0.0
    for mask in range(1, full + 1):
        i = bin(mask).count("1") - 1
        mm = mask
        acc = np.inf
        while mm:
            j = (mm & -mm).bit_length() - 1
            prev = best[mask ^ (1 << j)]
            cand = prev if prev >= d[i, j] else d[i, j]
            if cand < acc:
                acc = cand
            mm &= mm - 1
        best[mask] = acc
    return float(best[full])


def _feasible(d, thr):
    """Perfect matching using only edges d <= thr (augmenting paths)."""
    n = d.shape[0]
    match = [-1] * n

    def try_assign(i, seen):
        for j in range(n):
            if d[i, j] <= thr and not seen[j]:
                seen[j] = True
                if match[j] < 0 or try_assign(match[j], seen):
                    match[j] = i
                    return True
        return False

    for i in range(n):
        if not try_assign(i, [False] * n):
            return False
    return True


def _bottleneck_exact_large(d):
    """Exact bottleneck matching by threshold search over edge weights."""
    weights = np.unique(d)
    lo, hi = 0, len(weights) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(d, weights[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(weights[lo])


def matching_distance(s1, s2):
    """Optimal bottleneck matching distance between two spectra.

    Exact for every size: bitmask DP up to n = 12, threshold search with
    bipartite matching above.
    """
    v1 = np.asarray(s1.values if isinstance(s1, Spectrum) else s1, dtype=np.complex128)
    v2 = np.asarray(s2.values if isinstance(s2, Spectrum) else s2, dtype=np.complex128)
    if v1.shape != v2.shape:
        raise LengthMismatch(f"spectra of lengths {len(v1)} and {len(v2)}")
    n = len(v1)
    if n == 0:
        return 0.0
    d = np.abs(v1[:, None] - v2[None, :])
    if n <= 12:
        return _bottleneck_exact_small(d)
    return _bottleneck_exact_large(d)
