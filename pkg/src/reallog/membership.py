"""Membership in K (principal-logarithm matrices), K* (real-logarithm
matrices), and their common closure; Jordan profiles at negative
eigenvalues; constructive K-approximants."""

import enum
from dataclasses import dataclass

import numpy as np

from . import backend, linalg
from .errors import (
    ConvergenceFailure,
    NotAnEigenvalue,
    NotInK,
    NotInKStar,
    UnsupportedJordanStructure,
)

#: Relative width of the near-axis band in which a computed conjugate pair
#: may be the shadow of a defective real eigenvalue (a size-k Jordan block
#: splashes its eigenvalue by roughly eps**(1/k), far beyond imag_zero).
#: Pairs inside the band get a rank probe before being called non-real.
DEFECT_IMAG_BAND = 0.02


class Tag(enum.Enum):
    POSITIVE_REAL = "positive_real"
    NEGATIVE_REAL = "negative_real"
    ZERO = "zero"
    NON_REAL_PAIR = "non_real_pair"


@dataclass(frozen=True)
class EigClass:
    """A clustered eigenvalue with its axis classification."""

    value: complex
    tag: Tag
    cluster_multiplicity: int


@dataclass(frozen=True)
class JordanProfile:
    """Block-size histogram of one eigenvalue, from the rank sequence
    ``count(s) = r[s-1] - 2 r[s] + r[s+1]`` with ``r[k] = rank((A - mu I)^k)``."""

    eigenvalue: float
    block_counts: dict

    def algebraic_multiplicity(self):
        return sum(s * c for s, c in self.block_counts.items())

    def geometric_multiplicity(self):
        return sum(self.block_counts.values())


@dataclass(frozen=True)
class MembershipVerdict:
    in_set: bool
    witness: str | None = None


@dataclass(frozen=True)
class NegativeSplit:
    """Invariant-subspace split isolating semisimple negative eigenspaces.

    ``basis`` stacks an orthonormal basis per negative eigenspace followed
    by a basis of the complementary invariant subspace; in these
    coordinates the matrix is block diagonal with ``mu * I`` blocks and
    ``rest_block``.
    """

    negatives: tuple  # ((mu, even dimension), ...)
    basis: np.ndarray
    basis_inv: np.ndarray
    rest_block: np.ndarray
    rest_dim: int


def _tol(tol):
    return linalg.DEFAULT_TOL if tol is None else tol


def _cluster(values, ctol):
    """Greedy conjugation-aware clustering; returns [(centroid, count)]."""
    cents = []
    sums = []
    counts = []
    for v in values:
        canon = complex(v.real, abs(v.imag))
        placed = False
        for i, c in enumerate(cents):
            if abs(c - canon) <= ctol:
                sums[i] += canon
                counts[i] += 1
                cents[i] = sums[i] / counts[i]
                placed = True
                break
        if not placed:
            cents.append(canon)
            sums.append(canon)
            counts.append(1)
    return list(zip(cents, counts))


def classify_spectrum(a, tol=None):
    """Cluster the spectrum and tag each cluster by its position relative
    to the closed negative real axis.

    Near-axis conjugate pairs inside the defect band are rank-probed at
    their real part: a deficient ``A - re(lambda) I`` means the pair is the
    numerical shadow of a true real eigenvalue and is tagged accordingly
    (safe side for membership decisions).
    """
    a = linalg.as_matrix(a)
    tol = _tol(tol)
    n = a.shape[0]
    scale = linalg.fro(a)
    spec = linalg.eigenvalues(a, tol)
    ctol = linalg.scaled_tol(tol.eig_cluster, scale)
    band = linalg.scaled_tol(tol.imag_zero, scale)
    probe_band = DEFECT_IMAG_BAND * scale
    classes = []
    for centroid, count in _cluster(spec.values, ctol):
        re, im = centroid.real, centroid.imag
        real_like = im <= band
        if not real_like and im <= probe_band:
            shifted = a - re * np.eye(n)
            real_like = linalg.rank_with_reference(shifted, scale, tol) < n
        if real_like:
            if abs(re) <= band:
                classes.append(EigClass(complex(re, 0.0), Tag.ZERO, count))
            elif re < 0.0:
                classes.append(EigClass(complex(re, 0.0), Tag.NEGATIVE_REAL, count))
            else:
                classes.append(EigClass(complex(re, 0.0), Tag.POSITIVE_REAL, count))
        else:
            classes.append(EigClass(centroid, Tag.NON_REAL_PAIR, count))
    classes.sort(key=lambda c: (c.value.real, c.value.imag))
    return classes


def jordan_profile(a, mu, tol=None):
    """Jordan block structure at a (numerical) eigenvalue mu.

    Rank sequence of powers computed with re-orthogonalized products:
    ``rank(B^k) = rank(B @ Q)`` for Q an orthonormal basis of the range of
    ``B^(k-1)``, which keeps every factor bounded by ||B||.
    """
    a = linalg.as_matrix(a)
    tol = _tol(tol)
    n = a.shape[0]
    b = a - float(mu) * np.eye(n)
    # anchor every rank threshold at the scale of the input matrix, not of
    # the (possibly noise-level) staircase iterate at hand
    ref = max(linalg.fro(a), abs(float(mu)))
    ranks = []
    basis = None
    prev = n
    for _ in range(n + 1):
        m = b if basis is None else b @ basis
        q, r, _ = backend.active().cpqr(m)
        k = min(m.shape)
        d = np.abs(np.diag(r[:k, :k]))
        rank = linalg._rank_from_diag(d, tol.rank_rel, ref)
        if basis is None and rank == n:
            raise NotAnEigenvalue(f"{mu} is not within tolerance of the spectrum")
        ranks.append(rank)
        if rank == 0 or rank == prev:
            break
        basis = q[:, :rank]
        prev = rank
    r_seq = [n] + ranks
    w = [r_seq[k - 1] - r_seq[k] for k in range(1, len(r_seq))]
    w.append(0)
    counts = {}
    for s in range(1, len(w)):
        c = w[s - 1] - w[s]
        if c > 0:
            counts[s] = c
    return JordanProfile(eigenvalue=float(mu), block_counts=counts)


def in_K(a, tol=None):
    """True when no eigenvalue lies on the closed negative real axis."""
    for c in classify_spectrum(a, tol):
        if c.tag is Tag.NEGATIVE_REAL:
            return MembershipVerdict(
                False, f"eigenvalue {c.value.real:.6g} lies on the negative real axis"
            )
        if c.tag is Tag.ZERO:
            return MembershipVerdict(
                False, f"eigenvalue {c.value.real:.6g} within the numerical zero band"
            )
    return MembershipVerdict(True)


def in_K_star(a, tol=None):
    """Culver criterion: invertible, and every Jordan block size at every
    negative eigenvalue occurs an even number of times."""
    a = linalg.as_matrix(a)
    tol = _tol(tol)
    for c in classify_spectrum(a, tol):
        if c.tag is Tag.ZERO:
            return MembershipVerdict(
                False,
                f"numerically singular: eigenvalue {c.value.real:.6g} in the zero band",
            )
    for c in classify_spectrum(a, tol):
        if c.tag is not Tag.NEGATIVE_REAL:
            continue
        mu = c.value.real
        try:
            prof = jordan_profile(a, mu, tol)
        except NotAnEigenvalue:
            return MembershipVerdict(
                False, f"negative eigenvalue {mu:.6g} could not be profiled"
            )
        for size, cnt in sorted(prof.block_counts.items()):
            if cnt % 2 == 1:
                return MembershipVerdict(
                    False,
                    f"eigenvalue {mu:.6g}: block size {size} occurs {cnt} times (odd)",
                )
    return MembershipVerdict(True)


def in_closure(a, tol=None):
    """Closure membership: zero eigenvalues permitted; every negative
    eigenvalue must have even geometric multiplicity."""
    a = linalg.as_matrix(a)
    tol = _tol(tol)
    n = a.shape[0]
    scale = linalg.fro(a)
    for c in classify_spectrum(a, tol):
        if c.tag is not Tag.NEGATIVE_REAL:
            continue
        mu = c.value.real
        geo = n - linalg.rank_with_reference(a - mu * np.eye(n), scale, tol)
        if geo % 2 == 1:
            return MembershipVerdict(
                False,
                f"eigenvalue {mu:.6g} has odd geometric multiplicity {geo}",
            )
    return MembershipVerdict(True)


def negative_invariant_split(a, tol=None):
    """Split off the semisimple negative eigenspaces of a K* matrix.

    Returns None when the spectrum has no negative eigenvalue.  Raises
    NotInKStar for singular/odd-parity input and UnsupportedJordanStructure
    when a negative eigenvalue is defective (including the numerically
    detected shadows of defective eigenvalues).
    """
    a = linalg.as_matrix(a)
    tol = _tol(tol)
    n = a.shape[0]
    scale = linalg.fro(a)
    classes = classify_spectrum(a, tol)
    for c in classes:
        if c.tag is Tag.ZERO:
            raise NotInKStar(
                f"numerically singular: eigenvalue {c.value.real:.6g} in the zero band"
            )
    negs = [c for c in classes if c.tag is Tag.NEGATIVE_REAL]
    if not negs:
        return None
    cols = []
    negatives = []
    eigres_thr = linalg.scaled_tol(tol.eig_cluster, scale)
    for c in negs:
        mu = c.value.real
        try:
            prof = jordan_profile(a, mu, tol)
        except NotAnEigenvalue:
            raise NotInKStar(f"negative eigenvalue {mu:.6g} could not be profiled")
        if any(s >= 2 for s in prof.block_counts):
            raise UnsupportedJordanStructure(
                f"negative eigenvalue {mu:.6g} is defective: {prof.block_counts}"
            )
        m = prof.block_counts.get(1, 0)
        if m % 2 == 1:
            raise NotInKStar(
                f"eigenvalue {mu:.6g}: block size 1 occurs {m} times (odd)"
            )
        _, nullb = linalg.range_null_bases(a - mu * np.eye(n), tol, ref=scale)
        if nullb.shape[1] != m:
            raise UnsupportedJordanStructure(
                f"eigenvalue {mu:.6g}: eigenspace dimension {nullb.shape[1]} "
                f"disagrees with profile multiplicity {m}"
            )
        # a true semisimple eigenspace reproduces mu exactly; a shadow of a
        # defective eigenvalue misses by the splash radius
        if linalg.fro(a @ nullb - mu * nullb) > eigres_thr:
            raise UnsupportedJordanStructure(
                f"eigenvalue {mu:.6g}: eigenspace residual exceeds tolerance "
                "(defective structure)"
            )
        cols.append(nullb)
        negatives.append((mu, m))
    total_neg = sum(m for _, m in negatives)
    if total_neg == n:
        rank = 0  # no complementary part; the product would be pure noise
        basis = np.hstack(cols)
    else:
        prod = np.eye(n)
        for mu, _ in negatives:
            prod = prod @ (a - mu * np.eye(n))
        q, r, _ = backend.active().cpqr(prod)
        d = np.abs(np.diag(r))
        rank = (
            0
            if d.size == 0 or d[0] <= 0.0
            else int(np.count_nonzero(d > tol.rank_rel * d[0]))
        )
        if rank != n - total_neg:
            raise UnsupportedJordanStructure(
                "complementary invariant subspace has unexpected dimension "
                f"{rank} (expected {n - total_neg})"
            )
        basis = np.hstack(cols + [q[:, :rank]])
    if linalg.numerical_rank(basis, tol) < n:
        raise UnsupportedJordanStructure(
            "negative eigenspaces and their complement do not span (defective structure)"
        )
    basis_inv = linalg.invert(basis, tol)
    coords = basis_inv @ a @ basis
    rest = coords[total_neg:, total_neg:].copy()
    if rank:
        rest_verdict = in_K(rest, tol)
        if not rest_verdict.in_set:
            raise UnsupportedJordanStructure(
                f"complementary block is not in K ({rest_verdict.witness}); "
                "negative structure not semisimple-paired"
            )
    return NegativeSplit(
        negatives=tuple(negatives),
        basis=basis,
        basis_inv=basis_inv,
        rest_block=rest,
        rest_dim=rank,
    )


def _rot2(theta):
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def approximate_from_K(a, eps, tol=None):
    """A matrix of K within eps of a K* matrix (semisimple negatives).

    Each negative pair ``diag(mu, mu)`` rotates to ``|mu| R(pi - delta)``
    coordinates, moving the eigenvalue pair just off the axis.
    """
    a = linalg.as_matrix(a)
    tol = _tol(tol)
    if eps <= 0.0:
        raise ValueError("eps must be positive")
    if in_K(a, tol).in_set:
        return a.copy()
    split = negative_invariant_split(a, tol)
    if split is None:  # in_K false yet no negatives means a zero eigenvalue
        raise NotInKStar(in_K_star(a, tol).witness or "matrix is not in K*")
    n = a.shape[0]

    def perturbation(delta):
        d = np.zeros((n, n))
        at = 0
        for mu, size in split.negatives:
            blk = abs(mu) * _rot2(np.pi - delta) - mu * np.eye(2)
            for p in range(0, size, 2):
                d[at + p : at + p + 2, at + p : at + p + 2] = blk
            at += size
        return split.basis @ d @ split.basis_inv

    delta = 0.5
    pert = perturbation(delta)
    while linalg.fro(pert) > eps:
        delta *= 0.5
        if delta < 1e-12:
            raise ConvergenceFailure(
                f"requested eps {eps:.3g} is below the numerical resolution"
            )
        pert = perturbation(delta)
    out = a + pert
    verdict = in_K(out, tol)
    if not verdict.in_set:
        raise ConvergenceFailure(
            f"perturbed matrix failed the K check ({verdict.witness}); "
            f"eps {eps:.3g} is below the numerical resolution"
        )
    return out


def _dist_to_negative_axis(lam):
    if lam.real <= 0.0:
        return abs(lam.imag)
    return abs(lam)


def openness_radius(a, tol=None):
    """Half the spectral distance to the closed negative real axis."""
    a = linalg.as_matrix(a)
    tol = _tol(tol)
    verdict = in_K(a, tol)
    if not verdict.in_set:
        raise NotInK(verdict.witness)
    spec = linalg.eigenvalues(a, tol)
    d0 = min(_dist_to_negative_axis(lam) for lam in spec.values)
    return 0.5 * d0


def conservative_perturbation_radius(a, cond_bound, tol=None):
    """Perturbation radius under which K membership provably survives for
    matrices whose eigenvector basis has condition at most cond_bound."""
    d0 = 2.0 * openness_radius(a, tol)
    return 0.1 * d0 / (1.0 + float(cond_bound))
