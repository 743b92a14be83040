"""Matrix exponential, principal real logarithm, real square root, and the
paired-negative real logarithm, with exp/log roundtrip certification."""

import enum
from dataclasses import dataclass

import numpy as np

from . import backend, linalg
from .errors import (
    ConvergenceFailure,
    NegativeAxisEigenvalue,
    NotInK,
    NotInKStar,
    Overflow,
)

_PADE13_B = (
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
)

#: 1-norm threshold above which the argument is scaled before the order-13
#: Pade approximant (the standard double-precision balance point).
PADE13_THETA = 5.371920351148152

#: Inverse scaling stops once the quasi-triangular factor is this close to I.
LOG_SQRT_TARGET = 0.25

_MAX_SQUARINGS = 1024
_MAX_SQRT_STEPS = 60

# Gauss-Legendre nodes/weights on [0, 1];
# log(I + E) ~ sum_i w_i E (I + x_i E)^{-1} (diagonal Pade, degree 8)
_GL_X, _GL_W = np.polynomial.legendre.leggauss(8)
_GL_X = 0.5 * (_GL_X + 1.0)
_GL_W = 0.5 * _GL_W


class LogKind(enum.Enum):
    PRINCIPAL = "principal"
    PAIRED_NEGATIVE_SEMISIMPLE = "paired_negative_semisimple"


@dataclass(frozen=True)
class LogResult:
    """A real logarithm together with its exp-roundtrip residual."""

    log_matrix: np.ndarray
    kind: LogKind
    roundtrip_residual: float


def expm(x):
    """Matrix exponential by scaling-and-squaring with order-13 Pade."""
    x = linalg.as_matrix(x)
    n = x.shape[0]
    nrm = float(np.linalg.norm(x, 1)) if n else 0.0
    s = 0
    if nrm > PADE13_THETA:
        s = int(np.ceil(np.log2(nrm / PADE13_THETA)))
        if s > _MAX_SQUARINGS:
            raise Overflow(f"scaling budget exceeded (1-norm {nrm:.3g})")
    a = x / (2.0**s) if s else x.copy()
    eye = np.eye(n)
    b = _PADE13_B
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (
        a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6
        + b[5] * a4
        + b[3] * a2
        + b[1] * eye
    )
    v = (
        a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6
        + b[4] * a4
        + b[2] * a2
        + b[0] * eye
    )
    r = linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    if not np.all(np.isfinite(r)):
        raise Overflow("matrix exponential exceeds the representable range")
    return r


def expm_series(x, terms=30):
    """Truncated Taylor series; independent oracle for small arguments."""
    x = linalg.as_matrix(x)
    acc = np.eye(x.shape[0])
    term = np.eye(x.shape[0])
    for k in range(1, terms + 1):
        term = term @ x / k
        acc = acc + term
    return acc


def _roundtrip_residual(log_matrix, a):
    scale = linalg.fro(a)
    return linalg.fro(expm(log_matrix) - a) / (scale if scale > 0.0 else 1.0)


def _quasi_triangular_check(t, tol):
    n = t.shape[0]
    if n < 2:
        return
    lower = np.tril(t, -1).copy()
    np.fill_diagonal(lower[1:, :], 0.0)
    thr = linalg.scaled_tol(tol.residual_rel, linalg.fro(t))
    if np.abs(lower).max(initial=0.0) > thr:
        raise ValueError("matrix is not upper quasi-triangular")
    sub = np.diagonal(t, -1)
    if np.any((sub[:-1] != 0.0) & (sub[1:] != 0.0)):
        raise ValueError("consecutive nonzero subdiagonal entries")


def sqrtm_real(t, tol=None):
    """Principal square root of an upper quasi-triangular matrix."""
    t = linalg.as_matrix(t)
    tol = linalg.DEFAULT_TOL if tol is None else tol
    _quasi_triangular_check(t, tol)
    x, info = backend.active().quasi_sqrt(t)
    if info != 0:
        raise NegativeAxisEigenvalue("spectrum touches the closed negative real axis")
    return x


def _logm_quasi(t):
    """Log of a quasi-triangular factor by inverse scaling-and-squaring.

    Assumes the spectrum stays off (-inf, 0]; raises otherwise.
    """
    n = t.shape[0]
    eye = np.eye(n)
    k = 0
    while np.linalg.norm(t - eye, 1) > LOG_SQRT_TARGET:
        t, info = backend.active().quasi_sqrt(t)
        if info != 0:
            raise NegativeAxisEigenvalue(
                "spectrum touches the closed negative real axis"
            )
        k += 1
        if k > _MAX_SQRT_STEPS:
            raise ConvergenceFailure("inverse scaling did not contract to I")
    e = t - eye
    out = np.zeros_like(t)
    for xi, wi in zip(_GL_X, _GL_W):
        out += wi * np.linalg.solve((eye + xi * e).T, e.T).T
    return (2.0**k) * out


def logm_principal(a, tol=None):
    """Principal real logarithm of a matrix with spectrum off (-inf, 0]."""
    from . import membership  # deferred: membership builds on linalg only

    a = linalg.as_matrix(a)
    tol = linalg.DEFAULT_TOL if tol is None else tol
    verdict = membership.in_K(a, tol)
    if not verdict.in_set:
        raise NotInK(verdict.witness)
    sf = linalg.real_schur(a, tol)
    x = _logm_quasi(sf.t_quasi.copy())
    log_matrix = sf.q_orth @ x @ sf.q_orth.T
    return LogResult(
        log_matrix=log_matrix,
        kind=LogKind.PRINCIPAL,
        roundtrip_residual=_roundtrip_residual(log_matrix, a),
    )


def _paired_log_block(mu, size):
    """Real log of mu * I_size (mu < 0, size even): ln|mu| I + pi J pairs."""
    out = np.zeros((size, size))
    lm = np.log(abs(mu))
    for p in range(0, size, 2):
        out[p, p] = lm
        out[p + 1, p + 1] = lm
        out[p, p + 1] = np.pi
        out[p + 1, p] = -np.pi
    return out


def real_log_paired(a, tol=None):
    """A real logarithm for matrices admitting one (semisimple negative
    eigenvalues only).

    The negative part is rotated through ``ln|mu| I_2 + pi J`` on paired
    axes of each negative eigenspace; the remainder takes its principal
    logarithm.  The choice is canonical only up to the pairing; the
    roundtrip residual certifies it.
    """
    from . import membership

    a = linalg.as_matrix(a)
    tol = linalg.DEFAULT_TOL if tol is None else tol
    split = membership.negative_invariant_split(a, tol)
    if split is None:  # no negative eigenvalues: principal case applies
        return logm_principal(a, tol)
    blocks = [_paired_log_block(mu, size) for mu, size in split.negatives]
    if split.rest_dim:
        rest_log = logm_principal(split.rest_block, tol)
        blocks.append(rest_log.log_matrix)
    n = a.shape[0]
    log_coords = np.zeros((n, n))
    at = 0
    for blk in blocks:
        k = blk.shape[0]
        log_coords[at : at + k, at : at + k] = blk
        at += k
    log_matrix = split.basis @ log_coords @ split.basis_inv
    return LogResult(
        log_matrix=log_matrix,
        kind=LogKind.PAIRED_NEGATIVE_SEMISIMPLE,
        roundtrip_residual=_roundtrip_residual(log_matrix, a),
    )
