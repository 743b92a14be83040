"""Shared construction helpers: Jordan structures with known ground truth,
conditioned similarity transforms, and eigenvalue palettes."""

import numpy as np
import pytest

NEG_VALUES = (-0.5, -1.0, -2.0, -3.5)
POS_VALUES = (0.5, 1.25, 2.0, 4.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def jordan_block(lam, size):
    return np.diag([float(lam)] * size) + np.diag([1.0] * (size - 1), 1)


def rotation_block(r, theta):
    c, s = np.cos(theta), np.sin(theta)
    return r * np.array([[c, -s], [s, c]])


def blockdiag(blocks):
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n))
    at = 0
    for b in blocks:
        k = b.shape[0]
        out[at : at + k, at : at + k] = b
        at += k
    return out


def conditioned_matrix(rng, n, cond):
    """Random matrix with 2-norm condition number exactly cond."""
    u, _ = np.linalg.qr(rng.standard_normal((n, n)))
    v, _ = np.linalg.qr(rng.standard_normal((n, n)))
    if n == 1:
        return u @ v
    sv = np.geomspace(1.0, 1.0 / cond, n)
    return u @ np.diag(sv) @ v.T


def make_similar(rng, j, cond=20.0):
    """S J S^{-1} with a conditioned S; returns (A, S)."""
    n = j.shape[0]
    s = conditioned_matrix(rng, n, cond)
    return s @ j @ np.linalg.inv(s), s


def random_jordan_structure(rng, n, allow_defective=True, allow_zero=True):
    """Random real Jordan form of size n.

    Returns (J, truth) where truth is the ground-truth K* verdict from the
    parity rule: invertible and, at each negative eigenvalue, an even count
    of blocks per size.  Negative blocks are paired with probability 0.6 so
    both verdicts occur often.
    """
    remaining = n
    blocks = []
    neg_counts = {}
    has_zero = False
    while remaining > 0:
        kind = int(rng.integers(0, 10))
        if kind <= 2 and remaining >= 2:
            r = float(rng.uniform(0.5, 2.0))
            theta = float(rng.uniform(0.3, 2.8))
            blocks.append(rotation_block(r, theta))
            remaining -= 2
        elif kind <= 6:
            lam = float(NEG_VALUES[rng.integers(0, len(NEG_VALUES))])
            max_size = min(3 if allow_defective else 1, remaining)
            size = int(rng.integers(1, max_size + 1))
            reps = 2 if (rng.random() < 0.6 and remaining >= 2 * size) else 1
            for _ in range(reps):
                blocks.append(jordan_block(lam, size))
                neg_counts.setdefault(lam, {})
                neg_counts[lam][size] = neg_counts[lam].get(size, 0) + 1
            remaining -= reps * size
        elif kind == 7 and allow_zero and not has_zero and rng.random() < 0.5:
            size = int(rng.integers(1, min(2, remaining) + 1))
            blocks.append(jordan_block(0.0, size))
            remaining -= size
            has_zero = True
        else:
            lam = float(POS_VALUES[rng.integers(0, len(POS_VALUES))])
            size = int(rng.integers(1, min(3, remaining) + 1))
            blocks.append(jordan_block(lam, size))
            remaining -= size
    order = rng.permutation(len(blocks))
    j = blockdiag([blocks[i] for i in order])
    truth = (not has_zero) and all(
        c % 2 == 0 for sizes in neg_counts.values() for c in sizes.values()
    )
    return j, truth


def random_semisimple_kstar(rng, n, require_negative=True):
    """Semisimple K* Jordan form: paired negative eigenvalues, positive
    eigenvalues, and rotation pairs; returns (J, negative values)."""
    remaining = n
    blocks = []
    negs = []
    if require_negative:
        lam = float(NEG_VALUES[rng.integers(0, len(NEG_VALUES))])
        blocks += [jordan_block(lam, 1), jordan_block(lam, 1)]
        negs.append(lam)
        remaining -= 2
    while remaining > 0:
        kind = int(rng.integers(0, 3))
        if kind == 0 and remaining >= 2:
            lam = float(NEG_VALUES[rng.integers(0, len(NEG_VALUES))])
            if lam not in negs:
                blocks += [jordan_block(lam, 1), jordan_block(lam, 1)]
                negs.append(lam)
                remaining -= 2
        elif kind == 1 and remaining >= 2:
            blocks.append(rotation_block(float(rng.uniform(0.5, 2.0)),
                                         float(rng.uniform(0.3, 2.8))))
            remaining -= 2
        else:
            blocks.append(jordan_block(float(POS_VALUES[rng.integers(0, 4)]), 1))
            remaining -= 1
    order = rng.permutation(len(blocks))
    return blockdiag([blocks[i] for i in order]), negs


def random_k_matrix(rng, n, spread=1.0):
    """A matrix in K, as the exponential of a scaled Gaussian."""
    from reallog import expm

    return expm(rng.standard_normal((n, n)) * (spread / np.sqrt(n)))
