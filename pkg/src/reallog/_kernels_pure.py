"""Dense kernels, pure numpy lane.

Mirrors the contract of the compiled lane (``_kernels_c``): float64 arrays
in, float64 arrays out, integer status codes instead of exceptions.  The
three entry points are

* ``schur_full``  -- real Schur form via Hessenberg + Francis double-shift QR
* ``cpqr``        -- column-pivoted Householder QR
* ``quasi_sqrt``  -- principal square root of an upper quasi-triangular matrix
"""

import numpy as np

_EPS = float(np.finfo(np.float64).eps)

BACKEND_NAME = "pure"


def _hessenberg(h, q):
    """In-place Householder reduction to upper Hessenberg form."""
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        alpha = np.sqrt(np.dot(x, x))
        if alpha == 0.0:
            continue
        v = x.copy()
        v[0] += alpha if x[0] >= 0.0 else -alpha
        vnorm = np.sqrt(np.dot(v, v))
        if vnorm == 0.0:
            continue
        v /= vnorm
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v)
        q[:, k + 1 :] -= 2.0 * np.outer(q[:, k + 1 :] @ v, v)
        h[k + 2 :, k] = 0.0


def _householder3(x, y, z):
    """Reflector sending (x, y, z) onto the first axis.

    Returns (v0, v1, v2, beta) for I - beta v v^T.
    """
    alpha = np.sqrt(x * x + y * y + z * z)
    if alpha == 0.0:
        return 1.0, 0.0, 0.0, 0.0
    v0 = x + alpha if x >= 0.0 else x - alpha
    vnorm2 = v0 * v0 + y * y + z * z
    if vnorm2 == 0.0:
        return 1.0, 0.0, 0.0, 0.0
    return v0, y, z, 2.0 / vnorm2


def _apply_reflector(h, q, k, v, beta, m, lo_col, hi_row):
    """Apply (I - beta v v^T) on rows/cols k..k+m-1 of h, accumulate in q."""
    rows = slice(k, k + m)
    w = v[:m]
    sub = h[rows, lo_col:]
    sub -= np.outer(beta * w, w @ sub)
    sub = h[: hi_row + 1, rows]
    sub -= np.outer(sub @ w, beta * w)
    sub = q[:, rows]
    sub -= np.outer(sub @ w, beta * w)


def _split_real_2x2_blocks(h, q):
    """Rotate every 2x2 diagonal block with real eigenvalues to triangular
    form so that remaining 2x2 blocks carry non-real conjugate pairs."""
    n = h.shape[0]
    i = 0
    while i < n - 1:
        if h[i + 1, i] == 0.0:
            i += 1
            continue
        a, b = h[i, i], h[i, i + 1]
        c, d = h[i + 1, i], h[i + 1, i + 1]
        disc = (a - d) * (a - d) + 4.0 * b * c
        if disc < 0.0:
            i += 2
            continue
        sq = np.sqrt(disc)
        t = a + d
        lam = 0.5 * (t + sq) if t >= 0.0 else 0.5 * (t - sq)
        # eigenvector for lam from the better-scaled row of (block - lam I)
        v1 = (b, lam - a)
        v2 = (lam - d, c)
        if v1[0] * v1[0] + v1[1] * v1[1] >= v2[0] * v2[0] + v2[1] * v2[1]:
            vx, vy = v1
        else:
            vx, vy = v2
        nv = np.hypot(vx, vy)
        if nv == 0.0:
            vx, vy, nv = 1.0, 0.0, 1.0
        cs, sn = vx / nv, vy / nv
        g = np.array([[cs, -sn], [sn, cs]])
        h[i : i + 2, :] = g.T @ h[i : i + 2, :]
        h[:, i : i + 2] = h[:, i : i + 2] @ g
        q[:, i : i + 2] = q[:, i : i + 2] @ g
        h[i + 1, i] = 0.0
        i += 2


def schur_full(a, subdiag_tol, max_sweeps):
    """Real Schur decomposition a = q t q^T.

    A subdiagonal entry deflates when it falls below machine-precision
    scale relative to its neighbouring diagonal (always within the caller's
    ``subdiag_tol`` bound, which acts as a ceiling).  Returns ``(t, q,
    info)`` with info = 0 on success, 1 when ``max_sweeps`` bulge chases
    were exhausted.  2x2 diagonal blocks of t always carry non-real
    conjugate pairs.
    """
    h = np.array(a, dtype=np.float64, copy=True, order="C")
    n = h.shape[0]
    q = np.eye(n)
    if n <= 1:
        return h, q, 0
    _hessenberg(h, q)
    unorm = np.linalg.norm(h)
    if unorm == 0.0:
        return h, q, 0
    rel = min(float(subdiag_tol), 16.0 * _EPS)
    floor = 8.0 * _EPS * unorm
    ihi = n - 1
    sweeps = 0
    stall = 0
    v = np.empty(3)
    while ihi > 0:
        # bottom-most unreduced window [lo, ihi]
        lo = ihi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if abs(h[lo, lo - 1]) <= max(rel * s, floor):
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == ihi:
            ihi -= 1
            stall = 0
            continue
        if lo == ihi - 1:
            ihi -= 2
            stall = 0
            continue
        if sweeps >= max_sweeps:
            return h, q, 1
        sweeps += 1
        stall += 1
        # double shift from the trailing 2x2 (exceptional shift on stalls)
        if stall % 10 == 0:
            exc = abs(h[ihi, ihi - 1]) + abs(h[ihi - 1, ihi - 2])
            h11 = 0.75 * exc + h[ihi, ihi]
            h12 = -0.4375 * exc
            h21 = exc
            h22 = h11
        else:
            h11, h12 = h[ihi - 1, ihi - 1], h[ihi - 1, ihi]
            h21, h22 = h[ihi, ihi - 1], h[ihi, ihi]
        tr = h11 + h22
        det = h11 * h22 - h12 * h21
        x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - tr * h[lo, lo] + det
        y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - tr)
        z = h[lo + 1, lo] * h[lo + 2, lo + 1]
        for k in range(lo, ihi):
            if k > lo:
                x = h[k, k - 1]
                y = h[k + 1, k - 1]
                z = h[k + 2, k - 1] if k + 2 <= ihi else 0.0
            m = 3 if k + 2 <= ihi else 2
            v0, v1, v2, beta = _householder3(x, y, z if m == 3 else 0.0)
            if beta != 0.0:
                v[0], v[1], v[2] = v0, v1, v2
                lo_col = k - 1 if k > 0 else 0
                hi_row = min(k + 3, ihi)
                _apply_reflector(h, q, k, v, beta, m, lo_col, hi_row)
            if k > lo:
                h[k + 1, k - 1] = 0.0
                if m == 3:
                    h[k + 2, k - 1] = 0.0
    _split_real_2x2_blocks(h, q)
    # scrub sub-subdiagonal rounding residue
    for i in range(2, n):
        h[i, : i - 1] = 0.0
    return h, q, 0


def cpqr(a):
    """Column-pivoted Householder QR: a[:, piv] = q @ r.

    Returns ``(q, r, piv)`` with q (m, m) orthogonal, r (m, n) upper
    triangular with non-increasing |r[k, k]|, piv an index array.  Column
    norms are recomputed each step (no downdating drift).
    """
    r = np.array(a, dtype=np.float64, copy=True, order="C")
    m, n = r.shape
    q = np.eye(m)
    piv = np.arange(n)
    for k in range(min(m, n)):
        norms2 = np.einsum("ij,ij->j", r[k:, k:], r[k:, k:])
        j = k + int(np.argmax(norms2))
        if norms2[j - k] <= 0.0:
            break
        if j != k:
            r[:, [k, j]] = r[:, [j, k]]
            piv[[k, j]] = piv[[j, k]]
        x = r[k:, k]
        alpha = np.sqrt(np.dot(x, x))
        if alpha == 0.0:
            break
        v = x.copy()
        v[0] += alpha if x[0] >= 0.0 else -alpha
        vnorm = np.sqrt(np.dot(v, v))
        if vnorm == 0.0:
            continue
        v /= vnorm
        r[k:, k:] -= 2.0 * np.outer(v, v @ r[k:, k:])
        q[:, k:] -= 2.0 * np.outer(q[:, k:] @ v, v)
    il, jl = np.tril_indices(m, k=-1, m=n)
    r[il, jl] = 0.0
    return q, r, piv


def _block_starts(t):
    """Diagonal block partition of a quasi-triangular matrix."""
    n = t.shape[0]
    starts = []
    sizes = []
    i = 0
    while i < n:
        if i + 1 < n and t[i + 1, i] != 0.0:
            starts.append(i)
            sizes.append(2)
            i += 2
        else:
            starts.append(i)
            sizes.append(1)
            i += 1
    return starts, sizes


def _sqrt_block(t, i, size):
    """Principal square root of one diagonal block; None if the spectrum
    touches (-inf, 0]."""
    if size == 1:
        v = t[i, i]
        if v <= 0.0:
            return None
        return np.array([[np.sqrt(v)]])
    blk = t[i : i + 2, i : i + 2]
    tr = blk[0, 0] + blk[1, 1]
    det = blk[0, 0] * blk[1, 1] - blk[0, 1] * blk[1, 0]
    if det <= 0.0:
        return None
    s = np.sqrt(det)
    denom2 = tr + 2.0 * s
    if denom2 <= 0.0:
        return None
    denom = np.sqrt(denom2)
    out = blk / denom
    out[0, 0] += s / denom
    out[1, 1] += s / denom
    return out


def quasi_sqrt(t):
    """Principal square root of an upper quasi-triangular matrix.

    Block recurrence over the diagonal partition; returns ``(x, info)``
    where info = 1 flags an eigenvalue on the closed negative real axis
    (or a singular Sylvester step) and 0 means success.
    """
    t = np.asarray(t, dtype=np.float64)
    n = t.shape[0]
    x = np.zeros_like(t)
    starts, sizes = _block_starts(t)
    nb = len(starts)
    for jb in range(nb):
        j0, js = starts[jb], sizes[jb]
        blk = _sqrt_block(t, j0, js)
        if blk is None:
            return x, 1
        x[j0 : j0 + js, j0 : j0 + js] = blk
        for ib in range(jb - 1, -1, -1):
            i0, isz = starts[ib], sizes[ib]
            rhs = t[i0 : i0 + isz, j0 : j0 + js].copy()
            for kb in range(ib + 1, jb):
                k0, ks = starts[kb], sizes[kb]
                rhs -= x[i0 : i0 + isz, k0 : k0 + ks] @ x[k0 : k0 + ks, j0 : j0 + js]
            xii = x[i0 : i0 + isz, i0 : i0 + isz]
            xjj = x[j0 : j0 + js, j0 : j0 + js]
            # solve xii @ Y + Y @ xjj = rhs (column-stacked Kronecker form)
            sys = np.kron(np.eye(js), xii) + np.kron(xjj.T, np.eye(isz))
            try:
                sol = np.linalg.solve(sys, rhs.reshape(-1, order="F"))
            except np.linalg.LinAlgError:
                return x, 1
            x[i0 : i0 + isz, j0 : j0 + js] = sol.reshape((isz, js), order="F")
    return x, 0
