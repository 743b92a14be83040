# cython: boundscheck=False, wraparound=False, cdivision=True
"""Dense kernels, compiled lane.

Same contract as ``_kernels_pure``: float64 arrays in, float64 arrays out,
integer status codes instead of exceptions.
"""

import numpy as np

from libc.math cimport fabs, sqrt

BACKEND_NAME = "compiled"

cdef double _EPS = 2.220446049250313e-16


cdef void _hessenberg(double[:, ::1] h, double[:, ::1] q, double[::1] v) noexcept:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t k, i, j
    cdef double alpha, vnorm, s
    for k in range(n - 2):
        alpha = 0.0
        for i in range(k + 1, n):
            alpha += h[i, k] * h[i, k]
        alpha = sqrt(alpha)
        if alpha == 0.0:
            continue
        for i in range(k + 1, n):
            v[i] = h[i, k]
        if h[k + 1, k] >= 0.0:
            v[k + 1] += alpha
        else:
            v[k + 1] -= alpha
        vnorm = 0.0
        for i in range(k + 1, n):
            vnorm += v[i] * v[i]
        vnorm = sqrt(vnorm)
        if vnorm == 0.0:
            continue
        for i in range(k + 1, n):
            v[i] /= vnorm
        for j in range(k, n):
            s = 0.0
            for i in range(k + 1, n):
                s += v[i] * h[i, j]
            s *= 2.0
            for i in range(k + 1, n):
                h[i, j] -= s * v[i]
        for i in range(n):
            s = 0.0
            for j in range(k + 1, n):
                s += h[i, j] * v[j]
            s *= 2.0
            for j in range(k + 1, n):
                h[i, j] -= s * v[j]
        for i in range(n):
            s = 0.0
            for j in range(k + 1, n):
                s += q[i, j] * v[j]
            s *= 2.0
            for j in range(k + 1, n):
                q[i, j] -= s * v[j]
        for i in range(k + 2, n):
            h[i, k] = 0.0


cdef void _apply_reflector(double[:, ::1] h, double[:, ::1] q,
                           Py_ssize_t k, double v0, double v1, double v2,
                           double beta, int m, Py_ssize_t lo_col,
                           Py_ssize_t hi_row) noexcept:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t i, j
    cdef double s
    for j in range(lo_col, n):
        s = v0 * h[k, j] + v1 * h[k + 1, j]
        if m == 3:
            s += v2 * h[k + 2, j]
        s *= beta
        h[k, j] -= s * v0
        h[k + 1, j] -= s * v1
        if m == 3:
            h[k + 2, j] -= s * v2
    for i in range(hi_row + 1):
        s = h[i, k] * v0 + h[i, k + 1] * v1
        if m == 3:
            s += h[i, k + 2] * v2
        s *= beta
        h[i, k] -= s * v0
        h[i, k + 1] -= s * v1
        if m == 3:
            h[i, k + 2] -= s * v2
    for i in range(n):
        s = q[i, k] * v0 + q[i, k + 1] * v1
        if m == 3:
            s += q[i, k + 2] * v2
        s *= beta
        q[i, k] -= s * v0
        q[i, k + 1] -= s * v1
        if m == 3:
            q[i, k + 2] -= s * v2


cdef void _split_real_2x2_blocks(double[:, ::1] h, double[:, ::1] q) noexcept:
    cdef Py_ssize_t n = h.shape[0]
    cdef Py_ssize_t i = 0
    cdef Py_ssize_t j
    cdef double a, b, c, d, disc, sq, t, lam
    cdef double v1x, v1y, v2x, v2y, vx, vy, nv, cs, sn, r0, r1
    while i < n - 1:
        if h[i + 1, i] == 0.0:
            i += 1
            continue
        a = h[i, i]
        b = h[i, i + 1]
        c = h[i + 1, i]
        d = h[i + 1, i + 1]
        disc = (a - d) * (a - d) + 4.0 * b * c
        if disc < 0.0:
            i += 2
            continue
        sq = sqrt(disc)
        t = a + d
        if t >= 0.0:
            lam = 0.5 * (t + sq)
        else:
            lam = 0.5 * (t - sq)
        v1x = b
        v1y = lam - a
        v2x = lam - d
        v2y = c
        if v1x * v1x + v1y * v1y >= v2x * v2x + v2y * v2y:
            vx = v1x
            vy = v1y
        else:
            vx = v2x
            vy = v2y
        nv = sqrt(vx * vx + vy * vy)
        if nv == 0.0:
            vx = 1.0
            vy = 0.0
            nv = 1.0
        cs = vx / nv
        sn = vy / nv
        # rows i, i+1 from the left with G^T, columns from the right with G
        for j in range(n):
            r0 = cs * h[i, j] + sn * h[i + 1, j]
            r1 = -sn * h[i, j] + cs * h[i + 1, j]
            h[i, j] = r0
            h[i + 1, j] = r1
        for j in range(n):
            r0 = h[j, i] * cs + h[j, i + 1] * sn
            r1 = -h[j, i] * sn + h[j, i + 1] * cs
            h[j, i] = r0
            h[j, i + 1] = r1
            r0 = q[j, i] * cs + q[j, i + 1] * sn
            r1 = -q[j, i] * sn + q[j, i + 1] * cs
            q[j, i] = r0
            q[j, i + 1] = r1
        h[i + 1, i] = 0.0
        i += 2


def schur_full(a, subdiag_tol, max_sweeps):
    """Real Schur decomposition a = q t q^T; see the pure lane docstring."""
    h_arr = np.array(a, dtype=np.float64, copy=True, order="C")
    cdef Py_ssize_t n = h_arr.shape[0]
    q_arr = np.eye(n)
    if n <= 1:
        return h_arr, q_arr, 0
    cdef double[:, ::1] h = h_arr
    cdef double[:, ::1] q = q_arr
    v_arr = np.empty(n)
    cdef double[::1] vbuf = v_arr
    _hessenberg(h, q, vbuf)
    cdef double unorm = float(np.linalg.norm(h_arr))
    if unorm == 0.0:
        return h_arr, q_arr, 0
    cdef double rel = min(float(subdiag_tol), 16.0 * _EPS)
    cdef double floor = 8.0 * _EPS * unorm
    cdef Py_ssize_t ihi = n - 1
    cdef long sweeps = 0
    cdef long budget = int(max_sweeps)
    cdef long stall = 0
    cdef Py_ssize_t lo, k, i
    cdef double s, thr, h11, h12, h21, h22, tr, det, x, y, z
    cdef double alpha, v0, v1, v2, vnorm2, beta
    cdef int m
    cdef Py_ssize_t lo_col, hi_row
    while ihi > 0:
        lo = ihi
        while lo > 0:
            s = fabs(h[lo - 1, lo - 1]) + fabs(h[lo, lo])
            thr = rel * s
            if thr < floor:
                thr = floor
            if fabs(h[lo, lo - 1]) <= thr:
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
        if sweeps >= budget:
            return h_arr, q_arr, 1
        sweeps += 1
        stall += 1
        if stall % 10 == 0:
            s = fabs(h[ihi, ihi - 1]) + fabs(h[ihi - 1, ihi - 2])
            h11 = 0.75 * s + h[ihi, ihi]
            h12 = -0.4375 * s
            h21 = s
            h22 = h11
        else:
            h11 = h[ihi - 1, ihi - 1]
            h12 = h[ihi - 1, ihi]
            h21 = h[ihi, ihi - 1]
            h22 = h[ihi, ihi]
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
            if m == 2:
                z = 0.0
            alpha = sqrt(x * x + y * y + z * z)
            if alpha != 0.0:
                v0 = x + alpha if x >= 0.0 else x - alpha
                v1 = y
                v2 = z
                vnorm2 = v0 * v0 + v1 * v1 + v2 * v2
                if vnorm2 != 0.0:
                    beta = 2.0 / vnorm2
                    lo_col = k - 1 if k > 0 else 0
                    hi_row = k + 3 if k + 3 < ihi else ihi
                    _apply_reflector(h, q, k, v0, v1, v2, beta, m, lo_col, hi_row)
            if k > lo:
                h[k + 1, k - 1] = 0.0
                if m == 3:
                    h[k + 2, k - 1] = 0.0
    _split_real_2x2_blocks(h, q)
    for i in range(2, n):
        for k in range(i - 1):
            h[i, k] = 0.0
    return h_arr, q_arr, 0


def cpqr(a):
    """Column-pivoted Householder QR: a[:, piv] = q @ r; see the pure lane."""
    r_arr = np.array(a, dtype=np.float64, copy=True, order="C")
    cdef Py_ssize_t m = r_arr.shape[0]
    cdef Py_ssize_t n = r_arr.shape[1]
    q_arr = np.eye(m)
    piv_arr = np.arange(n, dtype=np.int64)
    cdef double[:, ::1] r = r_arr
    cdef double[:, ::1] q = q_arr
    cdef long long[::1] piv = piv_arr
    v_arr = np.empty(m)
    cdef double[::1] v = v_arr
    cdef Py_ssize_t k, i, j, jbest
    cdef long long ptmp
    cdef double best, s, alpha, vnorm, tmp
    cdef Py_ssize_t kmax = m if m < n else n
    for k in range(kmax):
        best = -1.0
        jbest = k
        for j in range(k, n):
            s = 0.0
            for i in range(k, m):
                s += r[i, j] * r[i, j]
            if s > best:
                best = s
                jbest = j
        if best <= 0.0:
            break
        if jbest != k:
            for i in range(m):
                tmp = r[i, k]
                r[i, k] = r[i, jbest]
                r[i, jbest] = tmp
            ptmp = piv[k]
            piv[k] = piv[jbest]
            piv[jbest] = ptmp
        alpha = 0.0
        for i in range(k, m):
            alpha += r[i, k] * r[i, k]
        alpha = sqrt(alpha)
        if alpha == 0.0:
            break
        for i in range(k, m):
            v[i] = r[i, k]
        if r[k, k] >= 0.0:
            v[k] += alpha
        else:
            v[k] -= alpha
        vnorm = 0.0
        for i in range(k, m):
            vnorm += v[i] * v[i]
        vnorm = sqrt(vnorm)
        if vnorm == 0.0:
            continue
        for i in range(k, m):
            v[i] /= vnorm
        for j in range(k, n):
            s = 0.0
            for i in range(k, m):
                s += v[i] * r[i, j]
            s *= 2.0
            for i in range(k, m):
                r[i, j] -= s * v[i]
        for i in range(m):
            s = 0.0
            for j in range(k, m):
                s += q[i, j] * v[j]
            s *= 2.0
            for j in range(k, m):
                q[i, j] -= s * v[j]
        for i in range(k + 1, m):
            r[i, k] = 0.0
    for i in range(1, m):
        for j in range(i if i < n else n):
            if j < i:
                r[i, j] = 0.0
    return q_arr, r_arr, piv_arr


cdef int _gauss_solve(double[:, ::1] sys, double[::1] rhs, Py_ssize_t n) noexcept:
    """In-place partial-pivoting solve for the tiny Sylvester systems."""
    cdef Py_ssize_t i, j, k, p
    cdef double best, tmp, f
    for k in range(n):
        best = fabs(sys[k, k])
        p = k
        for i in range(k + 1, n):
            if fabs(sys[i, k]) > best:
                best = fabs(sys[i, k])
                p = i
        if best == 0.0:
            return 1
        if p != k:
            for j in range(n):
                tmp = sys[k, j]
                sys[k, j] = sys[p, j]
                sys[p, j] = tmp
            tmp = rhs[k]
            rhs[k] = rhs[p]
            rhs[p] = tmp
        for i in range(k + 1, n):
            f = sys[i, k] / sys[k, k]
            if f != 0.0:
                for j in range(k, n):
                    sys[i, j] -= f * sys[k, j]
                rhs[i] -= f * rhs[k]
    for k in range(n - 1, -1, -1):
        f = rhs[k]
        for j in range(k + 1, n):
            f -= sys[k, j] * rhs[j]
        rhs[k] = f / sys[k, k]
    return 0


def quasi_sqrt(t):
    """Principal square root of an upper quasi-triangular matrix; see the
    pure lane docstring."""
    t_arr = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t n = t_arr.shape[0]
    x_arr = np.zeros((n, n))
    cdef double[:, ::1] tv = t_arr
    cdef double[:, ::1] x = x_arr
    starts_arr = np.empty(n, dtype=np.int64)
    sizes_arr = np.empty(n, dtype=np.int64)
    cdef long long[::1] starts = starts_arr
    cdef long long[::1] sizes = sizes_arr
    cdef Py_ssize_t nb = 0
    cdef Py_ssize_t i = 0
    while i < n:
        starts[nb] = i
        if i + 1 < n and tv[i + 1, i] != 0.0:
            sizes[nb] = 2
            i += 2
        else:
            sizes[nb] = 1
            i += 1
        nb += 1
    sys_arr = np.empty((4, 4))
    rhs_arr = np.empty(4)
    cdef double[:, ::1] sysv = sys_arr
    cdef double[::1] rhsv = rhs_arr
    cdef Py_ssize_t jb, ib, kb, j0, js, i0, isz, k0, ks, p, r, c, dim
    cdef double tr, det, sroot, denom2, denom, val
    cdef double acc
    for jb in range(nb):
        j0 = starts[jb]
        js = sizes[jb]
        if js == 1:
            val = tv[j0, j0]
            if val <= 0.0:
                return x_arr, 1
            x[j0, j0] = sqrt(val)
        else:
            tr = tv[j0, j0] + tv[j0 + 1, j0 + 1]
            det = tv[j0, j0] * tv[j0 + 1, j0 + 1] - tv[j0, j0 + 1] * tv[j0 + 1, j0]
            if det <= 0.0:
                return x_arr, 1
            sroot = sqrt(det)
            denom2 = tr + 2.0 * sroot
            if denom2 <= 0.0:
                return x_arr, 1
            denom = sqrt(denom2)
            x[j0, j0] = (tv[j0, j0] + sroot) / denom
            x[j0, j0 + 1] = tv[j0, j0 + 1] / denom
            x[j0 + 1, j0] = tv[j0 + 1, j0] / denom
            x[j0 + 1, j0 + 1] = (tv[j0 + 1, j0 + 1] + sroot) / denom
        for ib in range(jb - 1, -1, -1):
            i0 = starts[ib]
            isz = sizes[ib]
            # rhs = t[i-block, j-block] - sum_k x[i,k] x[k,j], column-stacked
            for c in range(js):
                for r in range(isz):
                    acc = tv[i0 + r, j0 + c]
                    for kb in range(ib + 1, jb):
                        k0 = starts[kb]
                        ks = sizes[kb]
                        for p in range(ks):
                            acc -= x[i0 + r, k0 + p] * x[k0 + p, j0 + c]
                    rhsv[c * isz + r] = acc
            # sys = kron(I_js, xii) + kron(xjj^T, I_isz)
            dim = isz * js
            for r in range(dim):
                for c in range(dim):
                    sysv[r, c] = 0.0
            for p in range(js):
                for r in range(isz):
                    for c in range(isz):
                        sysv[p * isz + r, p * isz + c] += x[i0 + r, i0 + c]
            for p in range(js):
                for c in range(js):
                    for r in range(isz):
                        sysv[p * isz + r, c * isz + r] += x[j0 + c, j0 + p]
            if _gauss_solve(sysv[:dim, :dim], rhsv[:dim], dim) != 0:
                return x_arr, 1
            for c in range(js):
                for r in range(isz):
                    x[i0 + r, j0 + c] = rhsv[c * isz + r]
    return x_arr, 0
