# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops: cyclic Jacobi, associativity scan, class-pair commutation scans."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()


def jacobi_eigenvalues(const double[:, ::1] a, double rel_tol, int max_sweeps):
    """Cyclic row-by-row Jacobi on a private copy of ``a``.

    Returns ``(eigenvalues, converged, sweeps)``; eigenvalues are unsorted.
    """
    cdef Py_ssize_t n = a.shape[0]
    cdef double[:, ::1] w = np.array(a, dtype=np.float64, copy=True)
    cdef Py_ssize_t p, q, r
    cdef double apq, theta, t, c, s, tau, arp, arq, off, norm, target
    cdef int sweep = 0
    cdef bint converged = False

    norm = 0.0
    for p in range(n):
        for q in range(n):
            norm += w[p, q] * w[p, q]
    norm = sqrt(norm)
    target = rel_tol * norm

    while True:
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += w[p, q] * w[p, q]
        off = sqrt(2.0 * off)
        if off <= target:
            converged = True
            break
        if sweep >= max_sweeps:
            break
        sweep += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p, q]
                if apq == 0.0:
                    continue
                theta = (w[q, q] - w[p, p]) / (2.0 * apq)
                if fabs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (fabs(theta) + sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / sqrt(t * t + 1.0)
                s = t * c
                tau = s / (1.0 + c)
                w[p, p] -= t * apq
                w[q, q] += t * apq
                w[p, q] = 0.0
                w[q, p] = 0.0
                for r in range(n):
                    if r == p or r == q:
                        continue
                    arp = w[r, p]
                    arq = w[r, q]
                    w[r, p] = arp - s * (arq + tau * arp)
                    w[r, q] = arq + s * (arp - tau * arq)
                    w[p, r] = w[r, p]
                    w[q, r] = w[r, q]

    out = np.empty(n, dtype=np.float64)
    cdef double[::1] ov = out
    for p in range(n):
        ov[p] = w[p, p]
    return out, bool(converged), sweep


def associativity_violation(const int[:, ::1] op):
    """First triple ``(a, b, c)`` with ``(ab)c != a(bc)``, or ``None``."""
    cdef Py_ssize_t n = op.shape[0]
    cdef Py_ssize_t a, b, c
    cdef int ab
    for a in range(n):
        for b in range(n):
            ab = op[a, b]
            for c in range(n):
                if op[ab, c] != op[a, op[b, c]]:
                    return (int(a), int(b), int(c))
    return None


def class_pairs_all_noncommuting(const int[:, ::1] op, const int[::1] members, const int[::1] offsets):
    """Adjacency of classes where no member pair commutes (zero diagonal)."""
    cdef Py_ssize_t nv = offsets.shape[0] - 1
    out = np.zeros((nv, nv), dtype=np.uint8)
    cdef unsigned char[:, ::1] adj = out
    cdef Py_ssize_t u, v, i, j
    cdef int x, y
    cdef bint ok
    for u in range(nv):
        for v in range(u + 1, nv):
            ok = True
            for i in range(offsets[u], offsets[u + 1]):
                x = members[i]
                for j in range(offsets[v], offsets[v + 1]):
                    y = members[j]
                    if op[x, y] == op[y, x]:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                adj[u, v] = 1
                adj[v, u] = 1
    return out


def class_pairs_any_commuting(const int[:, ::1] op, const int[::1] members, const int[::1] offsets):
    """Adjacency of classes where some member pair commutes (zero diagonal)."""
    cdef Py_ssize_t nv = offsets.shape[0] - 1
    out = np.zeros((nv, nv), dtype=np.uint8)
    cdef unsigned char[:, ::1] adj = out
    cdef Py_ssize_t u, v, i, j
    cdef int x, y
    cdef bint found
    for u in range(nv):
        for v in range(u + 1, nv):
            found = False
            for i in range(offsets[u], offsets[u + 1]):
                x = members[i]
                for j in range(offsets[v], offsets[v + 1]):
                    y = members[j]
                    if op[x, y] == op[y, x]:
                        found = True
                        break
                if found:
                    break
            if found:
                adj[u, v] = 1
                adj[v, u] = 1
    return out
