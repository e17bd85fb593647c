"""NumPy implementations of the compiled kernels in ``_kernels.pyx``.

Same signatures and return conventions. The Jacobi routine uses the
round-robin (parallel) ordering so that each step rotates ``n/2`` disjoint
pairs at once with array operations.
"""

from __future__ import annotations

import numpy as np


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    size = n + (n % 2)
    players = list(range(size))
    rounds = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            ps, qs = zip(*pairs)
            rounds.append((np.array(ps), np.array(qs)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(a: np.ndarray, rel_tol: float, max_sweeps: int):
    w = np.array(a, dtype=np.float64, copy=True)
    n = w.shape[0]
    target = rel_tol * np.linalg.norm(w)
    rounds = _round_robin(n)
    sweep = 0
    converged = False
    while True:
        off = np.linalg.norm(w - np.diag(np.diag(w)))
        if off <= target:
            converged = True
            break
        if sweep >= max_sweeps:
            break
        sweep += 1
        for ps, qs in rounds:
            apq = w[ps, qs]
            active = apq != 0.0
            if not active.any():
                continue
            ps, qs, apq = ps[active], qs[active], apq[active]
            with np.errstate(over="ignore"):
                theta = (w[qs, qs] - w[ps, ps]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            t = np.where(theta == 0.0, 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            colp, colq = w[:, ps].copy(), w[:, qs].copy()
            w[:, ps] = c * colp - s * colq
            w[:, qs] = s * colp + c * colq
            rowp, rowq = w[ps, :].copy(), w[qs, :].copy()
            cc, sc = c[:, None], s[:, None]
            w[ps, :] = cc * rowp - sc * rowq
            w[qs, :] = sc * rowp + cc * rowq
            w[ps, qs] = 0.0
            w[qs, ps] = 0.0
        w = 0.5 * (w + w.T)
    return np.diag(w).copy(), converged, sweep


def associativity_violation(op: np.ndarray):
    n = op.shape[0]
    for a in range(n):
        lhs = op[op[a]]          # lhs[b, c] = (a b) c
        rhs = op[a][op]          # rhs[b, c] = a (b c)
        bad = np.argwhere(lhs != rhs)
        if len(bad):
            b, c = bad[0]
            return (a, int(b), int(c))
    return None


def _class_blocks(op, members, offsets):
    nv = len(offsets) - 1
    groups = [members[offsets[u]:offsets[u + 1]] for u in range(nv)]
    for u in range(nv):
        for v in range(u + 1, nv):
            cu, cv = groups[u], groups[v]
            yield u, v, op[np.ix_(cu, cv)] == op[np.ix_(cv, cu)].T


def class_pairs_all_noncommuting(op, members, offsets):
    nv = len(offsets) - 1
    adj = np.zeros((nv, nv), dtype=np.uint8)
    for u, v, commute in _class_blocks(op, members, offsets):
        if not commute.any():
            adj[u, v] = adj[v, u] = 1
    return adj


def class_pairs_any_commuting(op, members, offsets):
    nv = len(offsets) - 1
    adj = np.zeros((nv, nv), dtype=np.uint8)
    for u, v, commute in _class_blocks(op, members, offsets):
        if commute.any():
            adj[u, v] = adj[v, u] = 1
    return adj
