"""Brute-force lattice box scanners backing the class enumerator's oracle.

Every scanner walks the integer box |v_i| <= caps[i] and keeps the points
that pair to zero with the rows of ``zrows``, satisfy |rows . v| <= bounds,
have the requested square, and are characteristic for the form.  The
compiled backend is a single int64 odometer loop; setting the environment
variable FOURFOLD_LAB_DISABLE_NUMBA to anything but "0" selects a chunked
numpy implementation with identical outputs.
"""

import itertools
import os

import numpy as np

ENV_FLAG = "FOURFOLD_LAB_DISABLE_NUMBA"

_njit_scan = None


def numba_disabled() -> bool:
    return os.environ.get(ENV_FLAG, "").strip() not in ("", "0")


def backend_name() -> str:
    return "numpy" if numba_disabled() else "numba"


def _get_njit_scan():
    global _njit_scan
    if _njit_scan is None:
        from numba import njit

        @njit(cache=True)
        def scan(q, rows, bounds, zrows, square, caps, out):  # pragma: no cover
            n = q.shape[0]
            v = np.empty(n, np.int64)
            total = np.int64(1)
            for i in range(n):
                v[i] = -caps[i]
                total *= 2 * caps[i] + 1
            count = 0
            for _ in range(total):
                ok = True
                for r in range(zrows.shape[0]):
                    s = np.int64(0)
                    for j in range(n):
                        s += zrows[r, j] * v[j]
                    if s != 0:
                        ok = False
                        break
                if ok:
                    for r in range(rows.shape[0]):
                        s = np.int64(0)
                        for j in range(n):
                            s += rows[r, j] * v[j]
                        if s > bounds[r] or -s > bounds[r]:
                            ok = False
                            break
                if ok:
                    sq = np.int64(0)
                    for i in range(n):
                        qi = np.int64(0)
                        for j in range(n):
                            qi += q[i, j] * v[j]
                        if (qi - q[i, i]) & 1 != 0:
                            ok = False
                            break
                        sq += v[i] * qi
                    if ok and sq != square:
                        ok = False
                if ok:
                    if count >= out.shape[0]:
                        return -1
                    for j in range(n):
                        out[count, j] = v[j]
                    count += 1
                i = n - 1
                while i >= 0:
                    if v[i] < caps[i]:
                        v[i] += 1
                        break
                    v[i] = -caps[i]
                    i -= 1
            return count

        _njit_scan = scan
    return _njit_scan


def _scan_numpy(q, rows, bounds, zrows, square, caps):
    n = q.shape[0]
    diag = np.diagonal(q)
    # vectorize a tail block of coordinates, iterate the rest in python
    tail = n
    size = 1
    while tail > 0 and size * (2 * int(caps[tail - 1]) + 1) <= 200_000:
        size *= 2 * int(caps[tail - 1]) + 1
        tail -= 1
    if tail < n:
        grids = np.meshgrid(
            *[np.arange(-int(c), int(c) + 1, dtype=np.int64) for c in caps[tail:]],
            indexing="ij",
        )
        tail_pts = np.stack([g.ravel() for g in grids], axis=1)
    else:
        tail_pts = np.zeros((1, 0), np.int64)
    head_iter = (
        itertools.product(*[range(-int(c), int(c) + 1) for c in caps[:tail]])
        if tail
        else iter([()])
    )
    out = []
    for head in head_iter:
        pts = np.empty((tail_pts.shape[0], n), np.int64)
        if tail:
            pts[:, :tail] = np.asarray(head, np.int64)
        pts[:, tail:] = tail_pts
        mask = np.ones(len(pts), bool)
        if zrows.size:
            mask &= (pts @ zrows.T == 0).all(axis=1)
        if rows.size:
            mask &= (np.abs(pts @ rows.T) <= bounds).all(axis=1)
        qv = pts @ q.T
        if n:
            mask &= ((qv - diag) % 2 == 0).all(axis=1)
        mask &= np.einsum("ij,ij->i", pts, qv) == square
        if mask.any():
            out.append(pts[mask])
    return np.concatenate(out) if out else np.zeros((0, n), np.int64)


def scan_box(q, rows, bounds, zrows, square, caps, backend=None):
    """All box points passing the four filters, lexicographically sorted.

    ``caps`` bounds each coordinate symmetrically.  Arguments must already
    be overflow-safe for int64; callers are expected to guard that.
    """
    q = np.ascontiguousarray(q, np.int64)
    n = q.shape[0]
    rows = np.ascontiguousarray(np.asarray(rows, np.int64).reshape(-1, n))
    bounds = np.ascontiguousarray(np.asarray(bounds, np.int64).reshape(-1))
    zrows = np.ascontiguousarray(np.asarray(zrows, np.int64).reshape(-1, n))
    caps = np.ascontiguousarray(np.asarray(caps, np.int64).reshape(-1))
    if backend is None:
        backend = backend_name()
    if backend == "numba":
        scan = _get_njit_scan()
        size = 1024
        while True:
            out = np.empty((size, n), np.int64)
            cnt = scan(q, rows, bounds, zrows, np.int64(square), caps, out)
            if cnt >= 0:
                res = out[:cnt].copy()
                break
            size *= 8
    elif backend == "numpy":
        res = _scan_numpy(q, rows, bounds, zrows, square, caps)
    else:
        raise ValueError(f"unknown scan backend {backend!r}")
    if len(res) > 1 and n:
        res = res[np.lexsort(res.T[::-1])]
    return res
