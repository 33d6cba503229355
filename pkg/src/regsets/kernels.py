"""Hot counting kernels, each with a numba-jitted and a pure-numpy twin.

Every heavy loop of the package lands here: secant counting over all lines
of the plane, value histograms for curve/line intersection scans, and
exhaustive codeword weight enumeration.

Backend selection is controlled by the ``REGSETS_BACKEND`` environment
variable read at import time:

* ``auto`` (default) - numba when importable, else numpy;
* ``numba``          - require numba, fail loudly if missing;
* ``numpy``          - force the pure-numpy fallback.

``benchmarks/kernel_bench.py`` times the two backends against each other.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

_ENV_VAR = "REGSETS_BACKEND"
_choice = os.environ.get(_ENV_VAR, "auto").lower()
if _choice not in ("auto", "numba", "numpy"):
    raise RuntimeError(f"{_ENV_VAR} must be auto, numba or numpy (got {_choice!r})")

_numba = None
if _choice != "numpy":
    try:
        import numba as _numba
    except ImportError:
        if _choice == "numba":
            raise RuntimeError(f"{_ENV_VAR}=numba but numba is not importable")

USING_NUMBA = _numba is not None


# ----------------------------------------------------------------------
# pure-numpy implementations
# ----------------------------------------------------------------------
def _affine_secant_counts_numpy(grid, add_t, mul_t, m_lo, m_hi):
    """Counts C[m-m_lo, d] of affine points of the set on the line y = m*x + d.

    grid is the Q x Q uint8 membership matrix (grid[x, y]).
    """
    q = grid.shape[0]
    out = np.empty((m_hi - m_lo, q), dtype=np.int32)
    for m in range(m_lo, m_hi):
        y_idx = add_t[mul_t[m]]  # y_idx[x, d] = m*x + d
        out[m - m_lo] = np.take_along_axis(grid, y_idx, axis=1).sum(axis=0, dtype=np.int32)
    return out


def _slope_value_hists_numpy(g, tr, mul_t, sub_t, m_lo, m_hi):
    """Histograms H[m-m_lo, v] = #{x : g[x] - tr[m*x] == v}.

    The number of points of the curve {tr(y + f(x)) == norm(x)} on the line
    y = m*x + d is then H[m, tr[d]], with g[x] = norm(x) - tr(f(x)).
    """
    q = tr.shape[0]
    out = np.empty((m_hi - m_lo, q), dtype=np.int32)
    for m in range(m_lo, m_hi):
        v = sub_t[g, tr[mul_t[m]]]
        out[m - m_lo] = np.bincount(v, minlength=q)
    return out


def _codeword_weight_hist_numpy(c0, c1, c2, add_t, mul_t):
    """Weight histogram of all Q^3 codewords u0*c0 + u1*c1 + u2*c2."""
    q = add_t.shape[0]
    n = c0.shape[0]
    hist = np.zeros(n + 1, dtype=np.int64)
    m2 = mul_t[:, c2]  # (q, n): row u2 = u2 * c2
    for u0 in range(q):
        r0 = mul_t[u0, c0]
        for u1 in range(q):
            r01 = add_t[r0, mul_t[u1, c1]]
            cw = add_t[r01[None, :], m2]
            w = np.count_nonzero(cw, axis=1)
            hist += np.bincount(w, minlength=n + 1)
    return hist


_NUMPY = SimpleNamespace(
    affine_secant_counts=_affine_secant_counts_numpy,
    slope_value_hists=_slope_value_hists_numpy,
    codeword_weight_hist=_codeword_weight_hist_numpy,
)


# ----------------------------------------------------------------------
# numba twins (loop bodies; jitted lazily on first call)
# ----------------------------------------------------------------------
def _affine_secant_counts_loops(grid, add_t, mul_t, m_lo, m_hi):
    q = grid.shape[0]
    out = np.zeros((m_hi - m_lo, q), dtype=np.int32)
    for m in range(m_lo, m_hi):
        row = out[m - m_lo]
        for x in range(q):
            mx = mul_t[m, x]
            gx = grid[x]
            ax = add_t[mx]
            for d in range(q):
                row[d] += gx[ax[d]]
    return out


def _slope_value_hists_loops(g, tr, mul_t, sub_t, m_lo, m_hi):
    q = tr.shape[0]
    out = np.zeros((m_hi - m_lo, q), dtype=np.int32)
    for m in range(m_lo, m_hi):
        row = out[m - m_lo]
        for x in range(q):
            row[sub_t[g[x], tr[mul_t[m, x]]]] += 1
    return out


def _codeword_weight_hist_loops(c0, c1, c2, add_t, mul_t):
    q = add_t.shape[0]
    n = c0.shape[0]
    hist = np.zeros(n + 1, dtype=np.int64)
    for u0 in range(q):
        for u1 in range(q):
            r01 = np.empty(n, dtype=np.int32)
            for j in range(n):
                r01[j] = add_t[mul_t[u0, c0[j]], mul_t[u1, c1[j]]]
            for u2 in range(q):
                w = 0
                for j in range(n):
                    if add_t[r01[j], mul_t[u2, c2[j]]] != 0:
                        w += 1
                hist[w] += 1
    return hist


if USING_NUMBA:
    _jit = _numba.njit(cache=True, nogil=True)
    _NUMBA_NS = SimpleNamespace(
        affine_secant_counts=_jit(_affine_secant_counts_loops),
        slope_value_hists=_jit(_slope_value_hists_loops),
        codeword_weight_hist=_jit(_codeword_weight_hist_loops),
    )
else:
    _NUMBA_NS = None

BACKENDS = {"numpy": _NUMPY, "numba": _NUMBA_NS}
_active = _NUMBA_NS if USING_NUMBA else _NUMPY


def backend_name() -> str:
    return "numba" if USING_NUMBA else "numpy"


def get_backend(name: str) -> SimpleNamespace:
    ns = BACKENDS.get(name)
    if ns is None:
        raise ValueError(f"backend {name!r} not available")
    return ns


# ----------------------------------------------------------------------
# public entry points (chunkable over the slope range for worker pools)
# ----------------------------------------------------------------------
def _chunks(total, workers):
    workers = max(1, min(workers, total))
    step = -(-total // workers)
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_chunked(fn, total, workers, args):
    parts = _chunks(total, workers)
    if len(parts) == 1:
        return fn(*args, 0, total)
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=len(parts)) as pool:
        futs = [pool.submit(fn, *args, lo, hi) for lo, hi in parts]
        rows = [f.result() for f in futs]
    return np.concatenate(rows, axis=0)


def affine_secant_counts(grid, add_t, mul_t, workers: int = 1) -> np.ndarray:
    """(Q, Q) matrix C with C[m, d] = affine points of the set on y = m*x + d."""
    grid = np.ascontiguousarray(grid, dtype=np.uint8)
    return _run_chunked(_active.affine_secant_counts, grid.shape[0], workers, (grid, add_t, mul_t))


def slope_value_hists(g, tr, mul_t, sub_t, workers: int = 1) -> np.ndarray:
    """(Q, Q) histogram matrix H with H[m, v] = #{x : g[x] - tr[m*x] == v}."""
    g = np.ascontiguousarray(g, dtype=np.int32)
    tr = np.ascontiguousarray(tr, dtype=np.int32)
    return _run_chunked(_active.slope_value_hists, tr.shape[0], workers, (g, tr, mul_t, sub_t))


def codeword_weight_hist(c0, c1, c2, add_t, mul_t) -> np.ndarray:
    """Weight histogram over all Q^3 codewords of the rank-3 generator rows."""
    c0 = np.ascontiguousarray(c0, dtype=np.int32)
    c1 = np.ascontiguousarray(c1, dtype=np.int32)
    c2 = np.ascontiguousarray(c2, dtype=np.int32)
    return _active.codeword_weight_hist(c0, c1, c2, add_t, mul_t)
