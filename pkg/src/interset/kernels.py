"""Hot scoring loops, runnable compiled or interpreted.

Both backends execute the same source. The plain functions below are the
interpreted implementations; the compiled backend is produced by applying
numba.njit to the very same function objects. Every kernel returns integer
counts only, so backend choice affects speed, never results.

Select a backend with set_backend("numba" | "python") or by exporting
INTERSET_BACKEND before import. Default: numba when importable, else python.

All kernels operate on CSR adjacency arrays (int64 indptr/indices) and use
epoch stamping for scratch state: a slot is "set" when it holds the current
epoch value, so resetting between developers is O(1).
"""

from __future__ import annotations

import os
import warnings

import numpy as np


def _cross_pair_stats(
    start,
    end,
    r_indptr,
    r_items,
    q_indptr,
    q_items,
    rt_indptr,
    rt_idx,
    qt_indptr,
    qt_idx,
    n_tags,
    subset_mode,
    out_shared_r,
    out_shared_q,
):
    """Shared-item counts for developers start..end over two item CSRs.

    r_*/q_* give each developer's items on either platform (any restriction
    of kinds; the caller picks the rows). rt_*/qt_* map items to interest
    tags. A tag is common when it appears on both sides of the developer's
    row, and an item counts as shared when its tag set meets the common set:
    nonempty intersection, or (subset_mode == 1) nonempty and fully inside.
    """
    gh_mark = np.zeros(n_tags, np.int64)
    so_mark = np.zeros(n_tags, np.int64)
    for d in range(start, end):
        epoch = d + 1
        for ii in range(r_indptr[d], r_indptr[d + 1]):
            item = r_items[ii]
            for tt in range(rt_indptr[item], rt_indptr[item + 1]):
                gh_mark[rt_idx[tt]] = epoch
        for ii in range(q_indptr[d], q_indptr[d + 1]):
            item = q_items[ii]
            for tt in range(qt_indptr[item], qt_indptr[item + 1]):
                so_mark[qt_idx[tt]] = epoch

        shared_r = 0
        for ii in range(r_indptr[d], r_indptr[d + 1]):
            item = r_items[ii]
            lo = rt_indptr[item]
            hi = rt_indptr[item + 1]
            if subset_mode == 1:
                ok = hi > lo
                for tt in range(lo, hi):
                    t = rt_idx[tt]
                    if gh_mark[t] != epoch or so_mark[t] != epoch:
                        ok = False
                        break
            else:
                ok = False
                for tt in range(lo, hi):
                    t = rt_idx[tt]
                    if gh_mark[t] == epoch and so_mark[t] == epoch:
                        ok = True
                        break
            if ok:
                shared_r += 1
        out_shared_r[d] = shared_r

        shared_q = 0
        for ii in range(q_indptr[d], q_indptr[d + 1]):
            item = q_items[ii]
            lo = qt_indptr[item]
            hi = qt_indptr[item + 1]
            if subset_mode == 1:
                ok = hi > lo
                for tt in range(lo, hi):
                    t = qt_idx[tt]
                    if gh_mark[t] != epoch or so_mark[t] != epoch:
                        ok = False
                        break
            else:
                ok = False
                for tt in range(lo, hi):
                    t = qt_idx[tt]
                    if gh_mark[t] == epoch and so_mark[t] == epoch:
                        ok = True
                        break
            if ok:
                shared_q += 1
        out_shared_q[d] = shared_q


def _co_neighbor_stats(
    d,
    epoch,
    di_indptr,
    di_items,
    id_indptr,
    id_devs,
    it_indptr,
    it_idx,
    tag_mark,
    dev_mark,
    item_mark,
    item_ok,
    nb_buf,
    shared_buf,
    deg_buf,
):
    """Per-neighbor overlap stats for one developer and one activity kind.

    di_* is developer -> items of the kind, id_* its transpose, it_* maps
    items to tags. Writes each co-participant o into nb_buf with
    shared_buf = #items of o meeting d's tag union and deg_buf = |items(o)|;
    returns the neighbor count. Scratch arrays are caller-owned and epoch
    must strictly increase between calls on the same scratch.
    """
    for ii in range(di_indptr[d], di_indptr[d + 1]):
        item = di_items[ii]
        for tt in range(it_indptr[item], it_indptr[item + 1]):
            tag_mark[it_idx[tt]] = epoch

    nn = 0
    for ii in range(di_indptr[d], di_indptr[d + 1]):
        item = di_items[ii]
        for jj in range(id_indptr[item], id_indptr[item + 1]):
            o = id_devs[jj]
            if o == d or dev_mark[o] == epoch:
                continue
            dev_mark[o] = epoch
            lo = di_indptr[o]
            hi = di_indptr[o + 1]
            cnt = 0
            for kk in range(lo, hi):
                oi = di_items[kk]
                if item_mark[oi] != epoch:
                    # Eligibility depends only on d's stamp, so memoize
                    # per item across all neighbors of this call.
                    item_mark[oi] = epoch
                    ok = 0
                    for tt in range(it_indptr[oi], it_indptr[oi + 1]):
                        if tag_mark[it_idx[tt]] == epoch:
                            ok = 1
                            break
                    item_ok[oi] = ok
                if item_ok[oi] == 1:
                    cnt += 1
            nb_buf[nn] = o
            shared_buf[nn] = cnt
            deg_buf[nn] = hi - lo
            nn += 1
    return nn


_PY_IMPLS = {
    "cross_pair_stats": _cross_pair_stats,
    "co_neighbor_stats": _co_neighbor_stats,
}

_JIT_IMPLS: dict | None = None

_active = dict(_PY_IMPLS)
_backend_name = "python"


def _compile_jit() -> dict:
    global _JIT_IMPLS
    if _JIT_IMPLS is None:
        from numba import njit

        deco = njit(cache=True, nogil=True)
        _JIT_IMPLS = {name: deco(fn) for name, fn in _PY_IMPLS.items()}
    return _JIT_IMPLS


def available_backends() -> tuple[str, ...]:
    try:
        import numba  # noqa: F401
    except ImportError:
        return ("python",)
    return ("numba", "python")


def set_backend(name: str) -> None:
    """Switch the active kernel backend ("numba" or "python")."""
    global _active, _backend_name
    if name == "python":
        _active = dict(_PY_IMPLS)
    elif name == "numba":
        _active = _compile_jit()
    else:
        raise ValueError(f"unknown backend {name!r}; expected 'numba' or 'python'")
    _backend_name = name


def get_backend() -> str:
    return _backend_name


def cross_pair_stats(*args):
    return _active["cross_pair_stats"](*args)


def co_neighbor_stats(*args):
    return _active["co_neighbor_stats"](*args)


def _initial_backend() -> str:
    avail = available_backends()
    want = os.environ.get("INTERSET_BACKEND", "").strip().lower()
    if want:
        if want in avail:
            return want
        warnings.warn(
            f"INTERSET_BACKEND={want!r} is not available; falling back to {avail[0]!r}",
            RuntimeWarning,
            stacklevel=2,
        )
    return avail[0]


set_backend(_initial_backend())
