"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise, or
when ``ZSUMSEP_PURE=1`` is set, the pure-Python ``_pykernels`` run instead.
Both produce identical results in identical order.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels

if os.environ.get("ZSUMSEP_PURE") == "1" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "cython"


def get(name=None):
    return BACKENDS[name or BACKEND]


def zsf_atoms(tab, elems, max_len, backend=None):
    return get(backend).zsf_atoms(tab.add_buf, tab.neg_buf, tab.order, list(elems), max_len)


def longest_zsf(tab, elems, limit, backend=None):
    return get(backend).longest_zsf(tab.add_buf, tab.neg_buf, tab.order, list(elems), limit)


def bfs_distances(tab, steps, backend=None):
    return get(backend).bfs_distances(tab.add_buf, tab.order, list(steps))
