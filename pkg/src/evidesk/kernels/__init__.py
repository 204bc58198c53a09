"""Scoring kernels with a compiled fast path and a numpy fallback.

The compiled extension is optional: builds without a C toolchain simply run
the numpy versions. EVIDESK_KERNELS=python forces the fallback, which the
benchmark and the equivalence tests use to pin each side explicitly.
"""

from __future__ import annotations

import os

from evidesk.kernels import pykernels as _py

_forced = os.environ.get("EVIDESK_KERNELS", "").lower()

if _forced in ("", "c", "compiled"):
    try:
        from evidesk.kernels import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        if _forced:
            raise
        _impl = _py
elif _forced in ("python", "py"):
    _impl = _py
else:
    raise ValueError(f"unknown EVIDESK_KERNELS value: {_forced!r}")

ACTIVE_BACKEND: str = _impl.BACKEND

bm25_accumulate = _impl.bm25_accumulate
maxsim_scores = _impl.maxsim_scores
