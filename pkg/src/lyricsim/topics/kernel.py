"""Gibbs kernel selection: compiled extension when present, else pure Python.

Set ``LYRICSIM_PURE_KERNEL=1`` to force the fallback (used by the parity
tests and the benchmark).  Both kernels are bit-for-bit interchangeable.
"""

import os

from . import _kernel_py

if os.environ.get("LYRICSIM_PURE_KERNEL", "0") not in ("", "0"):
    _impl = _kernel_py
else:
    try:
        from . import _kernel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernel_py

BACKEND: str = _impl.BACKEND
train_gibbs = _impl.train_gibbs
infer_gibbs = _impl.infer_gibbs
