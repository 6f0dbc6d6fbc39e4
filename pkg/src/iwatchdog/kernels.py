"""Kernel dispatch: the compiled extension when importable, else pure Python.

Set ``IWATCHDOG_PURE=1`` to force the fallback.
"""

import os

from . import _pykernels

BACKEND = "python"
_impl = _pykernels

if os.environ.get("IWATCHDOG_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _pykernels

mix64 = _impl.mix64
stream_key = _impl.stream_key
counter_u64 = _impl.counter_u64
uniform = _impl.uniform
uniform_block = _impl.uniform_block
first_mismatch = _impl.first_mismatch
audibility = _impl.audibility

__all__ = [
    "BACKEND",
    "mix64",
    "stream_key",
    "counter_u64",
    "uniform",
    "uniform_block",
    "first_mismatch",
    "audibility",
]
