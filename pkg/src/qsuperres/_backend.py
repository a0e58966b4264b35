"""Kernel backend selection.

Two interchangeable kernel modules exist: a numba-jitted one and a
pure-numpy one. The environment variable QSUPERRES_BACKEND picks one
("numba" or "numpy"); unset, numba is used when importable and numpy
otherwise. Selection is resolved lazily on first use and cached.

QSUPERRES_THREADS (or the CLI --threads flag) sizes the numba thread
pool; the numpy backend ignores it.
"""

from __future__ import annotations

import os

from . import _kernels_numpy
from .errors import DomainError

ENV_BACKEND = "QSUPERRES_BACKEND"
ENV_THREADS = "QSUPERRES_THREADS"

_cached = None
_cached_name = None


def _numba_module():
    from . import _kernels_numba  # deferred: importing it triggers jit setup
    return _kernels_numba


def resolve_backend(name: str | None = None):
    """Return (name, kernel module) for an explicit or environment choice."""
    if name is None:
        name = os.environ.get(ENV_BACKEND, "").strip().lower() or None
    if name is None:
        try:
            return "numba", _numba_module()
        except ImportError:
            return "numpy", _kernels_numpy
    if name == "numpy":
        return "numpy", _kernels_numpy
    if name == "numba":
        try:
            return "numba", _numba_module()
        except ImportError as exc:
            raise DomainError(f"backend 'numba' requested but not importable: {exc}") from exc
    raise DomainError(f"unknown backend {name!r}; expected 'numba' or 'numpy'")


def kernels():
    """The active kernel module (cached after first resolution)."""
    global _cached, _cached_name
    if _cached is None:
        _cached_name, _cached = resolve_backend()
    return _cached


def backend_name() -> str:
    kernels()
    return _cached_name


def use_backend(name: str) -> None:
    """Force a backend for this process (tests, benchmarks)."""
    global _cached, _cached_name
    _cached_name, _cached = resolve_backend(name)


def set_threads(n: int) -> None:
    """Size the numba thread pool; silently a no-op on the numpy backend."""
    if n < 1:
        raise DomainError(f"thread count must be >= 1, got {n}")
    if backend_name() != "numba":
        return
    import numba
    numba.set_num_threads(min(n, numba.config.NUMBA_NUM_THREADS))
