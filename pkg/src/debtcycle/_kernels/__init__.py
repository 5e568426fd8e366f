"""Kernel backend selection.

The hot loops (path ensembles, phase-grid classification) exist twice: a
numba-jitted version and a pure-numpy fallback with identical semantics.
Selection order:

1. explicit ``backend=`` argument on the public functions,
2. the ``DEBTCYCLE_BACKEND`` environment variable (``numba`` or ``numpy``),
3. numba if it imports, numpy otherwise.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import numpy_backend

_ENV_VAR = "DEBTCYCLE_BACKEND"

try:
    from . import numba_backend

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba_backend = None
    _HAVE_NUMBA = False

_BACKENDS: dict[str, ModuleType | None] = {
    "numpy": numpy_backend,
    "numba": numba_backend,
}


def available_backends() -> tuple[str, ...]:
    return tuple(name for name, mod in _BACKENDS.items() if mod is not None)


def default_backend() -> str:
    env = os.environ.get(_ENV_VAR, "").strip().lower()
    if env:
        if env not in _BACKENDS:
            raise ValueError(
                f"{_ENV_VAR}={env!r} is not a known backend; "
                f"choose one of {sorted(_BACKENDS)}"
            )
        if _BACKENDS[env] is None:
            raise ValueError(f"{_ENV_VAR}={env!r} requested but numba is not importable")
        return env
    return "numba" if _HAVE_NUMBA else "numpy"


def resolve(backend: str | None = None) -> ModuleType:
    """Return the kernel module for `backend` (None picks the default)."""
    name = backend if backend is not None else default_backend()
    try:
        mod = _BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}; choose one of {sorted(_BACKENDS)}")
    if mod is None:
        raise ValueError(f"backend {name!r} requested but numba is not importable")
    return mod
