"""Backend selection for the numeric kernels.

Set ``F1GEOM_NUMBA=0`` to force the pure-numpy path.  The flag is read once
at import time; ``set_backend`` switches at runtime (used by tests and the
benchmark).
"""
import os

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

_state = {"numba": HAVE_NUMBA and os.environ.get("F1GEOM_NUMBA", "1") != "0"}


def use_numba():
    return _state["numba"]


def set_backend(name):
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    _state["numba"] = name == "numba"


def backend():
    return "numba" if _state["numba"] else "numpy"
