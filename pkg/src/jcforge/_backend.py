"""Kernel backend selection.

The compiled extension jcforge._fastkernels implements the hot kernels
(GF(p)[t] polynomial primitives and dense elimination over GF(p) and
GF(p)(t)) in C; jcforge._purekernels is the pure-Python twin.  The
compiled one is preferred when importable.  `select()` lets tests and the
benchmark force a specific backend.
"""

from . import _purekernels

try:
    from . import _fastkernels
    HAVE_FAST = True
except ImportError:  # pragma: no cover - depends on the build
    _fastkernels = None
    HAVE_FAST = False

impl = _fastkernels if HAVE_FAST else _purekernels


def select(name: str) -> None:
    """Switch the active backend: 'fast', 'pure' or 'auto'."""
    global impl
    if name == "pure":
        impl = _purekernels
    elif name == "fast":
        if not HAVE_FAST:
            raise RuntimeError("compiled kernels are not available")
        impl = _fastkernels
    elif name == "auto":
        impl = _fastkernels if HAVE_FAST else _purekernels
    else:
        raise ValueError(f"unknown backend {name!r}")


def active_name() -> str:
    return "fast" if impl is _fastkernels and impl is not None else "pure"
