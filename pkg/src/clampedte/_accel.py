"""Backend switch for the compiled kernels.

``CLAMPEDTE_BACKEND=numpy`` forces the vectorised NumPy path even when numba
is importable; any other value (or unset) uses numba when available.
"""
import os

try:
    import numba
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    numba = None
else:
    # the portable pool avoids noisy TBB version probing on import
    if "NUMBA_THREADING_LAYER" not in os.environ:
        numba.config.THREADING_LAYER = "workqueue"

BACKENDS = ("numba", "numpy")

HAVE_NUMBA = numba is not None


def default_backend():
    flag = os.environ.get("CLAMPEDTE_BACKEND", "numba").strip().lower()
    if flag == "numpy" or not HAVE_NUMBA:
        return "numpy"
    return "numba"


def resolve_backend(backend=None):
    if backend is None:
        return default_backend()
    if backend not in BACKENDS:
        raise ValueError(f"unknown backend {backend!r}; expected one of {BACKENDS}")
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")
    return backend


def njit(*args, **kwargs):
    """``numba.njit`` with caching, or a no-op decorator without numba."""
    kwargs.setdefault("cache", True)
    if numba is None:
        if args and callable(args[0]):
            return args[0]
        return lambda f: f
    return numba.njit(*args, **kwargs)
