"""Hot-loop kernels with a numba backend and a pure-numpy fallback.

The backend is picked once at import time.  Set ``PLOTKINLAB_NUMBA=0`` to force
numpy (useful for debugging or when numba is unavailable).  Both backends are
bit-identical, including tie-breaking (lowest index wins).
"""

import os

from . import _numpy as numpy_backend

numba_backend = None
if os.environ.get("PLOTKINLAB_NUMBA", "1") != "0":
    try:
        from . import _numba as numba_backend
    except ImportError:  # pragma: no cover
        numba_backend = None

backend = numba_backend if numba_backend is not None else numpy_backend
BACKEND_NAME = "numba" if backend is numba_backend else "numpy"

join2 = backend.join2
parity_ml = backend.parity_ml
topk = backend.topk
abs_argmax = backend.abs_argmax

__all__ = ["BACKEND_NAME", "join2", "parity_ml", "topk", "abs_argmax", "numpy_backend", "numba_backend"]
