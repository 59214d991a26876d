"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``FLATCOVER_PURE=1`` in the environment to force the pure-Python kernel
(used by the benchmark to compare the two implementations).
"""

import os

if os.environ.get("FLATCOVER_PURE"):
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION

dot = _impl.dot
sign = _impl.sign
prepare_rows = _impl.prepare_rows
sign_profile = _impl.sign_profile
ray_bound = _impl.ray_bound
row_echelon = _impl.row_echelon
rank = _impl.rank
rref = _impl.rref
solve_linear = _impl.solve_linear
nullspace = _impl.nullspace
simplex_maximize = _impl.simplex_maximize
