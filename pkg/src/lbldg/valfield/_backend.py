"""Kernel backend selection.

Prefers the compiled Cython kernel when it imported cleanly; the environment
variable LBLDG_PURE=1 forces the pure-Python fallback. Both backends share
one contract and a parity test suite.
"""

import os

if os.environ.get("LBLDG_PURE") == "1":
    from . import _kernel_py as _impl
else:
    try:
        from . import _kernel as _impl  # compiled extension, may be absent
    except ImportError:
        from . import _kernel_py as _impl

kernel_add = _impl.kernel_add
kernel_mul = _impl.kernel_mul


def backend_name():
    return _impl.BACKEND
