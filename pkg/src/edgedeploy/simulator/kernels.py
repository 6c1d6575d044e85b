"""Kernel selection: the compiled extension when it was built, numpy otherwise.

Set ``EDGEDEPLOY_KERNEL=python`` to force the fallback.
"""

import os

from . import _pykernel

try:
    from . import _ckernel
except ImportError:  # extension not built
    _ckernel = None

KERNEL_ENV = "EDGEDEPLOY_KERNEL"

_KERNELS = {"python": _pykernel}
if _ckernel is not None:
    _KERNELS["cython"] = _ckernel


def available() -> list[str]:
    return sorted(_KERNELS)


def get_kernel(name: str | None = None):
    if name is None:
        name = os.environ.get(KERNEL_ENV) or ("cython" if _ckernel is not None else "python")
    try:
        return _KERNELS[name]
    except KeyError:
        raise ValueError(f"kernel {name!r} unavailable; have {available()}") from None


DEFAULT = get_kernel().NAME
