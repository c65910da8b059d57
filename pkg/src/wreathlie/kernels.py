"""Hot kernels, compiled when available.

The Cython extension ``wreathlie._ext._speedups`` is preferred; if it was not
built (or ``WREATHLIE_PURE=1`` is set) the pure-Python module is used instead.
Both implement:

``poly_mul(a, b, p, nvars)``
    product of sparse term tables ``{index: coeff}`` in the truncated ring.
``mono_index_mul(a, b, p, nvars)``
    index of a monomial product.
``compose(u, v)``
    byte-encoded permutation composition, ``u`` applied first.
``generate_subgroup(gens, degree)``
    set of all elements generated by byte-encoded permutations.
"""

import os

from ._ext import _pure

if os.environ.get("WREATHLIE_PURE"):
    _impl = _pure
else:
    try:
        from ._ext import _speedups as _impl
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = _impl.BACKEND
poly_mul = _impl.poly_mul
mono_index_mul = _impl.mono_index_mul
compose = _impl.compose
generate_subgroup = _impl.generate_subgroup

__all__ = ["BACKEND", "poly_mul", "mono_index_mul", "compose", "generate_subgroup"]
