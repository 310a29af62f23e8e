"""Reduction kernel selection.

The compiled kernel handles key layouts that fit a signed 64-bit word; the
pure-Python kernel handles everything and is the reference implementation.
``make_reducer`` and ``scaled_merge`` pick per call site based on the packing
context, so a ring with many variables transparently falls back.
"""

from __future__ import annotations

from . import pure
from .common import GREVLEX, LEX, POS_BITS, POS_MASK, OrderCtx, divides, epack

try:  # pragma: no cover - exercised when the extension is built
    from . import _fast
    HAVE_FAST = True
except ImportError:  # pragma: no cover
    _fast = None
    HAVE_FAST = False


# coefficient products must stay below 2**62, so the compiled kernel only
# takes primes that fit 31 bits (every practical field does)
_P_CAP = 1 << 31


def backend_name() -> str:
    return "compiled" if HAVE_FAST else "pure"


def make_reducer(p: int, ctx: OrderCtx, basis=(), force_pure: bool = False):
    if HAVE_FAST and ctx.fits64 and p < _P_CAP and not force_pure:
        return _fast.Reducer(p, ctx.kind, ctx.n, ctx.fb, basis)
    return pure.Reducer(p, ctx, basis)


def scaled_merge(u, v, c, shift, p, ctx: OrderCtx, force_pure: bool = False):
    """``u + c * X^m * v`` dispatched to the fastest applicable kernel."""
    if HAVE_FAST and ctx.fits64 and p < _P_CAP and not force_pure:
        return _fast.add_scaled(u, v, c, shift, p)
    return pure.add_scaled(u, v, c, shift, p)


__all__ = [
    "GREVLEX",
    "LEX",
    "POS_BITS",
    "POS_MASK",
    "OrderCtx",
    "divides",
    "epack",
    "HAVE_FAST",
    "backend_name",
    "make_reducer",
    "scaled_merge",
]
