"""Shared constants and packing context for the reduction kernels.

A vector in a twisted free module is a list of ``(key, coeff)`` pairs sorted
strictly descending by key with coefficients in ``[1, p)``.  The key packs a
monomial order key above a complemented 16-bit position field:

    key = (okey << POS_BITS) | (POS_MASK - position)

Order keys are additive under monomial multiplication, so adding
``okey << POS_BITS`` to every key of a vector multiplies it by that monomial,
and integer comparison of keys realizes the term-over-position module order.
"""

from __future__ import annotations

POS_BITS = 16
POS_MASK = (1 << POS_BITS) - 1

GREVLEX = 0
LEX = 1


class OrderCtx:
    """Packing parameters a kernel needs for divisibility tests.

    ``kind`` is GREVLEX or LEX, ``n`` the number of variables, ``fb`` the
    field width in bits.  ``okey_mask`` strips elimination-block flags that
    sit above the order key proper; ``guards`` holds the per-field guard bits
    used by the borrow-free divisibility test.
    """

    __slots__ = ("kind", "n", "fb", "okey_mask", "guards", "fits64")

    def __init__(self, kind: int, n: int, fb: int):
        self.kind = kind
        self.n = n
        self.fb = fb
        self.okey_mask = (1 << (n * fb)) - 1
        g = 0
        for i in range(n):
            g |= 1 << (i * fb + fb - 1)
        self.guards = g
        # key layout must leave room for one block flag below the sign bit
        self.fits64 = n * fb + POS_BITS + 1 <= 62


def epack(okey: int, ctx: OrderCtx) -> int:
    """Exponent packing (e_1 in the top field .. e_n in the bottom) of okey."""
    okey &= ctx.okey_mask
    if ctx.kind == LEX:
        return okey
    fb = ctx.fb
    n = ctx.n
    mask = (1 << fb) - 1
    # grevlex fields, top to bottom: deg, deg - e_n, deg - e_n - e_{n-1}, ...
    w_lower = okey & mask
    ep = w_lower << ((n - 1) * fb)
    for j in range(2, n + 1):
        w_hi = (okey >> ((j - 1) * fb)) & mask
        ep |= (w_hi - w_lower) << ((n - j) * fb)
        w_lower = w_hi
    return ep


def divides(u_ep: int, v_ep: int, guards: int) -> bool:
    """True when the monomial packed in u_ep divides the one in v_ep."""
    return ((v_ep | guards) - u_ep) & guards == guards
