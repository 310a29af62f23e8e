"""Pure-Python reduction kernel.

Reference implementation of the hot operations on packed term lists; the
compiled kernel in ``_fast`` mirrors this interface bit for bit whenever the
key layout fits a machine word.  See ``common`` for the key layout.
"""

from __future__ import annotations

from .common import POS_MASK, POS_BITS, OrderCtx, divides, epack


def add_scaled(u, v, c, shift, p, start=0):
    """Merge ``u[start:] + c * X^m * v`` where ``shift = okey(m) << POS_BITS``.

    Both inputs are descending term lists; the result is a fresh descending
    list with zero coefficients dropped.
    """
    out = []
    i = start
    j = 0
    nu = len(u)
    nv = len(v)
    while i < nu and j < nv:
        ku = u[i][0]
        kv = v[j][0] + shift
        if ku > kv:
            out.append(u[i])
            i += 1
        elif ku < kv:
            cc = (c * v[j][1]) % p
            if cc:
                out.append((kv, cc))
            j += 1
        else:
            cc = (u[i][1] + c * v[j][1]) % p
            if cc:
                out.append((ku, cc))
            i += 1
            j += 1
    while i < nu:
        out.append(u[i])
        i += 1
    while j < nv:
        cc = (c * v[j][1]) % p
        if cc:
            out.append((v[j][0] + shift, cc))
        j += 1
    return out


class Reducer:
    """Normal-form engine over a growable basis of term lists.

    Basis elements need not be monic; leading coefficients are inverted on
    insertion.  Reduction always cancels against the first basis element
    (in insertion order) whose lead divides the current head, which makes
    results deterministic for a fixed basis order.
    """

    __slots__ = ("p", "ctx", "basis", "lead_keys", "lead_eps", "lead_inv")

    def __init__(self, p: int, ctx: OrderCtx, basis=()):
        self.p = p
        self.ctx = ctx
        self.basis = []
        self.lead_keys = []
        self.lead_eps = []
        self.lead_inv = []
        for g in basis:
            self.append(g)

    def __len__(self):
        return len(self.basis)

    def append(self, g):
        if not g:
            raise ValueError("cannot reduce by the zero vector")
        key, c = g[0]
        self.basis.append(list(g))
        self.lead_keys.append(key)
        self.lead_eps.append(epack(key >> POS_BITS, self.ctx))
        self.lead_inv.append(pow(c, self.p - 2, self.p))

    def find_reducer(self, key: int) -> int:
        """Index of the first basis element whose lead divides ``key``, or -1."""
        guards = self.ctx.guards
        ep = epack(key >> POS_BITS, self.ctx)
        lk = self.lead_keys
        le = self.lead_eps
        for idx in range(len(lk)):
            gk = lk[idx]
            if (gk ^ key) & POS_MASK:
                continue
            if gk > key:
                continue
            if divides(le[idx], ep, guards):
                return idx
        return -1

    def nf(self, v):
        """Fully reduced normal form of ``v`` against the basis."""
        p = self.p
        out = []
        h = list(v)
        i = 0
        while i < len(h):
            key, c = h[i]
            idx = self.find_reducer(key)
            if idx < 0:
                out.append((key, c))
                i += 1
            else:
                shift = key - self.lead_keys[idx]
                cc = (-c * self.lead_inv[idx]) % p
                h = add_scaled(h, self.basis[idx], cc, shift, p, start=i)
                i = 0
        return out

    def nf_q(self, v):
        """Normal form plus division quotients.

        Returns ``(r, quots)`` with ``v = sum_k quots[k] * basis[k] + r``;
        each quotient is a descending list of ``(okey, coeff)`` pairs.
        """
        p = self.p
        out = []
        quots = [[] for _ in self.basis]
        h = list(v)
        i = 0
        while i < len(h):
            key, c = h[i]
            idx = self.find_reducer(key)
            if idx < 0:
                out.append((key, c))
                i += 1
            else:
                shift = key - self.lead_keys[idx]
                q = (c * self.lead_inv[idx]) % p
                quots[idx].append((shift >> POS_BITS, q))
                h = add_scaled(h, self.basis[idx], p - q, shift, p, start=i)
                i = 0
        return out, quots
