# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled reduction kernel for key layouts that fit a signed 64-bit word.

Mirrors ``pure`` exactly: same term lists in, same term lists out.  The
win comes from keeping the working vector and the basis in C arrays, so
the merge loop of the normal-form engine runs without interpreter
dispatch.  Selected by ``make_reducer`` when the packing context allows.
"""

from libc.stdlib cimport free, malloc, realloc

ctypedef long long i64

DEF POS_BITS = 16
DEF POS_MASK = 0xFFFF
DEF LEX_KIND = 1


cdef inline i64 _posmod(i64 a, i64 p) nogil:
    cdef i64 r = a % p
    return r + p if r < 0 else r


def add_scaled(u, v, long long c, long long shift, long long p):
    """Merge ``u + c * X^m * v`` of descending term lists (fresh list out)."""
    cdef list ul = u if type(u) is list else list(u)
    cdef list vl = v if type(v) is list else list(v)
    cdef Py_ssize_t i = 0, j = 0, nu = len(ul), nv = len(vl)
    cdef i64 ku, kv, cc
    cdef tuple tu, tv
    cdef list out = []
    while i < nu and j < nv:
        tu = <tuple> ul[i]
        tv = <tuple> vl[j]
        ku = tu[0]
        kv = (<i64> tv[0]) + shift
        if ku > kv:
            out.append(tu)
            i += 1
        elif ku < kv:
            cc = (c * <i64> tv[1]) % p
            if cc:
                out.append((kv, cc))
            j += 1
        else:
            cc = (<i64> tu[1] + c * <i64> tv[1]) % p
            if cc:
                out.append((ku, cc))
            i += 1
            j += 1
    while i < nu:
        out.append(ul[i])
        i += 1
    while j < nv:
        tv = <tuple> vl[j]
        cc = (c * <i64> tv[1]) % p
        if cc:
            out.append(((<i64> tv[0]) + shift, cc))
        j += 1
    return out


cdef class Reducer:
    """Normal-form engine over a growable basis, C-array backed."""

    cdef i64 p
    cdef int kind, n, fb
    cdef i64 okey_mask, guards
    cdef i64 **b_keys
    cdef i64 **b_coeffs
    cdef Py_ssize_t *b_len
    cdef i64 *lead_keys
    cdef i64 *lead_eps
    cdef i64 *lead_inv
    cdef Py_ssize_t nb, cap

    def __cinit__(self, long long p, int kind, int n, int fb, basis=()):
        cdef int i
        self.p = p
        self.kind = kind
        self.n = n
        self.fb = fb
        self.okey_mask = ((<i64> 1) << (n * fb)) - 1
        self.guards = 0
        for i in range(n):
            self.guards |= (<i64> 1) << (i * fb + fb - 1)
        self.nb = 0
        self.cap = 8
        self.b_keys = <i64 **> malloc(self.cap * sizeof(i64 *))
        self.b_coeffs = <i64 **> malloc(self.cap * sizeof(i64 *))
        self.b_len = <Py_ssize_t *> malloc(self.cap * sizeof(Py_ssize_t))
        self.lead_keys = <i64 *> malloc(self.cap * sizeof(i64))
        self.lead_eps = <i64 *> malloc(self.cap * sizeof(i64))
        self.lead_inv = <i64 *> malloc(self.cap * sizeof(i64))
        if (self.b_keys == NULL or self.b_coeffs == NULL or
                self.b_len == NULL or self.lead_keys == NULL or
                self.lead_eps == NULL or self.lead_inv == NULL):
            raise MemoryError()
        for g in basis:
            self.append(g)

    def __dealloc__(self):
        cdef Py_ssize_t i
        for i in range(self.nb):
            free(self.b_keys[i])
            free(self.b_coeffs[i])
        free(self.b_keys)
        free(self.b_coeffs)
        free(self.b_len)
        free(self.lead_keys)
        free(self.lead_eps)
        free(self.lead_inv)

    def __len__(self):
        return self.nb

    cdef inline i64 _epack(self, i64 okey) nogil:
        cdef i64 mask, w_lower, w_hi, ep
        cdef int j, fb = self.fb, n = self.n
        okey &= self.okey_mask
        if self.kind == LEX_KIND:
            return okey
        mask = ((<i64> 1) << fb) - 1
        w_lower = okey & mask
        ep = w_lower << ((n - 1) * fb)
        for j in range(2, n + 1):
            w_hi = (okey >> ((j - 1) * fb)) & mask
            ep |= (w_hi - w_lower) << ((n - j) * fb)
            w_lower = w_hi
        return ep

    cdef int _grow(self) except -1:
        cdef Py_ssize_t newcap = self.cap * 2
        self.b_keys = <i64 **> realloc(self.b_keys, newcap * sizeof(i64 *))
        self.b_coeffs = <i64 **> realloc(self.b_coeffs, newcap * sizeof(i64 *))
        self.b_len = <Py_ssize_t *> realloc(self.b_len, newcap * sizeof(Py_ssize_t))
        self.lead_keys = <i64 *> realloc(self.lead_keys, newcap * sizeof(i64))
        self.lead_eps = <i64 *> realloc(self.lead_eps, newcap * sizeof(i64))
        self.lead_inv = <i64 *> realloc(self.lead_inv, newcap * sizeof(i64))
        if (self.b_keys == NULL or self.b_coeffs == NULL or
                self.b_len == NULL or self.lead_keys == NULL or
                self.lead_eps == NULL or self.lead_inv == NULL):
            raise MemoryError()
        self.cap = newcap
        return 0

    def append(self, g):
        cdef Py_ssize_t m = len(g), t
        cdef i64 *gk
        cdef i64 *gc
        cdef tuple term
        if m == 0:
            raise ValueError("cannot reduce by the zero vector")
        if self.nb == self.cap:
            self._grow()
        gk = <i64 *> malloc(m * sizeof(i64))
        gc = <i64 *> malloc(m * sizeof(i64))
        if gk == NULL or gc == NULL:
            free(gk)
            free(gc)
            raise MemoryError()
        for t in range(m):
            term = <tuple> g[t]
            gk[t] = term[0]
            gc[t] = term[1]
        self.b_keys[self.nb] = gk
        self.b_coeffs[self.nb] = gc
        self.b_len[self.nb] = m
        self.lead_keys[self.nb] = gk[0]
        self.lead_eps[self.nb] = self._epack(gk[0] >> POS_BITS)
        self.lead_inv[self.nb] = pow(gc[0], self.p - 2, self.p)
        self.nb += 1

    cdef inline Py_ssize_t _find(self, i64 key) nogil:
        cdef i64 ep = self._epack(key >> POS_BITS)
        cdef i64 guards = self.guards, gk
        cdef Py_ssize_t idx
        for idx in range(self.nb):
            gk = self.lead_keys[idx]
            if (gk ^ key) & POS_MASK:
                continue
            if gk > key:
                continue
            if ((ep | guards) - self.lead_eps[idx]) & guards == guards:
                return idx
        return -1

    def find_reducer(self, long long key):
        """Index of the first basis element whose lead divides ``key``, or -1."""
        return self._find(key)

    cdef Py_ssize_t _merge(self, i64 *hk, i64 *hc, Py_ssize_t i, Py_ssize_t m,
                           Py_ssize_t idx, i64 c, i64 shift,
                           i64 *sk, i64 *sc) nogil:
        """``h[i:] + c * X^shift * basis[idx]`` into the scratch buffer."""
        cdef i64 *gk = self.b_keys[idx]
        cdef i64 *gc = self.b_coeffs[idx]
        cdef Py_ssize_t lg = self.b_len[idx], j = 0, w = 0
        cdef i64 p = self.p, ku, kv, cc
        while i < m and j < lg:
            ku = hk[i]
            kv = gk[j] + shift
            if ku > kv:
                sk[w] = ku
                sc[w] = hc[i]
                w += 1
                i += 1
            elif ku < kv:
                cc = (c * gc[j]) % p
                if cc:
                    sk[w] = kv
                    sc[w] = cc
                    w += 1
                j += 1
            else:
                cc = (hc[i] + c * gc[j]) % p
                if cc:
                    sk[w] = ku
                    sc[w] = cc
                    w += 1
                i += 1
                j += 1
        while i < m:
            sk[w] = hk[i]
            sc[w] = hc[i]
            w += 1
            i += 1
        while j < lg:
            cc = (c * gc[j]) % p
            if cc:
                sk[w] = gk[j] + shift
                sc[w] = cc
                w += 1
            j += 1
        return w

    def nf(self, v):
        """Fully reduced normal form of ``v`` against the basis."""
        cdef Py_ssize_t m = len(v), i, idx, need, w, t
        cdef i64 p = self.p, key, c, cc, shift
        cdef i64 *hk
        cdef i64 *hc
        cdef i64 *sk
        cdef i64 *sc
        cdef i64 *tmp
        cdef Py_ssize_t cap_h = m if m > 8 else 8
        cdef tuple term
        cdef list out = []
        hk = <i64 *> malloc(cap_h * sizeof(i64))
        hc = <i64 *> malloc(cap_h * sizeof(i64))
        sk = <i64 *> malloc(cap_h * sizeof(i64))
        sc = <i64 *> malloc(cap_h * sizeof(i64))
        if hk == NULL or hc == NULL or sk == NULL or sc == NULL:
            free(hk); free(hc); free(sk); free(sc)
            raise MemoryError()
        for t in range(m):
            term = <tuple> v[t]
            hk[t] = term[0]
            hc[t] = term[1]
        i = 0
        try:
            while i < m:
                key = hk[i]
                idx = self._find(key)
                if idx < 0:
                    out.append((key, hc[i]))
                    i += 1
                    continue
                shift = key - self.lead_keys[idx]
                cc = _posmod(-(hc[i] * self.lead_inv[idx]) % p, p)
                need = (m - i) + self.b_len[idx]
                if need > cap_h:
                    while cap_h < need:
                        cap_h *= 2
                    sk = <i64 *> realloc(sk, cap_h * sizeof(i64))
                    sc = <i64 *> realloc(sc, cap_h * sizeof(i64))
                    hk = <i64 *> realloc(hk, cap_h * sizeof(i64))
                    hc = <i64 *> realloc(hc, cap_h * sizeof(i64))
                    if hk == NULL or hc == NULL or sk == NULL or sc == NULL:
                        raise MemoryError()
                w = self._merge(hk, hc, i, m, idx, cc, shift, sk, sc)
                tmp = hk; hk = sk; sk = tmp
                tmp = hc; hc = sc; sc = tmp
                m = w
                i = 0
        finally:
            free(hk)
            free(hc)
            free(sk)
            free(sc)
        return out

    def nf_q(self, v):
        """Normal form plus division quotients, as in the pure kernel."""
        cdef Py_ssize_t m = len(v), i, idx, need, w, t
        cdef i64 p = self.p, key, c, q, shift
        cdef i64 *hk
        cdef i64 *hc
        cdef i64 *sk
        cdef i64 *sc
        cdef i64 *tmp
        cdef Py_ssize_t cap_h = m if m > 8 else 8
        cdef tuple term
        cdef list out = []
        quots = [[] for _ in range(self.nb)]
        hk = <i64 *> malloc(cap_h * sizeof(i64))
        hc = <i64 *> malloc(cap_h * sizeof(i64))
        sk = <i64 *> malloc(cap_h * sizeof(i64))
        sc = <i64 *> malloc(cap_h * sizeof(i64))
        if hk == NULL or hc == NULL or sk == NULL or sc == NULL:
            free(hk); free(hc); free(sk); free(sc)
            raise MemoryError()
        for t in range(m):
            term = <tuple> v[t]
            hk[t] = term[0]
            hc[t] = term[1]
        i = 0
        try:
            while i < m:
                key = hk[i]
                idx = self._find(key)
                if idx < 0:
                    out.append((key, hc[i]))
                    i += 1
                    continue
                shift = key - self.lead_keys[idx]
                q = (hc[i] * self.lead_inv[idx]) % p
                (<list> quots[idx]).append((shift >> POS_BITS, q))
                need = (m - i) + self.b_len[idx]
                if need > cap_h:
                    while cap_h < need:
                        cap_h *= 2
                    sk = <i64 *> realloc(sk, cap_h * sizeof(i64))
                    sc = <i64 *> realloc(sc, cap_h * sizeof(i64))
                    hk = <i64 *> realloc(hk, cap_h * sizeof(i64))
                    hc = <i64 *> realloc(hc, cap_h * sizeof(i64))
                    if hk == NULL or hc == NULL or sk == NULL or sc == NULL:
                        raise MemoryError()
                w = self._merge(hk, hc, i, m, idx, p - q, shift, sk, sc)
                tmp = hk; hk = sk; sk = tmp
                tmp = hc; hc = sc; sc = tmp
                m = w
                i = 0
        finally:
            free(hk)
            free(hc)
            free(sk)
            free(sc)
        return out, quots
