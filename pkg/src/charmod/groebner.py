"""Groebner bases for submodules of graded free modules, over the
polynomial ring or a graded quotient of it.

The engine is Buchberger's algorithm on packed term lists with the chain
criterion, the product criterion in ambient rank one, and normal-strategy
pair selection (lowest S-degree first).  Reduced bases are canonical, so
every result here is independent of generator order.

Computations over a quotient ``R = Q/I`` lift to ``Q``: the defining ideal
enters as extra columns ``g * e_pos`` and results are projected back and
kept in normal form with respect to ``I``.  Syzygies and kernels use a
block-elimination order realized by flagging primary-block keys above all
marker-block keys, which keeps the single kernel usable for both.
"""

from __future__ import annotations

import heapq
from typing import List, Optional, Sequence, Tuple

from .freemod import (
    GradedFreeModule,
    GradedMatrix,
    Vector,
    term_key,
    term_okey,
    term_pos,
    v_scale,
)
from .kernel import POS_BITS, POS_MASK, make_reducer, scaled_merge
from .ring import (
    Polynomial,
    PolyRing,
    monomial_divides,
    monomial_lcm,
    monomial_mul,
)


# ---------------------------------------------------------------------------
# core engine


def _buchberger_terms(ring: PolyRing, twists: Sequence[int], vecs: Sequence[Vector],
                      product: bool = False) -> List[Vector]:
    """Reduced Groebner basis of the span of ``vecs`` (term lists over Q).

    ``twists`` drive the normal selection strategy for homogeneous input;
    ``product`` enables the coprime-lead criterion and must only be set in
    ambient rank one, where discarded pairs are genuinely redundant.
    """
    p = ring.field.p
    pack = ring.pack
    ctx = pack.ctx
    mask = ctx.okey_mask
    red = make_reducer(p, ctx)
    G: List[Vector] = []
    lead_key: List[int] = []
    lead_exps: List[tuple] = []
    lead_pos: List[int] = []
    pairs: list = []
    done = set()

    def push_pairs(t: int) -> None:
        et = lead_exps[t]
        post = lead_pos[t]
        for i in range(t):
            if lead_pos[i] != post:
                continue
            lcm = monomial_lcm(lead_exps[i], et)
            sdeg = sum(lcm) + twists[post]
            heapq.heappush(pairs, (sdeg, i, t, lcm))

    def add_gen(v: Vector) -> None:
        k, c = v[0]
        if c != 1:
            v = v_scale(v, ring.field.inv(c), p)
        G.append(v)
        lead_key.append(k)
        lead_exps.append(pack.exps(term_okey(k) & mask))
        lead_pos.append(term_pos(k))
        push_pairs(len(G) - 1)
        red.append(v)

    for v in vecs:
        if not v:
            continue
        r = red.nf(v)
        if r:
            add_gen(r)

    while pairs:
        _, i, j, lcm = heapq.heappop(pairs)
        if (i, j) in done:
            continue
        done.add((i, j))
        if product and lcm == monomial_mul(lead_exps[i], lead_exps[j]):
            continue
        skip = False
        for t in range(len(G)):
            if t == i or t == j or lead_pos[t] != lead_pos[i]:
                continue
            if monomial_divides(lead_exps[t], lcm):
                a = (i, t) if i < t else (t, i)
                b = (j, t) if j < t else (t, j)
                if a in done and b in done:
                    skip = True
                    break
        if skip:
            continue
        lk = pack.okey(lcm)
        sh_i = (lk - (term_okey(lead_key[i]) & mask)) << POS_BITS
        sh_j = (lk - (term_okey(lead_key[j]) & mask)) << POS_BITS
        s = scaled_merge([], G[i], 1, sh_i, p, ctx)
        s = scaled_merge(s, G[j], p - 1, sh_j, p, ctx)
        r = red.nf(s)
        if r:
            add_gen(r)

    return _autoreduce(ring, G)


def _autoreduce(ring: PolyRing, G: Sequence[Vector]) -> List[Vector]:
    """Reduced basis from a basis: minimal leads, tails in normal form."""
    if not G:
        return []
    p = ring.field.p
    ctx = ring.pack.ctx
    order = sorted(range(len(G)), key=lambda t: G[t][0][0])
    keep: List[Vector] = []
    probe = make_reducer(p, ctx)
    for t in order:
        if probe.find_reducer(G[t][0][0]) < 0:
            keep.append(G[t])
            probe.append(G[t])
    red = make_reducer(p, ctx, keep)
    out = []
    for g in keep:
        tail = red.nf(list(g[1:]))
        out.append([g[0]] + tail)
    out.sort(key=lambda v: v[0][0], reverse=True)
    return out


def _flag_vector(v: Vector, flag: int) -> Vector:
    return [(k + flag, c) for k, c in v]


def _elimination_syzygies(ring: PolyRing, twists: Sequence[int],
                          marked: Sequence[Vector], unmarked: Sequence[Vector]
                          ) -> List[Vector]:
    """Generators of ``{c : sum c_j marked_j in <unmarked>}``.

    Both inputs live in the primary ambient (rank ``len(twists)``); the
    result vectors live in a rank ``len(marked)`` free module whose twists
    are the degrees of the marked vectors.
    """
    r = len(twists)
    m = len(marked)
    flag = 1 << ring.pack.block_shift
    ambient = GradedFreeModule(ring, twists)
    combined: List[Vector] = []
    ext_twists = list(twists)
    for j, v in enumerate(marked):
        if not v:
            ext_twists.append(0)
            continue
        ext_twists.append(ambient.vector_degree(v))
    for j, v in enumerate(marked):
        w = _flag_vector(v, flag)
        w.append((term_key(0, r + j), 1))
        combined.append(w)
    for v in unmarked:
        if v:
            combined.append(_flag_vector(v, flag))
    gb = _buchberger_terms(ring, ext_twists, combined)
    out: List[Vector] = []
    for g in gb:
        if g[0][0] >= flag:
            continue
        proj = [(term_key(term_okey(k), term_pos(k) - r), c) for k, c in g]
        out.append(proj)
    return out


# ---------------------------------------------------------------------------
# submodule Groebner bases


class SchreyerOrder:
    """Module order induced by a basis: compare terms through their image
    ``monomial * lead(g_i)`` in the inducing ambient, ties to smaller index."""

    __slots__ = ("inducing_leads", "ambient")

    def __init__(self, inducing_leads: Sequence[int], ambient: GradedFreeModule):
        self.inducing_leads = tuple(inducing_leads)
        self.ambient = ambient

    def sort_key(self, key: int) -> tuple:
        pos = term_pos(key)
        image = self.inducing_leads[pos] + (term_okey(key) << POS_BITS)
        return (image, -pos)

    def __eq__(self, other):
        return (
            isinstance(other, SchreyerOrder)
            and other.inducing_leads == self.inducing_leads
            and other.ambient == self.ambient
        )

    def __hash__(self):
        return hash((self.inducing_leads, self.ambient))


class SubmoduleGB:
    """A submodule of a graded free module together with a Groebner basis.

    ``gens`` are the defining generators, ``gb`` the reduced basis over the
    ambient base ring.  Over a quotient base the lift (including the ideal
    columns) is kept internally so normal forms stay exact.
    """

    __slots__ = ("ambient", "gens", "gb", "order", "_qgb", "_reducer", "_sort_key")

    def __init__(self, ambient: GradedFreeModule, gens, gb, qgb=None, order="top"):
        self.ambient = ambient
        self.gens = tuple(tuple(v) for v in gens)
        self.gb = tuple(tuple(v) for v in gb)
        self._qgb = tuple(tuple(v) for v in (qgb if qgb is not None else gb))
        self.order = order
        self._reducer = None
        self._sort_key = None

    @property
    def base(self):
        return self.ambient.base

    def __len__(self):
        return len(self.gb)

    def __eq__(self, other):
        """Equality of submodules: identical ambient and reduced basis."""
        return (
            isinstance(other, SubmoduleGB)
            and other.ambient == self.ambient
            and other.order == self.order
            and other.gb == self.gb
        )

    def __hash__(self):
        return hash((self.ambient, self.order, self.gb))

    def __repr__(self):
        return f"<SubmoduleGB rank {self.ambient.rank}, {len(self.gb)} basis elements>"

    def lead_terms(self) -> List[Tuple[tuple, int]]:
        """(monomial exponents, position) of each basis lead."""
        pack = self.ambient.ring.pack
        return [(pack.exps(term_okey(v[0][0])), term_pos(v[0][0])) for v in self.gb]

    def normal_form(self, v: Vector) -> Vector:
        if self.order == "top":
            if self._reducer is None:
                ring = self.ambient.ring
                self._reducer = make_reducer(ring.field.p, ring.pack.ctx, self._qgb)
            return self._reducer.nf(v)
        return self._schreyer_nf(v)

    def _schreyer_nf(self, v: Vector) -> Vector:
        ring = self.ambient.ring
        p = ring.field.p
        pack = self.ambient.ring.pack
        skey = self.order.sort_key
        if self._sort_key is None:
            self._sort_key = [max(g, key=lambda t: skey(t[0])) for g in self._qgb]
        leads = self._sort_key
        ctx = pack.ctx
        work = sorted(v, key=lambda t: skey(t[0]), reverse=True)
        out: Vector = []
        from .kernel import epack, divides
        while work:
            key, c = work[0]
            hit = -1
            for idx, (lk, lc) in enumerate(leads):
                if (lk ^ key) & POS_MASK:
                    continue
                if divides(epack(term_okey(lk), ctx), epack(term_okey(key), ctx), ctx.guards):
                    hit = idx
                    break
            if hit < 0:
                out.append((key, c))
                work = work[1:]
                continue
            lk, lc = leads[hit]
            shift = (term_okey(key) - term_okey(lk)) << POS_BITS
            cc = (-c * pow(lc, p - 2, p)) % p
            acc = {k: cv for k, cv in work}
            for gk, gc in self._qgb[hit]:
                k2 = gk + shift
                nv = (acc.get(k2, 0) + cc * gc) % p
                if nv:
                    acc[k2] = nv
                else:
                    acc.pop(k2, None)
            work = sorted(acc.items(), key=lambda t: skey(t[0]), reverse=True)
        out.sort(reverse=True)
        return out

    def contains(self, v: Vector) -> bool:
        return not self.normal_form(v)

    def contains_all(self, vecs) -> bool:
        return all(self.contains(list(v)) for v in vecs)

    def lead_reducible(self, key: int) -> bool:
        """Whether a term key is divisible by some basis lead (incl. ideal)."""
        if self._reducer is None:
            ring = self.ambient.ring
            self._reducer = make_reducer(ring.field.p, ring.pack.ctx, self._qgb)
        return self._reducer.find_reducer(key) >= 0


def express_in_basis(gb: SubmoduleGB, v: Vector) -> Optional[Vector]:
    """Coordinates of ``v`` in the free module on the basis elements of
    ``gb``, or None if ``v`` is not a member.  Over a quotient base the
    coordinates are only well defined modulo the ideal, and the ideal's
    contribution is dropped."""
    ambient = gb.ambient
    base = gb.base
    ring = ambient.ring
    basis = [list(g) for g in gb.gb]
    m = len(basis)
    if isinstance(base, QuotientRing):
        v = base.normal_form_vector(list(v), ambient)
        basis = basis + _ideal_aug_vectors(base, ambient.rank)
    if not v:
        return []
    red = make_reducer(ring.field.p, ring.pack.ctx, basis)
    r, quots = red.nf_q(list(v))
    if r:
        return None
    out: Vector = []
    for t in range(m):
        for okey, c in quots[t]:
            out.append((term_key(okey, t), c))
    out.sort(reverse=True)
    return out


def _ideal_aug_vectors(base, ambient_rank: int) -> List[Vector]:
    """Columns ``g * e_pos`` for the defining ideal of a quotient base."""
    out: List[Vector] = []
    for g in base.ideal_gb_polys():
        for pos in range(ambient_rank):
            out.append([(term_key(okey, pos), c) for okey, c in g.terms])
    return out


def buchberger(gens, ambient: GradedFreeModule) -> SubmoduleGB:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    ``gens`` may be vectors (term lists) or sequences of polynomials, one
    coordinate per ambient position.  All generators must be homogeneous.
    """
    vecs = []
    for g in gens:
        v = g if isinstance(g, (list, tuple)) and (not g or isinstance(g[0], tuple)) \
            else ambient.vector_from_polys(list(g))
        v = list(v)
        if v and not ambient.vector_is_homogeneous(v):
            raise ValueError("inhomogeneous generator")
        vecs.append(v)
    base = ambient.base
    if isinstance(base, QuotientRing):
        ring = base.cover
        vecs = [base.normal_form_vector(v, ambient) for v in vecs]
        aug = _ideal_aug_vectors(base, ambient.rank)
        qgb = _buchberger_terms(ring, ambient.twists, vecs + aug,
                                product=(ambient.rank == 1))
        rgb = []
        for v in qgb:
            w = base.normal_form_vector(v, ambient)
            if w:
                rgb.append(w)
        return SubmoduleGB(ambient, vecs, rgb, qgb=qgb)
    gb = _buchberger_terms(base, ambient.twists, vecs, product=(ambient.rank == 1))
    return SubmoduleGB(ambient, vecs, gb)


def normal_form(v, gb: SubmoduleGB):
    """Normal form of a vector (or coordinate list of polynomials)."""
    ambient = gb.ambient
    if isinstance(v, (list, tuple)) and v and not isinstance(v[0], tuple):
        v = ambient.vector_from_polys(list(v))
    return gb.normal_form(list(v))


def syzygy_generators(vectors: Sequence[Vector], ambient: GradedFreeModule,
                      extra_unmarked: Sequence[Vector] = ()) -> List[Vector]:
    """Generators of the syzygy module of ``vectors`` over the ambient base.

    Returned vectors live in the free module on the inputs (twists equal to
    their degrees).  Relations with the ``extra_unmarked`` columns (and with
    the defining ideal over a quotient base) are allowed but not recorded.
    """
    base = ambient.base
    unmarked = [list(u) for u in extra_unmarked]
    if isinstance(base, QuotientRing):
        ring = base.cover
        unmarked += _ideal_aug_vectors(base, ambient.rank)
    else:
        ring = base
    syz = _elimination_syzygies(ring, ambient.twists, [list(v) for v in vectors], unmarked)
    if isinstance(base, QuotientRing):
        m = len(vectors)
        amb2 = GradedFreeModule(
            base, [ambient.vector_degree(list(v)) if v else 0 for v in vectors])
        syz = [base.normal_form_vector(s, amb2) for s in syz]
        syz = [s for s in syz if s]
    return syz


def syzygies(gb: SubmoduleGB) -> SubmoduleGB:
    """Syzygy module of the generators of ``gb``.

    When the generators coincide with the basis, the result is the classical
    S-pair syzygy basis, a Groebner basis for the order induced by the basis
    (ties to the smaller index).  Otherwise the syzygies of the original
    generators are computed by elimination and returned in the standard
    term-over-position order.
    """
    base = gb.base
    ambient = gb.ambient
    ring = ambient.ring
    if list(gb.gens) == list(gb.gb):
        return _schreyer_syzygies(gb)
    gens = [list(v) for v in gb.gens]
    syz = syzygy_generators(gens, ambient)
    twists = [ambient.vector_degree(v) if v else 0 for v in gens]
    amb2 = GradedFreeModule(base, twists)
    return buchberger(syz, amb2)


def _schreyer_syzygies(gb: SubmoduleGB) -> SubmoduleGB:
    base = gb.base
    ambient = gb.ambient
    ring = ambient.ring
    p = ring.field.p
    pack = ring.pack
    ctx = pack.ctx
    mask = ctx.okey_mask
    # over a quotient base the S-pair pass must see the ideal columns too,
    # since relations with them become annihilator syzygies after projection
    work = [list(g) for g in gb.gb]
    keep = list(range(len(work)))
    if isinstance(base, QuotientRing):
        work += _ideal_aug_vectors(base, ambient.rank)
    m = len(work)
    keep_index = {g_i: s_i for s_i, g_i in enumerate(keep)}
    red = make_reducer(p, ctx, work)
    lead = [g[0][0] for g in work]
    lead_exps = [pack.exps(term_okey(k) & mask) for k in lead]
    syz_twists = [ambient.vector_degree(work[i]) for i in keep]
    syz_ambient = GradedFreeModule(base, syz_twists)
    out: List[Vector] = []
    done = set()
    for j in range(m):
        for i in range(j):
            if (lead[i] ^ lead[j]) & POS_MASK:
                continue
            done.add((i, j))
            skip = False
            lcm = monomial_lcm(lead_exps[i], lead_exps[j])
            for t in range(m):
                if t in (i, j) or (lead[t] ^ lead[i]) & POS_MASK:
                    continue
                if monomial_divides(lead_exps[t], lcm):
                    a = (i, t) if i < t else (t, i)
                    b = (j, t) if j < t else (t, j)
                    if a in done and b in done:
                        skip = True
                        break
            if skip:
                continue
            lk = pack.okey(lcm)
            oi = lk - (term_okey(lead[i]) & mask)
            oj = lk - (term_okey(lead[j]) & mask)
            s = scaled_merge([], work[i], 1, oi << POS_BITS, p, ctx)
            s = scaled_merge(s, work[j], p - 1, oj << POS_BITS, p, ctx)
            r, quots = red.nf_q(s)
            if r:
                raise RuntimeError("S-vector of a Groebner basis did not reduce to zero")
            coeffs: dict = {}
            coeffs[(oi, i)] = 1
            coeffs[(oj, j)] = (coeffs.get((oj, j), 0) + p - 1) % p
            for t, q in enumerate(quots):
                for okey, c in q:
                    k2 = (okey, t)
                    nv = (coeffs.get(k2, 0) - c) % p
                    if nv:
                        coeffs[k2] = nv
                    else:
                        coeffs.pop(k2, None)
            vec: Vector = []
            dropped = False
            for (okey, t), c in coeffs.items():
                if t not in keep_index:
                    dropped = True
                    continue
                vec.append((term_key(okey, keep_index[t]), c))
            vec.sort(reverse=True)
            if isinstance(base, QuotientRing):
                vec = base.normal_form_vector(vec, syz_ambient)
            if vec:
                out.append(vec)
    inducing = [work[i][0][0] for i in keep]
    order = SchreyerOrder(inducing, ambient)
    sgb = SubmoduleGB(syz_ambient, out, out, order=order)
    return sgb


def kernel_of_map(f: GradedMatrix) -> SubmoduleGB:
    """Kernel of a map of graded free modules, as a submodule of the source."""
    gens = syzygy_generators([list(c) for c in f.cols], f.target)
    return buchberger(gens, f.source)


def quotient(sub: SubmoduleGB, e) -> "Ideal":
    """Colon ideal ``{a in base : a * e in sub}`` for a vector ``e``."""
    ambient = sub.ambient
    if isinstance(e, (list, tuple)) and e and not isinstance(e[0], tuple):
        e = ambient.vector_from_polys(list(e))
    e = list(e)
    base = ambient.base
    if isinstance(base, QuotientRing):
        ring = base.cover
        e = base.normal_form_vector(e, ambient)
        unmarked = [list(v) for v in sub.gb] + _ideal_aug_vectors(base, ambient.rank)
    else:
        ring = base
        unmarked = [list(v) for v in sub.gb]
    if not e:
        return Ideal(base, [ring_one(base)])
    syz = _elimination_syzygies(ring, ambient.twists, [e], unmarked)
    polys = []
    for s in syz:
        terms = [(term_okey(k), c) for k, c in s]
        polys.append(Polynomial(ring, terms))
    return Ideal(base, polys)


def ring_one(base) -> Polynomial:
    ring = getattr(base, "cover", base)
    return ring.one()


def intersect_ideals(a: "Ideal", b: "Ideal") -> "Ideal":
    """Intersection of two ideals over the same base, by syzygies."""
    if a.base != b.base:
        raise ValueError("ideals over different bases")
    base = a.base
    ring = getattr(base, "cover", base)
    ambient = GradedFreeModule(base, [0])
    ga = [f for f in a.gens if f]
    gbp = [f for f in b.gens if f]
    if not ga or not gbp:
        return Ideal(base, [])
    vecs = [[(term_key(k, 0), c) for k, c in f.terms] for f in ga + gbp]
    syz = syzygy_generators(vecs, ambient)
    ctx = ring.pack.ctx
    p = ring.field.p
    out = []
    for s in syz:
        acc: Vector = []
        for k, c in s:
            pos = term_pos(k)
            if pos >= len(ga):
                continue
            fa = vecs[pos]
            acc = scaled_merge(acc, fa, c, term_okey(k) << POS_BITS, p, ctx)
        if acc:
            out.append(Polynomial(ring, [(term_okey(k), c) for k, c in acc]))
    return Ideal(base, out)


# ---------------------------------------------------------------------------
# ideals and quotient rings


class Ideal:
    """An ideal of the polynomial ring or of a graded quotient of it."""

    __slots__ = ("base", "gens", "_sub")

    def __init__(self, base, gens: Sequence[Polynomial]):
        self.base = base
        ring = getattr(base, "cover", base)
        out = []
        for f in gens:
            if not isinstance(f, Polynomial):
                f = ring.poly(f)
            if f.ring != ring:
                raise ValueError("generator from a different ring")
            if isinstance(base, QuotientRing):
                f = base.nf(f)
            if f:
                out.append(f)
        self.gens = tuple(out)
        self._sub = None

    @property
    def ring(self) -> PolyRing:
        return getattr(self.base, "cover", self.base)

    def submodule(self) -> SubmoduleGB:
        if self._sub is None:
            ambient = GradedFreeModule(self.base, [0])
            self._sub = buchberger(
                [[(term_key(k, 0), c) for k, c in f.terms] for f in self.gens], ambient)
        return self._sub

    def groebner_basis(self) -> Tuple[Polynomial, ...]:
        ring = self.ring
        return tuple(Polynomial(ring, [(term_okey(k), c) for k, c in v])
                     for v in self.submodule().gb)

    def normal_form(self, f: Polynomial) -> Polynomial:
        v = [(term_key(k, 0), c) for k, c in f.terms]
        r = self.submodule().normal_form(v)
        return Polynomial(self.ring, [(term_okey(k), c) for k, c in r])

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f).terms

    def is_zero(self) -> bool:
        return not self.groebner_basis()

    def is_unit(self) -> bool:
        gb = self.groebner_basis()
        return bool(gb) and gb[0].degree() == 0

    def equals(self, other: "Ideal") -> bool:
        return self.base == other.base and self.groebner_basis() == other.groebner_basis()

    def __repr__(self):
        return f"Ideal({self.base!r}, {[str(g) for g in self.gens]})"


class QuotientRing:
    """Graded quotient ``R = Q / I`` by a homogeneous ideal.

    Elements of ``R`` are represented by their normal forms in ``Q`` with
    respect to the reduced basis of ``I``.  Instances cache the expensive
    derived data (resolutions, canonical module, invariants); the cache is
    ignored by equality and hashing.
    """

    __slots__ = ("cover", "ideal", "_gb_polys", "_reducer", "cache")

    def __init__(self, cover: PolyRing, ideal):
        self.cover = cover
        if isinstance(ideal, Ideal):
            if ideal.base != cover:
                raise ValueError("ideal over a different ring")
        else:
            ideal = Ideal(cover, list(ideal))
        for g in ideal.gens:
            if not g.is_homogeneous():
                raise ValueError(f"inhomogeneous ideal generator {g}")
        self.ideal = ideal
        gb = ideal.groebner_basis()
        if gb and gb[0].degree() == 0:
            raise ValueError("ideal is the unit ideal; quotient ring is zero")
        self._gb_polys = gb
        self._reducer = make_reducer(
            cover.field.p, cover.pack.ctx,
            [[(term_key(k, 0), c) for k, c in g.terms] for g in gb])
        self.cache: dict = {}

    @property
    def field(self):
        return self.cover.field

    @property
    def variables(self):
        return self.cover.variables

    @property
    def n(self) -> int:
        return self.cover.n

    def ideal_gb_polys(self) -> Tuple[Polynomial, ...]:
        return self._gb_polys

    def is_polynomial_ring(self) -> bool:
        return not self._gb_polys

    def nf(self, f: Polynomial) -> Polynomial:
        if f.ring != self.cover:
            raise ValueError("element from a different ring")
        v = [(term_key(k, 0), c) for k, c in f.terms]
        r = self._reducer.nf(v)
        return Polynomial(self.cover, [(term_okey(k), c) for k, c in r])

    def normal_form_vector(self, v: Vector, ambient: GradedFreeModule) -> Vector:
        """Componentwise normal form of a vector modulo the defining ideal."""
        if not self._gb_polys:
            return list(v)
        coords: dict = {}
        for key, c in v:
            coords.setdefault(term_pos(key), []).append((term_key(term_okey(key), 0), c))
        out: Vector = []
        for pos, terms in coords.items():
            r = self._reducer.nf(sorted(terms, reverse=True))
            for k, c in r:
                out.append((term_key(term_okey(k), pos), c))
        out.sort(reverse=True)
        return out

    def poly(self, text: str) -> Polynomial:
        return self.nf(self.cover.poly(text))

    def __eq__(self, other):
        return (
            isinstance(other, QuotientRing)
            and other.cover == self.cover
            and other._gb_polys == self._gb_polys
        )

    def __hash__(self):
        return hash((self.cover, self._gb_polys))

    def __repr__(self):
        gens = ", ".join(str(g) for g in self.ideal.gens) or "0"
        return f"QuotientRing({self.cover!r} / ({gens}))"
