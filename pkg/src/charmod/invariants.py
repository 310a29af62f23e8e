"""Numerical invariants of graded modules: Hilbert series, dimension,
depth, minimal generator counts, Cohen-Macaulay type, annihilators,
Poincare and Bass series, and bounded Gorenstein-dimension evidence.

Two independent routes to the Hilbert series are kept: the alternating sum
of twists of a minimal resolution over the cover ring, and a lead-term
recursion on the standard monomial complement.  They must agree and the
test suite checks that they do.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Tuple

from .freemod import term_okey, term_pos
from .groebner import Ideal, QuotientRing, intersect_ideals, quotient
from .resolution import FreeResolution, PresentedModule, resolve


class HilbertSeries:
    """Hilbert series as numerator / (1-t)^nvars, numerator a Laurent
    polynomial in t stored as {degree: coefficient}."""

    __slots__ = ("numerator", "nvars")

    def __init__(self, numerator: Dict[int, int], nvars: int):
        self.numerator = {d: c for d, c in numerator.items() if c}
        self.nvars = nvars

    def __eq__(self, other):
        return (
            isinstance(other, HilbertSeries)
            and other.numerator == self.numerator
            and other.nvars == self.nvars
        )

    def __hash__(self):
        return hash((tuple(sorted(self.numerator.items())), self.nvars))

    def __repr__(self):
        return f"HilbertSeries({self.numerator}, nvars={self.nvars})"

    def rows(self) -> List[List[int]]:
        """Canonical [degree, coefficient] rows of the numerator."""
        return [[d, self.numerator[d]] for d in sorted(self.numerator)]

    def value(self, d: int) -> int:
        """The Hilbert function at degree d."""
        n = self.nvars
        total = 0
        for j, c in self.numerator.items():
            k = d - j
            if k >= 0:
                total += c * comb(k + n - 1, n - 1)
        return total

    def values(self, lo: int, hi: int) -> List[int]:
        return [self.value(d) for d in range(lo, hi + 1)]

    def dimension(self) -> int:
        """Krull dimension: nvars minus the order of vanishing at t=1.

        The zero module has dimension -1 by convention.
        """
        if not self.numerator:
            return -1
        num = dict(self.numerator)
        order = 0
        while sum(num.values()) == 0:
            # divide by (1 - t): synthetic division from the lowest degree
            lo = min(num)
            hi = max(num)
            out: Dict[int, int] = {}
            run = 0
            for d in range(lo, hi + 1):
                run += num.get(d, 0)
                if run:
                    out[d] = run
            # after full division the top coefficient telescopes away
            out.pop(hi, None)
            num = out if out else {}
            order += 1
            if not num:
                break
        return self.nvars - order

    def finite_sum(self) -> int:
        """Total k-dimension; only valid when the dimension is at most 0."""
        if self.dimension() > 0:
            raise ValueError("module has positive dimension")
        if not self.numerator:
            return 0
        lo = min(self.numerator)
        hi = max(self.numerator)
        return sum(self.value(d) for d in range(lo, hi + 1))


def _series_from_resolution(res: FreeResolution) -> HilbertSeries:
    num: Dict[int, int] = {}
    sign = 1
    for mod in res.modules:
        for t in mod.twists:
            num[t] = num.get(t, 0) + sign
        sign = -sign
    n = getattr(res.base, "cover", res.base).n
    return HilbertSeries(num, n)


def ring_module_of(base) -> PresentedModule:
    """The base ring as a module over itself, cached on the base when the
    base carries a cache (so derived invariants are computed once)."""
    cache = getattr(base, "cache", None)
    if cache is None:
        return PresentedModule.ring_module(base)
    if "ring_module" not in cache:
        cache["ring_module"] = PresentedModule.ring_module(base)
    return cache["ring_module"]


def residue_field_of(base) -> PresentedModule:
    """The residue field as a module over the base, cached on the base."""
    cache = getattr(base, "cache", None)
    if cache is None:
        return PresentedModule.residue_field(base)
    if "residue_module" not in cache:
        cache["residue_module"] = PresentedModule.residue_field(base)
    return cache["residue_module"]


def q_resolution(M: PresentedModule) -> FreeResolution:
    """Minimal resolution over the cover polynomial ring, cached."""
    if "q_resolution" not in M.cache:
        M.cache["q_resolution"] = resolve(M.q_structure())
    return M.cache["q_resolution"]


def hilbert_series(M: PresentedModule) -> HilbertSeries:
    """Hilbert series from the minimal resolution over the cover ring."""
    if "hilbert_series" not in M.cache:
        M.cache["hilbert_series"] = _series_from_resolution(q_resolution(M))
    return M.cache["hilbert_series"]


# -- independent lead-term route -------------------------------------------


def _minimalize_monomials(gens: frozenset) -> frozenset:
    out = []
    items = sorted(gens)
    for g in items:
        if not any(h != g and all(a <= b for a, b in zip(h, g)) for h in items):
            out.append(g)
    return frozenset(out)


@lru_cache(maxsize=None)
def _monomial_numerator(gens: frozenset, n: int) -> Tuple[Tuple[int, int], ...]:
    """Hilbert numerator of Q/(monomial ideal), as sorted (deg, coeff) pairs."""
    gens = _minimalize_monomials(gens)
    if not gens:
        return ((0, 1),)
    if any(sum(g) == 0 for g in gens):
        return ()
    pures = [g for g in gens if sum(1 for e in g if e) == 1]
    if len(pures) == len(gens):
        # product of (1 - t^deg) over pure powers of distinct variables
        acc = {0: 1}
        for g in gens:
            d = sum(g)
            nxt = dict(acc)
            for j, c in acc.items():
                nxt[j + d] = nxt.get(j + d, 0) - c
            acc = {k: v for k, v in nxt.items() if v}
        return tuple(sorted(acc.items()))
    # split on the most frequent variable among mixed-support generators
    counts = [0] * n
    for g in gens:
        if sum(1 for e in g if e) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    i = max(range(n), key=lambda t: (counts[t], -t))
    var = tuple(1 if t == i else 0 for t in range(n))
    plus = frozenset(g for g in gens if g[i] == 0) | {var}
    colon = frozenset(tuple(max(e - 1, 0) if t == i else e for t, e in enumerate(g))
                      for g in gens)
    a = dict(_monomial_numerator(plus, n))
    for d, c in _monomial_numerator(colon, n):
        a[d + 1] = a.get(d + 1, 0) + c
    return tuple(sorted((k, v) for k, v in a.items() if v))


def hilbert_series_leads(M: PresentedModule) -> HilbertSeries:
    """Hilbert series from the lead terms of the relation basis."""
    gb = M.relation_gb()
    ring = M.ring
    n = ring.n
    per_pos: Dict[int, list] = {pos: [] for pos in range(M.gens.rank)}
    for v in gb._qgb:
        key = v[0][0]
        per_pos[term_pos(key)].append(ring.pack.exps(term_okey(key)))
    num: Dict[int, int] = {}
    for pos, tw in enumerate(M.gens.twists):
        part = _monomial_numerator(frozenset(map(tuple, per_pos[pos])), n)
        for d, c in part:
            num[d + tw] = num.get(d + tw, 0) + c
    return HilbertSeries(num, n)


# -- invariants -------------------------------------------------------------


def dimension(M: PresentedModule) -> int:
    """Krull dimension of the module; -1 for the zero module."""
    if "dimension" not in M.cache:
        M.cache["dimension"] = hilbert_series_leads(M).dimension()
    return M.cache["dimension"]


def depth_module(M: PresentedModule) -> int:
    """Depth via the Auslander-Buchsbaum formula over the cover ring."""
    if M.is_zero():
        raise ValueError("depth of the zero module is undefined")
    if "depth" not in M.cache:
        M.cache["depth"] = M.ring.n - q_resolution(M).projective_dimension()
    return M.cache["depth"]


def nu(M: PresentedModule) -> int:
    """Minimal number of generators; 0 for the zero module."""
    return M.nu()


def _k_resolution(base, steps: int) -> FreeResolution:
    """Truncated minimal resolution of the residue field, cached per base."""
    cache = getattr(base, "cache", None)
    have = None if cache is None else cache.get("k_resolution")
    if have is not None and (have.complete or have.length >= steps):
        return have
    k = residue_field_of(base)
    res = resolve(k, max_steps=steps)
    if cache is not None:
        cache["k_resolution"] = res
    return res


def ext_k_module(M: PresentedModule, i: int) -> PresentedModule:
    """Ext^i(k, M) over the base of M, minimally presented."""
    from .homology import hom_complex, homology_at
    res = _k_resolution(M.base, i + 1)
    cx = hom_complex(res, M)
    return homology_at(cx, i)


def type_of(M: PresentedModule) -> int:
    """Cohen-Macaulay type: dim_k Ext^t(k, M) with t the depth of M."""
    if M.is_zero():
        raise ValueError("type of the zero module is undefined")
    if "type" not in M.cache:
        t = depth_module(M)
        ext = ext_k_module(M, t)
        # Ext^t(k, M) is a k-vector space, so its dimension is nu
        M.cache["type"] = ext.nu()
    return M.cache["type"]


def cm_defect(M: PresentedModule) -> int:
    return dimension(M) - depth_module(M)


def is_cohen_macaulay(M: PresentedModule) -> bool:
    return cm_defect(M) == 0


def annihilator(M: PresentedModule) -> Ideal:
    """Annihilator ideal, by intersecting colon ideals of the generators."""
    base = M.base
    if M.gens.rank == 0:
        ring = getattr(base, "cover", base)
        return Ideal(base, [ring.one()])
    gb = M.relation_gb()
    out: Optional[Ideal] = None
    for i in range(M.gens.rank):
        col = quotient(gb, M.gens.basis_vector(i))
        out = col if out is None else intersect_ideals(out, col)
    return out


def is_faithful(M: PresentedModule) -> bool:
    """Whether the annihilator is zero in the base ring."""
    ann = annihilator(M)
    return ann.is_zero()


def poincare_bass(M: PresentedModule, bound: int = 6) -> Dict[str, List[int]]:
    """Truncated Poincare and Bass series over the base.

    ``poincare[i]`` is the i-th Betti number of M over the base (ranks in a
    minimal resolution); ``bass[i]`` is the standard Bass number
    ``dim_k Ext^i(k, M)``.  Beware that some sources define Bass numbers
    with the arguments swapped, which would give Betti numbers of M over
    the base instead; this implementation uses the Ext(k, M) convention.
    """
    if M.is_zero():
        return {"poincare": [0] * (bound + 1), "bass": [0] * (bound + 1)}
    res = resolve(M, max_steps=bound)
    poincare = [res.module(i).rank for i in range(bound + 1)]
    from .homology import hom_complex, homology_at
    kres = _k_resolution(M.base, bound + 1)
    cx = hom_complex(kres, M)
    bass = [homology_at(cx, i).nu() for i in range(bound + 1)]
    return {"poincare": poincare, "bass": bass}


def gdim_bounded(M: PresentedModule, bound: int = 6) -> Dict[str, object]:
    """Bounded Gorenstein-dimension information.

    Returns a dict with ``status`` one of ``certified`` (exact value in
    ``value``), ``bounded_evidence`` (finite and at most ``value`` as far as
    Ext vanishing was observed), or ``inconclusive``.
    """
    from .homology import hom_module, hom_complex, homology_at
    if M.is_zero():
        return {"status": "certified", "value": 0,
                "note": "zero module"}
    base = M.base
    res = resolve(M, max_steps=bound) if isinstance(base, QuotientRing) else resolve(M)
    if res.complete:
        return {"status": "certified", "value": res.projective_dimension(),
                "note": "finite projective dimension"}
    ring_mod = ring_module_of(base)
    if is_cohen_macaulay(ring_mod) and type_of(ring_mod) == 1:
        value = depth_module(ring_mod) - depth_module(M)
        return {"status": "certified", "value": value,
                "note": "Gorenstein base ring: G-dim = depth R - depth M"}
    # evidence: Ext^i(M, R) vanishing as far as the truncation can see
    # (the last step of a truncated resolution cannot witness a kernel)
    resM = res
    cx = hom_complex(resM, ring_mod)
    vanish = []
    for i in range(1, min(bound, resM.length - 1) + 1):
        e = homology_at(cx, i)
        vanish.append(e.is_zero())
    if all(vanish) and vanish:
        return {"status": "bounded_evidence", "value": 0,
                "note": f"Ext^i(M, R) = 0 for 1 <= i <= {len(vanish)}"}
    if vanish and not all(vanish):
        j = 1 + vanish.index(False)
        return {"status": "inconclusive", "value": None,
                "note": f"Ext^{j}(M, R) != 0; no bound certified"}
    return {"status": "inconclusive", "value": None,
            "note": "no structural criterion applied within the bound"}


def module_report(M: PresentedModule) -> Dict[str, object]:
    """Standard invariant bundle for reports."""
    if M.is_zero():
        return {"dim": -1, "depth": None, "pd_q": None, "nu": 0, "type": None,
                "cmd": None, "is_cm": None,
                "betti": [], "hilbert_numerator": []}
    resq = q_resolution(M)
    hs = hilbert_series(M)
    return {
        "dim": dimension(M),
        "depth": depth_module(M),
        "pd_q": resq.projective_dimension(),
        "nu": nu(M),
        "type": type_of(M),
        "cmd": cm_defect(M),
        "is_cm": is_cohen_macaulay(M),
        "betti": resq.betti().rows(),
        "hilbert_numerator": hs.rows(),
    }


def ring_report(R) -> Dict[str, object]:
    """Invariant bundle for the quotient ring itself."""
    Rm = ring_module_of(R)
    rep = module_report(Rm)
    rep["is_gorenstein"] = bool(rep["is_cm"] and rep["type"] == 1)
    return rep


def is_gorenstein_ring(R) -> bool:
    Rm = ring_module_of(R)
    return is_cohen_macaulay(Rm) and type_of(Rm) == 1
