"""Presented graded modules and (minimal) free resolutions.

A presented module is a cokernel ``F_0 / im(F_1 -> F_0)`` over the base
ring; over a quotient ``R = Q/I`` the ideal relations are implicit and all
stored data is kept in normal form modulo ``I``.  Resolutions are built by
iterated syzygy computation with incremental minimalization: each new
differential has its scalar pivots cancelled (a Schur complement step whose
only effect on the previous differential is a column deletion) and its zero
columns dropped before the next syzygy step, so every prefix of the
resolution is minimal and graded Betti numbers read off the twists.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .freemod import (
    GradedFreeModule,
    GradedMatrix,
    Vector,
    term_key,
    term_okey,
    term_pos,
)
from .kernel import POS_BITS, scaled_merge
from .groebner import QuotientRing, SubmoduleGB, buchberger, syzygy_generators
from .ring import Polynomial, PolyRing


class PresentedModule:
    """A graded module given by generators and relations.

    ``gens`` is the free module on the generators, ``rels`` a homogeneous
    matrix whose columns generate the relation submodule (never including
    the implicit ideal relations over a quotient base).
    """

    __slots__ = ("gens", "rels", "cache")

    def __init__(self, gens: GradedFreeModule, rels: Optional[GradedMatrix] = None):
        if rels is None:
            rels = GradedMatrix.zero(GradedFreeModule(gens.base, []), gens)
        if rels.target != gens:
            raise ValueError("relation matrix target does not match generators")
        self.gens = gens
        self.rels = rels
        self.cache: dict = {}

    # -- constructors ----------------------------------------------------
    @classmethod
    def free(cls, base, twists: Sequence[int]) -> "PresentedModule":
        return cls(GradedFreeModule(base, twists))

    @classmethod
    def ring_module(cls, base) -> "PresentedModule":
        """The base ring as a module over itself."""
        return cls.free(base, [0])

    @classmethod
    def residue_field(cls, base) -> "PresentedModule":
        """k = base / (variables), as a module over the base."""
        ring = getattr(base, "cover", base)
        gens = GradedFreeModule(base, [0])
        cols = [gens.vector_from_polys([ring.var(i)]) for i in range(ring.n)]
        src = GradedFreeModule(base, [1] * ring.n)
        return cls(gens, GradedMatrix(src, gens, cols))

    @classmethod
    def cokernel(cls, f: GradedMatrix) -> "PresentedModule":
        return cls(f.target, f)

    @classmethod
    def quotient_by_ideal(cls, base, ideal_gens) -> "PresentedModule":
        """base / (ideal_gens) as a cyclic module."""
        gens = GradedFreeModule(base, [0])
        cols = []
        twists = []
        for f in ideal_gens:
            v = gens.vector_from_polys([f])
            if v:
                cols.append(v)
                twists.append(gens.vector_degree(v))
        src = GradedFreeModule(base, twists)
        return cls(gens, GradedMatrix(src, gens, cols))

    # -- basic structure -------------------------------------------------
    @property
    def base(self):
        return self.gens.base

    @property
    def ring(self) -> PolyRing:
        return self.gens.ring

    def __eq__(self, other):
        return (
            isinstance(other, PresentedModule)
            and other.gens == self.gens
            and other.rels == self.rels
        )

    def __hash__(self):
        return hash((self.gens, self.rels))

    def __repr__(self):
        return (f"<PresentedModule {self.gens.rank} gens {self.rels.source.rank} rels "
                f"over {self.base!r}>")

    def relation_gb(self) -> SubmoduleGB:
        if "relation_gb" not in self.cache:
            self.cache["relation_gb"] = buchberger(
                [list(c) for c in self.rels.cols], self.gens)
        return self.cache["relation_gb"]

    def element_is_zero(self, v: Vector) -> bool:
        return self.relation_gb().contains(list(v))

    def q_structure(self) -> "PresentedModule":
        """The same module regarded over the polynomial cover ring."""
        base = self.base
        if not isinstance(base, QuotientRing):
            return self
        if "q_structure" in self.cache:
            return self.cache["q_structure"]
        ring = base.cover
        gens = GradedFreeModule(ring, self.gens.twists)
        cols = [list(c) for c in self.rels.cols]
        twists = list(self.rels.source.twists)
        for g in base.ideal_gb_polys():
            d = g.homogeneous_degree()
            for pos in range(gens.rank):
                cols.append([(term_key(k, pos), c) for k, c in g.terms])
                twists.append(d + gens.twists[pos])
        src = GradedFreeModule(ring, twists)
        out = PresentedModule(gens, GradedMatrix(src, gens, cols, normalize=False))
        self.cache["q_structure"] = out
        return out

    def twist(self, d: int) -> "PresentedModule":
        """The shifted module M(-d): all generator degrees raised by d."""
        gens = self.gens.shift(d)
        src = self.rels.source.shift(d)
        return PresentedModule(gens, GradedMatrix(src, gens, self.rels.cols,
                                                  normalize=False, check=False))

    def minimal(self) -> "PresentedModule":
        """Equivalent presentation with no scalar entries and no zero columns."""
        if "minimal" in self.cache:
            return self.cache["minimal"]
        _, rels = _cancel_units(None, self.rels)
        keep = [j for j, c in enumerate(rels.cols) if c]
        if len(keep) != rels.source.rank:
            rels = rels.delete(cols=[j for j, c in enumerate(rels.cols) if not c])
        out = PresentedModule(rels.target, rels)
        out.cache["minimal"] = out
        self.cache["minimal"] = out
        return out

    def is_zero(self) -> bool:
        return self.minimal().gens.rank == 0

    def nu(self) -> int:
        """Minimal number of generators."""
        return self.minimal().gens.rank


def _unit_pivot(m: GradedMatrix):
    """Smallest (row, col) position of a scalar entry, or None."""
    best = None
    for j, col in enumerate(m.cols):
        for k, c in col:
            if term_okey(k) == 0:
                pos = (term_pos(k), j)
                if best is None or pos < best:
                    best = (pos[0], pos[1], c)
    return best


def _schur_cancel(m: GradedMatrix, r: int, c: int, u: int) -> GradedMatrix:
    """Cancel the scalar pivot ``u`` at (r, c): Schur update, delete row/col."""
    ring = m.source.ring
    p = ring.field.p
    ctx = ring.pack.ctx
    base = m.base
    uinv = pow(u, p - 2, p)
    pivot = list(m.cols[c])
    new_cols = []
    for j, col in enumerate(m.cols):
        if j == c:
            new_cols.append(list(col))
            continue
        entry = [(term_okey(k), cc) for k, cc in col if term_pos(k) == r]
        if entry:
            nc = list(col)
            for okey, cc in entry:
                nc = scaled_merge(nc, pivot, (p - cc * uinv % p) % p,
                                  okey << POS_BITS, p, ctx)
            if isinstance(base, QuotientRing):
                nc = base.normal_form_vector(nc, m.target)
            new_cols.append(nc)
        else:
            new_cols.append(list(col))
    tmp = GradedMatrix(m.source, m.target, new_cols, normalize=False, check=False)
    return tmp.delete(rows=[r], cols=[c])


def _cancel_units(prev: Optional[GradedMatrix], new: GradedMatrix):
    """Cancel every scalar entry of ``new``; ``prev`` (the previous
    differential, if any) loses the matching columns."""
    while True:
        hit = _unit_pivot(new)
        if hit is None:
            return prev, new
        r, c, u = hit
        new = _schur_cancel(new, r, c, u)
        if prev is not None:
            prev = prev.delete(cols=[r])


class BettiTable:
    """Graded Betti numbers ``beta_{i,j}`` of a minimal resolution."""

    __slots__ = ("entries",)

    def __init__(self, entries: dict):
        self.entries = {k: v for k, v in entries.items() if v}

    @classmethod
    def from_resolution(cls, res: "FreeResolution") -> "BettiTable":
        if not res.minimal:
            raise ValueError("Betti numbers require a minimal resolution")
        entries: dict = {}
        for i, mod in enumerate(res.modules):
            for t in mod.twists:
                entries[(i, t)] = entries.get((i, t), 0) + 1
        return cls(entries)

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    def max_step(self) -> int:
        return max((i for (i, _) in self.entries), default=-1)

    def rows(self) -> List[List[int]]:
        """Canonical [homological degree, twist, count] rows."""
        return [[i, j, self.entries[(i, j)]] for (i, j) in sorted(self.entries)]

    def restrict(self, max_i: int) -> "BettiTable":
        return BettiTable({(i, j): v for (i, j), v in self.entries.items() if i <= max_i})

    def __eq__(self, other):
        return isinstance(other, BettiTable) and other.entries == self.entries

    def __hash__(self):
        return hash(tuple(sorted(self.entries.items())))

    def __repr__(self):
        return f"BettiTable({self.entries})"

    def pretty(self) -> str:
        if not self.entries:
            return "(zero module)"
        lines = ["  i  j  beta"]
        for i, j, v in self.rows():
            lines.append(f"{i:3d}{j:3d}{v:6d}")
        return "\n".join(lines)


class FreeResolution:
    """A chain of free modules ``F_0 <- F_1 <- ...`` with differentials."""

    __slots__ = ("base", "modules", "diffs", "minimal", "complete")

    def __init__(self, base, modules, diffs, minimal: bool, complete: bool):
        self.base = base
        self.modules = tuple(modules)
        self.diffs = tuple(diffs)
        self.minimal = minimal
        self.complete = complete

    @property
    def length(self) -> int:
        return len(self.diffs)

    def module(self, i: int) -> GradedFreeModule:
        if 0 <= i < len(self.modules):
            return self.modules[i]
        return GradedFreeModule(self.base, [])

    def diff(self, i: int) -> GradedMatrix:
        """The differential F_i -> F_{i-1}; zero matrix outside range."""
        if 1 <= i <= len(self.diffs):
            return self.diffs[i - 1]
        return GradedMatrix.zero(self.module(i), self.module(i - 1))

    def projective_dimension(self) -> int:
        if not self.complete:
            raise ValueError("resolution is truncated; projective dimension unknown")
        for i in range(len(self.modules) - 1, -1, -1):
            if self.modules[i].rank:
                return i
        return -1

    def betti(self) -> BettiTable:
        return BettiTable.from_resolution(self)

    def validate(self) -> bool:
        """Check d o d = 0; used by tests."""
        for i in range(2, len(self.diffs) + 1):
            comp = self.diff(i - 1).compose(self.diff(i))
            if not comp.is_zero():
                return False
        return True

    def __repr__(self):
        ranks = " <- ".join(str(m.rank) for m in self.modules)
        state = "minimal" if self.minimal else "raw"
        tail = "" if self.complete else " (truncated)"
        return f"<FreeResolution {ranks} {state}{tail}>"


def resolve(M: PresentedModule, max_steps: Optional[int] = None) -> FreeResolution:
    """Minimal free resolution of ``M`` over its base.

    Over the polynomial ring the resolution is finite and ``max_steps`` may
    be omitted.  Over a quotient ring resolutions are generally infinite, so
    a truncation depth is required; the result is flagged ``complete`` only
    when the syzygies actually vanished.
    """
    base = M.base
    over_quotient = isinstance(base, QuotientRing) and not base.is_polynomial_ring()
    if over_quotient and max_steps is None:
        raise ValueError("resolution over a quotient ring needs max_steps")
    ring = M.ring
    limit = max_steps if max_steps is not None else ring.n + 1
    Mm = M.minimal()
    modules: List[GradedFreeModule] = [Mm.gens]
    diffs: List[GradedMatrix] = []
    if Mm.gens.rank == 0 or Mm.rels.source.rank == 0:
        return FreeResolution(base, modules, diffs, minimal=True, complete=True)
    cols = [list(c) for c in Mm.rels.cols]
    complete = False
    while len(diffs) < limit:
        amb = modules[-1]
        twists = [amb.vector_degree(c) for c in cols]
        src = GradedFreeModule(base, twists)
        new = GradedMatrix(src, amb, cols, normalize=False, check=False)
        prev = diffs[-1] if diffs else None
        prev, new = _cancel_units(prev, new)
        dead = [j for j, c in enumerate(new.cols) if not c]
        if dead:
            new = new.delete(cols=dead)
        if prev is not None:
            diffs[-1] = prev
            modules[-1] = prev.source
        if new.source.rank == 0:
            complete = True
            break
        diffs.append(new)
        modules.append(new.source)
        nxt = syzygy_generators([list(c) for c in new.cols], new.target)
        # syzygies live on the basis of new.source
        if not nxt:
            complete = True
            break
        cols = nxt
        # re-anchor: syzygy vectors are in the free module on new's columns
        if len(diffs) >= limit:
            break
    if not over_quotient and not complete:
        raise RuntimeError("resolution over the polynomial ring did not terminate")
    return FreeResolution(base, modules, diffs, minimal=True, complete=complete)


def minimalize(res: FreeResolution) -> FreeResolution:
    """Homotopy-equivalent complex with every scalar pivot cancelled.

    Accepts any finite complex (``d o d = 0``); zero columns are kept since
    removing them is not homotopy-safe in general.
    """
    mats = list(res.diffs)
    if not mats:
        return FreeResolution(res.base, res.modules, res.diffs, True, res.complete)
    changed = True
    while changed:
        changed = False
        for k in range(len(mats)):
            hit = _unit_pivot(mats[k])
            if hit is None:
                continue
            r, c, u = hit
            mats[k] = _schur_cancel(mats[k], r, c, u)
            if k > 0:
                mats[k - 1] = mats[k - 1].delete(cols=[r])
            if k + 1 < len(mats):
                mats[k + 1] = mats[k + 1].delete(rows=[c])
            changed = True
            break
    modules = [mats[0].target] + [m.source for m in mats]
    while len(mats) and mats[-1].source.rank == 0:
        mats.pop()
        modules.pop()
    return FreeResolution(res.base, modules, mats, minimal=True, complete=res.complete)


def betti(res: FreeResolution) -> BettiTable:
    """Graded Betti table of a minimal resolution; raises otherwise."""
    return BettiTable.from_resolution(res)


def projective_dimension(M: PresentedModule) -> int:
    """pd over the polynomial cover; -1 for the zero module."""
    res = resolve(M.q_structure())
    return res.projective_dimension()
