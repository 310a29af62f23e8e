"""Twisted graded free modules, their vectors, and homogeneous matrices.

A vector in ``F = base(-t_1) + ... + base(-t_r)`` is a descending term list
as described in ``kernel.common``; the degree of a term is the monomial
degree plus the twist of its position.  Matrices are stored column-wise as
vectors of the target, so a matrix is precisely a list of generator images.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence, Tuple

from .kernel import POS_BITS, POS_MASK, scaled_merge
from .ring import Polynomial, PolyRing

Term = Tuple[int, int]
Vector = List[Term]


def term_key(okey: int, pos: int) -> int:
    return (okey << POS_BITS) | (POS_MASK - pos)


def term_pos(key: int) -> int:
    return POS_MASK - (key & POS_MASK)


def term_okey(key: int) -> int:
    return key >> POS_BITS


class GradedFreeModule:
    """A free module with integer generator twists over a base ring.

    The base is a ``PolyRing`` or a ``QuotientRing``; twist ``t`` at
    position ``i`` means the generator ``e_i`` sits in degree ``t``.
    """

    __slots__ = ("base", "twists")

    def __init__(self, base, twists: Sequence[int]):
        self.base = base
        self.twists = tuple(int(t) for t in twists)
        if len(self.twists) > POS_MASK:
            raise ValueError("free module rank exceeds position field")

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def ring(self) -> PolyRing:
        """The underlying polynomial ring (the cover of a quotient base)."""
        return getattr(self.base, "cover", self.base)

    def __eq__(self, other):
        return (
            isinstance(other, GradedFreeModule)
            and other.base == self.base
            and other.twists == self.twists
        )

    def __hash__(self):
        return hash((self.base, self.twists))

    def __repr__(self):
        return f"GradedFreeModule({self.base!r}, {list(self.twists)})"

    # -- vector helpers --------------------------------------------------
    def basis_vector(self, pos: int, okey: int = 0, coeff: int = 1) -> Vector:
        coeff %= self.ring.field.p
        if coeff == 0:
            return []
        return [(term_key(okey, pos), coeff)]

    def vector_from_polys(self, polys: Sequence[Polynomial]) -> Vector:
        if len(polys) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(polys)}")
        terms: Vector = []
        for pos, f in enumerate(polys):
            for okey, c in f.terms:
                terms.append((term_key(okey, pos), c))
        terms.sort(reverse=True)
        return terms

    def vector_to_polys(self, v: Vector) -> List[Polynomial]:
        ring = self.ring
        coords: List[List[Term]] = [[] for _ in range(self.rank)]
        for key, c in v:
            coords[term_pos(key)].append((term_okey(key), c))
        return [Polynomial(ring, terms) for terms in coords]

    def vector_degree(self, v: Vector):
        """Common degree of a homogeneous vector; None for zero; raises otherwise."""
        if not v:
            return None
        pack = self.ring.pack
        degs = {pack.deg(term_okey(k)) + self.twists[term_pos(k)] for k, _ in v}
        if len(degs) != 1:
            raise ValueError("vector is not homogeneous")
        return degs.pop()

    def vector_is_homogeneous(self, v: Vector) -> bool:
        try:
            self.vector_degree(v)
            return True
        except ValueError:
            return False

    def shift(self, d: int) -> "GradedFreeModule":
        return GradedFreeModule(self.base, [t + d for t in self.twists])


def v_add(u: Vector, v: Vector, p: int) -> Vector:
    out: Vector = []
    i = j = 0
    nu, nv = len(u), len(v)
    while i < nu and j < nv:
        if u[i][0] > v[j][0]:
            out.append(u[i])
            i += 1
        elif u[i][0] < v[j][0]:
            out.append(v[j])
            j += 1
        else:
            c = (u[i][1] + v[j][1]) % p
            if c:
                out.append((u[i][0], c))
            i += 1
            j += 1
    out.extend(u[i:])
    out.extend(v[j:])
    return out


def v_scale(v: Vector, c: int, p: int) -> Vector:
    c %= p
    if c == 0:
        return []
    if c == 1:
        return list(v)
    return [(k, cc * c % p) for k, cc in v]


def v_neg(v: Vector, p: int) -> Vector:
    return [(k, p - c) for k, c in v]


def v_mul_poly(v: Vector, f: Polynomial, ctx, p: int) -> Vector:
    out: Vector = []
    for okey, c in f.terms:
        out = scaled_merge(out, v, c, okey << POS_BITS, p, ctx)
    return out


class GradedMatrix:
    """Homogeneous matrix between graded free modules, stored by columns.

    Column ``j`` is the image of the ``j``-th source generator and must be
    homogeneous of degree ``source.twists[j]`` (or zero).  Entries over a
    quotient base are kept in normal form with respect to the defining ideal.
    """

    __slots__ = ("source", "target", "cols")

    def __init__(self, source: GradedFreeModule, target: GradedFreeModule, cols,
                 normalize: bool = True, check: bool = True):
        if source.base != target.base:
            raise ValueError("source and target over different bases")
        self.source = source
        self.target = target
        cols = [list(c) for c in cols]
        if len(cols) != source.rank:
            raise ValueError(f"expected {source.rank} columns, got {len(cols)}")
        if normalize and hasattr(source.base, "normal_form_vector"):
            cols = [source.base.normal_form_vector(c, target) for c in cols]
        self.cols = tuple(tuple(c) for c in cols)
        if check:
            for j, col in enumerate(self.cols):
                if not col:
                    continue
                d = target.vector_degree(list(col))
                if d != source.twists[j]:
                    raise ValueError(
                        f"column {j} has degree {d}, expected twist {source.twists[j]}"
                    )

    @classmethod
    def from_columns(cls, base, target_twists, cols_polys, col_twists=None,
                     check: bool = True) -> "GradedMatrix":
        """Build from columns given as lists of polynomials."""
        target = GradedFreeModule(base, target_twists)
        cols = [target.vector_from_polys(c) for c in cols_polys]
        if col_twists is None:
            col_twists = [target.vector_degree(c) if c else 0 for c in cols]
        source = GradedFreeModule(base, col_twists)
        return cls(source, target, cols, check=check)

    @classmethod
    def identity(cls, module: GradedFreeModule) -> "GradedMatrix":
        cols = [module.basis_vector(i) for i in range(module.rank)]
        return cls(module, module, cols, normalize=False, check=False)

    @classmethod
    def zero(cls, source: GradedFreeModule, target: GradedFreeModule) -> "GradedMatrix":
        return cls(source, target, [[] for _ in range(source.rank)],
                   normalize=False, check=False)

    @property
    def base(self):
        return self.source.base

    def entry(self, i: int, j: int) -> Polynomial:
        ring = self.source.ring
        terms = [(term_okey(k), c) for k, c in self.cols[j] if term_pos(k) == i]
        return Polynomial(ring, terms)

    def entries(self) -> List[List[Polynomial]]:
        return [[self.entry(i, j) for j in range(self.source.rank)]
                for i in range(self.target.rank)]

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def apply(self, v: Vector) -> Vector:
        """Image of a source vector: substitute columns for basis vectors."""
        ctx = self.source.ring.pack.ctx
        p = self.source.ring.field.p
        out: Vector = []
        for key, c in v:
            col = self.cols[term_pos(key)]
            if col:
                out = scaled_merge(out, col, c, (term_okey(key)) << POS_BITS, p, ctx)
        return out

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """self o other, defined when other.target == self.source."""
        if other.target != self.source:
            raise ValueError("composition mismatch")
        cols = [self.apply(list(c)) for c in other.cols]
        return GradedMatrix(other.source, self.target, cols, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def transpose_dual(self) -> "GradedMatrix":
        """Matrix of Hom(-, base): transpose with negated twists."""
        src = GradedFreeModule(self.base, [-t for t in self.target.twists])
        tgt = GradedFreeModule(self.base, [-t for t in self.source.twists])
        ent = self.entries()
        cols = []
        for i in range(self.target.rank):
            cols.append(tgt.vector_from_polys([ent[i][j] for j in range(self.source.rank)]))
        return GradedMatrix(src, tgt, cols, check=False)

    def delete(self, rows=(), cols=()) -> "GradedMatrix":
        rows = set(rows)
        colset = set(cols)
        keep_rows = [i for i in range(self.target.rank) if i not in rows]
        remap = {old: new for new, old in enumerate(keep_rows)}
        new_target = GradedFreeModule(self.base, [self.target.twists[i] for i in keep_rows])
        new_cols = []
        new_twists = []
        for j, col in enumerate(self.cols):
            if j in colset:
                continue
            nc = []
            for k, c in col:
                pos = term_pos(k)
                if pos in rows:
                    continue
                nc.append((term_key(term_okey(k), remap[pos]), c))
            nc.sort(reverse=True)
            new_cols.append(nc)
            new_twists.append(self.source.twists[j])
        new_source = GradedFreeModule(self.base, new_twists)
        return GradedMatrix(new_source, new_target, new_cols, normalize=False, check=False)

    def __eq__(self, other):
        return (
            isinstance(other, GradedMatrix)
            and other.source == self.source
            and other.target == self.target
            and other.cols == self.cols
        )

    def __hash__(self):
        return hash((self.source, self.target, self.cols))

    def __repr__(self):
        r, c = self.target.rank, self.source.rank
        return f"<GradedMatrix {r}x{c} over {self.base!r}>"

    def pretty(self) -> str:
        ent = self.entries()
        if not ent:
            return "(empty 0-row matrix)"
        cells = [[str(e) for e in row] for row in ent]
        widths = [max((len(cells[i][j]) for i in range(len(cells))), default=1)
                  for j in range(self.source.rank)]
        lines = []
        for row in cells:
            lines.append("[ " + " , ".join(s.rjust(w) for s, w in zip(row, widths)) + " ]")
        return "\n".join(lines)
