"""Groebner bases: reduced-basis goldens, membership, colon, intersection, syzygies."""

import itertools
import random

import pytest

from charmod.freemod import GradedFreeModule, GradedMatrix
from charmod.groebner import (
    Ideal,
    QuotientRing,
    buchberger,
    intersect_ideals,
    kernel_of_map,
    quotient,
    syzygies,
    syzygy_generators,
)
from charmod.ring import PolyRing


@pytest.fixture(scope="module")
def twisted_cubic():
    ring = PolyRing(32003, ("w", "x", "y", "z"))
    gens = [ring.poly("x^2-w*y"), ring.poly("y^2-x*z"), ring.poly("x*y-w*z")]
    return ring, Ideal(ring, gens)


def test_reduced_basis_golden(twisted_cubic):
    _, ideal = twisted_cubic
    assert [str(g) for g in ideal.groebner_basis()] == [
        "x^2-w*y", "x*y-w*z", "y^2-x*z"]


def test_reduced_basis_is_autoreduced(twisted_cubic):
    ring, ideal = twisted_cubic
    gb = ideal.groebner_basis()
    for i, g in enumerate(gb):
        assert g.lead_coeff() == 1
        # monic, and no term of g reduces modulo the other elements
        rest = Ideal(ring, [h for j, h in enumerate(gb) if j != i])
        assert rest.normal_form(g) == g


def test_reduced_basis_independent_of_generator_order(twisted_cubic):
    ring, ideal = twisted_cubic
    reference = ideal.groebner_basis()
    for perm in itertools.permutations(ideal.gens):
        assert Ideal(ring, list(perm)).groebner_basis() == reference


def test_reduced_basis_independent_of_presentation():
    ring = PolyRing(101, ("x", "y", "z"))
    f, g = ring.poly("x^2+y^2"), ring.poly("x*y+z^2")
    base = Ideal(ring, [f, g])
    mixed = Ideal(ring, [f + g, g, ring.poly("3") * f])
    assert base.groebner_basis() == mixed.groebner_basis()


def test_membership_and_normal_form(twisted_cubic):
    ring, ideal = twisted_cubic
    f = ring.poly("x^3-w*x*y")  # x * (x^2 - w y)
    assert ideal.contains(f)
    assert ideal.normal_form(f).is_zero()
    g = ring.poly("x^3")
    assert not ideal.contains(g)
    nf = ideal.normal_form(g)
    assert ideal.contains(g - nf)
    # normal form is idempotent and k-linear
    assert ideal.normal_form(nf) == nf
    h = ring.poly("w*y*z+z^3")
    assert ideal.normal_form(g + h) == nf + ideal.normal_form(h)


def test_trivial_ideals():
    ring = PolyRing(13, ("x", "y"))
    assert Ideal(ring, []).is_zero()
    assert Ideal(ring, [ring.poly("0")]).is_zero()
    unit = Ideal(ring, [ring.poly("x"), ring.poly("3")])
    assert unit.is_unit()
    assert unit.contains(ring.one())


def test_ideal_equality_compares_reduced_bases():
    ring = PolyRing(101, ("x", "y"))
    a = Ideal(ring, [ring.poly("x"), ring.poly("y")])
    b = Ideal(ring, [ring.poly("x+y"), ring.poly("y")])
    assert a.equals(b)
    assert not a.equals(Ideal(ring, [ring.poly("x")]))


def test_colon_ideal_oracle():
    ring = PolyRing(101, ("x", "y"))
    ideal = Ideal(ring, [ring.poly("x^2"), ring.poly("x*y")])
    col = quotient(ideal.submodule(), [ring.poly("x")])
    assert col.equals(Ideal(ring, [ring.poly("x"), ring.poly("y")]))
    # colon by an element of the ideal is the unit ideal
    assert quotient(ideal.submodule(), [ring.poly("x^2")]).is_unit()
    # colon by 1 returns the ideal itself
    assert quotient(ideal.submodule(), [ring.one()]).equals(ideal)
    # colon by zero is the unit ideal
    assert quotient(ideal.submodule(), [ring.poly("0")]).is_unit()


def test_colon_oracle_by_membership_scan():
    # brute-force check on a small degree window: a is in (I : e) iff a*e in I
    ring = PolyRing(13, ("x", "y"))
    ideal = Ideal(ring, [ring.poly("x^3"), ring.poly("x*y^2")])
    e = ring.poly("x*y")
    col = quotient(ideal.submodule(), [e])
    rng = random.Random(5)
    mons = ["1", "x", "y", "x^2", "x*y", "y^2", "x^3", "x^2*y", "x*y^2", "y^3"]
    for _ in range(60):
        a = sum((ring.poly(m) * ring.poly(str(rng.randrange(13)))
                 for m in rng.sample(mons, 3)), ring.poly("0"))
        assert col.contains(a) == ideal.contains(a * e)


def test_intersection_oracle():
    ring = PolyRing(101, ("x", "y"))
    a = Ideal(ring, [ring.poly("x")])
    b = Ideal(ring, [ring.poly("y")])
    meet = intersect_ideals(a, b)
    assert meet.equals(Ideal(ring, [ring.poly("x*y")]))
    # intersection with a larger ideal returns the smaller one
    m = Ideal(ring, [ring.poly("x"), ring.poly("y")])
    assert intersect_ideals(m, a).equals(a)
    assert intersect_ideals(a, Ideal(ring, [])).is_zero()


def test_intersection_membership_property():
    ring = PolyRing(13, ("x", "y", "z"))
    a = Ideal(ring, [ring.poly("x*y-z^2"), ring.poly("x^2")])
    b = Ideal(ring, [ring.poly("y"), ring.poly("z^3")])
    meet = intersect_ideals(a, b)
    for g in meet.groebner_basis():
        assert a.contains(g) and b.contains(g)
    # witnesses on either side that are not common
    assert not meet.contains(ring.poly("x^2"))
    assert not meet.contains(ring.poly("y"))


def test_koszul_kernel():
    ring = PolyRing(101, ("x", "y"))
    f = GradedMatrix.from_columns(ring, [0], [[ring.poly("x")], [ring.poly("y")]])
    ker = kernel_of_map(f)
    syzygy = ker.ambient.vector_from_polys([ring.poly("y"), ring.poly("-x")])
    assert ker.contains(syzygy)
    for v in ker.gens:
        assert f.apply(list(v)) == []


def test_syzygies_annihilate_generators(twisted_cubic):
    ring, ideal = twisted_cubic
    sub = ideal.submodule()
    syz = syzygies(sub)
    gens = list(sub.gens)
    twists = [sub.ambient.vector_degree(list(v)) for v in gens]
    mat = GradedMatrix(GradedFreeModule(ring, twists),
                       sub.ambient, [list(v) for v in gens])
    assert syz.gens, "twisted cubic has nontrivial first syzygies"
    for s in syz.gens:
        assert mat.apply(list(s)) == []


def test_syzygy_generators_are_complete():
    # every random relation among the columns reduces to zero mod the syzygies
    ring = PolyRing(101, ("x", "y", "z"))
    cols = [ring.poly("x*y"), ring.poly("y*z"), ring.poly("x*z")]
    ambient = GradedFreeModule(ring, [0])
    vecs = [ambient.vector_from_polys([f]) for f in cols]
    syz = syzygy_generators(vecs, ambient)
    amb2 = GradedFreeModule(ring, [f.degree() for f in cols])
    sgb = buchberger(syz, amb2)
    rng = random.Random(9)
    hits = 0
    for _ in range(40):
        coeffs = [ring.poly(m) * ring.poly(str(rng.randrange(1, 101)))
                  for m in rng.sample(["x", "y", "z", "x*y", "z^2", "y^2"], 3)]
        image = sum((c * f for c, f in zip(coeffs, cols)), ring.poly("0"))
        if not image.is_zero():
            continue
        hits += 1
        assert sgb.contains(amb2.vector_from_polys(coeffs))
    # also check handmade relations: z*(xy) - x*(yz) = 0 etc.
    assert sgb.contains(amb2.vector_from_polys(
        [ring.poly("z"), ring.poly("-x"), ring.poly("0")]))
    assert sgb.contains(amb2.vector_from_polys(
        [ring.poly("0"), ring.poly("x"), ring.poly("-y")]))


def test_quotient_ring_normal_forms():
    ring = PolyRing(32003, ("x", "y"))
    R = QuotientRing(ring, [ring.poly("x^2"), ring.poly("x*y")])
    assert R.poly("x^2+x*y").is_zero()
    assert R.poly("y^3") == ring.poly("y^3")
    assert R.nf(ring.poly("x") * ring.poly("x+y")).is_zero()
    # nf is a ring map on representatives
    f, g = ring.poly("x+y"), ring.poly("x-y")
    assert R.nf(f * g) == R.nf(R.nf(f) * R.nf(g))


def test_quotient_ring_rejects_bad_ideals():
    ring = PolyRing(101, ("x", "y"))
    with pytest.raises(ValueError):
        QuotientRing(ring, [ring.poly("x^2+y")])  # inhomogeneous
    with pytest.raises(ValueError):
        QuotientRing(ring, [ring.poly("1")])  # unit ideal


def test_submodule_membership_over_quotient_ring():
    ring = PolyRing(101, ("x", "y"))
    R = QuotientRing(ring, [ring.poly("x^2"), ring.poly("x*y")])
    ambient = GradedFreeModule(R, [0])
    sub = buchberger([ambient.vector_from_polys([R.poly("y")])], ambient)
    # x*y = 0 in R, so x*e is not in (y)e but x^2*e = 0 is
    assert sub.contains(ambient.vector_from_polys([R.poly("y^2")]))
    assert not sub.contains(ambient.vector_from_polys([R.poly("x")]))
    assert sub.contains(ambient.vector_from_polys([R.poly("x^2")]))


def test_colon_over_quotient_ring():
    ring = PolyRing(101, ("x", "y"))
    R = QuotientRing(ring, [ring.poly("x^2"), ring.poly("x*y")])
    ambient = GradedFreeModule(R, [0])
    zero = buchberger([], ambient)
    ann = quotient(zero, [R.poly("x")])
    # annihilator of x in R = Q/(x^2, xy) is (x, y)
    assert ann.equals(Ideal(R, [R.poly("x"), R.poly("y")]))
