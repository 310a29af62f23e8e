"""Kernel-level tests: packing, divisibility, and backend parity."""

import random

import pytest

from charmod.kernel import (HAVE_FAST, OrderCtx, POS_BITS, backend_name,
                            divides, epack, make_reducer, pure, scaled_merge)
from charmod.ring import PolyRing, PrimeField


def _ring(p=32003, n=3, order="grevlex"):
    return PolyRing(PrimeField(p), "wxyz"[:n], order)


def _key(ring, exps, pos=0):
    return (ring.pack.okey(exps) << POS_BITS) | (0xFFFF - pos)


def _random_vector(rng, ring, p, maxlen=8, width=3, positions=3):
    terms = {}
    for _ in range(rng.randrange(1, maxlen)):
        exps = [rng.randrange(0, width) for _ in range(ring.n)]
        terms[_key(ring, exps, rng.randrange(positions))] = rng.randrange(1, p)
    return sorted(terms.items(), reverse=True)


def test_epack_recovers_exponents_grevlex():
    ring = _ring(n=4)
    ctx = ring.pack.ctx
    fb = ctx.fb
    for exps in [(0, 0, 0, 0), (1, 2, 0, 3), (3, 3, 3, 3), (0, 0, 5, 0)]:
        ep = epack(ring.pack.okey(exps), ctx)
        unpacked = tuple((ep >> ((ctx.n - 1 - i) * fb)) & ((1 << fb) - 1)
                         for i in range(ctx.n))
        assert unpacked == exps


def test_divides_matches_componentwise():
    ring = _ring(n=3)
    ctx = ring.pack.ctx
    rng = random.Random(0)
    for _ in range(300):
        u = tuple(rng.randrange(0, 4) for _ in range(3))
        v = tuple(rng.randrange(0, 4) for _ in range(3))
        expected = all(a <= b for a, b in zip(u, v))
        got = divides(epack(ring.pack.okey(u), ctx),
                      epack(ring.pack.okey(v), ctx), ctx.guards)
        assert got == expected, (u, v)


def test_add_scaled_is_sparse_polynomial_sum():
    p = 13
    ring = _ring(p=p, n=2)
    ctx = ring.pack.ctx
    u = [(_key(ring, (2, 0)), 5), (_key(ring, (0, 1)), 1)]
    v = [(_key(ring, (1, 0)), 4), (_key(ring, (0, 1)), 3)]
    got = pure.add_scaled(u, v, 2, 0, p)
    # 2*v = (8, 6); sum keeps descending order and drops nothing here
    as_dict = dict(got)
    assert as_dict[_key(ring, (2, 0))] == 5
    assert as_dict[_key(ring, (1, 0))] == 8
    assert as_dict[_key(ring, (0, 1))] == (1 + 6) % p
    # scaling by a monomial shifts keys
    shift = ring.pack.okey((1, 1)) << POS_BITS
    shifted = pure.add_scaled([], v, 1, shift, p)
    assert shifted[0][0] == _key(ring, (2, 1))


def test_cancellation_drops_zero_coefficients():
    p = 7
    ring = _ring(p=p, n=2)
    u = [(_key(ring, (1, 0)), 3)]
    v = [(_key(ring, (1, 0)), 2)]
    assert pure.add_scaled(u, v, 2, 0, p) == []


def test_reducer_normal_form_idempotent():
    p = 32003
    ring = _ring(p=p, n=3)
    ctx = ring.pack.ctx
    rng = random.Random(3)
    basis = [_random_vector(rng, ring, p, positions=1) for _ in range(3)]
    red = make_reducer(p, ctx, basis)
    for _ in range(40):
        v = _random_vector(rng, ring, p, positions=1)
        r = red.nf(v)
        assert red.nf(r) == r


def test_nf_q_reconstructs_input():
    p = 101
    ring = _ring(p=p, n=3)
    ctx = ring.pack.ctx
    rng = random.Random(4)
    basis = [_random_vector(rng, ring, p, positions=1) for _ in range(3)]
    red = make_reducer(p, ctx, basis)
    for _ in range(25):
        v = _random_vector(rng, ring, p, positions=1)
        r, quots = red.nf_q(v)
        acc = list(r)
        for g, q in zip(basis, quots):
            for okey, c in q:
                acc = pure.add_scaled(acc, g, c, okey << POS_BITS, p)
        assert acc == sorted(v, reverse=True)


def test_zero_vector_rejected():
    ring = _ring()
    red = make_reducer(32003, ring.pack.ctx)
    with pytest.raises(ValueError):
        red.append([])


@pytest.mark.skipif(not HAVE_FAST, reason="compiled kernel not built")
def test_backend_parity_randomized():
    rng = random.Random(12)
    for _ in range(120):
        p = rng.choice([2, 3, 13, 101, 32003])
        n = rng.choice([1, 2, 3, 4])
        ring = _ring(p=p, n=n, order=rng.choice(["grevlex", "lex"]))
        ctx = ring.pack.ctx
        if not ctx.fits64:
            continue
        basis = [_random_vector(rng, ring, p) for _ in range(rng.randrange(1, 4))]
        fast = make_reducer(p, ctx, basis)
        slow = pure.Reducer(p, ctx, basis)
        assert type(fast).__module__.endswith("_fast")
        for _ in range(4):
            v = _random_vector(rng, ring, p)
            assert fast.nf(v) == slow.nf(v)
            rf, qf = fast.nf_q(v)
            rs, qs = slow.nf_q(v)
            assert rf == rs and list(qf) == list(qs)
            assert fast.find_reducer(v[0][0]) == slow.find_reducer(v[0][0])
        u, w = _random_vector(rng, ring, p), _random_vector(rng, ring, p)
        sh = ring.pack.okey([1] * n) << POS_BITS
        c = rng.randrange(1, p)
        assert (scaled_merge(u, w, c, sh, p, ctx)
                == pure.add_scaled(u, w, c, sh, p))


@pytest.mark.skipif(not HAVE_FAST, reason="compiled kernel not built")
def test_force_pure_and_width_gates():
    ring = _ring()
    ctx = ring.pack.ctx
    assert backend_name() == "compiled"
    assert type(make_reducer(32003, ctx)).__module__.endswith("_fast")
    assert isinstance(make_reducer(32003, ctx, force_pure=True), pure.Reducer)
    # primes at or beyond 31 bits must take the pure path
    big = (1 << 31) + 11
    assert isinstance(make_reducer(big, ctx), pure.Reducer)


def test_compiled_accepts_tuple_vectors():
    ring = _ring()
    ctx = ring.pack.ctx
    u = ((_key(ring, (1, 0, 0)), 5),)
    v = ((_key(ring, (0, 1, 0)), 3),)
    out = scaled_merge(u, v, 2, 0, 32003, ctx)
    assert dict(out)[_key(ring, (0, 1, 0))] == 6
