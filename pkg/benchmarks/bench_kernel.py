"""Compare the compiled and pure reduction kernels on real workloads.

Run as ``python3 benchmarks/bench_kernel.py``.  The backend is switched by
toggling the dispatch flag, so both runs execute the same engine code and
differ only in the kernel; fresh ring objects are built per run so no
cached resolutions leak between backends.
"""

import random
import time

import charmod.kernel as kernel
from charmod.ring import PolyRing, PrimeField
from charmod.groebner import Ideal, QuotientRing
from charmod.invariants import q_resolution, residue_field_of, ring_module_of
from charmod.characteristic import check_thm8
from charmod.resolution import resolve


VERONESE = ("x^2-w*y", "y^2-x*z", "x*y-w*z")


def fresh_quotient(texts, names="wxyz"):
    ring = PolyRing(PrimeField(32003), list(names), "grevlex")
    return QuotientRing(ring, Ideal(ring, [ring.poly(t) for t in texts]))


def bench_groebner():
    """Reduced GB of a dense-ish cubic ideal in four variables."""
    ring = PolyRing(PrimeField(32003), list("wxyz"), "grevlex")
    rng = random.Random(11)

    def form(d, terms):
        f = ring.zero()
        for _ in range(terms):
            exps = [0, 0, 0, 0]
            for _ in range(d):
                exps[rng.randrange(4)] += 1
            f = f + ring.monomial(exps, rng.randrange(1, 32003))
        return f

    gens = [form(3, 5) for _ in range(3)] + [form(2, 4)]
    Ideal(ring, gens).groebner_basis()


def bench_resolution():
    """Minimal Q-resolution plus a truncated k-resolution over R."""
    R = fresh_quotient(VERONESE)
    q_resolution(ring_module_of(R))
    resolve(residue_field_of(R), max_steps=5)


def bench_checkers():
    """The seven-condition ring checker on the Veronese quotient."""
    check_thm8(fresh_quotient(VERONESE))


def bench_raw_nf():
    """Raw normal forms of random vectors against a fixed basis."""
    R = fresh_quotient(VERONESE)
    ring = R.cover
    ctx = ring.pack.ctx
    rng = random.Random(5)
    basis = [[((ring.pack.okey(e) << 16) | 0xFFFF, c) for e, c in g]
             for g in [
                 [((2, 0, 0, 0), 1), ((0, 1, 1, 0), 32002)],
                 [((0, 2, 0, 0), 1), ((1, 0, 0, 1), 32002)],
                 [((1, 1, 0, 0), 1), ((0, 0, 2, 0), 7)],
             ]]
    vecs = []
    for _ in range(300):
        terms = {}
        for _ in range(12):
            exps = tuple(rng.randrange(0, 4) for _ in range(4))
            terms[(ring.pack.okey(exps) << 16) | 0xFFFF] = rng.randrange(1, 32003)
        vecs.append(sorted(terms.items(), reverse=True))
    red = kernel.make_reducer(32003, ctx, basis)
    for v in vecs:
        red.nf(v)


WORKLOADS = [
    ("groebner basis (4 vars, cubics)", bench_groebner, 3),
    ("resolutions (veronese)", bench_resolution, 3),
    ("thm8 checker (veronese)", bench_checkers, 3),
    ("raw normal forms (300 vectors)", bench_raw_nf, 5),
]


def run(backend_fast: bool):
    saved = kernel.HAVE_FAST
    kernel.HAVE_FAST = backend_fast and saved
    times = {}
    try:
        for name, fn, reps in WORKLOADS:
            best = min(_timed(fn) for _ in range(reps))
            times[name] = best
    finally:
        kernel.HAVE_FAST = saved
    return times


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    if not kernel.HAVE_FAST:
        print("compiled kernel not built; benchmarking pure only")
    pure_times = run(False)
    fast_times = run(True) if kernel.HAVE_FAST else pure_times
    width = max(len(n) for n, _, _ in WORKLOADS)
    print(f"{'workload':<{width}}  {'pure':>9}  {'compiled':>9}  speedup")
    for name, _, _ in WORKLOADS:
        tp, tf = pure_times[name], fast_times[name]
        ratio = tp / tf if tf > 0 else float("inf")
        print(f"{name:<{width}}  {tp * 1e3:8.2f}ms  {tf * 1e3:8.2f}ms  {ratio:6.2f}x")


if __name__ == "__main__":
    main()
