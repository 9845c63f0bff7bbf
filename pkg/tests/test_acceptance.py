"""Acceptance suite: one test per criterion, exact checks, wall-clock limits.

Each test prints a single PASS/FAIL line (shown with ``-s``); the same lines
are repeated in the terminal summary by conftest.
"""
import random
import time

import pytest

from hodgemc import fixtures as fx
from hodgemc.dga import DgaMorphism, check_morphism_1qis
from hodgemc.field import I, ONE, QI
from hodgemc.forms import FormMatrix
from hodgemc.linalg import IncreasingFiltration, Subspace
from hodgemc.mc import (check_flat_morphism, check_mc, gauge, gauge_in_complement, random_tdt_mc,
                        random_transport_instance, transport)
from hodgemc.mhd import axiom_verdicts, check_mhd, induced_mhs_on_cohomology
from hodgemc.mhs import (check_mhs, conj_symmetry_failures, deligne_bigrading, is_r_split, mhs_from_bigrading)
from hodgemc.minimal import ComplementChoice, canonical_1_minimal_model, ddc_minimal_model, dual_lie_algebra
from hodgemc.samplers import random_bigrading, random_mhs, seed_from_env
from hodgemc.vmhs import (build_3block_example, build_context, check_hodge_rep, check_vmhs_morphism, descend,
                          elementary_rep, elementary_reps, kappa, phi_C, random_hodge_rep, reps_equal,
                          threeblock_rep, zero_rep)

from conftest import ACCEPTANCE

SEED = seed_from_env()


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def _report(n, title, ok, elapsed, limit=None):
    in_time = limit is None or elapsed < limit
    verdict = "PASS" if ok and in_time else "FAIL"
    budget = f" (limit {limit:g} s)" if limit is not None else ""
    line = f"criterion {n:2d} {verdict}  {title}  [{elapsed:.2f} s{budget}]"
    ACCEPTANCE[n] = line
    print("\n" + line)
    assert ok, f"criterion {n} failed"
    assert in_time, f"criterion {n} took {elapsed:.2f} s, limit {limit} s"


def test_criterion_01_bigrading_round_trip():
    rng = random.Random(SEED)
    ok, nonsplit, biggest = True, 0, 0
    with Timer() as t:
        for _ in range(200):
            bg = random_bigrading(rng, rng.randint(1, 8), wlo=-3, whi=3)
            m = mhs_from_bigrading(bg)
            biggest = max(biggest, m.dim)
            Ib = deligne_bigrading(m)
            # W_k = sum of I^{p,q} with p+q <= k, F^p = sum of I^{r,s} with r >= p
            for k in m.W.levels:
                ok &= Ib.total(lambda p, q: p + q <= k) == m.W(k)
            for p in m.F.levels:
                ok &= Ib.total(lambda r, s: r >= p) == m.F(p)
            m2 = mhs_from_bigrading(Ib)
            ok &= m2 == m and deligne_bigrading(m2) == Ib
            nonsplit += not is_r_split(m, Ib)
    ok &= nonsplit > 0 and biggest <= 8
    _report(1, f"Deligne bigrading round trip on 200 MHS ({nonsplit} non-split)", ok, t.elapsed, 5)


def test_criterion_02_nonsplit():
    with Timer() as t:
        m = fx.nonsplit_mhs()
        bg = deligne_bigrading(m)
        e, f = (ONE, QI(0)), (QI(0), ONE)
        ok = set(bg.components) == {(0, 0), (1, 1)}
        ok &= bg[(0, 0)] == Subspace(2, [e])
        ok &= bg[(1, 1)] == Subspace(2, [(I, ONE)])     # f + i e
        # conj I^{1,1} != I^{1,1}, but conj I^{1,1} ⊂ I^{1,1} + I^{0,0}
        ok &= bg[(1, 1)].conjugate() != bg[(1, 1)]
        ok &= bg[(1, 1)].conjugate().le(bg[(1, 1)].sum(bg[(0, 0)]))
        ok &= conj_symmetry_failures(bg) == []
        ok &= not is_r_split(m, bg)
    _report(2, "non-split example: I^{0,0} = <e>, I^{1,1} = <f + ie>, split only mod I^{0,0}", ok, t.elapsed)


def test_criterion_03_minimal_models():
    with Timer() as t:
        T, H = fx.torus(), fx.heisenberg()
        mt = canonical_1_minimal_model(T, 2)
        ok = mt.stage_dims() == [2, 0]
        ok &= [str(mt.phi_of(g)) for g in mt.generators] == ["a", "b"]
        mh = canonical_1_minimal_model(H, 2)
        ok &= mh.stage_dims() == [2, 1]
        v = mh.generators[2]
        ok &= mh.d_of(v) == mh.M.gen(mh.generators[0]) * mh.M.gen(mh.generators[1])
        ok &= [str(mh.phi_of(g)) for g in mh.generators] == ["x", "y", "z"]
        for m in (mt, mh):
            r = check_morphism_1qis(m.phi)
            ok &= r.ok and m.check().ok
    _report(3, "minimal models of the torus and Heisenberg algebras, 1-qis by rank", ok, t.elapsed, 1)


def test_criterion_04_heisenberg_lie():
    with Timer() as t:
        L = dual_lie_algebra(canonical_1_minimal_model(fx.heisenberg(), 2))
        x, y, z = L.names
        ok = L.dim == 3
        ok &= L.structure_constants() == {(x, y): {z: ONE}}
        ok &= L.br(L.basis_vec(0), L.basis_vec(1)) == L.basis_vec(2)
        # the third basis vector is central
        ok &= not any(any(L.br(L.basis_vec(i), L.basis_vec(2))) for i in range(3))
        ok &= L.jacobi_residual() == []
    _report(4, "dual Lie algebra of the Heisenberg model is Heisenberg", ok, t.elapsed)


def test_criterion_05_transport():
    rng = random.Random(SEED + 5)
    ok = True
    with Timer() as t:
        models = [canonical_1_minimal_model(fx.heisenberg(), 3), canonical_1_minimal_model(fx.torus(), 3),
                  canonical_1_minimal_model(fx.mixed_diagram().A, 3), ddc_minimal_model(fx.threeblock().A, 2)]
        for i in range(50):
            m = models[i % len(models)]
            _, om = random_transport_instance(m, rng, max_dim=6, max_len=4)
            ok &= len(set(om.W.levels)) <= 4 and om.dim <= 6
            tr = transport(m.phi, om)
            ok &= check_mc(tr.Omega).ok
            ok &= check_flat_morphism(tr.a, tr.Omega.map(m.phi), om).ok
        # identity transport
        B = fx.threeblock_B()
        idm = DgaMorphism(B, B, {lab: B[lab] for k in range(3) for lab in B.labels(k)})
        om = random_tdt_mc(B, IncreasingFiltration.from_weights([0, 1, 2]), rng, 0).eval_at(ONE)
        tr = transport(idm, om)
        ok &= tr.Omega.omega == om.omega and tr.a.a == FormMatrix.identity(B, 3)
    _report(5, "transport on 50 random 1-qis instances, identity transport is trivial", ok, t.elapsed, 10)


def test_criterion_06_gauge():
    rng = random.Random(SEED + 6)
    B = fx.threeblock_B()
    C = ComplementChoice.augmentation(B)
    ok = True
    with Timer() as t:
        for i in range(30):
            W = IncreasingFiltration.from_weights(sorted(rng.choice([-1, 0, 1, 2]) for _ in range(rng.randint(2, 4))))
            x = random_tdt_mc(B, W, rng, rng.randint(1, 4), rng.choice(["plus", "minus"]))
            ok &= check_mc(x).ok
            r = gauge(x, C)
            ok &= r.identity_residual().is_zero()
            ok &= gauge_in_complement(r, C)
    _report(6, "gauge identity at t = 1 and A in C ⊗ W_-1 End(V) on 30 random families", ok, t.elapsed, 5)


def test_criterion_07_mhd_checker():
    with Timer() as t:
        ok = check_mhd(fx.kahler_torus()).ok
        for name, (build, axiom) in fx.mutations().items():
            ok &= axiom_verdicts(check_mhd(build())) == {a: a != axiom for a in (1, 2, 3)}
        for name, build in fx.all_diagrams().items():
            m = build()
            ok &= check_mhd(m).ok
            for r in range(m.max_degree + 1):
                ok &= check_mhs(induced_mhs_on_cohomology(m, r)).ok
    _report(7, "diagram axioms on the Kähler torus and three targeted mutations", ok, t.elapsed)


def test_criterion_08_threeblock(contexts):
    with Timer() as t:
        ctx = contexts["threeblock"]
        m = ctx.diagram
        A, B, iota = m.A, m.B, m.iota
        seed = {(0, 1): "m1_1", (0, 2): "m1_2", (1, 3): "m1_3", (2, 3): "m1_4"}
        r = threeblock_rep(ctx, fx.threeblock_V(), seed, "minus")
        ok = check_hodge_rep(r, ctx).ok
        o = phi_C(r, ctx)
        phi = ctx.phi_model.phi
        a1 = FormMatrix(A, 1, [[phi(ctx.M.gen("m1_1")), phi(ctx.M.gen("m1_2"))]])
        a2 = FormMatrix(A, 1, [[phi(ctx.M.gen("m1_3"))], [phi(ctx.M.gen("m1_4"))]])
        ex, beta = build_3block_example(m, fx.threeblock_V(), (1, 2, 1), a1, a2)
        b0 = beta.e[0][0]
        # α₁∧α₂ = dd^cβ with ι(β) in the augmentation kernel
        ok &= (a1 @ a2).e[0][0] == b0.dc().d()
        ok &= iota(b0).vec()[0] == 0
        # displayed matrices: ω = (0, α₁, d^cβ; 0, 0, α₂; 0), ω′ = (.., −2i∂β ..), a = Id − iβE₁₃
        ok &= o.omega.omega.e[0][3] == b0.dc()
        ok &= o.omega_prime.omega.e[0][3] == iota(b0).partial("del").scale(-2 * I)
        ok &= o.a == FormMatrix.identity(B, 4) + FormMatrix.tensor(iota(b0).scale(-I), _E(0, 3))
        ok &= ex.omega == o.omega and ex.omega_prime == o.omega_prime and ex.a == o.a
        # independent values inside B: β = (−i/4)(b − b̄)
        q = ONE / QI(4)
        ok &= iota(b0) == (B["b"] - B["bb"]).scale(-I * q)
        ok &= o.a.e[0][3] == (B["bb"] - B["b"]).scale(q)
    _report(8, "three-block representation reproduces ω, ω′ and a = Id − iβE13", ok, t.elapsed)


def _E(i, j, n=4):
    return [[ONE if (r, c) == (i, j) else QI(0) for c in range(n)] for r in range(n)]


def _round_trip(r, ctx):
    o = phi_C(r, ctx)
    d = descend(o, ctx)
    ok = d.rep.Omega == r.Omega and d.rep.mhs.W == r.mhs.W
    # F is recovered after the canonical c: c maps the recovered F onto the original one
    ok &= all(S.image(d.c, r.dim) == r.mhs.F(p) for p, S in d.rep.mhs.F.levels.items())
    ok &= check_vmhs_morphism(d.iso, d.image, o, iso=True).ok
    return ok


def test_criterion_09_equivalence_round_trip():
    rng = random.Random(SEED + 9)
    ok, count = True, 0
    with Timer() as t:
        ctxs = {name: build_context(build(), 2) for name, build in fx.all_diagrams().items()}
        for name, ctx in ctxs.items():
            for entry in elementary_reps(ctx):
                for conv in ("plus", "minus"):
                    r = elementary_rep(ctx, entry, 0, conv)
                    if r is None:
                        continue
                    ok &= _round_trip(r, ctx)
                    count += 1
        seed = {(0, 1): "m1_1", (0, 2): "m1_2", (1, 3): "m1_3", (2, 3): "m1_4"}
        ok &= _round_trip(threeblock_rep(ctxs["threeblock"], fx.threeblock_V(), seed, "minus"), ctxs["threeblock"])
        names = sorted(ctxs)
        for i in range(20):
            ctx = ctxs[names[i % len(names)]]
            r = random_hodge_rep(ctx, rng, convention=rng.choice(["plus", "minus"]))
            ok &= _round_trip(r, ctx)
            count += 1
    _report(9, f"descend ∘ Φ_C = id and Φ_C ∘ descend ≅ id on {count + 1} representations", ok, t.elapsed, 30)


def test_criterion_10_kappa(contexts):
    rng = random.Random(SEED + 10)
    ok = True
    with Timer() as t:
        for name, ctx in contexts.items():
            for _ in range(4):
                V = random_mhs(rng, rng.randint(1, 5))
                for conv in ("plus", "minus"):
                    d = descend(kappa(ctx.diagram, V, conv), ctx)
                    ok &= d.rep.Omega.omega.is_zero() and d.rep.mhs == V
                    ok &= reps_equal(d.rep, zero_rep(ctx, V, conv))
    _report(10, "κ-objects descend to the zero representation with V, W, F unchanged", ok, t.elapsed)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
