"""Unipotent variations of mixed Hodge structure over a mixed Hodge diagram,
Hodge representations of the dual Lie algebra, the functor Φ_C between them
and its descent quasi-inverse.

Objects are (V, W, F, ω, ω′, a): ω over the real algebra A, ω′ over the
complex algebra B, and a a flat morphism (V, ι(ω)) → (V, ω′).  Every check
here is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .dga import DgaInstance
from .errors import ConstructionError, InputError, InvariantViolation, PreconditionError
from .field import I, ONE, ZERO, QI
from .forms import FormMatrix, hom_level_subspace, in_tensor_level
from .linalg import (DecreasingFiltration, IncreasingFiltration, Subspace, annihilator, column_space,
                     inverse, real_solution_space)
from .mc import (MaurerCartanElement, _unipotent_inverse, check_flat_morphism, check_mc,
                 complete_mc, gauge, transport)
from .mhd import MixedHodgeDiagram
from .mhs import (Bigrading, MixedHodgeStructure, check_mhs, check_morphism, derived_mhs, end_mhs,
                  mhs_from_bigrading)
from .minimal import (ComplementChoice, IHPair, MinimalModel, bigraded_minimal_model, build_I_and_H,
                      canonical_1_minimal_model, ddc_minimal_model, dual_lie_algebra,
                      mhs_on_minimal_model, solve_in_span)
from .report import Report


# ----------------------------------------------------------------------
# context

@dataclass
class VmhsContext:
    """Everything Φ_C needs: both models, (𝓘, 𝓗) and the MHS on ℳ¹."""
    diagram: MixedHodgeDiagram
    ih: IHPair
    m1_mhs: MixedHodgeStructure
    lie_mhs: MixedHodgeStructure

    @property
    def phi_model(self) -> MinimalModel:
        return self.ih.phi_model

    @property
    def psi_model(self) -> MinimalModel:
        return self.ih.psi_model

    @property
    def C(self) -> ComplementChoice:
        return self.ih.C

    @property
    def M(self):
        return self.ih.phi_model.M

    def lie(self):
        return dual_lie_algebra(self.phi_model, self.ih)


def build_context(diagram: MixedHodgeDiagram, k: int = 2, C: ComplementChoice | None = None,
                  phi_model: MinimalModel | None = None) -> VmhsContext:
    """Models up to stage k (dd^c construction when A carries d^c, else the
    canonical one), the bigraded model of B and (𝓘, 𝓗) for C (default: the
    augmentation complement)."""
    A, B = diagram.A, diagram.B
    if phi_model is None:
        phi_model = ddc_minimal_model(A, k) if A.has_dc else canonical_1_minimal_model(A, k)
    psi_model = bigraded_minimal_model(B, k)
    if C is None:
        C = ComplementChoice.augmentation(B)
    ih = build_I_and_H(phi_model, psi_model, diagram.iota, C)
    m1, lie = mhs_on_minimal_model(phi_model, ih)
    return VmhsContext(diagram, ih, m1, lie)


# ----------------------------------------------------------------------
# Hodge representations

@dataclass
class HodgeRep:
    """(Ω, V, W, F) with Ω ∈ ℳ¹ ⊗ W₋₁End(V) Maurer–Cartan."""
    Omega: MaurerCartanElement
    mhs: MixedHodgeStructure

    @property
    def dim(self) -> int:
        return self.mhs.dim


def structure_map(Omega: MaurerCartanElement) -> list:
    """Matrix of 𝔫 → End(V), g* ↦ coefficient of g, on flattened End (row-major)."""
    M = Omega.dga
    n1 = M.dim(1)
    n = Omega.dim
    cols = []
    for j in range(n1):
        cols.append([Omega.omega.e[r][c].data.get(j, ZERO) for r in range(n) for c in range(n)])
    return [[cols[j][i] for j in range(n1)] for i in range(n * n)]


def check_hodge_rep(r: HodgeRep, ctx: VmhsContext) -> Report:
    rep = Report("Hodge representation")
    if r.Omega.dga is not ctx.M:
        raise InputError("Omega must live over the filtered minimal model of the context")
    if r.Omega.W != r.mhs.W:
        raise InputError("Omega and the MHS carry different weight filtrations")
    rep.extend(check_mc(r.Omega), "Maurer–Cartan: ")
    rep.add("MHS on V", check_mhs(r.mhs).ok)
    end = end_mhs(r.mhs)
    om = r.Omega.to_plus().omega
    ok, wit = in_tensor_level(om, ctx.M.W(1), end.W, 0)
    rep.add("Omega in W_0(M^1 ⊗ End V)", ok, wit)
    ok, wit = in_tensor_level(om, ctx.m1_mhs.F, end.F, 0)
    rep.add("Omega in F^0(M^1_C ⊗ End V_C)", ok, wit)
    # the same through the structure map n -> End(V); the sign of the
    # convention does not change membership
    f = structure_map(r.Omega)
    try:
        res = check_morphism(f, ctx.lie_mhs, end, assert_strict=False)
        rep.add("n -> End(V) is a morphism of MHS", res.is_morphism, res.witness)
    except InvariantViolation as e:
        rep.add("n -> End(V) is a morphism of MHS", False, str(e))
    return rep


# ----------------------------------------------------------------------
# objects and morphisms

@dataclass
class VmhsObject:
    diagram: MixedHodgeDiagram
    mhs: MixedHodgeStructure
    omega: MaurerCartanElement          # over A
    omega_prime: MaurerCartanElement    # over B
    a: FormMatrix                       # over B, (V, ι(ω)) -> (V, ω′)

    @property
    def dim(self) -> int:
        return self.mhs.dim

    @property
    def convention(self) -> str:
        return self.omega.convention

    def iota_omega(self) -> MaurerCartanElement:
        return self.omega.map(self.diagram.iota)


@dataclass
class VmhsMorphism:
    b: FormMatrix        # over A
    b_prime: FormMatrix  # over B


def _unipotent_shape(a: FormMatrix, W: IncreasingFiltration) -> tuple:
    Id = FormMatrix.identity(a.dga, a.rows)
    return (a - Id).in_filtered_hom(hom_level_subspace(W, W, -1))


def check_vmhs_object(o: VmhsObject) -> Report:
    rep = Report("VMHS object")
    A, B = o.diagram.A, o.diagram.B
    n = o.dim
    for name, x, dga in (("omega", o.omega, A), ("omega'", o.omega_prime, B)):
        if x.dga is not dga or x.dim != n:
            raise InputError(f"{name} has the wrong algebra or size")
    if o.a.dga is not B or o.a.rows != n or o.a.cols != n or o.a.degree != 0:
        raise InputError("a must be a degree-0 square form matrix over B")
    rep.add("MHS on V", check_mhs(o.mhs).ok)
    rep.extend(check_mc(o.omega), "omega: ")
    rep.extend(check_mc(o.omega_prime), "omega': ")
    end = end_mhs(o.mhs)
    ok, wit = in_tensor_level(o.omega_prime.omega, B.F(1), end.F, 0)
    rep.add("omega' in F^0(B^1 ⊗ End V_C)", ok, wit)
    ok, M = _unipotent_shape(o.a, o.mhs.W)
    rep.add("a in Id + B^0 ⊗ W_-1 End", ok, None if ok else [[str(v) for v in r] for r in M])
    rep.extend(check_flat_morphism(o.a, o.iota_omega(), o.omega_prime), "a: ")
    return rep


def _invertible_filtered(b: FormMatrix, W1: IncreasingFiltration, W2: IncreasingFiltration) -> bool:
    """Sufficient test: the unit coefficient b₀ is invertible and b − b₀ lies in W₋₁Hom."""
    if b.rows != b.cols:
        return False
    u = b.dga.unit_index
    b0 = [[x.data.get(u, ZERO) for x in row] for row in b.e]
    try:
        inverse(b0)
    except Exception:
        return False
    rest = b - FormMatrix.const(b.dga, b0)
    ok, _ = rest.in_filtered_hom(hom_level_subspace(W1, W2, -1))
    return ok


def check_vmhs_morphism(m: VmhsMorphism, o1: VmhsObject, o2: VmhsObject, iso: bool = False) -> Report:
    rep = Report("VMHS morphism")
    if o1.diagram is not o2.diagram:
        raise InputError("objects over different diagrams")
    iota = o1.diagram.iota
    B = o1.diagram.B
    rep.extend(check_flat_morphism(m.b, o1.omega, o2.omega), "b: ")
    rep.extend(check_flat_morphism(m.b_prime, o1.omega_prime, o2.omega_prime), "b': ")
    hom = derived_mhs("hom", o1.mhs, o2.mhs)
    ok, wit = in_tensor_level(m.b_prime, B.F(0), hom.F, 0)
    rep.add("b' in F^0(B^0 ⊗ W_0 Hom)", ok, wit)
    ib = m.b.map(lambda x: iota(x), dga=B)
    sq = o2.a @ ib - m.b_prime @ o1.a
    rep.add("square commutes", sq.is_zero(), None if sq.is_zero() else sq.entry_support())
    if iso:
        rep.add("b invertible", _invertible_filtered(m.b, o1.mhs.W, o2.mhs.W))
        rep.add("b' invertible", _invertible_filtered(m.b_prime, o1.mhs.W, o2.mhs.W))
    return rep


def identity_morphism(o: VmhsObject) -> VmhsMorphism:
    return VmhsMorphism(FormMatrix.identity(o.diagram.A, o.dim), FormMatrix.identity(o.diagram.B, o.dim))


# ----------------------------------------------------------------------
# Φ_C

def phi_C(r: HodgeRep, ctx: VmhsContext, check: bool = True) -> VmhsObject:
    """(V, W, F, φ(Ω), ψ𝓘⁻¹(Ω), a) with a the canonical gauge of 𝓗𝓘⁻¹(Ω)."""
    if check:
        rep = check_hodge_rep(r, ctx)
        if not rep.ok:
            raise PreconditionError(f"not a Hodge representation: {rep.failed_names()}")
    ih = ctx.ih
    Om = r.Omega
    omega = Om.map(ih.phi_model.phi)
    OmN = Om.map(ih.I_inv)
    omega_p = OmN.map(ih.psi_model.phi)
    fam = OmN.map(ih.H)
    try:
        g = gauge(fam, ih.C)
    except ConstructionError as e:
        raise ConstructionError(f"gauge along H∘I^-1(Omega) failed, context inconsistent: {e}") from e
    o = VmhsObject(ctx.diagram, r.mhs, omega, omega_p, g.a.a)
    if check:
        rep = check_vmhs_object(o)
        if not rep.ok:
            raise InvariantViolation(f"Phi_C output fails: {rep.failed_names()}")
    return o


def phi_C_morphism(f, r1: HodgeRep, r2: HodgeRep, ctx: VmhsContext) -> VmhsMorphism:
    """Φ_C on a constant morphism f of representations: (f, f)."""
    A, B = ctx.diagram.A, ctx.diagram.B
    return VmhsMorphism(FormMatrix.const(A, f), FormMatrix.const(B, f))


def kappa(diagram: MixedHodgeDiagram, mhs: MixedHodgeStructure, convention: str = "plus") -> VmhsObject:
    """(V, W, F, 0, 0, Id)."""
    n = mhs.dim
    A, B = diagram.A, diagram.B
    return VmhsObject(diagram, mhs,
                      MaurerCartanElement(A, mhs.W, FormMatrix.zeros(A, 1, n, n), convention),
                      MaurerCartanElement(B, mhs.W, FormMatrix.zeros(B, 1, n, n), convention),
                      FormMatrix.identity(B, n))


def zero_rep(ctx: VmhsContext, mhs: MixedHodgeStructure, convention: str = "plus") -> HodgeRep:
    n = mhs.dim
    return HodgeRep(MaurerCartanElement(ctx.M, mhs.W, FormMatrix.zeros(ctx.M, 1, n, n), convention), mhs)


# ----------------------------------------------------------------------
# descent

@dataclass
class Descent:
    rep: HodgeRep
    c: list                   # constant matrix: (V, I^-1 Ω) -> (V, Ω′)
    iso: VmhsMorphism         # Φ_C(rep) -> o
    image: VmhsObject         # Φ_C(rep)
    report: Report = field(default_factory=lambda: Report("descent"))


def _filter_image(F: DecreasingFiltration, M: list) -> DecreasingFiltration:
    n = F.n
    return DecreasingFiltration(n, {p: S.image(M, n) for p, S in F.levels.items()})


def descend(o: VmhsObject, ctx: VmhsContext) -> Descent:
    """Quasi-inverse of Φ_C on objects.

    Transport ω to Ω over ℳ (iso b) and ω′ to Ω′ over 𝒩 inside F⁰ (iso b′),
    gauge 𝓗𝓘⁻¹(Ω) to get â, and read off the constant
    c = b′⁻¹ a ι(b) â⁻¹ : (V, 𝓘⁻¹Ω) → (V, Ω′).  The representation is
    (Ω, V, W, c⁻¹F) and (b, b′c) is an isomorphism Φ_C(it) → o."""
    if o.diagram is not ctx.diagram:
        raise InputError("object and context live over different diagrams")
    rep = check_vmhs_object(o)
    if not rep.ok:
        raise PreconditionError(f"not a VMHS object: {rep.failed_names()}")
    ih = ctx.ih
    B = ctx.diagram.B
    for k in (0, 1):
        if not _strict_F(B, k):
            raise PreconditionError(f"d on B^{k} is not strictly compatible with F")
    n = o.dim
    tr = transport(ih.phi_model.phi, o.omega)
    Omega, b = tr.Omega, tr.a.a
    try:
        trp = transport(ih.psi_model.phi, o.omega_prime, mhs=o.mhs, F_constrained=True)
    except ConstructionError as e:
        raise PreconditionError(f"F^0-constrained transport is infeasible (strictness fails): {e}") from e
    Omega_p, bp = trp.Omega, trp.a.a
    OmN = Omega.map(ih.I_inv)
    a_hat = gauge(OmN.map(ih.H), ih.C).a.a
    ib = b.map(lambda x: ctx.diagram.iota(x), dga=B)
    cB = _unipotent_inverse(bp) @ o.a @ ib @ _unipotent_inverse(a_hat)
    try:
        c = cB.scalar()
    except InputError as e:
        raise InvariantViolation("comparison map c is not constant") from e
    N = ih.psi_model.M
    out = Report("descent")
    out.extend(check_flat_morphism(FormMatrix.const(N, c), OmN, Omega_p), "c over N: ")
    cinv = inverse(c)
    mhs = MixedHodgeStructure(o.mhs.W, _filter_image(o.mhs.F, cinv))
    r = HodgeRep(Omega, mhs)
    out.extend(check_hodge_rep(r, ctx), "rep: ")
    image = phi_C(r, ctx, check=False)
    out.extend(check_vmhs_object(image), "Phi_C(rep): ")
    iso = VmhsMorphism(b, bp @ FormMatrix.const(B, c))
    out.extend(check_vmhs_morphism(iso, image, o, iso=True), "iso: ")
    if not out.ok:
        raise InvariantViolation(f"descent fails: {out.failed_names()}")
    return Descent(r, c, iso, image, out)


def _strict_F(B: DgaInstance, k: int) -> bool:
    d = B.d_matrix(k)
    n0, n1 = B.dim(k), B.dim(k + 1)
    if not n0 or not n1:
        return True
    im = column_space(d, n1, n0)
    F0, F1 = B.F(k), B.F(k + 1)
    for p in sorted(set(F0.levels) | set(F1.levels)):
        if im.intersect(F1(p)) != F0(p).image(d, n1):
            return False
    return True


def reps_equal(r1: HodgeRep, r2: HodgeRep) -> bool:
    return r1.Omega == r2.Omega and r1.mhs == r2.mhs


# ----------------------------------------------------------------------
# the three-block example

def _corner_ddc(A, iota, C: ComplementChoice, target):
    """β ∈ A⁰ with dd^cβ = target and ι(β) ∈ C."""
    n0 = A.dim(0)
    img = [iota.apply_basis(0, i).vec() for i in range(n0)]
    nb = C.B.dim(0)
    # ι(x) ∈ C  <=>  every functional of ann(C) kills ι(x); x real
    eqs = [[sum((f[j] * img[i][j] for j in range(nb) if f[j]), ZERO) for i in range(n0)]
           for f in annihilator(C.C).rows]
    space = real_solution_space(eqs, n0) if eqs else Subspace.full(n0)
    ddc = [[ZERO] * n0 for _ in range(A.dim(2))]
    for i in range(n0):
        v = A.basis_element(0, i).dc().d().vec()
        for r in range(A.dim(2)):
            ddc[r][i] = v[r]
    x = solve_in_span(ddc, target.vec(), list(space.rows), n0)
    if x is None:
        return None
    return A.element(0, x)


def build_3block_example(diagram: MixedHodgeDiagram, mhs: MixedHodgeStructure, blocks: tuple,
                         alpha1: FormMatrix, alpha2: FormMatrix, C: ComplementChoice | None = None,
                         convention: str = "minus") -> tuple:
    """(object, β) for V = V₀ ⊕ V₁ ⊕ V₂ (coordinate blocks of sizes ``blocks``).

    ω = (0, α₁, d^cβ; 0, 0, α₂; 0, 0, 0), ω′ = (0, α₁, −2i∂β; 0, 0, α₂; 0, 0, 0),
    a = Id − iβ E₀₂, with α₁∧α₂ = dd^cβ and β normalised into C.  Matrices are
    read in ``convention`` (the display uses "minus")."""
    A, B, iota = diagram.A, diagram.B, diagram.iota
    if not A.has_dc:
        raise PreconditionError("the real algebra needs d^c")
    n0, n1, n2 = blocks
    n = n0 + n1 + n2
    if mhs.dim != n:
        raise InputError("block sizes do not match V")
    if (alpha1.rows, alpha1.cols, alpha2.rows, alpha2.cols) != (n0, n1, n1, n2):
        raise InputError("alpha blocks have the wrong shapes")
    C = C or ComplementChoice.augmentation(B)
    prod = alpha1 @ alpha2
    beta = [[None] * n2 for _ in range(n0)]
    for r in range(n0):
        for c in range(n2):
            x = _corner_ddc(A, iota, C, prod.e[r][c])
            if x is None:
                raise PreconditionError("alpha1 ∧ alpha2 is not dd^c-exact")
            beta[r][c] = x
    beta = FormMatrix(A, 0, beta)

    def assemble(dga, a1, a2, corner):
        z = dga.zero(1)
        ents = [[z] * n for _ in range(n)]
        for r in range(n0):
            for c in range(n1):
                ents[r][n0 + c] = a1.e[r][c]
            for c in range(n2):
                ents[r][n0 + n1 + c] = corner.e[r][c]
        for r in range(n1):
            for c in range(n2):
                ents[n0 + r][n0 + n1 + c] = a2.e[r][c]
        return FormMatrix(dga, 1, ents)

    omega = assemble(A, alpha1, alpha2, beta.map(lambda x: x.dc(), degree=1))
    to_B = lambda X: X.map(lambda x: iota(x), dga=B)
    bB = to_B(beta)
    omega_p = assemble(B, to_B(alpha1), to_B(alpha2),
                       bB.map(lambda x: x.partial("del").scale(-2 * I), degree=1))
    a = FormMatrix.identity(B, n)
    ents = [row[:] for row in a.e]
    for r in range(n0):
        for c in range(n2):
            ents[r][n0 + n1 + c] = bB.e[r][c].scale(-I)
    a = FormMatrix(B, 0, ents)
    o = VmhsObject(diagram, mhs, MaurerCartanElement(A, mhs.W, omega, convention),
                   MaurerCartanElement(B, mhs.W, omega_p, convention), a)
    rep = check_vmhs_object(o)
    if not rep.ok:
        raise InvariantViolation(f"three-block object fails: {rep.failed_names()}")
    return o, beta


def threeblock_rep(ctx: VmhsContext, mhs: MixedHodgeStructure, seed: dict,
                   convention: str = "minus") -> HodgeRep:
    """Hodge representation with prescribed grade-1 entries (generator names or
    ℳ¹ elements); higher entries are the canonical Maurer–Cartan completion."""
    M = ctx.M
    s = {}
    for rc, x in seed.items():
        s[rc] = M.gen(x) if isinstance(x, str) else x
    Om = complete_mc(ctx.phi_model, mhs.W, s, convention)
    return HodgeRep(Om, mhs)


# ----------------------------------------------------------------------
# random representations

def _re_im(x):
    M = x.dga
    v = x.vec()
    return M.element(1, tuple(QI(c.re) for c in v)), M.element(1, tuple(QI(c.im) for c in v))


def elementary_reps(ctx: VmhsContext) -> list:
    """Small Hodge representations built from single stage-1 generators.

    Each entry is (name, types, seed): ``types`` lists (complex vector, (p, q))
    for a coordinate basis sorted by weight, ``seed`` the prescribed
    Maurer–Cartan entries (completed canonically)."""
    N = ctx.psi_model.M
    out = []
    by_type = {}
    for g in ctx.psi_model.stages[0]:
        P, Q = ctx.psi_model.types[g]
        zeta = ctx.ih.I(N.gen(g))
        x, y = _re_im(zeta)
        by_type.setdefault((P, Q), []).append((g, x, y))
        w = P + Q
        if P == Q:
            real = x if x else y
            out.append((f"line[{g}]", [((ONE, ZERO), (0, 0)), ((ZERO, ONE), (P, Q))], {(0, 1): real}))
            continue
        if P < Q:
            continue  # the conjugate generator gives the same real representation
        out.append((f"alpha1[{g}]",
                    [((ONE, ZERO, ZERO), (0, 0)), ((ZERO, ONE, I), (P, Q)), ((ZERO, ONE, -I), (Q, P))],
                    {(0, 1): x, (0, 2): y}))
        out.append((f"alpha2[{g}]",
                    [((ONE, I, ZERO), (P, Q)), ((ONE, -I, ZERO), (Q, P)), ((ZERO, ZERO, ONE), (w, w))],
                    {(0, 2): x, (1, 2): y}))
    for (P, Q), gs in by_type.items():
        if P <= Q:
            continue
        w = P + Q
        for g1, x1, y1 in gs:
            for g2, x2, y2 in gs:
                if g1 == g2:
                    continue
                out.append((f"chain[{g1},{g2}]",
                            [((ONE, ZERO, ZERO, ZERO), (0, 0)), ((ZERO, ONE, I, ZERO), (P, Q)),
                             ((ZERO, ONE, -I, ZERO), (Q, P)), ((ZERO, ZERO, ZERO, ONE), (w, w))],
                            {(0, 1): x1, (0, 2): y1, (1, 3): x2, (2, 3): y2}))
    return out


def _mhs_from_types(types: list) -> MixedHodgeStructure:
    n = len(types)
    comps = {}
    for v, pq in types:
        comps.setdefault(pq, []).append(tuple(v))
    return mhs_from_bigrading(Bigrading(n, comps))


def elementary_rep(ctx: VmhsContext, entry, twist: int = 0, convention: str = "plus") -> HodgeRep | None:
    name, types, seed = entry
    types = [(v, (p + twist, q + twist)) for v, (p, q) in types]
    mhs = _mhs_from_types(types)
    try:
        Om = complete_mc(ctx.phi_model, mhs.W, seed, convention)
    except (ConstructionError, InputError):
        return None
    return HodgeRep(Om, mhs)


def direct_sum(r1: HodgeRep, r2: HodgeRep) -> HodgeRep:
    if r1.Omega.dga is not r2.Omega.dga or r1.Omega.convention != r2.Omega.convention:
        raise InputError("summands live over different algebras or conventions")
    n1, n2 = r1.dim, r2.dim
    n = n1 + n2
    pad1 = lambda v: tuple(v) + (ZERO,) * n2
    pad2 = lambda v: (ZERO,) * n1 + tuple(v)
    W = IncreasingFiltration(n, {k: Subspace(n, [pad1(v) for v in r1.mhs.W(k).rows] + [pad2(v) for v in r2.mhs.W(k).rows])
                                 for k in sorted(set(r1.mhs.W.levels) | set(r2.mhs.W.levels))})
    F = DecreasingFiltration(n, {p: Subspace(n, [pad1(v) for v in r1.mhs.F(p).rows] + [pad2(v) for v in r2.mhs.F(p).rows])
                                 for p in sorted(set(r1.mhs.F.levels) | set(r2.mhs.F.levels))})
    M = r1.Omega.dga
    z = M.zero(1)
    ents = [[z] * n for _ in range(n)]
    for r in range(n1):
        for c in range(n1):
            ents[r][c] = r1.Omega.omega.e[r][c]
    for r in range(n2):
        for c in range(n2):
            ents[n1 + r][n1 + c] = r2.Omega.omega.e[r][c]
    return HodgeRep(MaurerCartanElement(M, W, FormMatrix(M, 1, ents), r1.Omega.convention),
                    MixedHodgeStructure(W, F))


def transform_rep(r: HodgeRep, g: list) -> HodgeRep:
    """(gΩg⁻¹, gW, gF) for an invertible rational matrix g."""
    n = r.dim
    ginv = inverse(g)
    W = IncreasingFiltration(n, {k: S.image(g, n) for k, S in r.mhs.W.levels.items()})
    F = _filter_image(r.mhs.F, g)
    om = r.Omega.omega
    M = om.dga
    new = FormMatrix.const(M, g) @ om @ FormMatrix.const(M, ginv)
    return HodgeRep(MaurerCartanElement(M, W, new, r.Omega.convention), MixedHodgeStructure(W, F))


def random_hodge_rep(ctx: VmhsContext, rng, max_dim: int = 6, convention: str = "plus") -> HodgeRep:
    """Direct sum of elementary representations (Tate-twisted) and possibly a
    trivial summand, conjugated by a random rational matrix."""
    from .samplers import rand_invertible, random_mhs
    elems = elementary_reps(ctx)
    if not elems:
        raise ConstructionError("the model has no stage-1 generators")
    rep = None
    while True:
        entry = rng.choice(elems)
        r = elementary_rep(ctx, entry, rng.randint(-1, 1), convention)
        if r is None:
            continue
        if rep is not None and rep.dim + r.dim > max_dim:
            break
        rep = r if rep is None else direct_sum(rep, r)
        if rng.random() < 0.5:
            break
    room = max_dim - rep.dim
    if room > 0 and rng.random() < 0.5:
        k = rng.randint(1, min(room, 2))
        triv = random_mhs(rng, k, wlo=-2, whi=2)
        M = ctx.M
        rep = direct_sum(rep, HodgeRep(MaurerCartanElement(M, triv.W, FormMatrix.zeros(M, 1, k, k), convention),
                                       triv))
    return transform_rep(rep, rand_invertible(rng, rep.dim))
