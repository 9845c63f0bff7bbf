"""Maurer–Cartan elements, flat morphisms, transport along 1-quasi-isomorphisms
and gauge fixing along (t,dt) families.

Sign convention: ``"plus"`` means dω + ω∧ω = 0 and morphisms satisfy
da + ω₂a − aω₁ = 0; ``"minus"`` is the image under ω ↦ −ω, i.e.
dω = ω∧ω and da − ω₂a + aω₁ = 0.  Everything is computed in "plus".
"""
from __future__ import annotations

from dataclasses import dataclass

from .dga import DgaInstance, DgaMorphism, Element, TdtElement
from .errors import ConstructionError, InputError, InvariantViolation
from .field import ONE, ZERO, QI
from .forms import FormMatrix, hom_level_subspace
from .linalg import (IncreasingFiltration, Subspace, adapted_decomposition, inverse, mat_mul,
                     solve_linear)
from .mhs import MixedHodgeStructure, deligne_bigrading
from .minimal import ComplementChoice
from .report import Report

CONVENTIONS = ("plus", "minus")


def _sign(convention: str) -> QI:
    if convention not in CONVENTIONS:
        raise InputError(f"unknown convention {convention!r}")
    return ONE if convention == "plus" else -ONE


@dataclass
class MaurerCartanElement:
    """ω ∈ A¹ ⊗ W_{-1}End(V); ω may be a (t,dt) form matrix."""
    dga: DgaInstance
    W: IncreasingFiltration
    omega: FormMatrix
    convention: str = "plus"

    def __post_init__(self):
        n = self.W.n
        if self.omega.rows != n or self.omega.cols != n:
            raise InputError(f"omega is {self.omega.rows}x{self.omega.cols}, V has dimension {n}")
        if self.omega.degree != 1:
            raise InputError("omega must have form degree 1")
        if self.omega.dga is not self.dga:
            raise InputError("omega lives over a different algebra")
        _sign(self.convention)

    @property
    def dim(self) -> int:
        return self.W.n

    @property
    def is_tdt(self) -> bool:
        return self.omega.tdt

    def residual(self) -> FormMatrix:
        s = _sign(self.convention)
        return self.omega.d() + (self.omega @ self.omega).scale(s)

    def to_plus(self) -> "MaurerCartanElement":
        if self.convention == "plus":
            return self
        return MaurerCartanElement(self.dga, self.W, -self.omega, "plus")

    def as_convention(self, convention: str) -> "MaurerCartanElement":
        if convention == self.convention:
            return self
        _sign(convention)
        return MaurerCartanElement(self.dga, self.W, -self.omega, convention)

    def eval_at(self, s) -> "MaurerCartanElement":
        return MaurerCartanElement(self.dga, self.W, self.omega.eval_at(s), self.convention)

    def map(self, f: DgaMorphism) -> "MaurerCartanElement":
        """Push forward along a DGA morphism (or homotopy)."""
        tdt = f.tdt if hasattr(f, "tdt") else False
        om = self.omega.map(lambda x: f(x), dga=f.target, tdt=bool(tdt) or self.omega.tdt)
        return MaurerCartanElement(f.target, self.W, om, self.convention)

    def __eq__(self, o):
        return (isinstance(o, MaurerCartanElement) and o.dga is self.dga and self.W == o.W
                and self.to_plus().omega == o.to_plus().omega)


def check_mc(x: MaurerCartanElement) -> Report:
    rep = Report("Maurer–Cartan element")
    res = x.residual()
    rep.add("residual is zero", res.is_zero(),
            None if res.is_zero() else {"entries": [list(rc) for rc in res.entry_support()]})
    lvl = hom_level_subspace(x.W, x.W, -1)
    ok, M = x.omega.in_filtered_hom(lvl)
    rep.add("omega in W_-1 End(V)", ok, None if ok else {"coefficient": [[str(v) for v in r] for r in M]})
    return rep


@dataclass
class FlatMorphism:
    """a ∈ A⁰ ⊗ W₀Hom(V₁, V₂)."""
    a: FormMatrix

    @property
    def dga(self):
        return self.a.dga


def flat_residual(a: FormMatrix, mc1: MaurerCartanElement, mc2: MaurerCartanElement) -> FormMatrix:
    if mc1.convention != mc2.convention:
        mc2 = mc2.as_convention(mc1.convention)
    s = _sign(mc1.convention)
    return a.d() + (mc2.omega @ a - a @ mc1.omega).scale(s)


def check_flat_morphism(b, mc1: MaurerCartanElement, mc2: MaurerCartanElement) -> Report:
    a = b.a if isinstance(b, FlatMorphism) else b
    rep = Report("flat morphism")
    if a.rows != mc2.dim or a.cols != mc1.dim:
        raise InputError(f"morphism shape {a.rows}x{a.cols}, expected {mc2.dim}x{mc1.dim}")
    if a.degree != 0:
        raise InputError("a flat morphism has form degree 0")
    res = flat_residual(a, mc1, mc2)
    rep.add("da + ω₂a − aω₁ = 0", res.is_zero(),
            None if res.is_zero() else {"entries": [list(rc) for rc in res.entry_support()]})
    ok, M = a.in_filtered_hom(hom_level_subspace(mc1.W, mc2.W, 0))
    rep.add("a in W_0 Hom", ok, None if ok else {"coefficient": [[str(v) for v in r] for r in M]})
    return rep


# ----------------------------------------------------------------------
# gradings

def grading_basis(W: IncreasingFiltration, mhs: MixedHodgeStructure | None = None):
    """(P, Pinv, weights, types): columns of P span the canonical grading of W
    (or the Deligne bigrading of ``mhs``, with Hodge types)."""
    if mhs is None:
        P, Pinv, tags = adapted_decomposition(W)
        return P, Pinv, list(tags), None
    bg = deligne_bigrading(mhs)
    ab = bg.adapted_basis()
    n = W.n
    P = [[ab[j][0][i] for j in range(n)] for i in range(n)]
    types = [pq for _, pq in ab]
    return P, (inverse(P) if n else []), [p + q for p, q in types], types


def _grade_entries(weights, k):
    n = len(weights)
    return [(r, c) for r in range(n) for c in range(n) if weights[c] - weights[r] == k]


def _max_gap(weights) -> int:
    return (max(weights) - min(weights)) if weights else 0


def _unipotent_inverse(a: FormMatrix) -> FormMatrix:
    n = a.rows
    I = FormMatrix.identity(a.dga, n, a.tdt)
    N = I - a
    out, term = I, I
    for _ in range(n):
        term = term @ N
        if term.is_zero():
            break
        out = out + term
    if not term.is_zero():
        raise InvariantViolation("matrix is not unipotent")
    return out


# ----------------------------------------------------------------------
# transport

@dataclass
class TransportResult:
    Omega: MaurerCartanElement        # over the source
    a: FlatMorphism                   # from (V, f(Omega)) to (V, omega)
    grades: int

    def report(self, f: DgaMorphism, mc: MaurerCartanElement) -> Report:
        rep = Report("transport")
        rep.extend(check_mc(self.Omega), "Omega: ")
        rep.extend(check_flat_morphism(self.a, self.Omega.map(f), mc), "a: ")
        return rep


def transport(f: DgaMorphism, mc: MaurerCartanElement, *, mhs: MixedHodgeStructure | None = None,
              F_constrained: bool = False) -> TransportResult:
    """Ω over the source of f and a = Id + Σa_k with dΩ + ΩΩ = 0 and
    da + ωa − a f(Ω) = 0, solved entrywise by W-grade.

    With ``F_constrained`` (needs ``mhs`` on V and F on the source) the
    entries of Ω are kept in F⁰(S¹ ⊗ End V) using the Deligne basis of V."""
    S, T = f.source, f.target
    if mc.dga is not T:
        raise InputError("Maurer–Cartan element must live over the target of f")
    if mc.is_tdt or getattr(f, "tdt", False):
        raise InputError("transport takes a plain morphism and a plain MC element")
    conv = mc.convention
    mc = mc.to_plus()
    n = mc.dim
    P, Pinv, weights, types = grading_basis(mc.W, mhs if F_constrained else None)
    if F_constrained and not S.has_F:
        raise InputError("F-constrained transport needs a Hodge filtration on the source")
    om = mc.omega.conjugate_by(P, Pinv)
    nS1, nT0 = S.dim(1), T.dim(0)
    dS = S.d_matrix(1)
    fm = f.matrix(1)
    dT = T.d_matrix(0)
    Omega = FormMatrix.zeros(S, 1, n, n)
    A = FormMatrix.zeros(T, 0, n, n)
    Id = FormMatrix.identity(T, n)
    gaps = _max_gap(weights)
    for k in range(1, gaps + 1):
        entries = _grade_entries(weights, k)
        if not entries:
            continue
        R = -(Omega @ Omega)
        fO = Omega.map(lambda x: f(x), dga=T)
        Y = om + om @ A - A @ fO
        newO = [row[:] for row in Omega.e]
        newA = [row[:] for row in A.e]
        for (r, c) in entries:
            rhs_R = R.e[r][c].vec() if S.dim(2) else ()
            rhs_Y = Y.e[r][c].vec()
            if F_constrained:
                shift = types[c][0] - types[r][0]
                xb = list(S.F(1)(shift).rows)
                ub = list(T.F(0)(shift).rows) if T.has_F else None
            else:
                xb = ub = None
            x, u = _joint_solve(dS, fm, dT, rhs_R, rhs_Y, nS1, nT0, S.dim(2), T.dim(1), xb, ub)
            if x is None:
                raise ConstructionError(f"no solution at grade {k}, entry {(r, c)}: "
                                        "the map is not a 1-quasi-isomorphism in the needed degrees")
            newO[r][c] = S.element(1, x)
            newA[r][c] = T.element(0, u)
        Omega = FormMatrix(S, 1, newO)
        A = FormMatrix(T, 0, newA)
    a_hat = Id + A
    Om = Omega.conjugate_by(Pinv, P)
    a = a_hat.conjugate_by(Pinv, P)
    out = TransportResult(MaurerCartanElement(S, mc.W, Om, "plus").as_convention(conv),
                          FlatMorphism(a), gaps)
    rep = out.report(f, mc.as_convention(conv))
    if not rep.ok:
        raise InvariantViolation(f"transport output fails: {rep.failed_names()}")
    return out


def _std_basis(n):
    return [tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n)]


def _combine(coeffs, basis, n):
    out = [ZERO] * n
    for cj, b in zip(coeffs, basis):
        if cj:
            for l in range(n):
                if b[l]:
                    out[l] = out[l] + cj * b[l]
    return tuple(out)


def _joint_solve(dS, fm, dT, R, Y, nS1, nT0, nS2, nT1, xbasis=None, ubasis=None):
    """(x, u) with d_S x = R, f(x) − d_T u = Y; x in span(xbasis), u in
    span(ubasis) when given.  x-columns come first, so a solution with u = 0
    is preferred whenever one exists."""
    xbasis = _std_basis(nS1) if xbasis is None else xbasis
    ubasis = _std_basis(nT0) if ubasis is None else ubasis
    m, mu = len(xbasis), len(ubasis)
    rows, rhs = [], []
    for i in range(nS2):
        row = [sum((dS[i][l] * b[l] for l in range(nS1) if b[l]), ZERO) for b in xbasis] + [ZERO] * mu
        rows.append(row)
        rhs.append(R[i])
    for i in range(nT1):
        row = [sum((fm[i][l] * b[l] for l in range(nS1) if b[l]), ZERO) for b in xbasis]
        row += [-sum((dT[i][j] * b[j] for j in range(nT0) if b[j]), ZERO) for b in ubasis]
        rows.append(row)
        rhs.append(Y[i])
    if not rows:
        return tuple([ZERO] * nS1), tuple([ZERO] * nT0)
    sol = solve_linear(rows, rhs, m + mu)
    if sol is None:
        return None, None
    return _combine(sol[:m], xbasis, nS1), _combine(sol[m:], ubasis, nT0)


# ----------------------------------------------------------------------
# gauge

@dataclass
class GaugeResult:
    a: FlatMorphism                   # a = Id + A at t = 1
    A_t: FormMatrix                   # Ã(t), (t,dt) form matrix of degree 0
    omega0: MaurerCartanElement
    omega1: MaurerCartanElement

    def identity_residual(self) -> FormMatrix:
        """ω₁ − (a⁻¹ω₀a + a⁻¹da) in the element's own convention."""
        s = _sign(self.omega0.convention)
        a = self.a.a
        ainv = _unipotent_inverse(a)
        return self.omega1.omega - (ainv @ self.omega0.omega @ a + (ainv @ a.d()).scale(s))


def _d_A(x: TdtElement) -> TdtElement:
    """Differential of the A-coefficients only (t treated as a constant)."""
    if x.dtpoly:
        raise InvariantViolation("d_A applied to an element with a dt-part")
    return TdtElement(x.dga, x.degree + 1, {k: v.d() for k, v in x.poly.items()}, {})


def gauge(w: MaurerCartanElement, C: ComplementChoice) -> GaugeResult:
    """Canonical a = Id + A, A ∈ C ⊗ W_{-1}End(V), with
    ω̃|_{t=1} = a⁻¹ ω̃|_{t=0} a + a⁻¹ da (sign of the da term per convention).

    Ã(t) is built grade by grade so that ã α(t) = ω₀ ã + d_A ã holds for
    every t, each t-coefficient of Ã solved by δ_C."""
    if not w.is_tdt:
        w = MaurerCartanElement(w.dga, w.W, w.omega.lift(), w.convention)
    if C.B is not w.dga:
        raise InputError("complement must live in the algebra of the family")
    conv = w.convention
    wp = w.to_plus()
    n = wp.dim
    rep = check_mc(wp)
    if not rep.ok:
        raise InputError(f"family is not Maurer–Cartan: {rep.failed_names()}")
    P, Pinv, weights, _ = grading_basis(wp.W)
    om = wp.omega.conjugate_by(P, Pinv)
    B = wp.dga
    alpha = om.map(lambda x: TdtElement(B, 1, x.poly, {}))
    om0 = FormMatrix(B, 1, [[TdtElement.lift(x.eval0()) for x in r] for r in om.e], True)
    Id = FormMatrix.identity(B, n, True)
    At = FormMatrix.zeros(B, 0, n, n, True)
    for k in range(1, _max_gap(weights) + 1):
        entries = _grade_entries(weights, k)
        if not entries:
            continue
        a_t = Id + At
        Y = a_t @ alpha - om0 @ a_t
        new = [row[:] for row in At.e]
        for (r, c) in entries:
            y = Y.e[r][c]
            if y.dtpoly:
                raise InvariantViolation("unexpected dt-part in the gauge recursion")
            poly = {}
            for tp, el in y.poly.items():
                if el:
                    poly[tp] = C.delta_elem(el)
            new[r][c] = TdtElement(B, 0, poly, {})
        At = FormMatrix(B, 0, new, True)
    # relation holds for all t
    a_t = Id + At
    lhs = a_t @ alpha
    rhs = om0 @ a_t + At.map(_d_A, degree=1)
    if not (lhs - rhs).is_zero():
        raise InvariantViolation("gauge relation fails along the family")
    if not At.eval_at(0).is_zero():
        raise InvariantViolation("gauge is not the identity at t = 0")
    A1 = At.eval_at(1).conjugate_by(Pinv, P)
    a = FormMatrix.identity(B, n) + A1
    res = GaugeResult(FlatMorphism(a), At.conjugate_by(Pinv, P),
                      MaurerCartanElement(B, w.W, w.omega.eval_at(0), conv),
                      MaurerCartanElement(B, w.W, w.omega.eval_at(1), conv))
    if not res.identity_residual().is_zero():
        raise InvariantViolation("gauge identity fails at t = 1")
    return res


def gauge_in_complement(res: GaugeResult, C: ComplementChoice) -> bool:
    """A = a − Id has every coefficient in C and lies in W_{-1}End(V)."""
    n = res.a.a.rows
    A = res.a.a - FormMatrix.identity(res.a.dga, n)
    for row in A.e:
        for x in row:
            if not C.contains(x):
                return False
    ok, _ = A.in_filtered_hom(hom_level_subspace(res.omega0.W, res.omega0.W, -1))
    return ok


def random_tdt_mc(B: DgaInstance, W: IncreasingFiltration, rng, t_degree: int = 4,
                  convention: str = "plus", C: ComplementChoice | None = None) -> MaurerCartanElement:
    """Family ω̃ = ã⁻¹ ω₀ ã + ã⁻¹ d ã for a random flat ω₀ built from closed
    1-forms of grade 1 and a random unipotent ã(t) with ã(0) = Id and
    coefficients in C.  The plus-convention answer ã(1) is attached as
    ``expected_a``."""
    from .samplers import rand_q
    n = W.n
    P, Pinv, weights, _ = grading_basis(W)
    closed = _closed_forms(B)
    # omega0: grade-1 entries with closed coefficients that commute away
    om0 = FormMatrix.zeros(B, 1, n, n)
    ents = [row[:] for row in om0.e]
    for (r, c) in _grade_entries(weights, 1):
        x = B.zero(1)
        for z in closed:
            q = rand_q(rng, -2, 2)
            if q:
                x = x + z.scale(q)
        ents[r][c] = x
    om0 = FormMatrix(B, 1, ents)
    if not (om0 @ om0).is_zero():
        om0 = FormMatrix.zeros(B, 1, n, n)
    # random unipotent family with coefficients in C, so that ã(1) is the canonical answer
    if C is None:
        C = ComplementChoice.augmentation(B)
    basis0 = [B.element(0, v) for v in C.C.rows]
    At = []
    for r in range(n):
        row = []
        for c in range(n):
            if weights[c] > weights[r]:
                poly = {}
                for tp in range(1, t_degree + 1):
                    el = B.zero(0)
                    for b in basis0:
                        q = rand_q(rng, -2, 2)
                        if q:
                            el = el + b.scale(q)
                    if el:
                        poly[tp] = el
                row.append(TdtElement(B, 0, poly, {}))
            else:
                row.append(TdtElement.lift(B.zero(0)))
        At.append(row)
    At = FormMatrix(B, 0, At, True)
    a = FormMatrix.identity(B, n, True) + At
    ainv = _unipotent_inverse(a)
    omt = ainv @ om0.lift() @ a + ainv @ a.d()
    om = omt.conjugate_by(Pinv, P)
    mc = MaurerCartanElement(B, W, om, "plus").as_convention(convention)
    mc.expected_a = a.eval_at(1).conjugate_by(Pinv, P)
    return mc


def _closed_forms(B: DgaInstance) -> list:
    from .dga import cohomology
    return cohomology(B, 1).representatives()


def complete_mc(model, W: IncreasingFiltration, seed: dict, convention: str = "plus",
                free: dict | None = None) -> MaurerCartanElement:
    """Maurer–Cartan element over a minimal model from prescribed entries.

    V is coordinate-graded by W.  ``seed`` maps (r, c) to an element of ℳ¹
    and fixes those entries (read in ``convention``); every other entry of
    grade k is the canonical solution of dx = −(ΩΩ)_k among generators of
    weight ≤ k, plus ``free[(r, c)]`` if given."""
    from .minimal import solve_in_span
    M = model.M
    n = W.n
    weights = _coordinate_weights(W)
    s = _sign(convention)
    free = free or {}
    n1 = M.dim(1)
    dM = M.d_matrix(1)
    Om = FormMatrix.zeros(M, 1, n, n)
    for k in range(1, _max_gap(weights) + 1):
        R = -(Om @ Om)
        ents = [row[:] for row in Om.e]
        allowed = [M.gen(g).vec() for g in model.generators if model.weight(g) <= k]
        for (r, c) in _grade_entries(weights, k):
            if (r, c) in seed:
                ents[r][c] = seed[(r, c)].scale(s)
                continue
            x = solve_in_span(dM, R.e[r][c].vec(), allowed, n1) if M.dim(2) else tuple([ZERO] * n1)
            if x is None:
                raise ConstructionError(f"no Maurer–Cartan completion at grade {k}, entry {(r, c)}")
            x = M.element(1, x)
            if (r, c) in free:
                x = x + free[(r, c)].scale(s)
            ents[r][c] = x
        Om = FormMatrix(M, 1, ents)
    out = MaurerCartanElement(M, W, Om, "plus").as_convention(convention)
    rep = check_mc(out)
    if not rep.ok:
        raise ConstructionError(f"completion is not Maurer–Cartan: {rep.failed_names()}")
    return out


def _coordinate_weights(W: IncreasingFiltration) -> list:
    """Weights of the coordinate vectors when W is a coordinate filtration."""
    out = []
    for j in range(W.n):
        e = tuple(ONE if i == j else ZERO for i in range(W.n))
        w = next((k for k in sorted(W.levels) if W(k).contains(e)), None)
        out.append(w)
    if W != IncreasingFiltration.from_weights(out):
        raise InputError("W is not a coordinate filtration")
    return out


def random_model_mc(model, weights: list, rng, density: float = 0.6, tries: int = 50):
    """Random Maurer–Cartan element over a minimal model, V coordinate-graded by
    ``weights`` (ascending): the free part of every entry is a sparse
    combination of closed generators, the rest is forced by the completion.
    Returns None when every attempt hits a non-exact obstruction."""
    from .samplers import rand_q
    M = model.M
    W = IncreasingFiltration.from_weights(weights)
    closed = [g for g in model.generators if not M.gen_d(g)]
    for _ in range(tries):
        free = {}
        for k in range(1, _max_gap(weights) + 1):
            for rc in _grade_entries(weights, k):
                x = M.zero(1)
                for g in closed:
                    if model.weight(g) <= k and rng.random() < density:
                        x = x + M.gen(g).scale(rand_q(rng, -2, 2))
                free[rc] = x
        try:
            return complete_mc(model, W, {}, free=free)
        except ConstructionError:
            continue
    return None


def _random_unipotent(dga, weights, rng, density: float = 0.5) -> FormMatrix:
    from .samplers import rand_q
    n = len(weights)
    basis0 = [dga.basis_element(0, i) for i in range(dga.dim(0))]
    ents = []
    for r in range(n):
        row = []
        for c in range(n):
            x = dga.unit() if r == c else dga.zero(0)
            if weights[c] > weights[r]:
                for b in basis0:
                    if rng.random() < density:
                        x = x + b.scale(rand_q(rng, -2, 2))
            row.append(x)
        ents.append(row)
    return FormMatrix(dga, 0, ents)


def random_transport_instance(model, rng, max_dim: int = 6, max_len: int = 4, tries: int = 100):
    """(Ω₀, ω): a random MC element Ω₀ over the model, conjugated by a constant
    filtered unipotent, pushed along φ and gauged by a random unipotent over the
    target.  ω is Maurer–Cartan over the target and lies in the image of
    transport by construction."""
    for _ in range(tries):
        n = rng.randint(1, max_dim)
        weights = sorted(rng.randint(0, max_len - 1) for _ in range(n))
        mc = random_model_mc(model, weights, rng)
        if mc is None:
            continue
        g = _random_unipotent(model.M, weights, rng)
        g = FormMatrix.const(model.M, g.scalar())
        Om = g @ mc.omega @ _unipotent_inverse(g)
        Om0 = MaurerCartanElement(model.M, mc.W, Om)
        T = model.target
        fO = Om0.map(model.phi).omega
        a = _random_unipotent(T, weights, rng)
        om = (a @ fO - a.d()) @ _unipotent_inverse(a)
        out = MaurerCartanElement(T, mc.W, om)
        if not check_mc(out).ok:
            raise InvariantViolation("random transport instance is not Maurer–Cartan")
        return Om0, out
    raise ConstructionError("no random Maurer–Cartan element found")
