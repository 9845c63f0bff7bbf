"""1-minimal models, dual Lie algebras, complements and the (I, H) pair."""
from __future__ import annotations

from dataclasses import dataclass, field

from .dga import (DgaInstance, DgaMorphism, Element, FreeDga, TdtElement, check_dga_morphism,
                  check_homotopy, check_morphism_1qis, cohomology)
from .errors import ConstructionError, InputError, InvariantViolation, PreconditionError
from .field import ONE, ZERO, QI
from .linalg import (DecreasingFiltration, IncreasingFiltration, QuotientMap, Solver, Subspace,
                     column_space, inverse, kernel, mat_mul, mat_vec, preimage, rank, solve_linear)
from .mhs import MixedHodgeStructure, check_mhs, derived_mhs
from .report import Report


# ----------------------------------------------------------------------
# helpers

def solve_in_span(M, rhs, basis: list, n: int):
    """Canonical x in span(basis) with M x = rhs, or None.

    The solve runs in the coordinates of ``basis`` so free variables are
    zero there."""
    if not basis:
        return tuple([ZERO] * n) if not any(rhs) else None
    cols = [mat_vec(M, b) for b in basis]
    m = len(rhs)
    A = [[cols[j][i] for j in range(len(basis))] for i in range(m)]
    c = solve_linear(A, rhs, len(basis)) if m else tuple([ZERO] * len(basis))
    if c is None:
        return None
    out = [ZERO] * n
    for cj, b in zip(c, basis):
        if cj:
            for i in range(n):
                if b[i]:
                    out[i] = out[i] + cj * b[i]
    return tuple(out)


def _dprime_level(T: DgaInstance, k: int, w: int) -> Subspace:
    """W'_w(T^k) = W_{w-k}(T^k); all of T^k at weight >= k when T has no W."""
    if T.has_W:
        return T.W(k)(w - k)
    return Subspace.full(T.dim(k)) if w >= k else Subspace.zero(T.dim(k))


def _dprime_filtration(T: DgaInstance, k: int) -> IncreasingFiltration:
    if T.has_W:
        return T.W(k).shift(k)
    return IncreasingFiltration.trivial(T.dim(k), k)


def _poly_terms(x: Element) -> list:
    """Element of a free DGA -> [[coeff, g1, g2, ...]] terms."""
    M = x.dga
    out = []
    for i in sorted(x.data):
        c = x.data[i]
        out.append([c] + [M.gens[g] for g in M.monomial(x.degree, i)])
    return out


# ----------------------------------------------------------------------
# models

@dataclass
class MinimalModel:
    M: FreeDga
    target: DgaInstance
    phi: DgaMorphism
    stages: list                       # list of lists of generator names
    kind: str = "canonical"
    types: dict = field(default_factory=dict)   # name -> (P, Q) for bigraded models

    @property
    def k(self) -> int:
        return len(self.stages)

    @property
    def generators(self) -> list:
        return [g for st in self.stages for g in st]

    def weight(self, g: str) -> int:
        return self.M.gen_weights[self.M.gen_index[g]]

    def stage_of(self, g: str) -> int:
        for s, st in enumerate(self.stages, 1):
            if g in st:
                return s
        raise InputError(f"unknown generator {g!r}")

    def stage_dims(self) -> list:
        return [len(s) for s in self.stages]

    def d_of(self, g: str) -> Element:
        return self.M.gen_d(g)

    def phi_of(self, g: str):
        return self.phi(self.M.gen(g))

    def W1(self) -> IncreasingFiltration:
        return self.M.W(1)

    def F1(self) -> DecreasingFiltration:
        return self.M.F(1)

    def truncate(self, k: int) -> "MinimalModel":
        """Sub-model on the first k stages."""
        gens = [g for st in self.stages[:k] for g in st]
        M = _free_model(gens, {g: _poly_terms(self.M.gen_d(g)) for g in gens},
                        {g: self.weight(g) for g in gens},
                        {g: self.types[g] for g in gens} if self.types else None,
                        self.M.field, self.M.name)
        phi = DgaMorphism(M, self.target, {g: self.phi_of(g) for g in gens}, self.phi.name)
        return MinimalModel(M, self.target, phi, [list(s) for s in self.stages[:k]], self.kind,
                            {g: self.types[g] for g in gens} if self.types else {})

    def check(self) -> Report:
        from .dga import validate_dga
        rep = Report(f"{self.kind} 1-minimal model")
        rep.extend(validate_dga(self.M), "model: ")
        rep.extend(check_dga_morphism(self.phi), "phi: ")
        # d(V_{i+1}) lies in the algebra on earlier stages
        bad = None
        seen = set()
        for st in self.stages:
            for g in st:
                for term in _poly_terms(self.M.gen_d(g)):
                    if not set(term[1:]) <= seen:
                        bad = g
            seen |= set(st)
        rep.add("d(V_{i+1}) in earlier stages", bad is None, bad)
        return rep


def _free_model(gens, d, weights, types, field, name) -> FreeDga:
    return FreeDga([(g, 1) for g in gens], d, max_degree=3, field=field, name=name,
                   weights=weights, hodge_types=types)


def _stage_candidates(M: FreeDga, phi: DgaMorphism, T: DgaInstance):
    """(QuotientMap of {z closed in M^2 : phi(z) exact} mod B^2(M)), in M^2 coords."""
    n2 = M.dim(2)
    Z = kernel(M.d_matrix(2), n2)
    BT = column_space(T.d_matrix(1), T.dim(2), T.dim(1))
    P = preimage(phi.matrix(2), n2, BT)
    K = Z.intersect(P)
    BM = column_space(M.d_matrix(1), n2, M.dim(1))
    return QuotientMap(BM, K)


def _build(T: DgaInstance, stage1: list, solve, k: int, kind: str, prefix: str, field_: str,
           typed: bool) -> MinimalModel:
    """stage1: [(vector in T^1, weight, type or None)].
    solve(target element of T^2, weight, type) -> element of T^1 with d = target."""
    gens, dpoly, weights, types, images = [], {}, {}, {}, {}
    stages = []
    for j, (v, w, t) in enumerate(stage1):
        g = f"{prefix}1_{j + 1}"
        gens.append(g)
        weights[g] = w
        if typed:
            types[g] = t
        images[g] = T.element(1, v)
    stages.append(list(gens))
    M = _free_model(gens, dpoly, weights, types if typed else None, field_, f"{prefix}_model")
    phi = DgaMorphism(M, T, images, "phi")
    for s in range(2, k + 1):
        if not gens:
            stages.append([])
            continue
        q = _stage_candidates(M, phi, T)
        new = _adapted_reps(M, q, typed)
        names = []
        for j, (z, w, t) in enumerate(new):
            g = f"{prefix}{s}_{j + 1}"
            ze = M.element(2, z)
            y = solve(phi(ze), w, t)
            if y is None:
                raise ConstructionError(f"stage {s}: no solution for the image of generator {g}")
            if y.d() != phi(ze):
                raise InvariantViolation(f"stage {s}: d(phi({g})) != phi(d {g})")
            names.append((g, ze, w, t, y))
        for g, ze, w, t, y in names:
            gens.append(g)
            dpoly[g] = _poly_terms(ze)
            weights[g] = w
            if typed:
                types[g] = t
            images[g] = y
        stages.append([g for g, *_ in names])
        if names:
            M = _free_model(gens, dpoly, weights, types if typed else None, field_, f"{prefix}_model")
            phi = DgaMorphism(M, T, images, "phi")
    return MinimalModel(M, T, phi, stages, kind, types if typed else {})


def _adapted_reps(M: FreeDga, q: QuotientMap, typed: bool) -> list:
    """Representatives of K/B adapted to weights (or split by Hodge type)."""
    if q.dim == 0:
        return []
    n2 = M.dim(2)
    if typed:
        cells = {}
        for i in range(n2):
            cells.setdefault(M.gen_type_of(2, i), []).append(i)
        out, total = [], 0
        for t in sorted(cells):
            S = Subspace.coordinate(n2, cells[t])
            piece = q.big.intersect(S)
            reps = q.small.intersect(S).quotient_basis(piece)
            total += len(reps)
            out += [(r, t[0] + t[1], t) for r in reps]
        if total != q.dim:
            raise PreconditionError("candidate space does not split by Hodge type")
        return out
    W = M.W(2)
    lv = {}
    for w in W.levels:
        S = q.big.intersect(W(w))
        lv[w] = Subspace(q.dim, [q(v) for v in S.rows])
    filt = IncreasingFiltration(q.dim, lv)
    return [(q.lift(c), w, None) for c, w in filt.adapted_basis()]


def _weighted_h1_reps(T: DgaInstance) -> list:
    H = cohomology(T, 1)
    if H.dim == 0:
        return []
    Wp = _dprime_filtration(T, 1)
    q = H._q
    lv = {}
    for w in Wp.levels:
        S = H.Z.intersect(Wp(w))
        lv[w] = Subspace(q.dim, [q(v) for v in S.rows])
    filt = IncreasingFiltration(q.dim, lv)
    out = []
    for c, w in filt.adapted_basis():
        # lift inside the weight level so the representative is W'-homogeneous
        target_cls = c
        lvl = H.Z.intersect(Wp(w))
        best = None
        for r in [q.lift(c)]:
            if lvl.contains(r):
                best = r
        if best is None:
            basis = list(lvl.rows)
            A = [[q(b)[i] for b in basis] for i in range(q.dim)]
            x = solve_linear(A, target_cls, len(basis))
            best = tuple(sum((x[j] * basis[j][i] for j in range(len(basis)) if x[j]), ZERO)
                         for i in range(T.dim(1)))
        out.append((best, w, None))
    return out


def _solve_d(T: DgaInstance):
    def solve(target: Element, w: int, t):
        level = _dprime_level(T, 1, w)
        v = solve_in_span(T.d_matrix(1), target.vec(), list(level.rows), T.dim(1))
        return None if v is None else T.element(1, v)
    return solve


def canonical_1_minimal_model(A: DgaInstance, k: int = 3, prefix: str = "m") -> MinimalModel:
    """Canonical sequence: V_1 = H^1 representatives, V_{n+1} = kernel of
    H^2(M_n) -> H^2(A), phi on new generators by the canonical solve."""
    if k < 1:
        raise InputError("stage count must be at least 1")
    if cohomology(A, 0).dim != 1:
        raise PreconditionError("DGA is not cohomologically connected")
    return _build(A, _weighted_h1_reps(A), _solve_d(A), k, "canonical", prefix, "q", False)


# -- dd^c and del-delbar lemmas -----------------------------------------

def _span_im(T, op_matrix, k) -> Subspace:
    if k - 1 < 0:
        return Subspace.zero(T.dim(k))
    return column_space(op_matrix(k - 1), T.dim(k), T.dim(k - 1))


def _ker(T, op_matrix, k) -> Subspace:
    if k >= T.max_degree:
        return Subspace.full(T.dim(k))
    return kernel(op_matrix(k), T.dim(k))


def ddc_lemma(T: DgaInstance, degrees=(1, 2)) -> Report:
    """im d ∩ ker d^c = ker d ∩ im d^c = im dd^c in the given degrees."""
    rep = Report("dd^c-lemma")
    for k in degrees:
        imd, kerdc = _span_im(T, T.d_matrix, k), _ker(T, T.dc_matrix, k)
        kerd, imdc = _ker(T, T.d_matrix, k), _span_im(T, T.dc_matrix, k)
        if k >= 2:
            ddc = mat_mul(T.d_matrix(k - 1), T.dc_matrix(k - 2), T.dim(k - 1), T.dim(k - 2))
            imddc = column_space(ddc, T.dim(k), T.dim(k - 2))
        else:
            imddc = Subspace.zero(T.dim(k))
        a, b = imd.intersect(kerdc), kerd.intersect(imdc)
        ok = a == imddc and b == imddc
        rep.add(f"degree {k}", ok, None if ok else _lemma_witness(T, k, a, b, imddc))
    return rep


def ddbar_lemma(T: DgaInstance, degrees=(1, 2)) -> Report:
    """im del ∩ ker dbar = ker del ∩ im dbar = im del dbar."""
    rep = Report("del-delbar-lemma")
    de = lambda k: T.partial_matrix(k, "del")
    db = lambda k: T.partial_matrix(k, "dbar")
    for k in degrees:
        a = _span_im(T, de, k).intersect(_ker(T, db, k))
        b = _ker(T, de, k).intersect(_span_im(T, db, k))
        if k >= 2:
            M = mat_mul(de(k - 1), db(k - 2), T.dim(k - 1), T.dim(k - 2))
            im2 = column_space(M, T.dim(k), T.dim(k - 2))
        else:
            im2 = Subspace.zero(T.dim(k))
        ok = a == im2 and b == im2
        rep.add(f"degree {k}", ok, None if ok else _lemma_witness(T, k, a, b, im2))
    return rep


def _lemma_witness(T, k, a, b, c):
    for S in (a, b):
        for r in S.rows:
            if not c.contains(r):
                return {"degree": k, "form": str(T.element(k, r))}
    for r in c.rows:
        return {"degree": k, "form": str(T.element(k, r))}
    return {"degree": k}


def _solve_ddc(T: DgaInstance):
    ddc = mat_mul(T.d_matrix(1), T.dc_matrix(0), T.dim(1), T.dim(0))

    def solve(target: Element, w, t):
        f = solve_linear(ddc, target.vec(), T.dim(0)) if T.dim(0) else None
        if f is None:
            return None
        return T.element(0, f).dc()
    return solve


def ddc_minimal_model(A: DgaInstance, k: int = 3, prefix: str = "m") -> MinimalModel:
    """V_1 = ker d ∩ ker d^c in degree 1; phi(v) = d^c f with d d^c f = phi(dv)."""
    if not A.has_dc:
        raise PreconditionError("dd^c construction needs a second differential")
    lemma = ddc_lemma(A)
    if not lemma.ok:
        raise PreconditionError(f"dd^c-lemma fails: {lemma.failures()[0].witness}")
    if cohomology(A, 0).dim != 1:
        raise PreconditionError("DGA is not cohomologically connected")
    K = kernel(A.d_matrix(1), A.dim(1)).intersect(kernel(A.dc_matrix(1), A.dim(1)))
    if K.dim != cohomology(A, 1).dim:
        raise PreconditionError("ker d ∩ ker d^c does not represent H^1")
    Wp = _dprime_filtration(A, 1)
    lv = {w: Subspace(K.dim, [K.coords(v) for v in K.intersect(Wp(w)).rows]) for w in Wp.levels}
    stage1 = [(K.from_coords(c), w, None) for c, w in IncreasingFiltration(K.dim, lv).adapted_basis()]
    return _build(A, stage1, _solve_ddc(A), k, "ddc", prefix, "q", False)


def _solve_ddbar(T: DgaInstance):
    # psi(w) = del f with dbar del f = target, so d(del f) = target
    M = mat_mul(T.partial_matrix(1, "dbar"), T.partial_matrix(0, "del"), T.dim(1), T.dim(0))

    def solve(target: Element, w, t):
        f = solve_linear(M, target.vec(), T.dim(0)) if T.dim(0) else None
        if f is None:
            return None
        return T.element(0, f).partial("del")
    return solve


def _solve_filtered(T: DgaInstance):
    def solve(target: Element, w, t):
        level = _dprime_level(T, 1, w)
        if t is not None and T.has_F:
            level = level.intersect(T.F(1)(t[0]))
        v = solve_in_span(T.d_matrix(1), target.vec(), list(level.rows), T.dim(1))
        return None if v is None else T.element(1, v)
    return solve


def bigraded_minimal_model(B: DgaInstance, k: int = 3, prefix: str = "n", method: str = "auto") -> MinimalModel:
    """Bigraded model: W_1 = ker del ∩ ker dbar split by (P, Q); later
    generators psi(w) = del f with dbar del f = psi(dw)."""
    if not B.has_bidegrees:
        raise PreconditionError("bigraded construction needs bidegrees")
    if cohomology(B, 0).dim != 1:
        raise PreconditionError("DGA is not cohomologically connected")
    if method == "auto":
        method = "ddbar" if ddbar_lemma(B).ok else "filtered"
    if method == "ddbar":
        lemma = ddbar_lemma(B)
        if not lemma.ok:
            raise PreconditionError(f"del-delbar-lemma fails: {lemma.failures()[0].witness}")
        solve = _solve_ddbar(B)
    elif method == "filtered":
        solve = _solve_filtered(B)
    else:
        raise InputError(f"unknown method {method!r}")
    n1 = B.dim(1)
    K = kernel(B.partial_matrix(1, "del"), n1).intersect(kernel(B.partial_matrix(1, "dbar"), n1))
    H1 = cohomology(B, 1)
    if K.dim != H1.dim or K.intersect(H1.B).dim:
        raise PreconditionError("ker del ∩ ker dbar does not represent H^1")
    Wp = _dprime_filtration(B, 1)
    cells = {}
    for i in range(n1):
        p, _ = B.bidegree(1, i)
        w = next(w for w in sorted(Wp.levels) if Wp(w).contains(tuple(ONE if j == i else ZERO for j in range(n1))))
        cells.setdefault((p, w - p), []).append(i)
    stage1, total = [], 0
    for t in sorted(cells, key=lambda t: (t[0] + t[1], -t[0])):
        piece = K.intersect(Subspace.coordinate(n1, cells[t]))
        total += piece.dim
        stage1 += [(r, t[0] + t[1], t) for r in piece.rows]
    if total != K.dim:
        raise PreconditionError("harmonic 1-forms do not split by type and weight")
    mdl = _build(B, stage1, solve, k, "bigraded", prefix, "qi", True)
    # psi(N^{P,Q}) ⊂ W'_{P+Q} ∩ F^P
    for g in mdl.generators:
        P, Q = mdl.types[g]
        y = mdl.phi_of(g).vec()
        if not _dprime_level(B, 1, P + Q).contains(y) or not B.F(1)(P).contains(y):
            raise InvariantViolation(f"psi({g}) is not in W'_{P + Q} ∩ F^{P}")
    return mdl


# ----------------------------------------------------------------------
# dual Lie algebra

@dataclass
class DualLieAlgebra:
    names: list                 # dual basis e_i <-> generator g_i
    bracket: dict               # (i, j) with i < j -> {k: c}
    weights: list               # -weight(g_i)
    F: DecreasingFiltration | None = None
    model: MinimalModel | None = None

    @property
    def dim(self) -> int:
        return len(self.names)

    def br(self, x, y) -> tuple:
        """Bracket of coordinate vectors."""
        n = self.dim
        out = [ZERO] * n
        for (i, j), val in self.bracket.items():
            c = x[i] * y[j] - x[j] * y[i]
            if not c:
                continue
            for k, v in val.items():
                out[k] = out[k] + c * v
        return tuple(out)

    def basis_vec(self, i) -> tuple:
        return tuple(ONE if j == i else ZERO for j in range(self.dim))

    def jacobi_residual(self) -> list:
        """Nonzero [[x,y],z] + cyclic over basis triples."""
        bad = []
        E = [self.basis_vec(i) for i in range(self.dim)]
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                for c in range(b + 1, self.dim):
                    s = [x + y + z for x, y, z in zip(self.br(self.br(E[a], E[b]), E[c]),
                                                       self.br(self.br(E[b], E[c]), E[a]),
                                                       self.br(self.br(E[c], E[a]), E[b]))]
                    if any(s):
                        bad.append((a, b, c))
        return bad

    def structure_constants(self) -> dict:
        return {(self.names[i], self.names[j]): {self.names[k]: c for k, c in v.items()}
                for (i, j), v in self.bracket.items() if v}

    def W(self) -> IncreasingFiltration:
        return IncreasingFiltration.from_weights(self.weights)

    def lower_central_length(self) -> int:
        """Smallest s with the s-fold bracket span zero."""
        n = self.dim
        cur = Subspace.full(n)
        s = 1
        while cur.dim:
            nxt = Subspace(n, [self.br(x, self.basis_vec(i)) for x in cur.rows for i in range(n)])
            if nxt == cur:
                return -1
            cur = nxt
            s += 1
        return s - 1


def dual_lie_algebra(m: MinimalModel, ih: "IHPair | None" = None) -> DualLieAlgebra:
    """Bracket [e_i, e_j] = sum_k c^k_ij e_k where d g_k = sum_{i<j} c^k_ij g_i g_j."""
    M = m.M
    names = [f"{g}*" for g in m.generators]
    idx = {g: i for i, g in enumerate(m.generators)}
    br = {}
    for g in m.generators:
        k = idx[g]
        for term in _poly_terms(M.gen_d(g)):
            c, a, b = term[0], idx[term[1]], idx[term[2]]
            if a > b:
                a, b, c = b, a, -c
            br.setdefault((a, b), {})
            br[(a, b)][k] = br[(a, b)].get(k, ZERO) + c
    br = {key: {k: c for k, c in v.items() if c} for key, v in br.items()}
    weights = [-m.weight(g) for g in m.generators]
    F = None
    if ih is not None:
        F = mhs_on_minimal_model(m, ih)[1].F
    L = DualLieAlgebra(names, br, weights, F, m)
    bad = L.jacobi_residual()
    if bad:
        raise InvariantViolation(f"Jacobi identity fails on {bad[0]}")
    return L


# ----------------------------------------------------------------------
# complements

class ComplementChoice:
    """Subspace C of B^0 with d|_C : C -> d(B^0) bijective; delta_C its inverse."""

    def __init__(self, B: DgaInstance, C: Subspace, check_filtrations: bool = True, name: str = ""):
        self.B, self.C, self.name = B, C, name
        n0 = B.dim(0)
        if C.n != n0:
            raise InputError(f"complement lives in dimension {C.n}, expected {n0}")
        d0 = B.d_matrix(0)
        r = rank(d0, n0) if n0 and B.dim(1) else 0
        if C.dim != r or kernel(d0, n0).intersect(C).dim:
            raise InputError("d restricted to the complement is not a bijection onto d(B^0)")
        self._basis = list(C.rows)
        self._img = [mat_vec(d0, b) for b in self._basis]
        n1 = B.dim(1)
        A = [[self._img[j][i] for j in range(len(self._basis))] for i in range(n1)]
        self._solver = Solver(A, len(self._basis))
        self.report = Report(f"complement {name}".strip())
        self.report.add("bijective", True)
        if check_filtrations:
            for label, has, filt0, filt1 in (("W", B.has_W, lambda: B.W(0), lambda: B.W(1)),
                                            ("F", B.has_F, lambda: B.F(0), lambda: B.F(1))):
                if not has:
                    continue
                bad = None
                imd = column_space(d0, n1, n0)
                for lvl in filt1().levels:
                    for y in imd.intersect(filt1()(lvl)).rows:
                        if not filt0()(lvl).contains(self.delta(y)):
                            bad = {"level": lvl}
                    if bad:
                        break
                self.report.add(f"delta_C is {label}-compatible", bad is None, bad)

    @staticmethod
    def augmentation(B: DgaInstance, name: str = "C_x") -> "ComplementChoice":
        """Kernel of the augmentation reading off the unit coefficient."""
        n0 = B.dim(0)
        C = Subspace.coordinate(n0, [i for i in range(n0) if i != B.unit_index])
        return ComplementChoice(B, C, name=name)

    @staticmethod
    def kernel_of(B: DgaInstance, functional, name: str = "C") -> "ComplementChoice":
        """C = ker(functional) for a functional with functional(1) != 0."""
        func = tuple(QI.coerce(x) for x in functional)
        if not any(func[i] for i in [B.unit_index]):
            raise InputError("the functional must not vanish on the unit")
        return ComplementChoice(B, kernel([list(func)], B.dim(0)), name=name)

    def delta(self, y) -> tuple:
        v = y.vec() if isinstance(y, Element) else tuple(y)
        c = self._solver.solve(v)
        if c is None:
            raise ConstructionError("delta_C applied outside d(B^0)")
        out = [ZERO] * self.B.dim(0)
        for cj, b in zip(c, self._basis):
            if cj:
                for i, bi in enumerate(b):
                    if bi:
                        out[i] = out[i] + cj * bi
        return tuple(out)

    def delta_elem(self, y: Element) -> Element:
        return self.B.element(0, self.delta(y))

    def contains(self, x) -> bool:
        v = x.vec() if isinstance(x, Element) else tuple(x)
        return self.C.contains(v)


# ----------------------------------------------------------------------
# (I, H)

@dataclass
class IHPair:
    phi_model: MinimalModel     # M -> A
    psi_model: MinimalModel     # N -> B
    iota: DgaMorphism           # A -> B
    C: ComplementChoice
    I: DgaMorphism              # N -> M
    I_inv: DgaMorphism          # M -> N
    H: DgaMorphism              # N -> B ⊗ (t,dt)
    iota_phi: DgaMorphism       # M -> B
    b: dict                     # generator of N -> b_v in B^0

    def report(self) -> Report:
        rep = Report("(I, H) construction")
        psi = self.psi_model.phi
        end1 = self.iota_phi.compose(self.I)
        rep.extend(check_homotopy(self.H, psi, end1), "H: ")
        rep.extend(check_dga_morphism(self.I), "I: ")
        bad = None
        N = self.psi_model.M
        for g in self.psi_model.generators:
            h = self.H(N.gen(g))
            for b in h.dtpoly.values():
                if not self.C.contains(b):
                    bad = g
        rep.add("dt-coefficients in C", bad is None, bad)
        return rep


def _strict_d0(B: DgaInstance) -> Report:
    """d: B^0 -> B^1 strictly compatible with W and F."""
    rep = Report("strictness of d on B^0")
    d0 = B.d_matrix(0)
    n0, n1 = B.dim(0), B.dim(1)
    im = column_space(d0, n1, n0)
    for label, has, f0, f1 in (("W", B.has_W, lambda: B.W(0), lambda: B.W(1)),
                              ("F", B.has_F, lambda: B.F(0), lambda: B.F(1))):
        if not has:
            continue
        bad = None
        for lvl in sorted(set(f0().levels) | set(f1().levels)):
            lhs = im.intersect(f1()(lvl))
            rhs = f0()(lvl).image(d0, n1)
            if lhs != rhs:
                bad = {"level": lvl}
                break
        rep.add(f"{label}-strict", bad is None, bad)
    return rep


def build_I_and_H(phi_model: MinimalModel, psi_model: MinimalModel, iota: DgaMorphism,
                  C: ComplementChoice) -> IHPair:
    """Inductive construction of the filtered isomorphism I: N -> M and the
    homotopy H from psi to iota∘phi∘I, normalised by the complement C."""
    A, B = phi_model.target, psi_model.target
    if iota.source is not A or iota.target is not B:
        raise InputError("iota must map the phi-target to the psi-target")
    if C.B is not B:
        raise InputError("complement must live in the psi-target")
    strict = _strict_d0(B)
    if not strict.ok:
        raise PreconditionError(f"d on B^0 is not strict: {strict.failed_names()}")
    if phi_model.stage_dims() != psi_model.stage_dims():
        raise ConstructionError(f"stage dimensions differ: {phi_model.stage_dims()} vs {psi_model.stage_dims()}")
    M, N = phi_model.M, psi_model.M
    iota_phi = iota.compose(phi_model.phi, "iota∘phi")
    psi = psi_model.phi
    H1B = cohomology(B, 1)
    closed = [g for g in phi_model.generators if not M.gen_d(g)]
    I_img, H_img, b_of = {}, {}, {}
    nM1 = M.dim(1)
    for stage in psi_model.stages:
        I_part = DgaMorphism(N, M, dict(I_img), "I")
        H_part = DgaMorphism(N, B, dict(H_img), "H") if H_img else None
        new_I, new_H = {}, {}
        for v in stage:
            l = psi_model.weight(v)
            dv = N.gen_d(v)
            target = I_part(dv)
            level = [M.gen(g).vec() for g in phi_model.generators if phi_model.weight(g) <= l]
            a0 = solve_in_span(M.d_matrix(1), target.vec(), level, nM1)
            if a0 is None:
                raise ConstructionError(f"no a_v in W_{l} with d a_v = I(d{v})")
            a0 = M.element(1, a0)
            Hdv = H_part(dv) if (H_part is not None and dv) else TdtElement.lift(B.zero(2))
            r0 = psi(N.gen(v)) - iota_phi(a0) + Hdv.integrate01()
            if r0.d():
                raise InvariantViolation(f"correction form for {v} is not closed")
            zs = [g for g in closed if phi_model.weight(g) <= l]
            cols = [H1B.classify(iota_phi(M.gen(g))) for g in zs]
            rhs = H1B.classify(r0)
            Amat = [[cols[j][i] for j in range(len(zs))] for i in range(H1B.dim)]
            if zs and rank(Amat, len(zs)) != len(zs):
                raise ConstructionError(f"closed correction for {v} is not unique")
            c = solve_linear(Amat, rhs, len(zs)) if H1B.dim else tuple()
            if c is None:
                raise ConstructionError(f"no a_v for {v}: models are not 1-quasi-isomorphic through iota")
            z = M.zero(1)
            for cj, g in zip(c, zs):
                if cj:
                    z = z + M.gen(g).scale(cj)
            a_v = a0 + z
            r = r0 - iota_phi(z)
            if not H1B.is_exact(r):
                raise InvariantViolation(f"correction for {v} is not exact")
            b = C.delta_elem(r)
            h = TdtElement.lift(psi(N.gen(v))) + Hdv.integrate0t() \
                - TdtElement(B, 1, {1: b.d()}, {}) - TdtElement(B, 1, {}, {0: b})
            new_I[v], new_H[v] = a_v, h
            b_of[v] = b
        I_img.update(new_I)
        H_img.update(new_H)
    I = DgaMorphism(N, M, I_img, "I")
    H = DgaMorphism(N, B, H_img, "H")
    # inverse through the degree-1 matrix
    I1 = I.matrix(1)
    if N.dim(1) != M.dim(1) or rank(I1, N.dim(1)) != N.dim(1):
        raise InvariantViolation("I is not invertible in degree 1")
    Iinv1 = inverse(I1)
    inv_img = {}
    for j, g in enumerate(phi_model.generators):
        col = tuple(Iinv1[i][M.index(1, (M.gen_index[g],))] for i in range(N.dim(1)))
        inv_img[g] = N.element(1, col)
    I_inv = DgaMorphism(M, N, inv_img, "I^-1")
    # filtered: I(W_l) ⊆ W_l and inverse likewise
    for g in psi_model.generators:
        l = psi_model.weight(g)
        if not M.W(1)(l).contains(I(N.gen(g)).vec()):
            raise InvariantViolation(f"I({g}) leaves W_{l}")
    for g in phi_model.generators:
        l = phi_model.weight(g)
        if not N.W(1)(l).contains(I_inv(M.gen(g)).vec()):
            raise InvariantViolation(f"I^-1({g}) leaves W_{l}")
    ih = IHPair(phi_model, psi_model, iota, C, I, I_inv, H, iota_phi, b_of)
    for g in psi_model.generators:
        for bb in H(N.gen(g)).dtpoly.values():
            if not C.contains(bb):
                raise InvariantViolation(f"dt-coefficient of H({g}) is not in C")
    return ih


def mhs_on_minimal_model(m: MinimalModel, ih: IHPair):
    """(MHS on M^1, dual MHS on the Lie algebra n)."""
    M = m.M
    N = ih.psi_model.M
    n1 = M.dim(1)
    W = M.W(1)
    types = ih.psi_model.types
    ps = sorted({t[0] for t in types.values()}) if types else [0]
    lv = {}
    for r in ps:
        vecs = [ih.I(N.gen(g)).vec() for g in ih.psi_model.generators if types[g][0] >= r]
        lv[r] = Subspace(n1, vecs)
    F = DecreasingFiltration(n1, lv) if n1 else DecreasingFiltration(0, {})
    mhs = MixedHodgeStructure(W, F)
    rep = check_mhs(mhs)
    if not rep.ok:
        raise InvariantViolation(f"model MHS fails: {rep.failed_names()}")
    return mhs, derived_mhs("dual", mhs)
