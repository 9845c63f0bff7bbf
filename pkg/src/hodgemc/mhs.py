"""Mixed Hodge structures over Q with Hodge filtration over Q(i).

Coordinates are taken in a fixed real basis of V, so complex conjugation
on V_C is coefficient-wise conjugation.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvariantViolation, PreconditionError
from .field import I, ONE, ZERO, QI
from .linalg import (DecreasingFiltration, IncreasingFiltration, QuotientMap, Subspace,
                     identity, induced_filtration, leading_pivots, mat_vec)
from .report import Report


class MixedHodgeStructure:
    __slots__ = ("W", "F", "_cache")

    def __init__(self, W: IncreasingFiltration, F: DecreasingFiltration):
        if W.n != F.n:
            raise InputError(f"W on dimension {W.n} but F on dimension {F.n}")
        for i, S in W.levels.items():
            if not S.is_real():
                raise InputError(f"weight level {i} is not defined over Q")
        self.W, self.F = W, F
        self._cache = {}

    @property
    def dim(self) -> int:
        return self.W.n

    def __eq__(self, o):
        return isinstance(o, MixedHodgeStructure) and self.W == o.W and self.F == o.F

    def __hash__(self):
        return hash((self.W, self.F))

    def __repr__(self):
        return f"MixedHodgeStructure(dim={self.dim}, W={self.W}, F={self.F})"

    def weights(self) -> list:
        return [i for i in self.W.levels]

    @staticmethod
    def pure(F: DecreasingFiltration, weight: int) -> "MixedHodgeStructure":
        return MixedHodgeStructure(IncreasingFiltration.trivial(F.n, weight), F)

    @staticmethod
    def unit() -> "MixedHodgeStructure":
        return MixedHodgeStructure(IncreasingFiltration.trivial(1, 0), DecreasingFiltration.trivial(1, 0))


class Bigrading:
    """(p, q) -> Subspace of V_C; components in direct sum."""

    __slots__ = ("n", "components")

    def __init__(self, n: int, components: dict):
        comps = {}
        for pq, S in components.items():
            if not isinstance(S, Subspace):
                S = Subspace(n, S)
            if S.n != n:
                raise InputError(f"component {pq} has ambient {S.n}")
            if S.dim:
                comps[tuple(pq)] = S
        self.n = n
        self.components = dict(sorted(comps.items()))

    def __getitem__(self, pq) -> Subspace:
        return self.components.get(tuple(pq), Subspace.zero(self.n))

    def __eq__(self, o):
        return isinstance(o, Bigrading) and self.n == o.n and self.components == o.components

    def hodge_numbers(self) -> dict:
        return {pq: S.dim for pq, S in self.components.items()}

    def total(self, pred) -> Subspace:
        out = Subspace.zero(self.n)
        for pq, S in self.components.items():
            if pred(*pq):
                out = out.sum(S)
        return out

    def adapted_basis(self) -> list:
        """[(vector, (p, q))] concatenating the echelon bases of the components."""
        return [(r, pq) for pq, S in self.components.items() for r in S.rows]


# ----------------------------------------------------------------------
# checks

def check_hodge_structure(n_dim: int, weight: int, F: DecreasingFiltration, label: str = "") -> Report:
    """F^p ⊕ conj F^{w+1-p} = V_C for every p."""
    rep = Report(f"hodge structure of weight {weight}{label}")
    if F.n != n_dim:
        raise InputError("filtration dimension mismatch")
    if n_dim == 0:
        rep.add("empty", True)
        return rep
    Fbar = F.conjugate()
    lo = min(F.lo, weight + 1 - F.hi - 1) - 1
    hi = max(F.hi, weight + 1 - F.lo) + 1
    for p in range(lo, hi + 1):
        A = F(p)
        B = Fbar(weight + 1 - p)
        ok = A.dim + B.dim == n_dim and A.sum(B).dim == n_dim
        if not ok:
            rep.add(f"p={p}", False, {"p": p, "dim_F": A.dim, "dim_conjF": B.dim, "dim_sum": A.sum(B).dim})
    if not rep.checks:
        rep.add("direct sums", True)
    return rep


def graded_hodge_filtration(m: MixedHodgeStructure, i: int):
    """(QuotientMap for Gr_i^W, induced F on Gr_i in quotient coordinates)."""
    key = ("gr", i)
    if key not in m._cache:
        m._cache[key] = _graded_hodge_filtration(m, i)
    return m._cache[key]


def _graded_hodge_filtration(m: MixedHodgeStructure, i: int):
    q = QuotientMap(m.W(i - 1), m.W(i))
    Wi = m.W(i)
    lv = {}
    for p in m.F.levels:
        S = m.F(p).intersect(Wi)
        lv[p] = Subspace(q.dim, [q(v) for v in S.rows])
    return q, DecreasingFiltration(q.dim, lv)


def check_mhs(m: MixedHodgeStructure) -> Report:
    rep = Report("mixed Hodge structure")
    for i in m.W.levels:
        q, Fi = graded_hodge_filtration(m, i)
        sub = check_hodge_structure(q.dim, i, Fi, f" on Gr_{i}")
        rep.add(f"Gr_{i} weight {i}", sub.ok, None if sub.ok else [c.witness for c in sub.failures()])
    if not m.W.levels:
        rep.add("empty", True)
    return rep


def hodge_numbers(m: MixedHodgeStructure) -> dict:
    out = {}
    for i in m.W.levels:
        q, Fi = graded_hodge_filtration(m, i)
        for p in range(Fi.lo, Fi.hi + 1):
            h = Fi(p).dim - Fi(p + 1).dim
            if h:
                out[(p, i - p)] = h
    return out


# ----------------------------------------------------------------------
# Deligne bigrading

def _deligne_component(m: MixedHodgeStructure, Fbar, p: int, q: int) -> Subspace:
    n = p + q
    R = m.W(n).intersect(m.F(p))
    if R.is_zero():
        return R
    L = m.W(n).intersect(Fbar(q))
    lo = m.W.lo
    i = 2
    while n - i >= lo:
        L = L.sum(m.W(n - i).intersect(Fbar(q - i + 1)))
        i += 1
    return R.intersect(L)


def deligne_bigrading(m: MixedHodgeStructure, verify: bool = True) -> Bigrading:
    """I^{p,q} = R^{p,q} ∩ L^{p,q}, checked against W, F and conjugation."""
    hn = hodge_numbers(m)
    Fbar = m.F.conjugate()
    comps = {}
    for (p, q), h in hn.items():
        S = _deligne_component(m, Fbar, p, q)
        if S.dim != h:
            raise InvariantViolation(f"I^{p},{q} has dim {S.dim}, expected Hodge number {h}")
        comps[(p, q)] = S
    bg = Bigrading(m.dim, comps)
    if verify:
        verify_bigrading(m, bg)
    return bg


def verify_bigrading(m: MixedHodgeStructure, bg: Bigrading):
    n = m.dim
    total = sum(S.dim for S in bg.components.values())
    if total != n or bg.total(lambda p, q: True).dim != n:
        raise InvariantViolation("bigrading components are not a direct sum decomposition")
    wsum = _cumulative(bg, lambda pq: pq[0] + pq[1], increasing=True)
    for i in range(m.W.lo - 1, m.W.hi + 1):
        if wsum(i) != m.W(i):
            raise InvariantViolation(f"bigrading does not reproduce W_{i}")
    fsum = _cumulative(bg, lambda pq: pq[0], increasing=False)
    for k in range(m.F.lo - 1, m.F.hi + 2):
        if fsum(k) != m.F(k):
            raise InvariantViolation(f"bigrading does not reproduce F^{k}")
    bad = conj_symmetry_failures(bg)
    if bad:
        raise InvariantViolation(f"conjugation symmetry fails at {bad[0]}")


def _cumulative(bg: Bigrading, key, increasing: bool):
    """Function t -> sum of components with key <= t (or >= t when decreasing)."""
    groups = {}
    for pq, S in bg.components.items():
        groups.setdefault(key(pq), []).append(S)
    order = sorted(groups, reverse=not increasing)
    acc = Subspace.zero(bg.n)
    table = []
    for t in order:
        for S in groups[t]:
            acc = acc.sum(S)
        table.append((t, acc))

    def at(t):
        best = Subspace.zero(bg.n)
        for k, S in table:
            if (k <= t) if increasing else (k >= t):
                best = S
            else:
                break
        return best
    return at


def conj_symmetry_failures(bg: Bigrading, strict_deligne: bool = False) -> list:
    """(p,q) where conj I^{p,q} ⊄ I^{q,p} + lower part.

    Lower part is ⊕_{r+s<p+q} (or ⊕_{r<q,s<p} when strict_deligne)."""
    bad = []
    wsum = _cumulative(bg, lambda pq: pq[0] + pq[1], increasing=True)
    for (p, q), S in bg.components.items():
        if strict_deligne:
            low = bg.total(lambda r, s: r < q and s < p)
        else:
            low = wsum(p + q - 1)
        tgt = bg[(q, p)].sum(low)
        if not S.conjugate().le(tgt):
            bad.append((p, q))
    return bad


def is_r_split(m: MixedHodgeStructure, bg: Bigrading | None = None) -> bool:
    bg = bg or deligne_bigrading(m)
    return all(S.conjugate() == bg[(q, p)] for (p, q), S in bg.components.items())


def mhs_from_bigrading(bg: Bigrading, check: bool = True) -> MixedHodgeStructure:
    n = bg.n
    total = sum(S.dim for S in bg.components.values())
    if total != n or bg.total(lambda p, q: True).dim != n:
        raise InputError(f"components do not form a direct sum decomposition of dimension {n}",
                         "/components")
    bad = conj_symmetry_failures(bg)
    if bad:
        p, q = bad[0]
        raise InputError(f"conjugation symmetry fails at ({p},{q})", f"/components/({p},{q})")
    wts = sorted({p + q for p, q in bg.components})
    wsum = _cumulative(bg, lambda pq: pq[0] + pq[1], increasing=True)
    fsum = _cumulative(bg, lambda pq: pq[0], increasing=False)
    Wl = {}
    for w in wts:
        S = wsum(w)
        if not S.is_real():
            raise InputError(f"W_{w} is not defined over Q", f"/components")
        Wl[w] = S
    ps = sorted({p for p, _ in bg.components})
    Fl = {p: fsum(p) for p in ps}
    m = MixedHodgeStructure(IncreasingFiltration(n, Wl), DecreasingFiltration(n, Fl))
    if check:
        rep = check_mhs(m)
        if not rep.ok:
            raise InvariantViolation(f"constructed MHS fails its axioms: {rep.failed_names()}")
    return m


# ----------------------------------------------------------------------
# derived structures

def derived_mhs(kind: str, m1: MixedHodgeStructure, m2: MixedHodgeStructure | None = None) -> MixedHodgeStructure:
    if kind == "dual":
        return MixedHodgeStructure(induced_filtration(m1.W, "dual"), induced_filtration(m1.F, "dual"))
    if m2 is None:
        raise InputError(f"{kind} needs two structures")
    if kind == "tensor":
        return MixedHodgeStructure(induced_filtration(m1.W, "tensor", m2.W),
                                   induced_filtration(m1.F, "tensor", m2.F))
    if kind == "hom":
        return MixedHodgeStructure(induced_filtration(m1.W, "hom", m2.W),
                                   induced_filtration(m1.F, "hom", m2.F))
    raise InputError(f"unknown derived structure {kind!r}")


def end_mhs(m: MixedHodgeStructure) -> MixedHodgeStructure:
    return derived_mhs("hom", m, m)


# ----------------------------------------------------------------------
# morphisms

@dataclass
class MorphismResult:
    is_morphism: bool
    witness: object = None
    strict: bool = False

    def __bool__(self):
        return self.is_morphism


def check_morphism(f, m1: MixedHodgeStructure, m2: MixedHodgeStructure,
                   assert_strict: bool = True) -> MorphismResult:
    """f: V1 -> V2 as a (dim V2) x (dim V1) matrix.

    A morphism is automatically strict and preserves the Deligne splitting;
    with ``assert_strict`` both are re-verified (costly on large Hom spaces)."""
    n1, n2 = m1.dim, m2.dim
    if len(f) != n2 or any(len(r) != n1 for r in f):
        raise InputError(f"map shape {len(f)}x{len(f[0]) if f else 0}, expected {n2}x{n1}")
    lo = min(m1.W.lo, m2.W.lo) - 1
    hi = max(m1.W.hi, m2.W.hi) + 1
    for i in range(lo, hi + 1):
        if not m1.W(i).image(f, n2).le(m2.W(i)):
            return MorphismResult(False, {"filtration": "W", "index": i})
    plo = min(m1.F.lo, m2.F.lo) - 1
    phi = max(m1.F.hi, m2.F.hi) + 1
    for p in range(plo, phi + 1):
        if not m1.F(p).image(f, n2).le(m2.F(p)):
            return MorphismResult(False, {"filtration": "F", "index": p})
    if not assert_strict:
        return MorphismResult(True, None, False)
    full = Subspace.full(n1).image(f, n2)
    for i in range(lo, hi + 1):
        if full.intersect(m2.W(i)) != m1.W(i).image(f, n2):
            raise InvariantViolation(f"morphism not strict for W at {i}")
    for p in range(plo, phi + 1):
        if full.intersect(m2.F(p)) != m1.F(p).image(f, n2):
            raise InvariantViolation(f"morphism not strict for F at {p}")
    b1, b2 = deligne_bigrading(m1), deligne_bigrading(m2)
    for pq, S in b1.components.items():
        if not S.image(f, n2).le(b2[pq]):
            raise InvariantViolation(f"morphism does not preserve I^{pq}")
    return MorphismResult(True, None, True)


# ----------------------------------------------------------------------
# polarization

def pure_components(F: DecreasingFiltration, weight: int) -> Bigrading:
    Fbar = F.conjugate()
    comps = {}
    for p in range(F.lo, F.hi + 1):
        S = F(p).intersect(Fbar(weight - p))
        if S.dim:
            comps[(p, weight - p)] = S
    return Bigrading(F.n, comps)


def _ipow(k: int) -> QI:
    return [ONE, I, -ONE, -I][k % 4]


def check_polarization(F: DecreasingFiltration, weight: int, S) -> Report:
    """h(u, v) = S(Cu, conj v) positive definite, S (-1)^w symmetric, V^{p,q} orthogonal."""
    n = F.n
    S = [[QI.coerce(x) for x in r] for r in S]
    rep = Report(f"polarization of weight {weight}")
    sign = ONE if weight % 2 == 0 else -ONE
    sym_bad = [(i, j) for i in range(n) for j in range(n) if S[j][i] != sign * S[i][j]]
    rep.add("(-1)^w symmetry", not sym_bad, sym_bad[0] if sym_bad else None)
    real_bad = [(i, j) for i in range(n) for j in range(n) if not S[i][j].is_real()]
    rep.add("real form", not real_bad, real_bad[0] if real_bad else None)
    hs = check_hodge_structure(n, weight, F)
    rep.add("hodge structure", hs.ok)
    if not hs.ok:
        return rep
    bg = pure_components(F, weight)
    basis = bg.adapted_basis()

    def form(u, v):
        s = ZERO
        for i in range(n):
            if u[i]:
                s = s + u[i] * sum((S[i][j] * v[j] for j in range(n) if v[j]), ZERO)
        return s

    orth_bad = None
    H = [[ZERO] * n for _ in range(n)]
    for a, (u, (p, q)) in enumerate(basis):
        Cu = tuple(_ipow(p - q) * x for x in u)
        for b, (v, pq2) in enumerate(basis):
            vb = tuple(x.conj() for x in v)
            val = form(Cu, vb)
            H[a][b] = val
            if pq2 != (p, q) and form(u, vb) and orth_bad is None:
                orth_bad = [list((p, q)), list(pq2)]
    rep.add("orthogonality of V^{p,q}", orth_bad is None, orth_bad)
    herm_bad = [(a, b) for a in range(n) for b in range(n) if H[b][a] != H[a][b].conj()]
    rep.add("hermitian", not herm_bad, herm_bad[0] if herm_bad else None)
    piv = leading_pivots(H)
    pos = all(x.is_real() and x.re > 0 for x in piv) and len(piv) == n
    rep.add("positive definite", pos, None if pos else {"pivots": [str(x) for x in piv]})
    return rep
