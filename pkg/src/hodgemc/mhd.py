"""Mixed Hodge diagrams: weight spectral sequence through E1, the three
diagram axioms and the induced mixed Hodge structure on cohomology."""
from __future__ import annotations

from dataclasses import dataclass

from .dga import DgaInstance, DgaMorphism, check_dga_morphism, cohomology, validate_dga
from .errors import InputError, PreconditionError
from .field import ONE, ZERO
from .linalg import (DecreasingFiltration, IncreasingFiltration, QuotientMap, Subspace, inverse,
                     mat_vec, rank)
from .mhs import MixedHodgeStructure, check_hodge_structure, check_mhs
from .report import Report


class MixedHodgeDiagram:
    """iota: A ⊗ Q(i) -> B with A over Q carrying W, B carrying W and F."""

    def __init__(self, A: DgaInstance, B: DgaInstance, iota: DgaMorphism, name: str = ""):
        if iota.source is not A or iota.target is not B:
            raise InputError("iota must map A to B")
        if not A.has_W or not B.has_W:
            raise InputError("both algebras of a diagram need a weight filtration")
        if not B.has_F:
            raise InputError("B needs a Hodge filtration (bidegrees or explicit F)")
        if A.field != "q":
            raise InputError("A must be defined over Q")
        if A.max_degree != B.max_degree:
            raise InputError("A and B must share the truncation degree")
        self.A, self.B, self.iota, self.name = A, B, iota, name

    @property
    def max_degree(self) -> int:
        return self.A.max_degree

    def structure_report(self) -> Report:
        rep = Report("diagram structure")
        rep.extend(validate_dga(self.A), "A: ")
        rep.extend(validate_dga(self.B), "B: ")
        rep.extend(check_dga_morphism(self.iota), "iota: ")
        for lab, X in (("A", self.A), ("B", self.B)):
            bad = [k for k in range(X.max_degree + 1) if X.W(k)(-1).dim]
            rep.add(f"W_-1({lab}) = 0", not bad, {"degree": bad[0]} if bad else None)
        return rep


# ----------------------------------------------------------------------
# spectral pages

@dataclass
class Cell:
    """E0/E1 data at (p, q) = (-w, n + w) for one algebra."""
    p: int
    q: int
    degree: int
    weight: int
    gr: QuotientMap            # W_w / W_{w-1} in degree n
    Z: Subspace                # ker d0 (Gr coordinates)
    Bd: Subspace               # im d0 (Gr coordinates)
    e1: QuotientMap            # Z / Bd

    @property
    def dim0(self) -> int:
        return self.gr.dim

    @property
    def dim1(self) -> int:
        return self.e1.dim

    def lift(self, c) -> tuple:
        """E1 coordinates -> element of W_w(A^n) representing the class."""
        return self.gr.lift(self.e1.lift(c))


class SpectralPage:
    def __init__(self, X: DgaInstance, cells: dict, d0: dict, d1: dict, F0: dict, F1: dict):
        self.dga = X
        self.cells = cells        # (p, q) -> Cell
        self.d0 = d0              # (p, q) -> matrix Gr cell (p,q) -> Gr cell (p, q+1)
        self.d1 = d1              # (p, q) -> matrix E1 (p,q) -> E1 (p+1, q)
        self.F0 = F0              # (p, q) -> DecreasingFiltration on E0 cell
        self.F1 = F1              # (p, q) -> DecreasingFiltration on E1 cell

    def dims(self, page: str = "E1") -> dict:
        return {pq: (c.dim1 if page == "E1" else c.dim0) for pq, c in self.cells.items()}

    def to_json(self) -> dict:
        return {"E0": {f"{p},{q}": c.dim0 for (p, q), c in sorted(self.cells.items())},
                "E1": {f"{p},{q}": c.dim1 for (p, q), c in sorted(self.cells.items())}}


def _weights(X: DgaInstance, n: int) -> list:
    W = X.W(n)
    return sorted(W.levels)


def _unit(n, i):
    return tuple(ONE if j == i else ZERO for j in range(n))


def w_spectral_pages(X: DgaInstance, up_to: str = "E1") -> SpectralPage:
    """E0^{p,q} = Gr^W_{-p} X^{p+q} with d0, E1 = H(E0, d0) with d1."""
    if not X.has_W:
        raise PreconditionError("weight spectral sequence needs W")
    top = X.max_degree
    cells = {}
    for n in range(top + 1):
        W = X.W(n)
        for w in _weights(X, n):
            q = QuotientMap(W(w - 1), W(w))
            if q.dim:
                cells[(-w, n + w)] = [n, w, q]
    d0 = {}
    # matrices of d0 in Gr coordinates
    for (p, q), (n, w, g) in cells.items():
        if n >= top:
            continue
        tgt = cells.get((p, q + 1))
        cols = []
        for r in g.reps:
            y = mat_vec(X.d_matrix(n), r)
            cols.append(tgt[2](y) if tgt else ())
        if tgt:
            d0[(p, q)] = [[cols[j][i] for j in range(len(cols))] for i in range(tgt[2].dim)]
        else:
            d0[(p, q)] = None
    out = {}
    for (p, q), (n, w, g) in cells.items():
        dim = g.dim
        if n >= top:
            Z = Subspace.full(dim)        # truncation: everything in top degree is a cycle
        elif d0.get((p, q)) is None:
            Z = Subspace.full(dim)
        else:
            from .linalg import kernel
            Z = kernel(d0[(p, q)], dim)
        src = d0.get((p, q - 1))
        if src is None:
            Bd = Subspace.zero(dim)
        else:
            from .linalg import column_space
            Bd = column_space(src, dim, cells[(p, q - 1)][2].dim)
        out[(p, q)] = Cell(p, q, n, w, g, Z, Bd, QuotientMap(Bd, Z))
    d1 = {}
    for (p, q), c in out.items():
        tgt = out.get((p + 1, q))
        if tgt is None or not c.dim1 or c.degree >= top:
            continue
        cols = []
        for i in range(c.dim1):
            x = c.lift(_unit(c.dim1, i))
            y = mat_vec(X.d_matrix(c.degree), x)
            cols.append(tgt.e1(tgt.gr(y)))
        d1[(p, q)] = [[cols[j][i] for j in range(len(cols))] for i in range(tgt.dim1)]
    F0, F1 = {}, {}
    if X.has_F:
        for (p, q), c in out.items():
            Fn, Wn = X.F(c.degree), X.W(c.degree)
            lv0, lv1 = {}, {}
            for r in Fn.levels:
                S = Fn(r).intersect(Wn(c.weight))
                img = Subspace(c.dim0, [c.gr(v) for v in S.rows])
                lv0[r] = img
                lv1[r] = Subspace(c.dim1, [c.e1(v) for v in img.intersect(c.Z).rows])
            F0[(p, q)] = DecreasingFiltration(c.dim0, _close(lv0, c.dim0), check=False)
            F1[(p, q)] = DecreasingFiltration(c.dim1, _close(lv1, c.dim1), check=False)
    return SpectralPage(X, out, d0, d1, F0, F1)


def _close(levels: dict, n: int) -> dict:
    """Make jump levels monotone by summing with higher levels."""
    out = {}
    acc = Subspace.zero(n)
    for k in sorted(levels, reverse=True):
        acc = acc.sum(levels[k])
        out[k] = acc
    return out


# ----------------------------------------------------------------------
# iota on E1

def iota_on_e1(m: MixedHodgeDiagram, EA: SpectralPage, EB: SpectralPage) -> dict:
    """(p, q) -> matrix of iota* : E1(A) cell -> E1(B) cell (None if cell missing)."""
    out = {}
    for pq in sorted(set(EA.cells) | set(EB.cells)):
        ca, cb = EA.cells.get(pq), EB.cells.get(pq)
        da = ca.dim1 if ca else 0
        db = cb.dim1 if cb else 0
        if da == 0 and db == 0:
            continue
        if da == 0 or db == 0:
            out[pq] = (da, db, None)
            continue
        cols = []
        for i in range(da):
            x = m.iota(m.A.element(ca.degree, ca.lift(_unit(da, i)))).vec()
            cols.append(cb.e1(cb.gr(x)))
        out[pq] = (da, db, [[cols[j][i] for j in range(da)] for i in range(db)])
    return out


def _bijective(entry) -> bool:
    da, db, M = entry
    return da == db and M is not None and rank(M, da) == da


def check_mhd(m: MixedHodgeDiagram, pages=None) -> Report:
    rep = Report(f"mixed Hodge diagram {m.name}".strip())
    EA = pages[0] if pages else w_spectral_pages(m.A)
    EB = pages[1] if pages else w_spectral_pages(m.B)
    io = iota_on_e1(m, EA, EB)
    # axiom 1
    for pq, entry in sorted(io.items()):
        ok = _bijective(entry)
        rep.add(f"axiom 1: iota* bijective on E1{pq}", ok,
                None if ok else {"cell": list(pq), "dim_A": entry[0], "dim_B": entry[1]})
    # axiom 2: d0 strict for F on every E0 cell of B
    for pq, c in sorted(EB.cells.items()):
        M = EB.d0.get(pq)
        tgt = EB.cells.get((pq[0], pq[1] + 1))
        if M is None or tgt is None:
            continue
        Fs, Ft = EB.F0[pq], EB.F0[(pq[0], pq[1] + 1)]
        im = Subspace(tgt.dim0, [mat_vec(M, _unit(c.dim0, i)) for i in range(c.dim0)])
        bad = None
        for r in sorted(set(Fs.levels) | set(Ft.levels)):
            lhs = im.intersect(Ft(r))
            rhs = Fs(r).image(M, tgt.dim0)
            if lhs != rhs:
                bad = {"cell": list(pq), "level": r}
                break
        rep.add(f"axiom 2: d0 strict on E0{pq}", bad is None, bad)
    # axiom 3: Hodge structure of weight q on E1(B) cells, real structure through iota*
    for pq, cb in sorted(EB.cells.items()):
        if not cb.dim1:
            continue
        entry = io.get(pq)
        if entry is None or not _bijective(entry):
            rep.skip(f"axiom 3: Hodge structure on E1{pq}", "iota* not bijective on this cell")
            continue
        Minv = inverse(entry[2])
        F = EB.F1[pq]
        lv = {r: Subspace(cb.dim1, [mat_vec(Minv, v) for v in F(r).rows]) for r in F.levels}
        FA = DecreasingFiltration(cb.dim1, lv, check=False)
        sub = check_hodge_structure(cb.dim1, pq[1], FA, label=str(pq))
        rep.add(f"axiom 3: Hodge structure on E1{pq}", sub.ok,
                None if sub.ok else {"cell": list(pq), "failures": sub.failed_names()})
    return rep


def axiom_verdicts(rep: Report) -> dict:
    """{1: bool, 2: bool, 3: bool} from a check_mhd report."""
    out = {}
    for ax in (1, 2, 3):
        out[ax] = all(c.ok for c in rep.checks if c.name.startswith(f"axiom {ax}:"))
    return out


def induced_mhs_on_cohomology(m: MixedHodgeDiagram, r: int, check: bool = True) -> MixedHodgeStructure:
    """W'_i = image of Z ∩ W_{i-r}; F = F-levels of H^r(B) pulled back through iota*."""
    if check:
        rep = check_mhd(m)
        if not rep.ok:
            raise PreconditionError(f"diagram axioms fail: {rep.failed_names()}")
    A, B = m.A, m.B
    HA, HB = cohomology(A, r), cohomology(B, r)
    n = HA.dim
    if HB.dim != n:
        raise PreconditionError(f"iota* is not an isomorphism on H^{r}")
    cols = [HB.classify(m.iota(A.element(r, v))) for v in HA.reps]
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    if n and rank(M, n) != n:
        raise PreconditionError(f"iota* is not an isomorphism on H^{r}")
    WA = A.W(r)
    lv = {}
    for w in WA.levels:
        S = HA.Z.intersect(WA(w))
        lv[w + r] = Subspace(n, [HA.classify(v) for v in S.rows])
    W = IncreasingFiltration(n, lv) if n else IncreasingFiltration(0, {})
    FB = B.F(r)
    Minv = inverse(M) if n else []
    flv = {}
    for p in FB.levels:
        S = HB.Z.intersect(FB(p))
        flv[p] = Subspace(n, [mat_vec(Minv, HB.classify(v)) for v in S.rows])
    F = DecreasingFiltration(n, _close(flv, n), check=False) if n else DecreasingFiltration(0, {})
    F = DecreasingFiltration(n, F.levels) if n else F
    return MixedHodgeStructure(W, F)
