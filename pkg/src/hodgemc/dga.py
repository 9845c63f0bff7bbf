"""Finite, degree-truncated graded-commutative DGAs over Q or Q(i).

Two concrete kinds share one interface:

* ``ExplicitDga``: a finite basis per degree with structure constants.
* ``FreeDga``: the free graded-commutative algebra on generators of
  positive degree, truncated at ``max_degree``.

Internally everything is indexed by (degree, basis index); elements are
sparse dicts index -> QI.
"""
from __future__ import annotations

from functools import reduce
from itertools import combinations_with_replacement

from .errors import InputError, InvariantViolation, PreconditionError
from .field import I, ONE, ZERO, QI
from .linalg import (DecreasingFiltration, IncreasingFiltration, QuotientMap, Solver, Subspace,
                     column_space, kernel, mat_mul, rank, zeros)
from .report import Report


def _add_into(acc: dict, other: dict, c: QI = ONE):
    for k, v in other.items():
        x = acc.get(k, ZERO) + (v if c is ONE else c * v)
        if x:
            acc[k] = x
        else:
            acc.pop(k, None)


def _scaled(data: dict, c: QI) -> dict:
    if not c:
        return {}
    if c == ONE:
        return dict(data)
    return {k: c * v for k, v in data.items()}


# ----------------------------------------------------------------------
# base class

class DgaInstance:
    """Common interface.  Subclasses fill ``_basis`` and implement
    ``_mul_idx`` / ``_d_idx`` (and optionally ``_dc_idx``)."""

    def __init__(self, max_degree: int, field: str = "q", name: str = "", diagram_grade: bool = False):
        if field not in ("q", "qi"):
            raise InputError(f"field must be 'q' or 'qi', got {field!r}")
        if max_degree < 0:
            raise InputError("max_degree must be non-negative")
        self.max_degree = max_degree
        self.field = field
        self.name = name
        self.diagram_grade = diagram_grade
        self._basis: dict = {}
        self._index: dict = {}
        self._mul_cache: dict = {}
        self._d_cache: dict = {}
        self._dc_cache: dict = {}
        self._dmat: dict = {}
        self._W: dict | None = None
        self._F: dict | None = None
        self._bideg: dict | None = None
        self._has_dc = False

    # -- basis ------------------------------------------------------------
    def _set_basis(self, basis: dict):
        self._basis = {k: list(basis.get(k, [])) for k in range(self.max_degree + 1)}
        self._index = {k: {key: i for i, key in enumerate(b)} for k, b in self._basis.items()}
        for k, b in self._basis.items():
            if len(self._index[k]) != len(b):
                raise InputError(f"repeated basis label in degree {k}")

    def basis(self, k: int) -> list:
        return self._basis.get(k, [])

    def dim(self, k: int) -> int:
        return len(self._basis.get(k, ()))

    def index(self, k: int, key) -> int:
        try:
            return self._index[k][key]
        except KeyError:
            raise InputError(f"no basis element {key!r} in degree {k}") from None

    def label(self, k: int, i: int) -> str:
        return str(self._basis[k][i])

    def labels(self, k: int) -> list:
        return [self.label(k, i) for i in range(self.dim(k))]

    def find(self, name: str):
        """(degree, index) of a basis element by label."""
        for k in range(self.max_degree + 1):
            for i in range(self.dim(k)):
                if self.label(k, i) == name:
                    return k, i
        raise InputError(f"unknown basis element {name!r}")

    @property
    def total_dim(self) -> int:
        return sum(self.dim(k) for k in range(self.max_degree + 1))

    # -- structure --------------------------------------------------------
    unit_index = 0

    def mul_idx(self, k1: int, i: int, k2: int, j: int) -> dict:
        if k1 + k2 > self.max_degree:
            return {}
        key = (k1, i, k2, j)
        r = self._mul_cache.get(key)
        if r is None:
            r = self._mul_idx(k1, i, k2, j)
            self._mul_cache[key] = r
        return r

    def d_idx(self, k: int, i: int) -> dict:
        if k + 1 > self.max_degree:
            return {}
        key = (k, i)
        r = self._d_cache.get(key)
        if r is None:
            r = self._d_idx(k, i)
            self._d_cache[key] = r
        return r

    def dc_idx(self, k: int, i: int) -> dict:
        if not self._has_dc:
            raise PreconditionError(f"{self.name or 'DGA'} carries no second differential")
        if k + 1 > self.max_degree:
            return {}
        key = (k, i)
        r = self._dc_cache.get(key)
        if r is None:
            r = self._dc_idx(k, i)
            self._dc_cache[key] = r
        return r

    @property
    def has_dc(self) -> bool:
        return self._has_dc

    def _mul_idx(self, k1, i, k2, j) -> dict:
        raise NotImplementedError

    def _d_idx(self, k, i) -> dict:
        raise NotImplementedError

    def _dc_idx(self, k, i) -> dict:
        if self._bideg is None:
            raise PreconditionError("second differential needs bidegrees")
        # d^c = i (dbar - del), read off from bidegree components of d
        p, q = self._bideg[k][i]
        out = {}
        for j, c in self.d_idx(k, i).items():
            pj, qj = self._bideg[k + 1][j]
            if (pj, qj) == (p + 1, q):
                out[j] = -I * c
            elif (pj, qj) == (p, q + 1):
                out[j] = I * c
            else:
                raise InvariantViolation(f"d of {self.label(k, i)} is not of type (1,0)+(0,1)")
        return out

    def partial_idx(self, k: int, i: int, which: str) -> dict:
        """Component of d raising p ('del') or q ('dbar')."""
        if self._bideg is None:
            raise PreconditionError("partial differentials need bidegrees")
        p, q = self._bideg[k][i]
        tgt = (p + 1, q) if which == "del" else (p, q + 1)
        return {j: c for j, c in self.d_idx(k, i).items() if self._bideg[k + 1][j] == tgt}

    def d_matrix(self, k: int) -> list:
        """Matrix of d: A^k -> A^{k+1}."""
        M = self._dmat.get(("d", k))
        if M is None:
            M = self._op_matrix(k, self.d_idx)
            self._dmat[("d", k)] = M
        return M

    def dc_matrix(self, k: int) -> list:
        M = self._dmat.get(("dc", k))
        if M is None:
            M = self._op_matrix(k, self.dc_idx)
            self._dmat[("dc", k)] = M
        return M

    def partial_matrix(self, k: int, which: str) -> list:
        M = self._dmat.get((which, k))
        if M is None:
            M = self._op_matrix(k, lambda kk, i: self.partial_idx(kk, i, which))
            self._dmat[(which, k)] = M
        return M

    def _op_matrix(self, k, op) -> list:
        n, m = self.dim(k), self.dim(k + 1)
        M = zeros(m, n)
        if k + 1 > self.max_degree:
            return M
        for i in range(n):
            for j, c in op(k, i).items():
                M[j][i] = c
        return M

    # -- filtrations ------------------------------------------------------
    @property
    def has_W(self) -> bool:
        return self._W is not None

    @property
    def has_F(self) -> bool:
        return self._F is not None

    @property
    def has_bidegrees(self) -> bool:
        return self._bideg is not None

    def W(self, k: int) -> IncreasingFiltration:
        if self._W is None:
            raise PreconditionError(f"{self.name or 'DGA'} carries no weight filtration")
        return self._W[k]

    def F(self, k: int) -> DecreasingFiltration:
        if self._F is None:
            raise PreconditionError(f"{self.name or 'DGA'} carries no Hodge filtration")
        return self._F[k]

    def bidegree(self, k: int, i: int):
        if self._bideg is None:
            raise PreconditionError("no bidegrees")
        return self._bideg[k][i]

    def weight_of(self, k: int, i: int):
        """Weight of a basis element when W is a coordinate filtration."""
        for w, S in self.W(k).levels.items():
            e = tuple(ONE if j == i else ZERO for j in range(self.dim(k)))
            if S.contains(e):
                return w
        return None

    def _set_weights(self, weights: dict | None):
        """weights: degree -> list of ints (coordinate filtration)."""
        if weights is None:
            return
        self._W = {k: IncreasingFiltration.from_weights(weights.get(k, [])) for k in range(self.max_degree + 1)}

    def _set_bidegrees(self, bideg: dict | None):
        if bideg is None:
            return
        self._bideg = {k: [tuple(x) for x in bideg.get(k, [])] for k in range(self.max_degree + 1)}
        self._F = {k: DecreasingFiltration.from_levels_of_basis([p for p, _ in self._bideg[k]])
                   for k in range(self.max_degree + 1)}

    # -- elements ---------------------------------------------------------
    def element(self, k: int, data=None) -> "Element":
        if data is None:
            return Element(self, k, {})
        if isinstance(data, dict):
            out = {}
            for key, c in data.items():
                idx = key if isinstance(key, int) else self.index(k, key)
                c = QI.coerce(c)
                if c:
                    out[idx] = c
            return Element(self, k, out)
        vec = tuple(data)
        if len(vec) != self.dim(k):
            raise InputError(f"vector of length {len(vec)} in degree {k} of dimension {self.dim(k)}")
        return Element(self, k, {i: QI.coerce(c) for i, c in enumerate(vec) if c})

    def zero(self, k: int) -> "Element":
        return Element(self, k, {})

    def unit(self) -> "Element":
        return Element(self, 0, {self.unit_index: ONE})

    def basis_element(self, k: int, i: int) -> "Element":
        return Element(self, k, {i: ONE})

    def __getitem__(self, name: str) -> "Element":
        k, i = self.find(name)
        return Element(self, k, {i: ONE})

    def __repr__(self):
        dims = [self.dim(k) for k in range(self.max_degree + 1)]
        return f"{type(self).__name__}({self.name!r}, dims={dims}, field={self.field})"


# ----------------------------------------------------------------------
# elements

class Element:
    """Homogeneous element of degree ``degree``: sparse {index: QI}."""

    __slots__ = ("dga", "degree", "data")

    def __init__(self, dga: DgaInstance, degree: int, data: dict):
        self.dga = dga
        self.degree = degree
        self.data = data

    # linear structure
    def _compat(self, o: "Element"):
        if o.dga is not self.dga:
            raise InputError("elements of different DGAs")
        if o.degree != self.degree and self.data and o.data:
            raise InputError(f"adding elements of degrees {self.degree} and {o.degree}")

    def __add__(self, o):
        if isinstance(o, TdtElement):
            return TdtElement.lift(self) + o
        self._compat(o)
        out = dict(self.data)
        _add_into(out, o.data)
        return Element(self.dga, self.degree if self.data or not o.data else o.degree, out)

    def __sub__(self, o):
        if isinstance(o, TdtElement):
            return TdtElement.lift(self) - o
        self._compat(o)
        out = dict(self.data)
        _add_into(out, o.data, -ONE)
        return Element(self.dga, self.degree if self.data or not o.data else o.degree, out)

    def __neg__(self):
        return Element(self.dga, self.degree, {k: -v for k, v in self.data.items()})

    def scale(self, c) -> "Element":
        return Element(self.dga, self.degree, _scaled(self.data, QI.coerce(c)))

    def __mul__(self, o):
        if isinstance(o, Element):
            return self.wedge(o)
        if isinstance(o, TdtElement):
            return TdtElement.lift(self) * o
        return self.scale(o)

    def __rmul__(self, c):
        return self.scale(c)

    def wedge(self, o: "Element") -> "Element":
        if o.dga is not self.dga:
            raise InputError("elements of different DGAs")
        A = self.dga
        k1, k2 = self.degree, o.degree
        out = {}
        if k1 + k2 > A.max_degree:
            return Element(A, k1 + k2, out)
        for i, a in self.data.items():
            for j, b in o.data.items():
                prod = A.mul_idx(k1, i, k2, j)
                if prod:
                    _add_into(out, prod, a * b)
        return Element(A, k1 + k2, out)

    def _apply(self, op) -> "Element":
        out = {}
        for i, a in self.data.items():
            r = op(self.degree, i)
            if r:
                _add_into(out, r, a)
        return Element(self.dga, self.degree + 1, out)

    def d(self) -> "Element":
        return self._apply(self.dga.d_idx)

    def dc(self) -> "Element":
        return self._apply(self.dga.dc_idx)

    def partial(self, which: str = "del") -> "Element":
        return self._apply(lambda k, i: self.dga.partial_idx(k, i, which))

    def conj_coeffs(self) -> "Element":
        """Coefficient-wise conjugation (correct in a real basis)."""
        return Element(self.dga, self.degree, {k: v.conj() for k, v in self.data.items()})

    # views
    def vec(self) -> tuple:
        n = self.dga.dim(self.degree)
        v = [ZERO] * n
        for i, c in self.data.items():
            v[i] = c
        return tuple(v)

    def is_zero(self) -> bool:
        return not self.data

    def __bool__(self):
        return bool(self.data)

    def __eq__(self, o):
        if isinstance(o, TdtElement):
            return TdtElement.lift(self) == o
        if not isinstance(o, Element):
            return NotImplemented
        if o.dga is not self.dga:
            return False
        if not self.data and not o.data:
            return True
        return self.degree == o.degree and self.data == o.data

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.data.items()))))

    def is_real(self) -> bool:
        return all(v.is_real() for v in self.data.values())

    def __repr__(self):
        return f"Element(deg={self.degree}, {self})"

    def __str__(self):
        if not self.data:
            return "0"
        parts = []
        for i in sorted(self.data):
            c = self.data[i]
            lab = self.dga.label(self.degree, i)
            if c == ONE:
                parts.append(lab)
            elif c == -ONE:
                parts.append("-" + lab)
            else:
                cs = str(c)
                if not c.is_real() and c.re:
                    cs = f"({cs})"
                parts.append(f"{cs}*{lab}")
        return " + ".join(parts).replace("+ -", "- ")


# ----------------------------------------------------------------------
# explicit-basis DGAs

class ExplicitDga(DgaInstance):
    """Finite DGA given by labelled bases and structure constants.

    basis:     {degree: [labels]}; the degree-0 unit must be labelled ``unit``.
    products:  {(label1, label2): {label: coeff}} for the pairs that are
               nonzero; the swapped pair is derived with sign (-1)^{pq}.
               Products with the unit are implicit.
    d:         {label: {label: coeff}} (omitted labels are closed).
    weights:   optional {label: int}, or ``W`` as {degree: IncreasingFiltration}.
    bidegrees: optional {label: (p, q)}, or ``F`` as {degree: DecreasingFiltration}.
    dc:        optional {label: {label: coeff}}; ``dc='bidegree'`` derives
               d^c = i(dbar - del) from the bidegrees.
    conj:      optional antilinear involution {label: {label: coeff}}.
    """

    def __init__(self, basis: dict, products: dict | None = None, d: dict | None = None, *,
                 max_degree: int | None = None, field: str = "q", name: str = "",
                 unit: str = "1", weights: dict | None = None, bidegrees: dict | None = None,
                 W: dict | None = None, F: dict | None = None, dc=None, conj: dict | None = None,
                 diagram_grade: bool = False):
        basis = {int(k): list(v) for k, v in basis.items()}
        top = max(basis) if basis else 0
        md = top if max_degree is None else max_degree
        super().__init__(md, field, name, diagram_grade)
        for k in basis:
            if k < 0 or k > md:
                raise InputError(f"basis degree {k} outside 0..{md}")
        self._set_basis(basis)
        if unit not in self._index[0]:
            raise InputError(f"unit {unit!r} is not a degree-0 basis label")
        self.unit_index = self._index[0][unit]
        self.unit_label = unit
        self._deg_of = {}
        for k in range(md + 1):
            for lab in self._basis[k]:
                if lab in self._deg_of:
                    raise InputError(f"label {lab!r} appears in two degrees")
                self._deg_of[lab] = k
        self._prod = {}
        for (l1, l2), val in (products or {}).items():
            k1, k2 = self._deg(l1), self._deg(l2)
            i, j = self._index[k1][l1], self._index[k2][l2]
            data = self._vec_dict(k1 + k2, val, f"product {l1}*{l2}")
            if (k1, i, k2, j) in self._prod:
                raise InputError(f"product {l1}*{l2} given twice")
            self._prod[(k1, i, k2, j)] = data
            sw = (k2, j, k1, i)
            sign = -ONE if (k1 * k2) % 2 else ONE
            if sw != (k1, i, k2, j):
                if sw in self._prod and self._prod[sw] != _scaled(data, sign):
                    raise InputError(f"products {l1}*{l2} and {l2}*{l1} are not graded-commutative")
                self._prod[sw] = _scaled(data, sign)
        self._dd = {}
        for lab, val in (d or {}).items():
            k = self._deg(lab)
            self._dd[(k, self._index[k][lab])] = self._vec_dict(k + 1, val, f"d({lab})")
        if weights is not None:
            self._set_weights({k: [int(weights.get(l, 0)) for l in self._basis[k]] for k in self._basis})
            self._weight_labels = dict(weights)
        elif W is not None:
            self._W = {k: W.get(k, IncreasingFiltration.trivial(self.dim(k))) for k in range(md + 1)}
        if bidegrees is not None:
            missing = [l for l in self._deg_of if l not in bidegrees]
            if missing:
                raise InputError(f"missing bidegree for {missing[0]!r}")
            self._set_bidegrees({k: [bidegrees[l] for l in self._basis[k]] for k in self._basis})
            for lab, (p, q) in bidegrees.items():
                if lab in self._deg_of and p + q != self._deg_of[lab]:
                    raise InputError(f"bidegree {(p, q)} of {lab!r} does not sum to its degree")
        elif F is not None:
            self._F = {k: F.get(k, DecreasingFiltration.trivial(self.dim(k))) for k in range(md + 1)}
        self._dc_explicit = None
        if dc == "bidegree":
            if self._bideg is None:
                raise InputError("dc='bidegree' needs bidegrees")
            self._has_dc = True
        elif dc is not None:
            self._dc_explicit = {}
            for lab, val in dc.items():
                k = self._deg(lab)
                self._dc_explicit[(k, self._index[k][lab])] = self._vec_dict(k + 1, val, f"dc({lab})")
            self._has_dc = True
        self._conj = None
        if conj is not None:
            self._conj = {}
            for lab, val in conj.items():
                k = self._deg(lab)
                self._conj[(k, self._index[k][lab])] = self._vec_dict(k, val, f"conj({lab})")

    def _deg(self, lab) -> int:
        try:
            return self._deg_of[lab]
        except KeyError:
            raise InputError(f"unknown basis label {lab!r}") from None

    def _vec_dict(self, k: int, val: dict, what: str) -> dict:
        out = {}
        if not val:
            return out
        if k > self.max_degree:
            raise InputError(f"{what} lands in degree {k} beyond max_degree {self.max_degree}")
        for lab, c in val.items():
            if lab not in self._index[k]:
                kk = self._deg_of.get(lab)
                raise InputError(f"{what}: {lab!r} has degree {kk}, expected {k}")
            c = QI.coerce(c)
            if c:
                out[self._index[k][lab]] = c
        return out

    def _mul_idx(self, k1, i, k2, j) -> dict:
        if k1 == 0 and i == self.unit_index:
            return {j: ONE}
        if k2 == 0 and j == self.unit_index:
            return {i: ONE}
        return self._prod.get((k1, i, k2, j), {})

    def _d_idx(self, k, i) -> dict:
        return self._dd.get((k, i), {})

    def _dc_idx(self, k, i) -> dict:
        if self._dc_explicit is not None:
            return self._dc_explicit.get((k, i), {})
        return super()._dc_idx(k, i)

    @property
    def has_conj(self) -> bool:
        return self._conj is not None

    def conj(self, x: Element) -> Element:
        """Apply the antilinear involution."""
        if self._conj is None:
            raise PreconditionError("no conjugation declared")
        out = {}
        for i, c in x.data.items():
            _add_into(out, self._conj.get((x.degree, i), {}), c.conj())
        return Element(self, x.degree, out)

    def product_table(self) -> dict:
        """{(l1, l2): {l: c}} for stored pairs with l1 before l2 (canonical)."""
        out = {}
        for (k1, i, k2, j), val in self._prod.items():
            if (k1, i) <= (k2, j) and val:
                out[(self.label(k1, i), self.label(k2, j))] = {self.label(k1 + k2, t): c for t, c in val.items()}
        return out

    def d_table(self) -> dict:
        return {self.label(k, i): {self.label(k + 1, t): c for t, c in val.items()}
                for (k, i), val in self._dd.items() if val}


# ----------------------------------------------------------------------
# free graded-commutative DGAs

def _merge_monomials(m1: tuple, m2: tuple, degs: list):
    """(sign, sorted monomial) of m1*m2, or (0, None) when it vanishes."""
    seq = list(m1) + list(m2)
    sign = 1
    # insertion sort with Koszul signs
    for a in range(1, len(seq)):
        b = a
        while b > 0 and seq[b - 1] > seq[b]:
            if degs[seq[b - 1]] % 2 and degs[seq[b]] % 2:
                sign = -sign
            seq[b - 1], seq[b] = seq[b], seq[b - 1]
            b -= 1
    for a in range(1, len(seq)):
        if seq[a] == seq[a - 1] and degs[seq[a]] % 2:
            return 0, None
    return sign, tuple(seq)


class FreeDga(DgaInstance):
    """Free graded-commutative DGA on generators of positive degree.

    generators: [(name, degree)]; d: {name: polynomial} where a polynomial is
    a list of [coeff, name1, name2, ...] terms or an Element of this DGA
    (use ``set_d`` after construction for the latter).
    weights / bidegrees / dc are per generator and extend multiplicatively
    (dc as a derivation).
    """

    def __init__(self, generators, d: dict | None = None, *, max_degree: int = 3, field: str = "q",
                 name: str = "", weights: dict | None = None, bidegrees: dict | None = None,
                 dc: dict | None = None, diagram_grade: bool = False, hodge_types: dict | None = None):
        super().__init__(max_degree, field, name, diagram_grade)
        self.gens = []
        self.gen_deg = []
        seen = set()
        for g, k in generators:
            if g in seen:
                raise InputError(f"repeated generator {g!r}")
            if not isinstance(k, int) or k < 1:
                raise InputError(f"generator {g!r} must have positive integer degree")
            seen.add(g)
            self.gens.append(g)
            self.gen_deg.append(k)
        self.gen_index = {g: i for i, g in enumerate(self.gens)}
        basis = {0: [()]}
        ng = len(self.gens)
        for k in range(1, max_degree + 1):
            mons = []
            maxlen = k
            for r in range(1, maxlen + 1):
                for combo in combinations_with_replacement(range(ng), r):
                    if sum(self.gen_deg[c] for c in combo) != k:
                        continue
                    if any(combo[a] == combo[a - 1] and self.gen_deg[combo[a]] % 2 for a in range(1, r)):
                        continue
                    mons.append(combo)
            basis[k] = sorted(mons)
        self._set_basis(basis)
        self.unit_index = 0
        self._gen_d = {}
        self._gen_dc = {}
        for g, poly in (d or {}).items():
            self._gen_d[self._gidx(g)] = self._poly(poly, self.gen_deg[self._gidx(g)] + 1, f"d({g})")
        if dc == "bidegree":
            if bidegrees is None:
                raise InputError("dc='bidegree' needs bidegrees")
            self._has_dc = True
        elif dc is not None:
            self._has_dc = True
            for g, poly in dc.items():
                self._gen_dc[self._gidx(g)] = self._poly(poly, self.gen_deg[self._gidx(g)] + 1, f"dc({g})")
        if weights is not None:
            gw = [int(weights.get(g, 0)) for g in self.gens]
            self.gen_weights = gw
            self._set_weights({k: [sum(gw[c] for c in m) for m in self._basis[k]] for k in self._basis})
        else:
            self.gen_weights = None
        if bidegrees is not None:
            gb = []
            for g, k in zip(self.gens, self.gen_deg):
                if g not in bidegrees:
                    raise InputError(f"missing bidegree for generator {g!r}")
                p, q = bidegrees[g]
                if p + q != k:
                    raise InputError(f"bidegree {(p, q)} of {g!r} does not sum to its degree")
                gb.append((p, q))
            self.gen_bidegrees = gb
            self._set_bidegrees({k: [(sum(gb[c][0] for c in m), sum(gb[c][1] for c in m)) for m in self._basis[k]]
                                 for k in self._basis})
        else:
            self.gen_bidegrees = None
        # Hodge types (P, Q) of generators: F^r spanned by monomials with sum P >= r
        self.gen_types = None
        if hodge_types is not None:
            if bidegrees is not None:
                raise InputError("give either bidegrees or Hodge types, not both")
            gt = []
            for g in self.gens:
                if g not in hodge_types:
                    raise InputError(f"missing Hodge type for generator {g!r}")
                gt.append(tuple(hodge_types[g]))
            self.gen_types = gt
            self._F = {k: DecreasingFiltration.from_levels_of_basis([sum(gt[c][0] for c in m) for m in self._basis[k]])
                       for k in self._basis}

    def gen_type_of(self, k: int, i: int) -> tuple:
        m = self._basis[k][i]
        return (sum(self.gen_types[c][0] for c in m), sum(self.gen_types[c][1] for c in m))

    def _gidx(self, g) -> int:
        try:
            return self.gen_index[g]
        except KeyError:
            raise InputError(f"unknown generator {g!r}") from None

    def _poly(self, poly, k: int, what: str) -> dict:
        if isinstance(poly, Element):
            if poly.data and poly.degree != k:
                raise InputError(f"{what} has degree {poly.degree}, expected {k}")
            return dict(poly.data) if k <= self.max_degree else {}
        out = {}
        for term in poly or []:
            if not isinstance(term, (list, tuple)) or not term:
                raise InputError(f"{what}: malformed term {term!r}")
            c = QI.coerce(term[0])
            names = term[1:]
            idx = [self._gidx(n) for n in names]
            deg = sum(self.gen_deg[i] for i in idx)
            if deg != k:
                raise InputError(f"{what}: term {'*'.join(names) or '1'} has degree {deg}, expected {k}")
            if k > self.max_degree:
                continue
            sign, mon = _merge_monomials((), tuple(idx), self.gen_deg)
            if not sign or not c:
                continue
            j = self._index[k][mon]
            x = out.get(j, ZERO) + (c if sign > 0 else -c)
            if x:
                out[j] = x
            else:
                out.pop(j, None)
        return out

    def gen(self, name: str) -> Element:
        i = self._gidx(name)
        k = self.gen_deg[i]
        if k > self.max_degree:
            raise InputError(f"generator {name!r} beyond truncation")
        return Element(self, k, {self._index[k][(i,)]: ONE})

    def gen_elements(self, degree: int = 1) -> list:
        return [self.gen(g) for g, k in zip(self.gens, self.gen_deg) if k == degree]

    def label(self, k: int, i: int) -> str:
        m = self._basis[k][i]
        return "*".join(self.gens[c] for c in m) if m else "1"

    def monomial(self, k: int, i: int) -> tuple:
        return self._basis[k][i]

    def _mul_idx(self, k1, i, k2, j) -> dict:
        m1, m2 = self._basis[k1][i], self._basis[k2][j]
        sign, mon = _merge_monomials(m1, m2, self.gen_deg)
        if not sign:
            return {}
        return {self._index[k1 + k2][mon]: ONE if sign > 0 else -ONE}

    def _derivation(self, k, i, gen_table) -> dict:
        m = self._basis[k][i]
        out = {}
        pre = 0
        for pos, g in enumerate(m):
            dg = gen_table.get(g)
            if dg:
                sign = -ONE if pre % 2 else ONE
                left = Element(self, pre, {self._index[pre][m[:pos]]: ONE})
                rest = m[pos + 1:]
                kr = sum(self.gen_deg[c] for c in rest)
                right = Element(self, kr, {self._index[kr][rest]: ONE})
                term = left.wedge(Element(self, self.gen_deg[g] + 1, dict(dg))).wedge(right)
                _add_into(out, term.data, sign)
            pre += self.gen_deg[g]
        return out

    def _d_idx(self, k, i) -> dict:
        return self._derivation(k, i, self._gen_d)

    def _dc_idx(self, k, i) -> dict:
        if self._gen_dc or self._bideg is None:
            return self._derivation(k, i, self._gen_dc)
        return super()._dc_idx(k, i)

    def gen_d(self, name: str) -> Element:
        i = self._gidx(name)
        return Element(self, self.gen_deg[i] + 1, dict(self._gen_d.get(i, {})))


# ----------------------------------------------------------------------
# (t, dt) extension

class TdtElement:
    """sum_i a_i t^i + b_i t^i dt with a_i in A^n, b_i in A^{n-1}."""

    __slots__ = ("dga", "degree", "poly", "dtpoly")

    def __init__(self, dga: DgaInstance, degree: int, poly: dict | None = None, dtpoly: dict | None = None):
        self.dga = dga
        self.degree = degree
        self.poly = {i: x for i, x in (poly or {}).items() if x.data}
        self.dtpoly = {i: x for i, x in (dtpoly or {}).items() if x.data}

    @staticmethod
    def lift(x: Element) -> "TdtElement":
        return TdtElement(x.dga, x.degree, {0: x} if x.data else {}, {})

    @staticmethod
    def from_parts(dga, degree, poly, dtpoly) -> "TdtElement":
        return TdtElement(dga, degree, poly, dtpoly)

    # algebra
    def _coerce(self, o) -> "TdtElement":
        if isinstance(o, Element):
            return TdtElement.lift(o)
        return o

    def _comb(self, o, sign: QI) -> "TdtElement":
        o = self._coerce(o)
        if o.dga is not self.dga:
            raise InputError("elements of different DGAs")
        poly = dict(self.poly)
        for i, x in o.poly.items():
            poly[i] = poly[i] + x.scale(sign) if i in poly else x.scale(sign)
        dtp = dict(self.dtpoly)
        for i, x in o.dtpoly.items():
            dtp[i] = dtp[i] + x.scale(sign) if i in dtp else x.scale(sign)
        deg = self.degree if (self.poly or self.dtpoly) else o.degree
        return TdtElement(self.dga, deg, poly, dtp)

    def __add__(self, o):
        return self._comb(o, ONE)

    __radd__ = __add__

    def __sub__(self, o):
        return self._comb(o, -ONE)

    def __rsub__(self, o):
        return self._coerce(o)._comb(self, -ONE)

    def __neg__(self):
        return self.scale(-ONE)

    def scale(self, c) -> "TdtElement":
        c = QI.coerce(c)
        return TdtElement(self.dga, self.degree, {i: x.scale(c) for i, x in self.poly.items()},
                          {i: x.scale(c) for i, x in self.dtpoly.items()})

    def times_t(self, k: int = 1) -> "TdtElement":
        return TdtElement(self.dga, self.degree, {i + k: x for i, x in self.poly.items()},
                          {i + k: x for i, x in self.dtpoly.items()})

    def __mul__(self, o):
        if isinstance(o, (Element, TdtElement)):
            return self.wedge(self._coerce(o))
        return self.scale(o)

    def __rmul__(self, o):
        if isinstance(o, Element):
            return TdtElement.lift(o).wedge(self)
        return self.scale(o)

    def wedge(self, o: "TdtElement") -> "TdtElement":
        A = self.dga
        n2 = o.degree
        poly, dtp = {}, {}

        def acc(tab, k, x):
            if x.data:
                tab[k] = tab[k] + x if k in tab else x
        for i, a in self.poly.items():
            for j, a2 in o.poly.items():
                acc(poly, i + j, a.wedge(a2))
            for j, b2 in o.dtpoly.items():
                acc(dtp, i + j, a.wedge(b2))
        for i, b in self.dtpoly.items():
            for j, a2 in o.poly.items():
                x = b.wedge(a2)
                acc(dtp, i + j, -x if n2 % 2 else x)
        return TdtElement(A, self.degree + o.degree, poly, dtp)

    def d(self) -> "TdtElement":
        n = self.degree
        poly = {i: a.d() for i, a in self.poly.items()}
        dtp = {}
        for i, b in self.dtpoly.items():
            dtp[i] = b.d()
        for i, a in self.poly.items():
            if i >= 1:
                x = a.scale(QI(i) if n % 2 == 0 else QI(-i))
                dtp[i - 1] = dtp[i - 1] + x if i - 1 in dtp else x
        return TdtElement(self.dga, n + 1, poly, dtp)

    def dt_derivative(self) -> "TdtElement":
        """Partial derivative in t of the dt-free part."""
        return TdtElement(self.dga, self.degree, {i - 1: a.scale(QI(i)) for i, a in self.poly.items() if i >= 1}, {})

    def eval_at(self, s) -> Element:
        s = QI.coerce(s)
        out = self.dga.zero(self.degree)
        for i, a in self.poly.items():
            f = ONE
            for _ in range(i):
                f = f * s
            out = out + a.scale(f)
        return out

    def eval0(self) -> Element:
        return self.poly.get(0, self.dga.zero(self.degree))

    def eval1(self) -> Element:
        return reduce(lambda x, y: x + y, self.poly.values(), self.dga.zero(self.degree))

    def integrate01(self) -> Element:
        n = self.degree
        out = self.dga.zero(n - 1)
        for i, b in self.dtpoly.items():
            out = out + b.scale(ONE / QI(i + 1))
        return out if n % 2 == 1 else -out

    def integrate0t(self) -> "TdtElement":
        n = self.degree
        sgn = ONE if n % 2 == 1 else -ONE
        return TdtElement(self.dga, n - 1, {i + 1: b.scale(sgn / QI(i + 1)) for i, b in self.dtpoly.items()}, {})

    def dt_part(self) -> dict:
        return dict(self.dtpoly)

    def t_degree(self) -> int:
        ks = list(self.poly) + list(self.dtpoly)
        return max(ks) if ks else 0

    def is_zero(self) -> bool:
        return not self.poly and not self.dtpoly

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        if isinstance(o, Element):
            o = TdtElement.lift(o)
        if not isinstance(o, TdtElement):
            return NotImplemented
        return o.dga is self.dga and self.poly == o.poly and self.dtpoly == o.dtpoly

    def __hash__(self):
        return hash((tuple(sorted(self.poly)), tuple(sorted(self.dtpoly))))

    def map_coeffs(self, fn, dga=None) -> "TdtElement":
        """Apply a degree-preserving linear map to every coefficient."""
        poly = {i: fn(a) for i, a in self.poly.items()}
        dtp = {i: fn(b) for i, b in self.dtpoly.items()}
        return TdtElement(dga or self.dga, self.degree, poly, dtp)

    def __repr__(self):
        return f"TdtElement(deg={self.degree}, {self})"

    def __str__(self):
        parts = []
        for i in sorted(self.poly):
            t = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            parts.append(f"({self.poly[i]})" + (f"*{t}" if t else ""))
        for i in sorted(self.dtpoly):
            t = "dt" if i == 0 else ("t*dt" if i == 1 else f"t^{i}*dt")
            parts.append(f"({self.dtpoly[i]})*{t}")
        return " + ".join(parts) or "0"


def tdt_calculus(kind: str, x: TdtElement, *args):
    """Dispatcher over the (t, dt) operations."""
    if kind == "integrate01":
        return x.integrate01()
    if kind == "integrate0t":
        return x.integrate0t()
    if kind == "eval0":
        return x.eval0()
    if kind == "eval1":
        return x.eval1()
    if kind == "wedge":
        return x.wedge(args[0] if isinstance(args[0], TdtElement) else TdtElement.lift(args[0]))
    if kind == "d":
        return x.d()
    raise InputError(f"unknown (t,dt) operation {kind!r}")


# ----------------------------------------------------------------------
# morphisms

class DgaMorphism:
    """Map of DGAs (or into target ⊗ (t,dt) when images are TdtElements).

    For a free source ``images`` maps generator names to images; otherwise it
    maps basis labels (the unit may be omitted).
    """

    def __init__(self, source: DgaInstance, target: DgaInstance, images: dict, name: str = ""):
        self.source, self.target, self.name = source, target, name
        self.tdt = any(isinstance(v, TdtElement) for v in images.values())
        self._cache = {}
        self.free = isinstance(source, FreeDga)
        self.images = {}
        for key, v in images.items():
            if isinstance(v, (Element, TdtElement)):
                if v.dga is not target:
                    raise InputError(f"image of {key!r} does not live in the target DGA")
            if self.free:
                i = source._gidx(key)
                k = source.gen_deg[i]
                if k > source.max_degree:
                    continue
                self.images[(k, source.index(k, (i,)))] = v
            else:
                k, i = source.find(key) if isinstance(key, str) else key
                self.images[(k, i)] = v
        for (k, i), v in self.images.items():
            if (v.data if isinstance(v, Element) else not v.is_zero()) and v.degree != k:
                raise InputError(f"image of {source.label(k, i)} has degree {v.degree}, expected {k}")

    def _zero(self, k):
        z = self.target.zero(k)
        return TdtElement.lift(z) if self.tdt else z

    def apply_basis(self, k: int, i: int):
        key = (k, i)
        r = self._cache.get(key)
        if r is not None:
            return r
        if k == 0 and i == self.source.unit_index and key not in self.images:
            r = self.target.unit()
            if self.tdt:
                r = TdtElement.lift(r)
        elif key in self.images:
            r = self.images[key]
            if self.tdt and isinstance(r, Element):
                r = TdtElement.lift(r)
        elif self.free:
            m = self.source.monomial(k, i)
            if len(m) <= 1:
                r = self._zero(k)
            else:
                g = m[0]
                kg = self.source.gen_deg[g]
                rest = m[1:]
                r = self.apply_basis(kg, self.source.index(kg, (g,))) * \
                    self.apply_basis(k - kg, self.source.index(k - kg, rest))
                if r.degree != k:
                    r = self._zero(k)
        else:
            r = self._zero(k)
        self._cache[key] = r
        return r

    def __call__(self, x):
        if isinstance(x, TdtElement):
            if self.tdt:
                raise InputError("cannot apply a homotopy to a (t,dt) element")
            return x.map_coeffs(self.__call__, self.target)
        if x.dga is not self.source:
            raise InputError("element does not live in the source DGA")
        out = self._zero(x.degree)
        for i, c in x.data.items():
            out = out + self.apply_basis(x.degree, i).scale(c)
        return out

    def matrix(self, k: int) -> list:
        if self.tdt:
            raise InputError("matrix of a (t,dt)-valued map")
        n, m = self.source.dim(k), self.target.dim(k)
        M = zeros(m, n)
        for i in range(n):
            for j, c in self.apply_basis(k, i).data.items():
                M[j][i] = c
        return M

    def compose(self, other: "DgaMorphism", name: str = "") -> "DgaMorphism":
        """self ∘ other."""
        if other.target is not self.source:
            raise InputError("composition of non-composable morphisms")
        if self.tdt and other.tdt:
            raise InputError("composition of two homotopies")
        src = other.source
        if isinstance(src, FreeDga):
            imgs = {g: self(other.apply_basis(k, src.index(k, (j,)))) if not other.tdt else
                    other.apply_basis(k, src.index(k, (j,))).map_coeffs(self, self.target)
                    for j, (g, k) in enumerate(zip(src.gens, src.gen_deg)) if k <= src.max_degree}
        else:
            imgs = {}
            for k in range(src.max_degree + 1):
                for i in range(src.dim(k)):
                    y = other.apply_basis(k, i)
                    imgs[(k, i)] = y.map_coeffs(self, self.target) if other.tdt else self(y)
        return DgaMorphism(src, self.target, imgs, name)

    def eval_at(self, which: int) -> "DgaMorphism":
        if not self.tdt:
            return self
        src = self.source
        imgs = {}
        for (k, i), v in self.images.items():
            v = v if isinstance(v, TdtElement) else TdtElement.lift(v)
            key = src.gens[src.monomial(k, i)[0]] if self.free else (k, i)
            imgs[key] = v.eval0() if which == 0 else v.eval1()
        return DgaMorphism(src, self.target, imgs, self.name)

    def __repr__(self):
        return f"DgaMorphism({self.source.name!r} -> {self.target.name!r}{', tdt' if self.tdt else ''})"


def identity_morphism(A: DgaInstance) -> DgaMorphism:
    if isinstance(A, FreeDga):
        return DgaMorphism(A, A, {g: A.gen(g) for g, k in zip(A.gens, A.gen_deg) if k <= A.max_degree}, "id")
    return DgaMorphism(A, A, {(k, i): A.basis_element(k, i) for k in range(A.max_degree + 1)
                              for i in range(A.dim(k))}, "id")


def constant_homotopy(f: DgaMorphism) -> DgaMorphism:
    src = f.source
    imgs = {}
    for (k, i), v in f.images.items():
        key = src.gens[src.monomial(k, i)[0]] if f.free else (k, i)
        imgs[key] = TdtElement.lift(v)
    if not imgs:
        return DgaMorphism(src, f.target, {}, f.name)
    return DgaMorphism(src, f.target, imgs, f.name)


# ----------------------------------------------------------------------
# validation

def _pairs_up_to(A: DgaInstance, top: int):
    for k1 in range(top + 1):
        for k2 in range(top + 1 - k1):
            for i in range(A.dim(k1)):
                for j in range(A.dim(k2)):
                    yield k1, i, k2, j


def validate_dga(A: DgaInstance, connected: bool = True) -> Report:
    """Structural checks: commutativity, associativity, unit, d^2, Leibniz,
    filtrations, second differential, and H^0 = K."""
    rep = Report(f"DGA {A.name}".strip())
    top = A.max_degree
    bad = None
    u = A.unit()
    for k in range(top + 1):
        for i in range(A.dim(k)):
            e = A.basis_element(k, i)
            if u.wedge(e) != e or e.wedge(u) != e:
                bad = bad or A.label(k, i)
    rep.add("unit", bad is None, bad)
    bad = None
    for k1, i, k2, j in _pairs_up_to(A, top):
        a = A.mul_idx(k1, i, k2, j)
        b = A.mul_idx(k2, j, k1, i)
        if _scaled(b, -ONE if (k1 * k2) % 2 else ONE) != a:
            bad = [A.label(k1, i), A.label(k2, j)]
            break
    rep.add("graded commutativity", bad is None, bad)
    bad = None
    for k1 in range(top + 1):
        for k2 in range(top + 1 - k1):
            for k3 in range(top + 1 - k1 - k2):
                for i in range(A.dim(k1)):
                    x = A.basis_element(k1, i)
                    for j in range(A.dim(k2)):
                        y = A.basis_element(k2, j)
                        xy = x.wedge(y)
                        for l in range(A.dim(k3)):
                            z = A.basis_element(k3, l)
                            if xy.wedge(z) != x.wedge(y.wedge(z)):
                                bad = [A.label(k1, i), A.label(k2, j), A.label(k3, l)]
                                break
                        if bad:
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                break
        if bad:
            break
    rep.add("associativity", bad is None, bad)
    rep.add("unit is closed", not A.unit().d(), None)
    bad = None
    for k in range(top - 1):
        dd = mat_mul(A.d_matrix(k + 1), A.d_matrix(k), A.dim(k + 1), A.dim(k))
        if any(any(r) for r in dd):
            bad = k
            break
    rep.add("d∘d = 0", bad is None, None if bad is None else {"degree": bad})
    bad = None
    for k1, i, k2, j in _pairs_up_to(A, top - 1):
        x, y = A.basis_element(k1, i), A.basis_element(k2, j)
        lhs = x.wedge(y).d()
        rhs = x.d().wedge(y) + (x.wedge(y.d()).scale(-1 if k1 % 2 else 1))
        if lhs != rhs:
            bad = [A.label(k1, i), A.label(k2, j)]
            break
    rep.add("Leibniz", bad is None, bad)
    if isinstance(A, FreeDga):
        # Sullivan condition: d of a generator only involves earlier generators
        bad = None
        for gi, g in enumerate(A.gens):
            k = A.gen_deg[gi] + 1
            if k > top:
                continue
            for j in A._gen_d.get(gi, {}):
                if any(c >= gi for c in A.monomial(k, j)):
                    bad = {"generator": g, "term": A.label(k, j)}
                    break
            if bad:
                break
        rep.add("d of generators uses earlier generators", bad is None, bad)
    if A.has_W:
        bad = None
        for k in range(top):
            Wk, Wk1 = A.W(k), A.W(k + 1)
            for w in Wk.levels:
                for v in Wk(w).rows:
                    if not Wk1(w).contains(A.element(k, v).d().vec()):
                        bad = {"degree": k, "weight": w}
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("d preserves W", bad is None, bad)
        bad = _product_filtration_failure(A, A.W, increasing=True)
        rep.add("product preserves W", bad is None, bad)
        if A.diagram_grade:
            neg = [k for k in range(top + 1) if A.dim(k) and A.W(k)(-1).dim]
            rep.add("W_{-1} = 0", not neg, neg or None)
    if A.has_F:
        bad = None
        for k in range(top):
            Fk, Fk1 = A.F(k), A.F(k + 1)
            for p in Fk.levels:
                for v in Fk(p).rows:
                    if not Fk1(p).contains(A.element(k, v).d().vec()):
                        bad = {"degree": k, "p": p}
                        break
                if bad:
                    break
            if bad:
                break
        rep.add("d preserves F", bad is None, bad)
        bad = _product_filtration_failure(A, A.F, increasing=False)
        rep.add("product preserves F", bad is None, bad)
    if A.has_dc:
        bad = None
        for k in range(top - 1):
            d1, d0 = A.d_matrix(k + 1), A.d_matrix(k)
            c1, c0 = A.dc_matrix(k + 1), A.dc_matrix(k)
            n0 = A.dim(k)
            s = mat_mul(d1, c0, A.dim(k + 1), n0)
            t = mat_mul(c1, d0, A.dim(k + 1), n0)
            if any(s[r][c] + t[r][c] for r in range(len(s)) for c in range(n0)):
                bad = {"relation": "d dc + dc d", "degree": k}
                break
            cc = mat_mul(c1, c0, A.dim(k + 1), n0)
            if any(x for r in cc for x in r):
                bad = {"relation": "dc dc", "degree": k}
                break
        rep.add("second differential", bad is None, bad)
    if connected:
        h0 = cohomology(A, 0).dim
        rep.add("H^0 = K", h0 == 1, None if h0 == 1 else {"dim_H0": h0})
    return rep


def _product_filtration_failure(A, filt, increasing: bool):
    top = A.max_degree
    for k1 in range(top + 1):
        for k2 in range(top + 1 - k1):
            F1, F2, F3 = filt(k1), filt(k2), filt(k1 + k2)
            for a in F1.levels:
                for b in F2.levels:
                    for u in F1(a).rows:
                        x = A.element(k1, u)
                        for v in F2(b).rows:
                            y = A.element(k2, v)
                            if not F3(a + b).contains(x.wedge(y).vec()):
                                return {"degrees": [k1, k2], "levels": [a, b]}
    return None


# ----------------------------------------------------------------------
# cohomology

class CohomologyData:
    """H^n = Z^n / B^n with echelon representatives and a projection."""

    def __init__(self, A: DgaInstance, n: int):
        if n < 0 or n > A.max_degree:
            raise InputError(f"cohomology degree {n} outside 0..{A.max_degree}")
        self.dga, self.degree = A, n
        N = A.dim(n)
        self.Z = kernel(A.d_matrix(n), N) if n < A.max_degree else Subspace.full(N)
        self.B = column_space(A.d_matrix(n - 1), N, A.dim(n - 1)) if n > 0 else Subspace.zero(N)
        self.truncated = n == A.max_degree
        self._q = QuotientMap(self.B, self.Z)
        self.reps = self._q.reps

    @property
    def dim(self) -> int:
        return len(self.reps)

    def representatives(self) -> list:
        return [self.dga.element(self.degree, r) for r in self.reps]

    def classify(self, x) -> tuple:
        """Coordinates of the class of a closed element."""
        v = x.vec() if isinstance(x, Element) else tuple(x)
        if not self.Z.contains(v):
            raise InputError("element is not closed")
        return self._q(v)

    def is_exact(self, x) -> bool:
        v = x.vec() if isinstance(x, Element) else tuple(x)
        return self.B.contains(v)


def cohomology(A: DgaInstance, n: int) -> CohomologyData:
    return CohomologyData(A, n)


def induced_map_rank(f: DgaMorphism, n: int):
    """(matrix of H^n(f) in representative coordinates, Hs, Ht)."""
    Hs, Ht = cohomology(f.source, n), cohomology(f.target, n)
    cols = [Ht.classify(f(f.source.element(n, r))) for r in Hs.reps]
    M = [[cols[j][i] for j in range(Hs.dim)] for i in range(Ht.dim)]
    return M, Hs, Ht


def check_morphism_1qis(f: DgaMorphism) -> Report:
    rep = Report("1-quasi-isomorphism")
    ranks = {}
    for n in (0, 1, 2):
        if n > min(f.source.max_degree, f.target.max_degree):
            rep.skip(f"H^{n}", "beyond truncation")
            continue
        M, Hs, Ht = induced_map_rank(f, n)
        r = rank(M, Hs.dim) if Hs.dim and Ht.dim else 0
        ranks[n] = {"source": Hs.dim, "target": Ht.dim, "rank": r}
        if n < 2:
            rep.add(f"H^{n} isomorphism", r == Hs.dim == Ht.dim, None if r == Hs.dim == Ht.dim else ranks[n])
        else:
            rep.add("H^2 injective", r == Hs.dim, None if r == Hs.dim else ranks[n])
    rep.data["ranks"] = {str(k): v for k, v in ranks.items()}
    return rep


def check_dga_morphism(f: DgaMorphism, filtrations: bool = True, hodge: bool = True) -> Report:
    """Chain map, multiplicative, unital, and filtration compatible."""
    S, T = f.source, f.target
    top = min(S.max_degree, T.max_degree)
    rep = Report(f"DGA morphism {f.name}".strip())
    u = f.apply_basis(0, S.unit_index)
    tu = TdtElement.lift(T.unit()) if f.tdt else T.unit()
    rep.add("unit", u == tu, None if u == tu else str(u))
    bad = None
    for k in range(top):
        for i in range(S.dim(k)):
            lhs = f(S.basis_element(k, i).d())
            rhs = f.apply_basis(k, i).d()
            if lhs != rhs:
                bad = S.label(k, i)
                break
        if bad:
            break
    rep.add("chain map", bad is None, bad)
    bad = None
    for k1, i, k2, j in _pairs_up_to(S, top):
        if k1 == 0 and i == S.unit_index or k2 == 0 and j == S.unit_index:
            continue
        if k1 > k2 or (k1 == k2 and i > j):
            continue
        lhs = f(S.basis_element(k1, i).wedge(S.basis_element(k2, j)))
        rhs = f.apply_basis(k1, i) * f.apply_basis(k2, j)
        if lhs != rhs:
            bad = [S.label(k1, i), S.label(k2, j)]
            break
    rep.add("multiplicative", bad is None, bad)
    if filtrations and S.has_W and T.has_W:
        bad = _filtration_compat(f, S.W, T.W, top)
        rep.add("W compatible", bad is None, bad)
    if filtrations and hodge and S.has_F and T.has_F:
        bad = _filtration_compat(f, S.F, T.F, top)
        rep.add("F compatible", bad is None, bad)
    return rep


def _coeff_vectors(x) -> list:
    if isinstance(x, TdtElement):
        return [a.vec() for a in x.poly.values()], [b.vec() for b in x.dtpoly.values()]
    return [x.vec()], []


def _filtration_compat(f: DgaMorphism, fs, ft, top: int):
    S = f.source
    for k in range(top + 1):
        Fs = fs(k)
        for lvl in Fs.levels:
            for v in Fs(lvl).rows:
                y = f(S.element(k, v))
                polys, dts = _coeff_vectors(y)
                if any(not ft(k)(lvl).contains(p) for p in polys):
                    return {"degree": k, "level": lvl}
                if k >= 1 and any(not ft(k - 1)(lvl).contains(b) for b in dts):
                    return {"degree": k, "level": lvl, "part": "dt"}
    return None


def check_homotopy(H: DgaMorphism, phi0: DgaMorphism, phi1: DgaMorphism) -> Report:
    """H: source -> target ⊗ (t,dt) with H|_{t=0} = phi0, H|_{t=1} = phi1.

    Only W is required of H; the dt-part of a homotopy rarely respects F."""
    rep = Report("homotopy")
    if H.source is not phi0.source or H.source is not phi1.source or \
            H.target is not phi0.target or H.target is not phi1.target:
        raise InputError("homotopy endpoints have mismatched sources or targets")
    sub = check_dga_morphism(H, hodge=False)
    rep.extend(sub, "morphism into target⊗(t,dt): ")
    S = H.source
    top = min(S.max_degree, H.target.max_degree)
    for which, phi in ((0, phi0), (1, phi1)):
        bad = None
        for k in range(top + 1):
            for i in range(S.dim(k)):
                h = H.apply_basis(k, i)
                h = h if isinstance(h, TdtElement) else TdtElement.lift(h)
                v = h.eval0() if which == 0 else h.eval1()
                if v != phi.apply_basis(k, i):
                    bad = S.label(k, i)
                    break
            if bad:
                break
        rep.add(f"endpoint t={which}", bad is None, bad)
    return rep


# ----------------------------------------------------------------------
# Dec shift, basis changes, real forms

def dec_shift(A: DgaInstance) -> DgaInstance:
    """Same algebra with W'_i(A^r) = W_{i-r}(A^r); compatibility asserted."""
    if not A.has_W:
        raise PreconditionError("Dec shift needs a weight filtration")
    B = _clone(A)
    B._W = {k: A.W(k).shift(k) for k in range(A.max_degree + 1)}
    B.name = (A.name + "'") if A.name else ""
    B.diagram_grade = False
    # product: W'_a A^r x W'_b A^s -> W'_{a+b} A^{r+s} is automatic; d raises by one
    top = A.max_degree
    for k in range(top):
        for w, S in B._W[k].levels.items():
            for v in S.rows:
                if not B._W[k + 1](w).contains(B.element(k, v).d().vec()):
                    raise InvariantViolation(f"d does not preserve W' in degree {k}")
    bad = _product_filtration_failure(B, B.W, increasing=True)
    if bad:
        raise InvariantViolation(f"product does not preserve W' at {bad}")
    return B


def _clone(A: DgaInstance) -> DgaInstance:
    import copy
    B = copy.copy(A)
    B._mul_cache = A._mul_cache
    B._d_cache = A._d_cache
    B._dmat = dict(A._dmat)
    return B


def transform_dga(A: DgaInstance, bases: dict, labels: dict | None = None, field: str | None = None,
                  name: str = "", with_dc: bool = True, with_F: bool = True) -> tuple:
    """Rewrite A in new bases.  bases: degree -> list of coordinate vectors
    (columns of an invertible matrix); bases[0][0] must be the unit.
    Returns (ExplicitDga, DgaMorphism new -> A given by the bases)."""
    top = A.max_degree
    solvers, new_labels = {}, {}
    for k in range(top + 1):
        vecs = [tuple(v) for v in bases.get(k, [])]
        n = A.dim(k)
        if len(vecs) != n or (n and rank(vecs, n) != n):
            raise InputError(f"degree-{k} basis change is not invertible")
        cols = [[vecs[j][i] for j in range(n)] for i in range(n)]
        solvers[k] = Solver(cols, n)
        labs = (labels or {}).get(k) or [f"u{k}_{j}" for j in range(n)]
        new_labels[k] = list(labs)
    if bases[0][0] != A.unit().vec():
        raise InputError("first degree-0 basis vector must be the unit")

    def coords(k, x: Element) -> dict:
        c = solvers[k].solve(x.vec())
        if c is None:
            raise InvariantViolation("basis change solve failed")
        return {new_labels[k][j]: cj for j, cj in enumerate(c) if cj}

    elem = {k: [A.element(k, v) for v in bases[k]] for k in range(top + 1)}
    products, d, dc = {}, {}, {}
    for k1 in range(1, top + 1):
        for k2 in range(k1, top + 1 - k1):
            for i, x in enumerate(elem[k1]):
                for j, y in enumerate(elem[k2]):
                    if k1 == k2 and j < i:
                        continue
                    z = x.wedge(y)
                    if z:
                        products[(new_labels[k1][i], new_labels[k2][j])] = coords(k1 + k2, z)
    for j in range(1, len(elem[0])):
        for k2 in range(0, top + 1):
            for i, y in enumerate(elem[k2]):
                if k2 == 0 and i < j:
                    continue
                z = elem[0][j].wedge(y)
                if z:
                    products[(new_labels[0][j], new_labels[k2][i])] = coords(k2, z)
    for k in range(top):
        for i, x in enumerate(elem[k]):
            z = x.d()
            if z:
                d[new_labels[k][i]] = coords(k + 1, z)
            if with_dc and A.has_dc:
                z = x.dc()
                if z:
                    dc[new_labels[k][i]] = coords(k + 1, z)
    W = F = None
    if A.has_W:
        W = {}
        for k in range(top + 1):
            lv = {}
            for w, S in A.W(k).levels.items():
                lv[w] = [solvers[k].solve(r) for r in S.rows]
            W[k] = IncreasingFiltration(A.dim(k), lv)
    if A.has_F and with_F:
        F = {}
        for k in range(top + 1):
            lv = {p: [solvers[k].solve(r) for r in S.rows] for p, S in A.F(k).levels.items()}
            F[k] = DecreasingFiltration(A.dim(k), lv)
    basis = {k: new_labels[k] for k in range(top + 1)}
    fld = field or A.field
    new = ExplicitDga(basis, products, d, max_degree=top, field=fld, name=name or A.name,
                      unit=new_labels[0][0], W=W, F=F,
                      dc=dc if (with_dc and A.has_dc) else None, diagram_grade=A.diagram_grade)
    mor = DgaMorphism(new, A, {(k, i): elem[k][i] for k in range(top + 1) for i in range(len(elem[k]))},
                      "basis change")
    return new, mor


def real_form(B: ExplicitDga, name: str = "") -> tuple:
    """Real form of a complex DGA with an antilinear involution ``conj``.

    Picks real elements (e + conj e)/2 and (e - conj e)/(2i) greedily in
    basis order.  Returns (A over Q, iota: A⊗C -> B)."""
    if not B.has_conj:
        raise PreconditionError("real form needs a declared conjugation")
    top = B.max_degree
    bases, labels = {}, {}
    half = ONE / QI(2)
    for k in range(top + 1):
        n = B.dim(k)
        chosen, labs, realrows = [], [], []
        for i in range(n):
            e = B.basis_element(k, i)
            ce = B.conj(e)
            re = (e + ce).scale(half)
            im = (e - ce).scale(-I * half)
            lab = B.label(k, i)
            cands = [(re, lab if ce == e else f"Re({lab})")]
            if ce != e:
                cands.append((im, f"Im({lab})"))
            for x, lx in cands:
                if not x:
                    continue
                if B.conj(x) != x:
                    raise InvariantViolation("conjugation is not an involution")
                v = x.vec()
                row = [QI(c.re) for c in v] + [QI(c.im) for c in v]
                if rank(realrows + [row], 2 * n) > len(realrows):
                    realrows.append(row)
                    chosen.append(v)
                    labs.append(lx)
            if len(chosen) == n:
                break
        if len(chosen) != n:
            raise InvariantViolation(f"real form has the wrong dimension in degree {k}")
        if k == 0:
            u = B.unit().vec()
            if u in chosen:
                j = chosen.index(u)
                chosen.insert(0, chosen.pop(j))
                labs.insert(0, labs.pop(j))
            else:
                raise InvariantViolation("unit is not real")
        bases[k], labels[k] = chosen, labs
    A, iota = transform_dga(B, bases, labels, field="q", name=name or (B.name + "_R"),
                             with_dc=True, with_F=False)
    for k in range(top + 1):
        for i in range(A.dim(k)):
            x = A.basis_element(k, i)
            for y in (x.d(),) + ((x.dc(),) if A.has_dc else ()):
                if not y.is_real():
                    raise InvariantViolation("structure of the real form is not real")
    A.field = "q"
    return A, iota
