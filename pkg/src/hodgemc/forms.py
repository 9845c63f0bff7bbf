"""Matrices with entries in a DGA (or its (t,dt) extension).

A FormMatrix of degree k is an element of A^k ⊗ Hom(K^cols, K^rows).
Products use the wedge product entrywise, so (XY)_{ij} = sum_l X_il ∧ Y_lj.
"""
from __future__ import annotations

from .dga import DgaInstance, Element, TdtElement
from .errors import InputError
from .field import ONE, ZERO, QI
from .linalg import Subspace


class FormMatrix:
    __slots__ = ("dga", "degree", "rows", "cols", "e", "tdt")

    def __init__(self, dga: DgaInstance, degree: int, entries, tdt: bool = False):
        self.dga, self.degree, self.tdt = dga, degree, tdt
        self.e = [list(r) for r in entries]
        self.rows = len(self.e)
        self.cols = len(self.e[0]) if self.e else 0

    # -- constructors -----------------------------------------------------
    @staticmethod
    def _zero_entry(dga, degree, tdt):
        z = dga.zero(degree) if degree <= dga.max_degree else Element(dga, degree, {})
        return TdtElement.lift(z) if tdt else z

    @classmethod
    def zeros(cls, dga, degree, rows, cols, tdt=False) -> "FormMatrix":
        z = cls._zero_entry(dga, degree, tdt)
        return cls(dga, degree, [[z] * cols for _ in range(rows)], tdt)

    @classmethod
    def const(cls, dga, M, tdt=False) -> "FormMatrix":
        """Scalar matrix as a degree-0 form matrix."""
        u = dga.unit()
        ents = [[u.scale(QI.coerce(x)) if x else dga.zero(0) for x in row] for row in M]
        out = cls(dga, 0, ents, False)
        return out.lift() if tdt else out

    @classmethod
    def identity(cls, dga, n, tdt=False) -> "FormMatrix":
        return cls.const(dga, [[ONE if i == j else ZERO for j in range(n)] for i in range(n)], tdt)

    @classmethod
    def from_terms(cls, dga, degree, terms: dict, rows: int, cols: int) -> "FormMatrix":
        """sum over basis index i of e_i ⊗ M_i; terms: index or label -> matrix."""
        data = [[{} for _ in range(cols)] for _ in range(rows)]
        for key, M in terms.items():
            i = dga.index(degree, key) if not isinstance(key, int) else key
            if len(M) != rows or any(len(r) != cols for r in M):
                raise InputError(f"coefficient matrix of {key!r} has the wrong shape")
            for r in range(rows):
                for c in range(cols):
                    x = QI.coerce(M[r][c])
                    if x:
                        data[r][c][i] = data[r][c].get(i, ZERO) + x
        ents = [[Element(dga, degree, {k: v for k, v in data[r][c].items() if v}) for c in range(cols)]
                for r in range(rows)]
        return cls(dga, degree, ents)

    @classmethod
    def tensor(cls, x, M) -> "FormMatrix":
        """x ⊗ M for a form x (Element or TdtElement) and a scalar matrix M."""
        tdt = isinstance(x, TdtElement)
        ents = [[x.scale(QI.coerce(v)) if v else cls._zero_entry(x.dga, x.degree, tdt) for v in row] for row in M]
        return cls(x.dga, x.degree, ents, tdt)

    # -- conversions ------------------------------------------------------
    def lift(self) -> "FormMatrix":
        if self.tdt:
            return self
        return FormMatrix(self.dga, self.degree, [[TdtElement.lift(x) for x in r] for r in self.e], True)

    def terms(self) -> dict:
        """basis index -> scalar coefficient matrix (Element entries only)."""
        if self.tdt:
            raise InputError("terms() needs plain entries")
        out = {}
        for r in range(self.rows):
            for c in range(self.cols):
                for i, v in self.e[r][c].data.items():
                    M = out.setdefault(i, [[ZERO] * self.cols for _ in range(self.rows)])
                    M[r][c] = v
        return out

    def scalar(self) -> list:
        """Scalar matrix of a degree-0 form matrix that is a multiple of the unit."""
        u = self.dga.unit_index
        out = []
        for row in self.e:
            cur = []
            for x in row:
                x0 = x.eval0() if self.tdt else x
                if any(k != u for k in x0.data):
                    raise InputError("form matrix is not constant")
                cur.append(x0.data.get(u, ZERO))
            out.append(cur)
        return out

    # -- algebra ----------------------------------------------------------
    def _check(self, o: "FormMatrix"):
        if o.dga is not self.dga:
            raise InputError("form matrices over different algebras")

    def __add__(self, o: "FormMatrix") -> "FormMatrix":
        self._check(o)
        a, b = (self, o) if self.tdt == o.tdt else (self.lift(), o.lift())
        return FormMatrix(self.dga, self.degree, [[x + y for x, y in zip(r, s)] for r, s in zip(a.e, b.e)], a.tdt)

    def __sub__(self, o: "FormMatrix") -> "FormMatrix":
        self._check(o)
        a, b = (self, o) if self.tdt == o.tdt else (self.lift(), o.lift())
        return FormMatrix(self.dga, self.degree, [[x - y for x, y in zip(r, s)] for r, s in zip(a.e, b.e)], a.tdt)

    def __neg__(self) -> "FormMatrix":
        return FormMatrix(self.dga, self.degree, [[-x for x in r] for r in self.e], self.tdt)

    def scale(self, c) -> "FormMatrix":
        c = QI.coerce(c)
        return FormMatrix(self.dga, self.degree, [[x.scale(c) for x in r] for r in self.e], self.tdt)

    def __matmul__(self, o: "FormMatrix") -> "FormMatrix":
        self._check(o)
        if self.cols != o.rows:
            raise InputError(f"shape mismatch {self.rows}x{self.cols} @ {o.rows}x{o.cols}")
        a, b = (self, o) if self.tdt == o.tdt else (self.lift(), o.lift())
        k = self.degree + o.degree
        out = []
        for i in range(a.rows):
            row = []
            for j in range(b.cols):
                acc = None
                for l in range(a.cols):
                    x, y = a.e[i][l], b.e[l][j]
                    if not x or not y:
                        continue
                    p = x.wedge(y)
                    acc = p if acc is None else acc + p
                row.append(acc if acc is not None else FormMatrix._zero_entry(self.dga, k, a.tdt))
            out.append(row)
        return FormMatrix(self.dga, k, out, a.tdt)

    def d(self) -> "FormMatrix":
        return FormMatrix(self.dga, self.degree + 1, [[x.d() for x in r] for r in self.e], self.tdt)

    def map(self, fn, dga=None, degree=None, tdt=None) -> "FormMatrix":
        ents = [[fn(x) for x in r] for r in self.e]
        return FormMatrix(dga or self.dga, self.degree if degree is None else degree, ents,
                          self.tdt if tdt is None else tdt)

    def eval_at(self, s) -> "FormMatrix":
        if not self.tdt:
            return self
        return FormMatrix(self.dga, self.degree, [[x.eval_at(s) for x in r] for r in self.e])

    def is_zero(self) -> bool:
        return all(not x for r in self.e for x in r)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, o):
        if not isinstance(o, FormMatrix):
            return NotImplemented
        return (self - o).is_zero()

    def __hash__(self):
        return hash((self.rows, self.cols, self.degree))

    def conjugate_by(self, P, Pinv) -> "FormMatrix":
        """Pinv · X · P for scalar matrices P, Pinv."""
        L = FormMatrix.const(self.dga, Pinv, self.tdt)
        R = FormMatrix.const(self.dga, P, self.tdt)
        return L @ self @ R

    def entry_support(self) -> list:
        return [(r, c) for r in range(self.rows) for c in range(self.cols) if self.e[r][c]]

    def in_filtered_hom(self, level) -> tuple:
        """(ok, witness): every coefficient matrix lies in the given Subspace of
        flattened Hom (row-major), where coefficients run over t-powers too."""
        for M in self._coefficient_matrices():
            flat = tuple(x for row in M for x in row)
            if not level.contains(flat):
                return False, M
        return True, None

    def _coefficient_matrices(self) -> list:
        if not self.tdt:
            return list(self.terms().values())
        mats = []
        parts = {}
        for r in range(self.rows):
            for c in range(self.cols):
                x = self.e[r][c]
                for key, tab in (("p", x.poly), ("dt", x.dtpoly)):
                    for tpow, el in tab.items():
                        for i, v in el.data.items():
                            M = parts.setdefault((key, tpow, i), [[ZERO] * self.cols for _ in range(self.rows)])
                            M[r][c] = v
        mats.extend(parts.values())
        return mats

    def __repr__(self):
        return f"FormMatrix({self.rows}x{self.cols}, degree {self.degree}{', tdt' if self.tdt else ''})"

    def to_strings(self) -> list:
        return [[str(x) for x in r] for r in self.e]


def hom_level_subspace(Wsrc, Wtgt, level: int) -> Subspace:
    """W_level(Hom(V1, V2)) as a subspace of flattened (n2 x n1) matrices."""
    from .linalg import induced_filtration
    return induced_filtration(Wsrc, "hom", Wtgt)(level)


def in_tensor_level(X: FormMatrix, form_filt, hom_filt, level: int = 0) -> tuple:
    """(ok, witness): X ∈ level-th step of the tensor filtration on A^k ⊗ Hom.

    ``form_filt`` filters A^k (the degree of X), ``hom_filt`` filters flattened
    Hom.  Both increasing or both decreasing.  X is expanded in an adapted basis
    e_j of A^k (tag t_j) and the coefficient matrix of e_j must lie in the
    hom step level − t_j."""
    from .linalg import DecreasingFiltration, adapted_decomposition, mat_vec
    if X.tdt:
        raise InputError("tensor filtration test needs plain entries")
    P, Pinv, tags = adapted_decomposition(form_filt)
    n = form_filt.n
    coeffs = [[mat_vec(Pinv, x.vec()) if n else () for x in row] for row in X.e]
    for j, tag in enumerate(tags):
        M = [[coeffs[r][c][j] for c in range(X.cols)] for r in range(X.rows)]
        flat = tuple(v for row in M for v in row)
        if not any(flat):
            continue
        if not hom_filt(level - tag).contains(flat):
            kind = "F" if isinstance(form_filt, DecreasingFiltration) else "W"
            return False, {"filtration": kind, "basis_tag": tag, "coefficient": [[str(v) for v in r] for r in M]}
    return True, None
