"""Exact linear algebra over Q(i): echelon forms, solves, subspaces, filtrations.

Vectors are tuples of QI; matrices are sequences of rows.  A linear map
V -> U is an (dim U) x (dim V) matrix acting on column vectors.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import InputError, InvariantViolation
from .field import ONE, ZERO, QI, sub_mul

Vector = tuple
Matrix = Sequence[Sequence[QI]]


# ----------------------------------------------------------------------
# basic matrix helpers

def zeros(m: int, n: int) -> list:
    return [[ZERO] * n for _ in range(m)]


def identity(n: int) -> list:
    M = zeros(n, n)
    for i in range(n):
        M[i][i] = ONE
    return M


def to_qi_matrix(rows) -> list:
    return [[QI.coerce(x) for x in r] for r in rows]


def to_vector(xs) -> Vector:
    return tuple(QI.coerce(x) for x in xs)


def transpose(A: Matrix, ncols: int | None = None) -> list:
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_vec(A: Matrix, x: Sequence[QI]) -> Vector:
    nz = [(j, xj) for j, xj in enumerate(x) if xj]
    out = []
    for row in A:
        s = ZERO
        for j, xj in nz:
            a = row[j]
            if a:
                s = s + a * xj
        out.append(s)
    return tuple(out)


def mat_mul(A: Matrix, B: Matrix, inner: int | None = None, ncols: int | None = None) -> list:
    if not A:
        return []
    if not B:
        nc = ncols if ncols is not None else 0
        return [[ZERO] * nc for _ in A]
    nc = len(B[0])
    out = []
    for row in A:
        acc = [ZERO] * nc
        for k, a in enumerate(row):
            if not a:
                continue
            Bk = B[k]
            for j in range(nc):
                b = Bk[j]
                if b:
                    acc[j] = acc[j] + a * b
        out.append(acc)
    return out


def mat_add(A: Matrix, B: Matrix) -> list:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_sub(A: Matrix, B: Matrix) -> list:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def mat_scale(c: QI, A: Matrix) -> list:
    return [[c * x for x in r] for r in A]


def mat_conj(A: Matrix) -> list:
    return [[x.conj() for x in r] for r in A]


def mat_is_zero(A: Matrix) -> bool:
    return not any(x for r in A for x in r)


def mat_eq(A: Matrix, B: Matrix) -> bool:
    return len(A) == len(B) and all(tuple(r) == tuple(s) for r, s in zip(A, B))


def freeze(A: Matrix) -> tuple:
    return tuple(tuple(r) for r in A)


def vec_add(x, y) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x, y) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x) -> Vector:
    return tuple(c * a for a in x)


def vec_is_zero(x) -> bool:
    return not any(x)


def dot(x, y) -> QI:
    s = ZERO
    for a, b in zip(x, y):
        if a and b:
            s = s + a * b
    return s


def kron_vec(x, y) -> Vector:
    return tuple(a * b for a in x for b in y)


# ----------------------------------------------------------------------
# row reduction

def _rref_inplace(M: list, ncols: int, pivot_cols: int | None = None) -> list:
    """Gauss-Jordan on M (list of lists) in place; pivots searched in the first
    ``pivot_cols`` columns.  Returns pivot column list; rows are reordered so
    that the first len(pivots) rows are the pivot rows."""
    if pivot_cols is None:
        pivot_cols = ncols
    nrows = len(M)
    pivots = []
    r = 0
    for c in range(pivot_cols):
        if r == nrows:
            break
        p = -1
        for i in range(r, nrows):
            if M[i][c]:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            M[r], M[p] = M[p], M[r]
        row = M[r]
        pv = row[c]
        if pv != ONE:
            inv = pv.inv()
            row = [x * inv if x else x for x in row]
            M[r] = row
        nz = [j for j in range(c, ncols) if row[j]]
        for i in range(nrows):
            if i == r:
                continue
            Ri = M[i]
            f = Ri[c]
            if not f:
                continue
            for j in nz:
                Ri[j] = sub_mul(Ri[j], f, row[j])
        pivots.append(c)
        r += 1
    return pivots


def rref(rows: Iterable[Sequence[QI]], ncols: int) -> tuple:
    """Reduced row echelon form. Returns (nonzero rows as tuples, pivots)."""
    M = [list(r) for r in rows]
    for r in M:
        if len(r) != ncols:
            raise InputError(f"row of length {len(r)} in a {ncols}-column matrix")
    piv = _rref_inplace(M, ncols)
    return tuple(tuple(M[i]) for i in range(len(piv))), tuple(piv)


def rank(A: Matrix, ncols: int | None = None) -> int:
    if not A:
        return 0
    n = len(A[0]) if ncols is None else ncols
    return len(rref(A, n)[1])


def nullspace(A: Matrix, ncols: int) -> list:
    """Canonical basis of ker A (RREF rows of the kernel)."""
    if not A:
        return [tuple(ONE if j == i else ZERO for j in range(ncols)) for i in range(ncols)]
    R, piv = rref(A, ncols)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for k, p in enumerate(piv):
            c = R[k][f]
            if c:
                v[p] = -c
        basis.append(v)
    if not basis:
        return []
    return list(rref(basis, ncols)[0])


def solve_linear(A: Matrix, b: Sequence[QI], ncols: int | None = None):
    """Solve A x = b; free variables zero under the canonical pivot order.

    Returns a tuple or None when inconsistent."""
    m = len(A)
    if len(b) != m:
        raise InputError(f"dimension mismatch: {m} equations, right side of length {len(b)}")
    n = ncols if ncols is not None else (len(A[0]) if m else 0)
    if m == 0:
        return tuple([ZERO] * n)
    for r in A:
        if len(r) != n:
            raise InputError("ragged matrix")
    M = [list(r) + [QI.coerce(bi)] for r, bi in zip(A, b)]
    piv = _rref_inplace(M, n + 1, n)
    for i in range(len(piv), m):
        if M[i][n]:
            return None
    x = [ZERO] * n
    for k, p in enumerate(piv):
        x[p] = M[k][n]
    return tuple(x)


class Solver:
    """Precomputed canonical solver for A x = b with many right-hand sides."""

    def __init__(self, A: Matrix, ncols: int):
        m = len(A)
        self.m, self.n = m, ncols
        aug = []
        for i, r in enumerate(A):
            if len(r) != ncols:
                raise InputError("ragged matrix")
            row = list(r) + [ZERO] * m
            row[ncols + i] = ONE
            aug.append(row)
        piv = _rref_inplace(aug, ncols + m, ncols)
        self.pivots = tuple(piv)
        self.rank = len(piv)
        self._T = [row[ncols:] for row in aug]

    def _apply(self, k, nzb):
        row = self._T[k]
        s = ZERO
        for j, bj in nzb:
            t = row[j]
            if t:
                s = s + t * bj
        return s

    def consistent(self, b) -> bool:
        nzb = [(j, x) for j, x in enumerate(b) if x]
        return all(not self._apply(k, nzb) for k in range(self.rank, self.m))

    def solve(self, b):
        if len(b) != self.m:
            raise InputError(f"right side of length {len(b)}, expected {self.m}")
        nzb = [(j, x) for j, x in enumerate(b) if x]
        x = [ZERO] * self.n
        if not nzb:
            return tuple(x)
        for k in range(self.rank, self.m):
            if self._apply(k, nzb):
                return None
        for k, p in enumerate(self.pivots):
            x[p] = self._apply(k, nzb)
        return tuple(x)


def inverse(A: Matrix) -> list:
    n = len(A)
    M = [list(r) + [ONE if j == i else ZERO for j in range(n)] for i, r in enumerate(A)]
    piv = _rref_inplace(M, 2 * n, n)
    if len(piv) != n:
        raise InputError("matrix is singular")
    return [row[n:] for row in M]


def leading_pivots(H: Matrix):
    """Pivots of Gaussian elimination without row exchange.

    The k-th leading principal minor equals the product of the first k
    pivots; returns None at the first zero pivot (minor vanishes)."""
    n = len(H)
    M = [list(r) for r in H]
    out = []
    for c in range(n):
        pv = M[c][c]
        if not pv:
            out.append(ZERO)
            return out
        out.append(pv)
        inv = pv.inv()
        for i in range(c + 1, n):
            f = M[i][c]
            if not f:
                continue
            f = f * inv
            for j in range(c, n):
                if M[c][j]:
                    M[i][j] = M[i][j] - f * M[c][j]
    return out


def leading_minors(H: Matrix) -> list:
    piv = leading_pivots(H)
    out = []
    acc = ONE
    for p in piv:
        acc = acc * p
        out.append(acc)
    return out


# ----------------------------------------------------------------------
# subspaces

@lru_cache(maxsize=64)
def _unit_rows(n: int) -> tuple:
    # shared, immutable standard basis rows
    return tuple(tuple(ONE if j == i else ZERO for j in range(n)) for i in range(n))


class Subspace:
    """Subspace of K^n stored by its reduced row echelon basis."""

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, n: int, rows=(), _canonical: bool = False, _pivots=None):
        self.n = n
        if _canonical:
            self.rows = rows
            self.pivots = _pivots
        else:
            rows = [tuple(QI.coerce(x) for x in r) for r in rows]
            R, piv = rref(rows, n) if rows else ((), ())
            self.rows = R
            self.pivots = piv

    # constructors
    @staticmethod
    def span(vectors, n: int) -> "Subspace":
        return Subspace(n, list(vectors))

    @staticmethod
    def zero(n: int) -> "Subspace":
        return Subspace(n, (), True, ())

    @staticmethod
    def full(n: int) -> "Subspace":
        return Subspace(n, _unit_rows(n), True, tuple(range(n)))

    @staticmethod
    def coordinate(n: int, idxs) -> "Subspace":
        idxs = sorted(set(idxs))
        rows = _unit_rows(n)
        return Subspace(n, tuple(rows[i] for i in idxs), True, tuple(idxs))

    # basics
    @property
    def dim(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def basis(self) -> list:
        return list(self.rows)

    def __eq__(self, o):
        return isinstance(o, Subspace) and self.n == o.n and self.rows == o.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __repr__(self):
        return f"Subspace(n={self.n}, dim={self.dim})"

    def _check(self, o: "Subspace"):
        if self.n != o.n:
            raise InputError(f"ambient mismatch: {self.n} vs {o.n}")

    def is_full(self) -> bool:
        return self.dim == self.n

    def is_zero(self) -> bool:
        return not self.rows

    # membership
    def reduce(self, v) -> Vector:
        """Residual of v modulo the subspace (zero exactly on members)."""
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                for j in range(p, self.n):
                    rj = row[j]
                    if rj:
                        v[j] = sub_mul(v[j], c, rj)
        return tuple(v)

    def contains(self, v) -> bool:
        if len(v) != self.n:
            raise InputError(f"vector of length {len(v)} in ambient {self.n}")
        return not any(self.reduce(v))

    def coords(self, v, check: bool = True) -> Vector:
        """Coordinates of a member in the echelon basis."""
        if check and not self.contains(v):
            raise InvariantViolation("vector not in subspace")
        return tuple(v[p] for p in self.pivots)

    def from_coords(self, c) -> Vector:
        out = [ZERO] * self.n
        for ck, row in zip(c, self.rows):
            if ck:
                for j in range(self.n):
                    if row[j]:
                        out[j] = out[j] + ck * row[j]
        return tuple(out)

    def le(self, o: "Subspace") -> bool:
        self._check(o)
        return all(o.contains(r) for r in self.rows)

    __le__ = le

    # lattice operations
    def sum(self, o: "Subspace") -> "Subspace":
        self._check(o)
        if not o.rows:
            return self
        if not self.rows:
            return o
        return Subspace(self.n, list(self.rows) + list(o.rows))

    __add__ = sum

    def intersect(self, o: "Subspace") -> "Subspace":
        self._check(o)
        if not self.rows or not o.rows:
            return Subspace.zero(self.n)
        if self.dim > o.dim:
            return o.intersect(self)
        residues = [o.reduce(r) for r in self.rows]
        k = len(self.rows)
        # a in K^k with sum a_i residue_i = 0
        A = [[residues[i][j] for i in range(k)] for j in range(self.n)]
        ker = nullspace(A, k)
        vecs = [self.from_coords(a) for a in ker]
        return Subspace(self.n, vecs)

    __and__ = intersect

    def conjugate(self) -> "Subspace":
        return Subspace(self.n, [tuple(x.conj() for x in r) for r in self.rows])

    def is_real(self) -> bool:
        return all(x.is_real() for r in self.rows for x in r)

    def image(self, M: Matrix, m: int) -> "Subspace":
        """Image under M: K^n -> K^m."""
        if self.rows and (len(M) != m or any(len(r) != self.n for r in M)):
            raise InputError("map shape mismatch")
        return Subspace(m, [mat_vec(M, r) for r in self.rows])

    def quotient_basis(self, big: "Subspace | None" = None) -> list:
        """Coset representatives of big/self (self must lie in big).

        Representatives are the reduced echelon basis of big reduced modulo
        self, so they vanish on the pivot columns of self."""
        if big is None:
            big = Subspace.full(self.n)
        self._check(big)
        if not self.le(big):
            raise InputError("quotient_basis: subspace not contained in ambient subspace")
        red = [self.reduce(r) for r in big.rows]
        red = [r for r in red if any(r)]
        if not red:
            return []
        return list(rref(red, self.n)[0])


def preimage(M: Matrix, n: int, target: Subspace) -> Subspace:
    """{x in K^n : M x in target}."""
    m = target.n
    if len(M) != m:
        raise InputError("map shape mismatch")
    cols = []
    for j in range(n):
        col = tuple(M[i][j] for i in range(m))
        cols.append(target.reduce(col))
    A = [[cols[j][i] for j in range(n)] for i in range(m)]
    return Subspace(n, nullspace(A, n)) if m else Subspace.full(n)


def kernel(M: Matrix, n: int) -> Subspace:
    if not M:
        return Subspace.full(n)
    return Subspace(n, nullspace(M, n))


def column_space(M: Matrix, m: int, n: int) -> Subspace:
    if n == 0 or m == 0:
        return Subspace.zero(m)
    return Subspace(m, [tuple(M[i][j] for i in range(m)) for j in range(n)])


def annihilator(S: Subspace) -> Subspace:
    """{l in (K^n)* : l(s) = 0 for s in S}, dual coordinates."""
    if not S.rows:
        return Subspace.full(S.n)
    return Subspace(S.n, nullspace(S.rows, S.n))


def subspace_ops(kind: str, *args):
    """Dispatch helper mirroring the operation table."""
    if kind == "sum":
        return args[0].sum(args[1])
    if kind == "intersect":
        return args[0].intersect(args[1])
    if kind == "image":
        S, M, m = args
        return S.image(M, m)
    if kind == "preimage":
        M, n, T = args
        return preimage(M, n, T)
    if kind == "quotient_basis":
        return args[0].quotient_basis(*args[1:])
    if kind == "conjugate":
        return args[0].conjugate()
    raise InputError(f"unknown subspace operation {kind!r}")


class QuotientMap:
    """Coordinates on big/small with respect to small.quotient_basis(big)."""

    def __init__(self, small: Subspace, big: Subspace | None = None):
        if big is None:
            big = Subspace.full(small.n)
        self.small, self.big = small, big
        self.reps = small.quotient_basis(big)
        self._rep_space = Subspace(small.n, self.reps, True,
                                   tuple(next(j for j, x in enumerate(r) if x) for r in self.reps))

    @property
    def dim(self) -> int:
        return len(self.reps)

    def __call__(self, v, check: bool = True) -> Vector:
        if check and not self.big.contains(v):
            raise InvariantViolation("vector outside the ambient subspace of the quotient")
        red = self.small.reduce(v)
        return self._rep_space.coords(red, check=check)

    def lift(self, c) -> Vector:
        return self._rep_space.from_coords(c)

    def matrix(self) -> list:
        """Matrix of the projection K^n -> big/small (only meaningful on big)."""
        n = self.small.n
        cols = [self(tuple(ONE if j == i else ZERO for j in range(n)), check=False) for i in range(n)]
        return [[cols[i][k] for i in range(n)] for k in range(self.dim)]


# ----------------------------------------------------------------------
# filtrations

class IncreasingFiltration:
    """W_i, stored by jumps: W(i) is the level at the largest key <= i, else 0."""

    __slots__ = ("n", "levels")

    def __init__(self, n: int, levels: dict | None = None, check: bool = True):
        self.n = n
        levels = dict(levels or {})
        for i, S in levels.items():
            if not isinstance(S, Subspace):
                S = Subspace(n, S)
                levels[i] = S
            if S.n != n:
                raise InputError(f"level {i} has ambient {S.n}, expected {n}")
        keys = sorted(levels)
        canon = {}
        prev = Subspace.zero(n)
        for i in keys:
            S = levels[i]
            if check and not prev.le(S):
                raise InputError(f"weight filtration not increasing at index {i}")
            if S != prev:
                canon[i] = S
            prev = S
        if check and n and prev.dim != n:
            raise InputError("weight filtration is not exhaustive")
        self.levels = canon

    @staticmethod
    def trivial(n: int, at: int = 0) -> "IncreasingFiltration":
        return IncreasingFiltration(n, {at: Subspace.full(n)} if n else {})

    @staticmethod
    def from_weights(weights: Sequence[int]) -> "IncreasingFiltration":
        """Coordinate filtration: basis vector j has weight weights[j]."""
        n = len(weights)
        levels = {}
        for w in sorted(set(weights)):
            levels[w] = Subspace.coordinate(n, [j for j, x in enumerate(weights) if x <= w])
        return IncreasingFiltration(n, levels, check=False)

    def __call__(self, i: int) -> Subspace:
        best = None
        for k in self.levels:
            if k <= i:
                best = k
            else:
                break
        return self.levels[best] if best is not None else Subspace.zero(self.n)

    @property
    def keys(self) -> list:
        return list(self.levels)

    @property
    def lo(self):
        return min(self.levels) if self.levels else 0

    @property
    def hi(self):
        return max(self.levels) if self.levels else 0

    def __eq__(self, o):
        return isinstance(o, IncreasingFiltration) and self.n == o.n and self.levels == o.levels

    def __hash__(self):
        return hash((self.n, tuple(self.levels.items())))

    def __repr__(self):
        return f"IncreasingFiltration(n={self.n}, dims={ {k: v.dim for k, v in self.levels.items()} })"

    def graded(self) -> dict:
        """i -> QuotientMap for Gr_i = W_i / W_{i-1}."""
        out = {}
        prev = Subspace.zero(self.n)
        for i, S in self.levels.items():
            out[i] = QuotientMap(prev, S)
            prev = S
        return out

    def adapted_basis(self) -> list:
        """[(vector, weight)] compatible with the filtration."""
        out = []
        for i, q in self.graded().items():
            out.extend((r, i) for r in q.reps)
        return out

    def shift(self, k: int) -> "IncreasingFiltration":
        return IncreasingFiltration(self.n, {i + k: S for i, S in self.levels.items()}, check=False)

    def map_levels(self, fn) -> "IncreasingFiltration":
        return IncreasingFiltration(self.n, {i: fn(S) for i, S in self.levels.items()})


class DecreasingFiltration:
    """F^p stored by jumps: F(p) is the level at the smallest key >= p, else 0."""

    __slots__ = ("n", "levels")

    def __init__(self, n: int, levels: dict | None = None, check: bool = True):
        self.n = n
        levels = dict(levels or {})
        for p, S in levels.items():
            if not isinstance(S, Subspace):
                S = Subspace(n, S)
                levels[p] = S
            if S.n != n:
                raise InputError(f"level {p} has ambient {S.n}, expected {n}")
        keys = sorted(levels, reverse=True)
        canon = {}
        prev = Subspace.zero(n)
        for p in keys:
            S = levels[p]
            if check and not prev.le(S):
                raise InputError(f"Hodge filtration not decreasing at index {p}")
            if S != prev:
                canon[p] = S
            prev = S
        if check and n and prev.dim != n:
            raise InputError("Hodge filtration: lowest level is not the whole space")
        self.levels = dict(sorted(canon.items()))

    @staticmethod
    def trivial(n: int, at: int = 0) -> "DecreasingFiltration":
        return DecreasingFiltration(n, {at: Subspace.full(n)} if n else {})

    @staticmethod
    def from_levels_of_basis(tags: Sequence[int]) -> "DecreasingFiltration":
        n = len(tags)
        levels = {}
        for p in sorted(set(tags)):
            levels[p] = Subspace.coordinate(n, [j for j, x in enumerate(tags) if x >= p])
        return DecreasingFiltration(n, levels, check=False)

    def __call__(self, p: int) -> Subspace:
        for k in self.levels:
            if k >= p:
                return self.levels[k]
        return Subspace.zero(self.n)

    @property
    def keys(self) -> list:
        return list(self.levels)

    @property
    def lo(self):
        return min(self.levels) if self.levels else 0

    @property
    def hi(self):
        return max(self.levels) if self.levels else 0

    def __eq__(self, o):
        return isinstance(o, DecreasingFiltration) and self.n == o.n and self.levels == o.levels

    def __hash__(self):
        return hash((self.n, tuple(self.levels.items())))

    def __repr__(self):
        return f"DecreasingFiltration(n={self.n}, dims={ {k: v.dim for k, v in self.levels.items()} })"

    def graded(self) -> dict:
        """p -> QuotientMap for Gr^p = F^p / F^{p+1}."""
        out = {}
        ks = sorted(self.levels, reverse=True)
        prev = Subspace.zero(self.n)
        for p in ks:
            S = self.levels[p]
            out[p] = QuotientMap(prev, S)
            prev = S
        return dict(sorted(out.items()))

    def adapted_basis(self) -> list:
        out = []
        for p, q in sorted(self.graded().items(), reverse=True):
            out.extend((r, p) for r in q.reps)
        return out

    def shift(self, k: int) -> "DecreasingFiltration":
        return DecreasingFiltration(self.n, {p + k: S for p, S in self.levels.items()}, check=False)

    def map_levels(self, fn) -> "DecreasingFiltration":
        return DecreasingFiltration(self.n, {p: fn(S) for p, S in self.levels.items()})

    def conjugate(self) -> "DecreasingFiltration":
        return self.map_levels(lambda S: S.conjugate())


Filtration = IncreasingFiltration | DecreasingFiltration


def _range_keys(filt) -> list:
    ks = list(filt.levels)
    if not ks:
        return [0]
    return list(range(min(ks) - 2, max(ks) + 3))


def _adapted_matrix(filt):
    """Columns = adapted basis; also its inverse and the tags."""
    ab = filt.adapted_basis()
    n = filt.n
    P = [[ab[j][0][i] for j in range(n)] for i in range(n)]
    tags = [t for _, t in ab]
    Pinv = inverse(P) if n else []
    return P, Pinv, tags


def induced_filtration(filt, target: str, *args):
    """Induced filtrations on subspace / quotient / dual / tensor / hom.

    subspace(S): levels filt_i ∩ S in coordinates of S's echelon basis.
    quotient(S): image of filt_i in coordinates of S.quotient_basis().
    dual(): W_k(V*) = ann W_{-k-1};  F^p(V*) = ann F^{1-p}.
    tensor(other): Σ_{i+j=k} filt_i ⊗ other_j, basis e_a ⊗ f_b at a*dim2+b.
    hom(other): maps V -> V2 (filt on V, other on V2) shifting levels by k,
      as (dim V2) x (dim V) matrices flattened row-major.
    """
    inc = isinstance(filt, IncreasingFiltration)
    cls = IncreasingFiltration if inc else DecreasingFiltration
    n = filt.n
    if target == "subspace":
        (S,) = args
        lv = {i: Subspace(S.dim, [S.coords(v) for v in L.intersect(S).rows]) for i, L in
              ((i, filt(i)) for i in _range_keys(filt))}
        return cls(S.dim, lv)
    if target == "quotient":
        (S,) = args
        q = QuotientMap(S)
        lv = {i: Subspace(q.dim, [q(v, check=False) for v in filt(i).rows]) for i in _range_keys(filt)}
        return cls(q.dim, lv)
    if target == "dual":
        if inc:
            lv = {k: annihilator(filt(-k - 1)) for k in [-i for i in _range_keys(filt)]}
        else:
            lv = {p: annihilator(filt(1 - p)) for p in [-i for i in _range_keys(filt)]}
        return cls(n, lv)
    if target in ("tensor", "hom"):
        (other,) = args
        if type(other) is not type(filt):
            raise InputError("filtrations of different kinds")
        m = other.n
        P1, P1inv, t1 = _adapted_matrix(filt)
        P2, _, t2 = _adapted_matrix(other)
        vecs = []
        if target == "tensor":
            for a in range(n):
                ua = [P1[i][a] for i in range(n)]
                for b in range(m):
                    vb = [P2[i][b] for i in range(m)]
                    vecs.append((kron_vec(ua, vb), t1[a] + t2[b]))
        else:
            for b in range(m):
                vb = [P2[i][b] for i in range(m)]
                for a in range(n):
                    ua_star = P1inv[a]
                    vecs.append((tuple(x * y for x in vb for y in ua_star), t2[b] - t1[a]))
        N = n * m
        tags = sorted({t for _, t in vecs})
        lv = {}
        for t in tags:
            if inc:
                lv[t] = Subspace(N, [v for v, s in vecs if s <= t])
            else:
                lv[t] = Subspace(N, [v for v, s in vecs if s >= t])
        return cls(N, lv, check=False) if N else cls(0, {})
    raise InputError(f"unknown induced-filtration target {target!r}")


def adapted_decomposition(filt):
    """(P, Pinv, tags): columns of P form an adapted basis with the given tags."""
    return _adapted_matrix(filt)


def matrix_flat(M: Matrix) -> Vector:
    return tuple(x for r in M for x in r)


def matrix_unflat(v, rows: int, cols: int) -> list:
    return [list(v[i * cols:(i + 1) * cols]) for i in range(rows)]


def real_solution_space(rows: Matrix, n: int) -> Subspace:
    """{c in Q^n : rows · c = 0} for complex equations, as a real subspace."""
    eq = []
    for r in rows:
        eq.append([QI(x.re) for x in r])
        if any(x.im for x in r):
            eq.append([QI(x.im) for x in r])
    return kernel(eq, n)
