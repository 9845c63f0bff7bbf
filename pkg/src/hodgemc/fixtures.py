"""Named test instances.

Every builder returns fresh objects; nothing here is cached, so callers
may mutate what they get back.
"""
from __future__ import annotations

from .dga import DgaMorphism, ExplicitDga, FreeDga, real_form
from .field import I, ONE, ZERO, QI
from .linalg import DecreasingFiltration, IncreasingFiltration, Subspace
from .mhd import MixedHodgeDiagram
from .mhs import MixedHodgeStructure

HALF = ONE / QI(2)


# ----------------------------------------------------------------------
# algebras

def torus() -> FreeDga:
    """Λ(a, b), d = 0."""
    return FreeDga([("a", 1), ("b", 1)], name="torus")


def heisenberg() -> FreeDga:
    """Λ(x, y, z) with dz = x∧y."""
    return FreeDga([("x", 1), ("y", 1), ("z", 1)], {"z": [[1, "x", "y"]]}, name="heisenberg")


def even_sphere() -> FreeDga:
    """Λ(u) with u in degree 2: H^1 = 0."""
    return FreeDga([("u", 2)], name="even-sphere")


# ----------------------------------------------------------------------
# mixed Hodge structures

def nonsplit_mhs() -> MixedHodgeStructure:
    """V = Q², W_0 = <e>, W_2 = V, F^1 = <f + i e>."""
    W = IncreasingFiltration(2, {0: [(ONE, ZERO)], 2: Subspace.full(2)})
    F = DecreasingFiltration(2, {0: Subspace.full(2), 1: [(I, ONE)]})
    return MixedHodgeStructure(W, F)


# ----------------------------------------------------------------------
# diagrams

def _kahler_torus_A() -> ExplicitDga:
    return ExplicitDga({0: ["1"], 1: ["a", "b"], 2: ["ab"], 3: []}, {("a", "b"): {"ab": 1}},
                       {}, max_degree=3, name="torus_R", weights={"1": 0, "a": 0, "b": 0, "ab": 0},
                       diagram_grade=True)


def _kahler_torus_B(F_override=None, extra_exact: bool = False) -> ExplicitDga:
    basis = {0: ["1"], 1: ["al", "be"], 2: ["albe"], 3: []}
    prods = {("al", "be"): {"albe": 1}}
    d = {}
    bideg = {"1": (0, 0), "al": (1, 0), "be": (0, 1), "albe": (1, 1)}
    conj = {"1": {"1": 1}, "al": {"be": 1}, "be": {"al": 1}, "albe": {"albe": -1}}
    if extra_exact:
        # acyclic pair g -> h with h of type (1,0): d is not F-strict
        basis[0].append("g")
        basis[1].append("h")
        d["g"] = {"h": 1}
        bideg.update({"g": (0, 0), "h": (1, 0)})
        conj = None
    weights = {lab: 0 for k in basis for lab in basis[k]}
    if F_override is not None:
        return ExplicitDga(basis, prods, d, max_degree=3, field="qi", name="torus_C_shifted",
                           weights=weights, F=F_override, diagram_grade=True)
    return ExplicitDga(basis, prods, d, max_degree=3, field="qi",
                       name="torus_C" + ("_nonstrict" if extra_exact else ""),
                       weights=weights, bidegrees=bideg, dc="bidegree", conj=conj, diagram_grade=True)


def _torus_iota(A, B, zero: bool = False) -> DgaMorphism:
    if zero:
        return DgaMorphism(A, B, {"a": B.zero(1), "b": B.zero(1), "ab": B.zero(2)}, "iota")
    al, be = B["al"], B["be"]
    ia = al + be
    ib = (al - be).scale(-I)
    return DgaMorphism(A, B, {"a": ia, "b": ib, "ab": ia * ib}, "iota")


def kahler_torus() -> MixedHodgeDiagram:
    """A = Λ(a,b) over Q with trivial W; B = Λ(α, ᾱ) with types (1,0), (0,1);
    ι(a) = α + ᾱ, ι(b) = −i(α − ᾱ)."""
    A, B = _kahler_torus_A(), _kahler_torus_B()
    return MixedHodgeDiagram(A, B, _torus_iota(A, B), "kahler-torus")


def kahler_torus_f_shift() -> MixedHodgeDiagram:
    """ᾱ moved down to F^{-1}: the E1^{0,1} cell is no longer a Hodge structure.
    Products still respect F, so B stays a filtered DGA."""
    F = {0: DecreasingFiltration(1, {0: Subspace.full(1)}),
         1: DecreasingFiltration(2, {-1: Subspace.full(2), 1: [(ONE, ZERO)]}),
         2: DecreasingFiltration(1, {1: Subspace.full(1)}),
         3: DecreasingFiltration(0, {})}
    A, B = _kahler_torus_A(), _kahler_torus_B(F_override=F)
    return MixedHodgeDiagram(A, B, _torus_iota(A, B), "kahler-torus/f-shift")


def kahler_torus_iota_zero() -> MixedHodgeDiagram:
    """ι killed in positive degrees: ι* is not bijective on E1."""
    A, B = _kahler_torus_A(), _kahler_torus_B()
    return MixedHodgeDiagram(A, B, _torus_iota(A, B, zero=True), "kahler-torus/iota-zero")


def kahler_torus_nonstrict() -> MixedHodgeDiagram:
    """B gains an acyclic pair g ↦ h with h of type (1,0): d0 is not F-strict."""
    A, B = _kahler_torus_A(), _kahler_torus_B(extra_exact=True)
    return MixedHodgeDiagram(A, B, _torus_iota(A, B), "kahler-torus/nonstrict")


def mixed_diagram() -> MixedHodgeDiagram:
    """Two weight levels: A = Λ(a, b, c) with c of weight 1, d = 0;
    B = Λ(α, ᾱ, γ) with γ of type (1,0) and weight 1; ι(c) = γ."""
    A = FreeDga([("a", 1), ("b", 1), ("c", 1)], name="mixed_R",
                weights={"a": 0, "b": 0, "c": 1}, diagram_grade=True)
    B = FreeDga([("al", 1), ("be", 1), ("ga", 1)], field="qi", name="mixed_C",
                weights={"al": 0, "be": 0, "ga": 1},
                bidegrees={"al": (1, 0), "be": (0, 1), "ga": (1, 0)}, dc="bidegree", diagram_grade=True)
    al, be = B.gen("al"), B.gen("be")
    iota = DgaMorphism(A, B, {"a": al + be, "b": (al - be).scale(-I), "c": B.gen("ga")}, "iota")
    return MixedHodgeDiagram(A, B, iota, "mixed")


def threeblock_B() -> ExplicitDga:
    """Finite Kähler-type DGA over Q(i) with α₁∧α₂ exact.

    Harmonic part: ζ1, ζ2 of type (1,0), their conjugates, σ = ζiζ̄i of type (1,1).
    Extra: functions b, b̄ with ∂∂̄b = ε12 = ζ1ζ̄2 and ∂∂̄b̄ = ε21 = ζ2ζ̄1.
    """
    basis = {0: ["1", "b", "bb"],
             1: ["z1", "z2", "zb1", "zb2", "del_b", "dbar_b", "del_bb", "dbar_bb"],
             2: ["s", "e12", "e21"], 3: []}
    prods = {("z1", "zb1"): {"s": 1}, ("z2", "zb2"): {"s": 1},
             ("z1", "zb2"): {"e12": 1}, ("z2", "zb1"): {"e21": 1}}
    d = {"b": {"del_b": 1, "dbar_b": 1}, "bb": {"del_bb": 1, "dbar_bb": 1},
         "del_b": {"e12": -1}, "dbar_b": {"e12": 1},
         "del_bb": {"e21": -1}, "dbar_bb": {"e21": 1}}
    bideg = {"1": (0, 0), "b": (0, 0), "bb": (0, 0),
             "z1": (1, 0), "z2": (1, 0), "zb1": (0, 1), "zb2": (0, 1),
             "del_b": (1, 0), "dbar_b": (0, 1), "del_bb": (1, 0), "dbar_bb": (0, 1),
             "s": (1, 1), "e12": (1, 1), "e21": (1, 1)}
    conj = {"1": {"1": 1}, "b": {"bb": 1}, "bb": {"b": 1},
            "z1": {"zb1": 1}, "zb1": {"z1": 1}, "z2": {"zb2": 1}, "zb2": {"z2": 1},
            "del_b": {"dbar_bb": 1}, "dbar_bb": {"del_b": 1},
            "dbar_b": {"del_bb": 1}, "del_bb": {"dbar_b": 1},
            "s": {"s": -1}, "e12": {"e21": -1}, "e21": {"e12": -1}}
    weights = {lab: 0 for k in basis for lab in basis[k]}
    return ExplicitDga(basis, prods, d, max_degree=3, field="qi", name="threeblock_C",
                       weights=weights, bidegrees=bideg, dc="bidegree", conj=conj, diagram_grade=True)


def threeblock() -> MixedHodgeDiagram:
    B = threeblock_B()
    A, iota = real_form(B, "threeblock_R")
    return MixedHodgeDiagram(A, B, iota, "threeblock")


def threeblock_V() -> MixedHodgeStructure:
    """V = V0 ⊕ V1 ⊕ V2 in the basis (e0, uR, uI, e2): weights 0, 1, 1, 2;
    u = uR + i uI spans V1^{1,0}, V2 has type (1,1)."""
    W = IncreasingFiltration.from_weights([0, 1, 1, 2])
    F = DecreasingFiltration(4, {0: Subspace.full(4),
                                 1: [(ZERO, ONE, I, ZERO), (ZERO, ZERO, ZERO, ONE)]})
    return MixedHodgeStructure(W, F)


def all_diagrams() -> dict:
    return {"kahler-torus": kahler_torus, "mixed": mixed_diagram, "threeblock": threeblock}


def mutations() -> dict:
    """name -> (builder, axiom expected to fail)."""
    return {"f-shift": (kahler_torus_f_shift, 3),
            "iota-degeneration": (kahler_torus_iota_zero, 1),
            "strictness-break": (kahler_torus_nonstrict, 2)}
