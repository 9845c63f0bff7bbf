"""JSON documents for every object the command line reads or writes.

Output is canonical: sorted keys, two-space indent, scalars normalized by
``scalar_to_json``, subspaces written as reduced echelon rows.  Loading a
written document and writing it again gives the same bytes.

Loaders raise InputError carrying a JSON pointer to the offending node.
"""
from __future__ import annotations

import json
import os
from contextlib import contextmanager

from .dga import DgaInstance, DgaMorphism, Element, ExplicitDga, FreeDga, TdtElement
from .errors import InputError
from .field import QI, ZERO, parse_scalar, scalar_to_json
from .forms import FormMatrix
from .linalg import DecreasingFiltration, IncreasingFiltration, Subspace
from .mc import MaurerCartanElement
from .mhd import MixedHodgeDiagram
from .mhs import Bigrading, MixedHodgeStructure
from .report import Report


# ----------------------------------------------------------------------
# canonical text

def _default(o):
    if isinstance(o, QI):
        return scalar_to_json(o)
    if isinstance(o, (tuple, set, frozenset)):
        return list(o)
    if isinstance(o, Report):
        return o.to_json()
    if isinstance(o, Subspace):
        return subspace_to_json(o)
    return str(o)


def _stringify_keys(o):
    if isinstance(o, dict):
        return {(k if isinstance(k, str) else _key(k)): _stringify_keys(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_stringify_keys(v) for v in o]
    return o


def _key(k) -> str:
    if isinstance(k, tuple):
        return "(" + ",".join(str(x) for x in k) + ")"
    return str(k)


def dumps(doc) -> str:
    return json.dumps(_stringify_keys(doc), sort_keys=True, indent=2, ensure_ascii=False,
                      default=_default) + "\n"


def loads(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg} at line {e.lineno} column {e.colno}", "") from None


def read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return loads(fh.read())
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def write_text(path: str | None, text: str):
    if path is None or path == "-":
        import sys
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


# ----------------------------------------------------------------------
# pointer bookkeeping

def _ptr(base: str, *parts) -> str:
    out = base
    for p in parts:
        out += "/" + str(p).replace("~", "~0").replace("/", "~1")
    return out


@contextmanager
def at(pointer: str):
    """Attach ``pointer`` to InputErrors raised without one."""
    try:
        yield
    except InputError as e:
        if not e.pointer:
            e.pointer = pointer or "/"
        raise
    except (TypeError, KeyError, AttributeError, ValueError) as e:
        raise InputError(f"malformed value ({type(e).__name__}: {e})", pointer or "/") from None


def _need(doc, key: str, ptr: str, kind=None):
    if not isinstance(doc, dict):
        raise InputError("expected an object", ptr or "/")
    if key not in doc:
        raise InputError(f"missing key {key!r}", _ptr(ptr, key))
    v = doc[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"{key!r} has the wrong type", _ptr(ptr, key))
    return v


def _int(v, ptr: str) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise InputError("expected an integer", ptr)
    return v


def _int_key(k: str, ptr: str) -> int:
    try:
        return int(k)
    except ValueError:
        raise InputError(f"expected an integer key, got {k!r}", ptr) from None


# ----------------------------------------------------------------------
# scalars, matrices, subspaces, filtrations

def scalar_from_json(v, ptr: str = "", field: str = "qi") -> QI:
    with at(ptr):
        z = parse_scalar(v)
    if field == "q" and z.im:
        raise InputError("complex scalar in a rational document", ptr)
    return z


def matrix_to_json(M) -> list:
    return [[scalar_to_json(QI.coerce(x)) for x in row] for row in M]


def matrix_from_json(doc, ptr: str = "", shape: tuple | None = None, field: str = "qi") -> list:
    if not isinstance(doc, list) or any(not isinstance(r, list) for r in doc):
        raise InputError("expected a list of rows", ptr or "/")
    out = [[scalar_from_json(x, _ptr(ptr, i, j), field) for j, x in enumerate(r)] for i, r in enumerate(doc)]
    if out and any(len(r) != len(out[0]) for r in out):
        raise InputError("ragged matrix", ptr or "/")
    if shape is not None:
        rows, cols = shape
        if len(out) != rows or (rows and len(out[0]) != cols):
            raise InputError(f"expected a {rows}x{cols} matrix", ptr or "/")
    return out


def subspace_to_json(S: Subspace) -> list:
    return matrix_to_json(S.rows)


def subspace_from_json(doc, n: int, ptr: str = "") -> Subspace:
    rows = matrix_from_json(doc, ptr)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise InputError(f"row of length {len(r)} in a space of dimension {n}", _ptr(ptr, i))
    return Subspace(n, rows)


def filtration_to_json(filt) -> dict:
    return {"levels": {str(k): subspace_to_json(S) for k, S in filt.levels.items()}}


def filtration_from_json(doc, n: int, increasing: bool, ptr: str = ""):
    lv = _need(doc, "levels", ptr, dict)
    levels = {}
    for k, rows in lv.items():
        p = _ptr(ptr, "levels", k)
        levels[_int_key(k, p)] = subspace_from_json(rows, n, p)
    cls = IncreasingFiltration if increasing else DecreasingFiltration
    with at(_ptr(ptr, "levels")):
        return cls(n, levels)


# ----------------------------------------------------------------------
# mixed Hodge structures and bigradings

def mhs_to_json(m: MixedHodgeStructure) -> dict:
    return {"dim": m.dim, "weight_filtration": filtration_to_json(m.W),
            "hodge_filtration": filtration_to_json(m.F)}


def mhs_from_json(doc, ptr: str = "") -> MixedHodgeStructure:
    n = _int(_need(doc, "dim", ptr), _ptr(ptr, "dim"))
    if n < 0:
        raise InputError("negative dimension", _ptr(ptr, "dim"))
    W = filtration_from_json(_need(doc, "weight_filtration", ptr), n, True, _ptr(ptr, "weight_filtration"))
    F = filtration_from_json(_need(doc, "hodge_filtration", ptr), n, False, _ptr(ptr, "hodge_filtration"))
    with at(ptr):
        return MixedHodgeStructure(W, F)


def bigrading_to_json(bg: Bigrading) -> dict:
    return {"dim": bg.n, "components": {_key(pq): subspace_to_json(S) for pq, S in bg.components.items()}}


def _parse_pq(k: str, ptr: str) -> tuple:
    s = k.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise InputError(f"bigrading key {k!r} is not of the form (p,q)", ptr)
    parts = s[1:-1].split(",")
    if len(parts) != 2:
        raise InputError(f"bigrading key {k!r} is not of the form (p,q)", ptr)
    return (_int_key(parts[0].strip(), ptr), _int_key(parts[1].strip(), ptr))


def bigrading_from_json(doc, ptr: str = "") -> Bigrading:
    n = _int(_need(doc, "dim", ptr), _ptr(ptr, "dim"))
    comps = {}
    for k, rows in _need(doc, "components", ptr, dict).items():
        p = _ptr(ptr, "components", k)
        comps[_parse_pq(k, p)] = subspace_from_json(rows, n, p)
    with at(ptr):
        return Bigrading(n, comps)


# ----------------------------------------------------------------------
# DGAs

def element_to_json(x: Element) -> dict:
    A = x.dga
    return {A.label(x.degree, i): scalar_to_json(c) for i, c in sorted(x.data.items()) if c}


def _coeffs(doc, ptr: str, field: str) -> dict:
    if not isinstance(doc, dict):
        raise InputError("expected an object {label: scalar}", ptr or "/")
    return {lab: scalar_from_json(c, _ptr(ptr, lab), field) for lab, c in doc.items()}


def element_from_json(doc, A: DgaInstance, degree: int | None, ptr: str = "") -> Element:
    """Labels may be given in any order; the degree is read off the labels
    when ``degree`` is None (the zero element then needs a degree)."""
    co = _coeffs(doc, ptr, "qi")
    out = {}
    k0 = degree
    for lab, c in co.items():
        with at(_ptr(ptr, lab)):
            k, i = A.find(lab)
        if k0 is None:
            k0 = k
        elif k != k0:
            raise InputError(f"{lab!r} has degree {k}, expected {k0}", _ptr(ptr, lab))
        if c:
            out[i] = out.get(i, ZERO) + c
    if k0 is None:
        raise InputError("cannot infer the degree of an empty element", ptr or "/")
    return A.element(k0, {i: c for i, c in out.items() if c})


def _terms_of(A: FreeDga, x: Element) -> list:
    out = []
    for i, c in sorted(x.data.items()):
        if c:
            out.append([scalar_to_json(c)] + [A.gens[g] for g in A.monomial(x.degree, i)])
    return out


def _terms_from(doc, ptr: str, field: str) -> list:
    if not isinstance(doc, list):
        raise InputError("expected a list of terms [coeff, generator, ...]", ptr or "/")
    out = []
    for j, t in enumerate(doc):
        p = _ptr(ptr, j)
        if not isinstance(t, list) or not t:
            raise InputError("malformed term", p)
        if any(not isinstance(g, str) for g in t[1:]):
            raise InputError("generator names must be strings", p)
        out.append([scalar_from_json(t[0], _ptr(p, 0), field)] + list(t[1:]))
    return out


def _free_weights_W(A: FreeDga) -> dict | None:
    if not A.has_W:
        return None
    return {str(k): filtration_to_json(A.W(k)) for k in range(A.max_degree + 1)}


def dga_to_json(A: DgaInstance) -> dict:
    if isinstance(A, FreeDga):
        return _free_to_json(A)
    return _explicit_to_json(A)


def _free_to_json(A: FreeDga) -> dict:
    gens = []
    for j, (g, k) in enumerate(zip(A.gens, A.gen_deg)):
        e = {"name": g, "degree": k}
        if A.gen_weights is not None:
            e["weight"] = A.gen_weights[j]
        if A.gen_bidegrees is not None:
            e["bidegree"] = list(A.gen_bidegrees[j])
        if A.gen_types is not None:
            e["hodge_type"] = list(A.gen_types[j])
        gens.append(e)
    doc = {"name": A.name, "field": A.field, "max_degree": A.max_degree, "generators": gens}
    d = {}
    for j, g in enumerate(A.gens):
        x = A.gen_d(g)
        if x.data:
            d[g] = _terms_of(A, x)
    doc["d"] = d
    if A.has_dc:
        if A._gen_dc or A._bideg is None:
            doc["dc"] = {A.gens[j]: _terms_of(A, Element(A, A.gen_deg[j] + 1, dict(v)))
                         for j, v in sorted(A._gen_dc.items()) if v}
        else:
            doc["dc"] = "bidegree"
    if A.diagram_grade:
        doc["diagram_grade"] = True
    # filtrations that the generator data does not reproduce are written out
    ref = _free_from_doc(doc, "", None)
    top = A.max_degree
    if A.has_W and (not ref.has_W or any(ref.W(k) != A.W(k) for k in range(top + 1))):
        doc["W"] = {str(k): filtration_to_json(A.W(k)) for k in range(top + 1)}
    if A.has_F and (not ref.has_F or any(ref.F(k) != A.F(k) for k in range(top + 1))):
        doc["F"] = {str(k): filtration_to_json(A.F(k)) for k in range(top + 1)}
    return doc


def _coordinate_weights(A: DgaInstance) -> dict | None:
    out = {}
    for k in range(A.max_degree + 1):
        ws = [A.weight_of(k, i) for i in range(A.dim(k))]
        if any(w is None for w in ws) or IncreasingFiltration.from_weights(ws) != A.W(k):
            return None
        for i, w in enumerate(ws):
            out[A.label(k, i)] = w
    return out


def _explicit_to_json(A: DgaInstance) -> dict:
    top = A.max_degree
    doc = {"name": A.name, "field": A.field, "max_degree": top,
           "basis": {str(k): A.labels(k) for k in range(top + 1)},
           "unit": A.label(0, A.unit_index)}
    prods = []
    keys = [(k, i) for k in range(top + 1) for i in range(A.dim(k)) if (k, i) != (0, A.unit_index)]
    for a, (k1, i) in enumerate(keys):
        for (k2, j) in keys[a:]:
            if k1 + k2 > top:
                continue
            v = A.mul_idx(k1, i, k2, j)
            if any(v.values()):
                prods.append([A.label(k1, i), A.label(k2, j), element_to_json(A.element(k1 + k2, v))])
    doc["products"] = prods
    doc["d"] = {A.label(k, i): element_to_json(A.element(k + 1, A.d_idx(k, i)))
                for k in range(top) for i in range(A.dim(k)) if any(A.d_idx(k, i).values())}
    if A.has_W:
        ws = _coordinate_weights(A)
        if ws is not None:
            doc["weights"] = ws
        else:
            doc["W"] = {str(k): filtration_to_json(A.W(k)) for k in range(top + 1)}
    if A.has_bidegrees:
        doc["bidegrees"] = {A.label(k, i): list(A.bidegree(k, i)) for k in range(top + 1) for i in range(A.dim(k))}
    elif A.has_F:
        doc["F"] = {str(k): filtration_to_json(A.F(k)) for k in range(top + 1)}
    if A.has_dc:
        if getattr(A, "_dc_explicit", None) is None and A.has_bidegrees:
            doc["dc"] = "bidegree"
        else:
            doc["dc"] = {A.label(k, i): element_to_json(A.element(k + 1, A.dc_idx(k, i)))
                         for k in range(top) for i in range(A.dim(k)) if any(A.dc_idx(k, i).values())}
    if isinstance(A, ExplicitDga) and A.has_conj:
        doc["conj"] = {A.label(k, i): element_to_json(A.conj(A.basis_element(k, i)))
                       for k in range(top + 1) for i in range(A.dim(k))}
    if A.diagram_grade:
        doc["diagram_grade"] = True
    return doc


def _filtrations_by_degree(doc, A: DgaInstance, increasing: bool, ptr: str) -> dict:
    if not isinstance(doc, dict):
        raise InputError("expected {degree: filtration}", ptr or "/")
    out = {}
    for k, f in doc.items():
        p = _ptr(ptr, k)
        kk = _int_key(k, p)
        if kk < 0 or kk > A.max_degree:
            raise InputError(f"degree {kk} outside 0..{A.max_degree}", p)
        out[kk] = filtration_from_json(f, A.dim(kk), increasing, p)
    cls = IncreasingFiltration if increasing else DecreasingFiltration
    return {k: out.get(k, cls.trivial(A.dim(k))) for k in range(A.max_degree + 1)}


def _str(v, ptr):
    if not isinstance(v, str):
        raise InputError("expected a string", ptr)
    return v


def _pair(v, ptr) -> tuple:
    if not isinstance(v, list) or len(v) != 2:
        raise InputError("expected a pair [p, q]", ptr)
    return (_int(v[0], _ptr(ptr, 0)), _int(v[1], _ptr(ptr, 1)))


def _free_from_doc(doc, ptr: str, field: str | None, max_degree: int | None = None) -> FreeDga:
    fld = field or doc.get("field", "q")
    gens_doc = _need(doc, "generators", ptr, list)
    gens, weights, bideg, types = [], {}, {}, {}
    for j, g in enumerate(gens_doc):
        p = _ptr(ptr, "generators", j)
        name = _str(_need(g, "name", p), _ptr(p, "name"))
        k = _int(_need(g, "degree", p), _ptr(p, "degree"))
        gens.append((name, k))
        if "weight" in g:
            weights[name] = _int(g["weight"], _ptr(p, "weight"))
        if "bidegree" in g:
            bideg[name] = _pair(g["bidegree"], _ptr(p, "bidegree"))
        if "hodge_type" in g:
            types[name] = _pair(g["hodge_type"], _ptr(p, "hodge_type"))
    md = doc.get("max_degree", max_degree if max_degree is not None else 3)
    md = _int(md, _ptr(ptr, "max_degree"))
    d = {}
    for g, terms in doc.get("d", {}).items():
        d[g] = _terms_from(terms, _ptr(ptr, "d", g), fld)
    dc = doc.get("dc")
    if isinstance(dc, dict):
        dc = {g: _terms_from(t, _ptr(ptr, "dc", g), "qi") for g, t in dc.items()}
    elif dc is not None and dc != "bidegree":
        raise InputError("dc must be 'bidegree' or a table", _ptr(ptr, "dc"))
    with at(ptr):
        A = FreeDga(gens, d, max_degree=md, field=fld, name=doc.get("name", ""),
                    weights=weights or None, bidegrees=bideg or None, dc=dc,
                    diagram_grade=bool(doc.get("diagram_grade", False)), hodge_types=types or None)
    if "W" in doc:
        A._W = _filtrations_by_degree(doc["W"], A, True, _ptr(ptr, "W"))
    if "F" in doc:
        A._F = _filtrations_by_degree(doc["F"], A, False, _ptr(ptr, "F"))
    return A


def _explicit_from_doc(doc, ptr: str, field: str | None) -> ExplicitDga:
    fld = field or doc.get("field", "q")
    basis_doc = _need(doc, "basis", ptr, dict)
    basis = {}
    for k, labs in basis_doc.items():
        p = _ptr(ptr, "basis", k)
        if not isinstance(labs, list) or any(not isinstance(x, str) for x in labs):
            raise InputError("basis labels must be a list of strings", p)
        basis[_int_key(k, p)] = labs
    prods = {}
    for j, entry in enumerate(doc.get("products", [])):
        p = _ptr(ptr, "products", j)
        if not isinstance(entry, list) or len(entry) != 3:
            raise InputError("product entries are [label, label, {label: coeff}]", p)
        key = (_str(entry[0], _ptr(p, 0)), _str(entry[1], _ptr(p, 1)))
        if key in prods:
            raise InputError(f"product {key[0]}*{key[1]} given twice", p)
        prods[key] = _coeffs(entry[2], _ptr(p, 2), fld)
    d = {lab: _coeffs(v, _ptr(ptr, "d", lab), fld) for lab, v in doc.get("d", {}).items()}
    weights = None
    if "weights" in doc:
        wd = doc["weights"]
        if not isinstance(wd, dict):
            raise InputError("weights must be {label: int}", _ptr(ptr, "weights"))
        weights = {lab: _int(w, _ptr(ptr, "weights", lab)) for lab, w in wd.items()}
    bideg = None
    if "bidegrees" in doc:
        bd = doc["bidegrees"]
        if not isinstance(bd, dict):
            raise InputError("bidegrees must be {label: [p, q]}", _ptr(ptr, "bidegrees"))
        bideg = {lab: _pair(v, _ptr(ptr, "bidegrees", lab)) for lab, v in bd.items()}
    dc = doc.get("dc")
    if isinstance(dc, dict):
        dc = {lab: _coeffs(v, _ptr(ptr, "dc", lab), "qi") for lab, v in dc.items()}
    elif dc is not None and dc != "bidegree":
        raise InputError("dc must be 'bidegree' or a table", _ptr(ptr, "dc"))
    conj = None
    if "conj" in doc:
        conj = {lab: _coeffs(v, _ptr(ptr, "conj", lab), "qi") for lab, v in doc["conj"].items()}
    md = _int(doc.get("max_degree", max(basis) if basis else 0), _ptr(ptr, "max_degree"))
    with at(ptr):
        A = ExplicitDga(basis, prods, d, max_degree=md, field=fld, name=doc.get("name", ""),
                        unit=doc.get("unit", "1"), weights=weights, bidegrees=bideg, dc=dc, conj=conj,
                        diagram_grade=bool(doc.get("diagram_grade", False)))
    if "W" in doc and weights is None:
        A._W = _filtrations_by_degree(doc["W"], A, True, _ptr(ptr, "W"))
    if "F" in doc and bideg is None:
        A._F = _filtrations_by_degree(doc["F"], A, False, _ptr(ptr, "F"))
    return A


def dga_from_json(doc, ptr: str = "", field: str | None = None, max_degree: int | None = None) -> DgaInstance:
    """Free mode when ``generators`` is present, explicit-basis mode when ``basis`` is."""
    if not isinstance(doc, dict):
        raise InputError("expected a DGA object", ptr or "/")
    if field is not None and field not in ("q", "qi"):
        raise InputError(f"unknown field {field!r}", ptr or "/")
    if "field" in doc and doc["field"] not in ("q", "qi"):
        raise InputError("field must be 'q' or 'qi'", _ptr(ptr, "field"))
    if "generators" in doc:
        return _free_from_doc(doc, ptr, field, max_degree)
    if "basis" in doc:
        return _explicit_from_doc(doc, ptr, field)
    raise InputError("a DGA needs 'generators' (free mode) or 'basis' (explicit mode)", ptr or "/")


# ----------------------------------------------------------------------
# morphisms and homotopies

def tdt_to_json(x: TdtElement) -> dict:
    top = max(list(x.poly) + list(x.dtpoly) + [-1])
    return {"degree": x.degree,
            "t": [element_to_json(x.poly[i]) if i in x.poly else {} for i in range(top + 1)],
            "dt": [element_to_json(x.dtpoly[i]) if i in x.dtpoly else {} for i in range(top + 1)]}


def tdt_from_json(doc, A: DgaInstance, ptr: str = "") -> TdtElement:
    k = _int(_need(doc, "degree", ptr), _ptr(ptr, "degree"))
    poly = {i: element_from_json(e, A, k, _ptr(ptr, "t", i)) for i, e in enumerate(doc.get("t", []))}
    dtp = {}
    for i, e in enumerate(doc.get("dt", [])):
        if k < 1:
            if e:
                raise InputError("a degree-0 element has no dt part", _ptr(ptr, "dt", i))
            continue
        dtp[i] = element_from_json(e, A, k - 1, _ptr(ptr, "dt", i))
    return TdtElement(A, k, poly, dtp)


def morphism_to_json(f: DgaMorphism) -> dict:
    imgs = {}
    for (k, i), v in sorted(f.images.items()):
        lab = f.source.label(k, i)
        if isinstance(v, TdtElement):
            if not v.is_zero():
                imgs[lab] = tdt_to_json(v)
        elif v.data:
            imgs[lab] = element_to_json(v)
    doc = {"images": imgs}
    if f.name:
        doc["name"] = f.name
    if f.tdt:
        doc["tdt"] = True
    return doc


def morphism_from_json(doc, S: DgaInstance, T: DgaInstance, ptr: str = "") -> DgaMorphism:
    imgs_doc = _need(doc, "images", ptr, dict)
    tdt = bool(doc.get("tdt", False))
    free = isinstance(S, FreeDga)
    imgs = {}
    for key, v in imgs_doc.items():
        p = _ptr(ptr, "images", key)
        with at(p):
            if free:
                k = S.gen_deg[S._gidx(key)]
            else:
                k, _ = S.find(key)
        imgs[key] = tdt_from_json(v, T, p) if tdt else element_from_json(v, T, k, p)
    with at(ptr):
        return DgaMorphism(S, T, imgs, doc.get("name", ""))


# ----------------------------------------------------------------------
# diagrams

def mhd_to_json(m: MixedHodgeDiagram) -> dict:
    return {"name": m.name, "A": dga_to_json(m.A), "B": dga_to_json(m.B), "iota": morphism_to_json(m.iota)}


def mhd_from_json(doc, ptr: str = "", field: str | None = None) -> MixedHodgeDiagram:
    A = dga_from_json(_need(doc, "A", ptr), _ptr(ptr, "A"), field)
    B = dga_from_json(_need(doc, "B", ptr), _ptr(ptr, "B"))
    iota = morphism_from_json(_need(doc, "iota", ptr), A, B, _ptr(ptr, "iota"))
    with at(ptr):
        return MixedHodgeDiagram(A, B, iota, doc.get("name", ""))


# ----------------------------------------------------------------------
# form matrices and Maurer–Cartan elements

def _terms_json(dga, degree: int, terms: dict) -> dict:
    return {dga.label(degree, i): matrix_to_json(M) for i, M in sorted(terms.items())}


def _tdt_terms(X: FormMatrix) -> tuple:
    """([terms per t-power], [dt terms per t-power])."""
    t, dt = {}, {}
    for r, row in enumerate(X.e):
        for c, x in enumerate(row):
            for side, src in ((t, x.poly), (dt, x.dtpoly)):
                for pw, el in src.items():
                    for i, v in el.data.items():
                        if v:
                            M = side.setdefault(pw, {}).setdefault(i, [[ZERO] * X.cols for _ in range(X.rows)])
                            M[r][c] = v
    top = max(list(t) + list(dt) + [-1])
    return ([_terms_json(X.dga, X.degree, t.get(i, {})) for i in range(top + 1)],
            [_terms_json(X.dga, X.degree - 1, dt.get(i, {})) for i in range(top + 1)])


def form_matrix_to_json(X: FormMatrix) -> dict:
    doc = {"degree": X.degree, "shape": [X.rows, X.cols]}
    if X.tdt:
        doc["t"], doc["dt"] = _tdt_terms(X)
    else:
        doc["terms"] = _terms_json(X.dga, X.degree, X.terms())
    return doc


def _terms_from_json(doc, dga, degree: int, rows: int, cols: int, ptr: str) -> dict:
    if not isinstance(doc, dict):
        raise InputError("expected {basis label: matrix}", ptr or "/")
    out = {}
    for lab, M in doc.items():
        p = _ptr(ptr, lab)
        with at(p):
            k, i = dga.find(lab)
        if k != degree:
            raise InputError(f"{lab!r} has degree {k}, expected {degree}", p)
        out[i] = matrix_from_json(M, p, (rows, cols))
    return out


def _fm_from_terms(dga, degree, terms, rows, cols) -> FormMatrix:
    if not terms:
        return FormMatrix.zeros(dga, degree, rows, cols)
    return FormMatrix.from_terms(dga, degree, terms, rows, cols)


def _fm_tdt(dga, degree, tdoc, dtdoc, rows, cols, ptr) -> FormMatrix:
    ents = [[TdtElement(dga, degree) for _ in range(cols)] for _ in range(rows)]
    polys = [[({}, {}) for _ in range(cols)] for _ in range(rows)]
    for side, docs, deg in ((0, tdoc, degree), (1, dtdoc, degree - 1)):
        if not isinstance(docs, list):
            raise InputError("t-coefficients must be a list indexed by the power of t",
                             _ptr(ptr, "t" if side == 0 else "dt"))
        for pw, td in enumerate(docs):
            if side == 1 and deg < 0:
                if td:
                    raise InputError("degree-0 entries have no dt part", _ptr(ptr, "dt", pw))
                continue
            terms = _terms_from_json(td, dga, deg, rows, cols, _ptr(ptr, "t" if side == 0 else "dt", pw))
            X = _fm_from_terms(dga, deg, terms, rows, cols)
            for r in range(rows):
                for c in range(cols):
                    if X.e[r][c].data:
                        polys[r][c][side][pw] = X.e[r][c]
    for r in range(rows):
        for c in range(cols):
            ents[r][c] = TdtElement(dga, degree, *polys[r][c])
    return FormMatrix(dga, degree, ents, True)


def form_matrix_from_json(doc, dga, ptr: str = "") -> FormMatrix:
    k = _int(_need(doc, "degree", ptr), _ptr(ptr, "degree"))
    shape = _need(doc, "shape", ptr, list)
    if len(shape) != 2:
        raise InputError("shape is [rows, cols]", _ptr(ptr, "shape"))
    rows, cols = _int(shape[0], _ptr(ptr, "shape", 0)), _int(shape[1], _ptr(ptr, "shape", 1))
    if "t" in doc or "dt" in doc:
        return _fm_tdt(dga, k, doc.get("t", []), doc.get("dt", []), rows, cols, ptr)
    terms = _terms_from_json(doc.get("terms", {}), dga, k, rows, cols, _ptr(ptr, "terms"))
    return _fm_from_terms(dga, k, terms, rows, cols)


def mc_to_json(x: MaurerCartanElement, with_dga: bool = True) -> dict:
    doc = {"V_dim": x.dim, "W": filtration_to_json(x.W), "convention": x.convention}
    if x.is_tdt:
        t, dt = _tdt_terms(x.omega)
        doc["tdt"] = True
        doc["omega"] = {"t": t, "dt": dt}
    else:
        doc["omega"] = _terms_json(x.dga, 1, x.omega.terms())
    if with_dga:
        doc["dga"] = dga_to_json(x.dga)
    return doc


def mc_from_json(doc, dga: DgaInstance | None = None, ptr: str = "", field: str | None = None) -> MaurerCartanElement:
    if dga is None:
        dga = dga_from_json(_need(doc, "dga", ptr), _ptr(ptr, "dga"), field)
    n = _int(_need(doc, "V_dim", ptr), _ptr(ptr, "V_dim"))
    W = filtration_from_json(_need(doc, "W", ptr), n, True, _ptr(ptr, "W"))
    conv = doc.get("convention", "plus")
    if conv not in ("plus", "minus"):
        raise InputError("convention must be 'plus' or 'minus'", _ptr(ptr, "convention"))
    om = _need(doc, "omega", ptr, dict)
    if doc.get("tdt"):
        X = _fm_tdt(dga, 1, om.get("t", []), om.get("dt", []), n, n, _ptr(ptr, "omega"))
    else:
        X = _fm_from_terms(dga, 1, _terms_from_json(om, dga, 1, n, n, _ptr(ptr, "omega")), n, n)
    with at(ptr):
        return MaurerCartanElement(dga, W, X, conv)


# ----------------------------------------------------------------------
# minimal models

def model_to_json(m, with_target: bool = True) -> dict:
    M = m.M
    stages = []
    for st in m.stages:
        gens = []
        for g in st:
            e = {"name": g, "weight": m.weight(g)}
            if m.types:
                e["bidegree"] = list(m.types[g])
            gens.append(e)
        stages.append({"generators": gens,
                       "d": {g: _terms_of(M, M.gen_d(g)) for g in st if M.gen_d(g).data},
                       "phi": {g: element_to_json(m.phi_of(g)) for g in st}})
    doc = {"kind": m.kind, "name": M.name, "field": M.field, "stages": stages}
    if with_target:
        doc["target"] = dga_to_json(m.target)
    return doc


def model_from_json(doc, target: DgaInstance | None = None, ptr: str = ""):
    from .minimal import MinimalModel, _free_model
    if target is None:
        target = dga_from_json(_need(doc, "target", ptr), _ptr(ptr, "target"))
    stages_doc = _need(doc, "stages", ptr, list)
    gens, d, weights, types, stages, phi = [], {}, {}, {}, [], {}
    for s, st in enumerate(stages_doc):
        p = _ptr(ptr, "stages", s)
        names = []
        for j, g in enumerate(_need(st, "generators", p, list)):
            q = _ptr(p, "generators", j)
            name = _str(_need(g, "name", q), _ptr(q, "name"))
            names.append(name)
            weights[name] = _int(g.get("weight", 0), _ptr(q, "weight"))
            if "bidegree" in g:
                types[name] = _pair(g["bidegree"], _ptr(q, "bidegree"))
        for g, terms in st.get("d", {}).items():
            d[g] = _terms_from(terms, _ptr(p, "d", g), doc.get("field", "q"))
        for g, e in st.get("phi", {}).items():
            phi[g] = element_from_json(e, target, 1, _ptr(p, "phi", g))
        gens += names
        stages.append(names)
    if types and len(types) != len(gens):
        raise InputError("either every generator or none carries a bidegree", ptr or "/")
    with at(ptr):
        M = _free_model(gens, d, weights, types or None, doc.get("field", "q"), doc.get("name", ""))
        f = DgaMorphism(M, target, phi, "phi")
    return MinimalModel(M, target, f, stages, doc.get("kind", "canonical"), types)


# ----------------------------------------------------------------------
# complements

def complement_from_json(doc, B: DgaInstance, ptr: str = ""):
    """{"rows": [...]} spans C directly; {"functional": [...]} gives C as its kernel."""
    from .minimal import ComplementChoice
    name = doc.get("name", "C") if isinstance(doc, dict) else "C"
    if isinstance(doc, dict) and "functional" in doc:
        f = matrix_from_json([doc["functional"]], _ptr(ptr, "functional"), (1, B.dim(0)))[0]
        with at(ptr):
            return ComplementChoice.kernel_of(B, f, name)
    rows = _need(doc, "rows", ptr)
    S = subspace_from_json(rows, B.dim(0), _ptr(ptr, "rows"))
    with at(ptr):
        return ComplementChoice(B, S, name=name)


# ----------------------------------------------------------------------
# VMHS objects, Hodge representations

def _diagram_ref(doc, ptr: str, base_dir: str, field: str | None = None):
    ref = _need(doc, "diagram", ptr)
    if isinstance(ref, str):
        path = ref if os.path.isabs(ref) else os.path.join(base_dir, ref)
        with at(_ptr(ptr, "diagram")):
            return mhd_from_json(read_json(path), "", field), ref
    return mhd_from_json(ref, _ptr(ptr, "diagram"), field), None


def vmhs_object_to_json(o, diagram_ref: str | None = None) -> dict:
    return {"diagram": diagram_ref if diagram_ref is not None else mhd_to_json(o.diagram),
            "mhs": mhs_to_json(o.mhs), "convention": o.convention,
            "omega": _terms_json(o.diagram.A, 1, o.omega.omega.terms()),
            "omega_prime": _terms_json(o.diagram.B, 1, o.omega_prime.omega.terms()),
            "a": _terms_json(o.diagram.B, 0, o.a.terms())}


def vmhs_object_from_json(doc, ptr: str = "", base_dir: str = ".", diagram=None, field: str | None = None):
    from .vmhs import VmhsObject
    if diagram is None:
        diagram, _ = _diagram_ref(doc, ptr, base_dir, field)
    m = mhs_from_json(_need(doc, "mhs", ptr), _ptr(ptr, "mhs"))
    n = m.dim
    conv = doc.get("convention", "plus")
    if conv not in ("plus", "minus"):
        raise InputError("convention must be 'plus' or 'minus'", _ptr(ptr, "convention"))
    A, B = diagram.A, diagram.B
    om = _fm_from_terms(A, 1, _terms_from_json(_need(doc, "omega", ptr), A, 1, n, n, _ptr(ptr, "omega")), n, n)
    omp = _fm_from_terms(B, 1, _terms_from_json(_need(doc, "omega_prime", ptr), B, 1, n, n,
                                                _ptr(ptr, "omega_prime")), n, n)
    a = _fm_from_terms(B, 0, _terms_from_json(_need(doc, "a", ptr), B, 0, n, n, _ptr(ptr, "a")), n, n)
    with at(ptr):
        return VmhsObject(diagram, m, MaurerCartanElement(A, m.W, om, conv),
                          MaurerCartanElement(B, m.W, omp, conv), a)


def vmhs_morphism_to_json(f) -> dict:
    return {"b": form_matrix_to_json(f.b), "b_prime": form_matrix_to_json(f.b_prime)}


def hodge_rep_to_json(r, diagram_ref: str | None = None, stages: int | None = None) -> dict:
    doc = {"mhs": mhs_to_json(r.mhs), "convention": r.Omega.convention,
           "Omega": _terms_json(r.Omega.dga, 1, r.Omega.omega.terms())}
    if diagram_ref is not None:
        doc["diagram"] = diagram_ref
    if stages is not None:
        doc["stages"] = stages
    return doc


def hodge_rep_from_json(doc, ctx, ptr: str = ""):
    from .vmhs import HodgeRep
    m = mhs_from_json(_need(doc, "mhs", ptr), _ptr(ptr, "mhs"))
    n = m.dim
    conv = doc.get("convention", "plus")
    if conv not in ("plus", "minus"):
        raise InputError("convention must be 'plus' or 'minus'", _ptr(ptr, "convention"))
    M = ctx.M
    X = _fm_from_terms(M, 1, _terms_from_json(_need(doc, "Omega", ptr), M, 1, n, n, _ptr(ptr, "Omega")), n, n)
    with at(ptr):
        return HodgeRep(MaurerCartanElement(M, m.W, X, conv), m)
