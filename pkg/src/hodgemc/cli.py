"""``hodgemc`` command line.

Exit status: 0 when a check passes or a construction succeeds, 1 when a
check fails or a construction has no solution (the JSON output carries the
witness), 2 on malformed input or usage errors.
"""
from __future__ import annotations

import argparse
import os
import sys

from . import io
from .errors import ConstructionError, InputError, InvariantViolation, PreconditionError
from .report import Report

COMMANDS = {
    "mhs": ["check", "bigrade", "from-bigrading"],
    "dga": ["check", "cohomology", "dec"],
    "mhd": ["check", "induced-mhs"],
    "minmodel": ["build", "ddc-build", "bigraded-build", "dual-lie", "ih-build"],
    "mc": ["check", "transport", "gauge"],
    "vmhs": ["build", "check", "descend", "example3"],
}

FIGURE_COMMANDS = {("mhs", "bigrade"), ("mhd", "check")}


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _common(p: argparse.ArgumentParser, figure: bool = False):
    p.add_argument("input_pos", nargs="?", metavar="INPUT", help="input JSON file")
    p.add_argument("--input", help="input JSON file (alternative to the positional argument)")
    p.add_argument("--output", help="write the JSON result here instead of stdout")
    p.add_argument("--stages", type=int, default=3, help="number of minimal-model stages (default 3)")
    p.add_argument("--max-degree", type=int, default=3,
                   help="truncation degree for free DGAs without max_degree (default 3)")
    p.add_argument("--field", choices=["q", "qi"], help="override the field of the (real) input DGA")
    p.add_argument("--complement", help="JSON file with the complement C of d in B^0")
    p.add_argument("--degree", type=int, help="cohomological degree for cohomology / induced-mhs")
    if figure:
        p.add_argument("--figure", help="also draw a grid figure to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hodgemc", description="Exact mixed Hodge theory and Maurer–Cartan toolkit.")
    groups = parser.add_subparsers(dest="group", metavar="GROUP")
    for g, cmds in COMMANDS.items():
        gp = groups.add_parser(g, help=f"{g} commands")
        sub = gp.add_subparsers(dest="command", metavar="COMMAND")
        for c in cmds:
            cp = sub.add_parser(c)
            _common(cp, figure=(g, c) in FIGURE_COMMANDS)
    return parser


# ----------------------------------------------------------------------
# helpers

def _input(args):
    path = args.input or args.input_pos
    if not path:
        raise _Usage("no input file given")
    return io.read_json(path), os.path.dirname(os.path.abspath(path)), path


def _report_status(rep: Report) -> int:
    return 0 if rep.ok else 1


def _is_diagram(doc) -> bool:
    return isinstance(doc, dict) and "A" in doc and "B" in doc and "iota" in doc


def _dga(doc, args, ptr=""):
    return io.dga_from_json(doc, ptr, args.field, args.max_degree)


def _complement(args, B):
    if not args.complement:
        return None
    return io.complement_from_json(io.read_json(args.complement), B)


def _context(diagram, args):
    from .minimal import ComplementChoice
    from .vmhs import build_context
    C = _complement(args, diagram.B) or ComplementChoice.augmentation(diagram.B)
    return build_context(diagram, args.stages, C)


def _diagram_from(doc, base, args):
    """A diagram document, or a bundle referring to one through "diagram"."""
    if _is_diagram(doc):
        return io.mhd_from_json(doc, "", args.field), None
    return io._diagram_ref(doc, "", base, args.field)


# ----------------------------------------------------------------------
# mhs

def cmd_mhs_check(args):
    from .mhs import check_mhs
    doc, _, _ = _input(args)
    rep = check_mhs(io.mhs_from_json(doc))
    return rep.to_json(), _report_status(rep)


def cmd_mhs_bigrade(args):
    from .mhs import check_mhs, conj_symmetry_failures, deligne_bigrading, is_r_split
    doc, _, _ = _input(args)
    m = io.mhs_from_json(doc)
    rep = check_mhs(m)
    if not rep.ok:
        return rep.to_json(), 1
    bg = deligne_bigrading(m)
    out = io.bigrading_to_json(bg)
    out["hodge_numbers"] = {io._key(pq): n for pq, n in bg.hodge_numbers().items()}
    out["r_split"] = is_r_split(m, bg)
    out["conj_symmetry_failures"] = [list(pq) for pq in conj_symmetry_failures(bg)]
    if args.figure:
        from .plotting import hodge_number_figure
        hodge_number_figure(bg.hodge_numbers(), args.figure, "dim I^{p,q}")
    return out, 0


def cmd_mhs_from_bigrading(args):
    from .mhs import mhs_from_bigrading
    doc, _, _ = _input(args)
    bg = io.bigrading_from_json(doc)
    try:
        m = mhs_from_bigrading(bg)
    except InvariantViolation as e:
        rep = Report("MHS from bigrading")
        rep.add("filtrations form an MHS", False, str(e))
        return rep.to_json(), 1
    return io.mhs_to_json(m), 0


# ----------------------------------------------------------------------
# dga

def cmd_dga_check(args):
    from .dga import validate_dga
    doc, _, _ = _input(args)
    rep = validate_dga(_dga(doc, args))
    return rep.to_json(), _report_status(rep)


def _cohomology_doc(A, n):
    from .dga import cohomology
    H = cohomology(A, n)
    return {"degree": n, "dim": H.dim, "truncated": H.truncated,
            "representatives": [io.element_to_json(x) for x in H.representatives()]}


def cmd_dga_cohomology(args):
    doc, _, _ = _input(args)
    A = _dga(doc, args)
    if args.degree is not None:
        return _cohomology_doc(A, args.degree), 0
    return {"degrees": {str(n): _cohomology_doc(A, n) for n in range(A.max_degree + 1)}}, 0


def cmd_dga_dec(args):
    from .dga import dec_shift
    doc, _, _ = _input(args)
    return io.dga_to_json(dec_shift(_dga(doc, args))), 0


# ----------------------------------------------------------------------
# mhd

def cmd_mhd_check(args):
    from .mhd import axiom_verdicts, check_mhd, w_spectral_pages
    doc, _, _ = _input(args)
    m = io.mhd_from_json(doc, "", args.field)
    pages = (w_spectral_pages(m.A), w_spectral_pages(m.B))
    rep = check_mhd(m, pages)
    out = rep.to_json()
    out["axioms"] = {str(k): v for k, v in axiom_verdicts(rep).items()}
    out["pages"] = {"A": pages[0].to_json(), "B": pages[1].to_json()}
    if args.figure:
        from .plotting import e1_figure
        e1_figure({"E1(A)": pages[0].dims("E1"), "E1(B)": pages[1].dims("E1")}, args.figure)
    return out, _report_status(rep)


def cmd_mhd_induced_mhs(args):
    from .mhd import induced_mhs_on_cohomology
    from .mhs import check_mhs
    doc, _, _ = _input(args)
    m = io.mhd_from_json(doc, "", args.field)
    r = 1 if args.degree is None else args.degree
    mh = induced_mhs_on_cohomology(m, r)
    rep = check_mhs(mh)
    out = io.mhs_to_json(mh)
    if not rep.ok:
        return {"mhs": out, "report": rep.to_json()}, 1
    return out, 0


# ----------------------------------------------------------------------
# minimal models

def _model_target(doc, args, which: str):
    if _is_diagram(doc):
        m = io.mhd_from_json(doc, "", args.field)
        return m.B if which == "B" else m.A
    return _dga(doc, args)


def _model_out(m):
    rep = m.check()
    out = io.model_to_json(m)
    if not rep.ok:
        return {"model": out, "report": rep.to_json()}, 1
    return out, 0


def cmd_minmodel_build(args):
    from .minimal import canonical_1_minimal_model
    doc, _, _ = _input(args)
    return _model_out(canonical_1_minimal_model(_model_target(doc, args, "A"), args.stages))


def cmd_minmodel_ddc_build(args):
    from .minimal import ddc_minimal_model
    doc, _, _ = _input(args)
    return _model_out(ddc_minimal_model(_model_target(doc, args, "A"), args.stages))


def cmd_minmodel_bigraded_build(args):
    from .minimal import bigraded_minimal_model
    doc, _, _ = _input(args)
    return _model_out(bigraded_minimal_model(_model_target(doc, args, "B"), args.stages))


def cmd_minmodel_dual_lie(args):
    from .minimal import canonical_1_minimal_model, dual_lie_algebra
    doc, _, _ = _input(args)
    if isinstance(doc, dict) and "stages" in doc:
        m = io.model_from_json(doc)
    else:
        m = canonical_1_minimal_model(_model_target(doc, args, "A"), args.stages)
    L = dual_lie_algebra(m)
    jac = L.jacobi_residual()
    out = {"dim": L.dim, "basis": L.names, "weights": L.weights,
           "brackets": {f"[{a},{b}]": {k: io.scalar_to_json(c) for k, c in v.items()}
                        for (a, b), v in L.structure_constants().items()},
           "jacobi_residual": [list(t) for t in jac],
           "lower_central_length": L.lower_central_length()}
    return out, 0 if not jac else 1


def cmd_minmodel_ih_build(args):
    doc, base, _ = _input(args)
    diagram, _ = _diagram_from(doc, base, args)
    ctx = _context(diagram, args)
    ih = ctx.ih
    rep = ih.report()
    out = {"I": io.morphism_to_json(ih.I), "I_inv": io.morphism_to_json(ih.I_inv),
           "H": io.morphism_to_json(ih.H),
           "b": {g: io.element_to_json(x) for g, x in ih.b.items()},
           "phi_model": io.model_to_json(ih.phi_model, with_target=False),
           "psi_model": io.model_to_json(ih.psi_model, with_target=False),
           "report": rep.to_json()}
    return out, _report_status(rep)


# ----------------------------------------------------------------------
# Maurer–Cartan

def cmd_mc_check(args):
    from .mc import check_mc
    doc, _, _ = _input(args)
    rep = check_mc(io.mc_from_json(doc, None, "", args.field))
    return rep.to_json(), _report_status(rep)


def cmd_mc_transport(args):
    """Input: {"source": dga, "target": dga, "map": morphism, "mc": MC over the
    target (its "dga" may be omitted), optional "mhs" and "F_constrained"}."""
    from .mc import transport
    doc, _, _ = _input(args)
    S = io.dga_from_json(io._need(doc, "source", ""), "/source", args.field, args.max_degree)
    T = io.dga_from_json(io._need(doc, "target", ""), "/target", None, args.max_degree)
    f = io.morphism_from_json(io._need(doc, "map", ""), S, T, "/map")
    x = io.mc_from_json(io._need(doc, "mc", ""), T, "/mc")
    mhs = io.mhs_from_json(doc["mhs"], "/mhs") if "mhs" in doc else None
    res = transport(f, x, mhs=mhs, F_constrained=bool(doc.get("F_constrained", False)))
    rep = res.report(f, x)
    out = {"Omega": io.mc_to_json(res.Omega, with_dga=False), "a": io.form_matrix_to_json(res.a.a),
           "report": rep.to_json()}
    return out, _report_status(rep)


def cmd_mc_gauge(args):
    from .mc import gauge, gauge_in_complement
    from .minimal import ComplementChoice
    doc, _, _ = _input(args)
    x = io.mc_from_json(doc, None, "", args.field)
    C = _complement(args, x.dga) or ComplementChoice.augmentation(x.dga)
    res = gauge(x, C)
    rep = Report("gauge")
    rep.add("gauge identity", res.identity_residual().is_zero())
    rep.add("A in C ⊗ W_-1 End(V)", gauge_in_complement(res, C))
    out = {"a": io.form_matrix_to_json(res.a.a), "A_t": io.form_matrix_to_json(res.A_t),
           "report": rep.to_json()}
    return out, _report_status(rep)


# ----------------------------------------------------------------------
# VMHS

def cmd_vmhs_build(args):
    """Input: {"diagram": path or object, "mhs", "convention", "Omega": {generator: matrix}}."""
    from .vmhs import check_hodge_rep, phi_C
    doc, base, _ = _input(args)
    diagram, ref = _diagram_from(doc, base, args)
    ctx = _context(diagram, args)
    r = io.hodge_rep_from_json(doc, ctx)
    rep = check_hodge_rep(r, ctx)
    if not rep.ok:
        return rep.to_json(), 1
    o = phi_C(r, ctx)
    return io.vmhs_object_to_json(o, ref), 0


def cmd_vmhs_check(args):
    from .vmhs import check_vmhs_object
    doc, base, _ = _input(args)
    o = io.vmhs_object_from_json(doc, "", base, field=args.field)
    rep = check_vmhs_object(o)
    return rep.to_json(), _report_status(rep)


def cmd_vmhs_descend(args):
    from .vmhs import check_vmhs_object, descend
    doc, base, _ = _input(args)
    diagram, ref = _diagram_from(doc, base, args)
    o = io.vmhs_object_from_json(doc, "", base, diagram=diagram)
    rep = check_vmhs_object(o)
    if not rep.ok:
        return rep.to_json(), 1
    ctx = _context(diagram, args)
    d = descend(o, ctx)
    out = {"rep": io.hodge_rep_to_json(d.rep, ref, args.stages), "c": io.matrix_to_json(d.c),
           "iso": io.vmhs_morphism_to_json(d.iso), "report": d.report.to_json()}
    return out, _report_status(d.report)


def cmd_vmhs_example3(args):
    """Three-block object on V = V0 ⊕ V1 ⊕ V2 (weights 0, 1, 2) from the first
    four stage-1 generators, through Φ_C and through the direct formula."""
    from .fixtures import threeblock_V
    from .forms import FormMatrix
    from .vmhs import build_3block_example, phi_C, threeblock_rep
    doc, base, path = _input(args)
    diagram, ref = _diagram_from(doc, base, args)
    ctx = _context(diagram, args)
    gens = ctx.phi_model.stages[0]
    if len(gens) < 4:
        raise PreconditionError("the three-block example needs four stage-1 generators")
    V = threeblock_V()
    seed = {(0, 1): gens[0], (0, 2): gens[1], (1, 3): gens[2], (2, 3): gens[3]}
    r = threeblock_rep(ctx, V, seed, "minus")
    o = phi_C(r, ctx)
    A, phi = diagram.A, ctx.phi_model.phi
    g = [phi(ctx.M.gen(x)) for x in gens[:4]]
    direct, beta = build_3block_example(diagram, V, (1, 2, 1), FormMatrix(A, 1, [[g[0], g[1]]]),
                                        FormMatrix(A, 1, [[g[2]], [g[3]]]), ctx.C)
    rep = Report("three-block example")
    rep.add("omega agrees with the direct formula", direct.omega == o.omega)
    rep.add("omega' agrees with the direct formula", direct.omega_prime == o.omega_prime)
    rep.add("a agrees with the direct formula", direct.a == o.a)
    out = {"object": io.vmhs_object_to_json(o, ref if ref is not None else os.path.basename(path)),
           "rep": io.hodge_rep_to_json(r), "beta": io.form_matrix_to_json(beta), "report": rep.to_json()}
    return out, _report_status(rep)


HANDLERS = {(g, c): globals()[f"cmd_{g}_{c.replace('-', '_')}"] for g, cmds in COMMANDS.items() for c in cmds}


# ----------------------------------------------------------------------

def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.group or not getattr(args, "command", None):
            raise _Usage("missing subcommand")
        if args.stages < 1:
            raise _Usage("--stages must be at least 1")
        if args.max_degree < 0:
            raise _Usage("--max-degree must be non-negative")
        doc, status = HANDLERS[(args.group, args.command)](args)
    except _Usage as e:
        stderr.write(parser.format_usage())
        stderr.write(f"hodgemc: error: {e}\n")
        return 2
    except InputError as e:
        stderr.write(f"hodgemc: input error at {e.pointer or '/'}: {e.args[0]}\n")
        return 2
    except (ConstructionError, PreconditionError, InvariantViolation) as e:
        rep = Report("construction failed")
        rep.add(type(e).__name__, False, str(e))
        doc, status = rep.to_json(), 1
    text = io.dumps(doc)
    if args.output:
        io.write_text(args.output, text)
    else:
        stdout.write(text)
    return status


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
