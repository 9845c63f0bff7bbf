"""Regenerate the JSON fixtures in ../fixtures from hodgemc.fixtures."""
import os
import sys

from hodgemc import fixtures as fx
from hodgemc import io
from hodgemc.mhs import deligne_bigrading
from hodgemc.vmhs import build_context, phi_C, threeblock_rep

OUT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")


def documents() -> dict:
    docs = {
        "nonsplit.json": io.mhs_to_json(fx.nonsplit_mhs()),
        "nonsplit-bigrading.json": io.bigrading_to_json(deligne_bigrading(fx.nonsplit_mhs())),
        "threeblock-V.json": io.mhs_to_json(fx.threeblock_V()),
        "torus.json": io.dga_to_json(fx.torus()),
        "heisenberg.json": io.dga_to_json(fx.heisenberg()),
        "even-sphere.json": io.dga_to_json(fx.even_sphere()),
        "kahler-torus.json": io.mhd_to_json(fx.kahler_torus()),
        "mixed-diagram.json": io.mhd_to_json(fx.mixed_diagram()),
        "threeblock-diagram.json": io.mhd_to_json(fx.threeblock()),
    }
    diagram = fx.threeblock()
    ctx = build_context(diagram, 3)
    seed = {(0, 1): "m1_1", (0, 2): "m1_2", (1, 3): "m1_3", (2, 3): "m1_4"}
    rep = threeblock_rep(ctx, fx.threeblock_V(), seed, "minus")
    docs["threeblock-rep.json"] = io.hodge_rep_to_json(rep, "threeblock-diagram.json", 3)
    docs["threeblock-object.json"] = io.vmhs_object_to_json(phi_C(rep, ctx), "threeblock-diagram.json")
    for name, (build, _) in fx.mutations().items():
        docs[f"kahler-torus-{name}.json"] = io.mhd_to_json(build())
    return docs


def main(out=OUT):
    os.makedirs(out, exist_ok=True)
    for name, doc in documents().items():
        with open(os.path.join(out, name), "w", encoding="utf-8") as fh:
            fh.write(io.dumps(doc))
    return 0


if __name__ == "__main__":
    sys.exit(main(*sys.argv[1:]))
