"""Generator for the example workspaces shipped under ``ydlab/data``.

Run ``python -m ydlab.bundled [DEST]`` to rewrite them; the test suite
checks that the shipped files match this generator.
"""

from __future__ import annotations

import sys
from pathlib import Path

from . import catalog
from .bimonad import AutFusion
from .exactmat import LinMap
from .groupsys import FusionMap, cyclic, dihedral, symmetric
from .involution import iso_backward, make_pair
from .workspace import (aut_fusion_to_dict, automorphism_to_dict, bimonad_to_dict, bundled_root,
                        fusion_to_dict, group_to_dict, object_to_dict, pair_to_dict,
                        system_to_dict, write_json)
from .ydcat import build_yd_from_action_coaction, fusion_cell, identity_cell

NAMES = ("trivial", "sweedler", "cyclic2")


def _add(files: dict, manifest: dict, section: str, name: str, data: dict) -> None:
    rel = f"{section}/{name}.json"
    files[rel] = data
    manifest.setdefault(section, []).append(rel)


def _group_section(files: dict, manifest: dict) -> None:
    groups = {"Z6": cyclic(6, "Z6"), "S3": symmetric(3, "S3"), "D4": dihedral(4, "D4")}
    for name, g in groups.items():
        _add(files, manifest, "groups", name, group_to_dict(g))
    Z6, S3, D4 = groups.values()
    fusions = {
        "Z6_id": FusionMap.identity(Z6),
        "S3_id": FusionMap.identity(S3),
        "S3_inner1": FusionMap.inner(S3, S3, 1),
        "S3_inner2": FusionMap.inner(S3, S3, 2),
        "D4_id": FusionMap.identity(D4),
        "D4_inner1": FusionMap.inner(D4, D4, 1),
        "D4_inner4": FusionMap.inner(D4, D4, 4),
    }
    for name, f in fusions.items():
        _add(files, manifest, "fusions", name, fusion_to_dict(f))
    systems = {
        "z6": (["Z6"] * 3, ["Z6_id", "Z6_id"]),
        "s3": (["S3"] * 3, ["S3_inner1", "S3_inner2"]),
        "d4": (["D4"] * 3, ["D4_inner1", "D4_inner4"]),
        "d4_plain": (["D4"] * 2, ["D4_id"]),
    }
    for name, (gs, fs) in systems.items():
        _add(files, manifest, "systems", name, system_to_dict(name, gs, fs))


def sweedler_workspace() -> dict:
    files: dict = {}
    manifest: dict = {"name": "sweedler"}
    H = catalog.sweedler()
    e = H.identity_aut()
    _add(files, manifest, "bimonads", "sweedler", bimonad_to_dict(H))
    rescale = LinMap([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]])
    H2, j = catalog.transport(H, rescale, "sweedler_b")
    j.name = "rescale"
    _add(files, manifest, "bimonads", "sweedler_b", bimonad_to_dict(H2))

    auts = {
        "phi_neg1": catalog.sweedler_scaling(H, -1, "phi_neg1"),
        "phi_2": catalog.sweedler_scaling(H, 2, "phi_2"),
        "phi_neg3": catalog.sweedler_scaling(H, -3, "phi_neg3"),
        "phi_half": catalog.sweedler_scaling(H, "1/2", "phi_half"),
        "S2": catalog.square_of_antipode(H, "S2"),
    }
    for name, a in auts.items():
        _add(files, manifest, "automorphisms", name, automorphism_to_dict(a))
    pm, S2 = auts["phi_neg1"], auts["S2"]
    _add(files, manifest, "aut_fusions", "rescale", aut_fusion_to_dict(j))

    g = catalog.sweedler_grouplike(H)
    pairs = {
        "eps_eta": make_pair(H, H, H.counit, H.unit, e, e, name="eps_eta"),
        "eps_eta_neg": make_pair(H, H, H.counit, H.unit, pm, pm, name="eps_eta_neg"),
        "eps_g": make_pair(H, H, H.counit, g, S2, e, name="eps_g"),
        "eps_g_neg": make_pair(H, H, H.counit, g, e, pm, name="eps_g_neg"),
    }
    regular = catalog.yd_regular(H, "regular")
    objects = {
        "regular": regular,
        "antiYD": iso_backward(pairs["eps_g"], regular),
        "unit": identity_cell(H),
        "trivial": catalog.yd_trivial(H, "trivial"),
        "regular_neg": iso_backward(pairs["eps_eta_neg"], regular),
        "bridge": fusion_cell(AutFusion(H, H2, rescale, "rescale")),
    }
    for name, obj in objects.items():
        obj.name = name
        _add(files, manifest, "objects", name, object_to_dict(obj))
    for name, p in pairs.items():
        _add(files, manifest, "pairs", name, pair_to_dict(p))
    _group_section(files, manifest)
    files["manifest.json"] = manifest
    return files


def cyclic2_workspace() -> dict:
    files: dict = {}
    manifest: dict = {"name": "cyclic2"}
    Z2 = cyclic(2, "Z2")
    Q = catalog.group_algebra(Z2, "qz2")
    e = Q.identity_aut()
    _add(files, manifest, "bimonads", "qz2", bimonad_to_dict(Q))
    sign = LinMap([[1, -1]])
    gen = LinMap([[0], [1]])
    pairs = {
        "eps_eta": make_pair(Q, Q, Q.counit, Q.unit, e, e, name="eps_eta"),
        "sign_g": make_pair(Q, Q, sign, gen, e, e, name="sign_g"),
    }
    objects = {
        "regular": catalog.yd_regular(Q, "regular"),
        "unit": identity_cell(Q),
        "sign": build_yd_from_action_coaction(Q, Q, sign, gen, e, e, "sign"),
    }
    for name, obj in objects.items():
        obj.name = name
        _add(files, manifest, "objects", name, object_to_dict(obj))
    for name, p in pairs.items():
        _add(files, manifest, "pairs", name, pair_to_dict(p))
    _add(files, manifest, "groups", "Z2", group_to_dict(Z2))
    _add(files, manifest, "fusions", "Z2_id", fusion_to_dict(FusionMap.identity(Z2)))
    _add(files, manifest, "systems", "z2", system_to_dict("z2", ["Z2"] * 2, ["Z2_id"]))
    files["manifest.json"] = manifest
    return files


def trivial_workspace() -> dict:
    files: dict = {}
    manifest: dict = {"name": "trivial"}
    k = catalog.trivial_bimonad("k")
    _add(files, manifest, "bimonads", "k", bimonad_to_dict(k))
    _add(files, manifest, "objects", "unit", object_to_dict(identity_cell(k)))
    e = k.identity_aut()
    _add(files, manifest, "pairs", "eps_eta", pair_to_dict(make_pair(k, k, k.counit, k.unit, e, e, name="eps_eta")))
    files["manifest.json"] = manifest
    return files


BUILDERS = {"trivial": trivial_workspace, "sweedler": sweedler_workspace, "cyclic2": cyclic2_workspace}


def generate(name: str) -> dict:
    return BUILDERS[name]()


def write_all(dest: Path | None = None) -> None:
    dest = dest or bundled_root()
    for name in NAMES:
        for rel, data in generate(name).items():
            path = dest / name / rel
            path.parent.mkdir(parents=True, exist_ok=True)
            write_json(path, data)


if __name__ == "__main__":
    write_all(Path(sys.argv[1]) if len(sys.argv) > 1 else None)
