"""Loading and saving named registries of bimonads, automorphisms, objects and pairs."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

from .bimonad import (AutFusion, Bimonad, ZeroAutomorphism, braided_lambda,
                      verify_bimonad, verify_fusion, verify_zero_automorphism)
from .errors import IntegrityError, MalformedInput, YDLabError
from .exactmat import LinMap, eq, format_matrix, parse_matrix
from .groupsys import FiniteGroup, FusionMap, GradedGroupSystem
from .involution import InvolutionPair, check_involution_pair, make_pair
from .ydcat import GradedYDObject, verify_yd

ENV_VAR = "YDLAB_WORKSPACE"
DEFAULT_WORKSPACE = "sweedler"
SECTIONS = ("groups", "fusions", "systems", "bimonads", "automorphisms", "aut_fusions", "objects", "pairs")


@dataclass
class Workspace:
    name: str = ""
    root: Path | None = None
    groups: dict[str, FiniteGroup] = field(default_factory=dict)
    fusions: dict[str, FusionMap] = field(default_factory=dict)
    systems: dict[str, GradedGroupSystem] = field(default_factory=dict)
    bimonads: dict[str, Bimonad] = field(default_factory=dict)
    automorphisms: dict[str, ZeroAutomorphism] = field(default_factory=dict)
    aut_fusions: dict[str, AutFusion] = field(default_factory=dict)
    objects: dict[str, GradedYDObject] = field(default_factory=dict)
    pairs: dict[str, InvolutionPair] = field(default_factory=dict)

    def _get(self, section: str, name: str):
        reg = getattr(self, section)
        if name not in reg:
            known = ", ".join(sorted(reg)) or "none"
            raise MalformedInput(f"unknown {section[:-1].replace('_', ' ')} {name!r} (known: {known})")
        return reg[name]

    def bimonad(self, name: str) -> Bimonad:
        return self._get("bimonads", name)

    def system(self, name: str) -> GradedGroupSystem:
        return self._get("systems", name)

    def object(self, name: str) -> GradedYDObject:
        return self._get("objects", name)

    def pair(self, name: str) -> InvolutionPair:
        return self._get("pairs", name)

    def aut(self, name: str, owner: Bimonad) -> ZeroAutomorphism:
        """Automorphism of ``owner`` by name; ``id`` always resolves."""
        if name == "id":
            return owner.identity_aut()
        a = self._get("automorphisms", name)
        if not a.owner.same_as(owner):
            raise MalformedInput(f"automorphism {name!r} belongs to {a.owner.name}, not {owner.name}")
        return a

    def auts_of(self, owner: Bimonad) -> list[ZeroAutomorphism]:
        return [owner.identity_aut()] + [a for a in self.automorphisms.values() if a.owner.same_as(owner)]

    def aut_name(self, a: ZeroAutomorphism) -> str | None:
        """Registered name of an automorphism with the same matrix, if any."""
        if a.is_identity():
            return "id"
        for name, b in self.automorphisms.items():
            if b.owner.same_as(a.owner) and eq(b.map, a.map):
                return name
        return None

    def fusion_between(self, source: Bimonad, target: Bimonad) -> AutFusion:
        if source.same_as(target):
            return AutFusion.identity(source)
        for j in self.aut_fusions.values():
            if j.source.same_as(source) and j.target.same_as(target):
                return j
            if j.source.same_as(target) and j.target.same_as(source):
                return j.inverse()
        raise MalformedInput(f"no fusion map registered between {source.name} and {target.name}")

    def canonical(self, a: ZeroAutomorphism) -> ZeroAutomorphism:
        own = self.automorphisms.get(a.name)
        if own is not None and own.owner.same_as(a.owner) and eq(own.map, a.map):
            return a
        name = self.aut_name(a)
        if name is not None and name != a.name:
            return ZeroAutomorphism(a.owner, a.map, a.inverse, name)
        return a

    def renamed(self, obj: GradedYDObject) -> GradedYDObject:
        """The same object with its grading labelled by registered names where possible."""
        return obj.regraded(self.canonical(obj.alpha), self.canonical(obj.beta))


# Matrix and record helpers.

def _need(data: dict, key: str, where: str):
    if key not in data:
        raise MalformedInput(f"{where}: missing key {key!r}")
    return data[key]


def _matrix(data: dict, key: str, where: str, shape: tuple[int, int] | None = None) -> LinMap:
    m = parse_matrix(_need(data, key, where), f"{where}.{key}")
    if shape is not None and m.shape != shape:
        raise MalformedInput(f"{where}.{key}: expected shape {shape[0]}x{shape[1]}, got {m.shape[0]}x{m.shape[1]}")
    return m


def _int(data: dict, key: str, where: str) -> int:
    v = _need(data, key, where)
    if not isinstance(v, int) or isinstance(v, bool) or v < 0:
        raise MalformedInput(f"{where}.{key}: expected a non-negative integer")
    return v


def _integrity(report, where: str) -> None:
    if not report.passed:
        raise IntegrityError(f"{where}: identity {report.failed_labels[0]!r} fails")


# Parsers for each record kind.

def parse_group(data: dict, where: str = "group") -> FiniteGroup:
    n = _int(data, "order", where)
    table = _need(data, "table", where)
    if (not isinstance(table, list) or len(table) != n
            or not all(isinstance(r, list) and len(r) == n for r in table)):
        raise MalformedInput(f"{where}.table: expected a {n}x{n} array")
    if not all(isinstance(v, int) and not isinstance(v, bool) for r in table for v in r):
        raise MalformedInput(f"{where}.table: entries must be integers")
    try:
        return FiniteGroup(table, data.get("unit"), data.get("name", ""))
    except MalformedInput as exc:
        raise IntegrityError(f"{where}: {exc}") from None


def parse_fusion(data: dict, ws: Workspace, where: str = "fusion") -> FusionMap:
    src = ws._get("groups", _need(data, "source", where))
    dst = ws._get("groups", _need(data, "target", where))
    images = _need(data, "images", where)
    if not isinstance(images, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in images):
        raise MalformedInput(f"{where}.images: expected a list of integers")
    try:
        return FusionMap(src, dst, images)
    except YDLabError as exc:
        raise IntegrityError(f"{where}: {exc}") from None


def parse_system(data: dict, ws: Workspace, where: str = "system") -> GradedGroupSystem:
    groups = [ws._get("groups", g) for g in _need(data, "groups", where)]
    fusions = [ws._get("fusions", f) for f in _need(data, "fusions", where)]
    try:
        return GradedGroupSystem(groups, fusions, data.get("name", ""))
    except YDLabError as exc:
        raise IntegrityError(f"{where}: {exc}") from None


def parse_bimonad(data: dict, where: str = "bimonad") -> Bimonad:
    name = _need(data, "name", where)
    n = _int(data, "dim", where)
    mult = _matrix(data, "mult", where, (n, n * n))
    unit = _matrix(data, "unit", where, (n, 1))
    comult = _matrix(data, "comult", where, (n * n, n))
    counit = _matrix(data, "counit", where, (1, n))
    antipode = _matrix(data, "antipode", where, (n, n)) if "antipode" in data else None
    if "lambda" in data:
        lam = _matrix(data, "lambda", where, (n * n, n * n))
        b = Bimonad(name, n, mult, unit, comult, counit, lam, antipode)
    elif data.get("braided"):
        b = Bimonad.braided(name, mult, unit, comult, counit, antipode)
    else:
        raise MalformedInput(f"{where}: needs a 'lambda' matrix or 'braided': true")
    _integrity(verify_bimonad(b), where)
    return b


def parse_automorphism(data: dict, ws: Workspace, name: str, where: str = "automorphism") -> ZeroAutomorphism:
    b = ws.bimonad(_need(data, "bimonad", where))
    m = _matrix(data, "matrix", where, (b.dim, b.dim))
    _integrity(verify_zero_automorphism(b, m, name), where)
    return ZeroAutomorphism.of(b, m, name)


def parse_aut_fusion(data: dict, ws: Workspace, name: str, where: str = "aut fusion") -> AutFusion:
    src = ws.bimonad(_need(data, "source", where))
    dst = ws.bimonad(_need(data, "target", where))
    iso = _matrix(data, "matrix", where, (dst.dim, src.dim))
    try:
        j = AutFusion(src, dst, iso, name)
    except YDLabError as exc:
        raise IntegrityError(f"{where}: {exc}") from None
    _integrity(verify_fusion(j), where)
    return j


def _grading(data: dict, key: str, ws: Workspace, owner: Bimonad, where: str) -> ZeroAutomorphism:
    v = _need(data, key, where)
    if isinstance(v, str):
        return ws.aut(v, owner)
    m = _matrix(data, key, where, (owner.dim, owner.dim))
    return ws.canonical(ZeroAutomorphism.of(owner, m, ""))


def parse_object(data: dict, ws: Workspace, name: str, where: str = "object") -> GradedYDObject:
    F = ws.bimonad(_need(data, "source", where))
    F1 = ws.bimonad(_need(data, "target", where))
    m = _int(data, "xdim", where)
    psi = _matrix(data, "psi", where, (m * F.dim, F1.dim * m))
    phi = _matrix(data, "phi", where, (F1.dim * m, m * F.dim))
    alpha = _grading(data, "alpha", ws, F1, where)
    beta = _grading(data, "beta", ws, F, where)
    obj = GradedYDObject(F, F1, m, psi, phi, alpha, beta, name)
    _integrity(verify_yd(obj), where)
    return obj


def parse_pair(data: dict, ws: Workspace, name: str, where: str = "pair") -> InvolutionPair:
    F = ws.bimonad(_need(data, "bimonad_source", where))
    F1 = ws.bimonad(_need(data, "bimonad_target", where))
    f = _matrix(data, "f", where, (1, F1.dim))
    g = _matrix(data, "g", where, (F1.dim, 1))
    alpha = ws.aut(_need(data, "alpha", where), F1)
    beta = ws.aut(_need(data, "beta", where), F)
    fname = data.get("fusion", "identity")
    fusion = (AutFusion.identity(F) if fname == "identity"
              else ws._get("aut_fusions", fname))
    p = make_pair(F, F1, f, g, alpha, beta, fusion, name)
    _integrity(check_involution_pair(p), where)
    return p


# Serialisers (inverse of the parsers above).

def group_to_dict(g: FiniteGroup) -> dict:
    return {"name": g.name, "order": g.order, "unit": int(g.unit), "table": g.table.tolist()}


def fusion_to_dict(f: FusionMap) -> dict:
    return {"source": f.source.name, "target": f.target.name, "images": f.images.tolist()}


def bimonad_to_dict(b: Bimonad, braided: bool = True) -> dict:
    out: dict[str, Any] = {
        "name": b.name, "dim": b.dim,
        "mult": format_matrix(b.mult), "unit": format_matrix(b.unit),
        "comult": format_matrix(b.comult), "counit": format_matrix(b.counit),
    }
    if braided and eq(b.lam, braided_lambda(b, b.id)):
        out["braided"] = True
    else:
        out["lambda"] = format_matrix(b.lam)
    if b.antipode is not None:
        out["antipode"] = format_matrix(b.antipode)
    return out


def automorphism_to_dict(a: ZeroAutomorphism) -> dict:
    return {"name": a.name, "bimonad": a.owner.name, "matrix": format_matrix(a.map)}


def aut_fusion_to_dict(j: AutFusion) -> dict:
    return {"name": j.name, "source": j.source.name, "target": j.target.name,
            "matrix": format_matrix(j.iso)}


def _aut_ref(a: ZeroAutomorphism, ws: Workspace | None):
    if ws is not None and a.name in ws.automorphisms and eq(ws.automorphisms[a.name].map, a.map):
        return a.name
    name = ws.aut_name(a) if ws is not None else ("id" if a.is_identity() else a.name or None)
    return name if name is not None else format_matrix(a.map)


def object_to_dict(obj: GradedYDObject, ws: Workspace | None = None) -> dict:
    return {"name": obj.name, "source": obj.source.name, "target": obj.target.name, "xdim": obj.xdim,
            "psi": format_matrix(obj.psi), "phi": format_matrix(obj.phi),
            "alpha": _aut_ref(obj.alpha, ws), "beta": _aut_ref(obj.beta, ws)}


def pair_to_dict(p: InvolutionPair) -> dict:
    return {"name": p.name, "bimonad_source": p.source.name, "bimonad_target": p.target.name,
            "f": format_matrix(p.f.row), "g": format_matrix(p.g.col),
            "alpha": p.alpha.name, "beta": p.beta.name,
            "fusion": "identity" if p.fusion.iso is None else p.fusion.name}


def system_to_dict(name: str, group_names: list[str], fusion_names: list[str]) -> dict:
    return {"name": name, "groups": group_names, "fusions": fusion_names}


# Manifest handling.

def _read_json(path: Path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise MalformedInput(f"{path}: cannot read ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from None


def bundled_root() -> Path:
    return Path(str(resources.files("ydlab") / "data"))


def resolve_manifest(location: str | os.PathLike | None = None) -> Path:
    """Path to a manifest from an explicit argument, the environment, or the default bundle.

    A bare name such as ``sweedler`` selects a bundled workspace; a directory
    selects its ``manifest.json``.
    """
    location = location or os.environ.get(ENV_VAR) or DEFAULT_WORKSPACE
    p = Path(location)
    if p.is_dir():
        return p / "manifest.json"
    if p.exists():
        return p
    bundled = bundled_root() / str(location) / "manifest.json"
    if bundled.exists():
        return bundled
    raise MalformedInput(f"workspace {str(location)!r} is neither a manifest path nor a bundled workspace")


def load_workspace(manifest: str | os.PathLike | None = None) -> Workspace:
    """Load every component listed in the manifest, verifying each eagerly.

    Loading stops at the first problem; the error message carries the file
    path and, for failed axioms, the identity label.
    """
    path = resolve_manifest(manifest)
    data = _read_json(path)
    if not isinstance(data, dict):
        raise MalformedInput(f"{path}: manifest must be a JSON object")
    unknown = set(data) - set(SECTIONS) - {"name", "description"}
    if unknown:
        raise MalformedInput(f"{path}: unknown manifest keys {sorted(unknown)}")
    ws = Workspace(name=data.get("name", path.parent.name), root=path.parent)
    for section in SECTIONS:
        entries = data.get(section, [])
        if not isinstance(entries, list):
            raise MalformedInput(f"{path}.{section}: expected a list of file names")
        for rel in entries:
            file = path.parent / rel
            record = _read_json(file)
            if not isinstance(record, dict):
                raise MalformedInput(f"{file}: expected a JSON object")
            where = str(file)
            name = record.get("name") or Path(rel).stem
            reg = getattr(ws, section)
            if name in reg or (section == "automorphisms" and name == "id"):
                raise MalformedInput(f"{where}: duplicate {section[:-1]} name {name!r}")
            if section == "groups":
                item = parse_group(record, where)
                item.name = name
            elif section == "fusions":
                item = parse_fusion(record, ws, where)
            elif section == "systems":
                item = parse_system(record, ws, where)
                item.name = name
            elif section == "bimonads":
                item = parse_bimonad(record, where)
            elif section == "automorphisms":
                item = parse_automorphism(record, ws, name, where)
            elif section == "aut_fusions":
                item = parse_aut_fusion(record, ws, name, where)
            elif section == "objects":
                item = parse_object(record, ws, name, where)
            else:
                item = parse_pair(record, ws, name, where)
            reg[name] = item
    return ws


def write_json(path: str | os.PathLike, data: Any) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(data, fh, indent=1)
        fh.write("\n")


def load_object_file(path: str | os.PathLike, ws: Workspace) -> GradedYDObject:
    data = _read_json(Path(path))
    if not isinstance(data, dict):
        raise MalformedInput(f"{path}: expected a JSON object")
    return parse_object(data, ws, data.get("name") or Path(path).stem, str(path))
