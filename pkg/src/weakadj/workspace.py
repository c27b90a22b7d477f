"""JSON workspaces: named bases, objects, maps, V-categories, V-functors and
weights, decoded into kernel values and validated on load.

Every section is a mapping from names to entries.  Entries are either
explicit tables or one of a few constructors (``poset``, ``self_enriched``,
``representable`` ...); :func:`dump_vcategory` and friends always write the
explicit form, so a dumped workspace reloads without the constructors.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .base import (BASEPOINT, Base, BaseKind, VMap, VObj, category, chaotic_category,
                   discrete_category, get_base, validate_vmap)
from .errors import LawViolation, PreconditionError
from .interval import GlobalHomotopyWitness, Interval, interval_violations
from .slicebase import SObj, slice_base
from .vcat import (VCategory, VFunctor, compose_functors, from_ordinary, from_poset,
                   full_sub, identity_functor, inclusion, opposite, self_enriched,
                   vcategory_violations, vfunctor_violations)
from .weights import (Weight, canonical_enough_weight, constant_unit, coproduct_weight,
                      copower_weight, free_parallel_pair, interval_weight, power_weight,
                      representable, weight_violations)

SCHEMA_VERSION = 1
SECTIONS = ("bases", "vobjects", "vmaps", "vcategories", "vfunctors", "diagrams", "weights",
            "families")


class WorkspaceError(PreconditionError):
    """A workspace file that does not parse, resolve or validate."""


@dataclass
class Workspace:
    bases: Dict[str, Base] = field(default_factory=dict)
    vobjects: Dict[str, VObj] = field(default_factory=dict)
    vmaps: Dict[str, VMap] = field(default_factory=dict)
    vcategories: Dict[str, VCategory] = field(default_factory=dict)
    vfunctors: Dict[str, VFunctor] = field(default_factory=dict)
    diagrams: Dict[str, VFunctor] = field(default_factory=dict)
    weights: Dict[str, Weight] = field(default_factory=dict)
    families: Dict[str, Tuple[str, List[str]]] = field(default_factory=dict)
    commands: List[List[str]] = field(default_factory=list)
    expect: List[Optional[int]] = field(default_factory=list)
    notes: Dict[str, str] = field(default_factory=dict)
    sources: List[str] = field(default_factory=list)

    def counts(self) -> Dict[str, int]:
        return {s: len(getattr(self, s)) for s in SECTIONS}

    def lookup(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise WorkspaceError(f"unresolved reference: no {section[:-1]} named {name!r}")
        return table[name]

    def functor(self, name: str) -> VFunctor:
        """A V-functor from ``vfunctors`` or ``diagrams``."""
        if name in self.diagrams:
            return self.diagrams[name]
        return self.lookup("vfunctors", name)

    def members(self, ref: str) -> List[str]:
        """A family by name, or an inline comma-separated list."""
        if ref in self.families:
            return list(self.families[ref][1])
        return [m for m in ref.split(",") if m]

    def merge(self, other: "Workspace") -> None:
        for s in SECTIONS:
            mine, theirs = getattr(self, s), getattr(other, s)
            clash = sorted(k for k in set(mine) & set(theirs)
                           if not (s == "bases" and mine[k] is theirs[k]))
            if clash:
                raise WorkspaceError(f"duplicate {s[:-1]} names across files: {clash}")
            mine.update(theirs)
        self.commands.extend(other.commands)
        self.expect.extend(other.expect)
        self.notes.update(other.notes)
        self.sources.extend(other.sources)


# ---------------------------------------------------------------------------
# bases and objects


def _base_from(spec) -> Base:
    if isinstance(spec, str):
        return get_base(spec)
    kind = spec.get("kind")
    if kind not in {k.value for k in BaseKind}:
        raise WorkspaceError(f"unknown base kind {kind!r}")
    return slice_base(kind) if spec.get("sliced") else get_base(kind)


def base_json(base: Base):
    if base.sliced:
        return {"kind": base.kind.value, "sliced": True}
    return base.kind.value


def _plain_vobj(base: Base, e: Dict, resolve) -> VObj:
    kind = base.kind
    if "elements" in e:
        els = list(e["elements"])
        if kind is BaseKind.CAT:
            return discrete_category(els)
        if kind is BaseKind.POINTED and BASEPOINT not in els:
            els.append(BASEPOINT)
        return VObj(kind, els)
    if "discrete" in e:
        return discrete_category(e["discrete"])
    if "chaotic" in e:
        return chaotic_category(e["chaotic"])
    if "objects" in e:
        if kind is not BaseKind.CAT:
            raise WorkspaceError("objects/morphisms only make sense in CatCanonical")
        mor = {m: tuple(ab) for m, ab in e.get("morphisms", {}).items()}
        comp = {(g, f): h for g, f, h in e.get("compose", [])}
        return category(e["objects"], mor, comp)
    plain = base.parent if base.sliced else base
    if e.get("unit"):
        return plain.unit
    if "tensor" in e:
        x, y = (resolve(n) for n in e["tensor"])
        return base.tensor(x, y)
    if "internal_hom" in e:
        x, y = (resolve(n) for n in e["internal_hom"])
        return base.internal_hom(x, y)
    raise WorkspaceError(f"cannot read object entry with keys {sorted(e)}")


def decode_vobj(e: Dict, bases: Dict[str, Base], resolve=None) -> VObj:
    """An object entry; ``base`` names a base or ``kind``/``sliced`` give one."""
    if "base" in e:
        if e["base"] not in bases:
            raise WorkspaceError(f"unresolved reference: no base named {e['base']!r}")
        base = bases[e["base"]]
    else:
        base = _base_from(e)
    resolve = resolve or (lambda n: (_ for _ in ()).throw(WorkspaceError(f"no object {n!r}")))
    x = _plain_vobj(base, e, resolve)
    if base.sliced and not isinstance(x, SObj):
        aug = e.get("augmentation")
        if aug is None:
            if len(base.parent.unit.elements) != 1:
                raise WorkspaceError("objects of a sliced base need an augmentation")
            aug = {a: base.unit_gen for a in x.elements}
        aug = dict(aug)
        if base.kind is BaseKind.POINTED:
            aug.setdefault(BASEPOINT, BASEPOINT)
        x = base.wrap(x, aug)
    v = base.validate(x)
    if v:
        raise LawViolation("invalid object", v)
    return x


def vobj_json(x: VObj) -> Dict[str, Any]:
    """Explicit, self-describing form of an object (identities are implicit)."""
    out: Dict[str, Any] = {"kind": x.kind.value}
    if isinstance(x, SObj):
        out["sliced"] = True
        out["augmentation"] = {e: x.aug[e] for e in x.elements}
    if x.discrete:
        out["elements"] = list(x.elements)
        return out
    out["objects"] = list(x.objects)
    out["morphisms"] = {e: [x.dom[e], x.cod[e]] for e in x.elements if x.dom[e] != e}
    out["compose"] = sorted([g, f, h] for (g, f), h in x.comp.items()
                            if not x.is_identity(g) and not x.is_identity(f))
    return out


def vmap_json(f: VMap) -> Dict[str, str]:
    return {e: f.fn[e] for e in f.source.elements}


def interval_json(iv: Interval) -> Dict[str, Any]:
    return {"J": vobj_json(iv.J), "d": vmap_json(iv.d), "c": vmap_json(iv.c),
            "e": vmap_json(iv.e)}


def decode_interval(e: Dict) -> Interval:
    J = decode_vobj(e["J"], {})
    base = J.base if isinstance(J, SObj) else get_base(J.kind)
    I = base.unit
    iv = Interval(J, VMap(I, J, dict(e["d"])), VMap(I, J, dict(e["c"])), VMap(J, I, dict(e["e"])))
    v = interval_violations(iv)
    if v:
        raise LawViolation("invalid interval", v)
    return iv


# ---------------------------------------------------------------------------
# V-categories


def _closure(elements, pairs):
    leq = {(a, a) for a in elements} | {tuple(p) for p in pairs}
    changed = True
    while changed:
        changed = False
        for (a, b), (c, d) in itertools.product(list(leq), repeat=2):
            if b == c and (a, d) not in leq:
                leq.add((a, d))
                changed = True
    return leq


def _general_vcategory(base, e, resolve_obj, name) -> VCategory:
    objects = list(e["objects"])
    homs: Dict[Tuple[str, str], VObj] = {}
    for a, b, h in e["homs"]:
        homs[(a, b)] = resolve_obj(h)
    missing = [(a, b) for a in objects for b in objects if (a, b) not in homs]
    if missing:
        raise WorkspaceError(f"vcategory {name!r}: missing hom-objects {missing}")
    table: Dict[Tuple, str] = {}
    for a, b, c, g, f, h in e["compose"]:
        table[(a, b, c, g, f)] = h

    def composer(a, b, c, g, f):
        try:
            return table[(a, b, c, g, f)]
        except KeyError:
            raise LawViolation(f"composition table has no entry for ({g}∘{f}) at ({a},{b},{c})",
                               [(a, b, c, g, f)])

    return VCategory(base, objects, homs, composer, dict(e["identities"]), name=name)


def decode_vcategory(e: Dict, ws: Workspace, name: str) -> VCategory:
    def obj(ref):
        if isinstance(ref, str):
            return ws.lookup("vobjects", ref)
        return decode_vobj(ref, ws.bases, obj)

    base = ws.bases.get(e.get("base")) if "base" in e else None
    if "full_sub" in e:
        spec = e["full_sub"]
        return full_sub(ws.lookup("vcategories", spec["of"]), spec["objects"], name=name)
    if "opposite" in e:
        c = opposite(ws.lookup("vcategories", e["opposite"]))
        c.name = name
        return c
    if base is None:
        raise WorkspaceError(f"vcategory {name!r} needs a base")
    if "poset" in e:
        leq = _closure(e["poset"]["elements"], e["poset"].get("leq", []))
        return from_poset(base, e["poset"]["elements"], lambda a, b: (a, b) in leq, name=name)
    if "self_enriched" in e:
        return self_enriched(base, {k: obj(v) for k, v in e["self_enriched"].items()}, name=name)
    if "ordinary" in e:
        o = e["ordinary"]
        comp = {(g, f): h for g, f, h in o.get("compose", [])}
        return from_ordinary(base, o["objects"], {m: tuple(ab) for m, ab in o["morphisms"].items()},
                             comp, name=name)
    if "objects" in e:
        return _general_vcategory(base, e, obj, name)
    raise WorkspaceError(f"cannot read vcategory entry with keys {sorted(e)}")


def dump_vcategory(c: VCategory) -> Dict[str, Any]:
    """Explicit triple-table form; hom-objects are written inline."""
    homs = [[a, b, vobj_json(c.hom(a, b))] for a in c.objects for b in c.objects]
    comp = []
    for a, b, cc in itertools.product(c.objects, repeat=3):
        for g in c.hom(b, cc).elements:
            for f in c.hom(a, b).elements:
                if c.base.pointed and BASEPOINT in (g, f):
                    continue
                comp.append([a, b, cc, g, f, c.compose(a, b, cc, g, f)])
    return {"objects": list(c.objects), "homs": homs,
            "identities": {a: c.ident[a] for a in c.objects}, "compose": comp}


# ---------------------------------------------------------------------------
# V-functors and weights


def decode_vfunctor(e: Dict, ws: Workspace, name: str) -> VFunctor:
    if "identity" in e:
        F = identity_functor(ws.lookup("vcategories", e["identity"]))
    elif "inclusion" in e:
        sub, c = (ws.lookup("vcategories", n) for n in e["inclusion"])
        F = inclusion(sub, c)
    elif "compose" in e:
        G, F0 = (ws.functor(n) for n in e["compose"])
        F = compose_functors(G, F0)
    else:
        src = ws.lookup("vcategories", e["source"])
        tgt = ws.lookup("vcategories", e["target"])
        act = {(a, b): dict(m) for a, b, m in e["homs"]}
        F = VFunctor(src, tgt, dict(e["objects"]), act)
    F.name = name
    return F


def dump_vfunctor(F: VFunctor, source: str, target: str) -> Dict[str, Any]:
    S = F.source
    return {"source": source, "target": target,
            "objects": {a: F(a) for a in S.objects},
            "homs": [[a, b, {x: F.on(a, b, x) for x in S.hom(a, b).elements}]
                     for a in S.objects for b in S.objects]}


def decode_weight(e: Dict, ws: Workspace, name: str) -> Weight:
    def shape(ref, op=False):
        D = ws.lookup("vcategories", ref)
        if op:
            from .weakcolim import op_shape
            D = op_shape(D)
        return D

    op = bool(e.get("op"))
    if "representable" in e:
        D, d = e["representable"]
        W = representable(shape(D, op), d)
    elif "constant_unit" in e:
        W = constant_unit(shape(e["constant_unit"], op))
    elif "power" in e:
        W = power_weight(ws.bases[e["power"]["base"]], ws.lookup("vobjects", e["power"]["vobject"]))
    elif "isoinserter" in e:
        from .interval import standard_interval
        base = ws.bases[e["isoinserter"]]
        W = interval_weight(free_parallel_pair(base), standard_interval(base))
    elif "enough" in e:
        D = shape(e["enough"])
        W = canonical_enough_weight(D.base, D).Q
    elif "coproduct" in e:
        W = coproduct_weight([ws.lookup("weights", n) for n in e["coproduct"]])
    elif "copower" in e:
        X, W0 = e["copower"]
        W = copower_weight(ws.lookup("vobjects", X), ws.lookup("weights", W0))
    elif "shape" in e:
        D = shape(e["shape"], op)
        at = {d: ws.lookup("vobjects", n) if isinstance(n, str) else decode_vobj(n, ws.bases)
              for d, n in e["at"].items()}
        table = {(d, d2, k, w): r for d, d2, k, w, r in e["act"]}

        def act(d, d2, k, w):
            try:
                return table[(d, d2, k, w)]
            except KeyError:
                raise LawViolation(f"weight action has no entry for {k} acting on {w}",
                                   [(d, d2, k, w)])

        W = Weight(D, at, act)
    else:
        raise WorkspaceError(f"cannot read weight entry with keys {sorted(e)}")
    W.name = name
    return W


def dump_weight(W: Weight, shape: str, op: bool = False) -> Dict[str, Any]:
    D = W.shape
    act = []
    for d, d2 in itertools.product(D.objects, repeat=2):
        for k in D.hom(d, d2).elements:
            for w in W.at[d].elements:
                if W.base.pointed and BASEPOINT in (k, w):
                    continue
                act.append([d, d2, k, w, W.act(d, d2, k, w)])
    out = {"shape": shape, "at": {d: vobj_json(W.at[d]) for d in D.objects}, "act": act}
    if op:
        out["op"] = True
    return out


# ---------------------------------------------------------------------------
# loading


def _validate_entry(section: str, name: str, value) -> None:
    if section == "vmaps":
        v = validate_vmap(value)
    elif section == "vcategories":
        v = vcategory_violations(value)
    elif section == "vfunctors":
        v = vfunctor_violations(value)
    elif section == "weights":
        v = weight_violations(value)
    else:
        return
    if v:
        raise LawViolation(f"{section[:-1]} {name!r} fails validation: {v[0]}", v)


def load_workspace(data: Dict, source: str = "<memory>", validate: bool = True) -> Workspace:
    """Decode a parsed workspace document (entries in file order)."""
    if not isinstance(data, dict):
        raise WorkspaceError("a workspace is a JSON object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise WorkspaceError(f"unsupported schema_version {version!r}")
    ws = Workspace(sources=[source])
    for name, spec in data.get("bases", {}).items():
        ws.bases[name] = _base_from(spec)

    def note(section, name, e):
        if isinstance(e, dict) and "note" in e:
            ws.notes[f"{section}.{name}"] = e["note"]

    def obj(n):
        return ws.lookup("vobjects", n)

    for name, e in data.get("vobjects", {}).items():
        ws.vobjects[name] = decode_vobj(e, ws.bases, obj)
        note("vobjects", name, e)
    for name, e in data.get("vmaps", {}).items():
        ws.vmaps[name] = VMap(obj(e["source"]), obj(e["target"]), dict(e["map"]))
        note("vmaps", name, e)
    decoders = (("vcategories", decode_vcategory), ("vfunctors", decode_vfunctor),
                ("diagrams", decode_vfunctor), ("weights", decode_weight))
    if validate:
        for name, f in ws.vmaps.items():
            _validate_entry("vmaps", name, f)
    for section, dec in decoders:
        for name, e in data.get(section, {}).items():
            value = dec(e, ws, name)
            if validate:
                _validate_entry(section, name, value)
            getattr(ws, section)[name] = value
            note(section, name, e)
    for name, e in data.get("families", {}).items():
        c = ws.lookup("vcategories", e["category"])
        bad = [m for m in e["members"] if m not in c.objects]
        if bad:
            raise WorkspaceError(f"family {name!r}: {bad} are not objects of {e['category']!r}")
        ws.families[name] = (e["category"], list(e["members"]))
        note("families", name, e)
    for cmd in data.get("commands", []):
        expect = None
        if isinstance(cmd, dict):
            expect = cmd.get("expect")
            if expect is not None and expect not in range(4):
                raise WorkspaceError(f"command {cmd.get('argv')!r}: expect must be an exit status 0-3")
            cmd = cmd["argv"]
        ws.commands.append(cmd.split() if isinstance(cmd, str) else [str(a) for a in cmd])
        ws.expect.append(expect)
    return ws


def parse_workspace(path, validate: bool = True) -> Workspace:
    """Load and validate a workspace file; parse errors carry line and column."""
    path = Path(path)
    if not path.exists():
        raise WorkspaceError(f"no such workspace file: {path}")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise WorkspaceError(f"{path}: parse error at line {exc.lineno}, column {exc.colno}: "
                             f"{exc.msg}") from None
    return load_workspace(data, str(path), validate)


def is_workspace_document(data) -> bool:
    return isinstance(data, dict) and "schema_version" in data and "bases" in data


def load_fixture_dir(directory) -> Workspace:
    """Merge every workspace document in a directory (sorted by file name)."""
    ws = Workspace()
    for p in sorted(Path(directory).glob("*.json")):
        data = json.loads(p.read_text())
        if is_workspace_document(data):
            ws.merge(load_workspace(data, str(p)))
    return ws


def fixture_dir() -> Path:
    return Path(__file__).parent / "fixtures"


# ---------------------------------------------------------------------------
# witnesses


def homotopy_json(w: GlobalHomotopyWitness) -> Dict[str, Any]:
    return {"interval": interval_json(w.interval), "h": vmap_json(w.h)}


def decode_homotopy(e: Dict, X: VObj) -> GlobalHomotopyWitness:
    iv = decode_interval(e["interval"])
    return GlobalHomotopyWitness(iv, VMap(iv.J, X, dict(e["h"])))
