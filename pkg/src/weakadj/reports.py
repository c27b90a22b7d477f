"""Reports and serialised witnesses.

A report is a JSON document with a mandatory ``schema_version``.  Every
witness it carries names the workspace entries it refers to and stores
its data as explicit tables, so :func:`revalidate` can re-check it against
the defining invariants after a round trip through a file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from .base import VMap, base_of, get_base, is_iso
from .interval import GlobalHomotopyWitness, standard_interval
from .shrink import ShrinkWitness, _fragment, comparison_map, generated_fragment
from .slicebase import SObj
from .vcat import BipolarCertificate, point_functor, vcategory_violations
from .weights import (check_limit_cone, free_parallel_pair, interval_weight, isoinserter_diagram,
                      power_weight, pseudo_comparison, pseudo_cone_category)
from .workspace import (SCHEMA_VERSION, Workspace, decode_homotopy, decode_interval, decode_vobj,
                        homotopy_json, interval_json, vmap_json, vobj_json)

POSITIVE, NEGATIVE, PRECONDITION, INCONSISTENT = 0, 1, 2, 3
VERDICTS = {POSITIVE: "positive", NEGATIVE: "negative", PRECONDITION: "precondition-failure",
            INCONSISTENT: "internal-inconsistency"}


def plain(x):
    """JSON-ready copy: tuples become lists, keys become strings."""
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, tuple) else "|".join(map(str, k)): plain(v)
                for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [plain(v) for v in x]
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


@dataclass
class Report:
    command: List[str]
    status: int = POSITIVE
    result: Dict[str, Any] = field(default_factory=dict)
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    limit_instances: List[Any] = field(default_factory=list)
    budget: Dict[str, int] = field(default_factory=dict)
    usage: Dict[str, int] = field(default_factory=dict)
    error: Optional[str] = None
    timing: Optional[float] = None

    @property
    def verdict(self) -> str:
        return VERDICTS[self.status]

    def decide(self, positive: bool) -> None:
        self.status = POSITIVE if positive else NEGATIVE

    def to_json(self) -> Dict[str, Any]:
        out = {"schema_version": SCHEMA_VERSION, "command": list(self.command),
               "verdict": self.verdict, "status": self.status, "result": plain(self.result),
               "witnesses": plain(self.witnesses),
               "limit_instances": plain(self.limit_instances),
               "budget": dict(self.budget), "usage": dict(self.usage)}
        if self.error is not None:
            out["error"] = self.error
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 3)
        return out


def emit(report: Report, fmt: str = "json") -> bytes:
    """Byte-stable rendering: sorted keys and no wall-clock data unless asked."""
    doc = report.to_json()
    if fmt == "json":
        return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode()
    lines = [f"weakadj report (schema {doc['schema_version']})",
             f"command: {' '.join(doc['command'])}",
             f"verdict: {doc['verdict']} (exit {doc['status']})"]
    if "error" in doc:
        lines.append(f"error: {doc['error']}")
    for k in sorted(doc["result"]):
        v = doc["result"][k]
        text = v if isinstance(v, str) else json.dumps(v, sort_keys=True, ensure_ascii=False)
        lines.append(f"  {k}: {text}")
    if doc["witnesses"]:
        kinds = ", ".join(w["type"] for w in doc["witnesses"])
        lines.append(f"witnesses: {len(doc['witnesses'])} ({kinds})")
    for inst in doc["limit_instances"]:
        lines.append(f"limit instance: {json.dumps(inst, ensure_ascii=False)}")
    if doc["usage"]:
        lines.append("usage: " + ", ".join(f"{k}={doc['usage'][k]}" for k in sorted(doc["usage"])))
    if "timing_seconds" in doc:
        lines.append(f"time: {doc['timing_seconds']}s")
    return ("\n".join(lines) + "\n").encode()


# ---------------------------------------------------------------------------
# witness encoders


def shrink_json(w: ShrinkWitness, category: str) -> Dict[str, Any]:
    return {"type": "shrink", "category": category, "A": w.A, "B": w.B, "f": w.f,
            "section": w.section, "interval": interval_json(w.interval), "h": vmap_json(w.h)}


def map_json(f: VMap) -> Dict[str, Any]:
    return {"source": vobj_json(f.source), "target": vobj_json(f.target), "fn": vmap_json(f)}


def in_e_json(f: VMap, w: ShrinkWitness) -> Dict[str, Any]:
    """Shrink witness of a map of V inside the fragment it was found in."""
    base = base_of(f.source)
    if w.fragment is not None:
        strategy, s = "generated", w.fragment.meta["section"]
    else:
        strategy, s = "full", base.unname(base.internal_hom(f.target, f.source), w.section)
    return {"type": "in_e", "map": map_json(f), "strategy": strategy,
            "section_map": vmap_json(s), "section": w.section,
            "interval": interval_json(w.interval), "h": vmap_json(w.h)}


def homotopy_witness_json(category: str, A: str, B: str, f: str, g: str,
                          w: GlobalHomotopyWitness) -> Dict[str, Any]:
    return {"type": "homotopy", "category": category, "A": A, "B": B, "f": f, "g": g,
            **homotopy_json(w)}


def bipolar_json(cert: BipolarCertificate, category: str) -> Dict[str, Any]:
    return {"type": "bipolar", "category": category, "object": cert.object,
            "direction": cert.direction, "arrows": dict(sorted(cert.arrows.items())),
            "witnesses": [[a, g, homotopy_json(w)] for (a, g), w in sorted(cert.witnesses.items())]}


# ---------------------------------------------------------------------------
# re-validation


def _decode_map(e: Dict) -> VMap:
    src = decode_vobj(e["source"], {})
    tgt = decode_vobj(e["target"], {})
    return VMap(src, tgt, dict(e["fn"]))


def _base_for(x):
    return x.base if isinstance(x, SObj) else get_base(x.kind)


def _check_in_e(e: Dict, expected: Optional[VMap] = None) -> Tuple[bool, str]:
    f = _decode_map(e["map"])
    if expected is not None and (f.source != expected.source or f.target != expected.target
                                 or f.fn != expected.fn):
        return False, "witnessed map is not the map in question"
    base = _base_for(f.source)
    if base.validate_map(f):
        return False, "witnessed map is not a map"
    if e["strategy"] == "generated":
        s = VMap(f.target, f.source, dict(e["section_map"]))
        if base.validate_map(s):
            return False, "section is not a map"
        frag = generated_fragment(base, f, s)
        v = vcategory_violations(frag)
        if v:
            return False, f"generated fragment is not a V-category: {v[0]}"
    else:
        frag = _fragment(base, f)
    iv = decode_interval(e["interval"])
    w = ShrinkWitness("X", "Y", base.name(f), e["section"], iv,
                      VMap(iv.J, frag.hom("X", "X"), dict(e["h"])))
    v = w.violations(frag)
    return (not v, v[0] if v else "ok")


def _check_cone(W, S, apex: str, point: str) -> Tuple[bool, str]:
    ok = check_limit_cone(W, S, apex, point) is not None
    return ok, "ok" if ok else "cone is not a limit cone"


def revalidate(ws: Workspace, e: Dict) -> Tuple[bool, str]:
    """Re-check one serialised witness; ``(ok, reason)``."""
    t = e.get("type")
    if t == "shrink":
        C = ws.lookup("vcategories", e["category"])
        iv = decode_interval(e["interval"])
        w = ShrinkWitness(e["A"], e["B"], e["f"], e["section"], iv,
                          VMap(iv.J, C.hom(e["A"], e["A"]), dict(e["h"])))
        v = w.violations(C)
        return (not v, v[0] if v else "ok")
    if t == "in_e":
        return _check_in_e(e)
    if t == "homotopy":
        C = ws.lookup("vcategories", e["category"])
        X = C.hom(e["A"], e["B"])
        ok = decode_homotopy(e, X).verify_points(X, e["f"], e["g"])
        return ok, "ok" if ok else "homotopy endpoints or map do not check"
    if t == "bipolar":
        C = ws.lookup("vcategories", e["category"])
        wits = {}
        for a, g, hw in e["witnesses"]:
            X = C.hom(e["object"], a) if e["direction"] == "initial" else C.hom(a, e["object"])
            wits[(a, g)] = decode_homotopy(hw, X)
        cert = BipolarCertificate(e["object"], e["direction"], dict(e["arrows"]), wits)
        ok = cert.verify(C)
        return ok, "ok" if ok else "certificate does not check"
    if t == "limit":
        return _check_cone(ws.lookup("weights", e["weight"]), ws.functor(e["diagram"]),
                           e["apex"], e["point"])
    if t == "power":
        C = ws.lookup("vcategories", e["category"])
        W = power_weight(C.base, ws.lookup("vobjects", e["vobject"]))
        S = point_functor(C, e["object"])
        S.source = W.shape
        return _check_cone(W, S, e["apex"], e["point"])
    if t == "isoinserter":
        C = ws.lookup("vcategories", e["category"])
        Eq = free_parallel_pair(C.base)
        W = interval_weight(Eq, standard_interval(C.base))
        S = isoinserter_diagram(C, e["A"], e["B"], e["f"], e["g"], Eq)
        return _check_cone(W, S, e["apex"], e["point"])
    if t == "pseudolimit":
        S = ws.functor(e["diagram"])
        C = S.target
        PsL = pseudo_cone_category(C, S, e["apex"])
        if e["cone"] not in PsL.objects:
            return False, "cone is not a pseudo-cone"
        for X in C.objects:
            m = pseudo_comparison(C, S, e["apex"], e["cone"], PsL, X, pseudo_cone_category(C, S, X))
            if m is None or not is_iso(m):
                return False, f"comparison at {X} is not invertible"
        return True, "ok"
    if t == "reflection":
        U = ws.functor(e["functor"])
        for B in U.source.objects:
            we = e["comparisons"].get(B)
            if we is None:
                return False, f"no witness for the comparison at {B}"
            ok, why = _check_in_e(we, comparison_map(U, e["A"], e["A_prime"], e["eta"], B))
            if not ok:
                return False, f"comparison at {B}: {why}"
        return True, "ok"
    if t == "colimit":
        from .weakcolim import colimit_comparison
        W = ws.lookup("weights", e["weight"])
        S = ws.functor(e["diagram"])
        for X in S.target.objects:
            we = e["comparisons"].get(X)
            if we is None:
                return False, f"no witness for the comparison at {X}"
            ok, why = _check_in_e(we, colimit_comparison(W, S, e["apex"], e["cocone"], X))
            if not ok:
                return False, f"comparison at {X}: {why}"
        return True, "ok"
    return False, f"unknown witness type {t!r}"

