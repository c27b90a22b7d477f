"""Named fixtures shared by the property suites, the CLI and the tests.

Each builder returns kernel values.  :func:`workspace_documents` renders the
same fixtures as workspace JSON; ``python -m weakadj.fixtures`` freezes them
into the package's ``fixtures/`` directory.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Dict, Tuple

from .base import BaseKind, chaotic_category, discrete_category, get_base
from .corpus import orbit_fixture
from .interval import standard_interval
from .vcat import VCategory, VFunctor, from_poset, full_sub, inclusion, self_enriched
from .weakcolim import op_shape
from .weights import constant_unit, free_parallel_pair, interval_weight, isoinserter_diagram
from .workspace import SCHEMA_VERSION, dump_vcategory, dump_vfunctor, fixture_dir

DIAMOND = ("0", "a", "b", "1")
DIAMOND_LEQ = (("0", "a"), ("0", "b"), ("a", "1"), ("b", "1"), ("0", "1"))


def _leq(pairs):
    rel = set(pairs)
    return lambda x, y: x == y or (x, y) in rel


def diamond(kind, name: str = "L4") -> VCategory:
    """The four-element lattice ``0 < a, b < 1``."""
    return from_poset(get_base(kind), list(DIAMOND), _leq(DIAMOND_LEQ), name=name)


def chain2(kind, name: str = "C2") -> VCategory:
    return from_poset(get_base(kind), ["0", "1"], _leq([("0", "1")]), name=name)


def poset_map(B: VCategory, A: VCategory, f: Dict[str, str], name: str = "U") -> VFunctor:
    """Monotone map between posets as a V-functor (homs are subterminal)."""
    act = {}
    for x in B.objects:
        for y in B.objects:
            tgt = A.hom(f[x], f[y]).elements
            act[(x, y)] = {e: (e if e in tgt else tgt[0]) for e in B.hom(x, y).elements}
    return VFunctor(B, A, f, act, name=name)


def lattice_fixture(kind=BaseKind.SET_TRIVIAL) -> Tuple[VCategory, VCategory, VFunctor]:
    """``U: 2 → L4``, ``0 ↦ a``, ``1 ↦ 1``; it preserves the top and meets, and
    its left adjoint sends ``0, a ↦ 0`` and ``b, 1 ↦ 1``."""
    A, B = diamond(kind, "A"), chain2(kind, "B")
    return B, A, poset_map(B, A, {"0": "a", "1": "1"})


def cat_reflective_fixture():
    """The full sub-2-category ``{E, T}`` of small categories inside
    ``{T, E, D}`` (terminal, chaotic and discrete on two objects)."""
    K = get_base(BaseKind.CAT)
    objs = {"T": K.unit, "E": chaotic_category(["0", "1"]), "D": discrete_category(["0", "1"])}
    A = self_enriched(K, objs, name="A")
    B = full_sub(A, ["E", "T"], name="B")
    U = inclusion(B, A)
    U.name = "U"
    return B, A, U, objs


def isoinserter_weight(kind):
    base = get_base(kind)
    return interval_weight(free_parallel_pair(base), standard_interval(base))


def conical_join_fixture(kind=BaseKind.SET_TRIVIAL):
    """The discrete diagram ``{a, b}`` in the diamond with the conical
    presheaf; its (weak) colimit is the join ``1``."""
    A = diamond(kind, "A")
    D = from_poset(get_base(kind), ["a", "b"], lambda x, y: x == y, name="D")
    S = inclusion(D, A)
    S.name = "S"
    return A, D, S, constant_unit(op_shape(D))


def coequaliser_fixture():
    """Two objects ``<0>, <1>: 1 ⇉ D`` in ``{1, D, E}``; the chaotic ``E``
    receives weak coequalising cocones although the strict one is ``1``."""
    K = get_base(BaseKind.CAT)
    objs = {"1": K.unit, "D": discrete_category(["0", "1"]), "E": chaotic_category(["0", "1"])}
    A = self_enriched(K, objs, name="A")
    Eq = free_parallel_pair(K)
    S = isoinserter_diagram(A, "1", "D", "<0>", "<1>", Eq)
    S.name = "S"
    return A, Eq, S, constant_unit(op_shape(Eq)), objs


def fixture_names():
    return sorted(n for n in dir(sys.modules[__name__]) if n.endswith("_fixture"))


# ---------------------------------------------------------------------------
# workspace documents


def _doc(bases, **sections):
    out = {"schema_version": SCHEMA_VERSION, "bases": bases}
    for k in ("vobjects", "vmaps", "vcategories", "vfunctors", "diagrams", "weights", "families",
              "commands"):
        if k in sections:
            out[k] = sections[k]
    return out


def _poset_entry(c: VCategory, base: str):
    order = c.meta["order"]
    return {"base": base, "poset": {"elements": list(c.objects),
                                    "leq": [[a, b] for (a, b), v in sorted(order.items())
                                            if v and a != b]}}


def lattice_document(kind=BaseKind.SET_TRIVIAL, prefix: str = "") -> Dict:
    B, A, U = lattice_fixture(kind)
    p = prefix
    Aj, Dj, Sj, Wj = conical_join_fixture(kind)
    return _doc(
        {f"{p}V": kind.value if isinstance(kind, BaseKind) else kind},
        vcategories={f"{p}L4": {**_poset_entry(A, f"{p}V"), "note": "diamond lattice"},
                     f"{p}C2": _poset_entry(B, f"{p}V"),
                     f"{p}D": _poset_entry(Dj, f"{p}V")},
        vfunctors={f"{p}U": {**dump_vfunctor(U, f"{p}C2", f"{p}L4"),
                             "note": "meet-preserving 0↦a, 1↦1"}},
        diagrams={f"{p}S": {"inclusion": [f"{p}D", f"{p}L4"], "note": "the pair a, b"}},
        weights={f"{p}Wjoin": {"constant_unit": f"{p}D", "op": True},
                 f"{p}Wmeet": {"constant_unit": f"{p}D"}},
        families={f"{p}Sol": {"category": f"{p}C2", "members": ["0", "1"],
                              "note": "solution set: every object of C2"},
                  f"{p}Bottom": {"category": f"{p}L4", "members": ["0"]},
                  f"{p}Middle": {"category": f"{p}L4", "members": ["a", "b"],
                                 "note": "not weakly initial"}},
        commands=[["weak-reflection", f"{p}U", x] for x in DIAMOND]
        + [["weak-reflection", f"{p}U", "b", "--solution-set", f"{p}Sol"],
           ["weak-colimit", f"{p}Wjoin", f"{p}S"], ["limit", f"{p}Wmeet", f"{p}S"],
           ["biinitial", f"{p}L4", "--family", f"{p}Bottom"],
           {"argv": ["biinitial", f"{p}L4", "--family", f"{p}Middle"], "expect": 2},
           ["hstar", f"{p}L4"], ["underlying", f"{p}C2"], ["slice", f"{p}L4", "1"],
           ["nerve", f"{p}S"], ["comma", "a", f"{p}U", "--under"]])


def cat_document() -> Dict:
    B, A, U, objs = cat_reflective_fixture()
    return _doc(
        {"K": BaseKind.CAT.value},
        vobjects={"T": {"base": "K", "unit": True}, "E": {"base": "K", "chaotic": ["0", "1"]},
                  "D": {"base": "K", "discrete": ["0", "1"]}},
        vmaps={"E_to_T": {"source": "E", "target": "T",
                          "map": {e: "*" for e in objs["E"].elements}},
               "T_to_E": {"source": "T", "target": "E", "map": {"*": "0"}}},
        vcategories={"A": {"base": "K", "self_enriched": {"T": "T", "E": "E", "D": "D"}},
                     "B": {"full_sub": {"of": "A", "objects": ["E", "T"]}}},
        vfunctors={"Incl": {"inclusion": ["B", "A"], "note": "reflective inclusion"}},
        weights={"Wiso": {"isoinserter": "K", "note": "isoinserter weight"}},
        commands=[["weak-reflection", "Incl", a] for a in ("D", "E", "T")]
        + [["in-e", "E_to_T"], {"argv": ["in-e", "T_to_E"], "expect": 1},
           ["shrinkable", "A", "E", "T", A.points("E", "T")[0]],
           ["isoinserter", "B", "E", "E", B.ident["E"], B.ident["E"]],
           ["power", "B", "T", "E"], ["homotopic", "A", "T", "E"] + A.points("T", "E")[:2],
           ["slice-base", "B"]])


def orbit_document() -> Dict:
    B, A, P = orbit_fixture()
    return _doc(
        {"S": BaseKind.SET_SPLIT.value},
        vcategories={"Z2": {"base": "S", **dump_vcategory(B), "note": "Z/2-sets 1, G, GG"},
                     "Sets": {"base": "S", **dump_vcategory(A)}},
        vfunctors={"P": {**dump_vfunctor(P, "Z2", "Sets"), "note": "orbit functor"}},
        commands=[["weak-reflection", "P", "1"], ["weak-reflection", "P", "2"]])


def coequaliser_document() -> Dict:
    A, Eq, S, W, objs = coequaliser_fixture()
    return _doc(
        {"K": BaseKind.CAT.value},
        vobjects={"one": {"base": "K", "unit": True}, "Dd": {"base": "K", "discrete": ["0", "1"]},
                  "Ec": {"base": "K", "chaotic": ["0", "1"]}},
        vcategories={"A3": {"base": "K", "self_enriched": {"1": "one", "D": "Dd", "E": "Ec"}},
                     "Eq": {"base": "K", **dump_vcategory(Eq), "note": "free parallel pair"}},
        diagrams={"Spair": dump_vfunctor(S, "Eq", "A3")},
        weights={"Wcoeq": {"constant_unit": "Eq", "op": True}},
        commands=[["weak-colimit", "Wcoeq", "Spair"], {"argv": ["pseudolimit", "Spair"], "expect": 1}])


def pointed_document() -> Dict:
    B, A, U = lattice_fixture(BaseKind.POINTED)
    return _doc(
        {"P": BaseKind.POINTED.value, "Ps": {"kind": BaseKind.POINTED.value, "sliced": True}},
        vobjects={"S0": {"base": "P", "unit": True},
                  "X2": {"base": "P", "elements": ["a", "b"]},
                  "X2s": {"base": "Ps", "elements": ["a", "b"],
                          "augmentation": {"a": "1", "b": "*"}}},
        vcategories={"PL4": _poset_entry(A, "P"), "PC2": _poset_entry(B, "P")},
        vfunctors={"PU": dump_vfunctor(U, "PC2", "PL4")},
        commands=[["weak-reflection", "PU", "b"], ["slice-base", "PL4"], ["slice", "PL4", "1"]])


def minimal_document() -> Dict:
    return _doc({"V": BaseKind.SET_TRIVIAL.value},
                vobjects={"I": {"base": "V", "unit": True}},
                vcategories={"unit": {"base": "V", "objects": ["*"], "homs": [["*", "*", "I"]],
                                      "identities": {"*": "*"},
                                      "compose": [["*", "*", "*", "*", "*", "*"]]}},
                commands=[["validate"]])


def workspace_documents() -> Dict[str, Dict]:
    return {
        "minimal": minimal_document(),
        "lattice": lattice_document(BaseKind.SET_TRIVIAL),
        "lattice_split": lattice_document(BaseKind.SET_SPLIT, prefix="s"),
        "pointed": pointed_document(),
        "cat": cat_document(),
        "orbit": orbit_document(),
        "coequaliser": coequaliser_document(),
    }


def render(doc: Dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=False, ensure_ascii=False) + "\n"


def freeze(directory: Path = None) -> Dict[str, Path]:
    directory = Path(directory or fixture_dir())
    directory.mkdir(parents=True, exist_ok=True)
    out = {}
    for name, doc in workspace_documents().items():
        p = directory / f"{name}.json"
        p.write_text(render(doc))
        out[name] = p
    return out


if __name__ == "__main__":  # pragma: no cover
    for name, p in freeze(sys.argv[1] if len(sys.argv) > 1 else None).items():
        print(name, p)
