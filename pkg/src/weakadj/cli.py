"""Command line interface: load a workspace, run one operation, emit a report.

Exit status: 0 positive verdict, 1 negative verdict, 2 precondition or
budget failure, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from .base import base_of, clear_base_caches
from .errors import (BudgetExceeded, InternalInconsistency, LawViolation, PreconditionError,
                     budget, current_budget, generous, track_usage)
from .reports import (INCONSISTENT, NEGATIVE, POSITIVE, PRECONDITION, Report, bipolar_json, emit,
                      homotopy_witness_json, in_e_json, plain, revalidate, shrink_json)
from .workspace import (SCHEMA_VERSION, Workspace, WorkspaceError, fixture_dir, load_fixture_dir,
                        parse_workspace)

DEFAULT_BUDGET = "generous:8"

Handler = Callable[[Workspace, argparse.Namespace, Report], None]
VERBS: Dict[str, Handler] = {}


def verb(name: str, help: str, *arguments):
    """Register a handler with its positional and optional arguments."""
    def deco(fn):
        VERBS[name] = fn
        fn.verb_help = help
        fn.verb_arguments = arguments
        return fn
    return deco


def arg(*names, **kw):
    return names, kw


# ---------------------------------------------------------------------------
# helpers


def _find_morphism(C, f: str):
    """``(A, B)`` with ``f ∈ C(A, B)`` when the label is unambiguous."""
    hits = [(a, b) for a in C.objects for b in C.objects if f in C.points(a, b)]
    if not hits:
        raise PreconditionError(f"{f!r} is not a morphism of {C.name}")
    if len(hits) > 1:
        raise PreconditionError(f"{f!r} labels morphisms in several homs {hits}; give A and B")
    return hits[0]


def _instances(instances) -> List:
    return [[kind, plain(data), apex] for kind, data, apex in instances]


def _hom_sizes(C) -> Dict[str, int]:
    return {f"{a}→{b}": len(C.points(a, b)) for a in C.objects for b in C.objects}


# ---------------------------------------------------------------------------
# verbs


@verb("validate", "load the workspace; with --report, re-validate its witnesses",
      arg("--report", help="a JSON report whose witnesses are re-checked"))
def cmd_validate(ws, a, rep):
    rep.result["counts"] = ws.counts()
    rep.result["sources"] = [Path(s).name for s in ws.sources]
    rep.result["notes"] = len(ws.notes)
    if not a.report:
        rep.decide(True)
        return
    try:
        doc = json.loads(Path(a.report).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise WorkspaceError(f"cannot read report {a.report}: {exc}") from None
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise WorkspaceError("report has no supported schema_version")
    checked = []
    for i, w in enumerate(doc.get("witnesses", [])):
        try:
            ok, why = revalidate(ws, w)
        except (PreconditionError, LawViolation, KeyError, TypeError) as exc:
            # a malformed or tampered witness is a rejected witness, not a bad command
            ok, why = False, f"{type(exc).__name__}: {exc}"
        checked.append({"index": i, "type": w.get("type"), "ok": ok, "reason": why})
    rep.result["witnesses"] = checked
    rep.decide(all(c["ok"] for c in checked))


@verb("underlying", "the underlying ordinary category", arg("category"))
def cmd_underlying(ws, a, rep):
    from .vcat import underlying_category
    C = ws.lookup("vcategories", a.category)
    U = underlying_category(C)
    v = U.violations()
    rep.result.update(objects=list(U.objects), morphisms=U.morphism_count(), homs=_hom_sizes(C),
                      violations=v[:5])
    rep.decide(not v)


@verb("hstar", "the homotopy ER-category h*C", arg("category"))
def cmd_hstar(ws, a, rep):
    from .vcat import homotopy_er
    C = ws.lookup("vcategories", a.category)
    er = homotopy_er(C)
    v = er.violations()
    rep.result["classes"] = {f"{x}→{y}": er.classes(x, y) for x in C.objects for y in C.objects}
    rep.result["violations"] = v[:5]
    rep.decide(not v)


@verb("homotopic", "is f ≅ g : A → B in C", arg("category"), arg("A"), arg("B"), arg("f"), arg("g"))
def cmd_homotopic(ws, a, rep):
    from .vcat import vhomotopic
    C = ws.lookup("vcategories", a.category)
    w = vhomotopic(C, a.A, a.B, a.f, a.g)
    if w is not None:
        rep.witnesses.append(homotopy_witness_json(a.category, a.A, a.B, a.f, a.g, w))
    rep.result["homotopic"] = w is not None
    rep.decide(w is not None)


@verb("shrinkable", "is f : A → B shrinkable in C (give C f or C A B f)",
      arg("category"), arg("refs", nargs="+", metavar="[A B] f"))
def cmd_shrinkable(ws, a, rep):
    from .shrink import shrinkable_witness
    C = ws.lookup("vcategories", a.category)
    if len(a.refs) == 1:
        f = a.refs[0]
        A, B = _find_morphism(C, f)
    elif len(a.refs) == 3:
        A, B, f = a.refs
    else:
        raise PreconditionError("shrinkable takes C f or C A B f")
    w = shrinkable_witness(C, A, B, f)
    rep.result.update(A=A, B=B, f=f, shrinkable=w is not None)
    if w is not None:
        rep.result["section"] = w.section
        rep.witnesses.append(shrink_json(w, a.category))
    rep.decide(w is not None)


@verb("in-e", "is a map of V in the class E (cross-checked against the closed form)",
      arg("map"), arg("--strategy", choices=["auto", "full", "generated"], default="auto"))
def cmd_in_e(ws, a, rep):
    from .shrink import in_E
    f = ws.lookup("vmaps", a.map)
    base = base_of(f.source)
    w = in_E(base, f, strategy=a.strategy)
    rep.result.update(in_E=w is not None, closed_form=base.in_e_closed_form(f))
    if w is not None:
        rep.witnesses.append(in_e_json(f, w))
    rep.decide(w is not None)


def _comma_result(rep, cm):
    C = cm.carrier
    rep.result.update(objects=list(C.objects), triples={o: list(t) for o, t in cm.triples.items()},
                      homs=_hom_sizes(C))


@verb("comma", "the comma V-category G/U (or A/U with --under A)",
      arg("G", help="a V-functor, or an object of U's target with --under"), arg("U"),
      arg("--under", action="store_true", help="read G as an object A and build A/U"))
def cmd_comma(ws, a, rep):
    from .comma import comma, object_comma
    U = ws.functor(a.U)
    cm = object_comma(a.G, U) if a.under else comma(ws.functor(a.G), U)
    _comma_result(rep, cm)
    rep.decide(True)


@verb("slice", "the slice C/A and its bi-terminal objects", arg("category"), arg("A"))
def cmd_slice(ws, a, rep):
    from .comma import slice
    from .vcat import TERMINAL, is_bipolar
    C = ws.lookup("vcategories", a.category)
    sl = slice(C, a.A)
    _comma_result(rep, sl)
    rep.result["biterminal"] = [o for o in sl.carrier.objects
                                if is_bipolar(sl.carrier, o, TERMINAL) is not None]
    rep.decide(True)


def _limit_report(rep, r, witness):
    rep.result["exists"] = r is not None
    if r is not None:
        rep.result.update(apex=r.apex, cone=r.cone.point, legs=r.cone.legs)
        rep.witnesses.append({**witness, "apex": r.apex, "point": r.cone.point})
    rep.decide(r is not None)


@verb("limit", "the weighted limit {W, S}", arg("weight"), arg("diagram"))
def cmd_limit(ws, a, rep):
    from .weights import weighted_limit
    r = weighted_limit(ws.lookup("weights", a.weight), ws.functor(a.diagram))
    _limit_report(rep, r, {"type": "limit", "weight": a.weight, "diagram": a.diagram})


@verb("power", "the power X ⋔ B in C", arg("category"), arg("vobject"), arg("B"))
def cmd_power(ws, a, rep):
    from .weights import power
    C = ws.lookup("vcategories", a.category)
    p = power(C, ws.lookup("vobjects", a.vobject), a.B)
    _limit_report(rep, p and p.limit, {"type": "power", "category": a.category,
                                       "vobject": a.vobject, "object": a.B})


@verb("isoinserter", "the isoinserter of f, g : A → B in C",
      arg("category"), arg("A"), arg("B"), arg("f"), arg("g"))
def cmd_isoinserter(ws, a, rep):
    from .weights import isoinserter
    C = ws.lookup("vcategories", a.category)
    r = isoinserter(C, a.A, a.B, a.f, a.g)
    if r is not None:
        rep.result["k"] = r.k
    _limit_report(rep, r and r.limit, {"type": "isoinserter", "category": a.category,
                                       "A": a.A, "B": a.B, "f": a.f, "g": a.g})


@verb("pseudolimit", "the pseudo-limit of a diagram in a CatCanonical V-category",
      arg("diagram"))
def cmd_pseudolimit(ws, a, rep):
    from .weights import pseudo_limit
    r = pseudo_limit(ws.functor(a.diagram))
    rep.result["exists"] = r is not None
    if r is not None:
        rep.result.update(apex=r.apex, cone=r.cone, legs=r.legs, coherence=r.coherence)
        rep.witnesses.append({"type": "pseudolimit", "diagram": a.diagram, "apex": r.apex,
                              "cone": r.cone})
    rep.decide(r is not None)


@verb("biinitial", "a bi-initial object from a weakly initial family",
      arg("category"), arg("--family", required=True,
                           help="a family name or comma-separated objects"))
def cmd_biinitial(ws, a, rep):
    from .waft import find_biinitial
    B = ws.lookup("vcategories", a.category)
    r = find_biinitial(B, ws.members(a.family))
    rep.result.update(object=r.L, family=list(r.family), projections=r.projections)
    rep.witnesses.append(bipolar_json(r.certificate, a.category))
    rep.limit_instances.extend(_instances(r.instances))
    rep.decide(r.verify(B))


def _solution_set(ws, U, A, ref: Optional[str]):
    if ref is None:
        return None
    out = []
    Acat, Bcat = U.target, U.source
    for m in ws.members(ref):
        if ":" in m:
            b, alpha = m.split(":", 1)
            out.append((b, alpha))
        elif m in Bcat.objects:
            out.extend((m, alpha) for alpha in Acat.points(A, U(m)))
        else:
            out.append(m)
    return out


@verb("weak-reflection", "an E-weak reflection of A along U",
      arg("functor"), arg("A"),
      arg("--solution-set", help="family name or list of objects B, b:alpha pairs or comma labels"))
def cmd_weak_reflection(ws, a, rep):
    from .waft import eweak_reflection, singleton_is_solution_set
    U = ws.functor(a.functor)
    r = eweak_reflection(U, a.A, _solution_set(ws, U, a.A, a.solution_set))
    rep.result.update(A_prime=r.A_prime, eta=r.eta, biinitial=r.biinitial.L,
                      family=list(r.biinitial.family),
                      comparisons_in_E={b: v is not None for b, v in r.report.verdicts.items()},
                      powers_preserved=r.powers_preserved,
                      singleton_solution_set=singleton_is_solution_set(U, r))
    rep.limit_instances.extend(_instances(r.instances))
    if r.report.overall:
        from .shrink import comparison_map
        comps = {b: in_e_json(comparison_map(U, a.A, r.A_prime, r.eta, b), w)
                 for b, w in r.report.verdicts.items()}
        rep.witnesses.append({"type": "reflection", "functor": a.functor, "A": a.A,
                              "A_prime": r.A_prime, "eta": r.eta, "comparisons": comps})
    else:
        rep.result["first_failure"] = r.report.first_failure
    rep.decide(r.report.overall)


@verb("weak-colimit", "an E-weak colimit of S weighted by W",
      arg("weight"), arg("diagram"), arg("--apex"), arg("--cocone"))
def cmd_weak_colimit(ws, a, rep):
    from .weakcolim import (cocone_object, duality_agrees, find_eweak_colimit,
                            is_eweak_colimit)
    W = ws.lookup("weights", a.weight)
    S = ws.functor(a.diagram)
    if a.apex is None:
        r = find_eweak_colimit(W, S)
    else:
        etas = [a.cocone] if a.cocone else S.target.base.points(cocone_object(W, S, a.apex))
        r = None
        for eta in etas:
            r = is_eweak_colimit(W, S, a.apex, eta)
            if r.overall:
                break
    ok = r is not None and r.overall
    rep.result["exists"] = ok
    if r is not None:
        rep.result.update(apex=r.apex, cocone=r.cocone, legs=r.legs,
                          comparisons_in_E={x: v is not None for x, v in r.verdicts.items()},
                          nerve_reading_agrees=duality_agrees(W, S, r.apex, r.cocone))
    if ok:
        comps = {x: in_e_json(r.comparisons[x], w) for x, w in r.verdicts.items()}
        rep.witnesses.append({"type": "colimit", "weight": a.weight, "diagram": a.diagram,
                              "apex": r.apex, "cocone": r.cocone, "comparisons": comps})
    rep.decide(ok)


@verb("nerve", "the nerve N_S : A → [D^op, V] of a diagram", arg("diagram"),
      arg("--reduced", action="store_true"))
def cmd_nerve(ws, a, rep):
    from .vcat import vfunctor_violations
    from .weakcolim import nerve
    N = nerve(ws.functor(a.diagram), reduced=a.reduced)
    v = vfunctor_violations(N)
    rep.result.update(objects=N.object_map, presheaves=list(N.target.objects),
                      homs=_hom_sizes(N.target), violations=v[:5])
    rep.decide(not v)


@verb("slice-base", "move a V-category to the sliced base V/I and check it there",
      arg("category"))
def cmd_slice_base(ws, a, rep):
    from .comma import slice, slice_object
    from .slicebase import as_sliced, augment, from_sliced, r_embed, same_augmented
    from .vcat import TERMINAL, is_bipolar, vcategory_violations
    C = ws.lookup("vcategories", a.category)
    aug = augment(C) if C.base.unit_is_terminal else r_embed(C)
    S = as_sliced(aug)
    v = vcategory_violations(S)
    round_trip = same_augmented(from_sliced(S), aug)
    terminal = {}
    for y in S.objects:
        sl = slice(S, y)
        terminal[y] = is_bipolar(sl.carrier, slice_object(sl, y, S.ident[y]), TERMINAL) is not None
    rep.result.update(base=S.base.label, augmentation="unique" if C.base.unit_is_terminal else "R(C)",
                      homs={f"{x}→{y}": {"elements": list(S.hom(x, y).elements),
                                         "augmentation": dict(S.hom(x, y).aug)}
                            for x in S.objects for y in S.objects},
                      round_trip=round_trip, identity_terminal_in_slice=terminal,
                      violations=v[:5])
    rep.decide(not v and round_trip and all(terminal.values()))


@verb("check", "run a named property suite", arg("suite"),
      arg("--scale", choices=["small", "full"], default="small"))
def cmd_check(ws, a, rep):
    from .suites import SUITES, run_suite
    if a.suite not in SUITES:
        raise PreconditionError(f"unknown suite {a.suite!r}; known: {sorted(SUITES)}")
    r = run_suite(a.suite, a.scale)
    rep.result.update(r.to_json())
    rep.decide(r.passed)


@verb("run", "execute the commands listed in the workspace")
def cmd_run(ws, a, rep):
    runs = []
    for cmd, expect in zip(ws.commands, ws.expect):
        sub = execute(ws, cmd, a.budget)
        met = sub.status == expect if expect is not None else sub.status in (POSITIVE, NEGATIVE)
        runs.append({"command": cmd, "status": sub.status, "verdict": sub.verdict,
                     "expected": expect, "as_expected": met, "error": sub.error})
    rep.result["runs"] = runs
    rep.decide(all(r["as_expected"] for r in runs))


NEEDS_WORKSPACE = set(VERBS) - {"check"}


# ---------------------------------------------------------------------------
# parsing and dispatch


def parse_budget(spec: str) -> Dict[str, int]:
    """``generous``, ``generous:N``, ``default`` or ``maps=..,nodes=..,...``."""
    spec = spec.strip()
    keys = {"maps": "max_maps", "objects": "max_objects", "nodes": "max_nodes",
            "elements": "max_elements", "table": "max_table"}
    if spec == "default":
        return {}
    if spec.startswith("generous"):
        scale = int(spec.split(":", 1)[1]) if ":" in spec else 1
        with generous(scale):
            return asdict(current_budget())
    out = {}
    for part in spec.split(","):
        k, _, v = part.partition("=")
        if k not in keys or not v.isdigit():
            raise PreconditionError(f"bad budget item {part!r}; keys are {sorted(keys)}")
        out[keys[k]] = int(v)
    return out


def _add_common(p, suppress: bool):
    d = argparse.SUPPRESS if suppress else None
    p.add_argument("--workspace", "-w", action="append", default=d if suppress else [],
                   help="workspace JSON file (repeatable)")
    p.add_argument("--fixture-dir", default=d, help="directory of workspace JSON files")
    p.add_argument("--budget", default=d if suppress else DEFAULT_BUDGET,
                   help="generous[:N], default, or maps=..,nodes=..,elements=..,objects=..,table=..")
    p.add_argument("--format", choices=["text", "json"], default=d if suppress else "text")
    p.add_argument("--timing", action="store_true", default=d if suppress else False,
                   help="include wall-clock time (reports are then not byte-stable)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakadj", description=__doc__.splitlines()[0])
    _add_common(p, suppress=False)
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    for name, fn in VERBS.items():
        sp = sub.add_parser(name, help=fn.verb_help)
        _add_common(sp, suppress=True)
        for names, kw in fn.verb_arguments:
            sp.add_argument(*names, **kw)
    return p


def command_parser() -> argparse.ArgumentParser:
    """Parser for a bare command (as listed inside a workspace)."""
    p = argparse.ArgumentParser(prog="weakadj", add_help=False, exit_on_error=False)
    sub = p.add_subparsers(dest="verb", required=True)
    for name, fn in VERBS.items():
        sp = sub.add_parser(name, add_help=False, exit_on_error=False)
        for names, kw in fn.verb_arguments:
            sp.add_argument(*names, **kw)
    return p


def load(workspaces: Sequence[str], fixture_directory: Optional[str]) -> Workspace:
    ws = Workspace()
    if fixture_directory:
        ws.merge(load_fixture_dir(fixture_directory))
    for path in workspaces:
        ws.merge(parse_workspace(path))
    if not workspaces and not fixture_directory:
        ws.merge(load_fixture_dir(fixture_dir()))
    return ws


def _run(fn, ws, a, rep, budget_spec, loader=None):
    limits = parse_budget(budget_spec)
    with budget(**limits):
        rep.budget = asdict(current_budget())
        if loader is not None:
            ws = loader()
        clear_base_caches(*(ws.bases.values() if ws is not None else ()))
        with track_usage() as usage:
            try:
                fn(ws, a, rep)
            finally:
                rep.usage = dict(usage)


def _guarded(rep: Report, body) -> Report:
    try:
        body()
    except InternalInconsistency as exc:
        rep.status, rep.error = INCONSISTENT, str(exc)
    except LawViolation as exc:
        rep.status = PRECONDITION
        rep.error = f"{exc}" + (f": {exc.violations[0]}" if exc.violations else "")
    except (PreconditionError, BudgetExceeded) as exc:
        rep.status, rep.error = PRECONDITION, f"{type(exc).__name__}: {exc}"
    return rep


def execute(ws: Workspace, command: Sequence[str], budget_spec: str = DEFAULT_BUDGET) -> Report:
    """Run one command against a loaded workspace."""
    rep = Report(list(command))

    def body():
        try:
            a = command_parser().parse_args(list(command))
        except (argparse.ArgumentError, SystemExit) as exc:
            raise PreconditionError(f"bad command {' '.join(command)!r}: {exc}") from None
        a.budget = budget_spec
        _run(VERBS[a.verb], ws, a, rep, budget_spec)

    return _guarded(rep, body)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    argv = list(sys.argv[1:] if argv is None else argv)
    command = argv[argv.index(a.verb):] if a.verb in argv else [a.verb]
    rep = Report(_strip_globals(command))
    start = time.perf_counter()

    def loader():
        return load(a.workspace, a.fixture_dir) if a.verb in NEEDS_WORKSPACE else Workspace()

    def body():
        _run(VERBS[a.verb], None, a, rep, a.budget, loader)

    _guarded(rep, body)
    if a.timing:
        rep.timing = time.perf_counter() - start
    sys.stdout.buffer.write(emit(rep, a.format))
    sys.stdout.flush()
    return rep.status


def _strip_globals(command: List[str]) -> List[str]:
    """The command echo without workspace, budget and output flags."""
    out, skip = [], False
    for tok in command:
        if skip:
            skip = False
            continue
        if tok in ("--workspace", "-w", "--fixture-dir", "--budget", "--format"):
            skip = True
            continue
        if tok == "--timing" or tok.split("=")[0] in ("--workspace", "--fixture-dir",
                                                       "--budget", "--format"):
            continue
        out.append(tok)
    return out


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
