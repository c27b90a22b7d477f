import copy
import json

import pytest

from weakadj.cli import execute, main, parse_budget
from weakadj.errors import LawViolation, PreconditionError, generous
from weakadj.workspace import (SCHEMA_VERSION, WorkspaceError, fixture_dir, load_fixture_dir,
                               load_workspace, parse_workspace)

FIX = fixture_dir()


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run_cli(capsys, "--format", "json", *argv)
    return code, json.loads(out)


def minimal():
    return json.loads((FIX / "minimal.json").read_text())


def test_minimal_workspace_loads():
    ws = load_workspace(minimal())
    c = ws.lookup("vcategories", "unit")
    assert list(c.objects) == ["*"] and ws.commands == [["validate"]]


def test_every_fixture_file_loads():
    with generous(8):
        ws = load_fixture_dir(FIX)
        assert ws.counts()["vcategories"] >= 8
        for path in sorted(FIX.glob("*.json")):
            if path.name != "category_tables.json":
                parse_workspace(path)


def test_broken_composition_table_names_the_triple():
    doc = minimal()
    doc["vcategories"]["unit"]["compose"] = []
    with pytest.raises(LawViolation) as exc:
        load_workspace(doc)
    assert "(*∘*) at (*,*,*)" in str(exc.value)


def test_wrong_schema_version_is_refused():
    doc = minimal()
    doc["schema_version"] = SCHEMA_VERSION + 1
    with pytest.raises(WorkspaceError, match="schema_version"):
        load_workspace(doc)


def test_unresolved_reference():
    doc = minimal()
    doc["vcategories"]["unit"]["homs"] = [["*", "*", "J"]]
    with pytest.raises(WorkspaceError, match="no vobject named 'J'"):
        load_workspace(doc)


def test_parse_errors_carry_a_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"schema_version": 1,\n "bases": }')
    with pytest.raises(WorkspaceError, match="line 2"):
        parse_workspace(p)


def test_exit_status_of_a_failed_precondition(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    code, out = run_cli(capsys, "-w", str(p), "validate")
    assert code == 2 and "precondition" in out


def test_reports_are_byte_identical(capsys):
    lat = str(FIX / "lattice.json")
    first = run_cli(capsys, "-w", lat, "--format", "json", "weak-reflection", "U", "a")
    second = run_cli(capsys, "-w", lat, "--format", "json", "weak-reflection", "U", "a")
    assert first == second and first[0] == 0


def test_reports_carry_the_schema_version(capsys):
    code, rep = run_json(capsys, "-w", str(FIX / "minimal.json"), "validate")
    assert code == 0 and rep["schema_version"] == SCHEMA_VERSION and rep["status"] == 0


def test_weak_reflection_in_the_lattice(capsys):
    code, rep = run_json(capsys, "-w", str(FIX / "lattice.json"), "weak-reflection", "U", "a")
    assert code == 0 and rep["result"]["A_prime"] == "0"
    assert rep["witnesses"][0]["type"] == "reflection"


def test_biinitial_with_a_family_that_is_not_weakly_initial(capsys):
    code, rep = run_json(capsys, "-w", str(FIX / "lattice.json"),
                         "biinitial", "L4", "--family", "Middle")
    assert code == 2 and "not weakly initial" in rep["error"]


def test_shrinkable_identity_comes_with_a_witness(capsys, tmp_path):
    code, rep = run_json(capsys, "-w", str(FIX / "minimal.json"), "shrinkable", "unit", "*")
    assert code == 0 and rep["result"]["shrinkable"] is True
    assert rep["witnesses"]


def test_witnesses_round_trip(capsys, tmp_path):
    lat = str(FIX / "lattice.json")
    code, out = run_cli(capsys, "-w", lat, "--format", "json", "weak-reflection", "U", "b")
    assert code == 0
    p = tmp_path / "report.json"
    p.write_text(out)
    code, rep = run_json(capsys, "-w", lat, "validate", "--report", str(p))
    assert code == 0 and all(w["ok"] for w in rep["result"]["witnesses"])


def test_tampered_witness_is_rejected(capsys, tmp_path):
    lat = str(FIX / "lattice.json")
    _, out = run_cli(capsys, "-w", lat, "--format", "json", "weak-reflection", "U", "b")
    doc = json.loads(out)
    bad = copy.deepcopy(doc)
    bad["witnesses"][0]["A_prime"] = "0"
    p = tmp_path / "report.json"
    p.write_text(json.dumps(bad))
    code, rep = run_json(capsys, "-w", lat, "validate", "--report", str(p))
    assert code == 1 and not rep["result"]["witnesses"][0]["ok"]


@pytest.mark.parametrize("name", ["minimal", "lattice", "lattice_split", "pointed", "orbit",
                                  "coequaliser", "cat"])
def test_listed_commands_meet_their_expectations(capsys, name):
    code, rep = run_json(capsys, "-w", str(FIX / f"{name}.json"), "run")
    assert code == 0, [r for r in rep["result"]["runs"] if not r["as_expected"]]


def test_execute_reports_bad_commands_as_preconditions():
    ws = parse_workspace(FIX / "minimal.json")
    assert execute(ws, ["no-such-verb"]).status == 2
    assert execute(ws, ["shrinkable", "unit"]).status == 2


def test_budget_parsing():
    assert parse_budget("default") == {}
    assert parse_budget("maps=10,nodes=20") == {"max_maps": 10, "max_nodes": 20}
    assert parse_budget("generous:2")["max_maps"] > 0
    with pytest.raises(PreconditionError):
        parse_budget("bogus=1")


def test_budget_exhaustion_is_a_precondition_status(capsys):
    code, rep = run_json(capsys, "-w", str(FIX / "cat.json"), "--budget", "maps=1,nodes=1",
                         "weak-reflection", "Incl", "D")
    assert code == 2 and "BudgetExceeded" in rep["error"]


def test_text_output_names_the_verdict(capsys):
    code, out = run_cli(capsys, "-w", str(FIX / "lattice.json"), "weak-reflection", "U", "a")
    assert code == 0 and "verdict: positive (exit 0)" in out


def test_weak_reflection_with_a_solution_set(capsys):
    code, rep = run_json(capsys, "-w", str(FIX / "lattice.json"),
                         "weak-reflection", "U", "b", "--solution-set", "Sol")
    assert code == 0 and rep["result"]["A_prime"] == "1" and rep["result"]["eta"] == "<="


def test_families_may_be_listed_inline(capsys):
    lat = str(FIX / "lattice.json")
    code, rep = run_json(capsys, "-w", lat, "biinitial", "L4", "--family", "a,b")
    assert code == 2 and "not weakly initial" in rep["error"]
    code, rep = run_json(capsys, "-w", lat, "biinitial", "L4", "--family", "0,a")
    assert code == 0 and rep["result"]["object"] == "0"


def test_validate_reports_the_entry_counts(capsys):
    code, rep = run_json(capsys, "-w", str(FIX / "lattice.json"), "validate")
    assert code == 0
    assert rep["result"]["counts"] == parse_workspace(FIX / "lattice.json").counts()
    assert rep["result"]["counts"]["vcategories"] == 3
