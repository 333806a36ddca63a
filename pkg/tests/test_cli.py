import json
import subprocess
import sys

import pytest

from fellb.cli import main, run


def _run(instances, *argv):
    argv = list(argv)
    argv[1] = str(instances / argv[1])
    return run(argv)


def _cli(instances, *argv):
    argv = [str(instances / a) if a.endswith(".json") else a for a in argv]
    return subprocess.run([sys.executable, "-m", "fellb.cli", *argv], capture_output=True, check=False)


@pytest.mark.parametrize("argv,code", [
    (("validate", "c2diag_swap.json"), 0),
    (("validate", "broken_inv.json"), 2),
    (("validate", "z3_groupalg.json"), 3),
    (("ideals", "c2diag.json"), 0),
    (("ideals", "c2diag_swap.json", "--invariant"), 0),
    (("ladder", "c2diag_swap.json", "--side", "left"), 0),
    (("ladder", "linez2.json", "--side", "right"), 0),
    (("rieffel", "m2pair.json", "--construction", "subgroupoid"), 0),
    (("rieffel", "linez2.json", "--construction", "principal"), 0),
    (("rieffel", "c2diag_swap.json", "--construction", "left"), 0),
    (("rieffel", "linez2.json", "--construction", "right"), 0),
    (("product", "c2diag_swap.json", "--kind", "semidirect"), 0),
    (("product", "linez2.json", "--kind", "orbit"), 0),
    (("product", "v4_cocycle.json", "--kind", "restrict"), 0),
    (("product", "linez2.json", "--kind", "action"), 0),
])
def test_exit_codes(instances, argv, code):
    got, report = _run(instances, *argv)
    assert got == code, report
    assert report["status"] == {0: "pass", 2: "fail", 3: "unsupported"}[code]


def test_failures_carry_witnesses(instances):
    code, report = _run(instances, "validate", "broken_inv.json")
    failed = [c for c in report["checks"] if c["status"] == "fail"]
    assert failed and all("violations" in c or "witness" in c for c in failed)


def test_unsupported_carries_the_polynomial(instances):
    code, report = _run(instances, "validate", "z3_groupalg.json")
    assert code == 3 and "t**2 + t + 1" in report["unsupported"]["witness"]


def test_action_is_required_where_needed(instances):
    code, report = _run(instances, "ladder", "c2diag.json", "--side", "left")
    assert code == 2
    assert report["checks"][-1]["name"] == "input"


def test_claims_are_checked(instances):
    code, report = _run(instances, "ideals", "c2diag_swap.json", "--invariant")
    names = {c["name"]: c["status"] for c in report["checks"]}
    assert names["claims/invariant_ideals/swap"] == "pass"
    assert report["results"]["lattice"]["count"] == 2


def test_input_errors_exit_two(instances, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"name": ')
    code, report = run(["validate", str(bad)])
    assert code == 2 and report["checks"][0]["witness"]["line"] == 1
    code, report = run(["validate", str(tmp_path / "missing.json")])
    assert code == 2


def test_output_is_byte_deterministic(instances):
    first = _cli(instances, "ladder", "c2diag_swap.json", "--side", "left")
    second = _cli(instances, "ladder", "c2diag_swap.json", "--side", "left")
    assert first.returncode == 0
    assert first.stdout == second.stdout
    json.loads(first.stdout)
    assert b'"timing"' not in first.stdout


def test_timing_is_opt_in(instances):
    _, report = _run(instances, "validate", "c2diag.json", "--timing")
    assert "total" in report["timing"]
    _, report = _run(instances, "validate", "c2diag.json")
    assert "timing" not in report


def test_export_dot(instances, tmp_path, capsys):
    assert main(["export-dot", str(instances / "c2diag.json"), "--what", "lattice"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("digraph") and "rankdir=BT" in out
    target = tmp_path / "ladder.dot"
    assert main(["export-dot", str(instances / "c2diag_swap.json"), "--what", "ladder",
                 "-o", str(target)]) == 0
    text = target.read_text()
    edges = [line for line in text.splitlines() if line.lstrip()[:1] in "XYZW" and " -> " in line.split("[")[0]]
    assert len(edges) == 5
    assert sum("dashed" in line for line in edges) == 2


def test_main_prints_sorted_json(instances, capsys):
    assert main(["ideals", str(instances / "units_only.json")]) == 0
    out = capsys.readouterr().out
    report = json.loads(out)
    assert out == json.dumps(report, indent=2, sort_keys=True) + "\n"
    assert report["results"]["lattice"]["count"] == 4
