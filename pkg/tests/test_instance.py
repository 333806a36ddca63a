import json

import pytest

from fellb.catalog import c2diag, swap_action, v4_cocycle
from fellb.fellbundle import check_bundle_isomorphism, validate_bundle
from fellb.instance import InstanceError, load_document, load_instance

LOADABLE = ["c2diag", "c2diag_swap", "c2diag_triv", "linez2", "m2pair", "v4_cocycle", "units_only",
            "z3_groupalg", "broken_inv"]


@pytest.mark.parametrize("name", LOADABLE)
def test_fixtures_load(instances, name):
    inst = load_instance(instances / ("%s.json" % name))
    assert inst.name and inst.bundles


def test_loaded_bundles_match_the_catalog(instances):
    inst = load_instance(instances / "v4_cocycle.json")
    b = inst.bundle()
    assert validate_bundle(b).ok
    assert check_bundle_isomorphism(b, v4_cocycle(), {x: x for x in "eabc"}).ok
    swap = load_instance(instances / "c2diag_swap.json")
    assert swap.action("swap").alpha[("g", "pt")] == swap_action().alpha[("g", "pt")]
    assert swap.bundle().mult == c2diag().mult


def test_action_lookup_defaults(instances):
    inst = load_instance(instances / "c2diag_swap.json")
    assert inst.action_id() == "swap"
    assert inst.action() is inst.actions["swap"]
    assert load_instance(instances / "c2diag.json").action() is None
    with pytest.raises(KeyError):
        inst.action("nope")


def _doc(instances, name):
    return json.loads((instances / ("%s.json" % name)).read_text())


def test_dangling_reference_names_the_field(instances):
    doc = {"name": "dangling", "groupoids": {"G": {"kind": "explicit", "units": ["u"],
           "arrows": [{"id": "x", "src": "u", "rng": "w"}]}},
           "bundles": {"A": {"kind": "trivial", "groupoid": "G", "algebra": {"kind": "diagonal", "n": 1}}}}
    with pytest.raises(InstanceError) as info:
        load_document(doc)
    assert info.value.field == "groupoids.G.arrows[0].rng"


def test_schema_error_names_the_field(instances):
    doc = _doc(instances, "c2diag")
    doc["bundles"]["A"]["algebra"]["n"] = "two"
    with pytest.raises(InstanceError) as info:
        load_document(doc)
    assert info.value.field.startswith("bundles.A")
    assert "schema" in str(info.value)


def test_parse_error_reports_line_and_column(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "name": "x",,\n}')
    with pytest.raises(InstanceError) as info:
        load_instance(p)
    assert (info.value.line, info.value.column) == (2, 15)
    assert info.value.to_json()["line"] == 2


def test_missing_file(tmp_path):
    with pytest.raises(InstanceError):
        load_instance(tmp_path / "nothing.json")


def test_unknown_groupoid_kind_is_a_schema_error(instances):
    doc = _doc(instances, "c2diag")
    doc["groupoids"]["pt"]["kind"] = "torus"
    with pytest.raises(InstanceError):
        load_document(doc)
