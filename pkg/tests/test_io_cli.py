import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from inscribed.cli import EXIT_INVALID, EXIT_NEGATIVE, EXIT_OK, run
from inscribed.exact import ScalarMode
from inscribed.fan import normal_fan
from inscribed.io import (
    ParseError, dumps, fan_doc, loads, parse_fan, parse_polytope, parse_profile, polytope_doc, profile_doc,
)
from inscribed.polytope import cube, permutahedron
from strategies import polytopes

SQUARE_FAN_ONE_WAY = {
    "dim": 2, "regions": [0, 1, 2, 3],
    "walls": [{"from": k, "to": (k + 1) % 4, "normal": n} for k, n in enumerate([[1, -1], [1, 1], [-1, 1], [-1, -1]])],
}


def roundtrip(doc, parse, write):
    return dumps(write(parse(loads(dumps(doc)))))


def cli(tmp_path, *argv, **files):
    """Run the CLI with each keyword written to ``<name>.json``; returns (code, stdout, stderr)."""
    args = list(argv)
    for name, doc in files.items():
        path = tmp_path / f"{name}.json"
        path.write_text(doc if isinstance(doc, str) else dumps(doc))
        args[args.index(name)] = str(path)
    out, err = io.StringIO(), io.StringIO()
    code = run(args, out, err)
    return code, out.getvalue(), err.getvalue()


# --- canonical text -----------------------------------------------------------------------

def test_rationals_are_written_in_lowest_terms():
    assert dumps([Fraction(6, 4), Fraction(3), Fraction(-1, 3)]) == '["3/2","3","-1/3"]'


def test_keys_are_sorted():
    assert dumps({"b": 1, "a": [True, None]}) == '{"a":[true,null],"b":1}'


def test_floats_use_seventeen_significant_digits():
    assert dumps(0.1) == "0.10000000000000001"
    assert dumps(2.0) == "2.0"
    doc = profile_doc(parse_profile({"radians": [2.0, 2.0, 2.2831853071795862]}))
    assert dumps(doc) == '{"radians":[2.0,2.0,2.2831853071795862]}'


@given(st.floats(allow_nan=False, allow_infinity=False))
def test_float_text_reads_back_exactly(x):
    assert float(dumps(x)) == x


def test_non_finite_floats_are_refused():
    with pytest.raises(ValueError):
        dumps(float("nan"))


# --- roundtrips ----------------------------------------------------------------------------

def test_cube_document_is_byte_stable():
    doc = polytope_doc(cube(3))
    assert roundtrip(doc, parse_polytope, polytope_doc) == dumps(doc)


@given(polytopes(max_size=10))
def test_polytope_documents_are_byte_stable(P):
    text = dumps(polytope_doc(P))
    once = roundtrip(loads(text), parse_polytope, polytope_doc)
    assert once == text
    assert roundtrip(loads(once), parse_polytope, polytope_doc) == once


@given(polytopes(max_size=9))
def test_fan_documents_are_byte_stable(P):
    text = dumps(fan_doc(normal_fan(P)))
    assert roundtrip(loads(text), parse_fan, fan_doc) == text


def test_fan_twins_are_filled_in():
    F = parse_fan(SQUARE_FAN_ONE_WAY)
    walls = json.loads(dumps(fan_doc(F)))["walls"]
    assert len(walls) == 8
    pairs = {(w["from"], w["to"]): w["normal"] for w in walls}
    assert pairs[(1, 0)] == ["-1", "1"]
    assert all(pairs[(b, a)] == [str(-Fraction(x)) for x in n] for (a, b), n in pairs.items())


def test_float_mode_polytope_roundtrip():
    doc = {"dim": 2, "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 0.30000000000000004]]}
    P = parse_polytope(doc, ScalarMode.float(1e-9))
    text = dumps(polytope_doc(P))
    assert "0.30000000000000004" in text
    assert roundtrip(loads(text), lambda d: parse_polytope(d, ScalarMode.float(1e-9)), polytope_doc) == text


# --- parse errors ------------------------------------------------------------------------------

@pytest.mark.parametrize("doc, pointer", [
    ({"vertices": [[0, 0]]}, "/dim"),
    ({"dim": 2, "vertices": [[0, 0], [1, "x"]]}, "/vertices/1/1"),
    ({"dim": 2, "vertices": [[0, 0], [1]]}, "/vertices/1"),
    ({"dim": 2, "vertices": [[0, 0.5]]}, "/vertices/0/1"),
    ({"dim": 0, "vertices": [[0]]}, "/dim"),
    ([1, 2], "/"),
])
def test_polytope_parse_errors_point_at_the_value(doc, pointer):
    with pytest.raises(ParseError) as e:
        parse_polytope(doc)
    assert e.value.pointer == pointer


def test_fan_parse_errors_point_at_the_value():
    bad = json.loads(json.dumps(SQUARE_FAN_ONE_WAY))
    bad["walls"][2]["to"] = 9
    with pytest.raises(ParseError) as e:
        parse_fan(bad)
    assert e.value.pointer == "/walls/2/to"


def test_invalid_json_is_a_parse_error():
    with pytest.raises(ParseError):
        loads("{not json")


# --- command line -------------------------------------------------------------------------------

def test_inscribe_cube(tmp_path):
    code, out, _ = cli(tmp_path, "inscribe", "--polytope", "cube", cube=polytope_doc(cube(3)))
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["inscribable"] is True and doc["dim_inspc"] == 3
    assert doc["witness_polytope"]["dim"] == 3 and doc["lambda"] is not None


def test_planar_pentagon(tmp_path):
    pentagon = {"pi_multiples": ["2/3", "1/3", "1/3", "1/3", "1/3"]}
    code, out, _ = cli(tmp_path, "planar", "--profile", "pentagon", pentagon=pentagon)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["virtually_inscribable"] is True and doc["inscribable"] is False
    code, _, _ = cli(tmp_path, "planar", "--strict", "--profile", "pentagon", pentagon=pentagon)
    assert code == EXIT_NEGATIVE


def test_nestohedron_b4(tmp_path):
    b4 = {"ground": 4, "sets": [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4], [1, 2, 3, 4]]}
    code, out, _ = cli(tmp_path, "nestohedron", "--building", "b4", b4=b4)
    doc = json.loads(out)
    assert code == EXIT_OK
    assert doc["inscribed"] is True and doc["delta_closed"] is False


def test_nestohedron_path_violation_and_oracle(tmp_path):
    path3 = {"ground": 3, "sets": [[1], [2], [3], [1, 2], [2, 3], [1, 2, 3]]}
    code, out, _ = cli(tmp_path, "nestohedron", "--strict", "--oracle", "--building", "p", p=path3)
    assert code == EXIT_NEGATIVE
    assert json.loads(out)["violation"] is not None


def test_validation_errors_exit_two(tmp_path):
    code, out, err = cli(tmp_path, "inscribe", "--polytope", "bad", bad={"dim": 2, "vertices": [[0, "q"]]})
    assert code == EXIT_INVALID and out == ""
    assert json.loads(err)["pointer"] == "/vertices/0/1"
    code, _, err = cli(tmp_path, "fan", "--fan", "bad", bad="[")
    assert code == EXIT_INVALID and json.loads(err)["error"] == "parse"
    code, _, _ = cli(tmp_path, "nestohedron", "--building", "b", b={"ground": 3, "sets": [[1, 2], [2, 3]]})
    assert code == EXIT_INVALID
    assert run(["no-such-command"], io.StringIO(), io.StringIO()) == EXIT_INVALID


def test_missing_file_exits_two(tmp_path):
    err = io.StringIO()
    assert run(["fan", "--fan", str(tmp_path / "absent.json")], io.StringIO(), err) == EXIT_INVALID
    assert "cannot read" in err.getvalue()


def test_typecone_and_trajectory_commands(tmp_path):
    braid = polytope_doc(permutahedron((0, 1, 2)))
    code, out, _ = cli(tmp_path, "typecone", "--polytope", "p", p=braid)
    assert code == EXIT_OK and json.loads(out)["typecone_dim"] == 4
    code, out, _ = cli(tmp_path, "trajectory", "--oracle", "--polytope", "p", p=braid)
    doc = json.loads(out)
    assert doc["dim_trajectory"] == 3 and doc["oracle_agrees"] is True


def test_typecone_membership_from_weights(tmp_path):
    weights = {"weights": {"0-1": 1, "1-2": 2, "2-3": 1, "3-0": 2}}
    code, out, _ = cli(tmp_path, "typecone", "--fan", "f", "--lambda", "w", f=SQUARE_FAN_ONE_WAY, w=weights)
    doc = json.loads(out)
    assert code == EXIT_OK and doc["contains"] is True
    weights["weights"]["0-1"] = 3
    code, out, _ = cli(tmp_path, "typecone", "--strict", "--fan", "f", "--lambda", "w", f=SQUARE_FAN_ONE_WAY,
                       w=weights)
    assert code == EXIT_NEGATIVE and json.loads(out)["in_type_space"] is False


def test_delaunay_command(tmp_path):
    square = {"dim": 2, "points": {"a": [1, 1], "b": [-1, 1], "c": [-1, -1], "d": [1, -1]}}
    centred = {"dim": 2, "points": {**square["points"], "o": [0, 0]}}
    code, out, _ = cli(tmp_path, "delaunay", "--config", "s", s=square)
    assert code == EXIT_OK and json.loads(out)["cells"] == [["a", "b", "c", "d"]]
    code, out, _ = cli(tmp_path, "delaunay", "--config", "c", c=centred)
    assert len(json.loads(out)["cells"]) == 4


def test_csv_output(tmp_path):
    code, out, _ = cli(tmp_path, "planar", "--csv", "--profile", "h", h={"pi_multiples": ["1/3"] * 6})
    assert code == EXIT_OK
    assert out.splitlines() == ["region,pi_multiple"] + [f"{k},1/3" for k in range(6)]


def test_identical_invocations_give_identical_bytes(tmp_path):
    doc = polytope_doc(permutahedron((0, 1, 2)))
    runs = {cli(tmp_path, "inscribe", "--polytope", "p", p=doc)[1] for _ in range(3)}
    assert len(runs) == 1
    runs = {cli(tmp_path, "fan", "--fan", "f", f=SQUARE_FAN_ONE_WAY)[1] for _ in range(3)}
    assert len(runs) == 1
