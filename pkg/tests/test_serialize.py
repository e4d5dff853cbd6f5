import json
from fractions import Fraction

import pytest

from quatlift import fixture as fx
from quatlift import serialize as ser


def test_rational_strings():
    assert ser.rational_to_str(Fraction(-96, 1)) == "-96"
    assert ser.rational_to_str(Fraction(3, 4)) == "3/4"
    assert ser.parse_rational("-96/1") == -96
    assert ser.parse_rational("7") == 7
    with pytest.raises(ser.SchemaError):
        ser.parse_rational("1/0")
    with pytest.raises(ser.SchemaError):
        ser.parse_rational("abc")


def test_algebra_roundtrip_bit_exact(tmp_path):
    obj = ser.algebra_to_obj(fx.fixture_algebra())
    text = ser.dumps_canonical(obj)
    again = ser.dumps_canonical(ser.roundtrip_obj(json.loads(text), "algebra"))
    assert text == again
    alg = ser.algebra_from_obj(obj)
    assert alg.c == fx.fixture_algebra().c


def test_expansion_roundtrip_normalizes(golden_130):
    obj = ser.expansion_to_obj(golden_130)
    # corrupt a value into non-canonical form; roundtrip restores it
    hacked = json.loads(ser.dumps_canonical(obj))
    for entry in hacked["entries"]:
        if entry[:3] == [4, 2, 6]:
            entry[3] = "-96/1"
    normalized = ser.roundtrip_obj(hacked, "expansion")
    entry = next(e for e in normalized["entries"] if e[:3] == [4, 2, 6])
    assert entry[3] == "-96"
    assert ser.dumps_canonical(normalized) == ser.dumps_canonical(obj)


def test_expansion_entries_sorted(golden_130):
    obj = ser.expansion_to_obj(golden_130)
    keys = [(4 * a * c - b * b, a, b) for a, b, c, _ in obj["entries"]]
    assert keys == sorted(keys)


def test_lattice_roundtrip_and_rejection():
    alg = fx.fixture_algebra()
    obj = ser.lattice_to_obj(fx.order_r2())
    lat = ser.lattice_from_obj(obj, alg)
    assert lat == fx.order_r2()
    # doubling the last basis vector of R1 breaks multiplicative closure
    bad = json.loads(json.dumps(ser.lattice_to_obj(fx.order_r1())))
    bad["basis"][3] = ["0", "0", "0", "2"]
    with pytest.raises(ser.SchemaError, match="not closed under multiplication"):
        ser.lattice_from_obj(bad, alg)
    rankless = json.loads(json.dumps(obj))
    rankless["basis"][3] = ["1", "0", "0", "0"]
    with pytest.raises(ser.SchemaError):
        ser.lattice_from_obj(rankless, alg)


def test_corrupt_structure_constant_rejected():
    obj = ser.algebra_to_obj(fx.fixture_algebra())
    bad = json.loads(json.dumps(obj))
    bad["structure_constants"][1][2][0] = "99"
    with pytest.raises(ValueError):
        ser.algebra_from_obj(bad)


def test_malformed_json_diagnostic(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"weight": 3,\n  "level": }\n')
    with pytest.raises(ser.SchemaError, match=r"broken\.json:2:"):
        ser.load_json(str(path))


def test_form_roundtrip():
    obj = ser.form_to_obj(fx.phi1())
    again = ser.roundtrip_obj(obj, "form")
    assert obj == again


def test_eigenvalue_map():
    assert ser.eigenvalue_map_to_obj({2: Fraction(-5), 3: Fraction(-8)}) == \
        {"2": "-5", "3": "-8"}


def test_ideal_serialization_includes_orders():
    obj = ser.lattice_to_obj(fx.ideal_i12())
    assert obj["kind"] == "ideal"
    alg = fx.fixture_algebra()
    left = ser.lattice_from_obj({"kind": "order", "basis": obj["left_order"],
                                 "algebra_ref": ""}, alg)
    right = ser.lattice_from_obj({"kind": "order", "basis": obj["right_order"],
                                  "algebra_ref": ""}, alg)
    assert left == fx.order_r2() and right == fx.order_r1()
    text = ser.dumps_canonical(obj)
    import json as _json
    again = ser.dumps_canonical(ser.roundtrip_obj(_json.loads(text), "lattice", alg))
    assert text == again
