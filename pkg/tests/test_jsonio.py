import json
from fractions import Fraction

import jsonschema
import pytest

from algsupport import SchemaError, quad, vec
from algsupport.charp import FiniteField
from algsupport.fixtures import ex4_spec, ex_min_spec
from algsupport.jsonio import (
    decode_cone,
    decode_order,
    decode_poly,
    decode_rational,
    decode_scalar,
    decode_shifts,
    decode_spec,
    decode_truncations,
    decode_vec,
    dumps,
    encode_cone,
    encode_order,
    encode_poly,
    encode_rational,
    encode_scalar,
    encode_spec,
    encode_tau,
    loads,
    validate,
)
from algsupport.support import tau_result


def schema_path(fn, *args):
    with pytest.raises(SchemaError) as info:
        fn(*args)
    return info.value.path


def test_loads_and_dumps():
    assert loads('{"a": 1}') == {"a": 1}
    assert schema_path(loads, "{") == "$"
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_rationals():
    assert decode_rational(3) == 3
    assert decode_rational([1, 2]) == Fraction(1, 2)
    assert schema_path(decode_rational, [1, 0], "$.x") == "$.x"
    assert schema_path(decode_rational, True) == "$"
    assert schema_path(decode_rational, 0.5) == "$"
    assert encode_rational(Fraction(3)) == 3
    assert encode_rational(Fraction(-1, 2)) == [-1, 2]


def test_quadratic_scalars():
    assert decode_scalar({"a": 0, "b": 1, "D": 2}) == quad(0, 1, 2)
    assert decode_scalar({"a": [1, 2], "D": 3}) == Fraction(1, 2)
    assert schema_path(decode_scalar, {"b": 1, "D": 4}) == "$"
    assert schema_path(decode_scalar, {"b": 1}) == "$"
    assert encode_scalar(quad(1, Fraction(1, 6), 2)) == {"a": 1, "b": [1, 6], "D": 2}


def test_vectors():
    assert decode_vec([1, [1, 2]]) == vec(1, Fraction(1, 2))
    assert schema_path(decode_vec, [1, 2, 3], "$.v", 2) == "$.v"
    assert schema_path(decode_vec, [1, "x"], "$.v") == "$.v[1]"
    assert schema_path(decode_vec, 5, "$.v") == "$.v"


def test_cones():
    assert decode_cone({"generators": [[1, 0], [1, 2]]}).rays == ((1, 0), (1, 2))
    assert decode_cone({"facets": [[1, 0]], "n": 2}).lineality == ((0, 1),)
    assert schema_path(decode_cone, {}) == "$"
    assert schema_path(decode_cone, {"generators": [[1, 0], [1, 0, 0]]}) == "$"
    assert schema_path(decode_cone, {"n": "2", "generators": []}) == "$.n"
    assert schema_path(decode_cone, [1, 2]) == "$"


def test_cones_given_both_ways():
    wedge = decode_cone({"generators": [[1, 0], [1, 2]], "facets": [[2, -1], [0, 1]]})
    assert wedge == decode_cone({"facets": [[0, 1], [2, -1]]})
    assert encode_cone(wedge) == {"n": 2, "generators": [[1, 0], [1, 2]], "facets": [[0, 1], [2, -1]]}
    half = encode_cone(decode_cone({"facets": [[1, 0]], "n": 2}))
    assert half["generators"] == [[0, -1], [0, 1], [1, 0]]
    assert half["facets"] == [[1, 0]]
    assert decode_cone(half) == decode_cone({"generators": half["generators"]})
    line = decode_cone({"n": 2, "facets": [[1, -1], [-1, 1]]})
    assert encode_cone(line)["facets"] == [[-1, 1], [1, -1]]
    assert schema_path(decode_cone, {"generators": [[1, 0], [1, 2]], "facets": [[1, 0], [0, 1]]}) == "$"
    assert schema_path(decode_cone, {"generators": [[1, 0]], "facets": [[1, 0, 0]]}) == "$"
    assert schema_path(decode_cone, {"n": 2, "facets": [[1, 0, 0]]}, "$.c") == "$.c.facets[0]"
    assert schema_path(decode_cone, {"inequalities": [[1, 0]]}) == "$"


def test_orders():
    order = decode_order({"weights": [[1, {"a": 0, "b": 1, "D": 2}]]})
    assert order.is_total()
    assert encode_order(order) == {"weights": [[1, {"a": 0, "b": 1, "D": 2}]]}
    assert schema_path(decode_order, {"weights": []}) == "$.weights"
    assert schema_path(decode_order, {}) == "$"


def test_shifts_and_truncations():
    shifts = decode_shifts({"shifts": [{"gamma": [1, -1], "cone": {"generators": [[1, 0], [0, 1]]}}]})
    assert shifts[0][0] == vec(1, -1)
    assert schema_path(decode_shifts, {"shifts": []}) == "$.shifts"
    assert schema_path(decode_shifts, {"shifts": [{"gamma": [1]}]}) == "$.shifts[0]"
    bad_gamma = {"shifts": [{"gamma": [1], "cone": {"generators": [[1, 0], [0, 1]]}}]}
    assert schema_path(decode_shifts, bad_gamma) == "$.shifts[0].gamma"
    assert decode_truncations({"truncations": [[[0, 0]], [[0, 0], [1, 1]]]})[1] == [vec(0, 0), vec(1, 1)]


def test_support_specs():
    spec = decode_spec({"n": 2, "rays": [{"base": [0, 0], "step": [1, -1]}]})
    assert spec == ex_min_spec()
    tail = {"n": 2, "ptails": [{"base": [1, 0], "dir": [1, -1], "p": 2, "drift": [2, -1]}]}
    assert decode_spec(tail) == ex4_spec()
    assert decode_spec({"n": 2, "points": [[[1, 2], 0]]}).lattice_scale == 2
    assert encode_spec(ex4_spec())["ptails"] == [{"base": [1, 0], "dir": [1, -1], "p": 2, "drift": [2, -1]}]


def test_support_spec_errors():
    assert schema_path(decode_spec, {"n": 0}) == "$.n"
    assert schema_path(decode_spec, {"n": 2, "rays": [{"base": [0, 0]}]}) == "$.rays[0]"
    assert schema_path(decode_spec, {"n": 2, "rays": [{"base": [0, 0], "step": [0, 0]}]}) == "$"
    assert schema_path(decode_spec, {"n": 2, "ptails": [{"base": [0, 0], "dir": [1, 0], "p": "2"}]}) == "$.ptails[0].p"
    assert schema_path(decode_spec, {"n": 2, "points": [[[1, 2], 0]], "lattice_scale": 1}) == "$"
    assert schema_path(decode_spec, {"n": 2, "semigroups": {}}) == "$.semigroups"


def test_polynomials():
    poly = decode_poly(
        {"field": {"p": 2, "m": 2}, "n": 1, "terms": [{"exp": [[-1, 2]], "coeff": {"fq": [0, 1]}}]}
    )
    t = FiniteField(2, 2).from_coeffs([0, 1])
    assert poly.coefficient((Fraction(-1, 2),)) == t
    assert decode_poly(encode_poly(poly)) == poly
    prime = decode_poly({"field": {"p": 3}, "n": 1, "terms": [{"exp": [1], "coeff": 5}]})
    assert encode_poly(prime)["terms"] == [{"exp": [1], "coeff": 2}]
    rational = decode_poly({"n": 2, "terms": [{"exp": [1, 0], "coeff": [1, 3]}]})
    assert rational.field is None
    assert rational.coefficient((1, 0)) == Fraction(1, 3)


def test_polynomial_errors():
    assert schema_path(decode_poly, {"field": {"p": 4}, "n": 1}) == "$.field"
    assert schema_path(decode_poly, {"field": {"p": 2, "m": 2}, "n": 1, "terms": [{"exp": [0], "coeff": {"fq": [1, 0, 1]}}]}) == "$.terms[0].coeff"
    assert schema_path(decode_poly, {"n": 1, "terms": [{"exp": [0, 1], "coeff": 1}]}) == "$.terms[0].exp"
    assert schema_path(decode_poly, {"n": 1, "terms": [{"coeff": 1}]}) == "$.terms[0]"


def test_encode_tau_is_json():
    out = encode_tau(tau_result(ex_min_spec()))
    assert out["tau0_empty"] is False
    assert out["tau"]["generators"] == [[1, 0], [1, 1]]
    assert out["tau1_conditions"] == [{"normal": [-1, 1], "strict": True}]
    json.dumps(out)


def test_schema_errors_point_at_the_offending_value():
    doc = {"shifts": [{"gamma": [0, 0], "cone": {"generators": [[1, "x"]]}}]}
    with pytest.raises(SchemaError) as info:
        decode_shifts(doc)
    assert info.value.path == "$.shifts[0].cone.generators[0][1]"
    assert isinstance(info.value.__cause__, jsonschema.ValidationError)
    assert schema_path(decode_shifts, {"shifts": [{"gamma": [0, 0], "cone": {}}]}) == "$.shifts[0].cone"
    assert schema_path(decode_shifts, {"shifts": [], "certify": "yes"}) == "$.certify"
    assert schema_path(decode_truncations, {"truncations": [[[0, 0]]]}) == "$.truncations"
    assert schema_path(decode_truncations, {"truncations": [[[0, 0]], [[0, 0, 1]]]}) == "$.truncations[1][0]"


def test_whole_documents_validate_against_their_schema():
    poly = {"field": {"p": 2}, "n": 1, "terms": [{"exp": [-1], "coeff": 1}]}
    validate({"poly": poly, "order": {"weights": [[1]]}}, "asroot.json")
    assert schema_path(validate, {"poly": poly, "order": {"weights": [[1]]}, "branch": "up"}, "asroot.json") == "$.branch"
    assert schema_path(validate, {"poly": poly}, "asroot.json") == "$"
    assert schema_path(validate, {"series": poly, "coefficients": [poly], "weight": [1.5]}, "gap.json") == "$.weight[0]"
    assert schema_path(validate, {"n": 3, "points": [[0, 0, 0]]}, "plot.json") == "$.n"
    assert schema_path(validate, {"n": 2, "rays": [{"base": [0, 0]}]}, "plot.json") == "$.rays[0]"


def test_integer_coefficients_over_both_fields():
    over_q = decode_poly({"n": 1, "terms": [{"exp": [0], "coeff": 2}]})
    assert over_q.coefficient((0,)) == 2
    over_f4 = decode_poly({"field": {"p": 2, "m": 2}, "n": 1, "terms": [{"exp": [0], "coeff": 1}]})
    assert over_f4.coefficient((0,)) == FiniteField(2, 2).element(1)
    assert decode_poly({"n": 1}).is_zero()
    assert schema_path(decode_poly, {"n": 1, "terms": [{"exp": [0], "coeff": {"fq": [1]}}]}) == "$.terms[0].coeff"
    assert schema_path(decode_poly, {"field": {"p": 3}, "n": 1, "terms": [{"exp": [0], "coeff": [1, 2]}]}) == "$.terms[0].coeff"
    assert schema_path(decode_poly, {"field": {"p": 1}, "n": 1}) == "$.field"
