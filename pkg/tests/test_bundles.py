import json

import pytest
from hypothesis import given, settings, strategies as st

from flagforge import bundles
from flagforge.bundles import BundleError, FlagBundle, MultiBundle
from flagforge.examples import antisym_example
from flagforge.polyring import Poly
from flagforge.projective import DistributionError, EulerRelationFails, descend_form, fields_distribution

SUM_SQUARES = Poly.parse("z1^2+z2^2+z3^2+z4^2", 5)


def round_trip(obj):
    text = bundles.dumps(bundles.bundle_to_dict(obj))
    again = bundles.loads(text)
    assert again == obj
    assert bundles.dumps(bundles.bundle_to_dict(again)) == text
    return text


@given(st.integers(1, 4))
@settings(max_examples=4)
def test_disti_round_trip(k):
    b = bundles.disti_bundle(k)
    round_trip(b)
    round_trip(b.upper)
    round_trip(b.lower)


def test_hamilton_round_trip():
    for idx in ([1], [1, 3], [1, 2, 3]):
        b = bundles.hamilton_bundle(SUM_SQUARES, 4, indices=idx)
        round_trip(b)
    round_trip(MultiBundle((bundles.hamilton_bundle(SUM_SQUARES, 4), bundles.disti_bundle(1))))


def test_schema_keys():
    b = bundles.disti_bundle(1)
    data = b.to_dict()
    assert set(data["upper"]) == {"n", "codim", "degree", "omega"}
    assert set(data["lower"]) == {"n", "fields", "degrees"}
    assert data["upper"]["degree"] == 1 and data["lower"]["degrees"] == [2]


def test_hamilton_bundle_contents():
    b = bundles.hamilton_bundle(SUM_SQUARES, 4, indices=[2])
    data = b.to_dict()
    assert data["source"]["k"] == 2
    assert data["candidates"][1]["valid"] is False
    # the lower member uses the corrected H2
    assert data["lower"]["fields"] == ["-2*z3 d/dz1 - 2*z4 d/dz2 + 2*z1 d/dz3 + 2*z2 d/dz4"]
    assert data["brackets"]["2,3"] != "0"
    assert any("critical point" in u for u in data["unverified"])
    with pytest.raises(BundleError):
        bundles.hamilton_bundle(SUM_SQUARES, 4, indices=[4])


def test_dumps_is_deterministic():
    assert bundles.dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}\n'


def test_malformed_bundles():
    for text in ["[1]", "{}", "not json", '{"n": 3, "codim": 1}', '{"n": "3", "codim": 1, "omega": "dz0"}',
                 '{"n": 3, "fields": []}', '{"n": 3, "fields": [3]}', '{"flags": []}', '{"flags": [1]}',
                 '{"n": 2, "codim": 1, "omega": "z0 +"}', '{"n": true, "codim": 1, "omega": "dz0"}']:
        with pytest.raises(BundleError):
            bundles.loads(text)


def test_invalid_distributions_in_bundles():
    with pytest.raises(EulerRelationFails):
        bundles.loads('{"n": 2, "codim": 1, "omega": "dz0"}')
    with pytest.raises(DistributionError):
        bundles.loads('{"n": 2, "codim": 1, "degree": 3, "omega": "z1 dz0 - z0 dz1"}')
    with pytest.raises(DistributionError):
        bundles.loads('{"n": 2, "fields": ["d/dz0"], "degrees": [1]}')
    data = bundles.disti_bundle(1).to_dict()
    data["n"] = 4
    with pytest.raises(BundleError):
        bundles.bundle_from_dict(data)


def test_meta_is_preserved():
    omega, x = antisym_example(1)
    b = FlagBundle(3, fields_distribution([x], 3), descend_form(omega, 3), {"note": ["kept"]})
    again = bundles.loads(bundles.dumps(b.to_dict()))
    assert again.meta == {"note": ["kept"]}
    assert json.loads(bundles.dumps(again.to_dict()))["note"] == ["kept"]
