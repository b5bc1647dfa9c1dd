import json
import random

import pytest

from adhmkit.fixtures import FIXTURES, get_fixture_datum
from adhmkit.jsonio import (
    DatumSchemaError,
    datum_to_json,
    dumps_canonical,
    locus_to_json,
    parse_datum,
    subspace_to_json,
)
from adhmkit.linalg import Subspace

from conftest import random_adhm_datum, random_datum


def test_round_trip_fixtures():
    for fixture_id in FIXTURES:
        x = get_fixture_datum(fixture_id)
        assert parse_datum(datum_to_json(x)) == x


def test_round_trip_random():
    rng = random.Random(80)
    for _ in range(60):
        x = random_datum(rng) if rng.random() < 0.5 else random_adhm_datum(rng)
        document = datum_to_json(x)
        assert parse_datum(document) == x
        # and the document itself survives a JSON text round trip
        assert parse_datum(json.loads(json.dumps(document))) == x


def test_round_trip_gaussian_entries():
    from adhmkit.adhm import AdhmDatum, act, GroupElement
    from adhmkit.linalg import Matrix
    from adhmkit.scalars import I, ONE, ZERO

    g = GroupElement.from_matrix(Matrix(2, 2, ((ONE, I), (ZERO, ONE))))
    x = act(g, get_fixture_datum("gitvsfj"))
    document = datum_to_json(x)
    assert parse_datum(document) == x
    flattened = json.dumps(document)
    assert "i" in flattened  # imaginary units serialized in the grammar
    assert parse_datum(json.loads(flattened)) == x


def test_schema_error_paths():
    good = datum_to_json(get_fixture_datum("gitvsfj"))
    bad = json.loads(json.dumps(good))
    bad["B1"][0][1] = {"x9": "1"}
    with pytest.raises(DatumSchemaError) as err:
        parse_datum(bad)
    assert "B1[0][1]" in str(err.value)

    bad2 = json.loads(json.dumps(good))
    bad2["i"][1][0] = {"x0": "not-a-scalar"}
    with pytest.raises(DatumSchemaError) as err:
        parse_datum(bad2)
    assert "i[1][0].x0" in str(err.value)

    with pytest.raises(DatumSchemaError):
        parse_datum({"c": 1, "r": 1})
    with pytest.raises(DatumSchemaError):
        parse_datum({"c": -1, "r": 0, "B1": [], "B2": [], "i": [], "j": []})
    with pytest.raises(DatumSchemaError):
        parse_datum([1, 2, 3])


def test_wrong_shape_rejected():
    good = datum_to_json(get_fixture_datum("gitvsfj"))
    bad = json.loads(json.dumps(good))
    bad["B2"] = bad["B2"][:1]
    with pytest.raises(DatumSchemaError) as err:
        parse_datum(bad)
    assert "B2" in str(err.value)


def test_zero_coefficients_omitted():
    x = get_fixture_datum("fj-counterexample")
    document = datum_to_json(x)
    assert document["B1"] == [[{}, {}, {}], [{}, {}, {}], [{}, {}, {}]]
    assert document["i"][0][0] == {"x0": "1"}
    assert document["i"][0][1] == {"x1": "1"}


def test_dumps_canonical_deterministic():
    x = get_fixture_datum("gitvsfj")
    a = dumps_canonical(datum_to_json(x))
    b = dumps_canonical(datum_to_json(get_fixture_datum("gitvsfj")))
    assert a == b
    compact = dumps_canonical(datum_to_json(x), compact=True)
    assert "\n" not in compact


def test_subspace_and_locus_json():
    from adhmkit.adhm import P1Point, UnstableLocus, unstable_locus
    from adhmkit.fixtures import get_fixture_datum

    s = Subspace.from_rows(3, [[1, 0, 2]])
    assert subspace_to_json(s) == {"ambient_dim": 3, "basis": [["1", "0", "2"]]}
    locus = unstable_locus(get_fixture_datum("gitvsfj"))
    assert locus_to_json(locus) == {
        "kind": "whole_line", "points": [], "residual": None,
    }
