import json
import random

import pytest

from leibalg.algebra import LeibnizAlgebra
from leibalg.catalog import (
    ABELIAN_PREFIX,
    CatalogError,
    catalog_entry,
    catalog_names,
    describe,
)
from leibalg.documents import (
    SCHEMA_VERSION,
    DocumentError,
    algebra_from_document,
    algebra_hash,
    canonical_json,
    content_hash,
    convert_field,
    field_from_json,
    field_to_json,
    matrix_from_json,
    matrix_to_json,
    parse_algebra_json,
    serialize_algebra,
    serialize_witness,
)
from leibalg.extensions import canonical_extension
from leibalg.fields import Field
from leibalg.isoclinism import search_isoclinism
from leibalg.linalg import Matrix

from conftest import F3, F5, FQ, paper_g1, paper_g2, random_leibniz_algebra


# -- field codecs --------------------------------------------------------------


def test_field_json_round_trip():
    assert field_to_json(FQ) == "Q"
    assert field_to_json(F3) == {"p": 3}
    assert field_from_json("Q") == FQ
    assert field_from_json({"p": 5}) == F5
    for bad in ("R", {"p": 4}, {"p": 2}, {"q": 3}, {"p": "3"}, 7, None):
        with pytest.raises(DocumentError):
            field_from_json(bad)


# -- algebra round trips ----------------------------------------------------------


def test_round_trip_over_both_fields(suite):
    rng = random.Random(81)
    sample = list(suite[:30])
    sample.append(paper_g1(FQ))
    sample.append(paper_g2(FQ))
    for _ in range(5):
        sample.append(random_leibniz_algebra(rng, F5))
    for alg in sample:
        doc = serialize_algebra(alg)
        back = algebra_from_document(doc)
        assert back == alg
        again = parse_algebra_json(json.dumps(doc))
        assert again == alg


def test_serialization_is_sparse_and_sorted():
    doc = serialize_algebra(paper_g2(FQ))
    pairs = [(b["left"], b["right"]) for b in doc["brackets"]]
    assert pairs == [(0, 0), (1, 0), (2, 0)]
    assert pairs == sorted(pairs)
    assert all(b["value"] == ["0", "0", "1"] for b in doc["brackets"])
    assert doc["dim"] == 3 and doc["basis"] == ["a1", "a2", "a3"]


def test_rational_coefficients_serialize_canonically():
    alg = LeibnizAlgebra.from_structure(
        FQ, 2, {(0, 0): (0, Field.rationals().of("1/2"))})
    doc = serialize_algebra(alg)
    assert doc["brackets"][0]["value"] == ["0", "1/2"]
    assert algebra_from_document(doc) == alg


# -- schema rejection --------------------------------------------------------------


def good_doc():
    return serialize_algebra(paper_g1(F3))


def test_document_rejections():
    cases = []

    d = good_doc()
    d["schema_version"] = "2"
    cases.append((d, "schema_version"))

    d = good_doc()
    d["extra"] = 1
    cases.append((d, "unknown"))

    d = good_doc()
    del d["dim"]
    cases.append((d, "dim"))

    d = good_doc()
    d["dim"] = -1
    cases.append((d, "dim"))

    d = good_doc()
    d["basis"] = ["e1"]
    cases.append((d, "basis"))

    d = good_doc()
    d["brackets"].append(dict(d["brackets"][0]))
    cases.append((d, "duplicate"))

    d = good_doc()
    d["brackets"][0]["left"] = 9
    cases.append((d, "range"))

    d = good_doc()
    d["brackets"][0]["value"] = ["0"]
    cases.append((d, "coefficients"))

    d = good_doc()
    d["brackets"][0]["wrong"] = 1
    cases.append((d, "bracket"))

    d = good_doc()
    d["field"] = {"p": 2}
    cases.append((d, "characteristic 2"))

    for doc, needle in cases:
        with pytest.raises(DocumentError, match=needle):
            algebra_from_document(doc)


def test_malformed_json_text():
    with pytest.raises(DocumentError, match="JSON"):
        parse_algebra_json("{not json")
    with pytest.raises(DocumentError):
        parse_algebra_json('"just a string"')


def test_parse_reports_leibniz_violation_with_triple():
    doc = serialize_algebra(paper_g1(F3))
    doc["brackets"] = [{"left": 0, "right": 0, "value": ["1", "0"]}]
    with pytest.raises(DocumentError, match=r"\(0, 0, 0\)"):
        algebra_from_document(doc)
    # the same document parses when validation is deferred
    from leibalg.algebra import validate
    alg = algebra_from_document(doc, check=False)
    assert not validate(alg).ok


# -- field conversion ---------------------------------------------------------------


def test_convert_field():
    g = paper_g1(FQ)
    reduced = convert_field(g, F3)
    assert reduced.field == F3
    assert reduced == paper_g1(F3)
    assert convert_field(g, FQ) is g
    with pytest.raises(DocumentError, match="reinterpret"):
        convert_field(reduced, FQ)
    with pytest.raises(DocumentError, match="reinterpret"):
        convert_field(reduced, F5)


def test_convert_field_rejects_non_integral_reduction():
    half = LeibnizAlgebra.from_structure(FQ, 2, {(0, 0): (0, FQ.of("1/3"))})
    with pytest.raises(Exception):
        convert_field(half, F3)
    ok = convert_field(LeibnizAlgebra.from_structure(FQ, 2, {(0, 0): (0, FQ.of("1/2"))}), F3)
    assert ok.structure[0][0] == (0, 2)  # 1/2 = 2 mod 3


# -- canonical form and hashing ------------------------------------------------------


def test_canonical_json_is_key_order_independent():
    a = canonical_json({"b": 1, "a": [True, None, "x"]})
    b = canonical_json({"a": [True, None, "x"], "b": 1})
    assert a == b
    assert a.endswith("\n") and '", "' not in a


def test_content_hash_frozen():
    doc = serialize_algebra(paper_g1(F3))
    assert content_hash(doc) == (
        "sha256:a03dd325f8bb3533e4e842b6582bf6025f3a0b28504cee0d339be0fed8957861")
    assert algebra_hash(paper_g1(F3)) == content_hash(doc)
    assert algebra_hash(paper_g1(F5)) != algebra_hash(paper_g1(F3))


def test_hash_distinguishes_structure(suite):
    seen = {}
    for alg in suite[:60]:
        h = algebra_hash(alg)
        if h in seen:
            assert seen[h] == alg
        seen[h] = alg


# -- witness and matrix codecs --------------------------------------------------------


def test_witness_serialization_round_trip():
    e1 = canonical_extension(paper_g1(F3))
    e2 = canonical_extension(paper_g2(F3))
    w = search_isoclinism(e1, e2)
    doc = serialize_witness(w)
    assert doc["schema_version"] == SCHEMA_VERSION
    eta = matrix_from_json(F3, doc["eta"], 2, 2)
    xi = matrix_from_json(F3, doc["xi"], 1, 1)
    assert eta == w.eta.matrix and xi == w.xi.matrix


def test_matrix_codec_edge_cases():
    empty = Matrix.zeros(F3, 0, 2)
    assert matrix_to_json(empty) == []
    assert matrix_from_json(F3, [], 0, 2) == empty
    tall = Matrix.zeros(F3, 2, 0)
    assert matrix_to_json(tall) == [[], []]
    assert matrix_from_json(F3, [[], []], 2, 0) == tall
    with pytest.raises(DocumentError, match="2x2"):
        matrix_from_json(F3, [[1, 2]], 2, 2)
    with pytest.raises(DocumentError, match="coefficient"):
        matrix_from_json(FQ, [["1/0"]], 1, 1)


# -- catalog ---------------------------------------------------------------------------


def test_catalog_names_and_describe():
    names = list(catalog_names())
    assert "paper_g1" in names and "paper_g2" in names and "paper_q2" in names
    assert names[-1] == "abelian_n" and names == sorted(names[:-1]) + ["abelian_n"]
    for name in names:
        assert describe(name)
    with pytest.raises(CatalogError):
        describe("nope")


def test_catalog_entries():
    g1 = catalog_entry("paper_g1")
    assert g1.field == FQ and g1 == paper_g1(FQ)
    g2 = catalog_entry("paper_g2", F3)
    assert g2 == paper_g2(F3)
    q2 = catalog_entry("paper_q2")
    assert q2.dim == 2 and q2.basis_names == ("a1", "a3")
    assert q2.structure == paper_g1(FQ).structure

    ab = catalog_entry(ABELIAN_PREFIX + "4", F5)
    assert ab.dim == 4 and ab.field == F5
    from leibalg.algebra import is_abelian
    assert is_abelian(ab)


def test_catalog_errors():
    with pytest.raises(CatalogError):
        catalog_entry("paper_g9")
    with pytest.raises(CatalogError, match="dimension"):
        catalog_entry("abelian_n")
    with pytest.raises(CatalogError):
        catalog_entry("abelian_x")
