import json

import pytest

from leibalg.cli import (
    EXIT_DATA,
    EXIT_INVALID,
    EXIT_IO,
    EXIT_NO_WITNESS,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_WITNESS_REJECTED,
    main,
)
from leibalg.documents import canonical_json, serialize_algebra, serialize_witness
from leibalg.extensions import canonical_extension
from leibalg.isoclinism import MAX_GL_ENV, search_isoclinism

from conftest import F3, FQ, paper_g1, paper_g2


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def run_json(capsys, *argv):
    rc, out, err = run(capsys, *argv, "--format", "json")
    return rc, json.loads(out), err


def write_doc(tmp_path, name, alg):
    path = tmp_path / name
    path.write_text(canonical_json(serialize_algebra(alg)), encoding="utf-8")
    return str(path)


# -- validate ----------------------------------------------------------------


def test_validate_catalog_entry(capsys):
    rc, out, err = run(capsys, "validate", "catalog:paper_g1")
    assert rc == EXIT_OK and err == ""
    assert "status: ok" in out
    assert "violations: []" in out


def test_validate_rejects_bad_algebra(capsys, tmp_path):
    doc = serialize_algebra(paper_g1(F3))
    doc["brackets"] = [{"left": 0, "right": 0, "value": [1, 0]}]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    rc, report, err = run_json(capsys, "validate", str(path))
    assert rc == EXIT_INVALID
    assert report["status"] == "invalid"
    violation = report["payload"]["violations"][0]
    assert violation["triple"] == [0, 0, 0]


# -- invariants --------------------------------------------------------------


def test_invariants_frozen_values(capsys):
    rc, report, err = run_json(capsys, "invariants", "catalog:paper_g2")
    assert rc == EXIT_OK
    payload = report["payload"]
    assert payload["field"] == "Q"
    assert payload["dim"] == 3
    assert payload["lie_center_dim"] == 1
    assert payload["lie_commutator_dim"] == 1
    assert payload["annihilator_dim"] == 1
    assert payload["liezation_dim"] == 2
    assert payload["is_lie"] is False and payload["is_abelian"] is False
    ce = payload["canonical_extension"]
    assert ce["n_dim"] == 1 and ce["q_dim"] == 2
    assert ce["stem"]["verdict"] == "not_stem"


def test_invariants_respects_field_flag(capsys):
    rc, report, err = run_json(capsys, "invariants", "catalog:paper_g2",
                               "--field", "5")
    assert rc == EXIT_OK
    assert report["payload"]["field"] == "F_5"


# -- isoclinic ---------------------------------------------------------------


def test_isoclinic_search_finds_witness(capsys):
    rc, report, err = run_json(capsys, "isoclinic", "catalog:paper_g1",
                               "catalog:paper_g2", "--field", "3")
    assert rc == EXIT_OK
    assert report["status"] == "ok"
    assert report["payload"]["witness"]["eta"] == [[1, 0], [0, 1]]
    assert report["payload"]["witness"]["xi"] == [[1]]


def test_isoclinic_no_witness(capsys):
    rc, report, err = run_json(capsys, "isoclinic", "catalog:paper_g1",
                               "catalog:abelian_2", "--field", "3")
    assert rc == EXIT_NO_WITNESS
    assert report["status"] == "no_witness"
    assert report["payload"]["first"]["lie_commutator_dim"] == 1
    assert report["payload"]["second"]["lie_commutator_dim"] == 0


def test_isoclinic_witness_file_accepted(capsys, tmp_path):
    e1 = canonical_extension(paper_g1(F3))
    e2 = canonical_extension(paper_g2(F3))
    w = search_isoclinism(e1, e2)
    path = tmp_path / "witness.json"
    path.write_text(json.dumps(serialize_witness(w)), encoding="utf-8")
    rc, report, err = run_json(capsys, "isoclinic", "catalog:paper_g1",
                               "catalog:paper_g2", "--field", "3",
                               "--witness", str(path))
    assert rc == EXIT_OK
    assert report["payload"]["surjectivity_automatic"] is True


def test_isoclinic_witness_file_over_rationals(capsys, tmp_path):
    path = tmp_path / "witness.json"
    path.write_text(json.dumps({"eta": [["1", "0"], ["0", "1"]],
                                "xi": [["1"]]}), encoding="utf-8")
    rc, report, err = run_json(capsys, "isoclinic", "catalog:paper_g1",
                               "catalog:paper_g2", "--witness", str(path))
    assert rc == EXIT_OK


def test_isoclinic_witness_file_rejected(capsys, tmp_path):
    e1 = canonical_extension(paper_g1(F3))
    e2 = canonical_extension(paper_g2(F3))
    w = search_isoclinism(e1, e2)
    doc = serialize_witness(w)
    doc["xi"] = [[2]]  # wrong scale: squares stop commuting
    path = tmp_path / "witness.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    rc, report, err = run_json(capsys, "isoclinic", "catalog:paper_g1",
                               "catalog:paper_g2", "--field", "3",
                               "--witness", str(path))
    assert rc == EXIT_WITNESS_REJECTED
    assert any("disagree" in f for f in report["payload"]["failures"])


def test_isoclinic_witness_eta_not_morphism(capsys, tmp_path):
    path = tmp_path / "witness.json"
    # invertible but not bracket-preserving on q1 -> q2
    path.write_text(json.dumps({"eta": [[0, 1], [1, 0]], "xi": [[1]]}),
                    encoding="utf-8")
    rc, report, err = run_json(capsys, "isoclinic", "catalog:paper_g1",
                               "catalog:paper_g2", "--field", "3",
                               "--witness", str(path))
    assert rc == EXIT_WITNESS_REJECTED
    assert any("morphism" in f for f in report["payload"]["failures"])


def test_isoclinic_witness_bad_shape_is_data_error(capsys, tmp_path):
    path = tmp_path / "witness.json"
    path.write_text(json.dumps({"eta": [[1]], "xi": [[1]]}), encoding="utf-8")
    rc, out, err = run(capsys, "isoclinic", "catalog:paper_g1",
                       "catalog:paper_g2", "--field", "3",
                       "--witness", str(path))
    assert rc == EXIT_DATA and "data error" in err


def test_isoclinic_search_and_witness_are_exclusive(capsys, tmp_path):
    path = tmp_path / "w.json"
    path.write_text("{}", encoding="utf-8")
    rc, out, err = run(capsys, "isoclinic", "catalog:paper_g1",
                       "catalog:paper_g2", "--field", "3",
                       "--search", "--witness", str(path))
    assert rc == EXIT_USAGE


# -- classify ----------------------------------------------------------------


def test_classify_directory(capsys, tmp_path):
    from leibalg.algebra import LeibnizAlgebra, direct_product
    write_doc(tmp_path, "a_g1.json", paper_g1(F3))
    write_doc(tmp_path, "b_g2.json", paper_g2(F3))
    write_doc(tmp_path, "c_fat.json",
              direct_product(paper_g1(F3), LeibnizAlgebra.abelian(F3, 1)))
    write_doc(tmp_path, "d_ab.json", LeibnizAlgebra.abelian(F3, 2))
    rc, report, err = run_json(capsys, "classify", str(tmp_path))
    assert rc == EXIT_OK
    payload = report["payload"]
    assert payload["count"] == 2
    first, second = payload["classes"]
    assert first["representative"] == "a_g1.json"
    assert first["members"] == ["a_g1.json", "b_g2.json", "c_fat.json"]
    assert second["members"] == ["d_ab.json"]
    assert set(first["witnesses"]) == {"a_g1.json", "b_g2.json", "c_fat.json"}
    assert first["witnesses"]["a_g1.json"]["eta"] == [[1, 0], [0, 1]]


def test_classify_requires_common_finite_field(capsys, tmp_path):
    write_doc(tmp_path, "a.json", paper_g1(F3))
    write_doc(tmp_path, "b.json", paper_g1(FQ))
    rc, out, err = run(capsys, "classify", str(tmp_path))
    assert rc == EXIT_DATA and "data error" in err


def test_classify_rational_documents_with_field_flag(capsys, tmp_path):
    write_doc(tmp_path, "a.json", paper_g1(FQ))
    write_doc(tmp_path, "b.json", paper_g2(FQ))
    rc, out, err = run(capsys, "classify", str(tmp_path))
    assert rc == EXIT_DATA
    rc, report, err = run_json(capsys, "classify", str(tmp_path), "--field", "3")
    assert rc == EXIT_OK
    assert report["payload"]["count"] == 1


# -- extension ---------------------------------------------------------------


def test_extension_canonical(capsys):
    rc, report, err = run_json(capsys, "extension", "canonical",
                               "catalog:paper_g2")
    assert rc == EXIT_OK
    payload = report["payload"]
    assert payload["valid"] is True
    assert (payload["n_dim"], payload["g_dim"], payload["q_dim"]) == (1, 3, 2)
    assert payload["sequence_tail"]["ok"] is True
    assert payload["sequence_nine"]["ok"] is True
    assert payload["stem"]["verdict"] == "not_stem"


def test_extension_backward(capsys):
    rc, report, err = run_json(capsys, "extension", "backward",
                               "catalog:paper_g1", "catalog:paper_g2",
                               "--field", "3")
    assert rc == EXIT_OK
    payload = report["payload"]
    assert payload["construction"] == "backward"
    assert payload["valid"] is True
    assert payload["g_dim"] == 3
    assert payload["iso_triple_isoclinic"] is True


def test_extension_pullback(capsys):
    rc, report, err = run_json(capsys, "extension", "pullback",
                               "catalog:paper_g1", "catalog:paper_g2",
                               "--field", "3")
    assert rc == EXIT_OK
    payload = report["payload"]
    assert payload["g_dim"] == 3  # 2 + 3 - 2
    assert payload["triples_isoclinic"] == [True, True]


def test_extension_backward_without_witness(capsys):
    rc, report, err = run_json(capsys, "extension", "backward",
                               "catalog:paper_g1", "catalog:abelian_2",
                               "--field", "3")
    assert rc == EXIT_NO_WITNESS
    assert report["status"] == "no_witness"


def test_extension_product(capsys):
    rc, report, err = run_json(capsys, "extension", "product",
                               "catalog:paper_g1", "--abelian-dim", "2")
    assert rc == EXIT_OK
    payload = report["payload"]
    assert payload["n_dim"] == 2 and payload["g_dim"] == 4
    assert payload["triples_isoclinic"] == [True, True]
    rc, out, err = run(capsys, "extension", "product", "catalog:paper_g1",
                       "--abelian-dim", "-1")
    assert rc == EXIT_USAGE


# -- catalog -----------------------------------------------------------------


def test_catalog_list(capsys):
    rc, report, err = run_json(capsys, "catalog", "list")
    assert rc == EXIT_OK
    names = [e["name"] for e in report["payload"]["entries"]]
    assert "paper_g1" in names and "abelian_n" in names


def test_catalog_show_round_trip(capsys, tmp_path):
    rc, out, err = run(capsys, "catalog", "show", "paper_g1",
                       "--format", "json", "--field", "3")
    assert rc == EXIT_OK
    doc = json.loads(out)
    assert doc == serialize_algebra(paper_g1(F3))
    assert out == canonical_json(doc)
    path = tmp_path / "g1.json"
    path.write_text(out, encoding="utf-8")
    rc2, out2, err2 = run(capsys, "validate", str(path))
    assert rc2 == EXIT_OK


def test_catalog_show_text(capsys):
    rc, out, err = run(capsys, "catalog", "show", "paper_g1")
    assert rc == EXIT_OK
    assert "dim: 2" in out and "basis" in out


def test_catalog_show_unknown(capsys):
    rc, out, err = run(capsys, "catalog", "show", "nope")
    assert rc == EXIT_DATA and "data error" in err


# -- error lanes and flag handling ---------------------------------------------


def test_missing_file_is_io_error(capsys, tmp_path):
    rc, out, err = run(capsys, "validate", str(tmp_path / "missing.json"))
    assert rc == EXIT_IO and "io error" in err


def test_malformed_json_is_data_error(capsys, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{oops", encoding="utf-8")
    rc, out, err = run(capsys, "validate", str(path))
    assert rc == EXIT_DATA


def test_characteristic_two_is_data_error(capsys):
    rc, out, err = run(capsys, "invariants", "catalog:paper_g1", "--field", "2")
    assert rc == EXIT_DATA


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == EXIT_USAGE
    capsys.readouterr()
    assert main(["frobnicate"]) == EXIT_USAGE
    capsys.readouterr()


def test_max_gl_flag_enforced(capsys):
    rc, out, err = run(capsys, "isoclinic", "catalog:paper_g1",
                       "catalog:paper_g2", "--field", "3", "--max-gl", "10")
    assert rc == EXIT_USAGE and "GL" in err


def test_max_gl_env_enforced(capsys, monkeypatch):
    monkeypatch.setenv(MAX_GL_ENV, "10")
    rc, out, err = run(capsys, "isoclinic", "catalog:paper_g1",
                       "catalog:paper_g2", "--field", "3")
    assert rc == EXIT_USAGE
    monkeypatch.setenv(MAX_GL_ENV, "junk")
    rc, out, err = run(capsys, "isoclinic", "catalog:paper_g1",
                       "catalog:paper_g2", "--field", "3")
    assert rc == EXIT_USAGE and "integer" in err


def test_global_flags_before_subcommand(capsys):
    rc1, out1, err1 = run(capsys, "--format", "json", "--field", "3",
                          "invariants", "catalog:paper_g2")
    rc2, out2, err2 = run(capsys, "invariants", "catalog:paper_g2",
                          "--format", "json", "--field", "3")
    assert rc1 == rc2 == EXIT_OK
    assert out1 == out2


def test_seed_is_recorded(capsys):
    rc, report, err = run_json(capsys, "invariants", "catalog:paper_g1",
                               "--seed", "7")
    assert report["seed"] == 7


# -- determinism ---------------------------------------------------------------


def test_reports_are_byte_deterministic(capsys, tmp_path):
    from leibalg.algebra import LeibnizAlgebra, direct_product
    write_doc(tmp_path, "a.json", paper_g1(F3))
    write_doc(tmp_path, "b.json", paper_g2(F3))
    write_doc(tmp_path, "c.json", LeibnizAlgebra.abelian(F3, 3))
    commands = [
        ("invariants", "catalog:paper_g2"),
        ("isoclinic", "catalog:paper_g1", "catalog:paper_g2", "--field", "3",
         "--seed", "11"),
        ("classify", str(tmp_path)),
        ("extension", "pullback", "catalog:paper_g1", "catalog:paper_g2",
         "--field", "3"),
        ("catalog", "show", "paper_g2"),
    ]
    for argv in commands:
        first = run(capsys, *argv, "--format", "json")
        second = run(capsys, *argv, "--format", "json")
        assert first == second
        assert first[0] == EXIT_OK
