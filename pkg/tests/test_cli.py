"""Command-line interface and ideal-file round trips."""

import json

import pytest

from localring import ideal_io
from localring.cli import main


CI_TEXT = """\
# complete intersection fixture
field Q
vars x y z
gen x^2
gen y
"""

NCM_TEXT = """\
field Q
vars x y z
gen x^2
gen x*y
gen y - z^3
"""

PERT_TEXT = """\
field Q
vars x y z
gen x^2
pert z^5
gen y
"""


@pytest.fixture
def ci_file(tmp_path):
    path = tmp_path / "ci.ideal"
    path.write_text(CI_TEXT)
    return str(path)


@pytest.fixture
def ncm_file(tmp_path):
    path = tmp_path / "ncm.ideal"
    path.write_text(NCM_TEXT)
    return str(path)


def test_parse_ideal_text():
    ideal = ideal_io.parse_ideal_text(CI_TEXT)
    assert ideal.ring.nvars == 3
    assert [str(g) for g in ideal.generators] == ["x^2", "y"]
    assert not ideal.has_perturbations()


def test_parse_ideal_with_perturbation():
    ideal = ideal_io.parse_ideal_text(PERT_TEXT)
    assert ideal.has_perturbations()
    assert str(ideal.perturbations[0]) == "z^5"
    assert ideal.perturbations[1] is None


def test_parse_ideal_errors():
    cases = [
        ("vars x\ngen x", "field"),
        ("field Q\ngen x", "vars"),
        ("field Q\nvars x\nbogus 1", "unknown keyword"),
        ("field Q\nvars x\ngen x +", "bad polynomial"),
        ("field F 6\nvars x\ngen x", ""),
        ("field Q\nvars x\npert x\ngen x\npert x\npert x", "more pert"),
        ("field Q\nvars x", "gen line"),
    ]
    for text, fragment in cases:
        with pytest.raises(ideal_io.IdealFileError) as err:
            ideal_io.parse_ideal_text(text)
        assert fragment in str(err.value)


def test_serialize_round_trip():
    for text in (CI_TEXT, PERT_TEXT):
        ideal = ideal_io.parse_ideal_text(text)
        again = ideal_io.parse_ideal_text(ideal_io.serialize_ideal(ideal))
        assert [str(g) for g in again.generators] == [str(g) for g in ideal.generators]
        assert [str(p) if p else None for p in again.perturbations] == [
            str(p) if p else None for p in ideal.perturbations
        ]


def test_cli_hilbert(ci_file, capsys, tmp_path):
    out = str(tmp_path / "h.json")
    assert main(["hilbert", ci_file, "--degree", "5", "--json", out]) == 0
    text = capsys.readouterr().out
    assert "[1, 2, 2, 2, 2, 2]" in text
    payload = json.loads(open(out).read())
    assert payload["hf"] == [1, 2, 2, 2, 2, 2]
    assert payload["h_polynomial"] == [1, 1]


def test_cli_invariants(ncm_file, capsys):
    assert main(["invariants", ncm_file]) == 0
    text = capsys.readouterr().out
    assert "dimension: 1" in text
    assert "multiplicity: 1" in text
    assert "depth: 0" in text
    assert "cohen_macaulay: False" in text
    assert "artin_rees: 4" in text


def test_cli_betti(ncm_file, capsys):
    assert main(["betti", ncm_file]) == 0
    assert "(1, 3, 3, 1)" in capsys.readouterr().out


def test_cli_resolve(ci_file, capsys, tmp_path):
    out = str(tmp_path / "r.json")
    assert main(["resolve", ci_file, "--show-maps", "--json", out]) == 0
    text = capsys.readouterr().out
    assert "ranks: (1, 2, 1)" in text
    assert "d_1 columns:" in text
    payload = json.loads(open(out).read())
    assert payload["ranks"] == [1, 2, 1]
    assert len(payload["maps"]) == 2


def test_cli_artin_rees(ncm_file, capsys):
    assert main(["artin-rees", ncm_file, "--syzygies", "3"]) == 0
    text = capsys.readouterr().out
    assert "artin_rees: 4" in text
    assert "syzygy_ar: [4, 1, 1, 0]" in text


def test_cli_bound(ci_file, capsys):
    assert main(["bound", ci_file]) == 0
    text = capsys.readouterr().out
    assert "thm_bound: 7" in text
    assert "remark_bound: 3" in text


def test_cli_perturb_explicit(tmp_path, capsys):
    path = tmp_path / "p.ideal"
    path.write_text(PERT_TEXT)
    out = str(tmp_path / "p.json")
    code = main(["perturb", str(path), "--N", "5", "--check",
                 "star,hf,mu,betti,elias,minmult", "--json", out])
    assert code == 0
    text = capsys.readouterr().out
    assert "FAIL" not in text
    payload = json.loads(open(out).read())
    assert payload["ok"] is True
    assert {c["name"] for c in payload["checks"]} == {
        "star-inclusion", "hf", "mu", "betti", "elias", "min-mult"
    }


def test_cli_perturb_unknown_check(ci_file, capsys):
    assert main(["perturb", ci_file, "--N", "3", "--check", "nope"]) == 2


def test_cli_perturb_reports_failure(tmp_path, capsys):
    # explicit low-order perturbation that changes the Hilbert function
    path = tmp_path / "low.ideal"
    path.write_text(
        "field Q\nvars x y z\ngen x^2\ngen x*y\ngen y\npert 0\npert 0\npert -z^3\n"
    )
    code = main(["perturb", str(path), "--N", "3", "--check", "star,mu"])
    assert code in (0, 1)
    assert "star-inclusion" in capsys.readouterr().out


def test_cli_search_min_n(ci_file, capsys, tmp_path):
    out = str(tmp_path / "s.json")
    code = main(["search-min-n", ci_file, "--p", "2", "--max-n", "4",
                 "--trials", "3", "--seed", "0", "--json", out])
    assert code == 0
    payload = json.loads(open(out).read())
    assert payload["thm_bound"] == 7
    assert [row["preserved"] for row in payload["table"]] == [0, 0, 3, 3]


def test_cli_filter_regular(tmp_path, capsys):
    path = tmp_path / "fr.ideal"
    path.write_text("field Q\nvars x y\ngen x\ngen y\n")
    assert main(["filter-regular", str(path)]) == 0
    assert "filter_regular: True" in capsys.readouterr().out


def test_cli_reproduce_cases(capsys):
    for case in ("ncm", "height-drop"):
        assert main(["reproduce", case]) == 0
        assert "FAIL" not in capsys.readouterr().out


def test_cli_parse_error_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.ideal"
    path.write_text("field Q\nvars x\ngen x +\n")
    with pytest.raises(SystemExit) as err:
        main(["hilbert", str(path)])
    assert err.value.code == 2


def test_cli_missing_file_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        main(["hilbert", "/no/such/file.ideal"])
    assert err.value.code == 2


def test_cli_bad_usage_exit_code(capsys):
    with pytest.raises(SystemExit) as err:
        main(["no-such-command"])
    assert err.value.code == 2
