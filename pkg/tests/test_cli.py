import json
from pathlib import Path

import pytest

from diffdim import from_json_dict
from diffdim.cli import main
from diffdim.numpoly import NumericalPolynomial

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def heat_leaders(tmp_path):
    path = tmp_path / "heat_leaders.txt"
    path.write_text("0, 2\n")
    return str(path)


def test_omega_set_human(capsys, heat_leaders):
    code, out, _ = run(capsys, "omega-set", "--file", heat_leaders)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "2*t + 1"
    assert lines[1] == "standard coefficients: [0, 2, -1]"


def test_omega_set_json_roundtrips(capsys, heat_leaders):
    code, out, _ = run(capsys, "omega-set", "--format", "json", "--file", heat_leaders)
    assert code == 0
    doc = json.loads(out)
    assert from_json_dict(doc) == NumericalPolynomial.from_coeffs((0, 2, -1))
    assert doc["render"] == "2*t + 1"


def test_omega_set_missing_file(capsys):
    code, _, err = run(capsys, "omega-set", "--file", "/nonexistent/path.txt")
    assert code == 1
    assert err


def test_volume_command(capsys, heat_leaders):
    code, out, _ = run(capsys, "volume", "--file", heat_leaders, "--s", "3")
    assert code == 0
    assert out.splitlines() == ["volume = 7", "volume_ie = 7"]


def test_volume_json(capsys, heat_leaders):
    code, out, _ = run(
        capsys, "volume", "--format", "json", "--file", heat_leaders, "--s", "3"
    )
    assert code == 0
    assert json.loads(out) == {"s": 3, "volume": 7, "volume_ie": 7}


def test_volume_cap_exit_code(capsys, tmp_path):
    path = tmp_path / "e.txt"
    path.write_text("1, 1\n")
    code, _, err = run(
        capsys, "volume", "--file", str(path), "--s", "50", "--enum-cap", "5"
    )
    assert code == 3
    assert "resource limit" in err


def test_enum_cap_env_override(capsys, tmp_path, monkeypatch):
    path = tmp_path / "e.txt"
    path.write_text("1, 1\n")
    monkeypatch.setenv("KOLCHIN_ENUM_CAP", "5")
    code, _, err = run(capsys, "volume", "--file", str(path), "--s", "50")
    assert code == 3
    # the flag would win over the environment
    code, out, _ = run(
        capsys, "volume", "--file", str(path), "--s", "50", "--enum-cap", "100000"
    )
    assert code == 0


def test_bounds_human(capsys):
    code, out, _ = run(capsys, "bounds", "--r", "1", "--m", "2", "--n", "1")
    assert code == 0
    assert out.splitlines() == [
        "char_order = 2",
        "order_sum = 6",
        "regularity = 10",
        "comparison_level = 577",
        "coeff_bound = 36",
    ]


def test_bounds_json_decimal_strings(capsys):
    code, out, _ = run(
        capsys, "bounds", "--format", "json", "--r", "1", "--m", "2", "--n", "2"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["comparison_level"] == "12801"
    assert doc["coeff_bound"] == "800"
    assert doc["r"] == 1 and doc["d"] == 0


def test_bounds_digit_cap(capsys):
    code, _, err = run(
        capsys, "bounds", "--r", "4", "--m", "4", "--n", "1", "--bound-digit-cap", "50"
    )
    assert code == 3


def test_rank_compare(capsys):
    code, out, _ = run(capsys, "rank-compare", "d[1,0]x1", "d[0,2]x1")
    assert code == 0
    assert out.strip() == "Less"
    code, out, _ = run(capsys, "rank-compare", "d[1,1]x2", "d[1,1]x1")
    assert out.strip() == "Greater"
    code, out, _ = run(capsys, "rank-compare", "d[2,0]x1", "d[2,0]x1")
    assert out.strip() == "Equal"


def test_rank_compare_mismatched_ambient(capsys):
    code, _, err = run(capsys, "rank-compare", "d[1,0]x1", "d[1]x1")
    assert code == 1
    assert err


def test_omega_leaders_command(capsys, tmp_path):
    path = tmp_path / "profile.txt"
    path.write_text("1: 2,0\n2: 1,0\n2: 0,1\n")
    code, out, _ = run(capsys, "omega-leaders", "--file", str(path))
    assert code == 0
    assert out.splitlines()[1] == "standard coefficients: [0, 2, 0]"


def test_kolchin_default(capsys):
    code, out, _ = run(capsys, "kolchin", "--system", str(DATA / "heat.sys"))
    assert code == 0
    assert out.splitlines()[0] == "2*t + 1"


def test_kolchin_check_agrees(capsys):
    code, out, _ = run(
        capsys, "kolchin", "--system", str(DATA / "cauchy_riemann.sys"), "--check"
    )
    assert code == 0
    assert out.splitlines()[-1] == "AGREE"


def test_kolchin_check_json(capsys):
    code, out, _ = run(
        capsys,
        "kolchin",
        "--system",
        str(DATA / "wave.sys"),
        "--check",
        "--format",
        "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["agree"] is True
    assert doc["groebner"]["standard_coeffs"] == ["0", "2", "-1"]
    assert from_json_dict(doc["prolongation"]) == from_json_dict(doc["groebner"])


def test_kolchin_type(capsys):
    code, out, _ = run(capsys, "kolchin", "--system", str(DATA / "heat.sys"), "--type")
    assert code == 0
    assert out.strip() == "1"


def test_kolchin_predicates(capsys):
    code, out, _ = run(
        capsys, "kolchin", "--system", str(DATA / "heat.sys"), "--at-least", "0,1,5"
    )
    assert code == 0 and out.strip() == "true"
    code, out, _ = run(
        capsys, "kolchin", "--system", str(DATA / "heat.sys"), "--equals", "0,2,0"
    )
    assert code == 0 and out.strip() == "false"
    code, out, _ = run(
        capsys, "kolchin", "--system", str(DATA / "heat.sys"), "--equals", "0,2,-1"
    )
    assert code == 0 and out.strip() == "true"


def test_kolchin_flags_mutually_exclusive(capsys):
    with pytest.raises(SystemExit) as info:
        main(["kolchin", "--system", str(DATA / "heat.sys"), "--check", "--type"])
    assert info.value.code == 2


def test_kolchin_bad_system_file(capsys, tmp_path):
    path = tmp_path / "broken.sys"
    path.write_text("m = 2\nn = 1\neq: 1*d[1,0]x1 + 1*d[1,0]x1\n")
    code, _, err = run(capsys, "kolchin", "--system", str(path))
    assert code == 1
    assert "duplicate" in err


def test_interpolate_command(capsys):
    code, out, _ = run(capsys, "interpolate", "--values", "1,3,5", "--start", "0")
    assert code == 0
    assert out.splitlines() == ["2*t + 1", "standard coefficients: [0, 2, -1]"]


def test_interpolate_json(capsys):
    code, out, _ = run(
        capsys, "interpolate", "--format", "json", "--values", "1,4,10", "--start", "0"
    )
    assert code == 0
    assert json.loads(out)["standard_coeffs"] == ["3", "-3", "1"]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["volume", "--s", "3"])  # --file missing
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["no-such-command"])
    assert info.value.code == 2


def test_interpolate_bad_values_is_usage_error():
    with pytest.raises(SystemExit) as info:
        main(["interpolate", "--values", "1,one,3", "--start", "0"])
    assert info.value.code == 2
