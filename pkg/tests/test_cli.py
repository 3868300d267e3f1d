import json

import pytest

from logtangent.__main__ import main

BRAID = "x; y; z; x-y; x-z; y-z"

POINTS = "[1:1:1] [1:2:8] [1:3:27] [1:4:64] [1:5:125] [1:6:216]"


def _run(capsys, *argv: str) -> tuple[int, str]:
    code = main(list(argv))
    return code, capsys.readouterr().out


def _json(capsys, *argv: str) -> dict:
    code, out = _run(capsys, *argv, "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "logtangent/1"
    return data


def test_jumping_curve(capsys):
    code, out = _run(capsys, "jumping-curve", "--cubic", "x0^3+x1^3+x2^3")
    assert code == 0
    assert out == "a0*a1*a2\n"


def test_jumping_test(capsys):
    code, out = _run(
        capsys, "jumping-test", "--curve", "x^3+y^3+z^3", "--line", "[0:1:2]", "--line", "[1:2:3]"
    )
    assert code == 0
    assert out.splitlines() == [
        "line [0:1:2]: jumping order=1 splitting=(-1,1;torsion=0)",
        "line [1:2:3]: not jumping order=0 splitting=(0,0;torsion=0)",
    ]


def test_certified_pencil(capsys):
    data = _json(
        capsys, "jumping-test", "--curve", "x^3+y^3+z^3", "--certify", "--center", "[0:0:1]"
    )
    assert data["pencil"]["everywhere"]


def test_chern(capsys):
    assert _json(capsys, "chern", "--curve", "x^3+y^3+z^3")["c2"] == 3
    assert _json(capsys, "chern", "--curve", "x0*x1+x1*x2+x2*x0", "--marked", "3")["c2"] == 4
    data = _json(capsys, "chern", "--arrangement", BRAID)
    assert (data["c1"], data["c2"]) == (-3, 2)


def test_freeness(capsys):
    data = _json(capsys, "freeness", "--arrangement", BRAID)
    assert data["freeness"]["verdict"] == "free"
    assert data["generic_splitting"]["degrees"] == [-2, -1]


def test_lines27(capsys):
    data = _json(capsys, "lines27")
    assert data["count"] == 27
    assert data["command"] == "lines27"


def test_pic(capsys):
    data = _json(capsys, "pic", "--class", "L", "--with", "L - E1 - E2")
    assert data["square"] == 1
    assert data["genus"] == 0
    assert data["anticanonical_degree"] == 3
    assert data["slope_log"] == "0"
    assert data["intersection"] == 1


def test_cremona_and_pushforward(capsys):
    code, out = _run(capsys, "cremona", "--class", "L")
    assert out == "(2;-1,-1,-1,0,0,0)\n"
    code, out = _run(capsys, "pushforward", "--class", "(0;3,0,0,0,0,0)")
    assert out.splitlines()[-1] == "R1pi_*: O/I_p1^1"


def test_keylemma(capsys):
    data = _json(capsys, "keylemma", "--divisor", "2L", "--class", "L - E1", "--support", "1")
    assert data["tangent"] == {"sub": 1, "quotient": -1, "forced": True}
    assert data["cotangent"] == [-1, 1]


def test_destabilizers(capsys):
    data = _json(capsys, "destabilizers", "--divisor", "(1;0,0,0,0,0,0)")
    assert data["candidates"] == ["(-2;1,1,1,1,1,1)", "(0;0,0,0,0,0,0)"]
    assert data["scenario"] == "generic"
    data = _json(capsys, "destabilizers", "--divisor", "2L", "--scenario", "quad-tangent:6")
    assert len(data["candidates"]) == 250


def test_destabilizers_from_rows(capsys, tmp_path):
    rows = tmp_path / "rows.txt"
    rows.write_text("# only exceptional curves\n(0;1,0,0,0,0,0) <= 0\n", encoding="utf-8")
    data = _json(
        capsys, "destabilizers", "--divisor", "L", "--rows", str(rows), "--box=-1:0"
    )
    assert data["scenario"] is None
    assert all(int(item.split(";")[1].split(",")[0]) >= 0 for item in data["candidates"])


def test_general_position_and_members(capsys):
    code, out = _run(capsys, "general-position", "--points", POINTS)
    assert out == "general\n"
    code, out = _run(capsys, "classify-member", "--line", "[1:-1:0]", "--points", POINTS)
    assert out.splitlines()[0] == "ConicPlusLine(1)"


def test_steiner_round_trip(capsys, tmp_path):
    pointed = tmp_path / "conic.txt"
    pointed.write_text("x0*x1+x1*x2+x2*x0\n[1:0:0]\n[0:1:0]\n[0:0:1]\n", encoding="utf-8")
    output = tmp_path / "steiner.txt"
    code, out = _run(capsys, "steiner", "--pointed", str(pointed), "--output", str(output))
    assert code == 0
    assert out.startswith("presentation role=cokernel rank=2 c1=-1 c2=4")
    assert output.read_text(encoding="utf-8") == out

    code, out = _run(capsys, "splitting", "--presentation", str(output), "--line", "[1:2:3]")
    assert code == 0
    assert out == "line [1:2:3]: (-1,0;torsion=0)\n"


def test_exit_codes(capsys):
    assert main(["pic", "--class", "L E1"]) == 2
    assert main(["keylemma", "--divisor", "2L", "--class", "L - E1", "--support", "0"]) == 3
    assert main(["jumping-curve", "--cubic", "x*y*z"]) == 3
    assert main(["destabilizers", "--divisor", "L", "--box=3:2"]) == 3
    assert main(["splitting", "--presentation", "/nonexistent/file"]) == 2
    with pytest.raises(SystemExit) as error:
        main(["pic"])
    assert error.value.code == 2
    assert "logtangent pic:" in capsys.readouterr().err
