import json
from pathlib import Path

import pytest

from pathtrop import cli

GOLDEN = Path(__file__).parent / "golden"

DOCUMENTED = [
    (["check", "--json", "P0*P2 >= P1^2"], "check_goodman.json"),
    (["hde", "--json", "--source", "P3", "--target", "P4", "--method", "both"], "hde_p3_p4.json"),
    (["trop", "--json", "--family", "even-cycles:4", "--verify"], "trop_even_cycles_4.json"),
]


def invoke(capsys, argv):
    code = cli.run(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def triangle_path(tmp_path):
    path = tmp_path / "p2.txt"
    path.write_text("3\n0 1\n1 2\n")
    return str(path)


@pytest.mark.parametrize("argv, golden", DOCUMENTED)
def test_golden_output_is_byte_stable(capsys, argv, golden):
    first = invoke(capsys, argv)
    second = invoke(capsys, argv)
    assert first == second
    code, out, _ = first
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_golden_payloads(capsys):
    _, out, _ = invoke(capsys, DOCUMENTED[0][0])
    payload = json.loads(out)
    assert payload["status"] == "valid" and payload["certificate"] == [{"coeff": "1", "generator": "5.1[u=0]"}]
    _, out, _ = invoke(capsys, DOCUMENTED[1][0])
    payload = json.loads(out)
    assert payload["lp"] == payload["closed_form"] == "2/3" and payload["agree"] is True
    _, out, _ = invoke(capsys, DOCUMENTED[2][0])
    assert json.loads(out)["verification"]["pass"] is True


class TestExitCodes:
    def test_invalid_verdict(self, capsys):
        code, out, _ = invoke(capsys, ["check", "P2^2 >= P0*P4"])
        assert code == 1
        assert out.startswith("invalid") and "lhs 196 < rhs 250" in out

    def test_invalid_in_family(self, capsys):
        code, out, _ = invoke(capsys, ["check", "--json", "--family", "even-cycles:5", "C8 >= C10"])
        assert code == 1 and json.loads(out)["ray"] == ["2", "3", "4", "5"]

    def test_valid_in_family(self, capsys):
        code, _, _ = invoke(capsys, ["check", "--family", "even-cycles:5", "C4^3*C10^2 >= C8^4"])
        assert code == 0

    @pytest.mark.parametrize("argv", [
        ["check", "P1 >="],
        ["check", "C4 >= C6"],
        ["trop"],
        ["trop", "--family", "hexagons:2"],
        ["hde", "--source", "P3", "--target", "P2*P3"],
        ["sweep", "--seed", "-1"],
        ["frobnicate"],
        ["hom", "K3"],
        ["decompose", "1,2,3"],
    ])
    def test_usage_errors(self, capsys, argv):
        code, out, err = invoke(capsys, argv)
        assert code == 2 and out == "" and "error" in err

    def test_empty_hom_set_disagrees(self, capsys):
        code, out, _ = invoke(capsys, ["hde", "--json", "--source", "P1", "--target", "P0"])
        payload = json.loads(out)
        assert code == 1 and payload["lp_status"] == "unbounded" and payload["agree"] is False


class TestCommands:
    def test_hom_and_pathvec(self, capsys, triangle_path):
        assert invoke(capsys, ["hom", "--graph", triangle_path, "P1"])[1] == "4\n"
        assert invoke(capsys, ["hom", "--graph", triangle_path, "K3"])[1] == "0\n"
        assert invoke(capsys, ["pathvec", "--graph", triangle_path, "--max-len", "3"])[1] == "3 4 6 8\n"

    def test_named_pattern(self, capsys, triangle_path):
        code, out, _ = invoke(capsys, ["hom", "--graph", triangle_path, "star:2"])
        assert code == 0 and out == "6\n"

    def test_blowup(self, capsys):
        code, out, _ = invoke(capsys, ["blowup", "--json", "b=34 s=30 d=4,3,3,0,1,3,4"])
        payload = json.loads(out)
        assert code == 0 and payload["dp_agrees"] is True
        assert payload["limit_ray"][:4] == ["34", "34", "64", "67"] and payload["limit_ray"][-1] == "228"

    def test_blowup_graph(self, capsys):
        code, out, _ = invoke(capsys, ["blowup", "--json", "--m", "3", "b=1 s=1 d=0"])
        graph = json.loads(out)["graph"]
        assert code == 0 and graph["vertex_count"] == 4 and graph["paths"][:2] == ["4", "6"]

    def test_invalid_blowup_spec(self, capsys):
        code, out, _ = invoke(capsys, ["blowup", "--json", "b=34 s=30 d=5,3,3,0,1,3,4"])
        assert code == 1 and 2 in json.loads(out)["violations"]

    def test_decompose(self, capsys):
        code, out, _ = invoke(capsys, ["decompose", "--json", ",".join(str(5 * k) for k in range(1, 17))])
        payload = json.loads(out)
        assert code == 0 and payload["recombines"] is True

    def test_decompose_outside(self, capsys):
        code, out, _ = invoke(capsys, ["decompose", "0,1"])
        assert code == 1 and "not in the projected cone" in out

    def test_realize(self, capsys):
        code, out, _ = invoke(capsys, ["realize", "--json", "--family", "even-cycles:3", "--ray", "linear",
                                       "--scale", "4"])
        assert code == 0 and json.loads(out)["counts"] == ["84", "732"]

    def test_trop_paths(self, capsys):
        code, out, _ = invoke(capsys, ["trop", "--family", "paths:1"])
        assert code == 0 and out.startswith("5.1[u=0]: ")

    @pytest.mark.parametrize("kind, n", [("rows", "1"), ("decompose", "1"), ("blowup", "3")])
    def test_sweeps(self, capsys, kind, n):
        argv = ["sweep", "--json", "--kind", kind, "--n", n, "--count", "20", "--max-vertices", "5", "--seed", "3"]
        code, out, _ = invoke(capsys, argv)
        payload = json.loads(out)
        assert code == 0
        assert not payload.get("violations") and not payload.get("failures")

    def test_sweep_is_seeded(self, capsys):
        argv = ["sweep", "--json", "--kind", "decompose", "--count", "10", "--seed", "42"]
        assert invoke(capsys, argv) == invoke(capsys, argv)

    def test_parallel_sweep_matches_serial(self, capsys):
        argv = ["sweep", "--json", "--kind", "blowup", "--n", "2", "--count", "12", "--seed", "9"]
        assert invoke(capsys, argv) == invoke(capsys, argv + ["--jobs", "2"])
