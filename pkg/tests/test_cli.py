import json

import pytest

from abcmod.cli import main
from abcmod.oracle import det_set_bruteforce
from abcmod.matrix import parse_matrix


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def test_recognize_identity(capsys, write):
    code, out, _ = run(capsys, "recognize", write("i3.txt", "3 3\n1 0 0\n0 1 0\n0 0 1\n"))
    assert code == 0
    assert out["variant"] == "computed" and out["values"] == [1]


def test_tu_certificate(capsys, write):
    code, out, _ = run(capsys, "tu", write("m.txt", "2 2\n1 1\n-1 1\n"))
    assert code == 0
    assert out == {"is_tu": False, "certificate": {"rows": [1, 2], "cols": [1, 2], "det": 2}}


def test_solve_parity(capsys, write):
    code, out, _ = run(capsys, "solve", write("p.txt", "1 2\n2 2\nb: 3\nc: 1 1\n"))
    assert code == 0 and out["status"] == "infeasible"


def test_solve_inequality_form(capsys, write):
    code, out, _ = run(capsys, "solve", write("q.txt", "2 1\n1\n-1\ng: 3 0\nh: 1\n"))
    assert code == 0 and out["status"] == "optimal" and out["x"] == [3] and out["value"] == "3"


def test_parse_error_exit_code(capsys, write):
    code, out, err = run(capsys, "recognize", write("bad.txt", "2 2\n1 0\n1 x\n"))
    assert code == 2 and out is None
    assert json.loads(err)["line"] == 3


def test_missing_file(capsys):
    code, _, err = run(capsys, "recognize", "/nonexistent/m.txt")
    assert code == 2 and "no such file" in err


def test_contract_error_exit_code(capsys, write):
    code, _, err = run(capsys, "decompose", write("m.txt", "2 2\n1 0\n0 1\n"), "--a", "2", "--b", "1")
    assert code == 2 and "ContractError" in err


def test_budget_error(capsys, write):
    text = "6 2\n" + "1 0\n0 1\n" * 3
    code, _, err = run(capsys, "--budget", "3", "oracle-dset", write("m.txt", text))
    assert code == 2 and "BudgetExceeded" in err


def test_decompose(capsys, write):
    path = write("d.txt", "5 3\n1 0 0\n0 1 0\n0 0 3\n0 0 1\n1 0 3\n")
    code, out, _ = run(capsys, "decompose", path, "--a", "3", "--b", "1")
    assert code == 0 and out["variant"] == "decomposition"
    assert sorted(out["row_perm"]) == [1, 2, 3, 4, 5]


def test_recognize_agrees_with_oracle(capsys, write):
    for i, text in enumerate([
        "4 2\n1 0\n0 3\n1 1\n1 0\n",
        "3 2\n1 0\n0 1\n1 1\n",
        "4 1\n1\n3\n4\n5\n",
        "3 2\n1 0\n0 1\n0 2\n",
    ]):
        path = write(f"c{i}.txt", text)
        _, rec, _ = run(capsys, "recognize", path)
        _, ora, _ = run(capsys, "oracle-dset", path)
        assert ora["values"] == sorted(det_set_bruteforce(parse_matrix(text)).values)
        if rec["variant"] == "computed":
            assert rec["values"] == ora["values"]


def test_generate_and_check(capsys, tmp_path):
    prefix = str(tmp_path / "inst")
    code, out, _ = run(capsys, "generate", "--family", "network_flow", "--a", "3", "--b", "1",
                       "--seed", "5", "--out", prefix)
    assert code == 0 and out["claimed_D"] == [0, 1, 3]
    code, brute, _ = run(capsys, "oracle-ip", prefix + ".txt", "--box", prefix + ".json")
    assert code == 0
    code, solved, _ = run(capsys, "solve", prefix + ".txt")
    assert code == 0 and solved["status"] == "optimal"
    assert solved["value"] == brute["value"]


def test_generate_to_stdout(capsys):
    code, out, _ = run(capsys, "generate", "--family", "vertex_cover", "--a", "2", "--b", "1", "--size", "1")
    assert code == 0 and out["kind"] == "inequality" and out["instance"].startswith("6 5")


def test_oracle_ip_uniform_box(capsys, write):
    path = write("u.txt", "4 2\n1 0\n0 1\n-1 0\n0 -1\ng: 1 1 0 0\nh: 1 1\n")
    code, out, _ = run(capsys, "oracle-ip", path, "--box=-2:2")
    assert out == {"status": "optimal", "x": [1, 1], "value": "2"}


def test_output_file(capsys, write, tmp_path):
    dest = tmp_path / "out.json"
    code, out, _ = run(capsys, "-o", str(dest), "tu", write("m.txt", "1 1\n1\n"))
    assert code == 0 and out is None
    assert json.loads(dest.read_text()) == {"is_tu": True}


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["decompose"])
    assert exc.value.code == 2
