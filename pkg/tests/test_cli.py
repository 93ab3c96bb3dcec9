import json
import re
import subprocess
import sys

import pytest

from hikitabench.cli import main, run, run_batch
from hikitabench.partitions import orbit_partitions, surjectivity_necessary
from hikitabench.rootdata import LieType


def call(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_json(capsys, *argv):
    code, out, _ = call(capsys, *argv, "--json")
    return code, json.loads(out)


def test_dual_golden(capsys):
    code, rep = as_json(capsys, "dual", "--type", "B", "--partition", "3,3,1")
    assert code == 0
    assert rep["result"]["dual_type"] == "C" and rep["result"]["dual_partition"] == [2, 2, 2]
    assert rep["schema"] == "hikitabench.report/1"
    m = rep["manifest"]
    assert m["input"][:2] == ["dual", "--type"] and m["seed"] == 0 and "wall_time_s" in m


def test_flatness_not_flat_is_success(capsys):
    code, rep = as_json(capsys, "flatness", "--levi", "C3:gl2|sp1", "--special-dim", "13")
    assert code == 0 and rep["result"]["verdict"] == "not-flat"
    assert list(rep["result"]) == ["levi", "generic_dim", "special_dim", "verdict", "witnesses", "hilbert", "socle"]


def test_orbitcartan_alias(capsys):
    code, rep = as_json(capsys, "orbitcartan", "--levi", "C3:gl2|sp1", "--special-dim", "13")
    assert code == 0 and rep["verb"] == "orbit-cartan" and rep["result"]["points"] == 12


def test_hikita_verify(capsys):
    code, rep = as_json(capsys, "hikita-verify", "--ambient", "A4", "--m", "gl1,gl3", "--l", "torus")
    assert code == 0
    assert rep["result"]["verdict"] == "equal" and rep["result"]["fixed_points"] == 4
    code, rep = as_json(capsys, "hikita-verify", "--ambient", "C3", "--m", "gl3", "--l", "gl2|sp1")
    assert rep["result"]["verdict"] == "equal"


def test_hikita_verify_generator_file(capsys, tmp_path):
    f = tmp_path / "gens.txt"
    f.write_text("# s | g\nx1+x2+x3+x4 | 1\n1 | x1*h\n")
    code, rep = as_json(capsys, "hikita-verify", "--ambient", "A4", "--m", "torus", "--l", "gl1,gl3",
                        "--generators", str(f))
    assert code == 0 and len(rep["result"]["per_generator"]) == 2
    code, _, err = call(capsys, "hikita-verify", "--ambient", "A4", "--m", "torus", "--l", "gl1,gl3",
                        "--generators", str(tmp_path / "missing"))
    assert code == 2 and "--generators" in err


def test_other_verbs(capsys):
    assert as_json(capsys, "collapse", "--type", "C", "--partition", "3,2,1")[1]["result"]["collapse"] == [2, 2, 2]
    assert as_json(capsys, "cosets", "--levi", "C3:gl3")[1]["result"]["count"] == 8
    assert as_json(capsys, "cosets", "--ambient", "A4", "--m", "gl1,gl3", "--l", "torus")[1]["result"]["count"] == 4
    assert as_json(capsys, "census", "--ambient", "A4", "--m", "torus", "--l", "gl1,gl3")[1]["result"]["count"] == 4
    rep = as_json(capsys, "betti", "--k", "1", "--levi", "C3:gl3")[1]["result"]
    assert rep["betti"] == [1, 3, 4] and rep["certificate"]["socle_mismatch"]
    rep = as_json(capsys, "surjectivity", "--type", "C", "--partition", "4,3,3")[1]["result"]
    assert rep["verdicts"]["surjectivity_necessary"] is True


@pytest.mark.parametrize("argv,needle", [
    (["dual", "--type", "B", "--partition", "3,x,1"], "position 2"),
    (["flatness", "--levi", "C3:gl2|sq1"], "sq1"),
    (["dual", "--bogus", "1"], "unrecognized"),
    (["frobnicate"], "invalid choice"),
    (["surjectivity", "--type", "C", "--partition", "3,1,1,1"], "not a type C"),
    (["dual", "--type", "Q", "--partition", "3,3,1"], "--type"),
])
def test_usage_errors_exit_2(capsys, argv, needle):
    code, _, err = call(capsys, *argv)
    assert code == 2 and needle in err


def test_internal_failure_exit_1(monkeypatch):
    import hikitabench.cli as cli

    def boom(args):
        raise RuntimeError("kaput")

    monkeypatch.setitem(cli.VERBS, "betti", boom)
    code, rep = run(["betti", "--k", "1"])
    assert code == 1 and rep["error"]["kind"] == "internal"


def test_json_round_trip(capsys):
    _, rep = as_json(capsys, "flatness", "--levi", "C3:gl2|sp1", "--special-dim", "13")
    code, again = run(rep["manifest"]["input"])
    assert code == 0 and again["manifest"]["verdicts"] == rep["manifest"]["verdicts"]


def test_table_and_json_agree(capsys):
    argv = ["orbit-cartan", "--levi", "B4:gl2|so2"]
    _, rep = as_json(capsys, *argv)
    _, table, _ = call(capsys, *argv)
    fields = dict(re.findall(r"^(\w+): (.*)$", table, re.M))
    res = rep["result"]
    assert int(fields["generic_dim"]) == res["generic_dim"]
    assert int(fields["socle"]) == res["socle"]
    assert fields["hilbert"] == "(" + ", ".join(map(str, res["hilbert"])) + ")"


def test_batch_three_examples(tmp_path, capsys):
    f = tmp_path / "b.txt"
    f.write_text("dual --type B --partition 3,3,1\n"
                 "# comment\n"
                 "flatness --levi 'C3:gl2|sp1' --special-dim 13\n"
                 "\n"
                 "orbit-cartan --levi B4:gl2|so2\n")
    code, out, _ = call(capsys, "batch", str(f))
    rep = json.loads(out)
    assert code == 0 and rep["summary"] == {"total": 3, "ok": 3, "failed": 0, "failures": []}
    r = rep["reports"]
    assert r[0]["result"]["dual_partition"] == [2, 2, 2]
    assert r[1]["result"]["verdict"] == "not-flat"
    assert r[2]["result"]["socle"] == 2 and r[2]["result"]["generic_dim"] == 24
    assert [x["line"] for x in r] == [1, 3, 5]


def test_batch_empty_and_failures(tmp_path):
    f = tmp_path / "empty.txt"
    f.write_text("")
    code, rep = run_batch(str(f))
    assert code == 0 and rep["reports"] == [] and rep["summary"]["total"] == 0
    g = tmp_path / "bad.txt"
    g.write_text("dual --type B --partition 3,3,1\ndual --type B --partition oops\n")
    code, rep = run_batch(str(g))
    assert code == 0 and rep["summary"]["failed"] == 1 and rep["summary"]["failures"][0]["line"] == 2


def test_batch_surjectivity_table_parallel(tmp_path):
    parts = orbit_partitions(LieType("C", 6))
    f = tmp_path / "c12.txt"
    f.write_text("".join(f"surjectivity --type C --partition {p}\n" for p in parts))
    _, serial = run_batch(str(f), jobs=1)
    _, par = run_batch(str(f), jobs=3)
    got = [r["result"]["verdicts"]["surjectivity_necessary"] for r in par["reports"]]
    assert got == [surjectivity_necessary(p, "C") for p in parts]
    assert [r["result"] for r in serial["reports"]] == [r["result"] for r in par["reports"]]


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "hikitabench", "dual", "--type", "C", "--partition", "4,2,2",
                          "--json"], capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["result"]["dual_partition"] == [3, 3, 1, 1, 1]
