import json
import subprocess
import sys

import pytest

from diasalg.algebra import quotient_algebra, validate_axioms
from diasalg.catalog import abelian, dual_numbers, example3_cover, random_two_step
from diasalg.cli import main
from diasalg.fileformat import (
    FormatError, algebra_from_dict, algebra_to_dict, dumps_algebra, load_algebra, loads_algebra,
    save_algebra,
)
from diasalg.kernel import GF, QQ, Subspace


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    env = json.loads(out)
    assert env["exit_code"] == code
    return code, env


@pytest.fixture
def files(tmp_path):
    def make(L, name="alg"):
        p = tmp_path / f"{name}.json"
        save_algebra(str(p), L, name)
        return str(p)
    return make


# --- file format -----------------------------------------------------------

def test_round_trip_bytes(tmp_path):
    for L in (example3_cover(2), random_two_step(2, 3, QQ, 4), random_two_step(3, 2, GF(7), 4)):
        text = dumps_algebra(L, "x")
        name, back = loads_algebra(text)
        assert name == "x" and back == L
        assert dumps_algebra(back, "x") == text


def test_prime_values_are_integers():
    d = algebra_to_dict(random_two_step(2, 2, GF(7), 1))
    vals = [t["v"] for e in d["left"] for t in e["c"]]
    assert vals and all(isinstance(v, int) and 0 <= v < 7 for v in vals)


def base_dict():
    return {"name": "t", "field": {"kind": "rational"}, "dim": 2,
            "left": [{"i": 0, "j": 0, "c": [{"k": 1, "v": "3/2"}]}], "right": []}


def test_parse_accepts_fractions_and_omitted_products():
    _, L = algebra_from_dict(base_dict())
    assert L.coefficient(0, 0, 0, 1) == QQ("3/2")
    assert L.product(1, 0, 0) == {}


@pytest.mark.parametrize("mutate", [
    lambda d: d["left"].append({"i": 0, "j": 0, "c": []}),
    lambda d: d["left"].append({"i": 2, "j": 0, "c": []}),
    lambda d: d["left"][0]["c"].append({"k": 1, "v": "1"}),
    lambda d: d["left"][0]["c"][0].update(v=1.5),
    lambda d: d["left"][0]["c"][0].update(v="abc"),
    lambda d: d.update(field={"kind": "prime", "p": 8}),
    lambda d: d.update(dim=-1),
    lambda d: d.update(extra=1),
    lambda d: d.update(labels=["a"]),
], ids=["duplicate_ij", "index_out_of_range", "duplicate_k", "float", "garbage", "not_prime",
        "negative_dim", "unknown_key", "short_labels"])
def test_parse_rejects(mutate):
    d = base_dict()
    mutate(d)
    with pytest.raises(FormatError):
        algebra_from_dict(d)


# --- commands --------------------------------------------------------------

def test_validate(capsys, files, tmp_path):
    assert run(capsys, "validate", files(example3_cover(1)))[0] == 0
    broken = algebra_to_dict(abelian(1))
    broken["left"] = [{"i": 0, "j": 0, "c": [{"k": 0, "v": "1"}]}]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(broken))
    code, env = run_json(capsys, "validate", str(p))
    assert code == 2
    assert env["results"]["axioms"]["mixed_left"]["witnesses"][0]["triple"] == [0, 0, 0]
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "validate", str(bad))[0] == 64
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 64


def test_invalid_algebra_exit_code_for_other_commands(capsys, tmp_path):
    broken = algebra_to_dict(abelian(1))
    broken["left"] = [{"i": 0, "j": 0, "c": [{"k": 0, "v": "1"}]}]
    p = tmp_path / "broken.json"
    p.write_text(json.dumps(broken))
    assert run(capsys, "info", str(p))[0] == 2


def test_info(capsys, files):
    _, env = run_json(capsys, "info", files(abelian(2)))
    r = env["results"]
    assert (r["dim_derived"], r["dim_center"]) == (0, 2)
    _, env = run_json(capsys, "info", files(example3_cover(1)))
    r = env["results"]
    assert (r["dim_derived"], r["dim_center"], r["derived_bound"], r["derived_bound_holds"]) == (2, 2, 2, True)
    _, env = run_json(capsys, "info", files(dual_numbers()))
    assert (env["results"]["dim_derived"], env["results"]["dim_center"]) == (2, 0)


def test_multiplier(capsys, files):
    _, env = run_json(capsys, "multiplier", files(abelian(2)))
    assert env["results"]["dim_multiplier"] == 8 and env["results"]["dim_cover"] == 10
    _, env = run_json(capsys, "multiplier", files(abelian(0)))
    assert env["results"]["dim_multiplier"] == 0
    _, env = run_json(capsys, "multiplier", files(dual_numbers()))
    assert env["results"]["dim_multiplier"] == 0


def test_cover_file_is_consistent(capsys, files, tmp_path):
    src = files(example3_cover(1))
    out = str(tmp_path / "cover.json")
    code, env = run_json(capsys, "cover", src, out)
    assert code == 0
    r = env["results"]
    assert all(r["report"][k] for k in ("quotient_matches", "kernel_central", "kernel_in_derived",
                                        "dimension_bound"))
    _, K = load_algebra(out)
    assert validate_axioms(K).ok and K.dim == r["dim_cover"] == 6
    kernel = Subspace(QQ, K.dim, [{k: QQ(x) for k, x in enumerate(row) if QQ(x)} for row in r["kernel_basis"]])
    assert quotient_algebra(K, kernel).algebra.products == example3_cover(1).products
    assert len(r["projection"]) == 3 and len(r["projection"][0]) == 6
    assert run(capsys, "validate", out)[0] == 0


def test_zstar_and_unicentral(capsys, files):
    _, env = run_json(capsys, "zstar", files(abelian(2)))
    assert env["results"]["dim_z_star"] == 0 and not env["results"]["unicentral"]
    assert run(capsys, "unicentral", files(abelian(1)), "--assert")[0] == 1
    assert run(capsys, "unicentral", files(abelian(1)))[0] == 0
    assert run(capsys, "unicentral", files(dual_numbers()), "--assert")[0] == 0


def test_sequences(capsys, files):
    f = files(example3_cover(1))
    code, env = run_json(capsys, "sequences", f, "--ideal", "zero")
    assert code == 0 and env["results"]["ok"]
    code, env = run_json(capsys, "sequences", f, "--ideal", "center")
    assert code == 0 and env["results"]["rank_tra"] == 2
    code, env = run_json(capsys, "sequences", f, "--ideal", "0,1,0;0,0,2")
    assert code == 0 and env["results"]["ideal"] == [["0", "1", "0"], ["0", "0", "1"]]
    assert run(capsys, "sequences", f, "--ideal", "1,0,0")[0] == 64
    assert run(capsys, "sequences", f, "--ideal", "1,0")[0] == 64
    assert run(capsys, "sequences")[0] == 64


def test_sequences_corpus_parallel_matches_serial(capsys):
    serial = run(capsys, "sequences", "--corpus", "--field", "GF(7)", "--json")[1]
    code, parallel = run(capsys, "sequences", "--corpus", "--field", "GF(7)", "--json", "--jobs", "2")[:2]
    assert code == 0 and serial == parallel
    assert json.loads(serial)["results"]["all_exact"]


def test_four_conditions_command(capsys, files):
    code, env = run_json(capsys, "thm49", files(abelian(1)), "--ideal", "center")
    assert code == 0 and env["results"]["agree"]
    assert not any(env["results"]["conditions"].values())


def test_catalog(capsys, tmp_path):
    code, env = run_json(capsys, "catalog", "list")
    assert code == 0 and len(env["results"]["entries"]) >= 30
    out = str(tmp_path / "a2.json")
    assert run(capsys, "catalog", "emit", "abelian_2", out)[0] == 0
    assert run(capsys, "validate", out)[0] == 0
    out = str(tmp_path / "e2.json")
    run(capsys, "catalog", "emit", "example3_cover_2", out)
    _, env = run_json(capsys, "info", out)
    assert (env["results"]["dim"], env["results"]["dim_derived"], env["results"]["dim_center"]) == (10, 8, 8)
    text = open(out).read()
    name, L = load_algebra(out)
    assert dumps_algebra(L, name) == text
    assert run(capsys, "catalog", "emit", "no_such", out)[0] == 64
    assert run(capsys, "catalog", "list", "--field", "GF(4)")[0] == 64


def test_json_is_byte_stable(capsys, files):
    f = files(example3_cover(1))
    for argv in (["info", f], ["thm49", f], ["sequences", f], ["catalog", "list", "--seed", "3"]):
        a = run(capsys, *argv, "--json")[1]
        b = run(capsys, *argv, "--json")[1]
        assert a == b
        env = json.loads(a)
        assert set(env) == {"version", "input_sha256", "command", "exit_code", "results", "timing"}
        assert env["timing"] is None
    _, env = run_json(capsys, "info", f, "--timing")
    assert env["timing"]["seconds"] >= 0


def test_usage_errors_exit_64(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64


def test_module_entry_point(files):
    f = files(abelian(2))
    proc = subprocess.run([sys.executable, "-m", "diasalg", "multiplier", f],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "= 8" in proc.stdout
