import pytest

from f2reducts.cli import main
from f2reducts.orbits import parse_census_tsv, tuple_orbits
from f2reducts.perm import format_genset
from f2reducts.stdgroups import agl_gens


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def body(text):
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


def test_orbits_examples(capsys):
    code, out, _ = run(capsys, "orbits", "--dim", "3", "--group", "agl", "--arity", "4",
                       "--filter", "injective")
    assert code == 0 and len(body(out)) == 1 + 2
    assert out.startswith("# f2reducts ")
    code, out, _ = run(capsys, "orbits", "--dim", "4", "--group", "sp", "--arity", "2",
                       "--filter", "nonzero-injective")
    assert len(body(out)) == 1 + 2
    code, out, _ = run(capsys, "orbits", "--dim", "3", "--group", "sym", "--arity", "1")
    assert len(body(out)) == 1 + 1


def test_orbits_tsv_reparses(capsys):
    _, out, _ = run(capsys, "orbits", "--dim", "3", "--group", "agl", "--arity", "3")
    assert parse_census_tsv(out).partition_key() == tuple_orbits(agl_gens(3), 3).partition_key()


def test_profile(capsys):
    _, out, _ = run(capsys, "orbits", "--dim", "3", "--group", "sym", "--profile", "2")
    assert body(out) == ["k\torbits", "1\t1", "2\t2"]


@pytest.mark.parametrize("argv,order", [
    (["--dim", "4", "--form", "standard", "--relations", "p0"], 720),
    (["--dim", "4", "--form", "standard", "--relations", "nabla"], 11520),
    (["--dim", "3", "--relations", "parallelogram"], 1344),
    (["--dim", "4", "--form", "standard", "--relations", "diamond", "--fix-zero"], 720),
])
def test_aut_examples(capsys, argv, order):
    code, out, _ = run(capsys, "aut", *argv)
    assert code == 0 and f"order\t{order}" in out.splitlines()


def test_classify_and_group_file(capsys, tmp_path):
    code, out, _ = run(capsys, "classify", "--dim", "4", "--group", "delta", "--form", "standard")
    assert body(out)[1].split("\t")[0] == "Delta"
    f = tmp_path / "g.txt"
    f.write_text(format_genset(agl_gens(3)))
    code, out, _ = run(capsys, "classify", "--dim", "3", "--group", f"file:{f}")
    assert body(out)[1].startswith("AGL\t")


def test_witness_and_realize(capsys):
    _, out, _ = run(capsys, "witness", "--dim", "4", "--form", "standard", "--tuple", "e1,e2,e3",
                    "--targets", "0,0,0")
    assert body(out) == ["none"]
    _, out, _ = run(capsys, "witness", "--dim", "6", "--form", "standard", "--tuple", "e1,e2,e3",
                    "--targets", "0,0,0")
    assert body(out) == ["0x10"]
    _, out, _ = run(capsys, "realize", "--dim", "6", "--form", "standard", "--adj", "011,101,110")
    assert body(out) == ["0x1,0x2,0x7"]


def test_reducts_fq(capsys):
    _, out, _ = run(capsys, "reducts-fq", "--p", "5", "--dim", "2")
    rows = [ln.split("\t") for ln in body(out)[1:]]
    assert [r[2] for r in rows] == ["24", "12", "6"]
    assert all(r[4] == "true" for r in rows)


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "orbits", "--dim", "4", "--group", "agl", "--arity", "6")[0] == 2
    assert run(capsys, "orbits", "--dim", "4", "--group", "bogus")[0] == 1
    assert run(capsys, "orbits", "--dim", "3", "--group", "sp")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["orbits"])
    assert exc.value.code == 1
    assert run(capsys, "aut", "--dim", "4", "--form", "standard", "--relations", "nabla",
               "--node-limit", "5")[0] == 2


@pytest.mark.parametrize("argv", [
    ["orbits", "--dim", "4", "--group", "agl", "--arity", "3", "--filter", "injective"],
    ["aut", "--dim", "4", "--form", "standard", "--relations", "nabla"],
    ["classify", "--dim", "4", "--group", "sp", "--form", "standard"],
])
def test_output_independent_of_workers(capsys, argv):
    outs = {run(capsys, *argv, "--workers", str(w))[1] for w in (1, 2, 8)}
    assert len(outs) == 1


def test_out_file(capsys, tmp_path):
    path = tmp_path / "r.tsv"
    assert run(capsys, "orbits", "--dim", "3", "--group", "gl", "--out", str(path))[0] == 0
    assert len(body(path.read_text())) == 3
