import io

import pytest

from maxatsp.cli import main
from maxatsp.graph import load_instance, random_instance, save_instance


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


@pytest.fixture
def inst(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text(save_instance(random_instance(7, 100, 4, "two-cycle-heavy")))
    return str(p)


def test_gen_round_trip(tmp_path):
    code, text = run("gen", "--family", "triangle-heavy", "--n", "6", "--seed", "3")
    assert code == 0
    assert load_instance(text) == random_instance(6, 100, 3, "triangle-heavy")


def test_solve_and_report(inst):
    code, text = run("solve", inst, "--report")
    assert code == 0 and "bound_ok=true" in text
    code, text = run("report", inst)
    assert code == 0 and text.splitlines()[-1].startswith("tour=")


def test_oracle(inst):
    code, text = run("oracle", inst)
    order, opt = text.splitlines()
    assert code == 0 and len(order.split()) == 7 and float(opt) > 0


def test_oracle_cap_is_usage_error(inst):
    assert run("oracle", inst, "--cap", "5")[0] == 1


def test_classify_cover_multigraph(inst):
    for cmd in ("classify", "cover"):
        code, text = run(cmd, inst)
        assert code == 0 and text
    code, text = run("multigraph", inst)
    assert code == 0 and text.startswith("weight ")


def test_color_then_check(inst, tmp_path):
    _, g1 = run("multigraph", inst)
    code, col = run("color", inst)
    assert code == 0 and col.startswith("route=")
    # the coloring may come from a reoptimized multigraph; check against its own edges
    f1, f2 = tmp_path / "g1.txt", tmp_path / "col.txt"
    f2.write_text(col)
    edges = [ln.split() for ln in col.splitlines() if ln.startswith("edge ")]
    f1.write_text("".join(f"edge {u} {v} mult {len(cs.split(','))}\n" for _, u, v, _, cs in edges))
    assert run("check", str(f1), str(f2)) == (0, "valid\n")
    # dropping a color breaks the multiplicity
    _, u, v, _, cs = next(e for e in edges if "," in e[4])
    bad = col.replace(f"edge {u} {v} colors {cs}", f"edge {u} {v} colors {cs.split(',')[0]}", 1)
    f2.write_text(bad)
    code, text = run("check", str(f1), str(f2))
    assert code == 2 and text.startswith("invalid multiplicity")


def test_check_detects_cycle(tmp_path):
    f1, f2 = tmp_path / "g1.txt", tmp_path / "col.txt"
    f1.write_text("edge a b mult 1\nedge b a mult 1\n")
    f2.write_text("edge a b colors 3\nedge b a colors 3\n")
    code, text = run("check", str(f1), str(f2))
    assert code == 2 and text.startswith("invalid cycle")


def test_bench_output():
    code, text = run("bench", "--family", "uniform", "--sizes", "5,6", "--seeds", "2")
    assert code == 0 and "instances=4" in text


def test_ssp(tmp_path):
    p = tmp_path / "s.txt"
    p.write_text("abc\nbcd\ncde\n")
    code, text = run("ssp", str(p), "--exact")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "abcde"
    assert "optimal_compression=4" in lines and "length_ratio=1.000000" in lines


def test_usage_errors(tmp_path):
    assert run("solve", str(tmp_path / "missing.txt"))[0] == 1
    with pytest.raises(SystemExit) as exc:
        run("nonsense")
    assert exc.value.code == 1
    empty = tmp_path / "e.txt"
    empty.write_text("\n")
    assert run("ssp", str(empty))[0] == 1
    assert run("check", str(empty), str(empty))[0] == 1
