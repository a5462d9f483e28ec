import subprocess
import sys

import pytest

from barcodebases.cli import main
from barcodebases.fileformat import format_maps, format_module, parse_basis, parse_module
from barcodebases.ladder import ladder_from_blocks, random_ladder
from barcodebases.oracle import random_module
from barcodebases import GF2, Matrix, PrimeField, comp_pers

from conftest import ex27_module, intro_module

EX27_REDUCED = """\
Q
length 3
type fff
dims 3 3 3 3
matrix 1 3 3
1 0 0
0 1 0
0 0 0
matrix 2 3 3
1 0 0
0 1 0
0 0 1
matrix 3 3 3
1 0 0
0 1 0
0 0 0
"""


@pytest.fixture
def files(tmp_path):
    intro = tmp_path / "intro.txt"
    intro.write_text(format_module(intro_module()))
    ex27 = tmp_path / "ex27.txt"
    ex27.write_text(format_module(ex27_module()))
    return tmp_path, intro, ex27


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_barcode_of_introductory_module(files, capsys):
    _, intro, _ = files
    assert run(["barcode", intro], capsys) == (0, "0 1 1\n0 3 1\n1 3 1\n", "")


def test_zero_maps_barcode(tmp_path, capsys):
    f = tmp_path / "z.txt"
    f.write_text("Fp 2\nlength 1\ntype f\ndims 2 1\nmatrix 1 1 2\n0 0\n")
    assert run(["barcode", f], capsys)[1] == "0 0 2\n1 1 1\n"


def test_stab_dim(files, capsys):
    _, intro, _ = files
    assert run(["stab-dim", intro], capsys)[:2] == (0, "6\n")


def test_reduce_golden(files, capsys):
    _, intro, ex27 = files
    code, out, _ = run(["reduce", ex27], capsys)
    assert code == 0 and out == EX27_REDUCED
    code, out, _ = run(["reduce", intro], capsys)
    assert out == format_module(intro_module())


def test_reduce_writes_files(files, capsys):
    tmp, _, ex27 = files
    code, out, _ = run(["reduce", ex27, "--emit-basis", "--emit-trace", "--output-dir", tmp / "out"], capsys)
    assert code == 0
    assert (tmp / "out" / "ex27.reduced.txt").read_text() == EX27_REDUCED
    g = parse_basis((tmp / "out" / "ex27.basis.txt").read_text())
    assert g == comp_pers(ex27_module()).change
    trace = (tmp / "out" / "ex27.trace.txt").read_text().splitlines()
    assert "col 3 2 1 -1" in trace and "row 2 1 2 1" in trace


def test_reduce_stdout_sections(files, capsys):
    _, _, ex27 = files
    code, out, _ = run(["reduce", ex27, "--emit-basis"], capsys)
    module_text, basis_text = out.split("# basis change\n")
    assert module_text == EX27_REDUCED
    assert parse_basis(basis_text).certify()


def test_malformed_dims_exit_two(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("Fp 2\nlength 1\ntype f\ndims 2\n")
    code, out, err = run(["barcode", f], capsys)
    assert code == 2 and out == ""
    assert "line 4" in err


def test_missing_file_exit_two(tmp_path, capsys):
    assert run(["reduce", tmp_path / "nope.txt"], capsys)[0] == 2


def test_plain_commands_refuse_backward_arrows(tmp_path, capsys):
    f = tmp_path / "z.txt"
    f.write_text("Fp 2\nlength 1\ntype q\ndims 1 1\nmatrix 1 1 1\n1\n")
    assert run(["barcode", f], capsys)[0] == 2
    assert run(["zigzag-barcode", f], capsys)[:2] == (0, "0 1 1\n")


def _write_ladder(tmp, L):
    paths = [tmp / "src.txt", tmp / "tgt.txt", tmp / "map.txt"]
    paths[0].write_text(format_module(L.source))
    paths[1].write_text(format_module(L.target))
    paths[2].write_text(format_maps(L.maps, L.field, L.tau))
    return paths


def test_ladder_nested_exit_four(tmp_path, capsys):
    L = ladder_from_blocks([(1, 4), (2, 3)], [(0, 3)], [[1, 1]], 4)
    code, out, err = run(["ladder", *_write_ladder(tmp_path, L)], capsys)
    assert code == 4 and out == ""
    assert "NESTED ([1,4],[2,3])" in err


def test_ladder_identity_map(files, capsys):
    tmp, intro, _ = files
    m = intro_module()
    mp = tmp / "id.txt"
    mp.write_text(format_maps([Matrix.identity(GF2, n) for n in m.dims], GF2, m.tau))
    code, out, _ = run(["ladder", intro, intro, mp], capsys)
    assert code == 0
    assert out == "R 0 1 0 1 1\nR 0 3 0 3 1\nR 1 3 1 3 1\n"


def test_ladder_bad_map_exit_two(files, capsys):
    tmp, intro, _ = files
    mp = tmp / "bad.txt"
    mp.write_text("Fp 2\nlength 3\ntype fff\nmatrix 0 1 1\n1\n")
    assert run(["ladder", intro, intro, mp], capsys)[0] == 2


def test_zigzag_ladder_obstruction_exit_four(tmp_path, capsys):
    L = ladder_from_blocks([(0, 0), (2, 2)], [(0, 2)], [[1, 1]], 2, tau="qf")
    code, _, err = run(["zigzag-ladder", *_write_ladder(tmp_path, L)], capsys)
    assert code == 4 and "cannot" in err


def test_zigzag_commands(tmp_path, capsys):
    L = random_ladder(5, 3, PrimeField(5), "fqq")
    paths = _write_ladder(tmp_path, L)
    code, out, _ = run(["zigzag-ladder", *paths], capsys)
    assert code == 0 and out
    code, out, _ = run(["zigzag-reduce", paths[0]], capsys)
    assert code == 0 and parse_module(out).tau == "fqq"
    code, out, _ = run(["zigzag-stab-dim", paths[0]], capsys)
    assert code == 0 and int(out) > 0


def test_barcode_batch_with_jobs(tmp_path, capsys):
    paths = []
    for seed in range(4):
        p = tmp_path / f"m{seed}.txt"
        p.write_text(format_module(random_module(seed, max_dim=3, field=PrimeField(3), length=3)))
        paths.append(p)
    serial = run(["barcode", *paths], capsys)
    parallel = run(["barcode", "--jobs", "2", *paths], capsys)
    assert serial == parallel
    assert serial[1].count("# ") == 4


def test_gen_is_deterministic(tmp_path, capsys):
    a = run(["gen", "--seed", "3", "--field", "Q", "--length", "4"], capsys)
    b = run(["gen", "--seed", "3", "--field", "Q", "--length", "4"], capsys)
    assert a == b and a[0] == 0
    assert parse_module(a[1]).length == 4
    z = run(["gen", "--seed", "1", "--type", "fqf", "--length", "3"], capsys)
    assert parse_module(z[1]).tau == "fqf"
    assert run(["gen", "--type", "fz", "--length", "2"], capsys)[0] == 2
    code, out, _ = run(["gen", "--ladder", "--output-dir", tmp_path / "lad", "--length", "3"], capsys)
    assert code == 0 and len(out.splitlines()) == 3


def test_module_entry_point(files):
    _, intro, _ = files
    proc = subprocess.run(
        [sys.executable, "-m", "barcodebases", "barcode", str(intro)], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "0 1 1\n0 3 1\n1 3 1\n"


def test_usage_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2
