"""End-to-end command behaviour: exact bytes, exit codes, determinism."""

from pathlib import Path

import pytest

import lspaces.bialgebra as bialgebra
from lspaces import cli
from lspaces.errors import InternalCheckError

ANNULUS = "ribbon\nedges 1\nvertex 1 1\n"
MOBIUS = "ribbon\nedges 1\ntwist 1\nvertex 1 1\n"
CURL = "ribbon\nedges 2\nvertex 1 2 1 2\n"
TWISTED_CURL = "ribbon\nedges 2\ntwist 1\nvertex 1 2 1 2\n"
DUMBBELL = "ribbon\nedges 1\nvertex 1\nvertex 1\n"
K2 = "graph\nvertices 2\nedge 1 2\n"

GOLDEN = Path(__file__).parent / "data" / "check_golden.txt"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- reports --------------------------------------------------------------------


def test_info_on_the_annulus(capsys, write):
    code, out, err = run(capsys, "info", write("a.rib", ANNULUS))
    assert code == 0 and err == ""
    assert out == (
        "edges 1\n"
        "vertices 1, boundary 2, chi 0, orientable\n"
        "arcs 2\n"
        "  1: 1.0 1.3\n"
        "  2: 1.1 1.2\n"
    )


def test_info_on_the_mobius_band(capsys, write):
    code, out, _ = run(capsys, "info", write("m.rib", MOBIUS))
    assert code == 0
    assert "vertices 1, boundary 1, chi 0, non-orientable\n" in out


def test_info_on_the_curl(capsys, write):
    code, out, _ = run(capsys, "info", write("c.rib", CURL))
    assert code == 0
    assert out == (
        "edges 2\n"
        "vertices 1, boundary 1, chi -1, orientable\n"
        "arcs 4\n"
        "  1: 1.0 2.3\n"
        "  2: 1.1 2.0\n"
        "  3: 1.2 2.1\n"
        "  4: 1.3 2.2\n"
    )


def test_lspace_output(capsys, write):
    assert run(capsys, "lspace", write("c.rib", CURL))[1] == "lspace n=2\n10|01\n01|10\n"
    assert run(capsys, "lspace", write("a.rib", ANNULUS))[1] == "lspace n=1\n1|0\n"
    assert run(capsys, "lspace", write("d.rib", DUMBBELL))[1] == "lspace n=1\n0|1\n"


# --- transformations -------------------------------------------------------------


def test_dual_of_the_annulus_is_the_dumbbell_file(capsys, write):
    code, out, _ = run(capsys, "dual", write("a.rib", ANNULUS), "--edges", "1")
    assert code == 0 and out == DUMBBELL


def test_dual_round_trips_through_the_file(capsys, write):
    path = write("c.rib", CURL)
    _, once, _ = run(capsys, "dual", path, "--edges", "1,2")
    twice_path = write("c2.rib", once)
    _, twice, _ = run(capsys, "dual", twice_path, "--edges", "1,2")
    assert twice == CURL


def test_first_move_uncrosses_the_curl(capsys, write):
    code, out, _ = run(capsys, "vmove", write("c.rib", CURL), "--arc", "3", "--kind", "1")
    assert code == 0
    assert out == "ribbon\nedges 2\nvertex 1 1 2 2\n# image arc 3\n"


def test_second_move_on_the_twisted_curl(capsys, write):
    code, out, _ = run(
        capsys,
        "vmove",
        write("t.rib", TWISTED_CURL),
        "--arc",
        "3",
        "--kind",
        "2",
        "--fixed",
        "1",
    )
    assert code == 0
    assert out == "ribbon\nedges 2\ntwist 1 2\nvertex 1 1 2 2\n# image arc 1\n"


def test_intmatrix_emits_a_graph_file(capsys, write):
    code, out, _ = run(capsys, "intmatrix", write("t.rib", TWISTED_CURL))
    assert code == 0 and out == "graph\nvertices 2\nframe 1\nedge 1 2\n"


def test_interlace_of_one_edge(capsys, write):
    code, out, _ = run(capsys, "interlace", write("k2.graph", K2))
    assert code == 0 and out == "x^2 - 2x + 2y\n"


# --- enumeration -----------------------------------------------------------------


def test_lgr_counts(capsys):
    assert run(capsys, "lgr", "0")[1] == "1\n"
    assert run(capsys, "lgr", "2")[1] == "15\n"
    assert run(capsys, "lgr", "3")[1] == "135\n"
    assert run(capsys, "lgr", "2", "--orbits")[1] == "11\n"


def test_dims_table(capsys):
    code, out, _ = run(capsys, "dims", "--max", "2")
    assert code == 0
    assert out == (
        "grade  lagrangians  orbits  burnside  rank  dimK\n"
        "0      1            1       1         0     1\n"
        "1      3            3       3         0     3\n"
        "2      15           11      11        1     10\n"
    )


def test_dims_output_is_thread_count_independent(capsys):
    _, base, _ = run(capsys, "dims", "--max", "3")
    bialgebra._RANK_CACHE.clear()
    _, threaded, _ = run(capsys, "dims", "--max", "3", "--threads", "3")
    assert threaded == base


def test_dims_realized_sampling_is_seeded(capsys):
    args = ("dims", "--max", "1", "--realized", "15", "--seed", "9")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    assert first == second
    assert "realized grade 1: rank 3 of 3\n" in first


# --- the self-check suite -----------------------------------------------------------


def test_check_matches_the_golden_transcript(capsys):
    code, out, err = run(capsys, "check")
    assert code == 0 and err == ""
    assert out == GOLDEN.read_text()


def test_check_passes_on_other_seeds(capsys):
    code, out, _ = run(capsys, "check", "--seed", "7", "--count", "12")
    assert code == 0
    assert out.endswith("all checks passed\n")


# --- failure modes -------------------------------------------------------------------


def test_missing_file_exits_2(capsys):
    code, out, err = run(capsys, "info", "no-such-file.rib")
    assert code == 2 and out == "" and err.startswith("error: ")


def test_parse_error_exits_2_with_the_line(capsys, write):
    code, _, err = run(capsys, "info", write("bad.rib", "ribbon\nedges 1\nvertex x 1\n"))
    assert code == 2
    assert "line 3: expected an integer, got 'x'" in err


def test_wrong_format_exits_2(capsys, write):
    code, _, err = run(capsys, "interlace", write("a.rib", ANNULUS))
    assert code == 2 and "header" in err


def test_bad_arc_exits_3(capsys, write):
    code, _, err = run(capsys, "vmove", write("c.rib", CURL), "--arc", "9", "--kind", "1")
    assert code == 3 and err.startswith("error: ")


def test_single_segment_arc_exits_3(capsys, write):
    code, _, err = run(capsys, "vmove", write("d.rib", DUMBBELL), "--arc", "1", "--kind", "1")
    assert code == 3 and "single segment" in err


def test_intmatrix_names_the_vertex_count(capsys, write):
    code, _, err = run(capsys, "intmatrix", write("d.rib", DUMBBELL))
    assert code == 3 and "got 2" in err


def test_negative_grade_exits_3(capsys):
    code, _, err = run(capsys, "lgr", "--", "-1")
    assert code == 3 and "nonnegative" in err


def test_internal_check_failures_exit_4(capsys, monkeypatch):
    def explode(args):
        raise InternalCheckError("invariant broke")

    monkeypatch.setattr(cli, "cmd_check", explode)
    code, _, err = run(capsys, "check")
    assert code == 4 and "invariant broke" in err
