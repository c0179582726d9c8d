import pathlib

from magmakit.cli import run

DATA = pathlib.Path(__file__).parent / "data"

WORKED = str(DATA / "worked_example.pres")
C3MINUS = str(DATA / "c3minus.eform")
C3PLUS = str(DATA / "c3plus.eform")
LANG = str(DATA / "lang.eform")
MIXED = str(DATA / "mixed.eform")

REDUCE_GOLDEN = """\
[I] split (c+d)+(a+c) = (a+a)+a
[IV] flip a+c = a
[V] add b = b
[VII] drop c, rewrite c->a
[VII] drop d, rewrite d->a
eform: a -> (a+a); b -> b
"""


def test_reduce_golden(capsys):
    assert run(["reduce", WORKED]) == 0
    assert capsys.readouterr().out == REDUCE_GOLDEN


def test_reduce_output_is_stable(capsys):
    run(["reduce", WORKED])
    first = capsys.readouterr().out
    run(["reduce", WORKED])
    assert capsys.readouterr().out == first


def test_eform_golden(capsys):
    assert run(["eform", WORKED]) == 0
    assert capsys.readouterr().out == "eform:\nmap: a -> a+a\nmap: b -> b\n"


def test_iso_not_isomorphic(capsys):
    assert run(["iso", C3MINUS, C3PLUS]) == 1
    assert capsys.readouterr().out == "not isomorphic\n"


def test_iso_self(capsys):
    assert run(["iso", C3PLUS, C3PLUS]) == 0
    assert capsys.readouterr().out == "isomorphic\n1 -> 1\n"


def test_iso_witness(tmp_path, capsys):
    other = tmp_path / "other.eform"
    other.write_text("eform:\nmap: x -> x\nmap: y -> y+y\n")
    assert run(["iso", MIXED, str(other)]) == 0
    assert capsys.readouterr().out == "isomorphic\na -> y\nb -> x\n"


def test_iso_search_too_large(tmp_path, capsys):
    names = [f"g{i}" for i in range(13)]
    text = "eform:\n" + "".join(f"map: {n} -> {n}\n" for n in names)
    big = tmp_path / "big.eform"
    big.write_text(text)
    assert run(["iso", str(big), str(big)]) == 3
    assert capsys.readouterr().out == "search too large\n"


def test_normalize_golden(capsys):
    assert run(["normalize", LANG, "(a+(a+b))"]) == 0
    assert capsys.readouterr().out == "b\n"


def test_normalize_bad_term_is_usage_error(capsys):
    assert run(["normalize", LANG, "(a+"]) == 2


def test_classes_golden(capsys):
    assert run(["classes", LANG, "--bound", "2"]) == 0
    assert capsys.readouterr().out == \
        "{a}\n{b, a+b}\n{a+a}\n{b+a}\n{b+b}\n"


def test_classes_cap_exit(capsys):
    assert run(["classes", LANG, "--bound", "6", "--max-pairs", "10"]) == 3


def test_solve_diamond_solution(capsys):
    assert run(["solve", "diamond", "x+x", "1"]) == 0
    assert capsys.readouterr().out == "x = 1\n"


def test_solve_diamond_no_solution(capsys):
    assert run(["solve", "diamond", "x+x", "2"]) == 1
    assert capsys.readouterr().out == "no solution\n"


def test_solve_eform_model(capsys):
    assert run(["solve", LANG, "x+y", "b"]) == 0
    assert capsys.readouterr().out == "x = a\ny = b\n"


def test_solve_variable_clash_is_usage_error(capsys):
    assert run(["solve", LANG, "a+a", "b"]) == 2


def test_solve_seq(capsys):
    assert run(["solve", "seq", "x+y", "0011"]) == 0
    assert capsys.readouterr().out == "x = 01\ny = 01\n"


def test_solve_lang(capsys):
    assert run(["solve", "lang", "x+y", "a,b"]) == 0
    assert capsys.readouterr().out == "x = -\ny = -\n"


def test_split_golden(capsys):
    assert run(["split", MIXED]) == 0
    assert capsys.readouterr().out == (
        "initial: b\nfull: a\n"
        "initial part:\neform:\nmap: b -> b\n"
        "full part:\ngens: a b\nrel: a = a+a\n")


def test_product_renames_cyclic_generators(capsys):
    assert run(["product", C3PLUS, C3PLUS]) == 0
    out = capsys.readouterr().out
    assert out == ("# renamed (left): 1 -> one1\n"
                   "# renamed (right): 1 -> one2\n"
                   "eform:\n"
                   "map: one1 -> one1+(one1+one1)\n"
                   "map: one2 -> one2+(one2+one2)\n")


def test_product_disjoint(tmp_path, capsys):
    left = tmp_path / "l.eform"
    left.write_text("eform:\nmap: a -> a\n")
    right = tmp_path / "r.eform"
    right.write_text("eform:\nmap: b -> b+b\n")
    assert run(["product", str(left), str(right)]) == 0
    assert capsys.readouterr().out == \
        "eform:\nmap: a -> a\nmap: b -> b+b\n"


def test_models_check_ok(capsys):
    assert run(["models-check", "diamond", "--samples", "500"]) == 0
    out = capsys.readouterr().out
    assert out == "samples: 500\nviolations: none\n"


def test_missing_file_is_usage_error(capsys):
    assert run(["reduce", "no_such_file.pres"]) == 2


def test_unknown_subcommand_is_usage_error(capsys):
    assert run(["frobnicate"]) == 2


def test_bad_presentation_reports_line(tmp_path, capsys):
    bad = tmp_path / "bad.pres"
    bad.write_text("gens: a\nrel: a = (a+\n")
    assert run(["reduce", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "line 2" in err


def test_threads_flag_accepted(capsys):
    assert run(["reduce", WORKED, "--threads", "2"]) == 0
    assert run(["reduce", WORKED, "--threads", "0"]) == 2
