import json
import subprocess
import sys
import pytest
from hypothesis import given, strategies as st

from modforms.cli import main
from modforms.errors import FormSyntaxError, UnknownAtom
from modforms.expr import Atom, BinOp, Num, Pow, evaluate, infer, parse_form_expr, unparse
from modforms.forms import delta, eisenstein_E

atoms = st.sampled_from([Atom("E", 4), Atom("E", 6), Atom("E", 2), Atom("Delta"), Atom("theta"),
                         Atom("j"), Atom("eta", 1), Atom("eta", 11)])
leaves = st.one_of(atoms, st.integers(0, 50).map(Num))
trees = st.recursive(
    leaves,
    lambda kids: st.one_of(
        st.builds(BinOp, st.sampled_from("+-*/"), kids, kids),
        st.builds(Pow, kids, st.integers(-3, 5)),
    ),
    max_leaves=8,
)


@given(trees)
def test_unparse_round_trip(tree):
    text = unparse(tree)
    again = parse_form_expr(text)
    assert unparse(again) == text
    assert parse_form_expr(unparse(again)) == again


def test_canonical_forms():
    assert unparse(parse_form_expr(" ( E4 ^3 - E6^2 ) / 1728 ")) == "(E4^3-E6^2)/1728"
    assert unparse(parse_form_expr("a-(b-c)".replace("a", "E4").replace("b", "E4").replace("c", "E4"))) == "E4-(E4-E4)"
    assert parse_form_expr("eta(1)^24") == Pow(Atom("eta", 1), 24)


@pytest.mark.parametrize("text,offset", [("E4^^2", 4), ("E4+", 4), ("(E4", 4), ("E4 $ E6", 4),
                                          ("", 1), ("E4 E6", 4), ("eta(0)", 5)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(FormSyntaxError) as ei:
        parse_form_expr(text)
    assert ei.value.position == offset


def test_unknown_atom():
    with pytest.raises(UnknownAtom):
        parse_form_expr("E4*Foo")


def test_inference():
    t = infer(parse_form_expr("(E4^3-E6^2)/1728"))
    assert t.weight == 12 and t.level == 1 and not t.quasimodular
    t = infer(parse_form_expr("theta^4*E4"))
    assert t.weight == 6 and t.level == 4
    t = infer(parse_form_expr("eta(1)^2*eta(11)^2"))
    assert t.weight == 2 and t.level == 11
    assert infer(parse_form_expr("E4+E6")).weight is None
    assert infer(parse_form_expr("E2*Delta")).quasimodular
    assert infer(parse_form_expr("E4^3/Delta")).weight == 0


def test_evaluation_matches_builders():
    d = evaluate("(E4^3-E6^2)/1728", 30)
    assert d.offset == 1 and d.coeffs == delta(40).series.strip().coeffs[:30]
    assert evaluate("E4^2", 20).coeffs == eisenstein_E(8, 20).series.coeffs
    j = evaluate("E4^3/Delta", 5)
    assert j.offset == -1 and [int(c) for c in j.coeffs] == [1, 744, 196884, 21493760, 864299970]
    # cancellation to a higher-order leading term still yields the full number of terms
    assert evaluate("E4^3-E6^2", 10).offset == 1


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_coeffs(capsys):
    code, out, _ = run(["coeffs", "Delta", "--terms", "5"], capsys)
    assert code == 0 and out == "q^1: 1, -24, 252, -1472, 4830\n"
    code, out, _ = run(["coeffs", "(E4^3-E6^2)/1728", "--terms", "5", "--json"], capsys)
    obj = json.loads(out)
    assert obj["coefficients"] == ["1", "-24", "252", "-1472", "4830"] and obj["weight"] == "12"


def test_cli_dim_tau_rk_zetak(capsys):
    assert run(["dim", "--level", "4", "--weight", "2"], capsys)[1].strip().endswith("2")
    assert json.loads(run(["dim", "--level", "11", "--weight", "2", "--space", "cusp", "--json"],
                          capsys)[1])["dim"] == 1
    assert run(["tau", "--n", "25"], capsys)[1].strip() == "-25499225"
    assert json.loads(run(["tau", "--upto", "6", "--json"], capsys)[1]) == [1, -24, 252, -1472, 4830, -6048]
    assert run(["rk", "--k", "4", "--n", "5", "--brute"], capsys)[1].startswith("48")
    assert "1/30" in run(["zetak", "--disc", "5"], capsys)[1]


def test_cli_hecke(capsys):
    code, out, _ = run(["hecke", "--on-j", "3"], capsys)
    assert code == 0 and out.strip() == "1/3*j^3 - 744*j^2 + 356652*j - 12288000"
    code, out, _ = run(["hecke", "--matrix", "--weight", "24", "--n", "2", "--json"], capsys)
    assert code == 0 and "charpoly" in json.loads(out)


def test_cli_numeric(capsys):
    code, out, _ = run(["lvalue", "--s", "6", "--json"], capsys)
    assert code == 0 and json.loads(out)
    code, out, _ = run(["lvalue", "eta(1)^2*eta(11)^2", "--s", "1", "--level", "11"], capsys)
    assert code == 0 and "0.25384186085" in out
    code, out, _ = run(["cm", "--point", "i"], capsys)
    assert code == 0 and out.startswith("1728")


def test_cli_json_and_plain_agree(capsys):
    _, plain, _ = run(["coeffs", "E4", "--terms", "6"], capsys)
    _, js, _ = run(["coeffs", "E4", "--terms", "6", "--json"], capsys)
    assert plain.strip().split(": ")[1].split(", ") == json.loads(js)["coefficients"]


@pytest.mark.parametrize("argv,code", [
    (["coeffs", "E4^^2"], 1),
    (["coeffs", "Foo"], 1),
    (["nonsense"], 1),
    (["dim"], 1),
    (["tau", "--n", "0"], 2),
    (["coeffs", "E3"], 2),
    (["lvalue", "--s", "12"], 2),
    (["eval", "Delta", "--tau", "0.1-1i"], 2),
    (["check", "--suite", "identities"], 0),
])
def test_exit_codes(argv, code, capsys):
    assert main(argv) == code


def test_output_is_byte_stable():
    cmd = [sys.executable, "-m", "modforms", "coeffs", "j", "--terms", "8", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a.endswith(b"\n")


def test_prec_env(monkeypatch):
    monkeypatch.setenv("MODFORMS_PREC", "60")
    from modforms.cli import _ctx, build_parser
    assert _ctx(build_parser().parse_args(["cm", "--point", "i"])).digits == 60
    assert _ctx(build_parser().parse_args(["eval", "Delta", "--tau", "i"])).digits == 60
    monkeypatch.setenv("MODFORMS_PREC", "40")
    assert _ctx(build_parser().parse_args(["cm", "--point", "i"])).digits == 50
    assert _ctx(build_parser().parse_args(["eval", "Delta", "--tau", "i", "--prec", "45"])).digits == 45
