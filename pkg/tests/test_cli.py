import io
import subprocess
import sys

import pytest

from ontomodal.cli import execute
from ontomodal.kripke import eval, parse_model
from ontomodal.parser import parse


def run(*argv, stdin=""):
    out = io.StringIO()
    code = execute(list(argv), out, io.StringIO(stdin))
    return code, out.getvalue()


def fields(text):
    return dict(line.split(": ", 1) for line in text.splitlines() if ": " in line and not line.startswith(" "))


def model_of(text):
    keep = ("worlds:", "access:", "time:", "domain:", "val:", "ext:", "rel:", "pos:")
    return parse_model("\n".join(ln for ln in text.splitlines() if ln.startswith(keep)))


class TestDecide:
    def test_s5_valid(self):
        code, out = run("valid", "--system", "S5", "<>[]p -> []p")
        assert code == 0 and fields(out)["verdict"] == "Valid"

    def test_collapse_countermodel(self):
        code, out = run("valid", "--system", "S5", "<>p -> []p")
        assert code == 1
        f = fields(out)
        assert f["verdict"] == "Countermodel"
        m = model_of(out)
        assert len(m.worlds) <= 2
        assert not eval(m, f["world"], parse("<>p -> []p"))

    def test_unsat(self):
        code, out = run("sat", "--system", "T", "p & ~p")
        assert code == 1 and fields(out)["verdict"] == "UNSAT"

    def test_sat_model(self):
        code, out = run("sat", "--system", "K", "<>p & []q")
        assert code == 0
        assert eval(model_of(out), fields(out)["world"], parse("<>p & []q"))

    def test_oracle_agree(self):
        code, out = run("valid", "--system", "T", "--oracle", "[]p -> p")
        assert code == 0 and fields(out)["oracle"] == "agree"

    def test_stdin(self):
        code, out = run("valid", "--system", "K", "-", stdin="[](p -> q) -> []p -> []q\n")
        assert code == 0

    def test_syntax_error(self):
        code, out = run("valid", "--system", "S5", "p &")
        assert code == 2 and out.startswith("error:")

    def test_bad_system(self):
        code, _ = run("valid", "--system", "K5", "p")
        assert code == 2

    def test_first_order_rejected(self):
        code, _ = run("valid", "--system", "S5", "ex x. G(x)")
        assert code == 2


class TestOther:
    def test_parse(self):
        code, out = run("parse", "-e", "[]  p->p")
        assert code == 0 and fields(out)["formula"] == "[]p -> p"

    def test_parse_lines(self):
        code, out = run("parse", "-", stdin="p\n[]q\n")
        assert code == 0 and out.count("formula:") == 2

    def test_eval(self, tmp_path):
        m = tmp_path / "m.txt"
        m.write_text("worlds: w\naccess: w->w\nval: p @ w\n")
        code, out = run("eval", "--model", str(m), "--world", "w", "[]p")
        assert code == 0 and fields(out)["verdict"] == "true"
        code, out = run("eval", "--model", str(m), "--world", "w", "[]~p")
        assert code == 1 and fields(out)["verdict"] == "false"

    def test_eval_missing_file(self):
        code, _ = run("eval", "--model", "/nonexistent", "--world", "w", "p")
        assert code == 2

    def test_transform_formula(self):
        code, out = run("transform", "--op", "temporalize", "--formula", "ex x. G(x)")
        assert code == 0
        assert parse(fields(out)["result"]) == parse("(E- ex x. G(x)) & E+ ex x. G(x)")

    def test_transform_system(self):
        code, out = run("transform", "--op", "break", "--system", "O")
        assert code == 0 and fields(out)["system"] == "O_TB"

    def test_check_proof(self, tmp_path):
        p = tmp_path / "s.proof"
        p.write_text("system S5\ngoal p -> p\n1 p -> p | axiom TAUT\n")
        code, out = run("check-proof", str(p))
        assert code == 0 and fields(out)["verdict"] == "Accept"
        p.write_text("system S5\ngoal p -> q\n1 p -> q | axiom TAUT\n")
        code, out = run("check-proof", str(p))
        assert code == 1 and fields(out)["reason"] == "bad-instantiation"

    def test_check_proof_script_error(self, tmp_path):
        p = tmp_path / "s.proof"
        p.write_text("system S5\ngoal p\n1 p | bogus\n")
        code, out = run("check-proof", str(p))
        assert code == 2 and "line 3" in out

    def test_run_all(self):
        code, out = run("ontology", "run-all")
        assert code == 0 and out.count("Accept") >= 6

    def test_collapse(self):
        code, out = run("ontology", "collapse")
        assert code == 0 and fields(out)["o-derivation"] == "not mechanized"

    @pytest.mark.parametrize("argv", [
        ("valid", "--system", "S4", "[]p -> [][]p"),
        ("sat", "--system", "S5", "<>p & <>~p"),
        ("ontology", "collapse"),
    ])
    def test_deterministic(self, argv):
        assert run(*argv) == run(*argv)

    def test_console_script(self):
        r = subprocess.run([sys.executable, "-m", "ontomodal.cli", "parse", "-e", "p"], capture_output=True, text=True)
        assert r.returncode == 0 and "formula: p" in r.stdout
