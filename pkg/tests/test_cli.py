import io
import json
import shutil
import subprocess
import sys

import pytest

from decotrees.cli import main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue().strip()


def test_star2():
    assert run("star", "2", "X^(1)", "X^(1)") == (0, "X^(2)")


def test_coproduct_d2():
    assert run("coproduct", "d2", "X^(1)", "--budget", "1") == (0, "X^(1)⊗1 + 1⊗X^(1)")


def test_graft_text():
    code, text = run("graft", "•1", "(t,(0))", "•0")
    assert code == 0 and text == "X^(0)[(t,(0))->X^(1)]"


def test_deform_graft_adds_lower_terms():
    _, plain = run("graft", "•0", "(t,(1))", "•1")
    _, deformed = run("deform-graft", "•0", "(t,(1))", "•1")
    assert deformed.startswith(plain) or plain in deformed
    assert deformed.count("+") == plain.count("+") + 1


def test_theta_roundtrip():
    _, fwd = run("theta", "X^(1)[(t,(1))->•0]")
    code, back = run("theta", "--inverse", fwd)
    assert code == 0 and back == "X^(1)[(t,(1))->X^(0)]"


def test_pair_and_antipode():
    assert run("pair", "X^(2)", "X^(2)") == (0, "2")
    code, text = run("antipode", "(t,(0))->•1")
    assert code == 0 and text.startswith("-")


def test_enumerate_json():
    code, text = run("enumerate", "--max-edges", "1", "--format", "json")
    payload = json.loads(text)
    assert code == 0 and payload["kind"] == "basis_list"
    assert payload["schema"] == "decotrees/1"
    assert len(payload["items"]) == 2 + 2 * 2 * 2


def test_lincomb_json():
    code, text = run("plug", "•1", "X^(0)[(t,(0))->•0]", "--variant", "plain", "--format", "json")
    payload = json.loads(text)
    assert code == 0 and payload["kind"] == "lincomb" and len(payload["terms"]) == 2


def test_check_pass_and_json():
    code, text = run("check", "chu-vandermonde")
    assert code == 0 and text.startswith("[PASS] chu-vandermonde")
    code, text = run("check", "displays", "--format", "json")
    payload = json.loads(text)
    assert code == 0 and payload["passed"] and payload["suites"][0]["suite"] == "displays"


def test_usage_errors(capsys):
    assert run("star", "2", "X^(1,0)", "X^(1)")[0] == 2
    assert run("graft", "•1", "(q,(0))", "•0")[0] == 2
    assert run("graft", "•1", "t0", "•0")[0] == 2
    assert run("coproduct", "d2", "X^(1)", "--budget", "-1")[0] == 2
    assert run("star", "2", "X^(1", "X^(1)")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_config_flag(tmp_path):
    p = tmp_path / "cfg.json"
    p.write_text(json.dumps({"dim": 2, "kinds": ["t"]}))
    assert run("star", "2", "X^(1,0)", "X^(0,1)", "--config", str(p)) == (0, "X^(1,1)")
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert run("pair", "•0", "•0", "--config", str(bad))[0] == 2
    assert run("star", "2", "X^(1,0)", "X^(0,1)", "--dim", "2") == (0, "X^(1,1)")


@pytest.mark.skipif(shutil.which("decotrees") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["decotrees", "star", "2", "X^(1)", "X^(1)"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "X^(2)"


def test_module_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "decotrees.cli", "coproduct", "d2", "X^(1)", "--budget", "1"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "X^(1)⊗1 + 1⊗X^(1)"
