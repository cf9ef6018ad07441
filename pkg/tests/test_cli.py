import io
import json

import pytest

from canonlift.cli import RunConfig, InputError, parse_element, run
from canonlift.series import BaseRing


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out)
    return code, out.getvalue()


def test_verify_all_height2():
    code, text = call("verify", "all", "--height2", "--json")
    assert code == 0
    data = json.loads(text)
    names = [c["check"] for r in data["reports"] for c in r["checks"]]
    assert "T2(u1) = u1^2" in names
    for r in data["reports"]:
        for c in r["checks"]:
            assert set(c) == {"check", "pass", "witness", "paper_ref"}


def test_subgroups():
    code, text = call("subgroups", "--p", "2", "--n", "2", "--k", "1", "--json")
    assert code == 0 and json.loads(text)["count"] == 3


def test_hecke_zero():
    code, text = call("hecke", "--height2", "--elt", "0", "--json")
    assert code == 0
    assert json.loads(text)["result"] == "O(deg 9, 2^16)"


def test_hecke_polynomial_input():
    code, text = call("hecke", "--elt", "u1")
    assert code == 0 and text.strip().endswith("T2(u1) = u1^2")


def test_theta_and_sigma_can():
    code, text = call("theta", "--elt", "1", "--json")
    assert code == 0 and json.loads(text)["result"] == "1 + O(deg 9, 2^15)"
    code, text = call("sigma-can", "--elt", "[0, 0, 1]", "--json")
    assert code == 0 and json.loads(text)["sigma_can"] == "2*u1 + O(deg 9, 2^16)"


@pytest.mark.parametrize("which", ["congruence", "frobenius-class", "index-lemma", "factorization"])
def test_verify_subcommands(which):
    assert call("verify", which, "--samples", "20")[0] == 0


def test_height1_commands():
    code, text = call("model", "height1", "--p", "3", "--json")
    assert code == 0 and json.loads(text)["modulus"] == "-3 + y"
    assert call("verify", "congruence", "--height1", "--prime", "5", "--samples", "20")[0] == 0


def test_deterministic_reports():
    a = call("verify", "congruence", "--samples", "30", "--seed", "7", "--json")
    b = call("verify", "congruence", "--samples", "30", "--seed", "7", "--json")
    assert a == b


def test_input_errors():
    with pytest.raises(SystemExit) as exc:
        run(["verify", "all", "--bogus"])
    assert exc.value.code == 2
    assert call("hecke", "--elt", "{\"nope\": 1}")[0] == 2
    assert call("verify", "congruence", "--height1", "--prime", "7")[0] == 2
    assert call("verify", "congruence", "--height2", "--prime", "3")[0] == 2
    assert call("hecke", "--elt", "1", "--precision", "1")[0] == 2


def test_failed_check_exits_one(monkeypatch):
    from canonlift import froblift

    def failing(model, samples, seed):
        report = froblift.FrobeniusReport(model.name)
        report.add("forced failure", False, "witness")
        return report

    monkeypatch.setattr(froblift, "congruence_check", failing)
    code, text = call("verify", "congruence", "--json")
    assert code == 1
    assert json.loads(text)["pass"] is False


def test_parse_element_forms():
    E = BaseRing(("u1",), 8, 2, 16)
    u1 = E.gen(0)
    assert parse_element("5", E) == 5
    assert parse_element('"u1^2 + 1"', E) == u1 ** 2 + 1
    assert parse_element("[[[1], 3]]", E) == u1 * 3
    assert parse_element(json.dumps((u1 * 2).to_json()), E) == u1 * 2
    with pytest.raises(InputError):
        parse_element("true", E)


def test_run_config_validation():
    with pytest.raises(InputError):
        RunConfig(degree=1).validate()
