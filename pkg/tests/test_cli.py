import io
import json

import pytest

from cobordism_classes.cli import run
from cobordism_classes.graded_series import GradedSeries


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_fgl():
    code, text = call("fgl", "--degree", "2")
    assert code == 0
    assert text.strip() == "F = u + v - b1*u*v"


@pytest.mark.parametrize("kind,r,bundle,want", [
    ("Q", "0", "O(1)@CP2", "1 + (b1^2 - b2)*u^2"),
    ("Q", "1", "O(1)@CP1", "u"),
    ("Q", "1", "O(1)+O(1)@CP2", "2*u - b1*u^2"),
    ("D", "1", "O(1)+O(-1)@CP2", "0"),
])
def test_class_examples(kind, r, bundle, want):
    code, text = call("class", "--kind", kind, "--r", r, "--bundle", bundle)
    assert code == 0
    assert text.strip().splitlines()[-1].endswith(want)


def test_expand_universal():
    code, text = call("expand", "--kind", "P", "--r", "1", "--rank", "2", "--degree", "3")
    assert code == 0
    assert "c1 - b1*c2 + (b1^2 - b2)*c1*c2" in text


def test_expand_difference():
    code, text = call("expand", "--kind", "P", "--r", "2", "--rank", "3", "--difference",
                      "--degree", "6")
    assert code == 0
    assert "zero through degree 5" in text


def test_pushforward():
    code, text = call("pushforward", "--fiber-dim", "2", "--expr", "u*t+t^2",
                      "--base-vars", "u", "--space", "CP2")
    assert code == 0 and text.strip() == "1 + b1*u"


def test_genus():
    code, text = call("genus", "--eval", "b1^2-b2", "--named", "todd")
    assert code == 0 and text.strip() == "0"


def test_json_round_trip():
    code, text = call("--format", "json", "class", "--kind", "Q", "--r", "0",
                      "--bundle", "O(1)@CP2")
    assert code == 0
    data = json.loads(text)
    assert data["schema"] == 1 and data["command"] == "class" and data["status"] == 0
    value = GradedSeries.from_json(data["value"])
    assert str(value) == "1 + (b1^2 - b2)*u^2"


def test_output_is_deterministic():
    argv = ("--format", "json", "expand", "--kind", "Q", "--r", "1", "--rank", "2",
            "--degree", "4")
    assert call(*argv) == call(*argv)


@pytest.mark.parametrize("argv", [
    ("class", "--kind", "Q", "--r", "0", "--bundle", "O(1)@RP2"),
    ("class", "--kind", "P", "--r", "2", "--rank", "4"),
    ("genus", "--eval", "b1^^2"),
])
def test_input_errors_exit_two(argv):
    code, _ = call(*argv)
    assert code == 2


def test_verification_exit_codes():
    assert call("verify", "--suite", "routes")[0] == 0
    assert call("verify", "--suite", "examples", "--bundles", "")[0] == 0
    assert call("verify", "--suite", "thresholds")[0] == 1


def test_verify_given_bundles():
    code, text = call("verify", "--suite", "examples", "--bundles",
                      "O(1)@CP1;O(2)+O(1)@CP2;O(1)+O(-1)+O(3)@CP1;O(1,0)+O(1,2)@CP1xCP2")
    assert code == 0, text


def test_out_file(tmp_path):
    target = tmp_path / "fgl.txt"
    code, _ = call("--out", str(target), "fgl", "--degree", "2")
    assert code == 0
    assert target.read_text().strip() == "F = u + v - b1*u*v"
