import csv
import io
import json

import pytest
from click.testing import CliRunner

from staircap.cli import main
from staircap.exactnum import parse_eps


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, list(args), catch_exceptions=False)


class TestScalars:
    def test_fib(self, runner):
        out = invoke(runner, "fib", "--n", "7", "--json")
        assert json.loads(out.output) == {"n": 7, "g": "233"}

    def test_anchors(self, runner):
        out = invoke(runner, "anchors", "--n", "2", "--json")
        assert json.loads(out.output) == {"n": 2, "a": "25/4", "b": "13/2"}

    def test_staircase_value(self, runner):
        out = invoke(runner, "staircase", "--x", "13/2", "--json")
        payload = json.loads(out.output)
        assert payload["value"] == "13/5" and out.exit_code == 0

    def test_staircase_out_of_domain_exits_2(self, runner):
        out = runner.invoke(main, ["staircase", "--x", "7"])
        assert out.exit_code == 2 and "tau^4" in out.output

    def test_parse_error_exits_2(self, runner):
        out = runner.invoke(main, ["staircase", "--x", "seven"])
        assert out.exit_code == 2

    def test_fold_and_stabilized(self, runner):
        assert json.loads(invoke(runner, "fold", "--x", "7", "--json").output
                          )["bound"] == "21/8"
        payload = json.loads(invoke(runner, "stabilized", "--x", "7",
                                    "--json").output)
        assert payload["known_exact"] is False
        assert payload["upper_bound"] == "21/8"


class TestSequences:
    def test_capacities_json_array(self, runner):
        out = invoke(runner, "capacities", "--a", "1", "--b", "5",
                     "--eps-b", "1", "--count", "6", "--json")
        assert json.loads(out.output) == ["0", "1", "2", "3", "4", "5"]

    def test_emitted_values_reparse(self, runner):
        out = invoke(runner, "capacities", "--a", "5/2", "--b", "5/2",
                     "--eps-b", "1", "--count", "6", "--json")
        raw = json.loads(out.output)
        assert raw == ["0", "5/2", "5/2+1E", "5", "5+1E", "5+2E"]
        assert [str(parse_eps(t)) for t in raw] == raw

    def test_csv_json_same_content(self, runner):
        js = json.loads(invoke(runner, "capacities", "--a", "1", "--b", "2",
                               "--count", "5", "--json").output)
        cv = invoke(runner, "capacities", "--a", "1", "--b", "2",
                    "--count", "5", "--format", "csv").output
        rows = list(csv.reader(io.StringIO(cv)))
        assert rows[0] == ["term"] and [r[0] for r in rows[1:]] == js

    def test_cache_round_trip(self, runner, tmp_path):
        cache = tmp_path / "caps.json"
        args = ("capacities", "--a", "1", "--b", "5", "--eps-b", "1",
                "--count", "8", "--cache", str(cache), "--json")
        cold = invoke(runner, *args).output
        assert cache.exists()
        warm = invoke(runner, *args).output
        plain = invoke(runner, "capacities", "--a", "1", "--b", "5",
                       "--eps-b", "1", "--count", "8", "--json").output
        assert cold == warm == plain

    def test_compare_pass(self, runner):
        out = runner.invoke(main, ["compare", "--n", "1", "--kmax", "5",
                                   "--json"])
        assert out.exit_code == 0
        assert json.loads(out.output)["ok"] is True

    def test_compare_bad_kmax_exits_2(self, runner):
        assert runner.invoke(main, ["compare", "--n", "2", "--kmax", "3"]
                             ).exit_code == 2


class TestIndices:
    def test_grading_and_generator(self, runner):
        gr = json.loads(invoke(runner, "grading", "--a", "5/2", "--b", "5/2",
                               "--eps-b", "1", "--x1", "0", "--x2", "2",
                               "--json").output)
        assert gr["grading"] == 10
        gen = json.loads(invoke(runner, "generator", "--a", "5/2", "--b", "5/2",
                                "--eps-b", "1", "--gr", "10", "--json").output)
        assert (gen["x1"], gen["x2"]) == (0, 2)

    def test_degenerate_axes_exit_2(self, runner):
        out = runner.invoke(main, ["grading", "--a", "1", "--b", "5",
                                   "--x1", "1", "--x2", "0"])
        assert out.exit_code == 2

    def test_index4_and_j0(self, runner):
        common = ["--top", "0,2", "--bottom", "5,0",
                  "--etop", "5/2,5/2+1E", "--ebot", "1,5+1E", "--json"]
        assert json.loads(invoke(runner, "index4", *common).output)["I"] == 0
        payload = json.loads(invoke(runner, "j0", *common).output)
        assert payload == {"J0": 2, "I": 0, "gap": -2}

    def test_partition(self, runner):
        out = invoke(runner, "partition", "--m", "2", "--theta", "1+2/5E",
                     "--json")
        assert json.loads(out.output)["entries"] == "1,1"

    def test_indexN_spaces(self, runner):
        base = ["indexN", "--dim", "3", "--n", "1", "--json"]
        mid = json.loads(invoke(runner, *base, "--s", "1,1", "--t", "5").output)
        assert mid == {"space": "middle", "index": 0}
        bot = json.loads(invoke(runner, *base, "--space", "bottom",
                                "--r", "5", "--t", "5").output)
        assert bot == {"space": "bottom", "index": 0}
        top = json.loads(invoke(runner, *base, "--space", "top",
                                "--s", "1", "--u", "1").output)
        assert top == {"space": "top", "index": 2}


class TestLemmasAndVerify:
    @pytest.mark.parametrize("which", ["mainspace", "topid", "bottomid",
                                       "hermite", "floorsum"])
    def test_lemmas_pass(self, runner, which):
        out = runner.invoke(main, ["lemmas", "--which", which, "--n", "1",
                                   "--dim", "3", "--count", "500", "--json"])
        assert out.exit_code == 0, out.output
        assert json.loads(out.output)["ok"] is True

    def test_lemmas_keyest(self, runner):
        out = runner.invoke(main, ["lemmas", "--which", "keyest",
                                   "--count", "300", "--json"])
        assert out.exit_code == 0
        payload = json.loads(out.output)
        assert payload["ok"] and payload["min_margin"] >= 0

    def test_verify_json_schema(self, runner):
        out = runner.invoke(main, ["verify", "--n", "1", "--dim", "3",
                                   "--kmax", "5", "--json"])
        assert out.exit_code == 0
        payload = json.loads(out.output)
        assert payload["overall"] is True
        assert {c["name"] for c in payload["checks"]} >= {"capacity-dichotomy",
                                                          "j0-value"}

    def test_verify_default_kmax(self, runner):
        assert runner.invoke(main, ["verify", "--n", "0", "--dim", "3"]
                             ).exit_code == 0

    def test_identities(self, runner):
        out = runner.invoke(main, ["identities", "--nmax", "25", "--json"])
        assert out.exit_code == 0
        assert json.loads(out.output)["overall"] == "pass"
