"""End-to-end tests of the command line."""

import json

import pytest

from src.collectors.instance_file import load_instance
from src.main import EXIT_INPUT, EXIT_OK, EXIT_VERIFICATION, run
from src.oracle.verification import ALIASES


@pytest.fixture
def quick_config(tmp_path):
    path = tmp_path / "quick.yaml"
    path.write_text("random_instances: 5\n", encoding="utf-8")
    return path


@pytest.fixture
def empty_category_file(write_json):
    """Raw instance whose only category has no units but one eligible patient."""
    return write_json(
        "empty.json",
        {"patients": ["i1"], "categories": [{"id": "a", "capacity": 0, "priority": ["i1"], "eligible_count": 1}]},
    )


def _report(capsys) -> dict:
    return json.loads(capsys.readouterr().out)


class TestRunMechanisms:
    """Test cases for running a mechanism from an instance file."""

    @pytest.mark.e2e
    def test_sequential_with_trace(self, example1_file, capsys):
        """The sequential report carries the matching, the step trace and the axioms."""
        # When
        code = run(["--instance", str(example1_file), "--mechanism", "sequential",
                    "--precedence", "cp,c,cs,ch,ct,u", "--trace"])

        # Then
        assert code == EXIT_OK
        report = _report(capsys)
        assert report["matching"]["i6"] is None
        assert report["matching"]["i5"] == "u"
        assert [s["patients"] for s in report["trace"]] == [["i1"], ["i3"], ["i2"], ["i4"], ["i7"], ["i5"]]
        assert all(report["axioms"].values())

    @pytest.mark.e2e
    @pytest.mark.parametrize("mechanism", ["smart-poly", "smart-exhaustive"])
    def test_smart_reserve(self, example2_file, capsys, mechanism):
        """Both smart procedures report the efficient matching and its summary."""
        # When
        code = run(["--instance", str(example2_file), "--mechanism", mechanism, "--n", "0"])

        # Then
        assert code == EXIT_OK
        report = _report(capsys)
        assert report["matching"] == {"i1": "c", "i2": "u"}
        assert report["summary"]["beneficiary_assigned"] == ["i1"]
        assert report["metadata"] == {"n": 0, "mode": "hard"}

    @pytest.mark.e2e
    def test_deferred_acceptance(self, example2_file, write_json, capsys):
        """Deferred acceptance reads a profile file and traces its rounds."""
        # Given
        profile = write_json("profile.json", {"preferences": {"i1": ["u", "c"], "i2": ["u"]}})

        # When
        code = run(["--instance", str(example2_file), "--mechanism", "da", "--profile", str(profile), "--trace"])

        # Then
        assert code == EXIT_OK
        report = _report(capsys)
        assert report["matching"] == {"i1": "u", "i2": None}
        assert report["trace"][0]["rejected"] == ["i2"]

    @pytest.mark.e2e
    def test_text_format(self, example2_file, capsys):
        """The text format renders tables."""
        code = run(["--instance", str(example2_file), "--mechanism", "sequential",
                    "--precedence", "c,u", "--format", "text"])
        assert code == EXIT_OK
        assert "Matching" in capsys.readouterr().out

    @pytest.mark.e2e
    def test_same_flags_give_identical_output(self, example1_file, capsys):
        """Repeating a run reproduces its report byte for byte."""
        # Given
        argv = ["--instance", str(example1_file), "--mechanism", "smart-poly", "--n", "1", "--trace"]

        # When
        outputs = []
        for _ in range(2):
            assert run(argv) == EXIT_OK
            outputs.append(capsys.readouterr().out)

        # Then
        assert outputs[0] == outputs[1]
        assert outputs[0]


class TestInputErrors:
    """Test cases for rejected inputs."""

    @pytest.mark.e2e
    def test_malformed_file(self, write_json):
        """A malformed instance file exits with the input code."""
        path = write_json("bad.json", {"patients": ["i1"], "categories": "nope"})
        assert run(["--instance", str(path), "--mechanism", "sequential", "--precedence", "a"]) == EXIT_INPUT

    @pytest.mark.e2e
    def test_sequential_needs_precedence(self, example2_file):
        """The sequential mechanism needs an order of precedence."""
        assert run(["--instance", str(example2_file), "--mechanism", "sequential"]) == EXIT_INPUT

    @pytest.mark.e2e
    def test_smart_needs_baseline_file(self, raw_file):
        """Smart reserve matching needs a baseline instance."""
        assert run(["--instance", str(raw_file), "--mechanism", "smart-poly"]) == EXIT_INPUT

    @pytest.mark.e2e
    def test_exhaustive_guard(self, example1_file):
        """The exhaustive procedure refuses the seven-patient example."""
        assert run(["--instance", str(example1_file), "--mechanism", "smart-exhaustive"]) == EXIT_INPUT

    @pytest.mark.e2e
    def test_smart_n_out_of_range(self, example2_file):
        """``--n`` above the unreserved capacity is rejected."""
        assert run(["--instance", str(example2_file), "--mechanism", "smart-poly", "--n", "5"]) == EXIT_INPUT

    @pytest.mark.e2e
    def test_unknown_mechanism(self, example2_file):
        """Unknown mechanisms are rejected by the option parser."""
        assert run(["--instance", str(example2_file), "--mechanism", "lottery"]) == EXIT_INPUT

    @pytest.mark.e2e
    def test_nothing_to_do(self):
        """Without a mechanism or a property there is nothing to run."""
        assert run([]) == EXIT_INPUT

    @pytest.mark.e2e
    @pytest.mark.parametrize(
        "text",
        ["max_units: 0\n", "random_max_categories: 0\n", "random_instances: [1\n", "output_format: xml\n"],
    )
    def test_invalid_config(self, tmp_path, text):
        """Malformed or out-of-range settings exit with the input code."""
        # Given
        path = tmp_path / "config.yaml"
        path.write_text(text, encoding="utf-8")

        # When
        code = run(["--verify", "axioms", "--seed", "1", "--config", str(path)])

        # Then
        assert code == EXIT_INPUT


class TestVerify:
    """Test cases for property verification from the command line."""

    @pytest.mark.e2e
    def test_random_instances(self, quick_config, capsys):
        """A random run that holds exits with success."""
        # When
        code = run(["--verify", "cutoff-equilibrium", "--seed", "42", "--config", str(quick_config)])

        # Then
        assert code == EXIT_OK
        report = _report(capsys)
        assert report["holds"] is True
        assert report["details"]["seed"] == 42

    @pytest.mark.e2e
    @pytest.mark.parametrize("alias", sorted(ALIASES))
    def test_short_property_names(self, alias, quick_config, capsys):
        """Each short property name runs its property."""
        # When
        code = run(["--verify", alias, "--seed", "42", "--config", str(quick_config)])

        # Then
        assert code == EXIT_OK
        report = _report(capsys)
        assert report["property"] == ALIASES[alias]
        assert report["holds"] is True

    @pytest.mark.e2e
    def test_same_seed_gives_identical_output(self, quick_config, capsys):
        """A verification run is reproducible from its seed."""
        # Given
        argv = ["--verify", "cutoff-intervals", "--seed", "7", "--config", str(quick_config)]

        # When
        outputs = []
        for _ in range(2):
            assert run(argv) == EXIT_OK
            outputs.append(capsys.readouterr().out)

        # Then
        assert outputs[0] == outputs[1]

    @pytest.mark.e2e
    def test_given_instance(self, example2_file, capsys):
        """A property can be checked on a given instance."""
        assert run(["--verify", "smart-properties", "--instance", str(example2_file)]) == EXIT_OK
        assert _report(capsys)["holds"] is True

    @pytest.mark.e2e
    def test_given_instance_by_short_name(self, example2_file, capsys):
        """Short names work on given instances too."""
        assert run(["--verify", "prop4", "--instance", str(example2_file)]) == EXIT_OK
        assert _report(capsys)["property"] == "smart-properties"

    @pytest.mark.e2e
    def test_counterexample_is_dumped(self, empty_category_file, tmp_path, capsys):
        """A failing property exits with the verification code and dumps the instance."""
        # Given
        dump = tmp_path / "counterexample.json"

        # When
        code = run(["--verify", "cutoff-equilibrium", "--instance", str(empty_category_file), "--dump", str(dump)])

        # Then
        assert code == EXIT_VERIFICATION
        assert _report(capsys)["holds"] is False
        assert load_instance(dump) == load_instance(empty_category_file)
