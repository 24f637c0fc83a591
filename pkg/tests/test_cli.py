import json
import sys

import pytest

from gaussbeam.cli.__main__ import _create_parser, main, process
from gaussbeam.cli.config import RunConfig
from gaussbeam.cli.export import ResultDocument, format_complex, format_float, validate_document
from gaussbeam.utils.errors import UsageError, UserErrorMessage, VerificationFailure
from gaussbeam.utils.settings import BUILTIN_DEFAULTS


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "defaults.yml"
    path.write_text("", encoding="utf-8")
    return path


@pytest.fixture
def run(config_file, capsys):
    def _run(*argv):
        process(_create_parser().parse_args(["--config", str(config_file), *argv]))
        return capsys.readouterr()

    return _run


def _parse(*argv):
    return _create_parser().parse_args(list(argv))


def test_matrix_approx(run):
    lines = run("matrix", "--which", "approx").out.splitlines()
    assert len(lines) == 8
    assert lines[0] == "1 1 1 1 1 1 1 1"
    assert lines[1].split() == [
        "1", "(1-1j)/2", "-1j", "(-1-1j)/2", "-1", "(-1+1j)/2", "1j", "(1+1j)/2",
    ]


def test_matrix_exact_small(run):
    assert run("matrix", "--which", "exact", "--n", "2").out == "1 1\n1 -1\n"


def test_matrix_stages(run):
    out = run("matrix", "--which", "stages").out
    titles = [line for line in out.splitlines() if line.startswith("stage ")]
    assert len(titles) == 7
    assert titles[0].startswith("stage 1: B8")
    assert titles[-1].startswith("stage 7: P")


def test_matrix_json(run):
    document = json.loads(run("matrix", "--format", "json").out)
    assert document["schema_version"] == "1"
    assert document["command"] == "matrix"
    assert document["payload"]["scale"] == "1/2"
    assert document["provenance"]["seed"] == 0


def test_verify(run):
    out = run("verify", "--frames", "1000").out
    assert "[FAIL]" not in out
    assert "complex multiplications: 0" in out
    assert "complex additions: 26" in out
    assert "adder depth: 4" in out


def test_verify_json(run):
    payload = json.loads(run("verify", "--frames", "50", "--format", "json").out)["payload"]
    assert payload["passed"] is True
    assert payload["complexity"]["real_additions"] == 52
    assert payload["direct"]["complex_multiplications"] == 16


def test_search_json(run):
    payload = json.loads(run("search", "--format", "json", "--top-k", "3").out)["payload"]
    assert payload["candidates"] == 625
    assert payload["reproduces_f8_hat"] is True
    assert payload["best_dyadic_scale"] == "1/2"
    best = payload["results"][0]
    assert (best["h0"], best["h1"], best["h2"]) == (2, "(1-1j)", "-2j")
    assert best["adder_cost"] == 120
    assert len(payload["results"]) == 3


def test_search_csv_lists_all_candidates(run):
    out = run("search", "--format", "csv", "--top-k", "625").out
    lines = out.split("\n")
    assert lines[0].startswith("rank,h0,h1,h2,scale,frobenius_error")
    assert len([line for line in lines if line]) == 626


def test_search_output_is_deterministic(run):
    assert run("search").out == run("search").out


def test_search_failure_is_reported(run, monkeypatch):
    from gaussbeam.approx_search import CandidateParams
    from gaussbeam.numerics.gaussian import GaussianInt

    monkeypatch.setattr(
        "gaussbeam.cli.commands.F8_HAT_PARAMS",
        CandidateParams(1, GaussianInt(0), GaussianInt(0)),
    )
    with pytest.raises(VerificationFailure) as e:
        run("search")
    assert e.value.check == "search optimum"


def test_pattern_csv(run):
    captured = run("pattern", "--grid-step", "1.0")
    lines = captured.out.split("\n")
    assert "\r" not in captured.out
    assert lines[0] == "angle_deg," + ",".join(f"beam{b}_db" for b in range(8))
    rows = [line for line in lines[1:] if line]
    assert len(rows) == 181
    assert float(rows[0].split(",")[0]) == -90.0
    assert float(rows[-1].split(",")[0]) == 90.0
    assert "peak_deg" in captured.err


def test_pattern_json_peaks(run):
    document = json.loads(run("pattern", "--format", "json", "--grid-step", "0.5").out)
    peaks = {p["beam"]: p for p in document["payload"]["peaks"]}
    assert peaks[2]["peak_deg"] == pytest.approx(30.0, abs=0.05)
    assert peaks[2]["peak_from_axis_deg"] == pytest.approx(60.0, abs=0.05)
    assert peaks[4]["peak_deg"] == 90.0
    assert peaks[6]["theoretical_deg"] == pytest.approx(-30.0)


def test_pattern_transforms_agree(run):
    def peaks(transform):
        out = run("pattern", "--format", "json", "--transform", transform).out
        return [p["peak_deg"] for p in json.loads(out)["payload"]["peaks"]]

    assert peaks("approx") == pytest.approx(peaks("exact"), abs=0.5)


def test_pattern_from_frequency(run):
    document = json.loads(
        run("pattern", "--format", "json", "--grid-step", "1", "--frequency-ghz", "2").out
    )
    assert document["payload"]["spacing_wavelengths"] == 0.25
    peaks = {p["beam"]: p for p in document["payload"]["peaks"]}
    assert peaks[3]["theoretical_deg"] is None


def test_pattern_ensemble(run):
    argv = (
        "pattern", "--ensemble", "--beam", "2", "--perturb-gain", "0.05",
        "--perturb-phase-deg", "3", "--trials", "20", "--grid-step", "1", "--format", "json",
    )
    first = json.loads(run(*argv).out)
    second = json.loads(run(*argv).out)
    assert first["payload"] == second["payload"]
    assert first["payload"]["columns"] == ["angle_deg", "mean_db", "p05_db", "p95_db"]
    assert len(first["payload"]["rows"]) == 181
    assert first["parameters"]["trials"] == 20


def test_beamsim(run):
    out = run("beamsim", "--angle", "30").out
    assert out.splitlines()[-1] == "winner: beam 2"
    document = json.loads(run("beamsim", "--angle", "-30", "--format", "json").out)
    assert document["payload"]["winner"] == 6
    assert document["payload"]["magnitudes"][6] == pytest.approx(8.0)


def test_bench(run):
    payload = json.loads(
        run("bench", "--frames", "2000", "--lanes", "2", "--format", "json").out
    )["payload"]
    assert payload["gate"]["passed"] is True
    assert set(payload["modes"]) == {"direct", "fast"}
    assert payload["modes"]["fast"]["real_additions_per_frame"] == 52
    assert payload["modes"]["fast"]["complex_multiplications_per_frame"] == 0
    assert payload["modes"]["direct"]["real_additions_per_frame"] == 112
    assert payload["lanes"] == 2


def test_output_file(run, tmp_path):
    target = tmp_path / "pattern.csv"
    assert run("pattern", "--grid-step", "10", "--output", str(target)).out == ""
    text = target.read_bytes().decode("utf-8")
    assert "\r" not in text
    assert len(text.splitlines()) == 20


def test_usage_errors(run):
    with pytest.raises(UsageError) as e:
        run("pattern", "--spacing", "-1")
    assert e.value.flag == "--spacing"
    with pytest.raises(UsageError):
        run("pattern", "--grid-step", "0")
    with pytest.raises(UsageError):
        run("beamsim", "--angle", "120")
    with pytest.raises(UsageError):
        run("matrix", "--n", "4")


def test_unwritable_output_is_rejected_before_running(run, tmp_path, monkeypatch):
    def fail(*args, **kwargs):
        raise AssertionError("search ran")

    monkeypatch.setattr("gaussbeam.cli.commands.run_search", fail)
    with pytest.raises(UsageError) as e:
        run("search", "--output", str(tmp_path / "missing" / "search.csv"))
    assert e.value.flag == "--output"
    with pytest.raises(UsageError):
        run("search", "--output", str(tmp_path))


def test_exit_codes(config_file, monkeypatch, capsys):
    base = ["gaussbeam", "--config", str(config_file)]
    monkeypatch.setattr(sys, "argv", base + ["pattern", "--floor-db", "10"])
    with pytest.raises(SystemExit) as e:
        main()
    assert e.value.code == 2
    monkeypatch.setattr(sys, "argv", base + ["matrix", "--format", "csv"])
    with pytest.raises(SystemExit) as e:
        main()
    assert e.value.code == 2
    capsys.readouterr()
    monkeypatch.setattr(sys, "argv", base + ["matrix"])
    main()
    assert capsys.readouterr().out.startswith("1 1 1")


def test_config_falls_back_to_command_format():
    defaults = {**BUILTIN_DEFAULTS, "format": "csv"}
    config = RunConfig.from_args(_parse("matrix"), defaults)
    assert config.format == "text"
    config = RunConfig.from_args(_parse("pattern"), defaults)
    assert config.format == "csv"


def test_config_flags_override_defaults():
    defaults = {**BUILTIN_DEFAULTS, "spacing": 0.25, "trials": 9}
    assert RunConfig.from_args(_parse("pattern"), defaults).spacing == 0.25
    config = RunConfig.from_args(_parse("pattern", "--spacing", "0.4"), defaults)
    assert config.spacing == 0.4
    assert config.options["trials"] == 9


def test_float_formatting():
    assert format_float(1 / 3) == 0.333333333333
    assert format_float(-0.0) == 0.0
    assert format_float(float("inf")) == "inf"
    assert format_complex(0.5 - 0.5j) == "(0.5-0.5j)"
    assert format_complex(-1j) == "-1j"


def test_document_round_trip(run):
    text = run("beamsim", "--angle", "0", "--format", "json").out
    document = ResultDocument.from_json(text)
    assert document.command == "beamsim"
    assert document.to_json() == text


def test_document_validation():
    with pytest.raises(UserErrorMessage):
        validate_document({"schema_version": "1"})
    with pytest.raises(UserErrorMessage):
        ResultDocument.from_json("not json")
    good = json.loads(ResultDocument.create("matrix", {}, {}, 0).to_json())
    validate_document(good)
    good["schema_version"] = "2"
    with pytest.raises(UserErrorMessage):
        validate_document(good)
