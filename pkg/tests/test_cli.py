import json
import math

import numpy as np
import pytest

from bsmaj import (
    BirkhoffDecomposition,
    DoublyStochasticMatrix,
    MajorizationVerdict,
    ProbVector,
    spectrum,
)
from bsmaj.cli import main, parse_angle, parse_catalyst_arg, parse_vector_arg

from conftest import CLI_BATTERY


def invoke(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    return result


def payload(result):
    return json.loads(result.output)


# ---------------------------------------------------------------------------
# parsing helpers


def test_parse_angle_forms():
    assert parse_angle("0.62") == 0.62
    assert parse_angle("pi") == math.pi
    assert parse_angle("pi/4") == math.pi / 4
    assert parse_angle("3*pi/8") == 3 * math.pi / 8
    assert parse_angle("-pi/2") == -math.pi / 2
    assert parse_angle("1e-3") == 1e-3
    with pytest.raises(ValueError):
        parse_angle("four")
    with pytest.raises(ValueError):
        parse_angle("pi*3")


def test_parse_vector_arg_forms(tmp_path):
    bs = parse_vector_arg("bs:2,pi/4")
    assert np.allclose(bs.components, spectrum(2, math.pi / 4).components)
    inline = parse_vector_arg("[0.5, 0.5]")
    assert np.allclose(inline.components, [0.5, 0.5])
    path = tmp_path / "vec.json"
    path.write_text("[0.25, 0.75]")
    assert np.allclose(parse_vector_arg(str(path)).components, [0.25, 0.75])
    csv_path = tmp_path / "vec.csv"
    csv_path.write_text("0.3\n0.7\n")
    assert np.allclose(parse_vector_arg(f"file:{csv_path}").components, [0.3, 0.7])


def test_parse_catalyst_arg_forms(tmp_path):
    sp = parse_catalyst_arg("single-photon:0.7")
    assert sp.theta_c == 0.7
    tm = parse_catalyst_arg("tmsv:1.38,120")
    assert tm.r == 1.38 and tm.truncation_dim == 120
    inline = parse_catalyst_arg("[0.9, 0.1]")
    assert np.allclose(inline.vector.components, [0.9, 0.1])


# ---------------------------------------------------------------------------
# commands


def test_spectrum_json_envelope(cli_runner):
    result = invoke(cli_runner, ["spectrum", "--k", "3", "--theta", "0.62", "--sorted"])
    assert result.exit_code == 0
    data = payload(result)
    assert data["command"] == "spectrum"
    assert data["params"]["k"] == 3
    assert data["tool_version"]
    assert np.allclose(
        data["results"], (0.44439, 0.290641, 0.226491, 0.0384782), atol=1e-5
    )
    # round trip into the domain type
    vec = ProbVector(data["results"])
    assert vec.dim == 4


def test_spectrum_csv_single_column(cli_runner):
    result = invoke(cli_runner, ["--out", "csv", "spectrum", "--k", "2", "--theta", "0.5"])
    assert result.exit_code == 0
    vec = ProbVector.from_csv(result.output)
    assert vec.allclose(spectrum(2, 0.5), tol=1e-11)


def test_majorize_round_trip(cli_runner):
    result = invoke(cli_runner, ["majorize", "--p", "bs:3,0.72", "--q", "bs:3,0.62"])
    data = payload(result)
    verdict = MajorizationVerdict.from_dict(data["results"])
    assert verdict.relation.value == "Incomparable"
    assert len(verdict.partial_sum_gaps) == 4


def test_photon_chain(cli_runner):
    result = invoke(cli_runner, ["photon-chain", "--k-max", "4", "--theta", "0.7"])
    data = payload(result)
    assert [row["relation"] for row in data["results"]] == ["MajorizedBy"] * 4


def test_regions_crossovers(cli_runner):
    result = invoke(cli_runner, ["regions", "--k", "3"])
    data = payload(result)
    got = data["results"]["crossovers"]
    assert got[0] == pytest.approx(math.atan(1 / math.sqrt(3)), abs=1e-9)
    assert got[1] == pytest.approx(math.atan(3 ** -0.25), abs=1e-9)
    assert len(data["results"]["orderings"]) == 3


def test_infinitesimal_verdict(cli_runner):
    result = invoke(cli_runner, ["infinitesimal", "--k", "3", "--theta", "0.7"])
    data = payload(result)
    assert data["results"]["status"] == "Violated"
    assert data["results"]["first_violation"] == 1
    assert len(data["results"]["accumulation_derivatives"]) == 3


def test_infinitesimal_boundary_exits_one(cli_runner):
    cross = repr(math.atan(1 / math.sqrt(2)))
    result = cli_runner.invoke(main, ["infinitesimal", "--k", "2", "--theta", cross])
    assert result.exit_code == 1
    assert "crossover" in result.output


def test_usage_errors_exit_two(cli_runner):
    result = cli_runner.invoke(main, ["spectrum", "--k", "2", "--theta", "oops"])
    assert result.exit_code == 2
    result = cli_runner.invoke(main, ["spectrum", "--k", "-3", "--theta", "0.3"])
    assert result.exit_code == 2
    result = cli_runner.invoke(main, ["nonsense"])
    assert result.exit_code == 2
    result = cli_runner.invoke(
        main, ["catalysis", "search", "--p", "bs:3,0.72", "--q", "bs:3,0.62",
               "--family", "bogus", "--grid", "0.1"]
    )
    assert result.exit_code == 2


def test_out_of_range_angle_exits_two(cli_runner):
    result = cli_runner.invoke(main, ["spectrum", "--k", "2", "--theta", "2.0"])
    assert result.exit_code == 2


def test_entropy_curve_csv_header(cli_runner):
    result = invoke(
        cli_runner,
        ["--out", "csv", "entropy-curve", "--k", "2", "--alphas", "1,10,inf",
         "--steps", "5"],
    )
    lines = result.output.strip().splitlines()
    assert lines[0] == "theta,S_1,S_10,S_inf"
    assert len(lines) == 6


def test_entropy_curve_bits(cli_runner):
    result = invoke(
        cli_runner,
        ["entropy-curve", "--k", "1", "--alphas", "1", "--theta-min", "pi/4",
         "--theta-max", "pi/3", "--steps", "2", "--bits"],
    )
    data = payload(result)
    # one photon on a balanced splitter carries exactly one bit
    assert data["results"]["rows"][0][1] == pytest.approx(1.0, abs=1e-9)


def test_figure_data_fig4_shape(cli_runner):
    result = invoke(cli_runner, ["figure-data", "--figure", "fig4", "--steps", "40"])
    data = payload(result)
    assert data["results"]["columns"] == ["theta", "S_1", "S_10", "S_inf"]
    assert len(data["results"]["rows"]) == 40
    assert len(data["results"]["crossovers"]) == 1


def test_figure_data_csv_annotations(cli_runner):
    result = invoke(
        cli_runner, ["--out", "csv", "figure-data", "--figure", "fig5", "--steps", "3"]
    )
    lines = result.output.strip().splitlines()
    assert lines[0] == "theta,S_1,S_10,S_inf"
    assert lines[4] == "# region-boundaries"
    assert len([ln for ln in lines if ln.startswith("# crossover")]) == 2


def test_figure_data_two_steps_endpoints_only(cli_runner):
    result = invoke(cli_runner, ["figure-data", "--figure", "fig4", "--steps", "2"])
    rows = payload(result)["results"]["rows"]
    assert len(rows) == 2
    assert rows[0][0] == 0.0
    assert rows[1][0] == pytest.approx(math.pi / 4, abs=1e-9)


def test_locc_verify(cli_runner):
    result = invoke(cli_runner, ["locc-verify", "--k", "2", "--theta", "0.62"])
    data = payload(result)
    assert data["results"]["nielsen_agreement"] is True
    probs = [b["probability"] for b in data["results"]["branches"]]
    assert sum(probs) == pytest.approx(1.0, abs=1e-9)


def test_catalysis_check(cli_runner):
    result = invoke(
        cli_runner,
        ["catalysis", "check", "--p", "bs:3,0.72", "--q", "bs:3,0.62",
         "--catalyst", "single-photon:0.7"],
    )
    data = payload(result)
    assert data["results"]["without"] == "Incomparable"
    assert data["results"]["with"] == "MajorizedBy"
    assert data["results"]["achieved"] is True


def test_catalysis_check_truncation_error_exits_one(cli_runner):
    result = cli_runner.invoke(
        main,
        ["catalysis", "check", "--p", "bs:3,0.72", "--q", "bs:3,0.62",
         "--catalyst", "tmsv:1.38,10"],
    )
    assert result.exit_code == 1
    assert "tail mass" in result.output


def test_catalysis_search_first_hit(cli_runner):
    result = invoke(
        cli_runner,
        ["catalysis", "search", "--p", "bs:3,0.72", "--q", "bs:3,0.62",
         "--family", "single-photon", "--grid", "0.01"],
    )
    data = payload(result)
    assert data["results"]["found"]["family"] == "single-photon"


def test_birkhoff_witness(cli_runner):
    result = invoke(cli_runner, ["birkhoff", "--witness", "2,0.5"])
    data = payload(result)
    decomp = BirkhoffDecomposition.from_dict(data["results"])
    matrix = DoublyStochasticMatrix.from_rows(data["results"]["matrix"])
    assert np.max(np.abs(decomp.reconstruct() - matrix.entries)) < 1e-9
    assert data["results"]["terms"] <= 10


def test_birkhoff_from_file(cli_runner, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[0.5, 0.5], [0.5, 0.5]]))
    result = invoke(cli_runner, ["birkhoff", "--file", str(path)])
    data = payload(result)
    assert data["results"]["terms"] <= 2


def test_birkhoff_requires_exactly_one_source(cli_runner):
    result = cli_runner.invoke(main, ["birkhoff"])
    assert result.exit_code == 2


def test_csv_unsupported_commands_exit_two(cli_runner):
    result = cli_runner.invoke(
        main, ["--out", "csv", "majorize", "--p", "bs:1,0.3", "--q", "bs:1,0.4"]
    )
    assert result.exit_code == 2


def test_battery_runs_clean(cli_runner):
    for args in CLI_BATTERY:
        result = cli_runner.invoke(main, args, catch_exceptions=False)
        assert result.exit_code == 0, (args, result.output)


def test_battery_deterministic(cli_runner):
    first = [cli_runner.invoke(main, args, catch_exceptions=False).output
             for args in CLI_BATTERY]
    second = [cli_runner.invoke(main, args, catch_exceptions=False).output
              for args in CLI_BATTERY]
    assert first == second
