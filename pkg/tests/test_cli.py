"""End-to-end checks of the command-line reports and exit codes."""

import json

import pytest

from tottower.chains import ChainComplexInt
from tottower.cli import main
from tottower.constructions import cech_object, constant_object
from tottower.cosimplicial import cosimplicial_to_data

CYCLE = [[0, 1], [1, 2], [2, 3], [0, 3]]
SUSPENSION_FACETS = (
    [[a, b, 4] for a, b in CYCLE] + [[a, b, 5] for a, b in CYCLE]
)


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_report(argv, capsys):
    code, out, err = run(argv, capsys)
    assert code == 0, err
    return json.loads(out)


def write_json(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def suspension_cover(tmp_path):
    return write_json(tmp_path, "cover.json", {
        "complex": {"facets": SUSPENSION_FACETS, "basepoint": 0},
        "pieces": [[0, 1, 2, 3], [4, 5, 6, 7]],
        "basepoint": 0,
    })


def cech_file(tmp_path, n_points=2, truncation=2):
    x = cech_object(n_points, truncation)
    return write_json(tmp_path, "cech.json", cosimplicial_to_data(x))


def constant_file(tmp_path, truncation=2):
    x = constant_object(ChainComplexInt(0, (1,), ()), truncation)
    return write_json(tmp_path, "constant.json", cosimplicial_to_data(x))


# -- global flags -------------------------------------------------------------

def test_version(capsys):
    code, out, _ = run(["--version"], capsys)
    assert code == 0
    assert out.strip() == "tottower 0.1.0"


def test_usage_error_is_input_error(capsys):
    code, _, _ = run(["no-such-command"], capsys)
    assert code == 2


def test_missing_subcommand(capsys):
    assert run([], capsys)[0] == 2


# -- homology -----------------------------------------------------------------

def test_homology_of_suspension(tmp_path, capsys):
    path = write_json(tmp_path, "complex.json",
                      {"facets": SUSPENSION_FACETS})
    report = run_report(["homology", path], capsys)
    assert report["homology"] == {"0": "Z", "2": "Z"}
    assert report["reduced"] == {"2": "Z"}
    assert report["euler"] == 2
    assert report["weakenings"] == []


def test_homology_rejects_wrong_shape(tmp_path, capsys):
    path = write_json(tmp_path, "complex.json", {"cells": []})
    assert run(["homology", path], capsys)[0] == 2


def test_malformed_json_is_input_error(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{broken")
    assert run(["homology", str(path)], capsys)[0] == 2


def test_missing_file_is_input_error(capsys):
    assert run(["homology", "/nonexistent/x.json"], capsys)[0] == 2


# -- poset --------------------------------------------------------------------

def test_subset_wedge_report(capsys):
    report = run_report(
        ["poset", "--subset-size", "4", "--max-card", "2", "wedge-check"],
        capsys)
    assert report["degree"] == 1
    assert report["rank"] == 3
    assert report["free"] is True
    assert report["weakenings"]


def test_subspace_wedge_report(capsys):
    report = run_report(
        ["poset", "--subspace", "q=2", "n=3", "--max-dim", "2",
         "wedge-check"], capsys)
    assert report["degree"] == 1
    assert report["rank"] == 8
    assert report["free"] is True


def test_subset_dim_report(capsys):
    report = run_report(
        ["poset", "--subset-size", "5", "--min-card", "3", "dim"], capsys)
    assert report["dim"] == 2


def test_poset_homology_action(capsys):
    report = run_report(
        ["poset", "--subset-size", "4", "--max-card", "2", "homology"],
        capsys)
    assert report["reduced"] == {"1": "Z^3"}


def test_poset_from_file(tmp_path, capsys):
    path = write_json(tmp_path, "chain.json", {
        "elements": ["a", "b", "c"],
        "leq": [["a", "b"], ["b", "c"]],
    })
    report = run_report(["poset", "dim", path], capsys)
    assert report["dim"] == 2
    report = run_report(["poset", "wedge-check", path], capsys)
    assert report["free"] is True and report["rank"] == 0


def test_poset_needs_exactly_one_source(capsys):
    code, _, _ = run(
        ["poset", "--subset-size", "3", "--subspace", "q=2", "n=2",
         "wedge-check"], capsys)
    assert code == 2
    assert run(["poset", "dim"], capsys)[0] == 2


def test_poset_bad_assignment_tokens(capsys):
    code, _, _ = run(
        ["poset", "--subspace", "q=2", "k=3", "wedge-check"], capsys)
    assert code == 2
    code, _, _ = run(
        ["poset", "--subspace", "q=two", "n=3", "wedge-check"], capsys)
    assert code == 2


# -- deloop -------------------------------------------------------------------

def test_deloop_tot_in_range(capsys):
    report = run_report(["deloop", "--tot", "2", "3"], capsys)
    assert report["bound"] == 3
    assert report["valid"] is True


def test_deloop_tot_out_of_range(capsys):
    report = run_report(["deloop", "--tot", "1", "4"], capsys)
    assert report["valid"] is False
    assert "bound" not in report


def test_deloop_tot_precondition(capsys):
    assert run(["deloop", "--tot", "0", "3"], capsys)[0] == 4


def test_deloop_subset_report(capsys):
    report = run_report(["deloop", "--subset", "4", "2"], capsys)
    assert report["p"] == 2
    assert report["complement_dim"] == 1
    assert report["d_max"] == 1
    assert report["weakenings"]


def test_deloop_delta_report(capsys):
    report = run_report(["deloop", "--delta", "1", "2"], capsys)
    assert report["p"] == 2
    assert report["complement_dim"] == 0
    assert report["d_max"] == 2


def test_deloop_models_are_exclusive(capsys):
    code, _, _ = run(
        ["deloop", "--tot", "2", "3", "--subset", "4", "2"], capsys)
    assert code == 2


# -- cover --------------------------------------------------------------------

def test_cover_suspension_report(tmp_path, capsys):
    path = suspension_cover(tmp_path)
    report = run_report(["cover", "--r", "1", path], capsys)
    assert report["acyclic_ok"] is True
    assert report["connectivity_ok"] is True
    assert report["hocolim_matches"] is True
    assert report["weakenings"]


def test_cover_r_out_of_range(tmp_path, capsys):
    path = suspension_cover(tmp_path)
    assert run(["cover", "--r", "5", path], capsys)[0] == 4
    assert run(["cover", "--r", "0", path], capsys)[0] == 4


def test_cover_schema_errors(tmp_path, capsys):
    path = write_json(tmp_path, "c1.json",
                      {"complex": {"facets": [[0, 1]]}})
    assert run(["cover", "--r", "1", path], capsys)[0] == 2
    path = write_json(tmp_path, "c2.json", {
        "complex": {"facets": [[0, 1]], "basepoint": 0},
        "pieces": [[0, 9]],
    })
    assert run(["cover", "--r", "1", path], capsys)[0] == 2


# -- tot ----------------------------------------------------------------------

def test_tot_fiber_identification(tmp_path, capsys):
    path = cech_file(tmp_path)
    report = run_report(["tot", "--fiber", "1", "2", path], capsys)
    assert report["homology"] == {"-2": "Z^2"}
    assert report["matches_piece"] is True
    assert report["window"] == [1, 2]


def test_tot_full_tower(tmp_path, capsys):
    path = cech_file(tmp_path)
    report = run_report(["tot", path], capsys)
    assert report["stages"]["0"] == {"0": "Z^2"}
    assert report["stages"]["2"] == {"-2": "Z", "0": "Z"}
    assert all(
        fib["matches_piece"] for fib in report["fibers"].values()
    )
    assert report["weakenings"]


def test_tot_stage_flag(tmp_path, capsys):
    path = cech_file(tmp_path)
    report = run_report(["tot", "--stage", "1", path], capsys)
    assert report["homology"] == {"-1": "Z", "0": "Z"}
    assert run(["tot", "--stage", "7", path], capsys)[0] == 2


def test_tot_fiber_window_validated(tmp_path, capsys):
    path = cech_file(tmp_path)
    assert run(["tot", "--fiber", "2", "1", path], capsys)[0] == 2


def test_broken_identities_are_invariant_violations(tmp_path, capsys):
    data = cosimplicial_to_data(cech_object(2, 2))
    data["cofaces"][0][0]["0"] = [[1, 0], [0, 1], [1, 1], [0, 1]]
    path = write_json(tmp_path, "broken.json", data)
    assert run(["tot", path], capsys)[0] == 3
    assert run(["ss", path], capsys)[0] == 3


# -- ss -----------------------------------------------------------------------

def test_ss_constant_collapses(tmp_path, capsys):
    path = constant_file(tmp_path)
    report = run_report(["ss", "--pages", "3", path], capsys)
    assert report["pages"]["2"] == {"(0,0)": "Z"}
    assert report["e_infinity"] == {"(0,0)": "Z"}
    assert report["e2_matches_level_homology"] is True


def test_ss_cech_pages(tmp_path, capsys):
    path = cech_file(tmp_path)
    report = run_report(["ss", path], capsys)
    assert report["pages"]["2"] == {"(0,0)": "Z", "(2,0)": "Z"}
    assert report["e2_matches_level_homology"] is True


def test_ss_fringe_section(tmp_path, capsys):
    path = cech_file(tmp_path)
    report = run_report(["ss", "--fringe", "0", path], capsys)
    assert report["fringe"]["vacuous"] is True
    assert report["fringe"]["all_accounted"] is True


def test_ss_page_one_skips_comparison(tmp_path, capsys):
    path = constant_file(tmp_path)
    report = run_report(["ss", "--pages", "1", path], capsys)
    assert "e2_matches_level_homology" not in report
    assert list(report["pages"]) == ["1"]


def test_ss_bad_page_count(tmp_path, capsys):
    path = constant_file(tmp_path)
    assert run(["ss", "--pages", "0", path], capsys)[0] == 2


# -- output discipline --------------------------------------------------------

def test_reports_are_byte_identical(tmp_path, capsys):
    path = cech_file(tmp_path)
    _, first, _ = run(["ss", path], capsys)
    _, second, _ = run(["ss", path], capsys)
    assert first == second


def test_output_flag_writes_file(tmp_path, capsys):
    path = constant_file(tmp_path)
    out = tmp_path / "report.json"
    code, stdout, _ = run(
        ["ss", "--output", str(out), path], capsys)
    assert code == 0
    assert stdout == ""
    _, streamed, _ = run(["ss", path], capsys)
    assert out.read_text() == streamed


def test_reports_end_with_newline(capsys):
    _, out, _ = run(["deloop", "--tot", "2", "3"], capsys)
    assert out.endswith("}\n")
