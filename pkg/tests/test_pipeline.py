import json
from dataclasses import replace

import pytest

from chern_gate.pipeline import (
    SHIPPED_LEMMAS,
    diff_baseline,
    load_baseline,
    load_scenario,
    run_lemma,
)
from chern_gate.report import canonical_json, emit_report

from conftest import ALL_LEMMAS, DIRECT_LEMMAS, PIPELINE_LEMMAS


def test_shipped_lemma_ids():
    assert SHIPPED_LEMMAS == ALL_LEMMAS


def test_every_replay_matches_its_baseline(shipped_reports):
    for lid, report in shipped_reports.items():
        assert report["baseline_diff"] == [], lid


def test_every_certificate_row_is_verified(shipped_reports):
    for lid, report in shipped_reports.items():
        for row in report["eliminations"]:
            assert row["verified"], (lid, row)
        for row in report["polynomials"]:
            assert row["verified"], (lid, row)
        for row in report["baseline_validation"]:
            assert row["verified"], (lid, row)
            assert row.get("approx_match") is not False, (lid, row)


def test_expected_verdicts(shipped_reports):
    for lid, report in shipped_reports.items():
        expected = "CONCLUDES-P4" if lid == "2.2" else "ALL-ELIMINATED"
        assert report["verdict"] == expected, lid


def test_case_rows_carry_exact_cross_checks(shipped_reports):
    for lid in PIPELINE_LEMMAS:
        report = shipped_reports[lid]
        chi_O = str(report["invariants"]["chi_O"])
        signature = report["invariants"]["signature"]
        assert report["cases"], lid
        for row in report["cases"]:
            assert row["chi_O_check"] == chi_O
            if lid in ("2.1", "2.2", "3.1"):
                assert row["l_genus_signature"] == str(signature)
            assert row["baseline_id"] is not None


def test_direct_reports_have_no_enumeration(shipped_reports):
    for lid in DIRECT_LEMMAS:
        report = shipped_reports[lid]
        assert report["invariants"] is None
        assert report["cases"] == []
        assert report["eliminations"] == []
        assert report["survivors"] == []
        assert report["polynomials"], lid


def test_concluded_survivor_carries_its_certificate(shipped_reports):
    survivors = shipped_reports["2.2"]["survivors"]
    assert len(survivors) == 1
    row = survivors[0]
    assert row["baseline_id"] == "10"
    assert row["conclusion"] == "P4"
    assert row["certificate"]["type"] == "external-fact"
    assert row["certificate"]["outcome"] == "concluded"


def test_reports_are_byte_identical_across_runs():
    first = run_lemma(load_scenario("3.1"), baseline=load_baseline("3.1"))
    second = run_lemma(load_scenario("3.1"), baseline=load_baseline("3.1"))
    assert emit_report(first, "json") == emit_report(second, "json")
    assert emit_report(first, "md") == emit_report(second, "md")


def test_workers_do_not_change_the_report(shipped_reports):
    threaded = run_lemma(
        load_scenario("4.2"), baseline=load_baseline("4.2"), workers=4
    )
    assert canonical_json(threaded) == canonical_json(shipped_reports["4.2"])


def test_report_json_is_float_free(shipped_reports):
    def reject(_):
        raise AssertionError("float literal in report")

    for report in shipped_reports.values():
        json.loads(emit_report(report, "json"), parse_float=reject)


def test_filter_order_does_not_change_survivors():
    spec = load_scenario("3.1")
    flipped = run_lemma(replace(spec, filters=("embedding-poly", "mod12")))
    assert flipped["survivors"] == []
    assert flipped["verdict"] == "ALL-ELIMINATED"
    # first filter in the list gets first claim on every case
    assert {row["filter"] for row in flipped["eliminations"]} == {"embedding-poly"}


def test_lemma_mismatch_is_an_error():
    with pytest.raises(ValueError):
        run_lemma(load_scenario("2.1"), baseline=load_baseline("2.2"))
    with pytest.raises(ValueError):
        diff_baseline({"lemma": "2.1"}, {"lemma": "3.1"})


def test_unknown_lemma_ids_are_rejected():
    with pytest.raises(ValueError):
        load_scenario("9.9")
    with pytest.raises(ValueError):
        load_baseline("9.9")


def run_31_against(baseline):
    return run_lemma(load_scenario("3.1"), baseline=baseline)["baseline_diff"]


def test_fault_injection_char_number_cell():
    baseline = load_baseline("3.1")
    row = next(c for c in baseline["cases"] if c["id"] == "5")
    row["char_numbers"]["c1_4"] = "114"
    diff = run_31_against(baseline)
    assert "case 5: c1^4 is 113, baseline says 114" in diff


def test_fault_injection_missing_and_extra_cases():
    baseline = load_baseline("3.1")
    dropped = baseline["cases"].pop(0)
    baseline["cases"].append(
        {"id": "11", "params": {"a": 2, "b": 2}, "r": -1, "k": "1/3"}
    )
    diff = run_31_against(baseline)
    assert any("expected by the baseline but not produced" in d for d in diff)
    assert any("produced by the run but not in the baseline" in d for d in diff)
    assert any(dropped["k"] in d for d in diff)


def test_fault_injection_elimination_attribution():
    baseline = load_baseline("3.1")
    baseline["eliminated_by"]["1"] = "embedding-poly"
    diff = run_31_against(baseline)
    assert "case 1: eliminated via mod12, baseline says embedding-poly" in diff


def test_fault_injection_verdict():
    baseline = load_baseline("3.1")
    baseline["verdict"] = "CONCLUDES-P4"
    diff = run_31_against(baseline)
    assert "verdict: run says ALL-ELIMINATED, baseline says CONCLUDES-P4" in diff


def test_fault_injection_polynomial_coefficient():
    baseline = load_baseline("3.1")
    baseline["polynomials"]["2"][4] = "-253"
    diff = run_31_against(baseline)
    assert (
        "polynomial 2: coefficient of m^4 is -252, baseline says -253" in diff
    )


def test_fault_injection_invariant():
    baseline = load_baseline("3.1")
    baseline["invariants"]["target"] = 679
    diff = run_31_against(baseline)
    assert "invariant target: run has 678, baseline has 679" in diff


def test_fault_injection_approximate_value():
    baseline = load_baseline("3.1")
    baseline["obstructions"]["2"]["approx_values"]["29"] = "1.0005E+12"
    diff = run_31_against(baseline)
    assert "obstruction 2: quoted approximate values do not match" in diff


def test_fault_injection_obstruction_value():
    baseline = load_baseline("3.1")
    baseline["obstructions"]["2"]["values"][3] = "1000401930904"
    diff = run_31_against(baseline)
    assert any("divisor obstruction 2" in d and "failed" in d for d in diff)


def test_fault_injection_expected_certificate():
    baseline = load_baseline("2.1")
    baseline["expected_certificates"]["1"]["modulus"] = 5
    diff = run_lemma(
        load_scenario("2.1"), baseline=baseline
    )["baseline_diff"]
    assert any("expected-certificate 1" in d and "failed" in d for d in diff)


def test_fault_injection_concluded_case():
    baseline = load_baseline("2.2")
    baseline["concluded"]["10"] = "quadric"
    diff = run_lemma(load_scenario("2.2"), baseline=baseline)["baseline_diff"]
    assert "case 10: run concludes P4, baseline concludes quadric" in diff


def test_fault_injection_leaves_original_data_untouched():
    # load_baseline hands out fresh structures, so mutation in one test
    # can never leak into another
    a = load_baseline("3.1")
    a["verdict"] = "broken"
    assert load_baseline("3.1")["verdict"] == "ALL-ELIMINATED"


def test_markdown_has_the_table_and_trailer(shipped_reports):
    md = emit_report(shipped_reports["3.1"], "md").decode()
    assert "# Replay of 3.1" in md
    assert "verdict: **ALL-ELIMINATED**" in md
    assert "| 3 | a=1, b=1 | -4 | 7/16 | 512 | 48 | 224 | 98 | 6 |" in md
    assert "baseline: exact match" in md
    unchecked = emit_report(run_lemma(load_scenario("3.1")), "md").decode()
    assert "baseline: not checked" in unchecked
