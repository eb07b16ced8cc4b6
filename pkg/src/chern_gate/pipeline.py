"""Replaying a lemma end to end.

run_lemma drives the full chain: Hodge diamond to the Riemann-Roch
target, lattice enumeration, characteristic-number tables, the
configured elimination filters, and certificate verification. When a
baseline is supplied the run is compared against it cell by cell, and
every obstruction the baseline records in printed form is rebuilt and
re-verified against the live polynomials, independently of whatever
certificate the engine chose for itself.
"""

from __future__ import annotations

import json
from importlib import resources

from .obstruction import (
    ConstantDivisorTest,
    IntPoly,
    ModularObstruction,
    RootFound,
    _check_reduction,
    ahat_filter,
    build_embedding_polynomial,
    eliminate,
    external_fact_filter,
    mod12_filter,
    verify_certificate,
)
from .report import (
    certificate_from_json,
    certificate_to_json,
    frac_str,
    int_str,
    parse_frac,
    parse_int_str,
    sci_5,
)
from .ring import chern_from_case
from .riemann_roch import (
    chi_O_from_class,
    complete_invariants,
    invariants_from_diamond,
    l_genus_signature,
    pontryagin_numbers,
)
from .scenario import LemmaSpec, parse_scenario
from .search import (
    ConstraintSystem,
    char_number_table,
    enumerate_cases,
    to_chern_case,
)
from .version import __version__

__all__ = [
    "SHIPPED_LEMMAS",
    "constraint_system_for",
    "run_lemma",
    "diff_baseline",
    "scenario_bytes",
    "load_scenario",
    "load_baseline",
    "reproduce_lemma",
]

SHIPPED_LEMMAS = ("2.1", "2.2", "3.1", "4.2", "A.1", "A.2", "A.3")

_COLUMNS = (
    ("c1_4", "c1^4"),
    ("c1c3", "c1*c3"),
    ("c1_2c2", "c1^2*c2"),
    ("c2_2", "c2^2"),
    ("c4", "c4"),
)


def constraint_system_for(spec: LemmaSpec, target: int) -> ConstraintSystem:
    """Build the Diophantine search for a pipeline scenario.

    The target is passed separately because it comes out of the
    Riemann-Roch stage, not the scenario file.
    """
    if spec.mode != "pipeline":
        raise ValueError("direct scenarios do not define a search")
    return ConstraintSystem(
        target=target,
        lattice=spec.lattice,
        r_min=spec.r_bounds[0],
        r_max=spec.r_bounds[1],
        divisibility=spec.divisibility,
        k_lower=spec.k_lower,
        c14_max=spec.c14_max,
    )


def _case_key(params: dict, r: int, k: str):
    return (tuple(sorted(params.items())), r, k)


def _key_str(key) -> str:
    params, r, k = key
    inside = ", ".join(f"{name}={value}" for name, value in params)
    return f"{inside}, r={r}, k={k}"


def run_lemma(
    spec: LemmaSpec,
    baseline: dict | None = None,
    workers: int = 1,
    max_modulus: int = 720,
) -> dict:
    if baseline is not None and baseline.get("lemma") != spec.lemma_id:
        raise ValueError(
            f"baseline is for lemma {baseline.get('lemma')!r}, "
            f"scenario replays {spec.lemma_id!r}"
        )
    if spec.mode == "direct":
        return _run_direct(spec, baseline, max_modulus)

    inv = complete_invariants(invariants_from_diamond(spec.diamond))
    system = constraint_system_for(spec, target=inv.target)
    solutions = enumerate_cases(system, workers=workers)

    id_by_key = {}
    if baseline is not None:
        for entry in baseline.get("cases", []):
            key = _case_key(entry["params"], entry["r"], entry["k"])
            id_by_key[key] = entry["id"]

    case_rows = []
    tables = {}
    chern_cases = {}
    ids = {}
    for sol in solutions:
        cn = char_number_table(sol, inv)
        case = to_chern_case(sol, inv)
        chio = chi_O_from_class(chern_from_case(case), sol.geometry)
        if chio != inv.chi_O:
            raise ArithmeticError(
                f"chi_O recomputed from the Chern class is {chio}, "
                f"the diamond says {inv.chi_O}"
            )
        pd = pontryagin_numbers(case)
        bid = id_by_key.get(_case_key(sol.geometry.params, sol.r, frac_str(sol.k)))
        tables[sol.ordinal] = cn
        chern_cases[sol.ordinal] = case
        ids[sol.ordinal] = bid
        case_rows.append(
            {
                "ordinal": sol.ordinal,
                "params": dict(sol.geometry.params),
                "r": sol.r,
                "k": frac_str(sol.k),
                "baseline_id": bid,
                "char_numbers": {
                    "c1_4": int_str(cn.c1_4),
                    "c1c3": int_str(cn.c1c3),
                    "c1_2c2": int_str(cn.c1_2c2),
                    "c2_2": int_str(cn.c2_2),
                    "c4": int_str(cn.c4),
                },
                "pontryagin": {
                    "p1_sq": frac_str(pd.p1_sq),
                    "p2": frac_str(pd.p2),
                    "a_hat": frac_str(pd.a_hat),
                    "spin": pd.spin_applicable,
                },
                "l_genus_signature": frac_str(l_genus_signature(pd)),
                "chi_O_check": frac_str(chio),
            }
        )

    status = {sol.ordinal: "alive" for sol in solutions}
    conclusions = {}
    conclusion_certs = {}
    eliminations = []
    poly_rows = []
    polys_by_label = {}

    for name in spec.filters:
        for sol in solutions:
            o = sol.ordinal
            if status[o] != "alive":
                continue
            if name == "mod12":
                cert = mod12_filter(tables[o])
                if cert is None:
                    continue
                value = tables[o].c1_2c2 + 2 * tables[o].c1_4
                ok = (
                    cert.value == value
                    and cert.residue == value % 12
                    and value % 12 != 0
                )
            elif name == "ahat":
                cert = ahat_filter(chern_cases[o])
                if cert is None:
                    continue
                pd = pontryagin_numbers(chern_cases[o])
                ok = (
                    pd.spin_applicable
                    and pd.a_hat == cert.value
                    and pd.a_hat.denominator != 1
                )
            elif name == "embedding-poly":
                poly = build_embedding_polynomial(chern_cases[o])
                cert = eliminate(poly, max_modulus=max_modulus)
                ok = verify_certificate(poly, cert)
                label = ids[o] if ids[o] is not None else f"case-{o}"
                polys_by_label[label] = poly
                poly_rows.append(
                    {
                        "ordinal": o,
                        "baseline_id": ids[o],
                        "label": label,
                        "coefficients": [int_str(c) for c in poly.desc_coeffs],
                        "scale": int_str(poly.scale),
                        "certificate": certificate_to_json(cert),
                        "verified": ok,
                    }
                )
                if isinstance(cert, RootFound):
                    # A positive integer root means the filter has no
                    # objection; the case stays alive.
                    continue
            else:  # external-facts
                cert = external_fact_filter(sol, spec.facts)
                if cert is None:
                    continue
                if cert.outcome == "concluded":
                    status[o] = "concluded"
                    conclusions[o] = cert.conclusion
                    conclusion_certs[o] = cert
                    continue
                fact = next(f for f in spec.facts if f.r == sol.r)
                degree = sol.geometry.degree
                if fact.kind == "degree-in":
                    ok = degree not in fact.degrees and cert.violated_by == degree
                else:
                    ok = degree > fact.max_degree and cert.violated_by == degree
            status[o] = "eliminated"
            eliminations.append(
                {
                    "ordinal": o,
                    "baseline_id": ids[o],
                    "filter": name,
                    "certificate": certificate_to_json(cert),
                    "verified": ok,
                }
            )

    survivors = []
    for sol in solutions:
        if status[sol.ordinal] == "eliminated":
            continue
        row = {"ordinal": sol.ordinal, "baseline_id": ids[sol.ordinal]}
        if status[sol.ordinal] == "concluded":
            row["conclusion"] = conclusions[sol.ordinal]
            row["certificate"] = certificate_to_json(conclusion_certs[sol.ordinal])
        survivors.append(row)

    if not survivors:
        verdict = "ALL-ELIMINATED"
    elif all(row.get("conclusion") == "P4" for row in survivors):
        verdict = "CONCLUDES-P4"
    else:
        verdict = "SURVIVORS-REMAIN"

    report = {
        "tool": "chern-gate",
        "version": __version__,
        "lemma": spec.lemma_id,
        "mode": spec.mode,
        "input_sha256": spec.input_sha256,
        "invariants": {
            "chi": inv.chi,
            "chi_O": inv.chi_O,
            "chi1": inv.chi1,
            "signature": inv.signature,
            "c1c3": inv.c1c3,
            "target": inv.target,
        },
        "cases": case_rows,
        "eliminations": eliminations,
        "polynomials": poly_rows,
        "survivors": survivors,
        "verdict": verdict,
        "baseline_validation": None,
        "baseline_diff": None,
    }
    if baseline is not None:
        engine_certs = {row["label"]: row["certificate"] for row in poly_rows}
        elim_certs = {
            e["baseline_id"]: e["certificate"]
            for e in eliminations
            if e["baseline_id"] is not None
        }
        report["baseline_validation"] = _validate_printed(
            baseline, polys_by_label, engine_certs, elim_certs
        )
        report["baseline_diff"] = diff_baseline(report, baseline)
    return report


def _run_direct(spec: LemmaSpec, baseline: dict | None, max_modulus: int) -> dict:
    poly_rows = []
    polys_by_label = {}
    survivors = []
    for i, (label, poly) in enumerate(spec.polynomials, start=1):
        cert = eliminate(poly, max_modulus=max_modulus)
        ok = verify_certificate(poly, cert)
        polys_by_label[label] = poly
        poly_rows.append(
            {
                "ordinal": i,
                "baseline_id": label,
                "label": label,
                "coefficients": [int_str(c) for c in poly.desc_coeffs],
                "scale": int_str(poly.scale),
                "certificate": certificate_to_json(cert),
                "verified": ok,
            }
        )
        if isinstance(cert, RootFound):
            survivors.append(
                {"ordinal": i, "baseline_id": label, "root": int_str(cert.m)}
            )
    report = {
        "tool": "chern-gate",
        "version": __version__,
        "lemma": spec.lemma_id,
        "mode": spec.mode,
        "input_sha256": spec.input_sha256,
        "invariants": None,
        "cases": [],
        "eliminations": [],
        "polynomials": poly_rows,
        "survivors": survivors,
        "verdict": "SURVIVORS-REMAIN" if survivors else "ALL-ELIMINATED",
        "baseline_validation": None,
        "baseline_diff": None,
    }
    if baseline is not None:
        engine_certs = {row["label"]: row["certificate"] for row in poly_rows}
        report["baseline_validation"] = _validate_printed(
            baseline, polys_by_label, engine_certs, {}
        )
        report["baseline_diff"] = diff_baseline(report, baseline)
    return report


def _validate_obstruction(
    label: str, entry: dict, polys_by_label: dict, elim_certs: dict
) -> dict:
    kind = entry["kind"]
    row: dict = {"id": label, "kind": "obstruction", "obstruction": kind}
    if "note" in entry:
        row["note"] = entry["note"]
    row["verified"] = False
    if kind == "modular":
        poly = polys_by_label.get(label)
        if poly is None:
            return row
        content = parse_int_str(entry["content"])
        modulus = entry["modulus"]
        reduced, _ = _check_reduction(poly, content, 0)
        if reduced is None:
            return row
        cert = ModularObstruction(
            content=content,
            m_power=0,
            modulus=modulus,
            residues=tuple(reduced.evaluate_mod(t, modulus) for t in range(modulus)),
        )
        row["verified"] = verify_certificate(poly, cert)
        return row
    if kind == "divisor":
        poly = polys_by_label.get(label)
        if poly is None:
            return row
        divisors = tuple(parse_int_str(x) for x in entry["divisors"])
        values = tuple(parse_int_str(x) for x in entry["values"])
        cert = ConstantDivisorTest(
            content=parse_int_str(entry["content"]),
            m_power=0,
            divisors=divisors,
            values=values,
        )
        row["verified"] = verify_certificate(poly, cert)
        if "approx_values" in entry:
            lookup = dict(zip(divisors, values))
            row["approx_match"] = all(
                sci_5(lookup[parse_int_str(where)]) == text
                for where, text in entry["approx_values"].items()
            )
        return row
    if kind == "congruence-mod12":
        ours = elim_certs.get(label)
        value = parse_int_str(entry["value"])
        row["verified"] = (
            ours is not None
            and ours.get("type") == "congruence-mod12"
            and parse_int_str(ours["value"]) == value
            and value % 12 != 0
        )
        return row
    if kind == "ahat":
        ours = elim_certs.get(label)
        value = parse_frac(entry["value"])
        row["verified"] = (
            ours is not None
            and ours.get("type") == "ahat-nonintegral"
            and parse_frac(ours["value"]) == value
            and value.denominator != 1
        )
        return row
    row["note"] = f"unknown obstruction kind {kind!r}"
    return row


def _validate_printed(
    baseline: dict,
    polys_by_label: dict[str, IntPoly],
    engine_certs: dict[str, dict],
    elim_certs: dict[str, dict],
) -> list[dict]:
    """Rebuild every printed artifact of the baseline and re-check it.

    Polynomial coefficient lists are compared exactly. Printed
    obstructions carry only their headline data (content and modulus,
    or the divisor values), so they are completed into full
    certificates and then pushed through the verifier. Expected engine
    certificates must match the run's output verbatim and re-verify.
    """
    rows = []
    for label in sorted(baseline.get("polynomials", {})):
        expected = baseline["polynomials"][label]
        poly = polys_by_label.get(label)
        ours = None if poly is None else [int_str(c) for c in poly.desc_coeffs]
        rows.append(
            {"id": label, "kind": "polynomial", "verified": ours == expected}
        )
    for label in sorted(baseline.get("obstructions", {})):
        rows.append(
            _validate_obstruction(
                label, baseline["obstructions"][label], polys_by_label, elim_certs
            )
        )
    for label in sorted(baseline.get("expected_certificates", {})):
        expected = baseline["expected_certificates"][label]
        poly = polys_by_label.get(label)
        ok = engine_certs.get(label) == expected
        if ok and poly is not None:
            ok = verify_certificate(poly, certificate_from_json(expected))
        rows.append({"id": label, "kind": "expected-certificate", "verified": ok})
    return rows


def diff_baseline(report: dict, baseline: dict) -> list[str]:
    """Everything the run disagrees with the baseline about, in words.

    An empty list is an exact match. Raises ValueError when the two
    are not even about the same lemma.
    """
    if report.get("lemma") != baseline.get("lemma"):
        raise ValueError(
            f"baseline is for lemma {baseline.get('lemma')!r}, "
            f"report is for {report.get('lemma')!r}"
        )
    diffs: list[str] = []

    binv = baseline.get("invariants") or {}
    rinv = report.get("invariants") or {}
    for key in ("chi", "chi_O", "chi1", "signature", "c1c3", "target"):
        if key in binv and binv[key] != rinv.get(key):
            diffs.append(
                f"invariant {key}: run has {rinv.get(key)}, "
                f"baseline has {binv[key]}"
            )

    bcases = {
        _case_key(c["params"], c["r"], c["k"]): c
        for c in baseline.get("cases", [])
    }
    rcases = {
        _case_key(c["params"], c["r"], c["k"]): c for c in report.get("cases", [])
    }
    for key in sorted(bcases.keys() - rcases.keys()):
        diffs.append(
            f"case ({_key_str(key)}) expected by the baseline but not produced"
        )
    for key in sorted(rcases.keys() - bcases.keys()):
        diffs.append(
            f"case ({_key_str(key)}) produced by the run but not in the baseline"
        )
    for key in sorted(bcases.keys() & rcases.keys()):
        expected_cn = bcases[key].get("char_numbers")
        if not expected_cn:
            continue
        label = bcases[key]["id"]
        ours_cn = rcases[key]["char_numbers"]
        for field, symbol in _COLUMNS:
            if field in expected_cn and expected_cn[field] != ours_cn[field]:
                diffs.append(
                    f"case {label}: {symbol} is {ours_cn[field]}, "
                    f"baseline says {expected_cn[field]}"
                )

    expected_elim = baseline.get("eliminated_by", {})
    actual_elim = {}
    for e in report.get("eliminations", []):
        label = e.get("baseline_id")
        if label is None:
            continue
        name = e["filter"]
        if name == "external-facts":
            name = f"external-facts:{e['certificate']['index']}"
        actual_elim[label] = name
    for label in sorted(set(expected_elim) | set(actual_elim)):
        exp = expected_elim.get(label)
        act = actual_elim.get(label)
        if exp == act:
            continue
        if exp is None:
            diffs.append(f"case {label}: eliminated via {act}, baseline keeps it")
        elif act is None:
            diffs.append(
                f"case {label}: baseline eliminates it via {exp}, "
                f"the run leaves it alive"
            )
        else:
            diffs.append(f"case {label}: eliminated via {act}, baseline says {exp}")

    expected_conc = baseline.get("concluded", {})
    actual_conc = {
        s["baseline_id"]: s["conclusion"]
        for s in report.get("survivors", [])
        if s.get("conclusion") and s.get("baseline_id")
    }
    for label in sorted(set(expected_conc) | set(actual_conc)):
        if expected_conc.get(label) != actual_conc.get(label):
            diffs.append(
                f"case {label}: run concludes {actual_conc.get(label)}, "
                f"baseline concludes {expected_conc.get(label)}"
            )

    if report.get("verdict") != baseline.get("verdict"):
        diffs.append(
            f"verdict: run says {report.get('verdict')}, "
            f"baseline says {baseline.get('verdict')}"
        )

    bpolys = baseline.get("polynomials", {})
    rpolys = {
        row["label"]: row["coefficients"] for row in report.get("polynomials", [])
    }
    for label in sorted(bpolys):
        expected = bpolys[label]
        ours = rpolys.get(label)
        if ours is None:
            diffs.append(f"polynomial {label}: baseline lists it, run built none")
            continue
        if len(ours) != len(expected):
            diffs.append(
                f"polynomial {label}: run has degree {len(ours) - 1}, "
                f"baseline has degree {len(expected) - 1}"
            )
            continue
        for i, (a, b) in enumerate(zip(ours, expected)):
            if a != b:
                power = len(ours) - 1 - i
                diffs.append(
                    f"polynomial {label}: coefficient of m^{power} is {a}, "
                    f"baseline says {b}"
                )

    for row in report.get("baseline_validation") or ():
        if row["kind"] == "polynomial":
            continue  # coefficient mismatches are reported above
        what = row["kind"]
        if what == "obstruction":
            what = f"{row['obstruction']} obstruction"
        if not row["verified"]:
            diffs.append(f"{what} {row['id']}: failed re-verification")
        if row.get("approx_match") is False:
            diffs.append(
                f"obstruction {row['id']}: quoted approximate values do not match"
            )
    return diffs


def scenario_bytes(lemma_id: str) -> bytes:
    if lemma_id not in SHIPPED_LEMMAS:
        raise ValueError(f"no shipped scenario for lemma {lemma_id!r}")
    node = resources.files("chern_gate").joinpath("data")
    return node.joinpath("scenarios").joinpath(f"lemma-{lemma_id}.json").read_bytes()


def load_scenario(lemma_id: str) -> LemmaSpec:
    return parse_scenario(scenario_bytes(lemma_id))


def load_baseline(lemma_id: str) -> dict:
    if lemma_id not in SHIPPED_LEMMAS:
        raise ValueError(f"no shipped baseline for lemma {lemma_id!r}")
    node = resources.files("chern_gate").joinpath("data")
    raw = node.joinpath("baselines").joinpath(f"baseline-{lemma_id}.json").read_bytes()
    return json.loads(raw.decode("utf-8"))


def reproduce_lemma(lemma_id: str, workers: int = 1) -> dict:
    """Run a shipped scenario against its shipped baseline."""
    return run_lemma(
        load_scenario(lemma_id), baseline=load_baseline(lemma_id), workers=workers
    )
