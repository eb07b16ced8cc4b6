"""Scenario files: the JSON inputs that drive a lemma replay.

A scenario either describes a full pipeline run (Hodge diamond, sign
of c1, lattice grid, divisibility rule, filters, literature facts) or
a direct run over explicit obstruction polynomials. Parsing is strict:
floats are rejected outright, rationals travel as "p/q" strings, big
integers as decimal strings, and every error names the JSON path it
was found at.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .obstruction import ExternalFact, IntPoly
from .report import canonical_json, frac_str, int_str, parse_frac, parse_int_str
from .riemann_roch import HodgeDiamond
from .search import DIVISIBILITY_RULES, LatticeSpec

__all__ = [
    "LEMMA_IDS",
    "FILTER_NAMES",
    "ScenarioError",
    "LemmaSpec",
    "parse_scenario",
    "emit_scenario",
]

LEMMA_IDS = ("2.1", "2.2", "3.1", "4.2", "A.1", "A.2", "A.3")
FILTER_NAMES = ("mod12", "ahat", "embedding-poly", "external-facts")

_BOUND_KEYS = {"rank1": ("e_max",), "rank2": ("a_max", "b_max"), "free": ("d_max",)}


class ScenarioError(ValueError):
    """A scenario file problem, tagged with the JSON path."""

    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


@dataclass(frozen=True)
class LemmaSpec:
    lemma_id: str
    mode: str
    diamond: HodgeDiamond | None = None
    c1_sign: int | None = None
    lattice: LatticeSpec | None = None
    r_bounds: tuple[int, int] | None = None
    divisibility: str | None = None
    k_lower: Fraction | None = None
    c14_max: int | None = None
    filters: tuple[str, ...] = ()
    facts: tuple[ExternalFact, ...] = ()
    polynomials: tuple[tuple[str, IntPoly], ...] = ()
    baseline_id: str | None = None
    input_sha256: str = field(compare=False, default="")


class _Float:
    """Marker for a float literal, kept so the walk can name its path."""

    def __init__(self, text: str):
        self.text = text


def _find_float(node, path: str) -> str | None:
    if isinstance(node, _Float):
        return path
    if isinstance(node, dict):
        for key, value in node.items():
            hit = _find_float(value, f"{path}.{key}" if path else str(key))
            if hit:
                return hit
    if isinstance(node, list):
        for i, value in enumerate(node):
            hit = _find_float(value, f"{path}[{i}]")
            if hit:
                return hit
    return None


def _require(mapping: dict, key: str, path: str):
    if key not in mapping:
        raise ScenarioError(path or key, f"missing required key {key!r}")
    return mapping[key]


def _plain_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ScenarioError(path, f"expected an integer, got {value!r}")
    return value


def _parse_hodge(raw, path: str) -> HodgeDiamond:
    if not isinstance(raw, list) or len(raw) != 5:
        raise ScenarioError(path, "expected a 5x5 matrix")
    grid = []
    for p, row in enumerate(raw):
        if not isinstance(row, list) or len(row) != 5:
            raise ScenarioError(f"{path}[{p}]", "expected a row of 5 integers")
        grid.append([_plain_int(x, f"{path}[{p}][{q}]") for q, x in enumerate(row)])
    for p in range(5):
        for q in range(p + 1, 5):
            if grid[p][q] != grid[q][p]:
                raise ScenarioError(
                    f"{path}[{p}][{q}]",
                    f"h[{p}][{q}]={grid[p][q]} is not matched by "
                    f"h[{q}][{p}]={grid[q][p]}",
                )
    try:
        return HodgeDiamond.from_rows(grid)
    except ValueError as exc:
        raise ScenarioError(path, str(exc)) from exc


def _parse_lattice(raw, path: str) -> LatticeSpec:
    if not isinstance(raw, dict):
        raise ScenarioError(path, "expected an object")
    model = _require(raw, "model", f"{path}.model")
    if model not in _BOUND_KEYS:
        raise ScenarioError(f"{path}.model", f"unknown lattice model {model!r}")
    expected = _BOUND_KEYS[model]
    for key in raw:
        if key != "model" and key not in expected:
            raise ScenarioError(f"{path}.{key}", f"not a bound of model {model!r}")
    bounds = {}
    for key in expected:
        value = _plain_int(_require(raw, key, f"{path}.{key}"), f"{path}.{key}")
        if value < 0:
            raise ScenarioError(f"{path}.{key}", "bound must be non-negative")
        bounds[key] = value
    return LatticeSpec(model=model, **bounds)


def _parse_fact(raw, path: str) -> ExternalFact:
    if not isinstance(raw, dict):
        raise ScenarioError(path, "expected an object")
    index = _plain_int(_require(raw, "index", f"{path}.index"), f"{path}.index")
    r = _plain_int(_require(raw, "r", f"{path}.r"), f"{path}.r")
    citation = _require(raw, "citation", f"{path}.citation")
    if not isinstance(citation, str) or not citation:
        raise ScenarioError(f"{path}.citation", "citation must be a nonempty string")
    constraint = _require(raw, "constraint", f"{path}.constraint")
    if not isinstance(constraint, dict):
        raise ScenarioError(f"{path}.constraint", "expected an object")
    kind = _require(constraint, "kind", f"{path}.constraint.kind")
    try:
        if kind == "degree-in":
            degrees = _require(constraint, "degrees", f"{path}.constraint.degrees")
            if not isinstance(degrees, list) or not degrees:
                raise ScenarioError(
                    f"{path}.constraint.degrees", "expected a nonempty list"
                )
            return ExternalFact(
                index=index,
                r=r,
                kind=kind,
                citation=citation,
                degrees=tuple(
                    _plain_int(x, f"{path}.constraint.degrees[{i}]")
                    for i, x in enumerate(degrees)
                ),
            )
        if kind == "degree-max":
            bound = _require(constraint, "max_degree", f"{path}.constraint.max_degree")
            return ExternalFact(
                index=index,
                r=r,
                kind=kind,
                citation=citation,
                max_degree=_plain_int(bound, f"{path}.constraint.max_degree"),
            )
        if kind == "concludes":
            conclusion = _require(
                constraint, "conclusion", f"{path}.constraint.conclusion"
            )
            if not isinstance(conclusion, str):
                raise ScenarioError(
                    f"{path}.constraint.conclusion", "expected a string"
                )
            return ExternalFact(
                index=index, r=r, kind=kind, citation=citation, conclusion=conclusion
            )
    except ValueError as exc:
        if isinstance(exc, ScenarioError):
            raise
        raise ScenarioError(f"{path}.constraint", str(exc)) from exc
    raise ScenarioError(f"{path}.constraint.kind", f"unknown fact kind {kind!r}")


def _parse_polynomials(raw, path: str) -> tuple[tuple[str, IntPoly], ...]:
    if not isinstance(raw, list) or not raw:
        raise ScenarioError(path, "expected a nonempty list")
    out = []
    seen = set()
    for i, entry in enumerate(raw):
        here = f"{path}[{i}]"
        if not isinstance(entry, dict):
            raise ScenarioError(here, "expected an object")
        label = _require(entry, "label", f"{here}.label")
        if not isinstance(label, str) or not label:
            raise ScenarioError(f"{here}.label", "label must be a nonempty string")
        if label in seen:
            raise ScenarioError(f"{here}.label", f"duplicate label {label!r}")
        seen.add(label)
        coeffs = _require(entry, "coefficients", f"{here}.coefficients")
        if not isinstance(coeffs, list) or not coeffs:
            raise ScenarioError(f"{here}.coefficients", "expected a nonempty list")
        values = []
        for j, c in enumerate(coeffs):
            try:
                values.append(parse_int_str(c))
            except ValueError as exc:
                raise ScenarioError(f"{here}.coefficients[{j}]", str(exc)) from exc
        if values[0] == 0:
            raise ScenarioError(
                f"{here}.coefficients[0]", "leading coefficient must be nonzero"
            )
        out.append((label, IntPoly.from_desc(values)))
    return tuple(out)


_PIPELINE_KEYS = {
    "lemma",
    "mode",
    "hodge",
    "c1_sign",
    "lattice",
    "r_bounds",
    "divisibility",
    "k_lower",
    "c14_max",
    "filters",
    "facts",
    "baseline_id",
}
_DIRECT_KEYS = {"lemma", "mode", "polynomials", "baseline_id"}


def parse_scenario(raw: bytes) -> LemmaSpec:
    try:
        doc = json.loads(raw.decode("utf-8"), parse_float=_Float)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ScenarioError("$", f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ScenarioError("$", "top level must be an object")
    float_path = _find_float(doc, "")
    if float_path:
        raise ScenarioError(
            float_path, "float literals are forbidden; use \"p/q\" strings"
        )

    lemma = _require(doc, "lemma", "lemma")
    if lemma not in LEMMA_IDS:
        raise ScenarioError("lemma", f"unknown lemma id {lemma!r}")
    mode = doc.get("mode", "pipeline")
    if mode not in ("pipeline", "direct"):
        raise ScenarioError("mode", f"unknown mode {mode!r}")

    allowed = _PIPELINE_KEYS if mode == "pipeline" else _DIRECT_KEYS
    for key in doc:
        if key not in allowed:
            raise ScenarioError(key, f"unknown key for mode {mode!r}")

    baseline_id = doc.get("baseline_id")
    if baseline_id is not None and baseline_id not in LEMMA_IDS:
        raise ScenarioError("baseline_id", f"unknown baseline id {baseline_id!r}")
    sha = hashlib.sha256(raw).hexdigest()

    if mode == "direct":
        return LemmaSpec(
            lemma_id=lemma,
            mode=mode,
            polynomials=_parse_polynomials(
                _require(doc, "polynomials", "polynomials"), "polynomials"
            ),
            baseline_id=baseline_id,
            input_sha256=sha,
        )

    diamond = _parse_hodge(_require(doc, "hodge", "hodge"), "hodge")
    c1_sign = _plain_int(_require(doc, "c1_sign", "c1_sign"), "c1_sign")
    if c1_sign not in (-1, 1):
        raise ScenarioError("c1_sign", f"must be -1 or 1, got {c1_sign}")
    lattice = _parse_lattice(_require(doc, "lattice", "lattice"), "lattice")
    r_raw = _require(doc, "r_bounds", "r_bounds")
    if not isinstance(r_raw, list) or len(r_raw) != 2:
        raise ScenarioError("r_bounds", "expected [min, max]")
    r_min = _plain_int(r_raw[0], "r_bounds[0]")
    r_max = _plain_int(r_raw[1], "r_bounds[1]")
    if r_min > r_max:
        raise ScenarioError("r_bounds", f"empty range [{r_min}, {r_max}]")
    if c1_sign < 0 and r_max >= 0:
        raise ScenarioError("r_bounds", "c1_sign -1 needs a negative r range")
    if c1_sign > 0 and r_min <= 0:
        raise ScenarioError("r_bounds", "c1_sign +1 needs a positive r range")
    divisibility = _require(doc, "divisibility", "divisibility")
    if divisibility not in DIVISIBILITY_RULES:
        raise ScenarioError("divisibility", f"unknown rule {divisibility!r}")
    k_lower = None
    if doc.get("k_lower") is not None:
        try:
            k_lower = parse_frac(doc["k_lower"])
        except ValueError as exc:
            raise ScenarioError("k_lower", str(exc)) from exc
    c14_max = None
    if doc.get("c14_max") is not None:
        c14_max = _plain_int(doc["c14_max"], "c14_max")
        if c14_max < 1:
            raise ScenarioError("c14_max", "cap must be positive")
    filters_raw = doc.get("filters", [])
    if not isinstance(filters_raw, list):
        raise ScenarioError("filters", "expected a list")
    filters = []
    for i, name in enumerate(filters_raw):
        if name not in FILTER_NAMES:
            raise ScenarioError(f"filters[{i}]", f"unknown filter {name!r}")
        if name in filters:
            raise ScenarioError(f"filters[{i}]", f"duplicate filter {name!r}")
        filters.append(name)
    facts_raw = doc.get("facts", [])
    if not isinstance(facts_raw, list):
        raise ScenarioError("facts", "expected a list")
    facts = tuple(
        _parse_fact(entry, f"facts[{i}]") for i, entry in enumerate(facts_raw)
    )
    seen_r = set()
    for i, fact in enumerate(facts):
        if fact.r in seen_r:
            raise ScenarioError(f"facts[{i}].r", f"second fact for r={fact.r}")
        seen_r.add(fact.r)

    spec = LemmaSpec(
        lemma_id=lemma,
        mode=mode,
        diamond=diamond,
        c1_sign=c1_sign,
        lattice=lattice,
        r_bounds=(r_min, r_max),
        divisibility=divisibility,
        k_lower=k_lower,
        c14_max=c14_max,
        filters=tuple(filters),
        facts=facts,
        baseline_id=baseline_id,
        input_sha256=sha,
    )
    try:
        from .pipeline import constraint_system_for  # deferred; avoids a cycle

        constraint_system_for(spec, target=720)  # any positive target validates
    except ValueError as exc:
        raise ScenarioError("$", str(exc)) from exc
    return spec


def _fact_to_json(fact: ExternalFact) -> dict:
    constraint: dict = {"kind": fact.kind}
    if fact.kind == "degree-in":
        constraint["degrees"] = list(fact.degrees)
    elif fact.kind == "degree-max":
        constraint["max_degree"] = fact.max_degree
    else:
        constraint["conclusion"] = fact.conclusion
    return {
        "index": fact.index,
        "r": fact.r,
        "constraint": constraint,
        "citation": fact.citation,
    }


def emit_scenario(spec: LemmaSpec) -> bytes:
    """Serialize a spec back to scenario JSON (canonical bytes)."""
    doc: dict = {"lemma": spec.lemma_id, "mode": spec.mode}
    if spec.baseline_id is not None:
        doc["baseline_id"] = spec.baseline_id
    if spec.mode == "direct":
        doc["polynomials"] = [
            {"label": label, "coefficients": [int_str(c) for c in poly.desc_coeffs]}
            for label, poly in spec.polynomials
        ]
        return canonical_json(doc)
    doc["hodge"] = [list(row) for row in spec.diamond.h]
    doc["c1_sign"] = spec.c1_sign
    doc["lattice"] = {"model": spec.lattice.model}
    for key in _BOUND_KEYS[spec.lattice.model]:
        doc["lattice"][key] = getattr(spec.lattice, key)
    doc["r_bounds"] = list(spec.r_bounds)
    doc["divisibility"] = spec.divisibility
    if spec.k_lower is not None:
        doc["k_lower"] = frac_str(spec.k_lower)
    if spec.c14_max is not None:
        doc["c14_max"] = spec.c14_max
    doc["filters"] = list(spec.filters)
    doc["facts"] = [_fact_to_json(f) for f in spec.facts]
    return canonical_json(doc)
