"""Scenario files: strict YAML schema shared by the CLI subcommands.

A scenario is a YAML mapping with optional sections; each section feeds one
or more subcommands:

    model:       p_nf and (optionally) p_f_given_faulty
    evidence:    r, the observed failure-free demands
    query:       n or n_grid, the future demands to predict over
    prior:       an explicit discrete prior (fault-free mass plus atoms)
    assessment:  objective-group judgments and the aggregation mode
    bootstrap:   a full fleet scenario
    sweep:       grids of p_nf, r and n for the sweep subcommand

Parsing is strict: unknown keys anywhere are rejected, as are values of the
wrong type (a typo in a certification input should never pass silently).
Validation errors always name the offending key and value.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import yaml

from .assessment import ObjectiveGroupAssessment
from .fleet import (
    ConstantGrowth,
    FleetScenario,
    LinearGrowth,
    LogisticGrowth,
)
from .inference import DiscretePrior, Evidence
from .reliability import MixtureModel, Probability

__all__ = [
    "ScenarioError",
    "ScenarioIOError",
    "ScenarioSyntaxError",
    "ScenarioValidationError",
    "ModelSection",
    "Query",
    "AssessmentSpec",
    "SweepGrids",
    "ScenarioFile",
    "parse_scenario",
    "serialize_scenario",
]


class ScenarioError(Exception):
    """Base class for scenario-file problems."""


class ScenarioIOError(ScenarioError):
    """The scenario file could not be read."""


class ScenarioSyntaxError(ScenarioError):
    """The scenario file is not well-formed YAML."""


class ScenarioValidationError(ScenarioError):
    """The scenario file is well-formed but violates the schema."""


@dataclass(frozen=True)
class ModelSection:
    p_nf: Probability
    p_f_given_faulty: Optional[Probability] = None

    def mixture(self) -> MixtureModel:
        if self.p_f_given_faulty is None:
            raise ScenarioValidationError(
                "model.p_f_given_faulty: required for survival computations"
            )
        return MixtureModel(p_nf=self.p_nf, p_f_given_faulty=self.p_f_given_faulty)


@dataclass(frozen=True)
class Query:
    n: Optional[int] = None
    n_grid: Optional[tuple[int, ...]] = None

    def values(self) -> tuple[int, ...]:
        return (self.n,) if self.n is not None else self.n_grid


@dataclass(frozen=True)
class AssessmentSpec:
    mode: str
    groups: tuple[ObjectiveGroupAssessment, ...]


@dataclass(frozen=True)
class SweepGrids:
    p_nf: tuple[float, ...]
    r: tuple[int, ...]
    n: tuple[int, ...]


@dataclass(frozen=True)
class ScenarioFile:
    model: Optional[ModelSection] = None
    evidence: Optional[Evidence] = None
    query: Optional[Query] = None
    prior: Optional[DiscretePrior] = None
    assessment: Optional[AssessmentSpec] = None
    bootstrap: Optional[FleetScenario] = None
    sweep: Optional[SweepGrids] = None


def _fail(path: str, message: str, value: Any = ...) -> "ScenarioValidationError":
    if value is not ...:
        message = f"{message}, got {value!r}"
    return ScenarioValidationError(f"{path}: {message}")


def _require_mapping(value: Any, path: str) -> dict:
    if not isinstance(value, dict):
        raise _fail(path, "expected a mapping", value)
    return value


def _check_keys(mapping: dict, allowed: set[str], required: set[str], path: str) -> None:
    unknown = set(mapping) - allowed
    if unknown:
        raise _fail(path, f"unknown keys {sorted(unknown)} (allowed: {sorted(allowed)})")
    missing = required - set(mapping)
    if missing:
        raise _fail(path, f"missing required keys {sorted(missing)}")


def _number_value(value: Any, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _fail(path, "expected a number", value)
    return float(value)


def _int_value(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _fail(path, "expected an integer", value)
    return value


def _count_value(value: Any, path: str) -> int:
    n = _int_value(value, path)
    if n < 0:
        raise _fail(path, "expected a non-negative integer", n)
    return n


def _probability_value(value: Any, path: str) -> Probability:
    try:
        return Probability(_number_value(value, path))
    except ScenarioError:
        raise
    except ValueError as exc:
        raise _fail(path, str(exc)) from None


def _get_number(mapping: dict, key: str, path: str) -> float:
    return _number_value(mapping[key], f"{path}.{key}")


def _get_int(mapping: dict, key: str, path: str) -> int:
    return _int_value(mapping[key], f"{path}.{key}")


def _get_str(mapping: dict, key: str, path: str) -> str:
    value = mapping[key]
    if not isinstance(value, str):
        raise _fail(f"{path}.{key}", "expected a string", value)
    return value


def _get_bool(mapping: dict, key: str, path: str) -> bool:
    value = mapping[key]
    if not isinstance(value, bool):
        raise _fail(f"{path}.{key}", "expected a boolean", value)
    return value


def _get_list(mapping: dict, key: str, path: str) -> list:
    value = mapping[key]
    if not isinstance(value, list) or not value:
        raise _fail(f"{path}.{key}", "expected a non-empty list", value)
    return value


def _probability(mapping: dict, key: str, path: str) -> Probability:
    return _probability_value(mapping[key], f"{path}.{key}")


def _count(mapping: dict, key: str, path: str) -> int:
    return _count_value(mapping[key], f"{path}.{key}")


def _parse_model(raw: Any) -> ModelSection:
    m = _require_mapping(raw, "model")
    _check_keys(m, {"p_nf", "p_f_given_faulty"}, {"p_nf"}, "model")
    p_fail = _probability(m, "p_f_given_faulty", "model") if "p_f_given_faulty" in m else None
    return ModelSection(p_nf=_probability(m, "p_nf", "model"), p_f_given_faulty=p_fail)


def _parse_evidence(raw: Any) -> Evidence:
    m = _require_mapping(raw, "evidence")
    _check_keys(m, {"r"}, {"r"}, "evidence")
    return Evidence(r=_count(m, "r", "evidence"))


def _parse_query(raw: Any) -> Query:
    m = _require_mapping(raw, "query")
    _check_keys(m, {"n", "n_grid"}, set(), "query")
    if ("n" in m) == ("n_grid" in m):
        raise _fail("query", "exactly one of 'n' and 'n_grid' must be given")
    if "n" in m:
        return Query(n=_count(m, "n", "query"))
    grid = _get_list(m, "n_grid", "query")
    return Query(n_grid=tuple(_count_value(v, f"query.n_grid[{i}]") for i, v in enumerate(grid)))


def _parse_prior(raw: Any) -> DiscretePrior:
    m = _require_mapping(raw, "prior")
    _check_keys(m, {"p_nf", "atoms"}, {"p_nf", "atoms"}, "prior")
    atoms = []
    for i, entry in enumerate(_get_list(m, "atoms", "prior")):
        path = f"prior.atoms[{i}]"
        e = _require_mapping(entry, path)
        _check_keys(e, {"q", "weight"}, {"q", "weight"}, path)
        atoms.append((_get_number(e, "q", path), _get_number(e, "weight", path)))
    try:
        return DiscretePrior(p_nf=_probability(m, "p_nf", "prior"), atoms=tuple(atoms))
    except ValueError as exc:
        raise _fail("prior", str(exc)) from None


def _parse_assessment(raw: Any) -> AssessmentSpec:
    m = _require_mapping(raw, "assessment")
    _check_keys(m, {"mode", "groups"}, {"mode", "groups"}, "assessment")
    mode = _get_str(m, "mode", "assessment")
    if mode not in ("conservative", "independent"):
        raise _fail("assessment.mode", "expected 'conservative' or 'independent'", mode)
    groups = []
    for i, entry in enumerate(_get_list(m, "groups", "assessment")):
        path = f"assessment.groups[{i}]"
        e = _require_mapping(entry, path)
        _check_keys(e, {"group_id", "objective_count", "p_no_fault"},
                    {"group_id", "objective_count", "p_no_fault"}, path)
        try:
            groups.append(
                ObjectiveGroupAssessment(
                    group_id=_get_str(e, "group_id", path),
                    objective_count=_get_int(e, "objective_count", path),
                    p_no_fault=_probability(e, "p_no_fault", path),
                )
            )
        except ValueError as exc:
            raise _fail(path, str(exc)) from None
    return AssessmentSpec(mode=mode, groups=tuple(groups))


_GROWTH_KEYS = {
    "constant": {"initial_fleet"},
    "linear": {"initial_fleet", "added_per_window"},
    "logistic": {"initial_fleet", "growth_rate", "carrying_capacity"},
}


def _parse_growth(raw: Any, path: str):
    m = _require_mapping(raw, path)
    if "kind" not in m:
        raise _fail(path, "missing required keys ['kind']")
    kind = _get_str(m, "kind", path)
    if kind not in _GROWTH_KEYS:
        raise _fail(f"{path}.kind", "expected one of 'constant', 'linear', 'logistic'", kind)
    _check_keys(m, _GROWTH_KEYS[kind] | {"kind"}, _GROWTH_KEYS[kind] | {"kind"}, path)
    try:
        if kind == "constant":
            return ConstantGrowth(initial_fleet=_get_int(m, "initial_fleet", path))
        if kind == "linear":
            return LinearGrowth(
                initial_fleet=_get_int(m, "initial_fleet", path),
                added_per_window=_get_int(m, "added_per_window", path),
            )
        return LogisticGrowth(
            initial_fleet=_get_int(m, "initial_fleet", path),
            growth_rate=_get_number(m, "growth_rate", path),
            carrying_capacity=_get_int(m, "carrying_capacity", path),
        )
    except ValueError as exc:
        raise _fail(path, str(exc)) from None


def _parse_bootstrap(raw: Any) -> FleetScenario:
    m = _require_mapping(raw, "bootstrap")
    required = {
        "growth",
        "demands_per_aircraft_per_window",
        "window_count",
        "p_nf",
        "initial_evidence",
        "confidence_threshold",
    }
    _check_keys(m, required | {"include_remaining_lifetime"}, required, "bootstrap")
    include = (
        _get_bool(m, "include_remaining_lifetime", "bootstrap")
        if "include_remaining_lifetime" in m
        else False
    )
    try:
        return FleetScenario(
            growth=_parse_growth(m["growth"], "bootstrap.growth"),
            demands_per_aircraft_per_window=_get_int(
                m, "demands_per_aircraft_per_window", "bootstrap"
            ),
            window_count=_count(m, "window_count", "bootstrap"),
            p_nf=_probability(m, "p_nf", "bootstrap"),
            initial_evidence=Evidence(_count(m, "initial_evidence", "bootstrap")),
            confidence_threshold=_probability(m, "confidence_threshold", "bootstrap"),
            include_remaining_lifetime=include,
        )
    except ScenarioError:
        raise
    except ValueError as exc:
        raise _fail("bootstrap", str(exc)) from None


def _parse_sweep(raw: Any) -> SweepGrids:
    m = _require_mapping(raw, "sweep")
    _check_keys(m, {"p_nf", "r", "n"}, {"p_nf", "r", "n"}, "sweep")
    p_nf = [
        float(_probability_value(v, f"sweep.p_nf[{i}]"))
        for i, v in enumerate(_get_list(m, "p_nf", "sweep"))
    ]
    r = [_count_value(v, f"sweep.r[{i}]") for i, v in enumerate(_get_list(m, "r", "sweep"))]
    n = [_count_value(v, f"sweep.n[{i}]") for i, v in enumerate(_get_list(m, "n", "sweep"))]
    return SweepGrids(p_nf=tuple(p_nf), r=tuple(r), n=tuple(n))


_SECTION_PARSERS = {
    "model": _parse_model,
    "evidence": _parse_evidence,
    "query": _parse_query,
    "prior": _parse_prior,
    "assessment": _parse_assessment,
    "bootstrap": _parse_bootstrap,
    "sweep": _parse_sweep,
}


def parse_scenario(path: "str | Path") -> ScenarioFile:
    """Load and validate a scenario file.

    Raises:
        ScenarioIOError: the file does not exist or cannot be read.
        ScenarioSyntaxError: the file is not valid YAML.
        ScenarioValidationError: the content violates the schema.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioIOError(f"cannot read scenario file {path}: {exc}") from exc
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ScenarioSyntaxError(f"invalid YAML in {path}: {exc}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise _fail("<root>", "expected a mapping of sections", raw)
    unknown = set(raw) - set(_SECTION_PARSERS)
    if unknown:
        raise _fail("<root>", f"unknown sections {sorted(unknown)}")
    parsed = {name: parser(raw[name]) for name, parser in _SECTION_PARSERS.items() if name in raw}
    return ScenarioFile(**parsed)


def _growth_mapping(growth) -> dict:
    out = {"kind": growth.kind, "initial_fleet": int(growth.initial_fleet)}
    if isinstance(growth, LinearGrowth):
        out["added_per_window"] = int(growth.added_per_window)
    elif isinstance(growth, LogisticGrowth):
        out["growth_rate"] = float(growth.growth_rate)
        out["carrying_capacity"] = int(growth.carrying_capacity)
    return out


def scenario_to_mapping(scenario: ScenarioFile) -> dict:
    """Plain-dict form of a scenario, suitable for YAML dumping."""
    out: dict[str, Any] = {}
    if scenario.model is not None:
        section: dict[str, Any] = {"p_nf": float(scenario.model.p_nf)}
        if scenario.model.p_f_given_faulty is not None:
            section["p_f_given_faulty"] = float(scenario.model.p_f_given_faulty)
        out["model"] = section
    if scenario.evidence is not None:
        out["evidence"] = {"r": int(scenario.evidence.r)}
    if scenario.query is not None:
        if scenario.query.n is not None:
            out["query"] = {"n": int(scenario.query.n)}
        else:
            out["query"] = {"n_grid": [int(v) for v in scenario.query.n_grid]}
    if scenario.prior is not None:
        out["prior"] = {
            "p_nf": float(scenario.prior.p_nf),
            "atoms": [{"q": float(q), "weight": float(w)} for q, w in scenario.prior.atoms],
        }
    if scenario.assessment is not None:
        out["assessment"] = {
            "mode": scenario.assessment.mode,
            "groups": [
                {
                    "group_id": g.group_id,
                    "objective_count": int(g.objective_count),
                    "p_no_fault": float(g.p_no_fault),
                }
                for g in scenario.assessment.groups
            ],
        }
    if scenario.bootstrap is not None:
        b = scenario.bootstrap
        out["bootstrap"] = {
            "growth": _growth_mapping(b.growth),
            "demands_per_aircraft_per_window": int(b.demands_per_aircraft_per_window),
            "window_count": int(b.window_count),
            "p_nf": float(b.p_nf),
            "initial_evidence": int(b.initial_evidence.r),
            "confidence_threshold": float(b.confidence_threshold),
            "include_remaining_lifetime": b.include_remaining_lifetime,
        }
    if scenario.sweep is not None:
        out["sweep"] = {
            "p_nf": [float(v) for v in scenario.sweep.p_nf],
            "r": [int(v) for v in scenario.sweep.r],
            "n": [int(v) for v in scenario.sweep.n],
        }
    return out


def serialize_scenario(scenario: ScenarioFile) -> str:
    """YAML text that parses back to an identical scenario."""
    return yaml.safe_dump(scenario_to_mapping(scenario), sort_keys=False)
