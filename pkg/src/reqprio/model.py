"""Core domain model: requirements, stakeholders, dimensions, evaluations.

All values are immutable after construction; anything that looks like a
mutation returns a new object. Identifiers are plain non-empty strings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Optional

from .errors import ParseError

WEIGHT_SUM_TOL = 1e-9


class DimensionSource(str, Enum):
    MANUAL = "MANUAL"
    METRIC = "METRIC"


class ConstraintKind(str, Enum):
    DEP = "DEP"
    PRIO = "PRIO"


@dataclass(frozen=True)
class Requirement:
    id: str
    title: str = ""
    description: str = ""
    keywords: frozenset[str] = frozenset()
    metrics: Mapping[str, int] = field(default_factory=dict)
    component_tags: frozenset[str] = frozenset()


@dataclass(frozen=True)
class InterestDimension:
    id: str
    name: str = ""
    source: DimensionSource = DimensionSource.MANUAL


@dataclass(frozen=True)
class Stakeholder:
    id: str
    name: str = ""
    profile_keywords: frozenset[str] = frozenset()
    dimension_weights: Mapping[str, float] = field(default_factory=dict)
    dimension_expertise: Mapping[str, float] = field(default_factory=dict)
    # Externally supplied per-requirement weight(r,s); overrides keyword
    # similarity in oss mode when present.
    requirement_weights: Mapping[str, float] = field(default_factory=dict)

    def expertise_for(self, dimension_id: str) -> float:
        return self.dimension_expertise.get(dimension_id, 1.0)


@dataclass(frozen=True)
class EvaluationSet:
    """Partial tensor of stakeholder evaluations: (dimension, requirement,
    stakeholder) -> value >= 0. A missing key means "no evaluation given"."""

    entries: Mapping[tuple[str, str, str], float] = field(default_factory=dict)

    def value(self, dimension_id, requirement_id, stakeholder_id) -> Optional[float]:
        return self.entries.get((dimension_id, requirement_id, stakeholder_id))

    def values_for(self, dimension_id, requirement_id, stakeholder_ids) -> list[float]:
        """Values of evaluating stakeholders only, in the given id order."""
        out = []
        for sid in stakeholder_ids:
            v = self.entries.get((dimension_id, requirement_id, sid))
            if v is not None:
                out.append(v)
        return out

    def merged_with(self, updates: Mapping[tuple[str, str, str], Optional[float]]):
        """New set with updates applied; a None value removes the entry."""
        entries = dict(self.entries)
        for key, value in updates.items():
            if value is None:
                entries.pop(key, None)
            else:
                entries[key] = value
        return EvaluationSet(entries)


@dataclass(frozen=True)
class Ranking:
    """Utilities plus a competition-numbered rank assignment.

    ``order`` is sorted by descending utility, ascending id among ties;
    a group of k items tied at rank n pushes the next item to rank n+k.
    """

    utilities: Mapping[str, float]
    ranks: Mapping[str, int]
    order: tuple[str, ...]


@dataclass(frozen=True)
class PrecedenceConstraint:
    """Strict ordering statement: ``before`` must precede ``after``."""

    before: str
    after: str
    kind: ConstraintKind
    label: str

    def __post_init__(self):
        if self.before == self.after:
            raise ParseError(
                f"constraint {self.label!r} relates {self.before!r} to itself",
                field="dependencies",
            )


@dataclass(frozen=True)
class Prioritization:
    """A published requirement order, e.g. the result of an applied repair."""

    order: tuple[str, ...]
    note: str = ""


@dataclass(frozen=True)
class Project:
    requirements: tuple[Requirement, ...] = ()
    stakeholders: tuple[Stakeholder, ...] = ()
    dimensions: tuple[InterestDimension, ...] = ()
    evaluations: EvaluationSet = field(default_factory=EvaluationSet)
    dependencies: tuple[PrecedenceConstraint, ...] = ()
    prioritization: Optional[Prioritization] = None

    def requirement_ids(self) -> list[str]:
        return [r.id for r in self.requirements]

    def requirement(self, rid: str) -> Optional[Requirement]:
        return next((r for r in self.requirements if r.id == rid), None)

    def stakeholder(self, sid: str) -> Optional[Stakeholder]:
        return next((s for s in self.stakeholders if s.id == sid), None)

    def dimension(self, did: str) -> Optional[InterestDimension]:
        return next((d for d in self.dimensions if d.id == did), None)

    def manual_dimensions(self) -> list[InterestDimension]:
        return [d for d in self.dimensions if d.source == DimensionSource.MANUAL]

    def metric_dimensions(self) -> list[InterestDimension]:
        return [d for d in self.dimensions if d.source == DimensionSource.METRIC]


@dataclass(frozen=True)
class Violation:
    """One invariant violation found by validate_project."""

    code: str
    message: str
    path: str = ""

    def to_dict(self) -> dict:
        return {"code": self.code, "message": self.message, "path": self.path}


def _check_ids(items, kind: str, out: list[Violation]):
    seen = set()
    for i, item in enumerate(items):
        if not item.id or not isinstance(item.id, str):
            out.append(Violation("empty_id", f"{kind} #{i} has an empty id",
                                 f"{kind}s[{i}].id"))
        elif item.id in seen:
            out.append(Violation("duplicate_id", f"duplicate {kind} id {item.id!r}",
                                 f"{kind}s[{i}].id"))
        seen.add(item.id)


def validate_project(
    requirements: Iterable[Requirement],
    stakeholders: Iterable[Stakeholder],
    dimensions: Iterable[InterestDimension],
    evaluations: EvaluationSet,
    dependencies: Iterable[PrecedenceConstraint] = (),
) -> list[Violation]:
    """Check every model invariant; returns [] for a valid project.

    Violations are values, not exceptions: callers decide whether a
    non-empty result is fatal.
    """
    requirements = list(requirements)
    stakeholders = list(stakeholders)
    dimensions = list(dimensions)
    dependencies = list(dependencies)
    out: list[Violation] = []

    _check_ids(requirements, "requirement", out)
    _check_ids(stakeholders, "stakeholder", out)
    _check_ids(dimensions, "dimension", out)

    req_ids = {r.id for r in requirements}
    stk_ids = {s.id for s in stakeholders}
    dim_ids = {d.id for d in dimensions}

    for r in requirements:
        for kw in r.keywords:
            if not kw or kw != kw.lower():
                out.append(Violation(
                    "bad_keyword",
                    f"requirement {r.id!r} keyword {kw!r} must be lowercase and non-empty",
                    f"requirements[{r.id}].keywords"))
        for did, count in r.metrics.items():
            if count < 0:
                out.append(Violation(
                    "negative_metric",
                    f"requirement {r.id!r} metric {did!r} is negative ({count})",
                    f"requirements[{r.id}].metrics[{did}]"))

    for d in dimensions:
        if d.source == DimensionSource.METRIC:
            for r in requirements:
                if d.id not in r.metrics:
                    out.append(Violation(
                        "missing_metric",
                        f"requirement {r.id!r} lacks a count for metric dimension {d.id!r}",
                        f"requirements[{r.id}].metrics[{d.id}]"))
        else:
            for r in requirements:
                if not any((d.id, r.id, s.id) in evaluations.entries
                           for s in stakeholders):
                    out.append(Violation(
                        "unevaluated_dimension",
                        f"manual dimension {d.id!r} has no evaluation for requirement {r.id!r}",
                        f"evaluations[{d.id},{r.id}]"))

    for s in stakeholders:
        for did, w in s.dimension_weights.items():
            if did not in dim_ids:
                out.append(Violation(
                    "unknown_dimension",
                    f"stakeholder {s.id!r} weights unknown dimension {did!r}",
                    f"stakeholders[{s.id}].dimension_weights[{did}]"))
            if not 0.0 <= w <= 1.0:
                out.append(Violation(
                    "weight_out_of_range",
                    f"stakeholder {s.id!r} weight for {did!r} is {w}, outside [0,1]",
                    f"stakeholders[{s.id}].dimension_weights[{did}]"))
        if s.dimension_weights:
            total = sum(s.dimension_weights.values())
            if abs(total - 1.0) > WEIGHT_SUM_TOL:
                out.append(Violation(
                    "weight_sum",
                    f"stakeholder {s.id!r} dimension weights sum to {total:g}, expected 1.0",
                    f"stakeholders[{s.id}].dimension_weights"))
        for did, e in s.dimension_expertise.items():
            if did not in dim_ids:
                out.append(Violation(
                    "unknown_dimension",
                    f"stakeholder {s.id!r} expertise names unknown dimension {did!r}",
                    f"stakeholders[{s.id}].dimension_expertise[{did}]"))
            if not 0.0 <= e <= 1.0:
                out.append(Violation(
                    "expertise_out_of_range",
                    f"stakeholder {s.id!r} expertise for {did!r} is {e}, outside [0,1]",
                    f"stakeholders[{s.id}].dimension_expertise[{did}]"))
        for rid, w in s.requirement_weights.items():
            if rid not in req_ids:
                out.append(Violation(
                    "unknown_requirement",
                    f"stakeholder {s.id!r} weights unknown requirement {rid!r}",
                    f"stakeholders[{s.id}].requirement_weights[{rid}]"))
            if not 0.0 <= w <= 1.0:
                out.append(Violation(
                    "weight_out_of_range",
                    f"stakeholder {s.id!r} requirement weight for {rid!r} is {w}, outside [0,1]",
                    f"stakeholders[{s.id}].requirement_weights[{rid}]"))

    for (did, rid, sid), value in evaluations.entries.items():
        path = f"evaluations[{did},{rid},{sid}]"
        if did not in dim_ids:
            out.append(Violation("unknown_dimension",
                                 f"evaluation references unknown dimension {did!r}", path))
        if rid not in req_ids:
            out.append(Violation("unknown_requirement",
                                 f"evaluation references unknown requirement {rid!r}", path))
        if sid not in stk_ids:
            out.append(Violation("unknown_stakeholder",
                                 f"evaluation references unknown stakeholder {sid!r}", path))
        if value < 0:
            out.append(Violation("negative_evaluation",
                                 f"evaluation {path} is negative ({value})", path))

    for i, dep in enumerate(dependencies):
        for endpoint in (dep.before, dep.after):
            if endpoint not in req_ids:
                out.append(Violation(
                    "unknown_requirement",
                    f"dependency {dep.label!r} references unknown requirement {endpoint!r}",
                    f"dependencies[{i}]"))

    return out


def validate(project: Project) -> list[Violation]:
    return validate_project(project.requirements, project.stakeholders,
                            project.dimensions, project.evaluations,
                            project.dependencies)


def normalize_weights(project: Project) -> Project:
    """Rescale each stakeholder's dimension weights to sum to 1.0.

    Ingestion-time alternative to rejecting weight-sum violations;
    stakeholders with no or all-zero weights are left untouched.
    """
    fixed = []
    for s in project.stakeholders:
        total = sum(s.dimension_weights.values())
        if s.dimension_weights and total > 0 and abs(total - 1.0) > WEIGHT_SUM_TOL:
            fixed.append(replace(s, dimension_weights={
                d: w / total for d, w in s.dimension_weights.items()}))
        else:
            fixed.append(s)
    return replace(project, stakeholders=tuple(fixed))


# --- JSON project file format -------------------------------------------
# One UTF-8 JSON document with top-level keys `requirements`,
# `stakeholders`, `dimensions`, `evaluations`, `dependencies` and an
# optional `prioritization`; see docs/project-format.md.

def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ParseError(f"missing field {key!r} in {where}", field=key)
    return obj[key]


def _requirement_from_dict(obj: dict) -> Requirement:
    return Requirement(
        id=str(_require(obj, "id", "requirement")),
        title=obj.get("title", ""),
        description=obj.get("description", ""),
        keywords=frozenset(obj.get("keywords", [])),
        metrics={k: int(v) for k, v in obj.get("metrics", {}).items()},
        component_tags=frozenset(obj.get("component_tags", [])),
    )


def _stakeholder_from_dict(obj: dict) -> Stakeholder:
    return Stakeholder(
        id=str(_require(obj, "id", "stakeholder")),
        name=obj.get("name", ""),
        profile_keywords=frozenset(obj.get("profile_keywords", [])),
        dimension_weights={k: float(v) for k, v in obj.get("dimension_weights", {}).items()},
        dimension_expertise={k: float(v) for k, v in obj.get("dimension_expertise", {}).items()},
        requirement_weights={k: float(v) for k, v in obj.get("requirement_weights", {}).items()},
    )


def _dimension_from_dict(obj: dict) -> InterestDimension:
    source = obj.get("source", "MANUAL")
    try:
        src = DimensionSource(source)
    except ValueError:
        raise ParseError(f"dimension source must be MANUAL or METRIC, got {source!r}",
                         field="dimensions")
    return InterestDimension(id=str(_require(obj, "id", "dimension")),
                             name=obj.get("name", ""), source=src)


def project_from_dict(doc: dict, normalize: bool = False) -> Project:
    """Parse the project file structure; raises ParseError on shape errors."""
    if not isinstance(doc, dict):
        raise ParseError("project document must be a JSON object")
    entries = {}
    for i, e in enumerate(doc.get("evaluations", [])):
        key = (str(_require(e, "dimension", f"evaluations[{i}]")),
               str(_require(e, "requirement", f"evaluations[{i}]")),
               str(_require(e, "stakeholder", f"evaluations[{i}]")))
        entries[key] = float(_require(e, "value", f"evaluations[{i}]"))
    deps = []
    for i, c in enumerate(doc.get("dependencies", [])):
        deps.append(PrecedenceConstraint(
            before=str(_require(c, "before", f"dependencies[{i}]")),
            after=str(_require(c, "after", f"dependencies[{i}]")),
            kind=ConstraintKind.DEP,
            label=c.get("label", f"dep{i + 1}"),
        ))
    prio = None
    if doc.get("prioritization"):
        p = doc["prioritization"]
        prio = Prioritization(order=tuple(_require(p, "order", "prioritization")),
                              note=p.get("note", ""))
    project = Project(
        requirements=tuple(_requirement_from_dict(r) for r in doc.get("requirements", [])),
        stakeholders=tuple(_stakeholder_from_dict(s) for s in doc.get("stakeholders", [])),
        dimensions=tuple(_dimension_from_dict(d) for d in doc.get("dimensions", [])),
        evaluations=EvaluationSet(entries),
        dependencies=tuple(deps),
        prioritization=prio,
    )
    if normalize:
        project = normalize_weights(project)
    return project


def project_to_dict(project: Project) -> dict:
    """Canonical dict form: collections sorted by id, evaluation entries
    sorted by key, so equal projects serialize to equal documents."""
    doc = {
        "requirements": [
            {
                "id": r.id, "title": r.title, "description": r.description,
                "keywords": sorted(r.keywords),
                "metrics": dict(sorted(r.metrics.items())),
                "component_tags": sorted(r.component_tags),
            }
            for r in sorted(project.requirements, key=lambda r: r.id)
        ],
        "stakeholders": [
            {
                "id": s.id, "name": s.name,
                "profile_keywords": sorted(s.profile_keywords),
                "dimension_weights": dict(sorted(s.dimension_weights.items())),
                "dimension_expertise": dict(sorted(s.dimension_expertise.items())),
                "requirement_weights": dict(sorted(s.requirement_weights.items())),
            }
            for s in sorted(project.stakeholders, key=lambda s: s.id)
        ],
        "dimensions": [
            {"id": d.id, "name": d.name, "source": d.source.value}
            for d in sorted(project.dimensions, key=lambda d: d.id)
        ],
        "evaluations": [
            {"dimension": d, "requirement": r, "stakeholder": s, "value": v}
            for (d, r, s), v in sorted(project.evaluations.entries.items())
        ],
        "dependencies": [
            {"before": c.before, "after": c.after, "label": c.label}
            for c in project.dependencies
        ],
    }
    if project.prioritization is not None:
        doc["prioritization"] = {
            "order": list(project.prioritization.order),
            "note": project.prioritization.note,
        }
    return doc


def load_project(path, normalize: bool = False) -> Project:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}",
                             line=exc.lineno) from exc
    return project_from_dict(doc, normalize=normalize)


def dump_project(project: Project) -> str:
    return json.dumps(project_to_dict(project), indent=2, sort_keys=False,
                      ensure_ascii=False)
