"""Open-source scenario: metric-derived contributions and per-stakeholder
recommendation rankings.

Contributions come straight from issue-tracker interaction counts (cc
list size, review changes, blocker count, comment count); the stakeholder
factor is either a supplied per-requirement weight or the keyword
similarity between the stakeholder profile and the requirement.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import MissingMetric, ParseError
from .model import Project, Requirement, Stakeholder
from .utility import UtilityReport, rank

# Default tracker metric dimensions, in presentation order.
METRIC_DIMENSIONS = ("cc", "gerrit", "blocker", "comments")

# Tokens dropped during keyword extraction (besides anything shorter than
# MIN_TOKEN_LENGTH). Kept deliberately small and frozen for reproducibility.
STOPWORDS = frozenset({
    "the", "and", "for", "with", "not", "are", "this", "that", "from",
    "when", "where", "which", "while", "into", "onto", "over", "under",
    "has", "have", "had", "was", "were", "will", "would", "should",
    "can", "could", "all", "any", "but", "per", "via", "then", "than",
    "its", "it's", "does", "doesn", "don", "you", "your", "our",
})
MIN_TOKEN_LENGTH = 3

_TOKEN_SPLIT = re.compile(r"[^a-z0-9]+")


def extract_keywords(text: str) -> frozenset[str]:
    """Lowercase, split on non-alphanumerics, drop short tokens and stopwords."""
    tokens = _TOKEN_SPLIT.split(text.lower())
    return frozenset(t for t in tokens
                     if len(t) >= MIN_TOKEN_LENGTH and t not in STOPWORDS)


@dataclass(frozen=True)
class ExpertiseScore:
    stakeholder: str
    requirement: str
    value: float


def metric_contribution(requirement: Requirement, dimension_id: str) -> float:
    """Raw interaction count for one metric dimension, unnormalized."""
    if dimension_id not in requirement.metrics:
        raise MissingMetric(
            f"requirement {requirement.id!r} has no metric {dimension_id!r}",
            requirement=requirement.id, dimension=dimension_id)
    return float(requirement.metrics[dimension_id])


def expertise(requirement: Requirement, stakeholder: Stakeholder) -> ExpertiseScore:
    """Jaccard similarity between the requirement's keywords (including
    component tags) and the stakeholder's profile keywords."""
    req_tokens = requirement.keywords | requirement.component_tags
    profile = stakeholder.profile_keywords
    union = req_tokens | profile
    value = len(req_tokens & profile) / len(union) if union else 0.0
    return ExpertiseScore(stakeholder=stakeholder.id,
                          requirement=requirement.id, value=value)


def personal_utility(requirement: Requirement, stakeholder: Stakeholder,
                     dimension_ids: Sequence[str] = METRIC_DIMENSIONS,
                     weight: Optional[float] = None,
                     dimension_multipliers: Optional[Mapping[str, float]] = None,
                     ) -> float:
    """Total metric contribution scaled by the stakeholder's weight for
    this requirement.

    ``weight`` overrides the computed keyword-similarity expertise;
    ``dimension_multipliers`` default to 1 per dimension.
    """
    if weight is None:
        weight = stakeholder.requirement_weights.get(requirement.id)
    if weight is None:
        weight = expertise(requirement, stakeholder).value
    multipliers = dimension_multipliers or {}
    total = sum(metric_contribution(requirement, d) * multipliers.get(d, 1.0)
                for d in dimension_ids)
    return total * weight


def recommend(project: Project, stakeholder_id: str,
              dimension_multipliers: Optional[Mapping[str, float]] = None,
              ) -> UtilityReport:
    """Rank all requirements by personal utility for one stakeholder."""
    from .errors import EmptyGroup
    s = project.stakeholder(stakeholder_id)
    if s is None:
        raise EmptyGroup(f"unknown stakeholder {stakeholder_id!r}",
                         stakeholder=stakeholder_id)
    dims = [d.id for d in project.metric_dimensions()] or list(METRIC_DIMENSIONS)
    multipliers = dimension_multipliers or {}
    contributions = {
        r.id: {d: metric_contribution(r, d) * multipliers.get(d, 1.0)
               for d in dims}
        for r in project.requirements
    }
    utilities = {
        r.id: personal_utility(r, s, dims,
                               dimension_multipliers=dimension_multipliers)
        for r in project.requirements
    }
    # Per-dimension weights are implicitly uniform here; the stakeholder
    # factor varies per requirement, so report it through utilities.
    weights = {d: multipliers.get(d, 1.0) for d in dims}
    return UtilityReport(contributions=contributions, weights=weights,
                         utilities=utilities, ranking=rank(utilities))


# --- Issue-export ingestion ----------------------------------------------
# Canonical export schema (docs/issue-export.md): a JSON array of issues,
# each {"id", "summary", "component", "cc": [..], "review_changes": n,
# "blocks": [..], "comment_count": n, "description"?}.

def _ingest_issue(obj: dict, index: int) -> Requirement:
    where = f"issues[{index}]"
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: issue must be a JSON object", field=where)
    if "id" not in obj:
        raise ParseError(f"{where}: missing field 'id'", field=f"{where}.id")
    summary = obj.get("summary", "")
    component = obj.get("component", "")
    metrics = {
        "cc": len(obj.get("cc", [])),
        "gerrit": int(obj.get("review_changes", 0)),
        "blocker": len(obj.get("blocks", [])),
        "comments": int(obj.get("comment_count", 0)),
    }
    return Requirement(
        id=str(obj["id"]),
        title=summary,
        description=obj.get("description", ""),
        keywords=extract_keywords(summary),
        metrics=metrics,
        component_tags=extract_keywords(component),
    )


def ingest_tracker_export(text: str) -> list[Requirement]:
    """Parse an issue-export document into requirements with metrics and
    extracted keywords. Unknown fields are ignored."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
                         line=exc.lineno, column=exc.colno) from exc
    if isinstance(doc, dict) and "issues" in doc:
        doc = doc["issues"]
    if not isinstance(doc, list):
        raise ParseError("export must be a JSON array of issues "
                         "(or an object with an 'issues' array)")
    return [_ingest_issue(obj, i) for i, obj in enumerate(doc)]


def fragment_to_canonical_json(requirements: Iterable[Requirement]) -> str:
    """Byte-stable serialization of an ingested project fragment."""
    doc = {"requirements": [
        {
            "id": r.id, "title": r.title, "description": r.description,
            "keywords": sorted(r.keywords),
            "metrics": dict(sorted(r.metrics.items())),
            "component_tags": sorted(r.component_tags),
        }
        for r in sorted(requirements, key=lambda r: r.id)
    ]}
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
