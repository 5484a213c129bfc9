"""Utility computation: single-user and group scoring plus ranking.

The group path averages stakeholder evaluations per (requirement,
dimension), aggregates expertise-scaled dimension weights over the
group, and combines both into one utility per requirement. Arithmetic
is full precision; rounding is a presentation concern.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import DimensionMismatch, EmptyGroup, EmptyInput, NoEvaluation
from .model import EvaluationSet, Project, Ranking, Stakeholder

TIE_TOL = 1e-9


def utility_single(contribution: Mapping[str, float],
                   weights: Mapping[str, float]) -> float:
    """Weighted sum of per-dimension contributions (single-user scoring)."""
    missing = set(contribution) ^ set(weights)
    if missing:
        raise DimensionMismatch(
            "contribution and weight maps cover different dimensions: "
            + ", ".join(sorted(missing)),
            dimensions=sorted(missing))
    return sum(contribution[d] * weights[d] for d in contribution)


def group_contribution(evals: EvaluationSet, requirement_id: str,
                       dimension_id: str,
                       stakeholders: Sequence[Stakeholder]) -> float:
    """Mean evaluation over the stakeholders who evaluated the pair.

    Missing entries are excluded from numerator and denominator; if nobody
    evaluated (dimension, requirement), that's a NoEvaluation error.
    """
    values = evals.values_for(dimension_id, requirement_id,
                              [s.id for s in stakeholders])
    if not values:
        raise NoEvaluation(
            f"no stakeholder evaluated requirement {requirement_id!r} "
            f"on dimension {dimension_id!r}",
            requirement=requirement_id, dimension=dimension_id)
    return sum(values) / len(values)


def group_weight(dimension_id: str,
                 stakeholders: Sequence[Stakeholder]) -> float:
    """Expertise-scaled mean of stakeholder weights for one dimension.

    Divides by the group size, not by total expertise, so a low-expertise
    group deflates the dimension globally.
    """
    if not stakeholders:
        raise EmptyGroup("group weight needs at least one stakeholder",
                         dimension=dimension_id)
    total = 0.0
    for s in stakeholders:
        if dimension_id not in s.dimension_weights:
            raise DimensionMismatch(
                f"stakeholder {s.id!r} has no weight for dimension {dimension_id!r}",
                stakeholder=s.id, dimension=dimension_id)
        total += s.dimension_weights[dimension_id] * s.expertise_for(dimension_id)
    return total / len(stakeholders)


def utility_group(requirement_id: str, dimension_ids: Sequence[str],
                  stakeholders: Sequence[Stakeholder],
                  evals: EvaluationSet) -> float:
    return sum(
        group_contribution(evals, requirement_id, d, stakeholders)
        * group_weight(d, stakeholders)
        for d in dimension_ids)


def rank(utilities: Mapping[str, float], tie_tol: float = TIE_TOL) -> Ranking:
    """Competition ranking by descending utility.

    Utilities within ``tie_tol`` of the tie group's leader share a rank;
    k items tied at rank n push the next item to rank n + k. Tied items
    are listed in ascending id.
    """
    if not utilities:
        raise EmptyInput("cannot rank an empty utility map")
    by_utility = sorted(utilities, key=lambda rid: (-utilities[rid], rid))
    groups: list[list[str]] = []
    group_leader = None
    for rid in by_utility:
        if group_leader is None or group_leader - utilities[rid] > tie_tol:
            group_leader = utilities[rid]
            groups.append([rid])
        else:
            groups[-1].append(rid)
    order: list[str] = []
    ranks: dict[str, int] = {}
    for group in groups:
        group_rank = len(order) + 1
        for rid in sorted(group):
            ranks[rid] = group_rank
            order.append(rid)
    return Ranking(utilities=dict(utilities), ranks=ranks, order=tuple(order))


@dataclass(frozen=True)
class UtilityReport:
    """Full scoring breakdown: per-requirement per-dimension contributions,
    the aggregated dimension weights, utilities and the resulting ranking."""

    contributions: Mapping[str, Mapping[str, float]]
    weights: Mapping[str, float]
    utilities: Mapping[str, float]
    ranking: Ranking


def single_report(project: Project, stakeholder_id: str) -> UtilityReport:
    """Single-user scoring: one stakeholder's evaluations and weights."""
    s = project.stakeholder(stakeholder_id)
    if s is None:
        raise EmptyGroup(f"unknown stakeholder {stakeholder_id!r}",
                         stakeholder=stakeholder_id)
    dims = [d.id for d in project.manual_dimensions()]
    weights = {}
    for d in dims:
        if d not in s.dimension_weights:
            raise DimensionMismatch(
                f"stakeholder {stakeholder_id!r} has no weight for dimension {d!r}",
                stakeholder=stakeholder_id, dimension=d)
        weights[d] = s.dimension_weights[d]
    contributions = {}
    for r in project.requirements:
        row = {}
        for d in dims:
            v = project.evaluations.value(d, r.id, s.id)
            if v is None:
                raise NoEvaluation(
                    f"stakeholder {stakeholder_id!r} did not evaluate "
                    f"requirement {r.id!r} on dimension {d!r}",
                    requirement=r.id, dimension=d, stakeholder=stakeholder_id)
            row[d] = v
        contributions[r.id] = row
    utilities = {rid: utility_single(row, weights)
                 for rid, row in contributions.items()}
    return UtilityReport(contributions=contributions, weights=weights,
                         utilities=utilities, ranking=rank(utilities))


def group_report(project: Project) -> UtilityReport:
    """Group scoring over all stakeholders and manual dimensions."""
    stakeholders = list(project.stakeholders)
    dims = [d.id for d in project.manual_dimensions()]
    weights = {d: group_weight(d, stakeholders) for d in dims}
    contributions = {
        r.id: {d: group_contribution(project.evaluations, r.id, d, stakeholders)
               for d in dims}
        for r in project.requirements
    }
    utilities = {
        rid: sum(row[d] * weights[d] for d in dims)
        for rid, row in contributions.items()
    }
    return UtilityReport(contributions=contributions, weights=weights,
                         utilities=utilities, ranking=rank(utilities))
