"""Mode dispatch and dependency workflows shared by the CLI and HTTP API."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import deps, oss, utility
from .errors import EmptyGroup, EmptyInput, InvalidDiagnosis, ReqPrioError
from .model import Prioritization, Project
from .utility import UtilityReport

MODES = ("single", "group", "oss")


def compute_report(project: Project, mode: str,
                   stakeholder_id: Optional[str] = None) -> UtilityReport:
    """Utility report for one prioritization mode.

    ``single`` uses one stakeholder's own evaluations and weights (the
    project's only stakeholder when unambiguous); ``group`` aggregates
    over all stakeholders; ``oss`` ranks by tracker metrics scaled by
    the stakeholder's per-requirement weight.
    """
    if not project.requirements:
        raise EmptyInput("no requirements")
    if mode == "group":
        return utility.group_report(project)
    if mode in ("single", "oss"):
        if stakeholder_id is None:
            if len(project.stakeholders) == 1:
                stakeholder_id = project.stakeholders[0].id
            else:
                raise EmptyGroup(
                    f"mode {mode!r} needs --stakeholder when the project "
                    f"has {len(project.stakeholders)} stakeholders")
        if mode == "single":
            return utility.single_report(project, stakeholder_id)
        return oss.recommend(project, stakeholder_id)
    raise ReqPrioError(f"unknown mode {mode!r}; expected one of {MODES}")


def ordering_problem(project: Project, mode: str,
                     stakeholder_id: Optional[str] = None,
                     ) -> tuple[deps.OrderingProblem, UtilityReport]:
    report = compute_report(project, mode, stakeholder_id)
    problem = deps.problem_from_ranking(report.ranking, project.dependencies)
    return problem, report


@dataclass(frozen=True)
class DiagnosisReport:
    consistent: bool
    conflicts: list[list[str]]
    diagnoses: list[list[str]]
    repair: Optional[deps.Repair]


def diagnose_project(project: Project, mode: str,
                     stakeholder_id: Optional[str] = None,
                     max_diagnoses: Optional[int] = None) -> DiagnosisReport:
    """Consistency status, minimal conflicts and diagnoses, plus the
    repair for the smallest diagnosis."""
    problem, report = ordering_problem(project, mode, stakeholder_id)
    deps.check_dependencies_acyclic(problem)
    if deps.is_consistent(problem):
        return DiagnosisReport(True, [], [], None)
    conflicts = sorted(
        (sorted(c.label for c in conflict)
         for conflict in deps.minimal_conflicts(problem)),
        key=lambda labels: (len(labels), labels))
    found = deps.diagnoses(problem, k=max_diagnoses)
    first_repair = deps.repair(problem, found[0], report.utilities)
    return DiagnosisReport(False, conflicts,
                           [d.labels() for d in found], first_repair)


def apply_repair(project: Project, mode: str, diagnosis_labels: list[str],
                 stakeholder_id: Optional[str] = None,
                 note: str = "") -> tuple[Project, deps.Repair]:
    """Apply the diagnosis named by its constraint labels; returns the
    project with the repaired order as its published prioritization."""
    problem, report = ordering_problem(project, mode, stakeholder_id)
    constraints = []
    for label in diagnosis_labels:
        c = problem.constraint_by_label(label)
        if c is None:
            raise InvalidDiagnosis(f"no prioritization constraint {label!r}",
                                   label=label)
        constraints.append(c)
    result = deps.repair(problem, deps.Diagnosis(frozenset(constraints)),
                         report.utilities)
    note = note or ("repair: deleted {" + ", ".join(sorted(diagnosis_labels))
                    + "} from the " + mode + " prioritization")
    from dataclasses import replace
    repaired = replace(project, prioritization=Prioritization(
        order=result.replacement_order, note=note))
    return repaired, result
