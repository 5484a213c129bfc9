"""Utility-based requirements prioritization with dependency-aware repair."""

from .model import (ConstraintKind, DimensionSource, EvaluationSet,
                    InterestDimension, PrecedenceConstraint, Prioritization,
                    Project, Ranking, Requirement, Stakeholder, Violation,
                    dump_project, load_project, normalize_weights,
                    project_from_dict, project_to_dict, validate,
                    validate_project)
from .utility import (UtilityReport, group_contribution, group_report,
                      group_weight, rank, single_report, utility_group,
                      utility_single)
from .oss import (METRIC_DIMENSIONS, ExpertiseScore, expertise,
                  extract_keywords, ingest_tracker_export,
                  metric_contribution, personal_utility, recommend)
from .deps import (ConflictSet, Diagnosis, OrderingProblem, Repair,
                   blocking_factor, diagnoses, is_consistent,
                   minimal_conflicts, problem_from_ranking,
                   ranking_to_constraints, repair)
from .store import ProjectStore, StoredProject

__version__ = "0.1.0"
