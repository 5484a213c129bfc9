"""Exception types shared across the package.

Every error carries a machine-readable ``code`` and an optional context
dict so CLI and HTTP layers can render structured diagnostics.
"""

from __future__ import annotations


class ReqPrioError(Exception):
    """Base class for all domain errors."""

    code = "error"

    def __init__(self, message: str, **context):
        super().__init__(message)
        self.message = message
        self.context = context

    def to_dict(self) -> dict:
        body = {"code": self.code, "message": self.message}
        if self.context:
            body["context"] = self.context
        return body


class DimensionMismatch(ReqPrioError):
    """Contribution and weight maps do not cover the same dimensions."""

    code = "dimension_mismatch"


class NoEvaluation(ReqPrioError):
    """No stakeholder in the group evaluated a (dimension, requirement) pair."""

    code = "no_evaluation"


class EmptyGroup(ReqPrioError):
    code = "empty_group"


class EmptyInput(ReqPrioError):
    code = "empty_input"


class MissingMetric(ReqPrioError):
    """A requirement lacks a count for a metric dimension."""

    code = "missing_metric"


class CyclicDependencies(ReqPrioError):
    """The fixed dependency set itself contains a cycle."""

    code = "cyclic_dependencies"

    def __init__(self, message: str, cycle=None, **context):
        super().__init__(message, **context)
        self.cycle = list(cycle) if cycle else []

    def to_dict(self) -> dict:
        body = super().to_dict()
        body["cycle"] = self.cycle
        return body


class InvalidDiagnosis(ReqPrioError):
    """The proposed deletion set does not restore consistency or is unknown."""

    code = "invalid_diagnosis"


class ParseError(ReqPrioError):
    """Malformed input document; context names the offending field."""

    code = "parse_error"


class ValidationFailed(ReqPrioError):
    """A project document violates model invariants."""

    code = "validation_failed"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__(
            "; ".join(v.message for v in self.violations) or "invalid project"
        )

    def to_dict(self) -> dict:
        return {
            "code": self.code,
            "message": self.message,
            "violations": [v.to_dict() for v in self.violations],
        }


class ProjectNotFound(ReqPrioError):
    code = "project_not_found"


class VersionConflict(ReqPrioError):
    """Optimistic-concurrency failure: the caller echoed a stale version."""

    code = "version_conflict"
