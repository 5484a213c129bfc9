"""File-backed project store: one JSON document per project.

Writes go to a temp file in the same directory and are renamed into
place, so a crash mid-write never corrupts an existing document. Writes
to one project are serialized by a per-project lock; each successful
write bumps a monotonically increasing version that writers must echo.
"""

from __future__ import annotations

import json
import os
import re
import threading
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from .errors import (ParseError, ProjectNotFound, ValidationFailed,
                     VersionConflict)
from .model import Project, project_from_dict, project_to_dict, validate

_ID_RE = re.compile(r"^[A-Za-z0-9][A-Za-z0-9._-]*$")


@dataclass(frozen=True)
class StoredProject:
    id: str
    version: int
    project: Project


class ProjectStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self._locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    def _lock(self, project_id: str) -> threading.Lock:
        with self._locks_guard:
            return self._locks.setdefault(project_id, threading.Lock())

    def _path(self, project_id: str) -> Path:
        if not _ID_RE.match(project_id):
            raise ParseError(f"invalid project id {project_id!r}", field="id")
        return self.root / f"{project_id}.json"

    def list_ids(self) -> list[str]:
        return sorted(p.stem for p in self.root.glob("*.json"))

    def exists(self, project_id: str) -> bool:
        return self._path(project_id).exists()

    def load(self, project_id: str) -> StoredProject:
        path = self._path(project_id)
        if not path.exists():
            raise ProjectNotFound(f"no project {project_id!r}",
                                  project=project_id)
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        project = project_from_dict(doc)
        violations = validate(project)
        if violations:
            raise ValidationFailed(violations)
        return StoredProject(id=project_id,
                             version=int(doc.get("version", 1)),
                             project=project)

    def save(self, project_id: str, project: Project,
             expected_version: Optional[int] = None,
             create: bool = False) -> StoredProject:
        """Persist after validation; raises VersionConflict when the
        caller's version is stale. Returns the new stored state.

        When the document content is unchanged, the write is skipped and
        the current version is returned, making saves idempotent.
        """
        violations = validate(project)
        if violations:
            raise ValidationFailed(violations)
        path = self._path(project_id)
        with self._lock(project_id):
            current_version = 0
            current_doc = None
            if path.exists():
                if create:
                    raise VersionConflict(f"project {project_id!r} already exists",
                                          project=project_id)
                with open(path, encoding="utf-8") as fh:
                    current_doc = json.load(fh)
                current_version = int(current_doc.get("version", 1))
            elif not create and expected_version is not None:
                raise ProjectNotFound(f"no project {project_id!r}",
                                      project=project_id)
            if expected_version is not None and expected_version != current_version:
                raise VersionConflict(
                    f"project {project_id!r} is at version {current_version}, "
                    f"write expected {expected_version}",
                    project=project_id, current_version=current_version,
                    expected_version=expected_version)
            body = project_to_dict(project)
            if current_doc is not None and \
                    {k: v for k, v in current_doc.items() if k != "version"} == body:
                return StoredProject(project_id, current_version, project)
            new_version = current_version + 1
            doc = {"version": new_version, **body}
            self._write_atomic(path, doc)
            return StoredProject(project_id, new_version, project)

    def delete(self, project_id: str) -> None:
        path = self._path(project_id)
        with self._lock(project_id):
            if not path.exists():
                raise ProjectNotFound(f"no project {project_id!r}",
                                      project=project_id)
            path.unlink()

    def _write_atomic(self, path: Path, doc: dict) -> None:
        tmp = path.with_name(path.name + ".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2, ensure_ascii=False)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
