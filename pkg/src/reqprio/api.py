"""HTTP API over the project store and prioritization engine.

JSON over HTTP; see docs/api.md for the endpoint reference. Domain
errors map to 400 (invalid input), 404 (unknown ids) and 409 (stale
version); every error body carries a machine-readable ``code`` and a
human ``message``.
"""

from __future__ import annotations

from typing import Optional

from fastapi import Body, FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import service
from .errors import (ParseError, ProjectNotFound, ReqPrioError,
                     ValidationFailed, VersionConflict)
from .model import project_from_dict, project_to_dict
from .store import ProjectStore

_STATUS = {
    ProjectNotFound.code: 404,
    VersionConflict.code: 409,
}


def _ranking_body(report) -> dict:
    return {
        "ranking": [
            {"id": rid, "utility": report.utilities[rid],
             "rank": report.ranking.ranks[rid]}
            for rid in report.ranking.order
        ],
        "weights": dict(report.weights),
        "contributions": {rid: dict(row)
                          for rid, row in report.contributions.items()},
    }


def create_app(store_dir) -> FastAPI:
    store = ProjectStore(store_dir)
    app = FastAPI(title="reqprio", version="0.1.0")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(ReqPrioError)
    async def domain_error(request: Request, err: ReqPrioError):
        return JSONResponse(status_code=_STATUS.get(err.code, 400),
                            content=err.to_dict())

    def _project_payload(body: dict):
        if "project" not in body:
            raise ParseError("request body needs a 'project' field",
                             field="project")
        return project_from_dict(body["project"])

    @app.get("/projects")
    def list_projects():
        out = []
        for pid in store.list_ids():
            stored = store.load(pid)
            out.append({"id": pid, "version": stored.version})
        return {"projects": out}

    @app.post("/projects", status_code=201)
    def create_project(body: dict = Body(...)):
        pid = body.get("id")
        if not pid:
            raise ParseError("request body needs an 'id' field", field="id")
        stored = store.save(pid, _project_payload(body), create=True)
        return {"id": stored.id, "version": stored.version}

    @app.get("/projects/{pid}")
    def fetch_project(pid: str):
        stored = store.load(pid)
        return {"id": stored.id, "version": stored.version,
                "project": project_to_dict(stored.project)}

    @app.put("/projects/{pid}")
    def update_project(pid: str, body: dict = Body(...)):
        version = _required_version(body)
        stored = store.save(pid, _project_payload(body),
                            expected_version=version)
        return {"id": stored.id, "version": stored.version}

    def _required_version(body: dict) -> int:
        if "version" not in body:
            raise ParseError("request body must echo the project 'version'",
                             field="version")
        return int(body["version"])

    @app.put("/projects/{pid}/stakeholders/{sid}/evaluations")
    def put_evaluations(pid: str, sid: str, body: dict = Body(...)):
        """Partial update of one stakeholder's evaluations and weights.

        Evaluation entries with a null value are removed; omitted entries
        are left untouched.
        """
        version = _required_version(body)
        stored = store.load(pid)
        project = stored.project
        stakeholder = project.stakeholder(sid)
        if stakeholder is None:
            raise ProjectNotFound(f"no stakeholder {sid!r} in project {pid!r}",
                                  stakeholder=sid)
        updates = {}
        for i, e in enumerate(body.get("evaluations", [])):
            try:
                key = (str(e["dimension"]), str(e["requirement"]), sid)
            except (TypeError, KeyError) as exc:
                raise ParseError(
                    f"evaluations[{i}] needs 'dimension' and 'requirement'",
                    field=f"evaluations[{i}]") from exc
            value = e.get("value")
            updates[key] = None if value is None else float(value)
        from dataclasses import replace
        project = replace(project,
                          evaluations=project.evaluations.merged_with(updates))
        if "dimension_weights" in body:
            new_weights = {k: float(v)
                           for k, v in body["dimension_weights"].items()}
            project = replace(project, stakeholders=tuple(
                replace(s, dimension_weights=new_weights) if s.id == sid else s
                for s in project.stakeholders))
        stored = store.save(pid, project, expected_version=version)
        return {"id": stored.id, "version": stored.version}

    @app.get("/projects/{pid}/ranking")
    def ranking(pid: str, mode: str = "single",
                stakeholder: Optional[str] = None):
        stored = store.load(pid)
        report = service.compute_report(stored.project, mode, stakeholder)
        return {"id": pid, "version": stored.version, "mode": mode,
                **_ranking_body(report)}

    @app.get("/projects/{pid}/consistency")
    def consistency(pid: str, mode: str = "single",
                    stakeholder: Optional[str] = None):
        stored = store.load(pid)
        diag = service.diagnose_project(stored.project, mode, stakeholder)
        return {"id": pid, "version": stored.version,
                "consistent": diag.consistent,
                "conflicts": diag.conflicts}

    @app.get("/projects/{pid}/diagnoses")
    def list_diagnoses(pid: str, mode: str = "single",
                       stakeholder: Optional[str] = None,
                       page: int = 1, per_page: int = 20):
        stored = store.load(pid)
        diag = service.diagnose_project(stored.project, mode, stakeholder)
        start = (max(page, 1) - 1) * per_page
        return {"id": pid, "version": stored.version,
                "consistent": diag.consistent,
                "total": len(diag.diagnoses),
                "page": page, "per_page": per_page,
                "diagnoses": diag.diagnoses[start:start + per_page]}

    @app.post("/projects/{pid}/repair/preview")
    def preview_repair(pid: str, body: dict = Body(...)):
        """Read-only: the replacement order a diagnosis would produce."""
        stored = store.load(pid)
        _, result = service.apply_repair(
            stored.project, body.get("mode", "single"),
            list(body.get("diagnosis", [])), body.get("stakeholder"))
        return {"id": pid, "version": stored.version,
                "diagnosis": sorted(body.get("diagnosis", [])),
                "replacement_order": list(result.replacement_order),
                "flipped": [{"before": c.before, "after": c.after,
                             "label": c.label}
                            for c in result.flipped_constraints]}

    @app.post("/projects/{pid}/repair")
    def apply_repair(pid: str, body: dict = Body(...)):
        version = _required_version(body)
        stored = store.load(pid)
        repaired, result = service.apply_repair(
            stored.project, body.get("mode", "single"),
            list(body.get("diagnosis", [])), body.get("stakeholder"),
            note=body.get("note", ""))
        saved = store.save(pid, repaired, expected_version=version)
        return {"id": pid, "version": saved.version,
                "replacement_order": list(result.replacement_order),
                "flipped": [{"before": c.before, "after": c.after,
                             "label": c.label}
                            for c in result.flipped_constraints]}

    return app
