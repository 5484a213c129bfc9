/** Thin fetch client for the reqprio service. Every number shown in the
 * UI originates from one of these responses; the client never computes
 * utilities itself. */

import type {
  ApiErrorBody,
  ConsistencyResponse,
  DiagnosesResponse,
  Mode,
  ProjectDocument,
  ProjectResponse,
  RankingResponse,
  RepairResponse,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly body: ApiErrorBody,
  ) {
    super(body.message ?? `HTTP ${status}`);
  }
}

async function request<T>(
  baseUrl: string,
  path: string,
  init?: RequestInit,
): Promise<T> {
  const resp = await fetch(baseUrl + path, {
    headers: { "content-type": "application/json" },
    ...init,
  });
  if (!resp.ok) {
    let body: ApiErrorBody;
    try {
      body = (await resp.json()) as ApiErrorBody;
    } catch {
      body = { code: "http_error", message: `HTTP ${resp.status}` };
    }
    throw new ApiError(resp.status, body);
  }
  return (await resp.json()) as T;
}

export class ReqPrioClient {
  constructor(private readonly baseUrl: string) {}

  listProjects(): Promise<{ projects: Array<{ id: string; version: number }> }> {
    return request(this.baseUrl, "/projects");
  }

  getProject(id: string): Promise<ProjectResponse> {
    return request(this.baseUrl, `/projects/${id}`);
  }

  createProject(id: string, project: ProjectDocument): Promise<{ id: string; version: number }> {
    return request(this.baseUrl, "/projects", {
      method: "POST",
      body: JSON.stringify({ id, project }),
    });
  }

  getRanking(id: string, mode: Mode, stakeholder?: string): Promise<RankingResponse> {
    const params = new URLSearchParams({ mode });
    if (stakeholder) params.set("stakeholder", stakeholder);
    return request(this.baseUrl, `/projects/${id}/ranking?${params}`);
  }

  getConsistency(id: string, mode: Mode, stakeholder?: string): Promise<ConsistencyResponse> {
    const params = new URLSearchParams({ mode });
    if (stakeholder) params.set("stakeholder", stakeholder);
    return request(this.baseUrl, `/projects/${id}/consistency?${params}`);
  }

  getDiagnoses(id: string, mode: Mode, stakeholder?: string, page = 1): Promise<DiagnosesResponse> {
    const params = new URLSearchParams({ mode, page: String(page) });
    if (stakeholder) params.set("stakeholder", stakeholder);
    return request(this.baseUrl, `/projects/${id}/diagnoses?${params}`);
  }

  previewRepair(id: string, mode: Mode, diagnosis: string[], stakeholder?: string): Promise<RepairResponse> {
    return request(this.baseUrl, `/projects/${id}/repair/preview`, {
      method: "POST",
      body: JSON.stringify({ mode, diagnosis, stakeholder }),
    });
  }

  applyRepair(
    id: string,
    version: number,
    mode: Mode,
    diagnosis: string[],
    stakeholder?: string,
  ): Promise<RepairResponse> {
    return request(this.baseUrl, `/projects/${id}/repair`, {
      method: "POST",
      body: JSON.stringify({ version, mode, diagnosis, stakeholder }),
    });
  }

  putEvaluations(
    id: string,
    stakeholder: string,
    version: number,
    evaluations: Array<{ dimension: string; requirement: string; value: number | null }>,
    dimensionWeights?: Record<string, number>,
  ): Promise<{ id: string; version: number }> {
    const body: Record<string, unknown> = { version, evaluations };
    if (dimensionWeights) body.dimension_weights = dimensionWeights;
    return request(this.baseUrl, `/projects/${id}/stakeholders/${stakeholder}/evaluations`, {
      method: "PUT",
      body: JSON.stringify(body),
    });
  }
}
