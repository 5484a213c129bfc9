/** Wire types mirroring the reqprio HTTP API (see ../docs/api.md). */

export type Mode = "single" | "group" | "oss";

export interface RankingRow {
  id: string;
  utility: number;
  rank: number;
}

export interface RankingResponse {
  id: string;
  version: number;
  mode: Mode;
  ranking: RankingRow[];
  weights: Record<string, number>;
  contributions: Record<string, Record<string, number>>;
}

export interface ProjectDocument {
  requirements: Array<{
    id: string;
    title: string;
    description: string;
    keywords: string[];
    metrics: Record<string, number>;
    component_tags: string[];
  }>;
  stakeholders: Array<{
    id: string;
    name: string;
    profile_keywords: string[];
    dimension_weights: Record<string, number>;
    dimension_expertise: Record<string, number>;
    requirement_weights: Record<string, number>;
  }>;
  dimensions: Array<{ id: string; name: string; source: "MANUAL" | "METRIC" }>;
  evaluations: Array<{
    dimension: string;
    requirement: string;
    stakeholder: string;
    value: number;
  }>;
  dependencies: Array<{ before: string; after: string; label: string }>;
  prioritization?: { order: string[]; note: string };
}

export interface ProjectResponse {
  id: string;
  version: number;
  project: ProjectDocument;
}

export interface ConsistencyResponse {
  id: string;
  version: number;
  consistent: boolean;
  conflicts: string[][];
}

export interface DiagnosesResponse {
  id: string;
  version: number;
  consistent: boolean;
  total: number;
  page: number;
  per_page: number;
  diagnoses: string[][];
}

export interface RepairResponse {
  id: string;
  version: number;
  replacement_order: string[];
  flipped: Array<{ before: string; after: string; label: string }>;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  violations?: Array<{ code: string; message: string; path: string }>;
}
