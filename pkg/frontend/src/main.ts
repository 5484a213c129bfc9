/** Application wiring: project picker, evaluation grid, live ranking
 * panel and the conflict/repair dialog. */

import { ApiError, ReqPrioClient } from "./api.js";
import {
  rankingChain,
  renderConflictDialog,
  renderRepairPreview,
  repairPreviewView,
} from "./conflicts.js";
import { prepareSubmission, validateWeights } from "./grid.js";
import { renderRanking } from "./ranking.js";
import { initialState, recordEdit, recordRanking, SessionState } from "./state.js";
import type { Mode, ProjectResponse } from "./types.js";

const baseUrl =
  new URLSearchParams(window.location.search).get("api") ??
  "http://127.0.0.1:8000";
const client = new ReqPrioClient(baseUrl);

let state: SessionState = initialState();
let project: ProjectResponse | null = null;

const el = (id: string) => document.getElementById(id) as HTMLElement;

function setStatus(text: string, kind: "ok" | "warn" | "error" = "ok"): void {
  const status = el("status");
  status.textContent = text;
  status.className = `status ${kind}`;
}

async function refreshRanking(): Promise<void> {
  if (!state.projectId) return;
  try {
    const ranking = await client.getRanking(
      state.projectId,
      state.mode,
      state.stakeholder ?? undefined,
    );
    state = recordRanking(state, ranking);
    renderRanking(el("ranking"), ranking.ranking);
    el("ranking").classList.remove("stale");
    await refreshConsistency();
  } catch (err) {
    el("ranking").classList.add("stale");
    setStatus(err instanceof ApiError ? err.message : "fetch failed; retry", "error");
  }
}

async function refreshConsistency(): Promise<void> {
  if (!state.projectId || !state.lastRanking || !project) return;
  const status = await client.getConsistency(
    state.projectId,
    state.mode,
    state.stakeholder ?? undefined,
  );
  if (status.consistent) {
    setStatus("consistent", "ok");
    el("conflicts").textContent = "";
    el("preview").textContent = "";
    return;
  }
  setStatus("prioritization violates dependencies", "warn");
  const diagnoses = await client.getDiagnoses(
    state.projectId,
    state.mode,
    state.stakeholder ?? undefined,
  );
  state = { ...state, pendingDiagnoses: diagnoses.diagnoses };
  const lastRanking = state.lastRanking;
  if (!lastRanking) return;
  const chain = rankingChain(lastRanking.ranking);
  renderConflictDialog(
    el("conflicts"),
    status.conflicts,
    diagnoses.diagnoses,
    chain,
    project.project.dependencies,
  );
  for (const li of el("conflicts").querySelectorAll<HTMLElement>(".diagnosis")) {
    li.addEventListener("click", () => previewDiagnosis(li.dataset.diagnosis!.split(",")));
  }
}

async function previewDiagnosis(diagnosis: string[]): Promise<void> {
  if (!state.projectId || !state.lastRanking) return;
  const preview = await client.previewRepair(
    state.projectId,
    state.mode,
    diagnosis,
    state.stakeholder ?? undefined,
  );
  const current = state.lastRanking.ranking.map((r) => r.id);
  renderRepairPreview(el("preview"), repairPreviewView(current, preview.replacement_order));
  const accept = document.createElement("button");
  accept.id = "accept-repair";
  accept.textContent = "accept repair";
  accept.addEventListener("click", () => acceptRepair(diagnosis));
  el("preview").append(accept);
}

async function acceptRepair(diagnosis: string[]): Promise<void> {
  if (!state.projectId) return;
  try {
    await client.applyRepair(
      state.projectId,
      state.version,
      state.mode,
      diagnosis,
      state.stakeholder ?? undefined,
    );
    await loadProject(state.projectId);
    setStatus("repair applied", "ok");
  } catch (err) {
    if (err instanceof ApiError && err.status === 409) {
      setStatus("project changed elsewhere; reloading", "warn");
      await loadProject(state.projectId);
    } else {
      throw err;
    }
  }
}

function renderGrid(): void {
  if (!project || !state.stakeholder) return;
  const grid = el("grid");
  grid.textContent = "";
  const stakeholder = project.project.stakeholders.find(
    (s) => s.id === state.stakeholder,
  );
  if (!stakeholder) return;
  const dims = project.project.dimensions.filter((d) => d.source === "MANUAL");
  const table = document.createElement("table");
  const head = table.insertRow();
  head.insertCell().textContent = "";
  for (const d of dims) head.insertCell().textContent = d.id;
  for (const r of project.project.requirements) {
    const row = table.insertRow();
    row.insertCell().textContent = r.id;
    for (const d of dims) {
      const entry = project.project.evaluations.find(
        (e) =>
          e.dimension === d.id &&
          e.requirement === r.id &&
          e.stakeholder === state.stakeholder,
      );
      const input = document.createElement("input");
      input.value = entry ? String(entry.value) : "";
      input.dataset.dimension = d.id;
      input.dataset.requirement = r.id;
      input.addEventListener("input", () => {
        state = recordEdit(state, {
          dimension: d.id,
          requirement: r.id,
          raw: input.value,
        });
        el("ranking").classList.add("stale");
      });
      row.insertCell().append(input);
    }
  }
  const weightRow = table.insertRow();
  weightRow.insertCell().textContent = "weight";
  for (const d of dims) {
    const input = document.createElement("input");
    input.className = "weight-input";
    input.dataset.dimension = d.id;
    input.value = String(stakeholder.dimension_weights[d.id] ?? 0);
    input.addEventListener("input", updateWeightIndicator);
    weightRow.insertCell().append(input);
  }
  grid.append(table);
  updateWeightIndicator();
}

function currentWeights(): Record<string, number> {
  const weights: Record<string, number> = {};
  for (const input of el("grid").querySelectorAll<HTMLInputElement>(".weight-input")) {
    weights[input.dataset.dimension!] = Number(input.value);
  }
  return weights;
}

function updateWeightIndicator(): void {
  const check = validateWeights(currentWeights());
  el("weight-sum").textContent = check.indicator;
  (el("submit") as HTMLButtonElement).disabled = !check.ok;
}

async function submitEdits(): Promise<void> {
  if (!state.projectId || !state.stakeholder) return;
  const submission = prepareSubmission(state.pendingEdits, currentWeights());
  if (!submission.ok) {
    setStatus(submission.errors.join("; "), "error");
    return;
  }
  try {
    await client.putEvaluations(
      state.projectId,
      state.stakeholder,
      state.version,
      submission.evaluations,
      currentWeights(),
    );
    await loadProject(state.projectId);
  } catch (err) {
    if (err instanceof ApiError) {
      setStatus(
        err.body.violations?.map((v) => `${v.path}: ${v.message}`).join("; ") ??
          err.message,
        "error",
      );
      if (err.status === 409) await loadProject(state.projectId);
    } else {
      throw err;
    }
  }
}

async function loadProject(id: string): Promise<void> {
  project = await client.getProject(id);
  state = {
    ...state,
    projectId: id,
    version: project.version,
    stakeholder:
      state.stakeholder ?? project.project.stakeholders[0]?.id ?? null,
  };
  renderGrid();
  await refreshRanking();
}

export async function boot(): Promise<void> {
  const listing = await client.listProjects();
  const picker = el("project-picker") as HTMLSelectElement;
  picker.textContent = "";
  for (const p of listing.projects) {
    const option = document.createElement("option");
    option.value = p.id;
    option.textContent = `${p.id} (v${p.version})`;
    picker.append(option);
  }
  picker.addEventListener("change", () => loadProject(picker.value));
  (el("mode-picker") as HTMLSelectElement).addEventListener("change", (ev) => {
    state = { ...state, mode: (ev.target as HTMLSelectElement).value as Mode };
    void refreshRanking();
  });
  el("submit").addEventListener("click", () => void submitEdits());
  if (listing.projects.length > 0) {
    await loadProject(listing.projects[0].id);
  }
}

if (typeof document !== "undefined" && document.getElementById("project-picker")) {
  void boot();
}
