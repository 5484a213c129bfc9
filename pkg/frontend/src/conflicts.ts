/** Conflict/repair dialog logic: plain-language conflict descriptions
 * and side-by-side repair previews. */

import type { ProjectDocument, RankingRow } from "./types.js";

export interface ChainConstraint {
  label: string;
  before: string;
  after: string;
}

/** Reconstruct the ranking-derived chain p1..p(n-1) so conflict labels
 * can be translated into ordering statements. Mirrors the server's
 * chain derivation but is used for wording only. */
export function rankingChain(rows: RankingRow[]): ChainConstraint[] {
  const chain: ChainConstraint[] = [];
  for (let i = 0; i + 1 < rows.length; i++) {
    chain.push({
      label: `p${i + 1}`,
      before: rows[i].id,
      after: rows[i + 1].id,
    });
  }
  return chain;
}

/** "your order puts r2 before r3, but r3 must precede r2" */
export function describeConflict(
  labels: string[],
  chain: ChainConstraint[],
  dependencies: ProjectDocument["dependencies"],
): string {
  const byLabel = new Map(chain.map((c) => [c.label, c]));
  const statements: string[] = [];
  const opposing: string[] = [];
  for (const label of labels) {
    const c = byLabel.get(label);
    if (!c) {
      statements.push(label);
      continue;
    }
    statements.push(`your order puts ${c.before} before ${c.after}`);
    for (const dep of dependencies) {
      if (dep.before === c.after || dep.after === c.before) {
        opposing.push(`${dep.before} must precede ${dep.after}`);
      }
    }
  }
  const unique = [...new Set(opposing)];
  const head = statements.join(" and ");
  return unique.length > 0 ? `${head}, but ${unique.join(" and ")}` : head;
}

export interface RepairPreviewView {
  current: string[];
  replacement: string[];
  /** Requirements whose position changed. */
  moved: string[];
}

export function repairPreviewView(
  currentOrder: string[],
  replacementOrder: string[],
): RepairPreviewView {
  const moved = replacementOrder.filter((id, i) => currentOrder[i] !== id);
  return { current: currentOrder, replacement: replacementOrder, moved };
}

export function renderConflictDialog(
  container: HTMLElement,
  conflicts: string[][],
  diagnoses: string[][],
  chain: ChainConstraint[],
  dependencies: ProjectDocument["dependencies"],
): void {
  container.textContent = "";
  const conflictList = document.createElement("ul");
  conflictList.className = "conflicts";
  for (const labels of conflicts) {
    const li = document.createElement("li");
    li.className = "conflict";
    li.textContent = describeConflict(labels, chain, dependencies);
    conflictList.append(li);
  }
  const diagnosisList = document.createElement("ol");
  diagnosisList.className = "diagnoses";
  for (const labels of diagnoses) {
    const li = document.createElement("li");
    li.className = "diagnosis";
    li.dataset.diagnosis = labels.join(",");
    li.textContent = `delete {${labels.join(", ")}}`;
    diagnosisList.append(li);
  }
  container.append(conflictList, diagnosisList);
}

export function renderRepairPreview(
  container: HTMLElement,
  view: RepairPreviewView,
): void {
  container.textContent = "";
  const table = document.createElement("table");
  table.className = "repair-preview";
  const header = table.insertRow();
  header.insertCell().textContent = "current";
  header.insertCell().textContent = "proposed";
  const n = Math.max(view.current.length, view.replacement.length);
  for (let i = 0; i < n; i++) {
    const row = table.insertRow();
    row.insertCell().textContent = view.current[i] ?? "";
    const proposed = row.insertCell();
    proposed.textContent = view.replacement[i] ?? "";
    if (view.moved.includes(view.replacement[i])) {
      proposed.className = "moved";
    }
  }
  container.append(table);
}
