/** Evaluation grid logic: client-side validation of cell edits and
 * dimension weights before anything is submitted to the server.
 *
 * A cell holds the raw input string; an empty string means "no
 * evaluation given" and is submitted as a removal (null). */

export const WEIGHT_SUM_TOLERANCE = 1e-9;

export interface CellEdit {
  dimension: string;
  requirement: string;
  /** Raw input text; "" clears the evaluation. */
  raw: string;
}

export interface CellValidation {
  ok: boolean;
  /** null = cleared cell; number = parsed value. */
  value: number | null;
  error?: string;
}

export function validateCell(raw: string): CellValidation {
  const trimmed = raw.trim();
  if (trimmed === "") {
    return { ok: true, value: null };
  }
  const value = Number(trimmed);
  if (!Number.isFinite(value)) {
    return { ok: false, value: null, error: "not a number" };
  }
  if (value < 0) {
    return { ok: false, value: null, error: "must be ≥ 0" };
  }
  return { ok: true, value };
}

export interface WeightValidation {
  ok: boolean;
  sum: number;
  /** Human-readable live sum indicator, e.g. "sum 1.10 ≠ 1". */
  indicator: string;
  errors: string[];
}

export function validateWeights(weights: Record<string, number>): WeightValidation {
  const errors: string[] = [];
  let sum = 0;
  for (const [dimension, value] of Object.entries(weights)) {
    if (!Number.isFinite(value)) {
      errors.push(`${dimension}: not a number`);
      continue;
    }
    if (value < 0 || value > 1) {
      errors.push(`${dimension}: must be in [0, 1]`);
    }
    sum += value;
  }
  const sumOk = Math.abs(sum - 1) <= WEIGHT_SUM_TOLERANCE;
  if (!sumOk) {
    errors.push(`weights sum to ${sum.toFixed(2)}, expected 1`);
  }
  return {
    ok: errors.length === 0,
    sum,
    indicator: sumOk ? `sum ${sum.toFixed(2)} ✓` : `sum ${sum.toFixed(2)} ≠ 1`,
    errors,
  };
}

export interface GridSubmission {
  ok: boolean;
  evaluations: Array<{ dimension: string; requirement: string; value: number | null }>;
  errors: string[];
}

/** Validate all pending edits plus the weight row; submission is blocked
 * unless every cell parses and the weights sum to 1. */
export function prepareSubmission(
  edits: CellEdit[],
  weights: Record<string, number>,
): GridSubmission {
  const errors: string[] = [];
  const evaluations: GridSubmission["evaluations"] = [];
  for (const edit of edits) {
    const cell = validateCell(edit.raw);
    if (!cell.ok) {
      errors.push(`${edit.requirement}/${edit.dimension}: ${cell.error}`);
      continue;
    }
    evaluations.push({
      dimension: edit.dimension,
      requirement: edit.requirement,
      value: cell.value,
    });
  }
  const weightCheck = validateWeights(weights);
  errors.push(...weightCheck.errors);
  return { ok: errors.length === 0, evaluations, errors };
}
