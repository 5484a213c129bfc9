/** Per-tab session state. The displayed ranking always corresponds to
 * the last server response; anything typed since then marks the view
 * stale until the next successful fetch. */

import type { CellEdit } from "./grid.js";
import type { Mode, RankingResponse } from "./types.js";

export interface SessionState {
  projectId: string | null;
  version: number;
  stakeholder: string | null;
  mode: Mode;
  pendingEdits: CellEdit[];
  lastRanking: RankingResponse | null;
  pendingDiagnoses: string[][];
  stale: boolean;
}

export function initialState(): SessionState {
  return {
    projectId: null,
    version: 0,
    stakeholder: null,
    mode: "single",
    pendingEdits: [],
    lastRanking: null,
    pendingDiagnoses: [],
    stale: false,
  };
}

export function recordEdit(state: SessionState, edit: CellEdit): SessionState {
  const pendingEdits = state.pendingEdits.filter(
    (e) => e.dimension !== edit.dimension || e.requirement !== edit.requirement,
  );
  pendingEdits.push(edit);
  return { ...state, pendingEdits, stale: true };
}

export function recordRanking(
  state: SessionState,
  ranking: RankingResponse,
): SessionState {
  return {
    ...state,
    version: ranking.version,
    lastRanking: ranking,
    pendingEdits: [],
    stale: false,
  };
}
