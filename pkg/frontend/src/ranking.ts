/** Ranking panel: ordered list with utility bars and rank badges.
 * All numbers come from the server's ranking response. */

import type { RankingRow } from "./types.js";

export interface RankingItemView {
  id: string;
  utility: number;
  rank: number;
  /** Bar width in percent, proportional to utility (max row = 100). */
  barPercent: number;
  /** True when this row shares its rank with another row. */
  tied: boolean;
}

export function rankingViewModel(rows: RankingRow[]): RankingItemView[] {
  const maxUtility = rows.reduce((m, r) => Math.max(m, r.utility), 0);
  const rankCounts = new Map<number, number>();
  for (const row of rows) {
    rankCounts.set(row.rank, (rankCounts.get(row.rank) ?? 0) + 1);
  }
  return rows.map((row) => ({
    id: row.id,
    utility: row.utility,
    rank: row.rank,
    barPercent: maxUtility > 0 ? (row.utility / maxUtility) * 100 : 0,
    tied: (rankCounts.get(row.rank) ?? 0) > 1,
  }));
}

export function renderRanking(container: HTMLElement, rows: RankingRow[]): void {
  container.textContent = "";
  const list = document.createElement("ol");
  list.className = "ranking";
  for (const item of rankingViewModel(rows)) {
    const li = document.createElement("li");
    li.className = "ranking-row";
    li.dataset.requirement = item.id;

    const badge = document.createElement("span");
    badge.className = item.tied ? "rank-badge tied" : "rank-badge";
    badge.textContent = String(item.rank);

    const label = document.createElement("span");
    label.className = "requirement-id";
    label.textContent = item.id;

    const bar = document.createElement("span");
    bar.className = "utility-bar";
    bar.style.width = `${item.barPercent.toFixed(1)}%`;

    const value = document.createElement("span");
    value.className = "utility-value";
    value.textContent = item.utility.toFixed(4);

    li.append(badge, label, bar, value);
    list.append(li);
  }
  container.append(list);
}
