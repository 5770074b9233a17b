/**
 * Expiry dashboard projection.
 *
 * The dashboard must mirror the review endpoint exactly: rows keep the
 * server's content and order untouched (the fidelity contract test
 * compares them byte-for-byte); the only addition is the pre-filled
 * "open renewal procedure" affordance derived per row.
 */

import type { ExpiryRow, Grade } from "./api.js";

export interface RenewalPrefill {
  grade: string;
  track: string | null;
  council_ref: string;
}

export interface DashboardRow {
  /** The server row, untouched. */
  data: ExpiryRow;
  renewal: RenewalPrefill;
}

/**
 * Build dashboard rows from the review response. `catalog` resolves
 * the grade's track for the renewal pre-fill (a grade name can exist
 * in several tracks; the appointment's grade name resolves uniquely
 * only when the catalog says so).
 */
export function dashboardRows(rows: ExpiryRow[], catalog: Grade[], asOf: string): DashboardRow[] {
  return rows.map((row) => {
    const tracks = catalog.filter((grade) => grade.name === row.grade);
    return {
      data: row,
      renewal: {
        grade: row.grade,
        track: tracks.length === 1 ? tracks[0].track : null,
        council_ref: `renewal-${row.person_id}-${asOf}`,
      },
    };
  });
}

/** The row contents as displayed; must equal the server response. */
export function displayedData(rows: DashboardRow[]): ExpiryRow[] {
  return rows.map((row) => row.data);
}
