/**
 * Contract: dashboard rows mirror the expiry-review endpoint exactly,
 * byte for byte in content and order, for the seeded demo store.
 */

import { describe, expect, inject, test } from "vitest";
import { HrClient, type ExpiryRow } from "../src/api.js";
import { dashboardRows, displayedData } from "../src/dashboard.js";

const asOf = new Date().toISOString().slice(0, 10);

describe("expiry dashboard fidelity", () => {
  test("rows equal the review response byte for byte", async () => {
    const client = new HrClient(inject("baseUrl"));
    const raw = await client.expiryReviewRaw(asOf);
    const rows = JSON.parse(raw) as ExpiryRow[];
    expect(rows.length).toBeGreaterThanOrEqual(2); // seeded: one due, one expired

    const catalog = await client.grades();
    const projected = dashboardRows(rows, catalog, asOf);
    expect(JSON.stringify(displayedData(projected))).toBe(raw);
  });

  test("rows arrive sorted by valid_to, ties by person", async () => {
    const client = new HrClient(inject("baseUrl"));
    const rows = await client.expiryReview(asOf);
    const keys = rows.map((row) => [row.valid_to, row.person_id] as const);
    const sorted = [...keys].sort((a, b) =>
      a[0] === b[0] ? a[1].localeCompare(b[1]) : a[0].localeCompare(b[0]),
    );
    expect(keys).toEqual(sorted);
  });

  test("renewal affordance pre-fills the row's grade", async () => {
    const client = new HrClient(inject("baseUrl"));
    const [rows, catalog] = await Promise.all([client.expiryReview(asOf), client.grades()]);
    for (const row of dashboardRows(rows, catalog, asOf)) {
      expect(row.renewal.grade).toBe(row.data.grade);
      expect(row.renewal.council_ref).toContain(row.data.person_id);
      if (row.renewal.track !== null) {
        expect(
          catalog.some((g) => g.name === row.data.grade && g.track === row.renewal.track),
        ).toBe(true);
      }
    }
  });

  test("empty store date shows the empty state", async () => {
    const client = new HrClient(inject("baseUrl"));
    const rows = await client.expiryReview("1990-01-01");
    expect(rows).toEqual([]);
    expect(dashboardRows(rows, [], "1990-01-01")).toEqual([]);
  });

  test("statuses never move backward as the review date advances", async () => {
    const client = new HrClient(inject("baseUrl"));
    const order = { InitiationDue: 1, Expired: 2 } as const;
    const later = `${Number(asOf.slice(0, 4)) + 2}${asOf.slice(4)}`;
    const now = await client.expiryReview(asOf);
    const future = await client.expiryReview(later);
    const futureByAppointment = new Map(future.map((row) => [row.appointment_id, row.status]));
    for (const row of now) {
      const futureStatus = futureByAppointment.get(row.appointment_id);
      expect(futureStatus).toBeDefined();
      expect(order[futureStatus!]).toBeGreaterThanOrEqual(order[row.status]);
    }
  });
});
