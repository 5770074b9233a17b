/**
 * Expiry dashboard: due and expired appointments for a chosen date,
 * rendered in exactly the order and content the review endpoint
 * returns, with a one-click pre-filled renewal procedure per row.
 */

import { clear, el } from "../dom.js";
import { dashboardRows } from "../dashboard.js";
import type { ViewContext } from "./procedures.js";
import { describeError } from "./procedures.js";

function today(): string {
  return new Date().toISOString().slice(0, 10);
}

export async function renderDashboard(
  container: HTMLElement,
  ctx: ViewContext,
  asOf?: string,
): Promise<void> {
  const day = asOf ?? today();
  clear(container);
  container.append(el("h2", {}, "Grade expiry review"));

  const dateInput = el("input", { type: "date", value: day }) as HTMLInputElement;
  container.append(
    el(
      "form",
      {
        class: "inline-form",
        onsubmit: (event) => {
          event.preventDefault();
          ctx.navigate(`#/dashboard/${dateInput.value}`);
        },
      },
      el("label", { class: "field" }, el("span", { class: "field-label" }, "As of"), dateInput),
      el("button", { type: "submit" }, "Review"),
    ),
  );

  try {
    const [rows, catalog] = await Promise.all([ctx.client.expiryReview(day), ctx.client.grades()]);
    const projected = dashboardRows(rows, catalog, day);
    if (!projected.length) {
      container.append(
        el("p", { class: "empty" }, `Nothing is due or expired as of ${day}.`),
      );
      return;
    }
    const body = projected.map((row) =>
      el(
        "tr",
        { class: row.data.status === "Expired" ? "row-expired" : "row-due" },
        el("td", {}, row.data.person_id),
        el("td", {}, row.data.grade),
        el("td", {}, row.data.valid_to),
        el("td", {}, row.data.status),
        el("td", {}, String(row.data.days_remaining)),
        el("td", {}, row.data.deadline_to_initiate),
        el(
          "td",
          {},
          el(
            "button",
            {
              type: "button",
              onclick: () => {
                const query = new URLSearchParams({
                  grade: row.renewal.grade,
                  track: row.renewal.track ?? "",
                  council_ref: row.renewal.council_ref,
                });
                ctx.navigate(`#/procedures?${query.toString()}`);
              },
            },
            "Open renewal procedure",
          ),
        ),
      ),
    );
    container.append(
      el(
        "table",
        { class: "data-table" },
        el(
          "thead",
          {},
          el(
            "tr",
            {},
            el("th", {}, "Person"),
            el("th", {}, "Grade"),
            el("th", {}, "Valid to"),
            el("th", {}, "Status"),
            el("th", {}, "Days remaining"),
            el("th", {}, "Initiation deadline"),
            el("th", {}, ""),
          ),
        ),
        el("tbody", {}, ...body),
      ),
    );
  } catch (error) {
    container.append(describeError(error));
  }
}
