/**
 * Procedure list and workspace.
 *
 * The workspace renders only server-fetched state and re-fetches after
 * every mutation. Action buttons come from the client transition table
 * (contract-tested to match the server); submissions carry the
 * displayed version, so a concurrent edit surfaces as a version
 * conflict banner with a reload action, never as a silent overwrite.
 */

import type { Grade, HrClient, Procedure } from "../api.js";
import { HrApiError } from "../api.js";
import { clear, el, errorBox, field } from "../dom.js";
import { splitList, validateAttachmentPath, validateEventPayload } from "../forms.js";
import type { EventKind } from "../transitions.js";
import { EVENT_LABELS, isTerminal, legalEvents } from "../transitions.js";

export interface ViewContext {
  client: HrClient;
  navigate: (hash: string) => void;
}

export async function renderProcedureList(
  container: HTMLElement,
  ctx: ViewContext,
  prefill?: { grade: string; track: string | null; council_ref: string },
): Promise<void> {
  const [procedures, catalog] = await Promise.all([ctx.client.procedures(), ctx.client.grades()]);
  clear(container);
  container.append(el("h2", {}, "Appointment procedures"));
  container.append(openForm(ctx, catalog, prefill));
  const rows = procedures.map((procedure) =>
    el(
      "tr",
      {},
      el(
        "td",
        {},
        el(
          "a",
          { href: `#/procedures/${procedure.procedure_id}` },
          procedure.procedure_id,
        ),
      ),
      el("td", {}, `${procedure.target_grade.name} (${procedure.target_grade.track})`),
      el("td", {}, procedure.state),
      el("td", {}, String(procedure.version)),
    ),
  );
  container.append(
    procedures.length
      ? el(
          "table",
          { class: "data-table" },
          el(
            "thead",
            {},
            el(
              "tr",
              {},
              el("th", {}, "Procedure"),
              el("th", {}, "Target grade"),
              el("th", {}, "State"),
              el("th", {}, "Version"),
            ),
          ),
          el("tbody", {}, ...rows),
        )
      : el("p", { class: "empty" }, "No procedures yet."),
  );
}

function openForm(
  ctx: ViewContext,
  catalog: Grade[],
  prefill?: { grade: string; track: string | null; council_ref: string },
): HTMLElement {
  const appointable = catalog.filter((grade) =>
    ["ScientificResearch", "Teaching", "Associate"].includes(grade.track),
  );
  const gradeSelect = el("select", { name: "grade" }) as HTMLSelectElement;
  for (const grade of appointable) {
    const option = el("option", {}, `${grade.name} — ${grade.track}`) as HTMLOptionElement;
    option.value = `${grade.name}|${grade.track}`;
    if (prefill && grade.name === prefill.grade && (!prefill.track || grade.track === prefill.track)) {
      option.selected = true;
    }
    gradeSelect.append(option);
  }
  const councilInput = el("input", {
    name: "council_ref",
    placeholder: "council decision reference",
    value: prefill?.council_ref ?? "",
  }) as HTMLInputElement;
  const feedback = el("div", {});
  const form = el(
    "form",
    {
      class: "inline-form",
      onsubmit: (event) => {
        event.preventDefault();
        void (async () => {
          clear(feedback as HTMLElement);
          const [grade, track] = gradeSelect.value.split("|");
          if (!councilInput.value.trim()) {
            feedback.append(errorBox("council reference is required"));
            return;
          }
          try {
            const procedure = await ctx.client.openProcedure(grade, track, councilInput.value);
            ctx.navigate(`#/procedures/${procedure.procedure_id}`);
          } catch (error) {
            feedback.append(describeError(error));
          }
        })();
      },
    },
    field("Target grade", gradeSelect),
    field("Council reference", councilInput),
    el("button", { type: "submit" }, "Open procedure"),
  );
  return el("section", { class: "card" }, el("h3", {}, "Open a new procedure"), form, feedback);
}

export async function renderProcedureDetail(
  container: HTMLElement,
  ctx: ViewContext,
  procedureId: string,
): Promise<void> {
  const procedure = await ctx.client.procedure(procedureId);
  // the console computes legal actions itself; disagreement with the
  // server would be a deployment skew worth surfacing loudly
  const local = legalEvents(procedure.state);
  const skewed = JSON.stringify(local) !== JSON.stringify(procedure.legal_events);

  clear(container);
  container.append(
    el("h2", {}, `Procedure ${procedure.procedure_id}`),
    el(
      "p",
      { class: "procedure-meta" },
      `${procedure.target_grade.name} (${procedure.target_grade.track}) — state `,
      el("strong", {}, procedure.state),
      ` — version ${procedure.version}`,
    ),
  );
  if (skewed) {
    container.append(
      errorBox(
        "transition table mismatch between console and service",
        `console: ${local.join(", ")} / service: ${procedure.legal_events.join(", ")}`,
      ),
    );
  }
  container.append(summarySection(procedure));
  container.append(historySection(procedure));
  if (isTerminal(procedure.state)) {
    container.append(
      el("p", { class: "terminal-note" }, `${procedure.state} is final; no actions are available.`),
    );
  } else {
    container.append(actionsSection(container, ctx, procedure));
  }
  container.append(await attachmentsSection(ctx, procedure));
}

function summarySection(procedure: Procedure): HTMLElement {
  const committee = procedure.committee.length ? procedure.committee.join(", ") : "not selected";
  const applicants = procedure.applicants.length
    ? procedure.applicants.map((a) => a.person_id).join(", ")
    : "none";
  const promoted = procedure.promoted.length ? procedure.promoted.join(", ") : "none";
  return el(
    "section",
    { class: "card" },
    el("h3", {}, "Summary"),
    el("p", {}, el("strong", {}, "Committee: "), committee),
    el("p", {}, el("strong", {}, "Applicants: "), applicants),
    el("p", {}, el("strong", {}, "Promoted: "), promoted),
  );
}

function historySection(procedure: Procedure): HTMLElement {
  const items = procedure.history.map((step) =>
    el(
      "li",
      {},
      el("code", {}, step.kind),
      ` by ${step.actor} @ ${step.occurred_at ?? "?"} -> ${step.resulting_state}`,
    ),
  );
  return el(
    "section",
    { class: "card" },
    el("h3", {}, "History"),
    el("ol", { class: "timeline" }, ...items),
  );
}

function actionsSection(
  container: HTMLElement,
  ctx: ViewContext,
  procedure: Procedure,
): HTMLElement {
  const feedback = el("div", {});
  const formHost = el("div", {});
  const buttons = legalEvents(procedure.state).map((kind) =>
    el(
      "button",
      {
        type: "button",
        class: "action-button",
        onclick: () => {
          clear(formHost as HTMLElement);
          formHost.append(eventForm(container, ctx, procedure, kind, feedback));
        },
      },
      EVENT_LABELS[kind],
    ),
  );
  return el(
    "section",
    { class: "card" },
    el("h3", {}, "Actions"),
    el("div", { class: "action-row" }, ...buttons),
    formHost,
    feedback,
  );
}

interface FieldSpec {
  name: string;
  label: string;
  kind: "text" | "date" | "list";
}

const EVENT_FIELDS: Partial<Record<EventKind, FieldSpec[]>> = {
  "select-committee": [{ name: "members", label: "Committee members (comma separated)", kind: "list" }],
  "announce-vacancy": [{ name: "announcement_date", label: "Announcement date", kind: "date" }],
  "receive-application": [
    { name: "applicant", label: "Applicant (person id)", kind: "text" },
    { name: "documents", label: "Document references (comma separated)", kind: "list" },
  ],
  "submit-report": [{ name: "report_ref", label: "Report reference", kind: "text" }],
  "board-decision": [{ name: "promoted", label: "Promoted applicants (comma separated)", kind: "list" }],
  "recognize-appointments": [{ name: "effective_date", label: "Effective date", kind: "date" }],
  terminate: [{ name: "reason", label: "Reason", kind: "text" }],
};

function eventForm(
  container: HTMLElement,
  ctx: ViewContext,
  procedure: Procedure,
  kind: EventKind,
  feedback: HTMLElement,
): HTMLElement {
  const specs = EVENT_FIELDS[kind] ?? [];
  const inputs = new Map<string, HTMLInputElement>();
  const rows = specs.map((spec) => {
    const input = el("input", {
      name: spec.name,
      type: spec.kind === "date" ? "date" : "text",
    }) as HTMLInputElement;
    inputs.set(spec.name, input);
    return field(spec.label, input);
  });
  const inlineErrors = el("div", {});
  return el(
    "form",
    {
      class: "card event-form",
      onsubmit: (event) => {
        event.preventDefault();
        void (async () => {
          clear(inlineErrors as HTMLElement);
          clear(feedback);
          const payload: Record<string, unknown> = {};
          for (const spec of specs) {
            const raw = inputs.get(spec.name)?.value ?? "";
            payload[spec.name] = spec.kind === "list" ? splitList(raw) : raw.trim();
          }
          if (kind === "submit-report") payload.assessments = {};
          const problems = validateEventPayload(kind, payload, {
            applicants: procedure.applicants.map((a) => a.person_id),
            committee: procedure.committee,
          });
          if (problems.length) {
            for (const problem of problems) inlineErrors.append(errorBox(problem));
            return;
          }
          try {
            await ctx.client.postEvent(procedure.procedure_id, kind, payload, procedure.version);
            await renderProcedureDetail(container, ctx, procedure.procedure_id);
          } catch (error) {
            if (error instanceof HrApiError && error.status === 409) {
              feedback.append(conflictBanner(container, ctx, procedure.procedure_id, error));
            } else {
              feedback.append(describeError(error));
            }
          }
        })();
      },
    },
    el("h4", {}, EVENT_LABELS[kind]),
    ...rows,
    el("button", { type: "submit" }, "Submit"),
  );
}

function conflictBanner(
  container: HTMLElement,
  ctx: ViewContext,
  procedureId: string,
  error: HrApiError,
): HTMLElement {
  return el(
    "div",
    { class: "conflict-banner", role: "alert" },
    el("strong", {}, "Someone changed this procedure first. "),
    el("span", {}, `${error.message}. `),
    el(
      "button",
      {
        type: "button",
        onclick: () => void renderProcedureDetail(container, ctx, procedureId),
      },
      "Reload and retry",
    ),
  );
}

async function attachmentsSection(ctx: ViewContext, procedure: Procedure): Promise<HTMLElement> {
  const documents = await ctx.client.documents("procedure", procedure.procedure_id);
  const list = documents.length
    ? el(
        "ul",
        {},
        ...documents.map((doc) =>
          el(
            "li",
            {},
            el(
              "a",
              {
                href: "#",
                onclick: (event) => {
                  event.preventDefault();
                  void ctx.client.resolveDocument(doc.document_id).then((resolved) => {
                    window.open(resolved.path, "_blank");
                  });
                },
              },
              doc.path,
            ),
            ` (${doc.declared_format}) ${doc.description}`,
          ),
        ),
      )
    : el("p", { class: "empty" }, "No attached documents.");

  const pathInput = el("input", { name: "path", placeholder: "repo://..." }) as HTMLInputElement;
  const formatInput = el("input", { name: "format", placeholder: "pdf" }) as HTMLInputElement;
  const descriptionInput = el("input", { name: "description" }) as HTMLInputElement;
  const inlineError = el("div", {});
  const form = el(
    "form",
    {
      class: "inline-form",
      onsubmit: (event) => {
        event.preventDefault();
        void (async () => {
          clear(inlineError as HTMLElement);
          const problem = validateAttachmentPath(pathInput.value);
          if (problem) {
            inlineError.append(errorBox(problem));
            return; // no request leaves the console for an empty path
          }
          try {
            await ctx.client.attachDocument(
              { kind: "procedure", id: procedure.procedure_id },
              pathInput.value,
              formatInput.value,
              descriptionInput.value,
            );
            ctx.navigate(`#/procedures/${procedure.procedure_id}`);
          } catch (error) {
            inlineError.append(describeError(error));
          }
        })();
      },
    },
    field("Repository path", pathInput),
    field("Format label", formatInput),
    field("Description", descriptionInput),
    el("button", { type: "submit" }, "Attach"),
  );
  return el(
    "section",
    { class: "card" },
    el("h3", {}, "Attached documents"),
    list,
    form,
    inlineError,
  );
}

export function describeError(error: unknown): HTMLElement {
  if (error instanceof HrApiError) {
    const guard = error.guard ? ` [guard: ${error.guard}]` : "";
    return errorBox(`${error.code}${guard}`, error.message);
  }
  return errorBox(String(error));
}
