/**
 * Records browsers: persons, registry applications, publications and
 * the MoSCoW backlog. Validation errors render inline per field; the
 * registry form refuses non-registrable categories before any request.
 */

import type { HrClient, RegistryApplication, Requirement } from "../api.js";
import { clear, el, errorBox, field } from "../dom.js";
import {
  FURPS_CATEGORIES,
  MOSCOW_PRIORITIES,
  REGISTRY_CATEGORIES,
  splitList,
  validatePerson,
  validateRegistryCategory,
  validateRequirement,
} from "../forms.js";
import type { ViewContext } from "./procedures.js";
import { describeError } from "./procedures.js";

export async function renderPersons(container: HTMLElement, ctx: ViewContext): Promise<void> {
  const persons = await ctx.client.persons();
  clear(container);
  container.append(el("h2", {}, "Persons"));

  const nameInput = el("input", { name: "full_name" }) as HTMLInputElement;
  const dobInput = el("input", { name: "date_of_birth", type: "date" }) as HTMLInputElement;
  const doctorate = el("input", { name: "doctoral_degree", type: "checkbox" }) as HTMLInputElement;
  const inlineError = el("div", {});
  container.append(
    el(
      "section",
      { class: "card" },
      el("h3", {}, "Register person"),
      el(
        "form",
        {
          class: "inline-form",
          onsubmit: (event) => {
            event.preventDefault();
            void (async () => {
              clear(inlineError as HTMLElement);
              const problems = validatePerson(nameInput.value, dobInput.value);
              if (problems.length) {
                for (const problem of problems) inlineError.append(errorBox(problem));
                return;
              }
              try {
                await ctx.client.createPerson(nameInput.value, dobInput.value, doctorate.checked);
                ctx.navigate("#/persons");
              } catch (error) {
                inlineError.append(describeError(error));
              }
            })();
          },
        },
        field("Full name", nameInput),
        field("Date of birth", dobInput),
        field("Doctoral degree", doctorate),
        el("button", { type: "submit" }, "Register"),
      ),
      inlineError,
    ),
  );

  container.append(
    persons.length
      ? el(
          "table",
          { class: "data-table" },
          el(
            "thead",
            {},
            el(
              "tr",
              {},
              el("th", {}, "Id"),
              el("th", {}, "Name"),
              el("th", {}, "Born"),
              el("th", {}, "Doctorate"),
            ),
          ),
          el(
            "tbody",
            {},
            ...persons.map((person) =>
              el(
                "tr",
                {},
                el("td", {}, person.person_id),
                el("td", {}, person.full_name),
                el("td", {}, person.date_of_birth),
                el("td", {}, person.doctoral_degree ? "yes" : "no"),
              ),
            ),
          ),
        )
      : el("p", { class: "empty" }, "No persons registered."),
  );
}

export async function renderRegistry(container: HTMLElement, ctx: ViewContext): Promise<void> {
  const [applications, entries, persons] = await Promise.all([
    ctx.client.registryApplications(),
    ctx.client.registryEntries(),
    ctx.client.persons(),
  ]);
  clear(container);
  container.append(el("h2", {}, "Register of Researchers"));

  const personSelect = el("select", {}) as HTMLSelectElement;
  for (const person of persons) {
    const option = el("option", {}, `${person.full_name} (${person.person_id})`) as HTMLOptionElement;
    option.value = person.person_id;
    personSelect.append(option);
  }
  const categorySelect = el("select", {}) as HTMLSelectElement;
  for (const category of REGISTRY_CATEGORIES) {
    const option = el("option", {}, category) as HTMLOptionElement;
    option.value = category;
    categorySelect.append(option);
  }
  const freeCategory = el("input", {
    placeholder: "or type a category to check",
  }) as HTMLInputElement;
  const documentsInput = el("input", { placeholder: "document refs, comma separated" }) as HTMLInputElement;
  const inlineError = el("div", {});

  container.append(
    el(
      "section",
      { class: "card" },
      el("h3", {}, "Submit application"),
      el(
        "form",
        {
          class: "inline-form",
          onsubmit: (event) => {
            event.preventDefault();
            void (async () => {
              clear(inlineError as HTMLElement);
              const category = freeCategory.value.trim() || categorySelect.value;
              const problem = validateRegistryCategory(category);
              if (problem) {
                inlineError.append(errorBox(problem)); // rejected before any request
                return;
              }
              try {
                await ctx.client.submitRegistration(
                  personSelect.value,
                  category,
                  splitList(documentsInput.value),
                );
                ctx.navigate("#/registry");
              } catch (error) {
                inlineError.append(describeError(error));
              }
            })();
          },
        },
        field("Person", personSelect),
        field("Category", categorySelect),
        field("Custom category", freeCategory),
        field("Documents", documentsInput),
        el("button", { type: "submit" }, "Submit to Ministry"),
      ),
      inlineError,
    ),
  );

  container.append(el("h3", {}, "Applications"));
  container.append(
    applications.length
      ? el(
          "table",
          { class: "data-table" },
          el(
            "thead",
            {},
            el(
              "tr",
              {},
              el("th", {}, "Application"),
              el("th", {}, "Person"),
              el("th", {}, "Category"),
              el("th", {}, "Status"),
              el("th", {}, "Decision"),
            ),
          ),
          el("tbody", {}, ...applications.map((a) => applicationRow(ctx, a))),
        )
      : el("p", { class: "empty" }, "No applications."),
  );

  container.append(el("h3", {}, "Entries"));
  container.append(
    entries.length
      ? el(
          "ul",
          {},
          ...entries.map((entry) =>
            el(
              "li",
              {},
              `${entry.scientist_id}: person ${entry.person_id}, ${entry.category}`,
            ),
          ),
        )
      : el("p", { class: "empty" }, "No registry entries."),
  );
}

function applicationRow(
  ctx: ViewContext,
  application: RegistryApplication,
): HTMLElement {
  const decisionCell = el("td", {});
  if (application.status === "Submitted") {
    const idInput = el("input", { placeholder: "scientist id" }) as HTMLInputElement;
    decisionCell.append(
      idInput,
      el(
        "button",
        {
          type: "button",
          onclick: () => {
            void ctx.client
              .recordDecision(application.application_id, "approved", idInput.value)
              .then(() => ctx.navigate("#/registry"))
              .catch((error) => decisionCell.append(describeError(error)));
          },
        },
        "Approve",
      ),
      el(
        "button",
        {
          type: "button",
          onclick: () => {
            void ctx.client
              .recordDecision(application.application_id, "rejected", undefined, "rejected by operator")
              .then(() => ctx.navigate("#/registry"))
              .catch((error) => decisionCell.append(describeError(error)));
          },
        },
        "Reject",
      ),
    );
  } else {
    decisionCell.append(
      application.scientist_id ?? application.rejection_reason ?? "",
    );
  }
  return el(
    "tr",
    {},
    el("td", {}, application.application_id),
    el("td", {}, application.person_id),
    el("td", {}, application.category),
    el("td", {}, application.status),
    decisionCell,
  );
}

export async function renderPublications(
  container: HTMLElement,
  ctx: ViewContext,
  personId?: string,
): Promise<void> {
  const persons = await ctx.client.persons();
  clear(container);
  container.append(el("h2", {}, "Published papers"));

  const personSelect = el("select", {}) as HTMLSelectElement;
  for (const person of persons) {
    const option = el("option", {}, `${person.full_name} (${person.person_id})`) as HTMLOptionElement;
    option.value = person.person_id;
    if (person.person_id === personId) option.selected = true;
    personSelect.append(option);
  }
  const feedback = el("div", {});
  container.append(
    el(
      "form",
      {
        class: "inline-form",
        onsubmit: (event) => {
          event.preventDefault();
          ctx.navigate(`#/publications/${personSelect.value}`);
        },
      },
      field("Employee", personSelect),
      el("button", { type: "submit" }, "Show"),
    ),
  );
  if (!personId) return;

  const authorKey = el("input", { placeholder: "external author key" }) as HTMLInputElement;
  container.append(
    el(
      "div",
      { class: "action-row" },
      authorKey,
      el(
        "button",
        {
          type: "button",
          onclick: () => {
            void ctx.client
              .mapAuthor(personId, authorKey.value)
              .then(() => ctx.navigate(`#/publications/${personId}`))
              .catch((error) => feedback.append(describeError(error)));
          },
        },
        "Map author",
      ),
      el(
        "button",
        {
          type: "button",
          onclick: () => {
            void ctx.client
              .syncPublications(personId)
              .then((report) => {
                feedback.append(
                  el(
                    "p",
                    { class: "sync-report" },
                    `Sync: ${report.added} added, ${report.updated} updated, ` +
                      `${report.unchanged} unchanged`,
                  ),
                );
                return renderPublicationTable(container, ctx, personId);
              })
              .catch((error) => feedback.append(describeError(error)));
          },
        },
        "Sync now",
      ),
    ),
    feedback,
  );
  await renderPublicationTable(container, ctx, personId);
}

async function renderPublicationTable(
  container: HTMLElement,
  ctx: ViewContext,
  personId: string,
): Promise<void> {
  const existing = container.querySelector(".publication-table");
  const records = await ctx.client.publications(personId);
  const table = records.length
    ? el(
        "table",
        { class: "data-table publication-table" },
        el(
          "thead",
          {},
          el(
            "tr",
            {},
            el("th", {}, "Title"),
            el("th", {}, "Type"),
            el("th", {}, "Published"),
            el("th", {}, "Archive"),
          ),
        ),
        el(
          "tbody",
          {},
          ...records.map((record) =>
            el(
              "tr",
              {},
              el("td", {}, record.title),
              el("td", {}, record.type_of_work),
              el("td", {}, record.publishing_date),
              el(
                "td",
                {},
                el("a", { href: record.url, target: "_blank", rel: "noreferrer" }, record.source_key),
              ),
            ),
          ),
        ),
      )
    : el("p", { class: "empty publication-table" }, "No publication records.");
  if (existing) {
    existing.replaceWith(table);
  } else {
    container.append(table);
  }
}

export async function renderBacklog(container: HTMLElement, ctx: ViewContext): Promise<void> {
  const backlog = await ctx.client.backlog();
  clear(container);
  container.append(el("h2", {}, "Requirements backlog"));

  const textInput = el("input", { placeholder: "requirement text" }) as HTMLInputElement;
  const categorySelect = el("select", {}) as HTMLSelectElement;
  for (const category of FURPS_CATEGORIES) {
    const option = el("option", {}, category) as HTMLOptionElement;
    option.value = category;
    categorySelect.append(option);
  }
  const prioritySelect = el("select", {}) as HTMLSelectElement;
  for (const priority of MOSCOW_PRIORITIES) {
    const option = el("option", {}, priority) as HTMLOptionElement;
    option.value = priority;
    prioritySelect.append(option);
  }
  const inlineError = el("div", {});
  container.append(
    el(
      "section",
      { class: "card" },
      el("h3", {}, "Capture requirement"),
      el(
        "form",
        {
          class: "inline-form",
          onsubmit: (event) => {
            event.preventDefault();
            void (async () => {
              clear(inlineError as HTMLElement);
              const problems = validateRequirement(
                textInput.value,
                categorySelect.value,
                prioritySelect.value,
              );
              if (problems.length) {
                for (const problem of problems) inlineError.append(errorBox(problem));
                return;
              }
              try {
                await ctx.client.addRequirement(
                  textInput.value,
                  categorySelect.value,
                  prioritySelect.value,
                );
                ctx.navigate("#/backlog");
              } catch (error) {
                inlineError.append(describeError(error));
              }
            })();
          },
        },
        field("Text", textInput),
        field("FURPS+ category", categorySelect),
        field("Priority", prioritySelect),
        el("button", { type: "submit" }, "Add"),
      ),
      inlineError,
    ),
  );

  // grouped M, S, C, W in that fixed order
  for (const priority of MOSCOW_PRIORITIES) {
    const items = backlog.filter((r) => r.priority === priority);
    container.append(
      el(
        "section",
        { class: "backlog-group" },
        el("h3", {}, groupTitle(priority)),
        items.length
          ? el("ol", {}, ...items.map(requirementItem))
          : el("p", { class: "empty" }, "none"),
      ),
    );
  }
}

function groupTitle(priority: string): string {
  const names: Record<string, string> = {
    M: "Must Have",
    S: "Should Have",
    C: "Could Have",
    W: "Won't Have This Time Around",
  };
  return `${priority} — ${names[priority] ?? priority}`;
}

function requirementItem(requirement: Requirement): HTMLElement {
  return el(
    "li",
    {},
    el("code", {}, requirement.requirement_id),
    ` [${requirement.category}/${requirement.kind}] ${requirement.text}`,
  );
}

export type { HrClient };
