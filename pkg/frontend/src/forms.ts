/**
 * Client-side mirrors of server validation rules.
 *
 * These checks exist to reject bad input before a request is sent (the
 * server remains authoritative); each mirrors a named server rule.
 */

import type { EventKind } from "./transitions.js";

export interface EventPayloads {
  "select-committee": { members: string[] };
  "announce-vacancy": { announcement_date: string };
  "receive-application": { applicant: string; documents: string[] };
  "close-applications": Record<string, never>;
  "submit-report": { report_ref: string; assessments: Record<string, string> };
  "board-decision": { promoted: string[] };
  "senate-confirmation": Record<string, never>;
  "recognize-appointments": { effective_date: string };
  terminate: { reason: string };
  "initiate-decision": { council_ref: string };
}

const ISO_DATE = /^\d{4}-\d{2}-\d{2}$/;

export function isIsoDate(value: string): boolean {
  if (!ISO_DATE.test(value)) return false;
  const parsed = new Date(`${value}T00:00:00Z`);
  return !Number.isNaN(parsed.getTime()) && parsed.toISOString().startsWith(value);
}

export function splitList(raw: string): string[] {
  return raw
    .split(/[,\n]/)
    .map((item) => item.trim())
    .filter((item) => item.length > 0);
}

/**
 * Validate an event payload before submission. Returns error messages;
 * empty means the payload may be sent.
 */
export function validateEventPayload(
  kind: EventKind,
  payload: Record<string, unknown>,
  context: { applicants?: string[]; committee?: string[] } = {},
): string[] {
  const errors: string[] = [];
  switch (kind) {
    case "select-committee": {
      const members = (payload.members as string[]) ?? [];
      if (members.length < 3 || members.length % 2 === 0) {
        errors.push("committee needs an odd number of members, at least 3");
      }
      if (new Set(members).size !== members.length) {
        errors.push("committee members must be distinct");
      }
      break;
    }
    case "announce-vacancy": {
      if (!isIsoDate(String(payload.announcement_date ?? ""))) {
        errors.push("announcement date must be an ISO date (YYYY-MM-DD)");
      }
      break;
    }
    case "receive-application": {
      const applicant = String(payload.applicant ?? "").trim();
      if (!applicant) {
        errors.push("applicant is required");
      }
      if (context.applicants?.includes(applicant)) {
        errors.push("this applicant has already applied");
      }
      if (context.committee?.includes(applicant)) {
        errors.push("committee members may not apply");
      }
      break;
    }
    case "submit-report": {
      if (!String(payload.report_ref ?? "").trim()) {
        errors.push("report reference is required");
      }
      break;
    }
    case "board-decision": {
      const promoted = (payload.promoted as string[]) ?? [];
      if (new Set(promoted).size !== promoted.length) {
        errors.push("promoted list contains duplicates");
      }
      const applicants = context.applicants ?? [];
      const outsiders = promoted.filter((person) => !applicants.includes(person));
      if (outsiders.length > 0) {
        errors.push(`promoted persons must be applicants: ${outsiders.join(", ")}`);
      }
      break;
    }
    case "recognize-appointments": {
      if (!isIsoDate(String(payload.effective_date ?? ""))) {
        errors.push("effective date must be an ISO date (YYYY-MM-DD)");
      }
      break;
    }
    case "terminate": {
      if (!String(payload.reason ?? "").trim()) {
        errors.push("termination requires a reason");
      }
      break;
    }
    case "initiate-decision": {
      if (!String(payload.council_ref ?? "").trim()) {
        errors.push("council reference is required");
      }
      break;
    }
    default:
      break;
  }
  return errors;
}

/** Mirror of the server's EmptyPath rule: no request for a blank path. */
export function validateAttachmentPath(path: string): string | null {
  return path.trim() ? null : "path must be non-empty";
}

/** The closed Register-of-Researchers category list. */
export const REGISTRY_CATEGORIES: readonly string[] = [
  "research associate",
  "senior research associate",
  "research advisor",
  "assistant professor",
  "associate professor",
  "full professor",
  "external associate: assistant professor",
  "external associate: senior assistant professor",
  "person with doctoral degree",
];

export function validateRegistryCategory(category: string): string | null {
  const normalized = category.trim().toLowerCase().replace(/\s+/g, " ");
  return REGISTRY_CATEGORIES.includes(normalized)
    ? null
    : `not a registrable category: ${category}`;
}

export const FURPS_CATEGORIES: readonly string[] = [
  "Functionality",
  "Usability",
  "Reliability",
  "Performance",
  "Supportability",
  "Implementation",
  "Interfaces",
  "Operations",
  "Packaging",
  "Licensing",
];

export const MOSCOW_PRIORITIES: readonly string[] = ["M", "S", "C", "W"];

export function validateRequirement(text: string, category: string, priority: string): string[] {
  const errors: string[] = [];
  if (!text.trim()) errors.push("requirement text is required");
  if (!FURPS_CATEGORIES.includes(category)) errors.push(`unknown category: ${category}`);
  if (!MOSCOW_PRIORITIES.includes(priority)) errors.push("priority must be M, S, C or W");
  return errors;
}

export function validatePerson(fullName: string, dateOfBirth: string): string[] {
  const errors: string[] = [];
  if (!fullName.trim()) errors.push("full name is required");
  if (!isIsoDate(dateOfBirth)) errors.push("date of birth must be an ISO date");
  return errors;
}
