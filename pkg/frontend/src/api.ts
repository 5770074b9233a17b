/**
 * Typed client for the unihr HTTP API. The console talks to the
 * service exclusively through this module; it never computes domain
 * state locally beyond what the server response carries.
 */

import type { EventKind, ProcedureState } from "./transitions.js";

export interface Grade {
  name: string;
  track: string;
  rank: number;
}

export interface Person {
  person_id: string;
  full_name: string;
  date_of_birth: string;
  doctoral_degree: boolean;
}

export interface HistoryStep {
  kind: EventKind;
  actor: string;
  occurred_at: string | null;
  payload: Record<string, unknown>;
  resulting_state: ProcedureState;
}

export interface Applicant {
  person_id: string;
  received_at: string | null;
  documents: string[];
}

export interface Procedure {
  procedure_id: string;
  target_grade: Grade;
  state: ProcedureState;
  committee: string[];
  applicants: Applicant[];
  promoted: string[];
  version: number;
  legal_events: EventKind[];
  history: HistoryStep[];
}

export interface Appointment {
  appointment_id: string;
  person_id: string;
  grade: Grade;
  procedure_id: string;
  valid_from: string;
  valid_to: string | null;
}

export interface ExpiryRow {
  appointment_id: string;
  person_id: string;
  grade: string;
  valid_to: string;
  status: "InitiationDue" | "Expired";
  days_remaining: number;
  deadline_to_initiate: string;
}

export interface RegistryApplication {
  application_id: string;
  person_id: string;
  category: string;
  documents: string[];
  status: "Submitted" | "Approved" | "Rejected";
  submitted_at: string;
  scientist_id: string | null;
  rejection_reason: string | null;
  ack_token: string | null;
}

export interface RegistryEntry {
  scientist_id: string;
  person_id: string;
  category: string;
  registered_at: string;
}

export interface Publication {
  source_key: string;
  title: string;
  type_of_work: string;
  publishing_date: string;
  url: string;
}

export interface SyncReport {
  added: number;
  updated: number;
  unchanged: number;
}

export interface AttachedDocument {
  document_id: string;
  owner: { kind: string; id: string };
  path: string;
  declared_format: string;
  attached_at: string;
  description: string;
}

export interface Requirement {
  requirement_id: string;
  text: string;
  kind: "Functional" | "NonFunctional";
  category: string;
  priority: "M" | "S" | "C" | "W";
  created_at: string;
}

export class HrApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details?: Record<string, unknown>,
  ) {
    super(message);
  }

  get guard(): string | undefined {
    return typeof this.details?.guard === "string" ? this.details.guard : undefined;
  }
}

export class HrClient {
  constructor(
    readonly baseUrl: string,
    readonly token: string = "",
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    headers: Record<string, string> = {},
  ): Promise<T> {
    const allHeaders: Record<string, string> = { ...headers };
    if (body !== undefined) allHeaders["Content-Type"] = "application/json";
    if (this.token) allHeaders["Authorization"] = `Bearer ${this.token}`;
    let response: Response;
    try {
      response = await fetch(this.baseUrl + path, {
        method,
        headers: allHeaders,
        body: body === undefined ? undefined : JSON.stringify(body),
      });
    } catch (cause) {
      throw new HrApiError(0, "Unreachable", `service unreachable: ${cause}`);
    }
    if (response.status === 204) return undefined as T;
    const text = await response.text();
    let parsed: unknown = null;
    try {
      parsed = text ? JSON.parse(text) : null;
    } catch {
      if (response.ok) return text as T; // csv/ndjson exports
      throw new HrApiError(response.status, "BadResponse", text.slice(0, 200));
    }
    if (!response.ok) {
      const error = (parsed as { error?: { code?: string; message?: string; details?: Record<string, unknown> } })?.error;
      throw new HrApiError(
        response.status,
        error?.code ?? `HTTP${response.status}`,
        error?.message ?? response.statusText,
        error?.details,
      );
    }
    return parsed as T;
  }

  // health
  ready(): Promise<{ status: string }> {
    return this.request("GET", "/readyz");
  }

  // grade catalog
  grades(): Promise<Grade[]> {
    return this.request("GET", "/grades");
  }

  // persons
  persons(): Promise<Person[]> {
    return this.request("GET", "/persons");
  }

  createPerson(fullName: string, dateOfBirth: string, doctoralDegree: boolean): Promise<Person> {
    return this.request("POST", "/persons", {
      full_name: fullName,
      date_of_birth: dateOfBirth,
      doctoral_degree: doctoralDegree,
    });
  }

  // procedures
  procedures(): Promise<Procedure[]> {
    return this.request("GET", "/procedures");
  }

  procedure(id: string): Promise<Procedure> {
    return this.request("GET", `/procedures/${encodeURIComponent(id)}`);
  }

  openProcedure(grade: string, track: string, councilRef: string): Promise<Procedure> {
    return this.request("POST", "/procedures", {
      grade,
      track,
      council_ref: councilRef,
    });
  }

  postEvent(
    id: string,
    kind: EventKind,
    payload: Record<string, unknown>,
    expectedVersion: number,
  ): Promise<Procedure> {
    return this.request(
      "POST",
      `/procedures/${encodeURIComponent(id)}/events`,
      { kind, payload },
      { "X-Expected-Version": String(expectedVersion) },
    );
  }

  // appointments and expiry
  appointments(personId?: string): Promise<Appointment[]> {
    const query = personId ? `?person_id=${encodeURIComponent(personId)}` : "";
    return this.request("GET", `/appointments${query}`);
  }

  expiryReview(asOf: string): Promise<ExpiryRow[]> {
    return this.request("GET", `/expiry-review?as_of=${encodeURIComponent(asOf)}`);
  }

  expiryReviewRaw(asOf: string): Promise<string> {
    if (this.token) {
      return fetch(`${this.baseUrl}/expiry-review?as_of=${encodeURIComponent(asOf)}`, {
        headers: { Authorization: `Bearer ${this.token}` },
      }).then((r) => r.text());
    }
    return fetch(`${this.baseUrl}/expiry-review?as_of=${encodeURIComponent(asOf)}`).then((r) =>
      r.text(),
    );
  }

  // registry
  registryApplications(): Promise<RegistryApplication[]> {
    return this.request("GET", "/registry/applications");
  }

  registryEntries(): Promise<RegistryEntry[]> {
    return this.request("GET", "/registry/entries");
  }

  submitRegistration(
    personId: string,
    category: string,
    documents: string[],
  ): Promise<RegistryApplication> {
    return this.request("POST", "/registry/applications", {
      person_id: personId,
      category,
      documents,
    });
  }

  recordDecision(
    applicationId: string,
    decision: "approved" | "rejected",
    scientistId?: string,
    reason?: string,
  ): Promise<RegistryApplication> {
    return this.request(
      "POST",
      `/registry/applications/${encodeURIComponent(applicationId)}/decision`,
      { decision, scientist_id: scientistId, reason },
    );
  }

  // publications
  publications(personId: string, typeOfWork?: string): Promise<Publication[]> {
    const query = typeOfWork ? `?type_of_work=${encodeURIComponent(typeOfWork)}` : "";
    return this.request("GET", `/publications/${encodeURIComponent(personId)}${query}`);
  }

  syncPublications(personId: string): Promise<SyncReport> {
    return this.request("POST", `/publications/sync/${encodeURIComponent(personId)}`);
  }

  mapAuthor(personId: string, authorKey: string): Promise<unknown> {
    return this.request("PUT", `/publications/mappings/${encodeURIComponent(personId)}`, {
      author_key: authorKey,
    });
  }

  // documents
  documents(ownerKind: string, ownerId: string): Promise<AttachedDocument[]> {
    return this.request(
      "GET",
      `/documents?owner_kind=${encodeURIComponent(ownerKind)}&owner_id=${encodeURIComponent(ownerId)}`,
    );
  }

  attachDocument(
    owner: { kind: string; id: string },
    path: string,
    declaredFormat: string,
    description: string,
  ): Promise<AttachedDocument> {
    return this.request("POST", "/documents", {
      owner,
      path,
      declared_format: declaredFormat,
      description,
    });
  }

  resolveDocument(documentId: string): Promise<{ document_id: string; path: string; declared_format: string }> {
    return this.request("GET", `/documents/${encodeURIComponent(documentId)}`);
  }

  // requirements
  requirements(): Promise<Requirement[]> {
    return this.request("GET", "/requirements");
  }

  backlog(): Promise<Requirement[]> {
    return this.request("GET", "/requirements/backlog");
  }

  addRequirement(text: string, category: string, priority: string): Promise<Requirement> {
    return this.request("POST", "/requirements", { text, category, priority });
  }
}
