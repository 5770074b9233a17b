/**
 * Client-side copy of the appointment-procedure transition table.
 *
 * The console offers exactly the actions this table declares legal for
 * the current state; a contract test asserts agreement with the
 * server's `legal_events` for every reachable state, so an offered
 * action can fail only on a stale version or a payload guard, never as
 * an illegal transition.
 */

export type ProcedureState =
  | "Initiated"
  | "CommitteeSelected"
  | "VacancyAnnounced"
  | "AcceptingApplications"
  | "ApplicationsClosed"
  | "ReportSubmitted"
  | "BoardDecided"
  | "SenateConfirmed"
  | "Recognized"
  | "Terminated";

export type EventKind =
  | "initiate-decision"
  | "select-committee"
  | "announce-vacancy"
  | "receive-application"
  | "close-applications"
  | "submit-report"
  | "board-decision"
  | "senate-confirmation"
  | "recognize-appointments"
  | "terminate";

/** Canonical kind order; mirrors the server's event registry order. */
export const EVENT_ORDER: readonly EventKind[] = [
  "initiate-decision",
  "select-committee",
  "announce-vacancy",
  "receive-application",
  "close-applications",
  "submit-report",
  "board-decision",
  "senate-confirmation",
  "recognize-appointments",
  "terminate",
];

export const TERMINAL_STATES: readonly ProcedureState[] = ["Recognized", "Terminated"];

export const TRANSITIONS: Readonly<
  Partial<Record<ProcedureState, Partial<Record<EventKind, ProcedureState>>>>
> = {
  Initiated: { "select-committee": "CommitteeSelected" },
  CommitteeSelected: { "announce-vacancy": "VacancyAnnounced" },
  VacancyAnnounced: {
    "receive-application": "AcceptingApplications",
    "close-applications": "ApplicationsClosed",
  },
  AcceptingApplications: {
    "receive-application": "AcceptingApplications",
    "close-applications": "ApplicationsClosed",
  },
  ApplicationsClosed: { "submit-report": "ReportSubmitted" },
  ReportSubmitted: { "board-decision": "BoardDecided" },
  BoardDecided: { "senate-confirmation": "SenateConfirmed" },
  SenateConfirmed: { "recognize-appointments": "Recognized" },
};

export const ALL_STATES: readonly ProcedureState[] = [
  "Initiated",
  "CommitteeSelected",
  "VacancyAnnounced",
  "AcceptingApplications",
  "ApplicationsClosed",
  "ReportSubmitted",
  "BoardDecided",
  "SenateConfirmed",
  "Recognized",
  "Terminated",
];

export function isTerminal(state: ProcedureState): boolean {
  return TERMINAL_STATES.includes(state);
}

/** Event kinds legal in `state`, in the server's ordering. */
export function legalEvents(state: ProcedureState): EventKind[] {
  const table = TRANSITIONS[state] ?? {};
  const kinds = EVENT_ORDER.filter((kind) => kind in table);
  if (!isTerminal(state)) {
    kinds.push("terminate");
  }
  return kinds;
}

/** Human labels for action buttons. */
export const EVENT_LABELS: Record<EventKind, string> = {
  "initiate-decision": "Initiate procedure",
  "select-committee": "Select committee",
  "announce-vacancy": "Announce vacancy",
  "receive-application": "Receive application",
  "close-applications": "Close applications",
  "submit-report": "Submit committee report",
  "board-decision": "Record board decision",
  "senate-confirmation": "Confirm (senate)",
  "recognize-appointments": "Recognize appointments",
  terminate: "Terminate procedure",
};
