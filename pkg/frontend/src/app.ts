/**
 * Console shell: hash router, connection settings, navigation.
 *
 * The console holds no domain state of its own; every view fetches
 * from the service when entered and after each mutation.
 */

import { HrClient } from "./api.js";
import { clear, el, errorBox } from "./dom.js";
import { renderDashboard } from "./views/dashboard.js";
import { renderProcedureDetail, renderProcedureList } from "./views/procedures.js";
import {
  renderBacklog,
  renderPersons,
  renderPublications,
  renderRegistry,
} from "./views/records.js";

const SETTINGS_KEY = "unihr-console-settings";

interface Settings {
  baseUrl: string;
  token: string;
}

function loadSettings(): Settings {
  try {
    const raw = localStorage.getItem(SETTINGS_KEY);
    if (raw) return JSON.parse(raw) as Settings;
  } catch {
    // fall through to defaults
  }
  return { baseUrl: "http://127.0.0.1:8000", token: "" };
}

function saveSettings(settings: Settings): void {
  localStorage.setItem(SETTINGS_KEY, JSON.stringify(settings));
}

function navigate(hash: string): void {
  if (location.hash === hash) {
    void route();
  } else {
    location.hash = hash;
  }
}

const NAV_ITEMS: Array<[string, string]> = [
  ["#/dashboard", "Expiry review"],
  ["#/procedures", "Procedures"],
  ["#/persons", "Persons"],
  ["#/registry", "Registry"],
  ["#/publications", "Publications"],
  ["#/backlog", "Backlog"],
];

function settingsBar(): HTMLElement {
  const settings = loadSettings();
  const urlInput = el("input", { value: settings.baseUrl, size: "28" }) as HTMLInputElement;
  const tokenInput = el("input", {
    value: settings.token,
    placeholder: "bearer token (optional)",
    size: "20",
  }) as HTMLInputElement;
  return el(
    "form",
    {
      class: "settings-bar",
      onsubmit: (event) => {
        event.preventDefault();
        saveSettings({ baseUrl: urlInput.value.replace(/\/$/, ""), token: tokenInput.value });
        void route();
      },
    },
    el("span", {}, "Service:"),
    urlInput,
    tokenInput,
    el("button", { type: "submit" }, "Connect"),
  );
}

async function route(): Promise<void> {
  const main = document.getElementById("view");
  if (!main) return;
  const settings = loadSettings();
  const client = new HrClient(settings.baseUrl, settings.token);
  const ctx = { client, navigate };
  const [path, query] = location.hash.replace(/^#/, "").split("?");
  const segments = path.split("/").filter(Boolean);

  clear(main as HTMLElement);
  try {
    if (segments.length === 0 || segments[0] === "dashboard") {
      await renderDashboard(main, ctx, segments[1]);
    } else if (segments[0] === "procedures" && segments.length === 1) {
      const params = new URLSearchParams(query ?? "");
      const prefill = params.get("grade")
        ? {
            grade: params.get("grade") ?? "",
            track: params.get("track") || null,
            council_ref: params.get("council_ref") ?? "",
          }
        : undefined;
      await renderProcedureList(main, ctx, prefill);
    } else if (segments[0] === "procedures") {
      await renderProcedureDetail(main, ctx, segments[1]);
    } else if (segments[0] === "persons") {
      await renderPersons(main, ctx);
    } else if (segments[0] === "registry") {
      await renderRegistry(main, ctx);
    } else if (segments[0] === "publications") {
      await renderPublications(main, ctx, segments[1]);
    } else if (segments[0] === "backlog") {
      await renderBacklog(main, ctx);
    } else {
      main.append(errorBox(`unknown view: ${path}`));
    }
  } catch (error) {
    main.append(errorBox("failed to load view", String(error)));
  }
}

export function start(): void {
  const header = document.getElementById("topbar");
  if (header) {
    header.append(
      el("h1", {}, "unihr console"),
      el(
        "nav",
        {},
        ...NAV_ITEMS.map(([hash, label]) => el("a", { href: hash }, label)),
      ),
      settingsBar(),
    );
  }
  window.addEventListener("hashchange", () => void route());
  void route();
}

start();
