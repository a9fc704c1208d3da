// Browser bootstrap: holds the app state, delegates DOM events to the pure
// helpers, and re-renders after every transition.

import { ApiError, Client } from "./api.js";
import {
  appendTask,
  blankEntry,
  blankWorkflow,
  diffDocs,
  moveField,
  moveFieldToColumn,
  moveFieldToRow,
  removeAt,
  resizeField,
  setField,
  toggleSetKind,
} from "./editors.js";
import type { CategoryDesc, Doc, DryRunTrace, ListEntry } from "./model.js";
import {
  renderDiff,
  renderEditorChrome,
  renderFieldGrid,
  renderGrantsEditor,
  renderKeyValuesEditor,
  renderListEditor,
  renderLogin,
  renderPropertiesEditor,
  renderShell,
  renderStatusList,
  renderWorkflowsEditor,
  esc,
} from "./render.js";
import {
  buildDashboard,
  editDoc,
  openEditor,
  reloadAfterConflict,
  saveConflicted,
  saveRejected,
  saveSucceeded,
  type Dashboard,
  type EditorState,
  type Session,
} from "./state.js";
import { buildXml, parseDoc } from "./xml.js";

interface App {
  session: Session | null;
  client: Client | null;
  dashboard: Dashboard | null;
  selected: string | null;
  editor: EditorState | null;
  view: "home" | "editor" | "diff" | "registry" | "metrics";
  diffHtml: string;
  pageHtml: string;
  banner: string | null;
  loginError: string | null;
  traces: Record<string, DryRunTrace>;
  dragIndex: number | null;
}

const app: App = {
  session: null,
  client: null,
  dashboard: null,
  selected: null,
  editor: null,
  view: "home",
  diffHtml: "",
  pageHtml: "",
  banner: null,
  loginError: null,
  traces: {},
  dragIndex: null,
};

const rootEl = () => document.getElementById("app")!;

function render(): void {
  if (!app.session || !app.dashboard) {
    rootEl().innerHTML = renderLogin(app.loginError);
    return;
  }
  let main: string;
  if (app.view === "registry" || app.view === "metrics") {
    main = app.pageHtml;
  } else if (app.editor) {
    const body = app.view === "diff" ? app.diffHtml : editorBody(app.editor);
    main = renderEditorChrome(app.editor, body);
  } else {
    main = renderStatusList(app.dashboard.statuses);
  }
  rootEl().innerHTML = renderShell(app.session, app.dashboard, app.selected, main, app.banner);
}

function editorBody(state: EditorState): string {
  const doc = state.doc;
  switch (doc.kind) {
    case "list":
      if (state.desc.slug === "fields") {
        return renderFieldGrid(doc.entries) + renderListEditor(state.desc, doc.entries);
      }
      return renderListEditor(state.desc, doc.entries);
    case "properties":
      return renderPropertiesEditor(state.desc, doc, state.lang ?? "en");
    case "grants":
      return renderGrantsEditor(doc);
    case "keyvalues":
      return renderKeyValuesEditor(doc);
    case "workflows":
      return renderWorkflowsEditor(doc, app.traces);
  }
}

function failure(error: unknown): void {
  if (error instanceof ApiError) {
    if (error.unauthenticated) {
      app.session = null;
      app.loginError = "session rejected; sign in again";
    } else if (error.accessDenied) {
      app.banner = `access denied: ${error.detail}`;
    } else {
      app.banner = error.message;
    }
  } else {
    app.banner = String(error);
  }
  render();
}

async function refreshDashboard(): Promise<void> {
  const client = app.client!;
  const session = app.session!;
  const descs = await client.categories();
  if (session.tenant === null) {
    app.dashboard = buildDashboard({ name: "provider", logo: "" }, descs, {});
    return;
  }
  const branding = await client.branding(session.tenant);
  const versions: Record<string, number> = {};
  await Promise.all(
    descs.map(async (desc) => {
      const config = await client.getConfig(session.tenant!, desc.slug);
      versions[desc.slug] = config.version;
    }),
  );
  app.dashboard = buildDashboard(branding, descs, versions);
}

async function login(form: HTMLFormElement): Promise<void> {
  const data = new FormData(form);
  const session: Session = {
    baseUrl: String(data.get("baseUrl") || "").trim(),
    token: String(data.get("token") || "").trim(),
    tenant: String(data.get("tenant") || "").trim() || null,
  };
  app.client = new Client(session.baseUrl, session.token);
  app.session = session;
  try {
    await refreshDashboard();
    app.loginError = null;
    app.banner = null;
    app.view = "home";
    app.editor = null;
  } catch (error) {
    app.session = null;
    app.dashboard = null;
    app.loginError =
      error instanceof ApiError && error.unauthenticated
        ? "unknown token"
        : `cannot reach the service: ${error instanceof Error ? error.message : error}`;
  }
  render();
}

function descOf(slug: string): CategoryDesc {
  return app.dashboard!.statuses.find((s) => s.desc.slug === slug)!.desc;
}

async function openCategory(slug: string, lang?: string): Promise<void> {
  const client = app.client!;
  const tenant = app.session!.tenant;
  if (!tenant) {
    app.banner = "provider sessions use the registry and metrics pages";
    render();
    return;
  }
  const desc = descOf(slug);
  const language = desc.shape === "properties" ? lang ?? desc.languages?.[0] ?? "en" : undefined;
  const config = await client.getConfig(tenant, slug, { lang: language });
  app.selected = slug;
  app.editor = openEditor(desc, parseDoc(desc, config.xml), config.version, language ?? null);
  app.view = "editor";
  app.banner = null;
  render();
}

async function save(): Promise<void> {
  const state = app.editor!;
  const client = app.client!;
  const tenant = app.session!.tenant!;
  const xml = buildXml(state.desc, state.doc);
  try {
    const version = await client.putConfig(
      tenant,
      state.desc.slug,
      xml,
      state.version,
      state.lang ?? undefined,
    );
    app.editor = saveSucceeded(state, version);
    await refreshDashboard();
  } catch (error) {
    if (error instanceof ApiError && error.conflict) {
      app.editor = saveConflicted(state);
    } else if (error instanceof ApiError && error.validationFailed) {
      app.editor = saveRejected(state, error.violations);
    } else {
      failure(error);
      return;
    }
  }
  render();
}

async function conflictReload(): Promise<void> {
  const state = app.editor!;
  const config = await app.client!.getConfig(app.session!.tenant!, state.desc.slug, {
    lang: state.lang ?? undefined,
  });
  app.editor = reloadAfterConflict(state, parseDoc(state.desc, config.xml), config.version);
  render();
}

async function showDiff(): Promise<void> {
  const state = app.editor!;
  const client = app.client!;
  const tenant = app.session!.tenant!;
  if (state.desc.shape === "properties") {
    const langs = state.desc.languages ?? ["en"];
    const sections: string[] = [];
    for (const lang of langs) {
      const defaults = parseDoc(
        state.desc,
        (await client.getConfig(tenant, state.desc.slug, { lang, source: "default" })).xml,
      );
      const current = parseDoc(
        state.desc,
        (await client.getConfig(tenant, state.desc.slug, { lang })).xml,
      );
      sections.push(`<h3>${esc(lang)}</h3>` + renderDiff(diffDocs(state.desc, defaults, current)));
    }
    app.diffHtml = sections.join("");
  } else {
    const defaults = parseDoc(
      state.desc,
      (await client.getConfig(tenant, state.desc.slug, { source: "default" })).xml,
    );
    app.diffHtml = renderDiff(diffDocs(state.desc, defaults, state.doc));
  }
  app.view = "diff";
  render();
}

function mutate(doc: Doc): void {
  app.editor = editDoc(app.editor!, doc);
  app.view = "editor";
  render();
}

function updateEntries(update: (entries: ListEntry[]) => ListEntry[]): void {
  const doc = app.editor!.doc;
  if (doc.kind !== "list") return;
  mutate({ kind: "list", entries: update(doc.entries) });
}

function handleFieldChange(target: HTMLElement): void {
  const ref = target.dataset.ref!;
  const [indexText, fieldName] = ref.split(":");
  const state = app.editor!;
  if (state.doc.kind !== "list") return;
  const field = state.desc.fields.find((f) => f.name === fieldName)!;
  const raw =
    field.type === "bool"
      ? (target as HTMLInputElement).checked
      : (target as HTMLInputElement | HTMLSelectElement).value;
  updateEntries((entries) => setField(entries, parseInt(indexText, 10), field, raw));
}

function handlePropertiesChange(action: string, target: HTMLElement): void {
  const state = app.editor!;
  if (state.doc.kind !== "properties") return;
  const doc = { kind: "properties" as const, labels: [...state.doc.labels], texts: [...state.doc.texts] };
  const ref = (target.dataset.ref ?? "").split(":");
  if (action === "prop") {
    const [section, index, part] = ref as ["labels" | "texts", string, "name" | "value"];
    const rows = doc[section].slice();
    const i = parseInt(index, 10);
    rows[i] = { ...rows[i], [part]: (target as HTMLInputElement).value.trim() };
    doc[section] = rows;
  } else if (action === "prop-add") {
    doc[ref[0] as "labels" | "texts"] = [...doc[ref[0] as "labels" | "texts"], { name: "", value: "" }];
  } else if (action === "prop-remove") {
    const [section, index] = ref as ["labels" | "texts", string];
    doc[section] = removeAt(doc[section], parseInt(index, 10));
  }
  mutate(doc);
}

function handleGrantsChange(action: string, target: HTMLElement): void {
  const state = app.editor!;
  if (state.doc.kind !== "grants") return;
  const rules = state.doc.rules.map((r) => ({ role: r.role, grants: r.grants.slice() }));
  const ref = (target.dataset.ref ?? "").split(":").map((p) => parseInt(p, 10));
  if (action === "grant-role") {
    rules[ref[0]].role = (target as HTMLInputElement).value.trim();
  } else if (action === "grant-name") {
    rules[ref[0]].grants[ref[1]] = {
      ...rules[ref[0]].grants[ref[1]],
      name: (target as HTMLInputElement).value.trim(),
    };
  } else if (action === "grant-use") {
    rules[ref[0]].grants[ref[1]] = {
      ...rules[ref[0]].grants[ref[1]],
      use: (target as HTMLInputElement).checked,
    };
  } else if (action === "grant-add") {
    rules[ref[0]].grants.push({ name: "", use: false });
  } else if (action === "grant-remove") {
    rules[ref[0]].grants = removeAt(rules[ref[0]].grants, ref[1]);
  } else if (action === "rule-add") {
    rules.push({ role: "", grants: [] });
  }
  mutate({ kind: "grants", rules });
}

function handleKeyValuesChange(action: string, target: HTMLElement): void {
  const state = app.editor!;
  if (state.doc.kind !== "keyvalues") return;
  const settings = state.doc.settings.map((s) => ({
    ...s,
    items: s.items ? s.items.slice() : null,
  }));
  const ref = (target.dataset.ref ?? "").split(":").map((p) => parseInt(p, 10));
  const value = (target as HTMLInputElement).value;
  if (action === "kv-key") settings[ref[0]].key = value.trim();
  else if (action === "kv-scalar") settings[ref[0]].scalar = value.trim();
  else if (action === "kv-item") settings[ref[0]].items![ref[1]] = value.trim();
  else if (action === "kv-item-add") settings[ref[0]].items!.push("");
  else if (action === "kv-item-remove")
    settings[ref[0]].items = removeAt(settings[ref[0]].items!, ref[1]);
  else if (action === "kv-kind") settings[ref[0]] = toggleSetKind(settings[ref[0]]);
  else if (action === "kv-add") settings.push({ key: "", scalar: "", items: null });
  else if (action === "kv-remove") settings.splice(ref[0], 1);
  mutate({ kind: "keyvalues", settings });
}

function handleWorkflowChange(action: string, target: HTMLElement): void {
  const state = app.editor!;
  if (state.doc.kind !== "workflows") return;
  const workflows = state.doc.workflows.map((w) => ({ ...w, tasks: w.tasks.slice() }));
  const refParts = (target.dataset.ref ?? "").split(":");
  const w = parseInt(refParts[0] || "0", 10);
  const value = (target as HTMLInputElement).value;
  if (action === "wf") {
    const part = refParts[1] as "id" | "name" | "role";
    workflows[w] = { ...workflows[w], [part]: value.trim() };
  } else if (action === "task") {
    const t = parseInt(refParts[1], 10);
    const part = refParts[2];
    const task = { ...workflows[w].tasks[t] };
    if (part === "step") task.step = parseInt(value, 10) || 0;
    else if (part === "rule") task.rule = value.trim() === "" ? null : value;
    else (task as any)[part] = value.trim();
    workflows[w].tasks[t] = task;
  } else if (action === "task-add") {
    workflows[w] = appendTask(workflows[w]);
  } else if (action === "wf-add") {
    workflows.push(blankWorkflow("SP_ROLE"));
  } else if (action === "wf-remove") {
    workflows.splice(w, 1);
  }
  mutate({ kind: "workflows", workflows });
}

async function dryRun(index: number): Promise<void> {
  const state = app.editor!;
  if (state.doc.kind !== "workflows") return;
  const wf = state.doc.workflows[index];
  try {
    app.traces[wf.id] = await app.client!.dryRun(app.session!.tenant!, wf.id);
    render();
  } catch (error) {
    if (error instanceof ApiError && error.status === 404) {
      app.banner = "save the workflow before dry-running it";
      render();
    } else {
      failure(error);
    }
  }
}

async function handleAction(action: string, target: HTMLElement, event: Event): Promise<void> {
  switch (action) {
    case "logout":
      app.session = null;
      app.dashboard = null;
      app.editor = null;
      render();
      return;
    case "open":
      await openCategory(target.dataset.slug!);
      return;
    case "lang":
      await openCategory(app.selected!, (target as HTMLSelectElement).value);
      return;
    case "save":
      await save();
      return;
    case "conflict-reload":
      await conflictReload();
      return;
    case "show-diff":
      await showDiff();
      return;
    case "reset-category": {
      await app.client!.resetConfig(app.session!.tenant!, app.selected!);
      await refreshDashboard();
      await openCategory(app.selected!);
      return;
    }
    case "add-entry":
      updateEntries((entries) => [...entries, blankEntry(app.editor!.desc)]);
      return;
    case "remove-entry":
      updateEntries((entries) => removeAt(entries, parseInt(target.dataset.index!, 10)));
      return;
    case "field":
      handleFieldChange(target);
      return;
    case "nudge":
      updateEntries((entries) => {
        const i = parseInt(target.dataset.index!, 10);
        const next = entries.slice();
        next[i] = moveField(next[i], parseInt(target.dataset.delta!, 10));
        return next;
      });
      return;
    case "stretch":
      updateEntries((entries) => {
        const i = parseInt(target.dataset.index!, 10);
        const next = entries.slice();
        next[i] = resizeField(next[i], parseInt(target.dataset.delta!, 10));
        return next;
      });
      return;
    case "registry": {
      const body = await app.client!.registry();
      app.pageHtml = `<h2>Central registry</h2><pre>${esc(JSON.stringify(body, null, 2))}</pre>`;
      app.view = "registry";
      render();
      return;
    }
    case "metrics": {
      const text = await app.client!.metrics();
      app.pageHtml = `<h2>Cache metrics</h2><pre>${esc(text)}</pre>`;
      app.view = "metrics";
      render();
      return;
    }
    case "dry-run":
      await dryRun(parseInt(target.dataset.ref!, 10));
      return;
    default:
      break;
  }
  if (action.startsWith("prop")) handlePropertiesChange(action, target);
  else if (action.startsWith("grant") || action === "rule-add") handleGrantsChange(action, target);
  else if (action.startsWith("kv")) handleKeyValuesChange(action, target);
  else if (action.startsWith("wf") || action.startsWith("task")) handleWorkflowChange(action, target);
}

function wireEvents(): void {
  const root = rootEl();
  root.addEventListener("click", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    const action = target.dataset.action!;
    if (target.tagName === "INPUT" || target.tagName === "SELECT") return;
    if (action === "login") return;
    event.preventDefault();
    void handleAction(action, target, event).catch(failure);
  });
  root.addEventListener("change", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>("[data-action]");
    if (!target) return;
    void handleAction(target.dataset.action!, target, event).catch(failure);
  });
  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    if (form.dataset.action === "login") {
      event.preventDefault();
      void login(form).catch(failure);
    }
  });
  root.addEventListener("dragstart", (event) => {
    const target = (event.target as HTMLElement).closest<HTMLElement>(
      '[data-action="drag-field"]',
    );
    if (target) app.dragIndex = parseInt(target.dataset.index!, 10);
  });
  root.addEventListener("dragover", (event) => {
    const cell = (event.target as HTMLElement).closest<HTMLElement>('[data-action="drop-cell"]');
    if (cell && app.dragIndex !== null) event.preventDefault();
  });
  root.addEventListener("drop", (event) => {
    const cell = (event.target as HTMLElement).closest<HTMLElement>('[data-action="drop-cell"]');
    if (!cell || app.dragIndex === null) return;
    event.preventDefault();
    const index = app.dragIndex;
    app.dragIndex = null;
    updateEntries((entries) => {
      const next = entries.slice();
      next[index] = moveFieldToRow(
        moveFieldToColumn(next[index], cell.dataset.col!),
        parseInt(cell.dataset.row!, 10),
      );
      return next;
    });
  });
}

wireEvents();
render();
