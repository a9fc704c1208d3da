// HTML renderers: pure state -> markup strings. Interactive elements carry
// data-action attributes; main.ts owns the event delegation.

import type { DiffLine } from "./editors.js";
import { colIndex, indexToCol, parseCell } from "./editors.js";
import type {
  CategoryDesc,
  Doc,
  DryRunTrace,
  FieldDesc,
  ListEntry,
  Violation,
} from "./model.js";
import type { CategoryStatus, Dashboard, EditorState, Session } from "./state.js";

export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderLogin(error: string | null): string {
  return `
  <div class="login">
    <h1>Tenant Configuration</h1>
    ${error ? `<p class="error">${esc(error)}</p>` : ""}
    <form data-action="login">
      <label>Server URL <input name="baseUrl" value="http://127.0.0.1:8000" /></label>
      <label>Tenant id <input name="tenant" placeholder="blank for provider" /></label>
      <label>Bearer token <input name="token" type="password" required /></label>
      <button type="submit">Sign in</button>
    </form>
  </div>`;
}

export function renderShell(
  session: Session,
  dashboard: Dashboard,
  selected: string | null,
  main: string,
  banner: string | null,
): string {
  const who = session.tenant ?? "provider";
  const nav = dashboard.statuses
    .map(
      (status) => `
      <li class="${status.desc.slug === selected ? "active" : ""}">
        <a href="#" data-action="open" data-slug="${status.desc.slug}">${status.desc.slug}</a>
        <span class="badge ${status.badge}">${status.badge}</span>
      </li>`,
    )
    .join("");
  const providerNav =
    session.tenant === null
      ? `<li><a href="#" data-action="registry">registry</a></li>
         <li><a href="#" data-action="metrics">metrics</a></li>`
      : "";
  return `
  <header>
    <img class="logo" src="${esc(dashboard.branding.logo)}" alt="logo" />
    <strong>${esc(dashboard.branding.name || who)}</strong>
    <span class="who">${esc(who)}</span>
    <a href="#" data-action="logout">sign out</a>
  </header>
  ${banner ? `<div class="banner">${esc(banner)}</div>` : ""}
  <div class="panes">
    <nav><ul>${nav}${providerNav}</ul></nav>
    <main>${main}</main>
  </div>`;
}

function inputFor(field: FieldDesc, entry: ListEntry, index: number): string {
  const name = `${index}:${field.name}`;
  const value = entry[field.name];
  if (field.type === "bool") {
    return `<input type="checkbox" data-action="field" data-ref="${name}" ${value ? "checked" : ""} />`;
  }
  if (field.type === "enum") {
    const options = (field.values ?? [])
      .map((v) => `<option ${v === value ? "selected" : ""}>${esc(v)}</option>`)
      .join("");
    return `<select data-action="field" data-ref="${name}">${options}</select>`;
  }
  const size = field.type === "cell" ? 5 : 18;
  return `<input data-action="field" data-ref="${name}" value="${esc(value)}" size="${size}" />`;
}

export function renderListEditor(desc: CategoryDesc, entries: ListEntry[]): string {
  const head = desc.fields.map((f) => `<th>${esc(f.name)}</th>`).join("");
  const rows = entries
    .map(
      (entry, i) => `
      <tr>
        ${desc.fields.map((f) => `<td>${inputFor(f, entry, i)}</td>`).join("")}
        <td><button data-action="remove-entry" data-index="${i}">remove</button></td>
      </tr>`,
    )
    .join("");
  return `
  <table class="entries">
    <thead><tr>${head}<th></th></tr></thead>
    <tbody>${rows}</tbody>
  </table>
  <button data-action="add-entry">add entry</button>`;
}

const GRID_COLUMNS = 20;

export function renderFieldGrid(entries: ListEntry[]): string {
  const rows = new Map<number, { index: number; from: number; to: number; name: string; display: boolean }[]>();
  entries.forEach((entry, index) => {
    try {
      const from = parseCell(String(entry.position_from));
      const to = parseCell(String(entry.position_to));
      const list = rows.get(from.row) ?? [];
      list.push({
        index,
        from: colIndex(from.column),
        to: colIndex(to.column),
        name: String(entry.field_name),
        display: Boolean(entry.display),
      });
      rows.set(from.row, list);
    } catch {
      // malformed cells are still editable through the table below
    }
  });
  const rowNumbers = [...rows.keys()].sort((a, b) => a - b);
  const gridRows = rowNumbers
    .map((row) => {
      const spans = rows.get(row) ?? [];
      const cells: string[] = [];
      for (let col = 1; col <= GRID_COLUMNS; col++) {
        const span = spans.find((s) => s.from <= col && col <= s.to);
        if (span && span.from === col) {
          const width = Math.min(span.to, GRID_COLUMNS) - col + 1;
          cells.push(
            `<td colspan="${width}" class="span ${span.display ? "" : "hidden-field"}"
                 draggable="true" data-action="drag-field" data-index="${span.index}">
               ${esc(span.name)} <small>${indexToCol(span.from)}${row}&#8594;${indexToCol(span.to)}${row}</small>
               <button data-action="nudge" data-index="${span.index}" data-delta="-1">&#8592;</button>
               <button data-action="nudge" data-index="${span.index}" data-delta="1">&#8594;</button>
               <button data-action="stretch" data-index="${span.index}" data-delta="1">+</button>
               <button data-action="stretch" data-index="${span.index}" data-delta="-1">&#8722;</button>
             </td>`,
          );
          col += width - 1;
        } else if (!span) {
          cells.push(
            `<td class="free" data-action="drop-cell" data-row="${row}" data-col="${indexToCol(col)}"></td>`,
          );
        }
      }
      return `<tr><th>${row}</th>${cells.join("")}</tr>`;
    })
    .join("");
  const header = Array.from({ length: GRID_COLUMNS }, (_, i) => `<th>${indexToCol(i + 1)}</th>`).join("");
  return `
  <table class="grid">
    <thead><tr><th></th>${header}</tr></thead>
    <tbody>${gridRows}</tbody>
  </table>
  <p class="hint">Drag a field along its row or use the arrows; +/&#8722; stretches the span.</p>`;
}

export function renderPropertiesEditor(
  desc: CategoryDesc,
  doc: Extract<Doc, { kind: "properties" }>,
  lang: string,
): string {
  const langs = (desc.languages ?? ["en"])
    .map((l) => `<option ${l === lang ? "selected" : ""}>${esc(l)}</option>`)
    .join("");
  const table = (section: "labels" | "texts") =>
    doc[section]
      .map(
        (row, i) => `
        <tr>
          <td><input data-action="prop" data-ref="${section}:${i}:name" value="${esc(row.name)}" /></td>
          <td><input data-action="prop" data-ref="${section}:${i}:value" value="${esc(row.value)}" /></td>
          <td><button data-action="prop-remove" data-ref="${section}:${i}">remove</button></td>
        </tr>`,
      )
      .join("");
  return `
  <label>Language <select data-action="lang">${langs}</select></label>
  <h3>Labels</h3>
  <table class="entries"><tbody>${table("labels")}</tbody></table>
  <button data-action="prop-add" data-ref="labels">add label</button>
  <h3>Texts</h3>
  <table class="entries"><tbody>${table("texts")}</tbody></table>
  <button data-action="prop-add" data-ref="texts">add text</button>`;
}

export function renderGrantsEditor(doc: Extract<Doc, { kind: "grants" }>): string {
  const rules = doc.rules
    .map(
      (rule, r) => `
      <fieldset>
        <legend><input data-action="grant-role" data-ref="${r}" value="${esc(rule.role)}" /></legend>
        ${rule.grants
          .map(
            (g, i) => `
            <div>
              <input data-action="grant-name" data-ref="${r}:${i}" value="${esc(g.name)}" />
              <label><input type="checkbox" data-action="grant-use" data-ref="${r}:${i}" ${g.use ? "checked" : ""} /> allowed</label>
              <button data-action="grant-remove" data-ref="${r}:${i}">remove</button>
            </div>`,
          )
          .join("")}
        <button data-action="grant-add" data-ref="${r}">add BOL</button>
      </fieldset>`,
    )
    .join("");
  return `${rules}<button data-action="rule-add">add role rule</button>`;
}

export function renderKeyValuesEditor(doc: Extract<Doc, { kind: "keyvalues" }>): string {
  const rows = doc.settings
    .map((setting, i) => {
      const valueCell =
        setting.items === null
          ? `<input data-action="kv-scalar" data-ref="${i}" value="${esc(setting.scalar ?? "")}" />`
          : setting.items
              .map(
                (item, j) =>
                  `<span class="item"><input data-action="kv-item" data-ref="${i}:${j}" value="${esc(item)}" />
                   <button data-action="kv-item-remove" data-ref="${i}:${j}">x</button></span>`,
              )
              .join("") + `<button data-action="kv-item-add" data-ref="${i}">add item</button>`;
      return `
      <tr>
        <td><input data-action="kv-key" data-ref="${i}" value="${esc(setting.key)}" /></td>
        <td>${valueCell}</td>
        <td><button data-action="kv-kind" data-ref="${i}">${setting.items === null ? "make set" : "make scalar"}</button></td>
        <td><button data-action="kv-remove" data-ref="${i}">remove</button></td>
      </tr>`;
    })
    .join("");
  return `
  <table class="entries"><tbody>${rows}</tbody></table>
  <button data-action="kv-add">add setting</button>`;
}

export function renderWorkflowsEditor(
  doc: Extract<Doc, { kind: "workflows" }>,
  traces: Record<string, DryRunTrace>,
): string {
  return (
    doc.workflows
      .map((wf, w) => {
        const trace = traces[wf.id];
        const tasks = wf.tasks
          .map(
            (task, t) => `
          <tr>
            <td><input data-action="task" data-ref="${w}:${t}:step" value="${task.step}" size="3" /></td>
            <td><input data-action="task" data-ref="${w}:${t}:activity" value="${esc(task.activity)}" /></td>
            <td><input data-action="task" data-ref="${w}:${t}:bo" value="${esc(task.bo)}" /></td>
            <td><input data-action="task" data-ref="${w}:${t}:method" value="${esc(task.method)}" /></td>
            <td><input data-action="task" data-ref="${w}:${t}:rule" value="${esc(task.rule ?? "")}" placeholder="(no rule)" /></td>
            <td>${trace?.steps.find((s) => s.step === task.step)?.verdict ?? ""}</td>
          </tr>`,
          )
          .join("");
        return `
      <fieldset>
        <legend>
          <input data-action="wf" data-ref="${w}:id" value="${esc(wf.id)}" placeholder="id" />
          <input data-action="wf" data-ref="${w}:name" value="${esc(wf.name)}" placeholder="name" />
          role <input data-action="wf" data-ref="${w}:role" value="${esc(wf.role)}" />
        </legend>
        <table class="entries">
          <thead><tr><th>step</th><th>activity</th><th>BO</th><th>method</th><th>rule</th><th>verdict</th></tr></thead>
          <tbody>${tasks}</tbody>
        </table>
        <button data-action="task-add" data-ref="${w}">add task</button>
        <button data-action="dry-run" data-ref="${w}">dry-run</button>
        <button data-action="wf-remove" data-ref="${w}">remove workflow</button>
      </fieldset>`;
      })
      .join("") + `<button data-action="wf-add">add workflow</button>`
  );
}

export function renderDiff(lines: DiffLine[]): string {
  if (lines.length === 0) return `<p class="hint">No differences against the vendor default.</p>`;
  return `<pre class="diff">${lines
    .map((l) => `<span class="op-${l.op === "+" ? "add" : l.op === "-" ? "del" : "chg"}">${l.op} ${esc(l.tag)} ${esc(l.key)}</span>`)
    .join("\n")}</pre>`;
}

export function renderViolations(violations: Violation[]): string {
  if (violations.length === 0) return "";
  return `<ul class="violations">${violations
    .map((v) => `<li><code>${esc(v.code)}</code> ${esc(v.entry)}: ${esc(v.detail)}</li>`)
    .join("")}</ul>`;
}

export function renderEditorChrome(state: EditorState, body: string): string {
  const conflict = state.conflict
    ? `<div class="conflict">
         Someone saved a newer version of <strong>${esc(state.desc.slug)}</strong>.
         <button data-action="conflict-reload">Reload latest and retry</button>
       </div>`
    : "";
  return `
  <h2>${esc(state.desc.slug)} <small>version ${state.version}${state.dirty ? " (edited)" : ""}</small></h2>
  ${conflict}
  ${state.notice ? `<p class="notice">${esc(state.notice)}</p>` : ""}
  ${renderViolations(state.violations)}
  <div class="toolbar">
    <button data-action="save" ${state.conflict ? "disabled" : ""}>save</button>
    <button data-action="show-diff">diff vs default</button>
    <button data-action="reset-category">reset to default</button>
  </div>
  ${body}`;
}

export function renderStatusList(statuses: CategoryStatus[]): string {
  return `<h2>Categories</h2>
  <p class="hint">Select a category to configure it; badges show which ones this tenant customized.</p>
  <ul class="statuses">${statuses
    .map(
      (s) =>
        `<li>${esc(s.desc.slug)} <span class="badge ${s.badge}">${s.badge}</span> <small>v${s.version}</small></li>`,
    )
    .join("")}</ul>`;
}
