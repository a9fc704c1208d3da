// Pure editing helpers behind the structured editors: entry add/remove,
// typed field updates, single-row field placement movement, and the
// entry-level diff against the vendor default. All state-in, state-out;
// the DOM layer only wires events to these.

import type {
  CategoryDesc,
  Doc,
  FieldDesc,
  KeyValue,
  ListEntry,
  Workflow,
} from "./model.js";

// --- grid coordinates (A..ZZ columns) -----------------------------------------

export function colIndex(column: string): number {
  if (!/^[A-Z]{1,2}$/.test(column)) throw new Error(`bad column ${column}`);
  let idx = 0;
  for (const ch of column) idx = idx * 26 + (ch.charCodeAt(0) - 64);
  return idx;
}

export function indexToCol(idx: number): string {
  if (idx < 1 || idx > 702) throw new Error(`column index out of range: ${idx}`);
  if (idx <= 26) return String.fromCharCode(64 + idx);
  const first = Math.floor((idx - 27) / 26);
  const second = (idx - 27) % 26;
  return String.fromCharCode(65 + first) + String.fromCharCode(65 + second);
}

export interface Cell {
  column: string;
  row: number;
}

export function parseCell(text: string): Cell {
  const m = /^([A-Z]{1,2})([1-9][0-9]*)$/.exec(text);
  if (!m) throw new Error(`bad cell ${text}`);
  return { column: m[1], row: parseInt(m[2], 10) };
}

export function cellText(cell: Cell): string {
  return `${cell.column}${cell.row}`;
}

// --- generic list editing -------------------------------------------------------

export function blankEntry(desc: CategoryDesc): ListEntry {
  const entry: ListEntry = {};
  for (const field of desc.fields) {
    if (field.type === "bool") entry[field.name] = true;
    else if (field.type === "enum") entry[field.name] = field.values?.[0] ?? "";
    else if (field.type === "cell") entry[field.name] = "A1";
    else entry[field.name] = "";
  }
  return entry;
}

export function setField(
  entries: ListEntry[],
  index: number,
  field: FieldDesc,
  raw: string | boolean,
): ListEntry[] {
  const next = entries.slice();
  const value =
    field.type === "bool" ? Boolean(raw) : String(raw).trim();
  next[index] = { ...next[index], [field.name]: value };
  return next;
}

export function removeAt<T>(items: T[], index: number): T[] {
  return items.filter((_, i) => i !== index);
}

// --- field placement movement (single-row semantics) -----------------------------

interface Span {
  from: Cell;
  to: Cell;
}

function spanOf(entry: ListEntry): Span {
  return {
    from: parseCell(String(entry.position_from)),
    to: parseCell(String(entry.position_to)),
  };
}

function applySpan(entry: ListEntry, from: number, to: number, row: number): ListEntry {
  return {
    ...entry,
    position_from: cellText({ column: indexToCol(from), row }),
    position_to: cellText({ column: indexToCol(to), row }),
  };
}

/** Slide the whole span left/right inside its row, clamped to A..ZZ. */
export function moveField(entry: ListEntry, delta: number): ListEntry {
  const { from, to } = spanOf(entry);
  const width = colIndex(to.column) - colIndex(from.column);
  let start = colIndex(from.column) + delta;
  start = Math.max(1, Math.min(702 - width, start));
  return applySpan(entry, start, start + width, from.row);
}

/** Grow or shrink the span's right edge; never narrower than one cell. */
export function resizeField(entry: ListEntry, delta: number): ListEntry {
  const { from, to } = spanOf(entry);
  const start = colIndex(from.column);
  const end = Math.max(start, Math.min(702, colIndex(to.column) + delta));
  return applySpan(entry, start, end, from.row);
}

/** Drop the span so it starts at `column`, preserving width and row. */
export function moveFieldToColumn(entry: ListEntry, column: string): ListEntry {
  const { from, to } = spanOf(entry);
  const width = colIndex(to.column) - colIndex(from.column);
  let start = colIndex(column);
  start = Math.max(1, Math.min(702 - width, start));
  return applySpan(entry, start, start + width, from.row);
}

/** Move the span to another row, keeping its columns. */
export function moveFieldToRow(entry: ListEntry, row: number): ListEntry {
  const { from, to } = spanOf(entry);
  const target = Math.max(1, row);
  return applySpan(entry, colIndex(from.column), colIndex(to.column), target);
}

// --- keyvalue + workflow helpers --------------------------------------------------

export function toggleSetKind(setting: KeyValue): KeyValue {
  if (setting.items === null) {
    const scalar = setting.scalar ?? "";
    return { key: setting.key, scalar: null, items: scalar ? [scalar] : [] };
  }
  return { key: setting.key, scalar: setting.items[0] ?? "", items: null };
}

export function blankWorkflow(role: string): Workflow {
  return { id: "", name: "", role, tasks: [{ step: 1, activity: "", bo: "", method: "", rule: null }] };
}

export function appendTask(wf: Workflow): Workflow {
  const last = wf.tasks[wf.tasks.length - 1];
  const step = last ? last.step + 1 : 1;
  return {
    ...wf,
    tasks: [...wf.tasks, { step, activity: "", bo: "", method: "", rule: null }],
  };
}

// --- diff against the vendor default ----------------------------------------------

export interface DiffLine {
  op: "+" | "-" | "~";
  tag: string;
  key: string;
}

function entryKey(desc: CategoryDesc, entry: ListEntry): string {
  if (desc.slug === "blocks") return `${entry.component}/${entry.view_name}`;
  const first = desc.fields[0];
  return String(entry[first.name]);
}

function diffMaps(
  tag: string,
  defaults: Map<string, string>,
  current: Map<string, string>,
): DiffLine[] {
  const lines: DiffLine[] = [];
  for (const [key, value] of defaults) {
    if (!current.has(key)) lines.push({ op: "-", tag, key });
    else if (current.get(key) !== value) lines.push({ op: "~", tag, key });
  }
  for (const key of current.keys()) {
    if (!defaults.has(key)) lines.push({ op: "+", tag, key });
  }
  return lines;
}

function docMaps(desc: CategoryDesc, doc: Doc): [string, Map<string, string>][] {
  switch (doc.kind) {
    case "list":
      return [
        [
          desc.entry,
          new Map(doc.entries.map((e) => [entryKey(desc, e), JSON.stringify(e)])),
        ],
      ];
    case "properties":
      return [
        ["LABELELEMENT", new Map(doc.labels.map((e) => [e.name, e.value]))],
        ["TEXTELEMENT", new Map(doc.texts.map((e) => [e.name, e.value]))],
      ];
    case "grants":
      return [
        [
          "BUSINESSROLE",
          new Map(doc.rules.map((r) => [r.role, JSON.stringify(r.grants)])),
        ],
      ];
    case "keyvalues":
      return [
        ["KV", new Map(doc.settings.map((s) => [s.key, JSON.stringify(s)]))],
      ];
    case "workflows":
      return [
        ["WORKFLOW", new Map(doc.workflows.map((w) => [w.id, JSON.stringify(w)]))],
      ];
  }
}

export function diffDocs(desc: CategoryDesc, defaults: Doc, current: Doc): DiffLine[] {
  const lines: DiffLine[] = [];
  const defaultMaps = docMaps(desc, defaults);
  const currentMaps = docMaps(desc, current);
  for (let i = 0; i < defaultMaps.length; i++) {
    lines.push(...diffMaps(defaultMaps[i][0], defaultMaps[i][1], currentMaps[i][1]));
  }
  return lines;
}
