// Canonical-grammar XML: a restricted parser plus a builder that emits the
// same bytes the service does (2-space indent, uppercase tags, True/False
// booleans, trailing newline). Editors are schema-driven: every tag written
// here comes from the category descriptor or the fixed special-shape
// grammars, never from free-form user input.

import type { CategoryDesc, Doc, FieldDesc, ListEntry } from "./model.js";

export interface XNode {
  tag: string;
  text: string;
  children: XNode[];
}

export class XmlError extends Error {}

const ENTITIES: Record<string, string> = {
  amp: "&",
  lt: "<",
  gt: ">",
  quot: '"',
  apos: "'",
};

function unescapeText(raw: string): string {
  return raw.replace(/&(#x?[0-9a-fA-F]+|[a-z]+);/g, (whole, body: string) => {
    if (body.startsWith("#x") || body.startsWith("#X")) {
      return String.fromCodePoint(parseInt(body.slice(2), 16));
    }
    if (body.startsWith("#")) {
      return String.fromCodePoint(parseInt(body.slice(1), 10));
    }
    const known = ENTITIES[body];
    if (known === undefined) throw new XmlError(`unknown entity &${body};`);
    return known;
  });
}

export function escapeText(value: string): string {
  return value.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function parseXml(source: string): XNode {
  const stack: XNode[] = [];
  let root: XNode | null = null;
  let pos = 0;
  let textStart = 0;

  const flushText = () => {
    const raw = source.slice(textStart, pos);
    if (stack.length === 0) {
      if (raw.trim()) throw new XmlError("text outside the root element");
      return;
    }
    const node = stack[stack.length - 1];
    if (node.children.length === 0) {
      node.text += unescapeText(raw);
    } else if (raw.trim()) {
      throw new XmlError(`mixed content under <${node.tag}>`);
    }
  };

  while (pos < source.length) {
    if (source[pos] !== "<") {
      pos += 1;
      continue;
    }
    flushText();
    const end = source.indexOf(">", pos);
    if (end < 0) throw new XmlError("unterminated tag");
    const body = source.slice(pos + 1, end);
    if (body.startsWith("/")) {
      const tag = body.slice(1);
      const open = stack.pop();
      if (!open || open.tag !== tag) {
        throw new XmlError(`mismatched </${tag}>`);
      }
      if (open.children.length > 0 && open.text.trim()) {
        throw new XmlError(`mixed content under <${open.tag}>`);
      }
      if (open.children.length > 0) open.text = "";
      if (stack.length === 0) {
        if (root) throw new XmlError("multiple root elements");
        root = open;
      }
    } else {
      if (!/^[A-Z][A-Z0-9]*$/.test(body)) {
        throw new XmlError(`illegal tag <${body}>`);
      }
      const node: XNode = { tag: body, text: "", children: [] };
      if (stack.length > 0) {
        const parent = stack[stack.length - 1];
        if (parent.text.trim()) throw new XmlError(`mixed content under <${parent.tag}>`);
        parent.text = "";
        parent.children.push(node);
      } else if (root) {
        throw new XmlError("multiple root elements");
      }
      stack.push(node);
    }
    pos = end + 1;
    textStart = pos;
  }
  flushText();
  if (stack.length > 0) throw new XmlError(`unclosed <${stack[stack.length - 1].tag}>`);
  if (!root) throw new XmlError("empty document");
  return root;
}

function child(node: XNode, tag: string): XNode | null {
  for (const c of node.children) if (c.tag === tag) return c;
  return null;
}

function childText(node: XNode, tag: string): string {
  const c = child(node, tag);
  if (!c) throw new XmlError(`<${node.tag}> is missing <${tag}>`);
  return c.text;
}

function parseBool(text: string): boolean {
  if (text === "True" || text === "true") return true;
  if (text === "False" || text === "false") return false;
  throw new XmlError(`bad boolean ${text}`);
}

// --- document parsing ----------------------------------------------------------

function parseListEntries(desc: CategoryDesc, root: XNode): ListEntry[] {
  return root.children.map((node) => {
    const entry: ListEntry = {};
    for (const field of desc.fields) {
      const text = childText(node, field.tag);
      entry[field.name] = field.type === "bool" ? parseBool(text) : text;
    }
    return entry;
  });
}

function parseNameValues(section: XNode | null): { name: string; value: string }[] {
  if (!section) return [];
  return section.children.map((node) => ({
    name: childText(node, "NAME"),
    value: childText(node, "VALUE"),
  }));
}

export function parseDoc(desc: CategoryDesc, xml: string): Doc {
  const root = parseXml(xml);
  if (root.tag !== desc.root) {
    throw new XmlError(`expected <${desc.root}>, got <${root.tag}>`);
  }
  switch (desc.shape) {
    case "list":
      return { kind: "list", entries: parseListEntries(desc, root) };
    case "properties":
      return {
        kind: "properties",
        labels: parseNameValues(child(root, "LABELS")),
        texts: parseNameValues(child(root, "TEXTS")),
      };
    case "grants":
      return {
        kind: "grants",
        rules: root.children.map((node) => ({
          role: childText(node, "NAME"),
          grants: (child(node, "BOLS")?.children ?? []).map((bol) => ({
            name: childText(bol, "NAME"),
            use: parseBool(childText(bol, "USE")),
          })),
        })),
      };
    case "keyvalues":
      return {
        kind: "keyvalues",
        settings: root.children.map((node) => {
          const set = child(node, "SET");
          return {
            key: childText(node, "KEY"),
            scalar: set ? null : childText(node, "VALUE"),
            items: set ? set.children.map((item) => item.text) : null,
          };
        }),
      };
    case "workflows":
      return {
        kind: "workflows",
        workflows: root.children.map((node) => ({
          id: childText(node, "ID"),
          name: childText(node, "NAME"),
          role: childText(node, "ROLE"),
          tasks: (child(node, "TASKS")?.children ?? []).map((task) => {
            const rule = child(task, "RULE");
            return {
              step: parseInt(childText(task, "STEP"), 10),
              activity: childText(task, "ACTIVITY"),
              bo: childText(task, "BO"),
              method: childText(task, "METHOD"),
              rule: rule ? rule.text : null,
            };
          }),
        })),
      };
  }
}

// --- canonical building ----------------------------------------------------------

class Writer {
  private parts: string[] = [];
  private depth = 0;

  open(tag: string): void {
    this.parts.push(`${"  ".repeat(this.depth)}<${tag}>\n`);
    this.depth += 1;
  }

  close(tag: string): void {
    this.depth -= 1;
    this.parts.push(`${"  ".repeat(this.depth)}</${tag}>\n`);
  }

  leaf(tag: string, value: string): void {
    this.parts.push(`${"  ".repeat(this.depth)}<${tag}>${escapeText(value)}</${tag}>\n`);
  }

  toString(): string {
    return this.parts.join("");
  }
}

function boolText(value: boolean): string {
  return value ? "True" : "False";
}

function fieldText(field: FieldDesc, entry: ListEntry): string {
  const value = entry[field.name];
  return field.type === "bool" ? boolText(Boolean(value)) : String(value ?? "");
}

export function buildXml(desc: CategoryDesc, doc: Doc): string {
  const w = new Writer();
  w.open(desc.root);
  if (doc.kind === "list") {
    for (const entry of doc.entries) {
      w.open(desc.entry);
      for (const field of desc.fields) w.leaf(field.tag, fieldText(field, entry));
      w.close(desc.entry);
    }
  } else if (doc.kind === "properties") {
    for (const [section, entryTag, rows] of [
      ["LABELS", "LABELELEMENT", doc.labels],
      ["TEXTS", "TEXTELEMENT", doc.texts],
    ] as const) {
      w.open(section);
      for (const row of rows) {
        w.open(entryTag);
        w.leaf("NAME", row.name);
        w.leaf("VALUE", row.value);
        w.close(entryTag);
      }
      w.close(section);
    }
  } else if (doc.kind === "grants") {
    for (const rule of doc.rules) {
      w.open("BUSINESSROLE");
      w.leaf("NAME", rule.role);
      w.open("BOLS");
      for (const grant of rule.grants) {
        w.open("BOL");
        w.leaf("NAME", grant.name);
        w.leaf("USE", boolText(grant.use));
        w.close("BOL");
      }
      w.close("BOLS");
      w.close("BUSINESSROLE");
    }
  } else if (doc.kind === "keyvalues") {
    for (const setting of doc.settings) {
      w.open("KV");
      w.leaf("KEY", setting.key);
      if (setting.items !== null) {
        w.open("SET");
        for (const item of setting.items) w.leaf("ITEM", item);
        w.close("SET");
      } else {
        w.leaf("VALUE", setting.scalar ?? "");
      }
      w.close("KV");
    }
  } else {
    for (const wf of doc.workflows) {
      w.open("WORKFLOW");
      w.leaf("ID", wf.id);
      w.leaf("NAME", wf.name);
      w.leaf("ROLE", wf.role);
      w.open("TASKS");
      for (const task of wf.tasks) {
        w.open("TASK");
        w.leaf("STEP", String(task.step));
        w.leaf("ACTIVITY", task.activity);
        w.leaf("BO", task.bo);
        w.leaf("METHOD", task.method);
        if (task.rule !== null) w.leaf("RULE", task.rule);
        w.close("TASK");
      }
      w.close("TASKS");
      w.close("WORKFLOW");
    }
  }
  w.close(desc.root);
  return w.toString();
}
