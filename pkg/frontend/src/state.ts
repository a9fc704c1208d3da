// Application state and pure transitions. Everything here is rebuildable
// from the API; a hard refresh loses only unsaved edits.

import type { Branding, CategoryDesc, Doc, Violation } from "./model.js";

export interface Session {
  baseUrl: string;
  token: string;
  /** null = provider session */
  tenant: string | null;
}

export type Badge = "default" | "customized";

export function badgeFor(version: number): Badge {
  return version > 0 ? "customized" : "default";
}

export interface CategoryStatus {
  desc: CategoryDesc;
  version: number;
  badge: Badge;
}

export interface Dashboard {
  branding: Branding;
  statuses: CategoryStatus[];
}

export function buildDashboard(
  branding: Branding,
  descs: CategoryDesc[],
  versions: Record<string, number>,
): Dashboard {
  return {
    branding,
    statuses: descs.map((desc) => {
      const version = versions[desc.slug] ?? 0;
      return { desc, version, badge: badgeFor(version) };
    }),
  };
}

export interface EditorState {
  desc: CategoryDesc;
  lang: string | null;
  doc: Doc;
  version: number;
  dirty: boolean;
  /** true after a 409: show the reload-and-retry prompt */
  conflict: boolean;
  violations: Violation[];
  notice: string | null;
}

export function openEditor(desc: CategoryDesc, doc: Doc, version: number, lang: string | null): EditorState {
  return {
    desc,
    lang,
    doc,
    version,
    dirty: false,
    conflict: false,
    violations: [],
    notice: null,
  };
}

export function editDoc(state: EditorState, doc: Doc): EditorState {
  return { ...state, doc, dirty: true, notice: null };
}

export function saveSucceeded(state: EditorState, version: number): EditorState {
  return {
    ...state,
    version,
    dirty: false,
    conflict: false,
    violations: [],
    notice: `saved as version ${version}`,
  };
}

export function saveConflicted(state: EditorState): EditorState {
  return { ...state, conflict: true, notice: null };
}

export function saveRejected(state: EditorState, violations: Violation[]): EditorState {
  return { ...state, violations, notice: null };
}

/** Reload-and-retry: adopt the server's current document, keep nothing local. */
export function reloadAfterConflict(
  state: EditorState,
  doc: Doc,
  version: number,
): EditorState {
  return {
    ...state,
    doc,
    version,
    dirty: false,
    conflict: false,
    violations: [],
    notice: "reloaded latest version; reapply your change",
  };
}
