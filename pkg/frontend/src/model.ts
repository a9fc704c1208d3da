// Shared types mirroring the service's wire shapes.

export type FieldType = "text" | "bool" | "enum" | "cell";

export interface FieldDesc {
  name: string;
  tag: string;
  type: FieldType;
  values?: string[];
}

export type Shape = "list" | "properties" | "grants" | "keyvalues" | "workflows";

export interface CategoryDesc {
  slug: string;
  shape: Shape;
  root: string;
  entry: string;
  fields: FieldDesc[];
  languages?: string[];
}

export type ListEntry = Record<string, string | boolean>;

export interface NameValue {
  name: string;
  value: string;
}

export interface GrantRule {
  role: string;
  grants: { name: string; use: boolean }[];
}

export interface KeyValue {
  key: string;
  scalar: string | null;
  items: string[] | null;
}

export interface WorkflowTask {
  step: number;
  activity: string;
  bo: string;
  method: string;
  rule: string | null;
}

export interface Workflow {
  id: string;
  name: string;
  role: string;
  tasks: WorkflowTask[];
}

export type Doc =
  | { kind: "list"; entries: ListEntry[] }
  | { kind: "properties"; labels: NameValue[]; texts: NameValue[] }
  | { kind: "grants"; rules: GrantRule[] }
  | { kind: "keyvalues"; settings: KeyValue[] }
  | { kind: "workflows"; workflows: Workflow[] };

export interface Violation {
  code: string;
  entry: string;
  detail: string;
}

export interface Branding {
  name: string;
  logo: string;
}

export interface PageView {
  tenant: string;
  page: string;
  language: string;
  role: string;
  css: { name: string; location: string }[];
  images: { name: string; src: string }[];
  scripts: { name: string; src: string }[];
  labels: Record<string, string>;
  texts: Record<string, string>;
  missing_labels: string[];
  blocks: { component: string; view_name: string; title: string; load_option: string }[];
  fields: { field_name: string; position_from: string; position_to: string }[];
}

export interface TraceStep {
  step: number;
  bo: string;
  method: string;
  verdict: "Ok" | "BoDisabled" | "BolForbidden";
}

export interface DryRunTrace {
  workflow: string;
  steps: TraceStep[];
}
