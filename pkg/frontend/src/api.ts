// Typed client for the /api/v1 surface. The fetch implementation is
// injectable so tests can run without a network or spawn a real service.

import type {
  Branding,
  CategoryDesc,
  DryRunTrace,
  PageView,
  Violation,
} from "./model.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public status: number,
    public code: string,
    public detail: string,
    public violations: Violation[] = [],
  ) {
    super(`${status} ${code}: ${detail}`);
  }

  get unauthenticated(): boolean {
    return this.status === 401;
  }

  get accessDenied(): boolean {
    return this.status === 403;
  }

  get conflict(): boolean {
    return this.status === 409;
  }

  get validationFailed(): boolean {
    return this.status === 422;
  }
}

export interface ConfigResponse {
  xml: string;
  version: number;
}

async function raise(response: Response): Promise<never> {
  let code = "error";
  let detail = response.statusText;
  let violations: Violation[] = [];
  try {
    const body = await response.json();
    code = body.code ?? code;
    detail = body.detail ?? detail;
    violations = body.violations ?? [];
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(response.status, code, detail, violations);
}

export class Client {
  constructor(
    public baseUrl: string,
    public token: string,
    private fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request(
    path: string,
    init: RequestInit = {},
    extraHeaders: Record<string, string> = {},
  ): Promise<Response> {
    const response = await this.fetchFn(`${this.baseUrl}/api/v1${path}`, {
      ...init,
      headers: {
        Authorization: `Bearer ${this.token}`,
        ...extraHeaders,
      },
    });
    if (!response.ok) await raise(response);
    return response;
  }

  async categories(): Promise<CategoryDesc[]> {
    return (await this.request("/categories")).json();
  }

  async getConfig(
    tenant: string,
    slug: string,
    opts: { lang?: string; source?: "default" } = {},
  ): Promise<ConfigResponse> {
    const params = new URLSearchParams();
    if (opts.lang) params.set("lang", opts.lang);
    if (opts.source) params.set("source", opts.source);
    const query = params.toString() ? `?${params}` : "";
    const response = await this.request(
      `/tenants/${encodeURIComponent(tenant)}/config/${slug}${query}`,
    );
    return {
      xml: await response.text(),
      version: parseInt(response.headers.get("ETag") ?? "0", 10),
    };
  }

  async putConfig(
    tenant: string,
    slug: string,
    xml: string,
    version: number,
    lang?: string,
  ): Promise<number> {
    const query = lang ? `?lang=${encodeURIComponent(lang)}` : "";
    const response = await this.request(
      `/tenants/${encodeURIComponent(tenant)}/config/${slug}${query}`,
      { method: "PUT", body: xml },
      { "If-Match": String(version), "Content-Type": "application/xml" },
    );
    return (await response.json()).version;
  }

  async resetConfig(tenant: string, slug: string): Promise<void> {
    await this.request(`/tenants/${encodeURIComponent(tenant)}/config/${slug}:reset`, {
      method: "POST",
    });
  }

  async branding(tenant: string): Promise<Branding> {
    return (await this.request(`/tenants/${encodeURIComponent(tenant)}/branding`)).json();
  }

  async pageView(
    tenant: string,
    page: string,
    lang: string,
    role: string,
  ): Promise<PageView> {
    const params = new URLSearchParams({ page, lang, role });
    return (
      await this.request(`/tenants/${encodeURIComponent(tenant)}/resolved/page-view?${params}`)
    ).json();
  }

  async dryRun(tenant: string, workflowId: string): Promise<DryRunTrace> {
    return (
      await this.request(
        `/tenants/${encodeURIComponent(tenant)}/workflows/${encodeURIComponent(workflowId)}:dry-run`,
        { method: "POST" },
      )
    ).json();
  }

  async registry(): Promise<unknown> {
    return (await this.request("/registry")).json();
  }

  async metrics(): Promise<string> {
    return (await this.request("/metrics")).text();
  }
}
